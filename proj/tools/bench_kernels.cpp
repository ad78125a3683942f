// Times the serial and OpenMP code paths of the two kernels that have both:
// dense matmul and the distance-regularity scan.

#include "drg/exec.hpp"
#include "drg/graph.hpp"
#include "drg/linalg.hpp"

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>

using drg::Matrix;

namespace {

double time_ms(const std::function<void()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

Matrix filled(std::size_t n, std::uint64_t seed) {
    Matrix m(n, n);
    std::uint64_t s = seed;
    for (std::size_t i = 0; i < n; ++i) {
        double* r = m.row(i);
        for (std::size_t j = 0; j < n; ++j) {
            s = s * 6364136223846793005ULL + 1442695040888963407ULL;
            r[j] = static_cast<double>(s >> 11) * 0x1.0p-53 - 0.5;
        }
    }
    return m;
}

void bench_matmul(std::size_t n) {
    Matrix a = filled(n, 1), b = filled(n, 2);
    Matrix rs, rp;
    double ts = time_ms([&] { rs = drg::matmul_serial(a, b); });
    double tp = time_ms([&] { rp = drg::matmul_parallel(a, b); });
    Matrix diff = rs;
    for (std::size_t i = 0; i < diff.rows(); ++i)
        for (std::size_t j = 0; j < diff.cols(); ++j) diff(i, j) -= rp(i, j);
    std::printf("matmul      n=%4zu   serial %8.2f ms   parallel %8.2f ms   "
                "speedup %5.2fx   max diff %.2e\n",
                n, ts, tp, ts / tp, drg::max_abs_entry(diff));
}

void bench_drg_scan(const drg::Graph& g) {
    drg::exec::set_mode(drg::exec::Mode::serial);
    drg::DrgCheckResult rs;
    double ts = time_ms([&] { rs = drg::check_drg(g); });
    drg::exec::set_mode(drg::exec::Mode::parallel);
    drg::DrgCheckResult rp;
    double tp = time_ms([&] { rp = drg::check_drg(g); });
    const char* agree = rs.is_drg == rp.is_drg ? "agree" : "DISAGREE";
    std::printf("drg scan    %-14s n=%4d   serial %8.2f ms   parallel %8.2f ms   "
                "speedup %5.2fx   %s\n",
                g.name.c_str(), g.n, ts, tp, ts / tp, agree);
}

} // namespace

int main() {
    std::printf("threads: %d\n\n", drg::exec::thread_count());

    for (std::size_t n : {256u, 512u, 768u}) bench_matmul(n);
    std::printf("\n");

    bench_drg_scan(drg::build_family("johnson", {10, 4}));
    bench_drg_scan(drg::build_family("hamming", {3, 6}));
    bench_drg_scan(drg::build_family("hypercube", {8}));

    drg::exec::set_mode(drg::exec::Mode::parallel);
    return 0;
}
