#include "drg/feasibility.hpp"

#include <cmath>

namespace drg {

FeasibilityReport feasibility_report(const IntersectionArray& ia,
                                     const SpectralData* sp, const KreinTable* kr,
                                     double tol) {
    FeasibilityReport rep;
    auto add = [&](const std::string& name, bool pass, const std::string& detail) {
        rep.checks.push_back({name, pass, pass ? "" : detail});
        rep.feasible = rep.feasible && pass;
    };

    const int d = ia.d;
    {
        bool ok = ia.c[1] == 1;
        std::string detail = ok ? "" : "c_1 = " + to_string(ia.c[1]);
        for (int i = 0; i < d && ok; ++i)
            if (ia.b[i] <= 0) {
                ok = false;
                detail = "b_" + std::to_string(i) + " = " + to_string(ia.b[i]);
            }
        for (int i = 1; i <= d && ok; ++i)
            if (ia.c[i] <= 0) {
                ok = false;
                detail = "c_" + std::to_string(i) + " = " + to_string(ia.c[i]);
            }
        add("positive entries", ok, detail);
    }
    {
        bool ok = true;
        std::string detail;
        for (int i = 0; i <= d && ok; ++i)
            if (ia.a[i] < 0) {
                ok = false;
                detail = "a_" + std::to_string(i) + " = " + to_string(ia.a[i]);
            }
        add("nonnegative a_i", ok, detail);
    }
    {
        bool ok = true;
        std::string detail;
        for (int i = 0; i <= d && ok; ++i)
            if (!is_integer(ia.shell[i])) {
                ok = false;
                detail = "k_" + std::to_string(i) + " = " + to_string(ia.shell[i]);
            }
        add("integral shell sizes", ok, detail);
    }
    {
        auto p = intersection_numbers(ia);
        bool ok = true;
        std::string detail;
        for (int h = 0; h <= d && ok; ++h)
            for (int i = 0; i <= d && ok; ++i)
                for (int j = 0; j <= d && ok; ++j) {
                    const Rational& v = p(h, i, j);
                    bool outside = i + j < h || h + j < i || h + i < j;
                    bool boundary = i + j == h || h + j == i || h + i == j;
                    if (v < 0 || (outside && v != 0) || (boundary && v == 0)) {
                        ok = false;
                        detail = "p^" + std::to_string(h) + "_{" + std::to_string(i) +
                                 "," + std::to_string(j) + "} = " + to_string(v);
                    }
                }
        add("intersection numbers", ok, detail);
    }
    if (sp) {
        bool ok = true;
        std::string detail;
        for (std::size_t j = 0; j < sp->mult.size() && ok; ++j) {
            if (sp->mult[j] <= 0 || !sp->mult_integral[j]) {
                ok = false;
                detail = "m_" + std::to_string(j) + " = " + std::to_string(sp->mult[j]);
            }
        }
        add("integral multiplicities", ok, detail);
    }
    if (kr) {
        bool ok = kr->krein_ok;
        std::string detail;
        if (!ok)
            detail = "min scaled entry " + std::to_string(kr->min_scaled_entry);
        add("krein condition", ok, detail);
    }
    (void)tol;
    return rep;
}

} // namespace drg
