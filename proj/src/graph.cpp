#include "drg/graph.hpp"

#include "drg/exec.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace drg {

namespace {

constexpr long kMaxVertices = 1000000;

// all-pairs BFS; fills dist (-1 for unreachable), diameter and connectivity
void finish(Graph& g) {
    g.dist.assign(g.n, std::vector<int16_t>(g.n, -1));
    g.diameter = 0;
    for (auto& nbrs : g.adj) std::sort(nbrs.begin(), nbrs.end());
    for (int s = 0; s < g.n; ++s) {
        auto& row = g.dist[s];
        std::deque<int> queue{s};
        row[s] = 0;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int w : g.adj[v])
                if (row[w] < 0) {
                    row[w] = static_cast<int16_t>(row[v] + 1);
                    g.diameter = std::max(g.diameter, static_cast<int>(row[w]));
                    queue.push_back(w);
                }
        }
    }
    g.connected = true;
    for (int v = 0; v < g.n && g.connected; ++v)
        if (g.dist[0][v] < 0) g.connected = false;
}

void require_diameter(const Graph& g) {
    if (!g.connected || g.diameter < 3)
        throw std::invalid_argument(g.name + ": needs a connected graph of diameter >= 3");
}

} // namespace

Graph hypercube(int d) {
    if (d < 3 || d > 20) throw std::invalid_argument("hypercube: d must be in 3..20");
    Graph g;
    g.name = "hypercube(" + std::to_string(d) + ")";
    g.n = 1 << d;
    g.adj.resize(g.n);
    for (int v = 0; v < g.n; ++v)
        for (int bit = 0; bit < d; ++bit) g.adj[v].push_back(v ^ (1 << bit));
    finish(g);
    require_diameter(g);
    return g;
}

Graph hamming(int d, int q) {
    if (d < 3) throw std::invalid_argument("hamming: d must be at least 3");
    if (q < 2) throw std::invalid_argument("hamming: q must be at least 2");
    long size = 1;
    for (int t = 0; t < d; ++t) {
        size *= q;
        if (size > kMaxVertices) throw std::invalid_argument("hamming: too many vertices");
    }
    Graph g;
    g.name = "hamming(" + std::to_string(d) + "," + std::to_string(q) + ")";
    g.n = static_cast<int>(size);
    g.adj.resize(g.n);
    // vertex = base-q word; neighbors differ in one digit
    for (int v = 0; v < g.n; ++v) {
        int place = 1;
        for (int pos = 0; pos < d; ++pos) {
            int digit = v / place % q;
            for (int other = 0; other < q; ++other)
                if (other != digit) g.adj[v].push_back(v + (other - digit) * place);
            place *= q;
        }
    }
    finish(g);
    require_diameter(g);
    return g;
}

Graph johnson(int n, int k) {
    if (n < 2 || k < 1 || k >= n) throw std::invalid_argument("johnson: need 1 <= k < n");
    k = std::min(k, n - k);
    if (k < 3) throw std::invalid_argument("johnson: diameter min(k, n-k) must be >= 3");

    // enumerate k-subsets of {0..n-1} in lexicographic order
    std::vector<std::vector<int>> sets;
    std::vector<int> cur(k);
    for (int i = 0; i < k; ++i) cur[i] = i;
    for (;;) {
        sets.push_back(cur);
        int pos = k - 1;
        while (pos >= 0 && cur[pos] == n - k + pos) --pos;
        if (pos < 0) break;
        ++cur[pos];
        for (int i = pos + 1; i < k; ++i) cur[i] = cur[i - 1] + 1;
        if (static_cast<long>(sets.size()) > kMaxVertices)
            throw std::invalid_argument("johnson: too many vertices");
    }

    Graph g;
    g.name = "johnson(" + std::to_string(n) + "," + std::to_string(k) + ")";
    g.n = static_cast<int>(sets.size());
    g.adj.resize(g.n);
    for (int v = 0; v < g.n; ++v)
        for (int w = v + 1; w < g.n; ++w) {
            int common = 0;
            std::size_t a = 0, b = 0;
            while (a < sets[v].size() && b < sets[w].size()) {
                if (sets[v][a] == sets[w][b]) ++common, ++a, ++b;
                else if (sets[v][a] < sets[w][b]) ++a;
                else ++b;
            }
            if (common == k - 1) {
                g.adj[v].push_back(w);
                g.adj[w].push_back(v);
            }
        }
    finish(g);
    require_diameter(g);
    return g;
}

Graph cycle(int n) {
    if (n < 6) throw std::invalid_argument("cycle: n must be at least 6 for diameter >= 3");
    Graph g;
    g.name = "cycle(" + std::to_string(n) + ")";
    g.n = n;
    g.adj.resize(n);
    for (int v = 0; v < n; ++v) {
        g.adj[v].push_back((v + 1) % n);
        g.adj[v].push_back((v + n - 1) % n);
    }
    finish(g);
    require_diameter(g);
    return g;
}

Graph build_family(const std::string& family, const std::vector<long>& params) {
    auto want = [&](std::size_t count) {
        if (params.size() != count)
            throw std::invalid_argument(family + ": expected " + std::to_string(count) +
                                        " parameter(s)");
    };
    if (family == "hypercube") {
        want(1);
        return hypercube(static_cast<int>(params[0]));
    }
    if (family == "hamming") {
        want(2);
        return hamming(static_cast<int>(params[0]), static_cast<int>(params[1]));
    }
    if (family == "johnson") {
        want(2);
        return johnson(static_cast<int>(params[0]), static_cast<int>(params[1]));
    }
    if (family == "cycle") {
        want(1);
        return cycle(static_cast<int>(params[0]));
    }
    throw std::invalid_argument("unknown family '" + family + "'");
}

Graph from_edge_list(const std::string& text, const std::string& name) {
    std::set<std::pair<int, int>> edges;
    int max_vertex = -1;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        std::string t;
        while (ls >> t) tok.push_back(t);
        if (tok.empty()) continue;
        if (tok.size() != 2)
            throw std::invalid_argument("line " + std::to_string(lineno) +
                                        ": expected 'u v'");
        long uv[2];
        for (int s = 0; s < 2; ++s) {
            char* end = nullptr;
            uv[s] = std::strtol(tok[s].c_str(), &end, 10);
            if (end == tok[s].c_str() || *end != '\0' || uv[s] < 0 || uv[s] > kMaxVertices)
                throw std::invalid_argument("line " + std::to_string(lineno) +
                                            ": bad vertex '" + tok[s] + "'");
        }
        if (uv[0] == uv[1])
            throw std::invalid_argument("line " + std::to_string(lineno) + ": self loop");
        edges.insert({std::min(uv[0], uv[1]), std::max(uv[0], uv[1])});
        max_vertex = std::max(max_vertex, static_cast<int>(std::max(uv[0], uv[1])));
    }
    if (max_vertex < 0) throw std::invalid_argument("edge list is empty");

    Graph g;
    g.name = name;
    g.n = max_vertex + 1;
    g.adj.resize(g.n);
    for (const auto& [u, v] : edges) {
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    finish(g);
    return g;
}

namespace {

// pair-count table for (y, z): cnt[i][j] = |Gamma_i(y) ∩ Gamma_j(z)|
std::vector<long> pair_counts(const Graph& g, int y, int z, int d) {
    std::vector<long> cnt(static_cast<std::size_t>(d + 1) * (d + 1), 0);
    const auto& dy = g.dist[y];
    const auto& dz = g.dist[z];
    for (int v = 0; v < g.n; ++v) ++cnt[dy[v] * (d + 1) + dz[v]];
    return cnt;
}

struct Conflict {
    long y = -1, z = 0;
    int i = 0, j = 0;
    long count = 0, expected = 0;
    bool before(const Conflict& o) const {
        if (y != o.y) return y < o.y;
        if (z != o.z) return z < o.z;
        if (i != o.i) return i < o.i;
        return j < o.j;
    }
    bool valid() const { return y >= 0; }
};

// first row-major (i, j) disagreement between two count tables
Conflict compare_tables(const std::vector<long>& got, const std::vector<long>& want,
                        int y, int z, int d) {
    for (int i = 0; i <= d; ++i)
        for (int j = 0; j <= d; ++j) {
            std::size_t at = static_cast<std::size_t>(i) * (d + 1) + j;
            if (got[at] != want[at]) return {y, z, i, j, got[at], want[at]};
        }
    return {};
}

} // namespace

DrgCheckResult check_drg(const Graph& g) {
    DrgCheckResult res;
    if (g.n < 2 || !g.connected) {
        res.message = "graph is not connected";
        return res;
    }
    const int d = g.diameter;
    if (d < 3) {
        res.message = "diameter " + std::to_string(d) + " is below 3";
        return res;
    }
    for (int v = 1; v < g.n; ++v)
        if (g.adj[v].size() != g.adj[0].size()) {
            res.message = "not regular: vertex 0 has degree " +
                          std::to_string(g.adj[0].size()) + ", vertex " +
                          std::to_string(v) + " has " + std::to_string(g.adj[v].size());
            return res;
        }

    // reference tables from the first pair at each distance, in scan order
    std::vector<std::vector<long>> expected(d + 1);
    {
        int remaining = d + 1;
        for (int y = 0; y < g.n && remaining > 0; ++y)
            for (int z = 0; z < g.n && remaining > 0; ++z) {
                int h = g.dist[y][z];
                if (expected[h].empty()) {
                    expected[h] = pair_counts(g, y, z, d);
                    --remaining;
                }
            }
    }

    // every ordered pair against the reference for its distance; the winner
    // is the lexicographically first conflict, so serial and parallel sweeps
    // agree exactly
    Conflict first;
    if (exec::mode() == exec::Mode::parallel) {
#ifdef _OPENMP
#pragma omp parallel
        {
            Conflict local;
#pragma omp for schedule(static) nowait
            for (int y = 0; y < g.n; ++y) {
                if (local.valid() && local.y < y) continue;
                for (int z = 0; z < g.n; ++z) {
                    auto c = compare_tables(pair_counts(g, y, z, d),
                                            expected[g.dist[y][z]], y, z, d);
                    if (c.valid() && (!local.valid() || c.before(local))) local = c;
                }
            }
#pragma omp critical
            if (local.valid() && (!first.valid() || local.before(first))) first = local;
        }
#else
        for (int y = 0; y < g.n && !first.valid(); ++y)
            for (int z = 0; z < g.n && !first.valid(); ++z)
                first = compare_tables(pair_counts(g, y, z, d),
                                       expected[g.dist[y][z]], y, z, d);
#endif
    } else {
        for (int y = 0; y < g.n && !first.valid(); ++y)
            for (int z = 0; z < g.n && !first.valid(); ++z)
                first = compare_tables(pair_counts(g, y, z, d),
                                       expected[g.dist[y][z]], y, z, d);
    }

    if (first.valid()) {
        res.witness.y = static_cast<int>(first.y);
        res.witness.z = static_cast<int>(first.z);
        res.witness.h = g.dist[first.y][first.z];
        res.witness.i = first.i;
        res.witness.j = first.j;
        res.witness.count = first.count;
        res.witness.expected = first.expected;
        res.message = "pair (" + std::to_string(first.y) + "," + std::to_string(first.z) +
                      ") at distance " + std::to_string(res.witness.h) + " counts " +
                      std::to_string(first.count) + " in shells (" +
                      std::to_string(first.i) + "," + std::to_string(first.j) +
                      "), expected " + std::to_string(first.expected);
        return res;
    }

    std::vector<Rational> b(d), c(d);
    for (int i = 0; i < d; ++i)
        b[i] = static_cast<long>(expected[i][static_cast<std::size_t>(i + 1) * (d + 1) + 1]);
    for (int i = 1; i <= d; ++i)
        c[i - 1] = static_cast<long>(expected[i][static_cast<std::size_t>(i - 1) * (d + 1) + 1]);
    try {
        res.array = make_array(std::move(b), std::move(c));
    } catch (const std::invalid_argument& e) {
        res.message = std::string("counts coincide but form no valid array: ") + e.what();
        return res;
    }
    res.is_drg = true;
    return res;
}

} // namespace drg
