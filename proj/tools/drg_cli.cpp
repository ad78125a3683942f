#include <CLI11.hpp>

#include "drg/duality.hpp"
#include "drg/feasibility.hpp"
#include "drg/graph.hpp"
#include "drg/graph_algebra.hpp"
#include "drg/intersection_array.hpp"
#include "drg/json_out.hpp"
#include "drg/spectral.hpp"
#include "drg/tmodules.hpp"

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using nlohmann::ordered_json;

namespace {

struct Options {
    double tol = 1e-8;
    std::uint64_t seed = 0;
    std::string json_path;
    bool classical = false;
    std::string family, edge_list;
    long fam_d = 0, fam_q = 0, fam_n = 0, fam_k = 0;
    int base_vertex = 0;
    bool want_modules = false, want_identities = false, want_balanced = false;
};

ordered_json rationals(const std::vector<drg::Rational>& v, std::size_t from,
                       std::size_t to) {
    ordered_json a = ordered_json::array();
    for (std::size_t i = from; i < to; ++i) a.push_back(drg::to_string(v[i]));
    return a;
}

ordered_json doubles(const std::vector<double>& v) {
    ordered_json a = ordered_json::array();
    for (double x : v) a.push_back(x);
    return a;
}

ordered_json ints(const std::vector<int>& v) {
    ordered_json a = ordered_json::array();
    for (int x : v) a.push_back(x);
    return a;
}

ordered_json matrix_rows(const drg::Matrix& m) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ordered_json r = ordered_json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
        rows.push_back(std::move(r));
    }
    return rows;
}

struct ArrayAnalysis {
    drg::SpectralData sp;
    drg::KreinTable kr;
    std::vector<drg::QPolyStructure> qps;
    bool feasible = false;
};

ArrayAnalysis analyze_array(const drg::IntersectionArray& ia, const Options& opt,
                            ordered_json& out) {
    ArrayAnalysis an;
    out["array"] = ordered_json{{"text", drg::format_array(ia)},
                                {"diameter", ia.d},
                                {"valency", drg::to_string(ia.valency())},
                                {"vertices", drg::to_string(ia.n)},
                                {"b", rationals(ia.b, 0, ia.b.size())},
                                {"c", rationals(ia.c, 1, ia.c.size())},
                                {"a", rationals(ia.a, 0, ia.a.size())},
                                {"shells", rationals(ia.shell, 0, ia.shell.size())}};

    an.sp = drg::spectral_data(ia, opt.tol);
    an.kr = drg::krein_parameters(an.sp, opt.tol);
    auto feas = drg::feasibility_report(ia, &an.sp, &an.kr, opt.tol);
    an.feasible = feas.feasible;

    ordered_json checks = ordered_json::array();
    for (const auto& c : feas.checks)
        checks.push_back(ordered_json{{"name", c.name}, {"pass", c.pass},
                                      {"detail", c.detail}});
    out["feasibility"] =
        ordered_json{{"feasible", feas.feasible}, {"checks", std::move(checks)}};

    ordered_json integral = ordered_json::array();
    for (bool b : an.sp.mult_integral) integral.push_back(b);
    out["spectral"] = ordered_json{{"theta", doubles(an.sp.theta)},
                                   {"mult", doubles(an.sp.mult)},
                                   {"mult_integral", std::move(integral)},
                                   {"min_eigen_gap", an.sp.min_eigen_gap},
                                   {"cosines", matrix_rows(an.sp.u)}};

    auto orth = drg::verify_orthogonality(ia, an.sp, opt.tol);
    out["orthogonality"] = ordered_json{{"cosine_row", orth.cosine_row},
                                        {"cosine_col", orth.cosine_col},
                                        {"poly_row", orth.poly_row},
                                        {"poly_col", orth.poly_col},
                                        {"worst", orth.worst},
                                        {"pass", orth.pass}};

    ordered_json qtab = ordered_json::array();
    for (int h = 0; h <= ia.d; ++h) {
        ordered_json plane = ordered_json::array();
        for (int i = 0; i <= ia.d; ++i) {
            ordered_json row = ordered_json::array();
            for (int j = 0; j <= ia.d; ++j) row.push_back(an.kr(h, i, j));
            plane.push_back(std::move(row));
        }
        qtab.push_back(std::move(plane));
    }
    out["krein"] = ordered_json{{"q", std::move(qtab)},
                                {"krein_ok", an.kr.krein_ok},
                                {"min_scaled_entry", an.kr.min_scaled_entry}};

    an.qps = drg::qpoly_orderings_direct(an.sp, opt.tol);
    ordered_json orderings = ordered_json::array();
    std::vector<double> aseq(ia.d + 1);
    for (int i = 0; i <= ia.d; ++i) aseq[i] = ia.a[i].get_d();
    for (const auto& qp : an.qps) {
        ordered_json entry{{"order", ints(qp.order)},
                           {"theta", doubles(qp.theta)},
                           {"theta_star", doubles(qp.theta_star)},
                           {"dual_c", doubles(qp.cs)},
                           {"dual_a", doubles(qp.as)},
                           {"dual_b", doubles(qp.bs)},
                           {"duality_residual", qp.duality_residual},
                           {"dual_orth_residual", qp.dual_orth_residual},
                           {"dual_mult_residual", qp.dual_mult_residual}};
        auto pas = drg::pascasio_check(ia, qp.theta_star, opt.tol);
        entry["dual_sequence_check"] =
            ordered_json{{"accepted", pas.accepted},
                         {"beta", pas.beta},
                         {"gamma_star", pas.gamma_star},
                         {"residual", std::max(pas.residual_ii, pas.residual_iii)}};
        try {
            auto td = drg::td_parameters(qp.theta, qp.theta_star, opt.tol);
            entry["tridiagonal"] = ordered_json{{"beta", td.beta},
                                                {"gamma", td.gamma},
                                                {"gamma_star", td.gamma_star},
                                                {"rho", td.rho},
                                                {"rho_star", td.rho_star},
                                                {"beta_gap", td.beta_gap}};
            auto aw = drg::aw_parameters(aseq, qp.as, qp.theta, qp.theta_star, td,
                                         opt.tol);
            entry["askey_wilson"] = ordered_json{{"omega", aw.omega},
                                                 {"eta", aw.eta},
                                                 {"eta_star", aw.eta_star},
                                                 {"max_residual", aw.max_residual}};
        } catch (const std::domain_error& e) {
            entry["scalar_error"] = e.what();
        }
        orderings.push_back(std::move(entry));
    }
    out["qpoly"] = ordered_json{{"count", static_cast<int>(an.qps.size())},
                                {"orderings", std::move(orderings)}};

    if (opt.classical) {
        ordered_json matches = ordered_json::array();
        for (const auto& cp : drg::classical_parameters(ia)) {
            ordered_json m{{"d", cp.d},
                           {"b", cp.b},
                           {"alpha", drg::to_string(cp.alpha)},
                           {"sigma", drg::to_string(cp.sigma)}};
            try {
                auto cq = drg::classical_qpoly(ia, an.sp, cp, opt.tol);
                m["predicted"] = ordered_json{
                    {"theta", cq.theta},
                    {"theta_index", cq.theta_index},
                    {"order", ints(cq.order)},
                    {"order_residual", cq.order_residual},
                    {"dual_sequence_accepted", cq.pascasio.accepted}};
            } catch (const std::domain_error& e) {
                m["predicted"] = ordered_json{{"error", e.what()}};
            }
            matches.push_back(std::move(m));
        }
        out["classical"] = ordered_json{{"matches", std::move(matches)}};
    }
    return an;
}

void print_array_summary(const drg::IntersectionArray& ia, const ArrayAnalysis& an,
                         std::ostream& os) {
    os << "array {" << drg::format_array(ia) << "}  D = " << ia.d
       << "  n = " << drg::to_string(ia.n)
       << "  k = " << drg::to_string(ia.valency()) << "\n";
    os << "feasible: " << (an.feasible ? "yes" : "no") << "\n";
    os << "spectrum:\n";
    for (int j = 0; j <= ia.d; ++j)
        os << "  theta = " << an.sp.theta[j] << "  mult = " << an.sp.mult[j]
           << "\n";
    os << "krein condition: " << (an.kr.krein_ok ? "ok" : "violated") << "\n";
    os << "Q-polynomial orderings: " << an.qps.size() << "\n";
    for (const auto& qp : an.qps) {
        os << "  order [";
        for (std::size_t t = 0; t < qp.order.size(); ++t)
            os << (t ? " " : "") << qp.order[t];
        os << "]  duality residual " << qp.duality_residual << "\n";
    }
}

int write_json(const ordered_json& out, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        std::cerr << "error: cannot open " << path << " for writing\n";
        return 1;
    }
    os << drg::to_json_text(out);
    os.flush();
    if (!os.good()) {
        std::cerr << "error: failed writing " << path << "\n";
        return 1;
    }
    return 0;
}

int run_array(const std::string& text, const Options& opt) {
    ordered_json out{{"schema", 1}, {"tolerance", opt.tol}, {"seed", opt.seed}};
    out["input"] = ordered_json{{"mode", "array"}, {"text", text}};

    drg::IntersectionArray ia = drg::parse_array(text);
    ArrayAnalysis an = analyze_array(ia, opt, out);
    print_array_summary(ia, an, std::cout);
    if (!opt.json_path.empty()) {
        int rc = write_json(out, opt.json_path);
        if (rc) return rc;
    }
    return an.feasible ? 0 : 2;
}

drg::Graph build_graph(const Options& opt) {
    if (!opt.edge_list.empty()) {
        std::ifstream in(opt.edge_list, std::ios::binary);
        if (!in) throw std::invalid_argument("cannot open " + opt.edge_list);
        std::ostringstream ss;
        ss << in.rdbuf();
        return drg::from_edge_list(ss.str(), opt.edge_list);
    }
    if (opt.family.empty())
        throw std::invalid_argument("need --family or --edge-list");
    std::vector<long> params;
    if (opt.family == "hypercube") params = {opt.fam_d};
    else if (opt.family == "hamming") params = {opt.fam_d, opt.fam_q};
    else if (opt.family == "johnson") params = {opt.fam_n, opt.fam_k};
    else if (opt.family == "cycle") params = {opt.fam_n};
    return drg::build_family(opt.family, params);
}

int run_graph(const Options& opt) {
    ordered_json out{{"schema", 1}, {"tolerance", opt.tol}, {"seed", opt.seed}};
    ordered_json input{{"mode", "graph"}};
    if (!opt.edge_list.empty()) input["edge_list"] = opt.edge_list;
    if (!opt.family.empty()) input["family"] = opt.family;
    input["base_vertex"] = opt.base_vertex;
    out["input"] = std::move(input);

    drg::Graph g = build_graph(opt);
    out["graph"] = ordered_json{{"name", g.name},
                                {"n", g.n},
                                {"diameter", g.diameter},
                                {"connected", g.connected}};

    auto chk = drg::check_drg(g);
    ordered_json dj{{"is_drg", chk.is_drg}};
    if (!chk.is_drg) dj["message"] = chk.message;
    if (chk.witness.y >= 0)
        dj["witness"] = ordered_json{{"y", chk.witness.y},
                                     {"z", chk.witness.z},
                                     {"h", chk.witness.h},
                                     {"i", chk.witness.i},
                                     {"j", chk.witness.j},
                                     {"count", chk.witness.count},
                                     {"expected", chk.witness.expected}};
    out["drg_check"] = std::move(dj);

    if (!chk.is_drg) {
        std::cout << g.name << ": not distance-regular\n  " << chk.message << "\n";
        if (!opt.json_path.empty()) {
            int rc = write_json(out, opt.json_path);
            if (rc) return rc;
        }
        return 2;
    }

    ArrayAnalysis an = analyze_array(chk.array, opt, out);
    std::cout << g.name << ": distance-regular\n";
    print_array_summary(chk.array, an, std::cout);

    bool need_algebra =
        opt.want_modules || opt.want_identities || opt.want_balanced;
    if (need_algebra) {
        auto alg = drg::bose_mesner(g, chk.array, opt.tol);
        auto sub = drg::subconstituent(alg, opt.base_vertex);

        if (opt.want_identities) {
            auto rep = drg::verify_identities(alg, sub, an.kr, opt.tol);
            ordered_json checks = ordered_json::array();
            for (const auto& c : rep.checks)
                checks.push_back(ordered_json{{"name", c.name},
                                              {"frobenius", c.frobenius},
                                              {"max_abs", c.max_abs},
                                              {"pass", c.pass}});
            out["identities"] = ordered_json{{"all_pass", rep.all_pass},
                                             {"worst", rep.worst},
                                             {"checks", std::move(checks)}};
            std::cout << "identity suite: " << (rep.all_pass ? "pass" : "FAIL")
                      << "  worst residual " << rep.worst << "\n";
        }

        if (opt.want_balanced) {
            int e_index = an.qps.empty() ? 1 : an.qps.front().order[1];
            auto bs = drg::balanced_set_check(alg, e_index, opt.tol);
            out["balanced_set"] = ordered_json{{"e_index", e_index},
                                               {"applicable", bs.applicable},
                                               {"balanced", bs.balanced},
                                               {"max_residual", bs.max_residual},
                                               {"span_residual", bs.span_residual}};
            std::cout << "balanced set (E_" << e_index << "): "
                      << (!bs.applicable ? "not applicable"
                                         : bs.balanced ? "balanced" : "NOT balanced")
                      << "\n";
        }

        if (opt.want_modules) {
            if (an.qps.empty()) {
                out["modules"] =
                    ordered_json{{"error", "no Q-polynomial ordering"}};
            } else {
                auto dec =
                    drg::decompose(alg, sub, an.qps.front(), opt.seed, opt.tol);
                ordered_json list = ordered_json::array();
                for (const auto& m : dec.modules)
                    list.push_back(
                        ordered_json{{"dim", static_cast<int>(m.basis.size())},
                                     {"endpoint", m.endpoint},
                                     {"dual_endpoint", m.dual_endpoint},
                                     {"diameter", m.diameter_},
                                     {"dual_diameter", m.dual_diameter},
                                     {"shell_dims", ints(m.shell_dims)},
                                     {"dual_shell_dims", ints(m.dual_shell_dims)},
                                     {"thin", m.thin},
                                     {"dual_thin", m.dual_thin},
                                     {"td_pair_ok", m.td_pair_ok},
                                     {"invariance_residual",
                                      m.invariance_residual}});
                ordered_json groups = ordered_json::array();
                for (const auto& grp : dec.groups) groups.push_back(ints(grp));
                out["modules"] = ordered_json{{"total_dim", dec.total_dim},
                                              {"seed", dec.seed},
                                              {"worst_residual", dec.worst_residual},
                                              {"list", std::move(list)},
                                              {"groups", std::move(groups)}};
                std::cout << "T-modules: " << dec.modules.size()
                          << " irreducible summands, total dim " << dec.total_dim
                          << "\n";
            }
        }
    }

    if (!opt.json_path.empty()) {
        int rc = write_json(out, opt.json_path);
        if (rc) return rc;
    }
    return an.feasible ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"invariants of distance-regular graphs"};
    app.require_subcommand(1);

    Options opt;
    if (const char* env = std::getenv("DRG_TOLERANCE")) {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end != env && v > 0) opt.tol = v;
    }

    std::string array_text;
    auto* arr = app.add_subcommand("array", "analyze an intersection array");
    arr->add_option("text", array_text, "\"b0,...,b_{D-1};c1,...,cD\"")->required();

    auto* gr = app.add_subcommand("graph", "build a graph and analyze it");
    gr->add_option("--family", opt.family, "hypercube | hamming | johnson | cycle");
    gr->add_option("--edge-list", opt.edge_list, "path to an edge list file");
    gr->add_option("--d", opt.fam_d, "dimension (hypercube, hamming)");
    gr->add_option("--q", opt.fam_q, "alphabet size (hamming)");
    gr->add_option("--n", opt.fam_n, "vertices (cycle) or ground set (johnson)");
    gr->add_option("--k", opt.fam_k, "subset size (johnson)");
    gr->add_option("--base-vertex", opt.base_vertex, "base vertex for T(x)");
    gr->add_flag("--modules", opt.want_modules, "decompose the standard module");
    gr->add_flag("--verify-identities", opt.want_identities,
                 "run the subconstituent identity suite");
    gr->add_flag("--balanced-set", opt.want_balanced,
                 "test the balanced set condition");

    for (CLI::App* sub : {arr, gr}) {
        sub->add_option("--tolerance", opt.tol, "numeric tolerance");
        sub->add_option("--seed", opt.seed, "random seed for the decomposition");
        sub->add_option("--json", opt.json_path, "write a JSON report here");
        sub->add_flag("--classical", opt.classical,
                      "search for classical parameters");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (arr->parsed()) return run_array(array_text, opt);
        return run_graph(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
