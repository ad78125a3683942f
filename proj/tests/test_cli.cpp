#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace {

std::string tmp_path(const std::string& stem) {
    return "/tmp/drg_cli_test_" + std::to_string(getpid()) + "_" + stem;
}

int run(const std::string& args, const std::string& env = "") {
    std::string cmd = env + " " + DRG_CLI_PATH + " " + args + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

TEST_CASE("array subcommand succeeds on the cube and is deterministic") {
    auto out1 = tmp_path("cube1.json");
    auto out2 = tmp_path("cube2.json");
    CHECK(run("array \"3,2,1;1,2,3\" --json " + out1) == 0);
    CHECK(run("array \"3,2,1;1,2,3\" --json " + out2) == 0);

    auto text1 = slurp(out1);
    auto text2 = slurp(out2);
    REQUIRE(!text1.empty());
    CHECK(text1 == text2);

    auto j = nlohmann::json::parse(text1);
    CHECK(j["schema"] == 1);
    CHECK(j.contains("tolerance"));
    CHECK(j.contains("seed"));
    CHECK(j["array"]["diameter"] == 3);
    CHECK(j["feasibility"]["feasible"] == true);
    CHECK(j["qpoly"]["orderings"].size() == 1);
    std::remove(out1.c_str());
    std::remove(out2.c_str());
}

TEST_CASE("exit codes distinguish errors from infeasibility") {
    // malformed / invalid input
    CHECK(run("array \"3,2,1;1,2\"") == 1);
    CHECK(run("array \"3,2,1;1,2,4\"") == 1);
    CHECK(run("array \"nonsense\"") == 1);
    CHECK(run("") == 1);

    // parses but fails feasibility: fractional shell size
    CHECK(run("array \"3,2,1;1,2,2\"") == 2);
}

TEST_CASE("graph subcommand on built-in families") {
    CHECK(run("graph --family hypercube --d 3") == 0);
    CHECK(run("graph --family cycle --n 7") == 0);
    CHECK(run("graph --family johnson --n 8 --k 3") == 0);

    // builder constraint violations are usage errors
    CHECK(run("graph --family cycle --n 4") == 1);
    CHECK(run("graph --family nosuch --d 3") == 1);
}

TEST_CASE("non-distance-regular input exits 2 with a witness") {
    auto edges = tmp_path("prism.txt");
    {
        std::ofstream out(edges);
        out << "0 1\n1 2\n2 3\n3 4\n0 4\n5 6\n6 7\n7 8\n8 9\n5 9\n"
               "0 5\n1 6\n2 7\n3 8\n4 9\n";
    }
    auto json_path = tmp_path("prism.json");
    CHECK(run("graph --edge-list " + edges + " --json " + json_path) == 2);
    auto j = nlohmann::json::parse(slurp(json_path));
    CHECK(j["drg_check"]["is_drg"] == false);
    CHECK(j["drg_check"]["witness"]["y"] == 0);
    CHECK(j["drg_check"]["witness"]["z"] == 5);
    std::remove(edges.c_str());
    std::remove(json_path.c_str());
}

TEST_CASE("tolerance can come from the environment") {
    auto out = tmp_path("tol.json");
    CHECK(run("array \"3,2,1;1,2,3\" --json " + out, "DRG_TOLERANCE=1e-6") == 0);
    auto j = nlohmann::json::parse(slurp(out));
    CHECK(j["tolerance"] == 1e-6);
    std::remove(out.c_str());

    // flag wins over environment
    auto out2 = tmp_path("tol2.json");
    CHECK(run("array \"3,2,1;1,2,3\" --tolerance 1e-9 --json " + out2,
              "DRG_TOLERANCE=1e-6") == 0);
    auto j2 = nlohmann::json::parse(slurp(out2));
    CHECK(j2["tolerance"] == 1e-9);
    std::remove(out2.c_str());
}

TEST_CASE("classical parameter reporting") {
    auto out = tmp_path("classical.json");
    CHECK(run("array \"6,4,2;1,2,3\" --classical --json " + out) == 0);
    auto j = nlohmann::json::parse(slurp(out));
    REQUIRE(j["classical"]["matches"].size() == 1);
    auto m = j["classical"]["matches"][0];
    CHECK(m["d"] == 3);
    CHECK(m["b"] == 1);
    CHECK(m["alpha"] == "0");
    CHECK(m["sigma"] == "2");
    std::remove(out.c_str());
}

TEST_CASE("graph subcommand full pipeline emits module data") {
    auto out = tmp_path("cube_full.json");
    CHECK(run("graph --family hypercube --d 3 --modules --verify-identities "
              "--balanced-set --json " +
              out) == 0);
    auto j = nlohmann::json::parse(slurp(out));
    CHECK(j["identities"]["all_pass"] == true);
    CHECK(j["modules"]["total_dim"] == 8);
    CHECK(j["modules"]["list"].size() == 3);
    CHECK(j["balanced_set"]["balanced"] == true);
    std::remove(out.c_str());
}
