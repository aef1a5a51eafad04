#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "superdenom/cli.hpp"
#include "superdenom/errors.hpp"

using namespace superdenom;
using nlohmann::ordered_json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    args.insert(args.begin(), "superdenom");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli(int(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
    auto p = std::filesystem::temp_directory_path() / ("superdenom_test_" + name);
    std::ofstream(p) << content;
    return p;
}

ordered_json without_timings(ordered_json j) {
    j.erase("timings");
    for (auto& c : j["checks"]) c.erase("seconds");
    return j;
}

} // namespace

TEST_CASE("verify A(2,1) produces a passing JSON report") {
    auto r = cli({"verify", "--family", "A", "--m", "2", "--n", "1", "--height", "6", "--checks", "all",
                  "--format", "json"});
    CHECK(r.code == kExitPass);
    auto j = ordered_json::parse(r.out);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"spec", "N", "status", "checks", "timings"});
    CHECK(j["spec"]["name"] == "A(2,1)");
    CHECK(j["N"] == 6);
    CHECK(j["status"] == "pass");
    CHECK(j["checks"].size() == 12);
    for (const auto& c : j["checks"]) CHECK(c["status"] == "pass");
    CHECK(j["timings"].contains("total_seconds"));
}

TEST_CASE("reports are deterministic apart from timings") {
    std::vector<std::string> args{"verify", "--family", "B", "--m", "1", "--n", "2", "--height", "5"};
    auto a = cli(args), b = cli(args);
    CHECK(without_timings(ordered_json::parse(a.out)) == without_timings(ordered_json::parse(b.out)));
}

TEST_CASE("excluded and malformed specs exit with the usage code") {
    CHECK(cli({"verify", "--family", "A", "--m", "2", "--n", "2"}).code == kExitUsage);
    CHECK(cli({"verify", "--family", "Q", "--m", "2", "--n", "1"}).code == kExitUsage);
    CHECK(cli({"verify", "--family", "C", "--m", "1"}).code == kExitUsage);
    CHECK(cli({"verify", "--family", "A", "--m", "2", "--n", "1", "--checks", "bogus"}).code == kExitUsage);
    CHECK(cli({"verify", "--family", "A", "--m", "2", "--n", "1", "--height", "-1"}).code == kExitUsage);
    CHECK(cli({"verify", "--m", "2"}).code == kExitUsage);
    CHECK(cli({}).code == kExitUsage);
    CHECK(cli({"frobnicate"}).code == kExitUsage);
}

TEST_CASE("B(1,1) at height four passes including the e^rho_hat coefficient") {
    auto r = cli({"verify", "--family", "B", "--m", "1", "--n", "1", "--height", "4", "--format", "text"});
    CHECK(r.code == kExitPass);
    CHECK(r.out.find("PASS rho_hat_coefficient") != std::string::npos);
}

TEST_CASE("info reports") {
    auto a = ordered_json::parse(cli({"info", "--family", "A", "--m", "2", "--n", "1"}).out);
    CHECK(a["hdual"] == "1");
    CHECK(a["weyl_sharp_order"] == 2);
    CHECK(a["theta"] == "eps1-eps2");
    CHECK(a["theta_ball"] == 3);

    auto c = ordered_json::parse(cli({"info", "--family", "C", "--m", "2"}).out);
    CHECK(c["delta2"] == 0);
    CHECK(c["xi"] == "del1");

    auto g = ordered_json::parse(cli({"info", "--family", "G3"}).out);
    CHECK(g["basis"]["eps"] == 3);
    CHECK(g["basis"]["eps_sum_zero"] == true);

    auto t = cli({"info", "--family", "F4", "--format", "text"});
    CHECK(t.code == kExitPass);
    CHECK(t.out.find("theta: -eps2+eps3") != std::string::npos);
}

TEST_CASE("csv output, output files and the Theta graph") {
    auto csv = cli({"verify", "--family", "A", "--m", "2", "--n", "1", "--height", "2", "--checks",
                    "finite", "--format", "csv"});
    CHECK(csv.code == kExitPass);
    CHECK(csv.out.rfind("series,offsets,exponent,coefficient\n", 0) == 0);
    CHECK(csv.out.find("finite_rhs,") != std::string::npos);

    auto out = std::filesystem::temp_directory_path() / "superdenom_test_report.json";
    auto dot = std::filesystem::temp_directory_path() / "superdenom_test_theta.dot";
    auto r = cli({"verify", "--family", "A", "--m", "3", "--n", "1", "--height", "3", "--out", out.string(),
                  "--theta-dot", dot.string()});
    CHECK(r.code == kExitPass);
    CHECK(r.out.empty());
    std::ifstream rep(out);
    CHECK(ordered_json::parse(rep)["status"] == "pass");
    std::ifstream g(dot);
    std::string first;
    std::getline(g, first);
    CHECK(first.rfind("graph theta", 0) == 0);
}

TEST_CASE("batch runs") {
    auto good = temp_file("good.txt", "# acceptance subset\nA 2 1 6\n\nA 3 1 6\nB 1 2 6  # trailing\nB 2 2 6\n");
    auto r = cli({"batch", good.string(), "--workers", "2", "--format", "text"});
    CHECK(r.code == kExitPass);
    CHECK(r.out.find("A(3,1),6,,pass") != std::string::npos);
    CHECK(r.out.find("B(2,2),6,,pass") != std::string::npos);

    auto empty = temp_file("empty.txt", "");
    auto e = cli({"batch", empty.string()});
    CHECK(e.code == kExitPass);
    CHECK(ordered_json::parse(e.out)["total"] == 0);

    auto bad = temp_file("bad.txt", "A 2 1 6\nA 2 1 6 imag-mult-1\n");
    auto b = cli({"batch", bad.string(), "--checks", "finite,affine"});
    CHECK(b.code == kExitFail);
    auto j = ordered_json::parse(b.out);
    CHECK(j["runs"][0]["status"] == "pass");
    CHECK(j["runs"][1]["status"] == "fail");
    CHECK(j["runs"][1]["control"] == "imag-mult-1");

    CHECK(cli({"batch", "/nonexistent/superdenom.txt"}).code == kExitUsage);
    auto junk = temp_file("junk.txt", "A 2\n");
    CHECK(cli({"batch", junk.string()}).code == kExitUsage);
}

TEST_CASE("worker count falls back to the environment") {
    auto file = temp_file("env.txt", "A 2 1 4\nC 2 0 4\n");
    setenv("SUPERDENOM_WORKERS", "2", 1);
    CHECK(cli({"batch", file.string()}).code == kExitPass);
    setenv("SUPERDENOM_WORKERS", "zero", 1);
    CHECK(cli({"batch", file.string()}).code == kExitUsage);
    unsetenv("SUPERDENOM_WORKERS");
}

TEST_CASE("parsing helpers") {
    CHECK_FALSE(parse_batch_line("   # comment").has_value());
    CHECK_FALSE(parse_batch_line("").has_value());
    auto c = parse_batch_line("D 3 1 5 drop-s");
    REQUIRE(c.has_value());
    CHECK(c->spec.family == Family::D);
    CHECK(c->height == 5);
    CHECK(c->control == "drop-s");
    CHECK(c->root_options.drop_s_index.has_value());
    CHECK_THROWS_AS(parse_batch_line("A 2 1 5 extra words"), ConfigError);
    CHECK_THROWS_AS(parse_control("nope"), ConfigError);
    auto sel = parse_checks("finite,lemmas");
    CHECK(sel.finite);
    CHECK_FALSE(sel.affine);
    CHECK_FALSE(sel.translation);
    CHECK(sel.lemmas);
    CHECK_THROWS_AS(parse_checks(""), ConfigError);
}
