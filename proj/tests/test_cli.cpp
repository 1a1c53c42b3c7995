#include "catch_amalgamated.hpp"

#include <sys/wait.h>

#include <cstdio>
#include <string>

#include "bluebend/io.hpp"
#include "support.hpp"

using namespace testing;
using bluebend::io::json;

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    std::string cmd = "cd " BLUEBEND_DATA " && " + env + " " BLUEBEND_CLI " " + args + " 2>/dev/null";
    FILE* f = popen(cmd.c_str(), "r");
    REQUIRE(f != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, n);
    int status = pclose(f);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_CASE("cli point test", "[cli]") {
    auto r = run("trop-check --in line.json --point '{\"x\":\"1\",\"y\":\"1\"}'");
    CHECK(r.code == 0);
    CHECK(json::parse(r.out) == json::parse(R"({"in_tropicalization": true})"));
    r = run("trop-check --in line.json --point '{\"x\":\"2\",\"y\":\"1\"}'");
    CHECK(json::parse(r.out)["in_tropicalization"] == false);
}

TEST_CASE("cli spectrum", "[cli]") {
    auto r = run("spectrum --in nonlocal.json");
    CHECK(r.code == 0);
    CHECK(json::parse(r.out) == json::parse(R"({"primes": [["<zero>"]]})"));
}

TEST_CASE("cli pipeline", "[cli]") {
    auto r = run("apply-functor --functor pos --in Z.json | " BLUEBEND_CLI " derives --in - --relation '0 == 1'");
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["verdict"] == "Proved");
}

TEST_CASE("cli exit codes", "[cli]") {
    auto missing = run("show --in missing.json");
    CHECK(missing.code == 2);
    CHECK(json::parse(missing.out)["error"]["code"] == "ParseError");
    CHECK(run("show --in line.json --no-such-flag").code == 2);
    CHECK(run("weights --in line.json --point '{\"x\":\"2\",\"y\":\"1\"}'").code == 4);
    auto unknown = run("derives --in trop_line.json --relation 'x^3 + y <= 1 + y^5' --budget-depth 0");
    CHECK((unknown.code == 0 || unknown.code == 3));
    if (unknown.code == 3) CHECK(json::parse(unknown.out)["verdict"] == "Unknown");
    CHECK(run("show --in line.json --format svg").code == 2);
    CHECK(run("show --in line.json", "BLUEBEND_BUDGET=bad").code == 2);
    CHECK(run("show --in line.json", "BLUEBEND_BUDGET=4,6,4").code == 0);
}

TEST_CASE("cli round trip", "[cli]") {
    for (const char* f : {"line.json", "nonlocal.json", "monoid_st.json", "trop_line.json", "f1x_le.json"}) {
        auto r = run(std::string("show --in ") + f);
        REQUIRE(r.code == 0);
        auto again = bluebend::io::presentation_from_json(json::parse(r.out));
        auto orig = bluebend::io::presentation_from_json(bluebend::io::read_file(std::string(BLUEBEND_DATA "/") + f));
        CHECK(congruence_equiv(again, orig).outcome == Outcome::Proved);
    }
}

TEST_CASE("cli hypersurface and svg", "[cli]") {
    auto r = run("hypersurface --in line2.json --poly 'x + y + 2' --base 'p_adic(2)'");
    REQUIRE(r.code == 0);
    auto j = json::parse(r.out);
    CHECK(j["vertices"][0] == json::parse(R"(["-1","-1"])"));
    CHECK(j["balancing_defects"].empty());
    auto a = run("hypersurface --in conic.json --poly 'x^2 + y^2 + 1' --format svg");
    auto b = run("hypersurface --in conic.json --poly 'x^2 + y^2 + 1' --format svg");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.rfind("<svg", 0) == 0);
}

TEST_CASE("cli valuation, weights and fans", "[cli]") {
    auto v = json::parse(run("check-valuation --in valuation_x2minus4.json").out);
    CHECK(v["verdict"] == "Proved");
    CHECK(v["class"] == "nonarch_seminorm");
    CHECK(json::parse(run("check-valuation --in valuation_character.json").out)["class"] == "character");
    auto w = json::parse(run("weights --in conic.json --point '{\"x\":\"2\",\"y\":\"2\"}'").out);
    CHECK(w["weight"] == 2);
    auto k = run("kato --in ring_st.json --recover");
    CHECK(k.code == 0);
    CHECK(json::parse(k.out)["isomorphism"]["verdict"] == "Proved");
    auto c = json::parse(run("cone-check --in monoid_cone.json --point '{\"s\":\"1/4\",\"t\":\"1/2\"}'").out);
    CHECK(c["in_cone"] == true);
    auto an = json::parse(run("an --in f1x.json --size 2 --budget-degree 2").out);
    CHECK(an["spans"].size() == 7);
    auto g = run("globalize --in nonlocal.json");
    CHECK(g.code == 0);
    CHECK(json::parse(g.out)["generators"].size() == 2);
}

TEST_CASE("cli constructions", "[cli]") {
    CHECK(run("tensor --in tensor_example.json").code == 0);
    auto l = json::parse(run("localize --in f1x.json --elem x").out);
    CHECK(l["generators"].size() == 2);
    auto b = json::parse(run("bend --in line.json --target BOOL").out);
    CHECK(b["bend"]["ground"] == "BOOL");
    auto gg = json::parse(run("gg --in line.json --degree 1 --target BOOL").out);
    CHECK(gg["subaddition"].size() == 3);
}
