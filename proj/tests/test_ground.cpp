#include "catch_amalgamated.hpp"

#include "support.hpp"

using namespace testing;

TEST_CASE("ground multiplication", "[ground]") {
    CHECK(g_mul(val(GroundKind::TROP, "1/2"), val(GroundKind::TROP, "1/2")) == val(GroundKind::TROP, "1/4"));
    CHECK(g_mul(val(GroundKind::F1SQ, "-1"), val(GroundKind::F1SQ, "-1")).is_one());
    GroundTag t2 = tag(GroundKind::TROPN, 2);
    CHECK(g_mul(GroundValue::parse(t2, "(2,1)"), GroundValue::parse(t2, "(3,4)")) == GroundValue::parse(t2, "(6,4)"));
    CHECK(g_mul(val(GroundKind::TROP, "0"), val(GroundKind::TROP, "7")).is_zero());
}

TEST_CASE("ground addition", "[ground]") {
    CHECK(g_add(val(GroundKind::TROP, "3"), val(GroundKind::TROP, "5")) == val(GroundKind::TROP, "5"));
    CHECK(g_add(val(GroundKind::BOOL, "1"), val(GroundKind::BOOL, "1")).is_one());
    GroundTag t2 = tag(GroundKind::TROPN, 2);
    CHECK(g_add(GroundValue::parse(t2, "(2,1)"), GroundValue::parse(t2, "(2,3)")) == GroundValue::parse(t2, "(2,3)"));
    CHECK(g_add(val(GroundKind::INT, "-2"), val(GroundKind::INT, "2")).is_zero());
    CHECK_THROWS_AS(g_add(val(GroundKind::TROP, "1"), val(GroundKind::BOOL, "1")), Error);
}

TEST_CASE("sum comparison", "[ground]") {
    auto T = [](const char* s) { return val(GroundKind::TROP, s); };
    CHECK(g_leq_sum(OrderMode::pos, {T("3"), T("1")}, {T("5")}));
    auto I = [](const char* s) { return val(GroundKind::INT, s); };
    CHECK(g_leq_sum(OrderMode::alg, {I("2"), I("3")}, {I("5")}));
    auto R = [](const char* s) { return val(GroundKind::RPLUS, s); };
    CHECK_FALSE(g_leq_sum(OrderMode::pos, {R("5")}, {R("2"), R("2")}));
    CHECK(g_leq_sum(OrderMode::pos, {R("3")}, {R("2"), R("2")}));
}

TEST_CASE("base valuations", "[ground]") {
    GroundTag rat = tag(GroundKind::RAT);
    auto padic = base_valuation(BaseValuation::Kind::p_adic, rat, tag(GroundKind::TROP), 2);
    CHECK(padic(val(GroundKind::RAT, "12")) == val(GroundKind::TROP, "1/4"));
    CHECK(padic(val(GroundKind::RAT, "3/8")) == val(GroundKind::TROP, "8"));
    CHECK(padic(val(GroundKind::RAT, "0")).is_zero());
    auto triv = base_valuation(BaseValuation::Kind::trivial, rat, tag(GroundKind::TROP));
    CHECK(triv(val(GroundKind::RAT, "-7")).is_one());
    auto arch = base_valuation(BaseValuation::Kind::archimedean, rat, tag(GroundKind::RPLUS));
    CHECK(arch(val(GroundKind::RAT, "-3/2")) == val(GroundKind::RPLUS, "3/2"));
    CHECK(padic_order(Q(48), 2) == 4);
    CHECK(padic_order(Q(1, 9), 3) == -2);
    CHECK_THROWS_AS(parse_base_valuation("p_adic(two)", rat, tag(GroundKind::TROP)), Error);
}

TEST_CASE("parse and print values", "[ground]") {
    for (const char* s : {"0", "1", "3/4", "7"}) CHECK(val(GroundKind::TROP, s).str() == s);
    CHECK_THROWS_AS(val(GroundKind::TROP, "-1"), Error);
    CHECK_THROWS_AS(val(GroundKind::BOOL, "2"), Error);
    CHECK(GroundTag::parse("tropn(3)") == tag(GroundKind::TROPN, 3));
    CHECK_THROWS_AS(GroundTag::parse("REALS"), Error);
}

TEST_CASE("units and inverses", "[ground]") {
    CHECK(val(GroundKind::RAT, "3/5").inverse() == val(GroundKind::RAT, "5/3"));
    CHECK_FALSE(val(GroundKind::INT, "2").is_unit());
    CHECK(val(GroundKind::INT, "-1").is_unit());
    CHECK_THROWS_AS(val(GroundKind::NAT, "2").inverse(), Error);
}
