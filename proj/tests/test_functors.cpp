#include "catch_amalgamated.hpp"

#include "support.hpp"

using namespace testing;

TEST_CASE("pos kills rings", "[functors]") {
    for (auto k : {GroundKind::INT, GroundKind::RAT}) {
        auto p = apply_functor(pres(k, {}), FunctorTag::POS);
        CHECK(equal_in_quotient(p, p.zero(), p.one()).outcome == Outcome::Proved);
    }
}

TEST_CASE("pos and hull are idempotent", "[functors]") {
    auto p = pres(GroundKind::NAT, {"x"}, {"x <= 1 + 1"});
    for (auto f : {FunctorTag::POS, FunctorTag::HULL}) {
        auto once = apply_functor(p, f);
        CHECK(congruence_equiv(apply_functor(once, f), once).outcome == Outcome::Proved);
    }
}

TEST_CASE("pos makes everything nonnegative", "[functors]") {
    auto p = apply_functor(pres(GroundKind::NAT, {"x", "y"}, {"x + y == 1"}), FunctorTag::POS);
    CHECK(derive(p, "0 <= x") == Outcome::Proved);
    CHECK(derive(p, "0 <= y") == Outcome::Proved);
}

TEST_CASE("idem on the naturals", "[functors]") {
    auto p = apply_functor(pres(GroundKind::NAT, {}), FunctorTag::IDEM);
    CHECK(equal_in_quotient(p, Monomial::constant(p.c(2)), p.one()).outcome == Outcome::Proved);
    CHECK(equal_in_quotient(p, Monomial::constant(p.c(5)), p.one()).outcome == Outcome::Proved);
}

TEST_CASE("views", "[functors]") {
    auto t = apply_functor(pres(GroundKind::TROP, {}), FunctorTag::POS);
    CHECK(holds_in_view(t, FunctorTag::CORE, parse_relation(t, "3 == 5")).outcome == Outcome::Disproved);

    auto c = pres(GroundKind::TROP, {"a", "b"}, {"0 <= 1", "a <= b", "b <= a"});
    CHECK(holds_in_view(c, FunctorTag::CONIC, parse_relation(c, "a == b")).outcome == Outcome::Proved);

    auto r = line();
    CHECK(holds_in_view(r, FunctorTag::MON, parse_relation(r, "x <= -1*y + -1")).outcome == Outcome::Proved);
    CHECK(holds_in_view(r, FunctorTag::PLUS, parse_relation(r, "x + y == -1")).outcome == Outcome::Proved);
    CHECK_THROWS_AS(apply_functor(r, FunctorTag::CORE), Error);
}

TEST_CASE("tensor products", "[functors]") {
    auto fx = pres(GroundKind::F1, {"x"}), fy = pres(GroundKind::F1, {"y"}), f1 = pres(GroundKind::F1, {});
    auto xy = tensor(fx, fy, f1, {}, {});
    CHECK(congruence_equiv(xy, pres(GroundKind::F1, {"x", "y"})).outcome == Outcome::Proved);

    auto nat_bool = tensor(pres(GroundKind::NAT, {}), pres(GroundKind::BOOL, {}), f1, {}, {});
    CHECK(nat_bool.ground == tag(GroundKind::BOOL));
    CHECK(congruence_equiv(nat_bool, pres(GroundKind::BOOL, {})).outcome == Outcome::Proved);

    // B tensor_B B for B = F1[x].
    auto unit = tensor(fx, fx, fx, {{"x", fx.gen("x")}}, {{"x", fx.gen("x")}});
    CHECK(congruence_equiv(unit, fx).outcome == Outcome::Proved);

    auto bad = pres(GroundKind::F1, {"x"}, {"x <= 1"});
    CHECK_THROWS_AS(tensor(fx, fx, bad, {{"x", fx.gen("x")}}, {{"x", fx.gen("x")}}), Error);
}

TEST_CASE("localization", "[functors]") {
    auto fx = pres(GroundKind::F1, {"x"});
    auto l = localize(fx, {fx.gen("x")});
    REQUIRE(l.generators.size() == 2);
    CHECK(equal_in_quotient(l, l.gen("x") * l.gen(l.generators[1]), l.one()).outcome == Outcome::Proved);

    auto n = nonlocal();
    auto nt = localize(n, {n.gen("T")});
    CHECK(equal_in_quotient(nt, nt.gen("T"), nt.one()).outcome == Outcome::Proved);

    CHECK(congruence_equiv(localize(fx, {fx.one()}), fx).outcome == Outcome::Proved);
    CHECK_THROWS_AS(localize(fx, {fx.zero()}), Error);
}

TEST_CASE("free extensions", "[functors]") {
    auto e = free_extension(pres(GroundKind::F1, {}), {"x"});
    CHECK(congruence_equiv(e, pres(GroundKind::F1, {"x"})).outcome == Outcome::Proved);
    auto twice = free_extension(free_extension(pres(GroundKind::F1, {}), {"x"}), {"y"});
    CHECK(congruence_equiv(twice, free_extension(pres(GroundKind::F1, {}), {"x", "y"})).outcome == Outcome::Proved);
    auto b = free_extension(pres(GroundKind::BOOL, {}), {"x"});
    CHECK(derive(b, "1 + 1 == 1") == Outcome::Proved);
    CHECK_THROWS_AS(free_extension(b, {"x"}), Error);
}
