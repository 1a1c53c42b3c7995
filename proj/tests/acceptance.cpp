// Standalone acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>

#include "bluebend/io.hpp"
#include "properties.hpp"

using namespace testing;

namespace {

struct Outcome_ {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (cond) return;
        if (ok) detail = what;
        ok = false;
    }
};

Presentation load(const std::string& name) {
    return io::presentation_from_json(io::read_file(std::string(BLUEBEND_DATA "/") + name + ".json"));
}

using Clock = std::chrono::steady_clock;

Q frac(long a, long b) {
    Q q(a, b);
    q.canonicalize();
    return q;
}

bool run(int id, double limit_s, const std::function<Outcome_()>& body) {
    auto t0 = Clock::now();
    Outcome_ r;
    try {
        r = body();
    } catch (const std::exception& e) {
        r.ok = false;
        r.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (secs >= limit_s) r.require(false, "took " + std::to_string(secs) + " s, limit " + std::to_string(limit_s) + " s");
    std::printf("criterion %2d: %s (%.3f s)%s%s\n", id, r.ok ? "PASS" : "FAIL", secs, r.detail.empty() ? "" : "  ",
                r.detail.c_str());
    std::fflush(stdout);
    return r.ok;
}

Outcome_ nonlocal_spectrum() {
    Outcome_ r;
    auto p = load("nonlocal");
    auto primes = prime_k_ideals(p);
    r.require(primes.size() == 1, "expected one prime, got " + std::to_string(primes.size()));
    if (!primes.empty()) {
        r.require(primes[0].generator_subset.empty() && !primes[0].tentative, "the prime is not {0}");
        r.require(primes[0].closure == std::vector<std::string>{"<zero>"}, "closure is not {0}");
    }
    auto g = globalize(p);
    r.require(equal_in_quotient(g, g.gen("T"), g.one()).is_proved(), "T = 1 not proved after globalizing");
    r.require(!equal_in_quotient(p, p.gen("T"), p.one()).is_proved(), "T = 1 already holds before globalizing");
    return r;
}

Outcome_ positivity_collapse() {
    Outcome_ r;
    for (const char* name : {"Z", "Q"}) {
        auto pos = apply_functor(load(name), FunctorTag::POS);
        r.require(derives(pos, parse_relation(pos, "0 == 1")).is_proved(), std::string(name) + ": 0 == 1 not proved");
    }
    auto n = apply_functor(pres(GroundKind::NAT, {}), FunctorTag::POS);
    r.require(derives(n, parse_relation(n, "0 == 1")).is_disproved(), "NAT collapsed as well");
    return r;
}

Outcome_ bend_vs_trop() {
    Outcome_ r;
    int checked = 0;
    for (const char* name : {"line", "conic", "line2", "plane", "x2minus4", "f1x_le", "monoid_st", "torus"}) {
        auto p = load(name);
        for (GroundKind k : {GroundKind::BOOL, GroundKind::TROP}) {
            auto v = trivial_into(p, k);
            auto t = trop_tp(p, v, tag(k));
            auto b = apply_functor(bend(p, v, tag(k)).underlying, FunctorTag::POS);
            Verdict e = congruence_equiv(t, b);
            r.require(e.is_proved(), std::string(name) + " into " + tag(k).str() + ": " + outcome_name(e.outcome));
            ++checked;
        }
    }
    r.require(checked >= 10, "too few presentations");
    return r;
}

Outcome_ gg_vs_bend() {
    Outcome_ r;
    // Degree bound equal to the degree of the generator.
    for (auto [f, d] : {std::pair{"x + y + 1", 1}, std::pair{"x^2 + y^2 + 1", 2}, std::pair{"x + y + 2", 1}}) {
        auto p = pres(GroundKind::RAT, {"x", "y"}, {std::string(f) + " == 0"});
        for (bool padic : {false, true}) {
            auto v = padic ? padic_into(p, 2) : trivial_into(p, GroundKind::TROP);
            auto gg = gg_congruence(p, v, tag(GroundKind::TROP), d);
            auto b = bend(p, v, tag(GroundKind::TROP)).underlying;
            Verdict e = congruence_equiv(gg, b);
            r.require(e.is_proved(), std::string(f) + (padic ? " 2-adic: " : " trivial: ") + outcome_name(e.outcome));
        }
    }
    return r;
}

Outcome_ point_sets() {
    Outcome_ r;
    auto l = load("line");
    auto bp = bend(l, trivial_into(l, GroundKind::TROP), tag(GroundKind::TROP));
    const GroundTag T = tag(GroundKind::TROP);
    size_t agree = 0, total = 0, on = 0;
    for (int i = 1; i <= 100; ++i)
        for (int j = 1; j <= 100; ++j) {
            GroundValue x = GroundValue::rational(T, frac(i, 20)), y = GroundValue::rational(T, frac(j, 20));
            bool in = point_in_trop(bp, {{"x", x}, {"y", y}});
            bool oracle = max_twice({x, y, GroundValue::one(T)});
            agree += in == oracle;
            on += oracle;
            ++total;
        }
    r.require(agree == total, std::to_string(total - agree) + " TROP grid points disagree");
    r.require(on > 100, "grid misses the curve");

    const GroundTag T2 = tag(GroundKind::TROPN, 2);
    auto bp2 = bend(l, base_valuation(BaseValuation::Kind::trivial, l.ground, T2), T2);
    size_t bad = 0, on2 = 0;
    const std::vector<std::pair<long, long>> tails{{1, 2}, {2, 1}};
    for (int i = 1; i <= 20; ++i)
        for (int j = 1; j <= 20; ++j)
            for (auto [a, b] : tails) {
                auto x = GroundValue::tuple(T2, {frac(i, 10), Q(a)});
                auto y = GroundValue::tuple(T2, {frac(j, 10), Q(b)});
                bool in = point_in_trop(bp2, {{"x", x}, {"y", y}});
                // Lexicographic maximum attained twice, computed on the coordinates directly.
                std::vector<std::vector<Q>> vs{x.vec, y.vec, {Q(1), Q(1)}};
                auto best = *std::max_element(vs.begin(), vs.end());
                bool oracle = std::count(vs.begin(), vs.end(), best) >= 2;
                bad += in != oracle;
                on2 += oracle;
            }
    r.require(bad == 0, std::to_string(bad) + " TROPN(2) grid points disagree");
    r.require(on2 > 0, "TROPN(2) grid misses the curve");
    return r;
}

// Lattice length of the longest segment through the given exponent vectors.
long lattice_length(const std::vector<std::vector<long>>& pts) {
    long best = 0;
    for (auto& a : pts)
        for (auto& b : pts) {
            long g = 0;
            for (size_t k = 0; k < a.size(); ++k) g = std::gcd(g, std::labs(a[k] - b[k]));
            best = std::max(best, g);
        }
    return best;
}

// Exponent vectors of the terms tied for the maximum at an interior point of the cell.
std::vector<std::vector<long>> dual_edge(const PolyhedralComplex& c, const Cell& cell, const Presentation& ring,
                                         const FormalSum& f, const BaseValuation& v) {
    const size_t n = static_cast<size_t>(c.ambient_dim);
    std::vector<Q> u(n, Q(0));
    for (int vi : cell.vertices)
        for (size_t k = 0; k < n; ++k) u[k] += c.vertices[vi][k] / Q(static_cast<long>(cell.vertices.size()));
    for (int ri : cell.rays)
        for (size_t k = 0; k < n; ++k) u[k] += Q(c.rays[ri][k]);
    std::vector<std::pair<Q, std::vector<long>>> vals;
    for (auto& m : combine(f)) {
        Q s = v.kind == BaseValuation::Kind::p_adic ? Q(-padic_order(m.coeff.q, v.p)) : Q(0);
        std::vector<long> e(n, 0);
        for (size_t k = 0; k < n; ++k) {
            auto it = m.exps.find(ring.generators[k]);
            if (it != m.exps.end()) e[k] = it->second;
            s += u[k] * e[k];
        }
        vals.push_back({s, e});
    }
    Q best = vals.front().first;
    for (auto& [s, e] : vals) best = std::max(best, s);
    std::vector<std::vector<long>> tie;
    for (auto& [s, e] : vals)
        if (s == best) tie.push_back(e);
    return tie;
}

Outcome_ hypersurfaces() {
    Outcome_ r;
    auto R2 = pres(GroundKind::RAT, {"x", "y"});
    auto R3 = pres(GroundKind::RAT, {"x", "y", "z"});
    auto triv = trivial_into(R2, GroundKind::TROP);
    const std::vector<ZVec> rays{{Z(-1), Z(0)}, {Z(0), Z(-1)}, {Z(1), Z(1)}};
    auto sorted = [](std::vector<ZVec> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    auto line = tropical_hypersurface(R2, parse_sum(R2, "x + y + 1"), triv);
    r.require(sorted(line.rays) == rays && line.cells.size() == 3, "line rays");
    for (auto& cell : line.cells) r.require(cell.weight == 1 && cell.rays.size() == 1, "line weight");
    auto conic = tropical_hypersurface(R2, parse_sum(R2, "x^2 + y^2 + 1"), triv);
    r.require(sorted(conic.rays) == rays && conic.cells.size() == 3, "conic rays");
    for (auto& cell : conic.cells) r.require(cell.weight == 2 && cell.rays.size() == 1, "conic weight");

    struct Case {
        const Presentation* ring;
        const char* f;
        bool padic;
    };
    const std::vector<Case> corpus{{&R2, "x + y + 1", false},         {&R2, "x^2 + y^2 + 1", false},
                                   {&R2, "x + y + 2", true},          {&R2, "x + y + 2", false},
                                   {&R2, "x^2 + x*y + y^2 + 1", false}, {&R2, "x^3 + y^3 + 1 + 2*x*y", true},
                                   {&R2, "x^2 + 4*y + 1/2", true},    {&R3, "x + y + z + 1", false}};
    for (auto& cs : corpus) {
        auto v = cs.padic ? padic_into(*cs.ring, 2) : trivial_into(*cs.ring, GroundKind::TROP);
        auto f = parse_sum(*cs.ring, cs.f);
        auto c = tropical_hypersurface(*cs.ring, f, v);
        auto defects = balancing_defects(c);
        r.require(defects.empty(), std::string(cs.f) + " unbalanced: " + (defects.empty() ? "" : defects.front()));
        r.require(!c.ridges.empty(), std::string(cs.f) + " has no ridges");
        for (auto& cell : c.cells) {
            auto tie = dual_edge(c, cell, *cs.ring, f, v);
            r.require(tie.size() >= 2, std::string(cs.f) + ": cell interior is not on the hypersurface");
            if (c.ambient_dim == 2)
                r.require(lattice_length(tie) == cell.weight, std::string(cs.f) + ": weight differs from dual edge");
        }
    }
    return r;
}

Outcome_ mr_weights() {
    Outcome_ r;
    const std::vector<std::vector<std::pair<const char*, const char*>>> samples{
        {{"2", "2"}, {"4", "4"}, {"8", "8"}},
        {{"1/2", "1"}, {"1/4", "1"}, {"1/8", "1"}},
        {{"1", "1/2"}, {"1", "1/4"}, {"1", "1/8"}},
    };
    for (auto [name, w] : {std::pair{"line", 1}, std::pair{"conic", 2}}) {
        auto p = load(name);
        auto bp = bend(p, trivial_into(p, GroundKind::TROP), tag(GroundKind::TROP));
        for (auto& ray : samples)
            for (auto [x, y] : ray) {
                int got = mr_weight(bp, point(GroundKind::TROP, {{"x", x}, {"y", y}}), 2);
                r.require(got == w, std::string(name) + " at (" + x + ", " + y + "): " + std::to_string(got));
            }
    }
    return r;
}

Outcome_ macpherson() {
    Outcome_ r;
    Budget b;
    b.max_degree = 4;

    auto f1 = pres(GroundKind::F1, {"x"});
    auto an5 = macpherson_an(f1, KDesignation{}, 5, b);
    r.require(an5.spans.size() == 32, "F1[x] size 5: " + std::to_string(an5.spans.size()) + " spans");
    auto an4 = macpherson_an(f1, KDesignation{}, 4, b);
    r.require(an4.spans.size() == 31, "F1[x] size 4: " + std::to_string(an4.spans.size()) + " spans");
    r.require(an4.atoms.size() == 5, "F1[x]: " + std::to_string(an4.atoms.size()) + " atoms");
    for (size_t i = 0; i < an4.atoms.size(); ++i)
        for (size_t j = 0; j < an4.atoms.size(); ++j)
            r.require(an4.atom_le[i][j] == (i == j), "F1[x] atoms are comparable");
    auto bf = bend(apply_functor(f1, FunctorTag::POS), trivial_into(f1, GroundKind::BOOL), tag(GroundKind::BOOL))
                  .underlying;
    std::vector<Monomial> img;
    for (auto& a : an5.atoms) img.push_back(Monomial{GroundValue::one(bf.ground), a.exps});
    auto c1 = check_macpherson_bend(an5, bf, img, b);
    r.require(c1.ok, "F1[x] fragment: " + (c1.failures.empty() ? std::string() : c1.failures.front()));

    auto qx = pres(GroundKind::RAT, {"x"});
    KDesignation k;
    k.fragment_coeffs = {val(GroundKind::RAT, "2")};
    k.integral_prime = 2;
    auto anq = macpherson_an(qx, k, 5, b);
    r.require(anq.spans.size() == 243, "Q[x]: " + std::to_string(anq.spans.size()) + " spans");
    r.require(!anq.unknown, "Q[x] preorder has unknown comparisons");
    auto bq = pres(GroundKind::BOOL, {"c2", "inv_c2", "x"}, {"c2 + 1 == 1"}, {{"c2*inv_c2", "1"}});
    std::vector<Monomial> qimg;
    for (auto& a : anq.atoms) {
        long o = padic_order(a.coeff.q, 2);
        Exps e = a.exps;
        if (o > 0) e["c2"] = static_cast<int>(o);
        if (o < 0) e["inv_c2"] = static_cast<int>(-o);
        qimg.push_back(Monomial{GroundValue::one(bq.ground), e});
    }
    // The bend side counts c2 as a variable, so its degrees run one higher.
    auto c2 = check_macpherson_bend(anq, bq, qimg, Budget{});
    r.require(c2.ok, "Q[x] fragment: " + (c2.failures.empty() ? std::string() : c2.failures.front()));
    return r;
}

Outcome_ kato() {
    Outcome_ r;
    for (const char* name : {"affine_plane", "torus", "ring_st"}) {
        auto p = load(name);
        auto rec = recover_kato_from_bend(p);
        r.require(rec.iso.is_proved(), std::string(name) + ": " + outcome_name(rec.iso.outcome) + " " + rec.iso.witness);
        // Independent route: the monoid of the presentation read directly over F1.
        auto m = Presentation::free(tag(GroundKind::F1), p.generators);
        for (auto& [a, c] : p.monoid_relations)
            m.monoid_relations.push_back({Monomial{GroundValue::one(m.ground), a.exps}, Monomial{GroundValue::one(m.ground), c.exps}});
        auto direct = kato_fan(m);
        r.require(rec.fan.points == direct.points, std::string(name) + ": points differ");
        r.require(rec.fan.sections.size() == direct.sections.size(), std::string(name) + ": sections differ");
        for (size_t i = 0; i < std::min(rec.fan.sections.size(), direct.sections.size()); ++i) {
            r.require(rec.fan.sections[i].first == direct.sections[i].first, std::string(name) + ": open sets differ");
            r.require(congruence_equiv(rec.fan.sections[i].second, direct.sections[i].second).is_proved(),
                      std::string(name) + ": section over " + direct.sections[i].first + " differs");
        }
    }
    auto t = pres(GroundKind::F1, {"t"});
    const GroundTag O = tag(GroundKind::OTROP);
    for (int i = 0; i <= 40; ++i) {
        Q q = frac(i, 20);
        bool in = extended_cone_membership(t, {{"t", GroundValue{O, q, {}}}});
        r.require(in == (q >= 0 && q <= 1), "cone of <t> at " + q.get_str());
    }
    return r;
}

Outcome_ soundness() {
    Outcome_ r;
    Report rep;
    rep += budget_monotonicity(101, 60);
    rep += proved_implies_true(102, 50);
    rep += functor_idempotency(103, 50);
    rep += tensor_laws(104, 30);
    r.require(rep.cases >= 200, std::to_string(rep.cases) + " cases");
    r.require(rep.failures == 0, std::to_string(rep.failures) + " failures of " + std::to_string(rep.cases) + ": " +
                                     (rep.messages.empty() ? "" : rep.messages.front()));
    if (r.ok) r.detail = std::to_string(rep.cases) + " cases";
    return r;
}

}  // namespace

int main() {
    bool ok = true;
    ok &= run(1, 1.0, nonlocal_spectrum);
    ok &= run(2, 1.0, positivity_collapse);
    ok &= run(3, 10.0, bend_vs_trop);
    ok &= run(4, 10.0, gg_vs_bend);
    ok &= run(5, 5.0, point_sets);
    ok &= run(6, 2.0, hypersurfaces);
    ok &= run(7, 10.0, mr_weights);
    ok &= run(8, 10.0, macpherson);
    ok &= run(9, 2.0, kato);
    ok &= run(10, 60.0, soundness);
    return ok ? 0 : 1;
}
