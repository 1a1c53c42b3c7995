#include "bluebend/spectra.hpp"

#include <algorithm>
#include <set>

#include "bluebend/engine.hpp"
#include "bluebend/functors.hpp"
#include "bluebend/trop.hpp"

namespace bluebend {

namespace {

constexpr size_t kMaxGenerators = 16;

bool involves(const Monomial& m, const std::set<std::string>& s) {
    if (m.is_zero()) return true;
    for (auto& [g, e] : m.exps)
        if (e > 0 && s.count(g)) return true;
    return false;
}

// Every monoid relation has both sides inside the ideal generated by s, or both outside.
bool consistent(const Presentation& p, const std::set<std::string>& s) {
    for (auto& [a, b] : p.monoid_relations)
        if (involves(a, s) != involves(b, s)) return false;
    return true;
}

std::vector<std::vector<std::string>> subsets(const Presentation& p) {
    const size_t n = p.generators.size();
    if (n > kMaxGenerators)
        fail("TooManyGenerators", std::to_string(n) + " generators, at most " + std::to_string(kMaxGenerators));
    std::vector<std::vector<std::string>> out;
    for (size_t k = 0; k <= n; ++k) {
        std::vector<bool> pick(n, false);
        std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
        do {
            std::vector<std::string> s;
            for (size_t i = 0; i < n; ++i)
                if (pick[i]) s.push_back(p.generators[i]);
            out.push_back(s);
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    return out;
}

std::vector<std::string> closure_of(const Presentation& p, const std::set<std::string>& s) {
    std::vector<std::string> out{"<zero>"};
    const GroundValue one = GroundValue::one(p.ground);
    for (auto& g : p.generators) {
        if (s.count(g)) out.push_back(Monomial{one, {{g, 1}}}.str());
    }
    for (size_t i = 0; i < p.generators.size(); ++i)
        for (size_t j = i; j < p.generators.size(); ++j) {
            const auto &a = p.generators[i], &c = p.generators[j];
            if (!s.count(a) && !s.count(c)) continue;
            Exps e;
            ++e[a];
            ++e[c];
            out.push_back(Monomial{one, e}.str());
        }
    return out;
}

FormalSum drop_terms(const FormalSum& f, const std::set<std::string>& s) {
    std::vector<Monomial> keep;
    for (auto& m : f.terms)
        if (!involves(m, s)) keep.push_back(m);
    return FormalSum(std::move(keep));
}

// B / <s>: generators in s become zero.
Presentation quotient(const Presentation& p, const std::set<std::string>& s) {
    Presentation q = Presentation::free(p.ground);
    q.budget_default = p.budget_default;
    for (auto& g : p.generators)
        if (!s.count(g)) q.generators.push_back(g);
    for (auto& [a, b] : p.monoid_relations)
        if (!involves(a, s)) q.monoid_relations.push_back({a, b});
    for (auto& r : p.subaddition) q.subaddition.push_back(Relation{r.mode, drop_terms(r.lhs, s), drop_terms(r.rhs, s)});
    return q;
}

Monomial product_outside(const Presentation& p, const std::set<std::string>& s, int e) {
    Monomial m = p.one();
    for (auto& g : p.generators)
        if (!s.count(g)) m.exps[g] = e;
    return m;
}

Poly widen(const Poly& f, size_t n) {
    Poly out;
    for (auto& [k, c] : f) {
        Key w = k;
        w.resize(n, 0);
        out[w] = c;
    }
    return out;
}

// For a ring ground: <s> + I is proper and no product of the other generators is nilpotent modulo it.
// Returns nullopt when rejected, otherwise whether the answer rests on an incomplete basis.
std::optional<bool> ring_prime(const Presentation& p, const std::set<std::string>& s) {
    const size_t n = p.generators.size();
    std::vector<Poly> gens;
    for (auto& f : ideal_generators(p)) gens.push_back(widen(f, n + 1));
    for (size_t i = 0; i < n; ++i)
        if (s.count(p.generators[i])) {
            Key k(n + 1, 0);
            k[i] = 1;
            gens.push_back(Poly{{k, Q(1)}});
        }
    Poly one{{Key(n + 1, 0), Q(1)}};
    bool tentative = false;
    auto contains_one = [&](const std::vector<Poly>& g) {
        std::vector<Poly> basis;
        if (!groebner(g, basis)) tentative = true;
        return poly_reduce(one, basis).empty();
    };
    if (contains_one(gens)) return tentative ? std::optional<bool>(true) : std::nullopt;
    Key k(n + 1, 0);
    k[n] = 1;
    for (size_t i = 0; i < n; ++i)
        if (!s.count(p.generators[i])) k[i] = 1;
    gens.push_back(Poly{{k, Q(1)}, {Key(n + 1, 0), Q(-1)}});
    if (contains_one(gens)) return tentative ? std::optional<bool>(true) : std::nullopt;
    return tentative;
}

}  // namespace

std::vector<PrimeKIdeal> prime_k_ideals(const Presentation& p, const Budget& b) {
    p.validate();
    std::vector<PrimeKIdeal> out;
    const bool ring = p.ground.with_minus_one();
    for (auto& names : subsets(p)) {
        std::set<std::string> s(names.begin(), names.end());
        if (!consistent(p, s)) continue;
        PrimeKIdeal prime;
        prime.generator_subset = std::vector<std::string>(s.begin(), s.end());
        prime.closure = closure_of(p, s);
        if (ring) {
            auto r = ring_prime(p, s);
            if (!r) continue;
            prime.tentative = *r;
            out.push_back(prime);
            continue;
        }
        ModelQuery q;
        std::vector<bool> pattern;
        for (auto& g : p.generators) pattern.push_back(s.count(g) > 0);
        q.zero_pattern = pattern;
        if (find_model(p, q)) {
            out.push_back(prime);
            continue;
        }
        Presentation quot = quotient(p, s);
        bool rejected = false;
        std::vector<Monomial> probes{quot.one(), product_outside(p, s, 1), product_outside(p, s, 2)};
        for (auto& g : quot.generators) probes.push_back(quot.gen(g));
        for (auto& c : probes) {
            Verdict v = derives(quot, Relation::le(FormalSum{c}, FormalSum{}), b);
            if (v.is_proved()) {
                rejected = true;
                break;
            }
        }
        if (rejected) continue;
        // No certificate either way.
        prime.tentative = true;
        out.push_back(prime);
    }
    return out;
}

Presentation globalize(const Presentation& p, const Budget& b) {
    auto primes = prime_k_ideals(p, b);
    for (auto& q : primes)
        if (q.tentative) {
            std::string names;
            for (auto& g : q.generator_subset) names += " " + g;
            fail("Unstable", "prime generated by {" + names + " } is not certified within budget");
        }
    if (p.ground.with_minus_one() || p.subaddition.empty()) return p;
    if (primes.empty()) fail("NotPrincipallyCovered", "the spectrum is empty");
    std::vector<const PrimeKIdeal*> maximal;
    for (auto& q : primes) {
        bool below = false;
        for (auto& r : primes)
            if (&r != &q && r.generator_subset.size() > q.generator_subset.size() &&
                std::includes(r.generator_subset.begin(), r.generator_subset.end(), q.generator_subset.begin(),
                              q.generator_subset.end()))
                below = true;
        if (!below) maximal.push_back(&q);
    }
    if (maximal.size() != 1)
        fail("NotPrincipallyCovered", std::to_string(maximal.size()) + " closed points; only a single principal open is supported");
    std::set<std::string> m(maximal[0]->generator_subset.begin(), maximal[0]->generator_subset.end());
    std::vector<Monomial> invert;
    for (auto& g : p.generators)
        if (!m.count(g)) invert.push_back(p.gen(g));
    if (invert.empty()) return p;
    return localize(p, invert);
}

namespace {

std::vector<std::vector<std::string>> monoid_points(const Presentation& m) {
    std::vector<std::vector<std::string>> out;
    for (auto& names : subsets(m)) {
        std::set<std::string> s(names.begin(), names.end());
        if (consistent(m, s)) out.push_back(std::vector<std::string>(s.begin(), s.end()));
    }
    return out;
}

Monomial drop_units(const Monomial& a, const std::set<std::string>& units) {
    Monomial r{a.coeff, {}};
    for (auto& [g, e] : a.exps)
        if (!units.count(g)) r.exps[g] = e;
    return r;
}

}  // namespace

KatoFan kato_fan(const Presentation& m) {
    m.validate();
    if (!m.subaddition.empty()) fail("NotAMonoid", "the presentation has subaddition relations");
    if (m.ground.kind != GroundKind::F1) fail("NotAMonoid", "monoids are presented over F1, got " + m.ground.str());
    KatoFan fan;
    fan.points = monoid_points(m);
    std::vector<std::string> opens{"1"};
    for (auto& g : m.generators) opens.push_back(g);
    for (auto& h : opens) {
        // g is a unit on U_h iff every prime containing g also contains h.
        std::set<std::string> units;
        for (auto& g : m.generators) {
            bool unit = true;
            for (auto& pt : fan.points) {
                bool has_g = std::find(pt.begin(), pt.end(), g) != pt.end();
                bool has_h = h == "1" ? false : std::find(pt.begin(), pt.end(), h) != pt.end();
                if (has_g && !has_h) unit = false;
            }
            if (unit) units.insert(g);
        }
        Presentation sec = Presentation::free(m.ground);
        sec.budget_default = m.budget_default;
        for (auto& g : m.generators)
            if (!units.count(g)) sec.generators.push_back(g);
        for (auto& [a, c] : m.monoid_relations) {
            Monomial a2 = drop_units(a, units), c2 = drop_units(c, units);
            if (a2 == c2) continue;
            if (std::find(sec.monoid_relations.begin(), sec.monoid_relations.end(), std::pair{a2, c2}) !=
                sec.monoid_relations.end())
                continue;
            sec.monoid_relations.push_back({a2, c2});
        }
        fan.sections.push_back({h, sec});
    }
    return fan;
}

bool extended_cone_membership(const Presentation& m, const std::map<std::string, GroundValue>& point) {
    m.validate();
    const GroundTag O = GroundTag::of(GroundKind::OTROP);
    for (auto& g : m.generators) {
        auto it = point.find(g);
        if (it == point.end()) fail("UnassignedGenerator", "no value for '" + g + "'");
        if (it->second.tag != O) fail("TagMismatch", "value of '" + g + "' is not in " + O.str());
        if (it->second.q < 0 || it->second.q > 1) return false;
    }
    auto eval = [&](const Monomial& a) {
        if (a.is_zero()) return Q(0);
        Q v = 1;
        for (auto& [g, e] : a.exps)
            for (int i = 0; i < e; ++i) v *= point.at(g).q;
        return v;
    };
    for (auto& [a, c] : m.monoid_relations)
        if (eval(a) != eval(c)) return false;
    return true;
}

namespace {

Presentation to_f1(const Presentation& p) {
    const GroundTag F1 = GroundTag::of(GroundKind::F1);
    Presentation out = Presentation::free(F1, p.generators);
    out.budget_default = p.budget_default;
    auto conv = [&](const Monomial& a) {
        return Monomial{a.is_zero() ? GroundValue::zero(F1) : GroundValue::one(F1), a.is_zero() ? Exps{} : a.exps};
    };
    for (auto& [a, c] : p.monoid_relations) out.monoid_relations.push_back({conv(a), conv(c)});
    return out;
}

}  // namespace

KatoRecovery recover_kato_from_bend(const Presentation& p, const Budget& b) {
    p.validate();
    if (!p.ground.with_minus_one()) fail("MonodromyUnsupported", "recovery needs a ground with -1");
    if (!p.subaddition.empty())
        fail("MonodromyUnsupported", "only presentations given by monoid relations have a designated monoid part");
    for (auto& [a, c] : p.monoid_relations)
        if (a.is_zero() || c.is_zero()) fail("MonodromyUnsupported", "monoid relations must be between nonzero monomials");
    const GroundTag BOOL = GroundTag::of(GroundKind::BOOL);
    BendPresentation bp = bend(p, base_valuation(BaseValuation::Kind::trivial, p.ground, BOOL), BOOL);
    KatoRecovery out;
    out.fan = kato_fan(to_f1(bp.underlying));
    KatoFan direct = kato_fan(to_f1(p));
    if (out.fan.points != direct.points) {
        out.iso = Verdict::disproved("point sets differ");
        return out;
    }
    std::vector<std::string> trace{"points agree"};
    Verdict all = Verdict::proved();
    for (size_t i = 0; i < direct.sections.size(); ++i) {
        all = conjoin(all, congruence_equiv(out.fan.sections[i].second, direct.sections[i].second, b));
        trace.push_back("section on U_" + direct.sections[i].first + " agrees");
    }
    out.iso = all.is_proved() ? Verdict::proved(trace) : all;
    return out;
}

}  // namespace bluebend
