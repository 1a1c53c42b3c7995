#pragma once

// Hand-rolled generators and property checks shared by the unit suite and the acceptance binary.

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "support.hpp"

namespace testing {

struct Report {
    size_t cases = 0;
    size_t failures = 0;
    std::vector<std::string> messages;

    void check(bool ok, const std::string& what) {
        ++cases;
        if (ok) return;
        ++failures;
        if (messages.size() < 10) messages.push_back(what);
    }
    Report& operator+=(const Report& o) {
        cases += o.cases;
        failures += o.failures;
        for (auto& m : o.messages)
            if (messages.size() < 10) messages.push_back(m);
        return *this;
    }
};

class Gen {
public:
    explicit Gen(unsigned seed) : rng_(seed) {}

    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    template <class T>
    const T& choose(const std::vector<T>& xs) {
        return xs[static_cast<size_t>(pick(0, static_cast<int>(xs.size()) - 1))];
    }

    std::string coeff(GroundKind k) {
        switch (k) {
            case GroundKind::NAT: return choose<std::string>({"1", "1", "2"});
            case GroundKind::TROP: return choose<std::string>({"1", "1", "1/2", "2"});
            case GroundKind::RAT: return choose<std::string>({"1", "-1", "2", "1/2", "-3"});
            default: return "1";
        }
    }

    std::string monomial(GroundKind k, const std::vector<std::string>& gens, int max_exp = 2) {
        std::string s = coeff(k);
        for (auto& g : gens) {
            int e = pick(0, max_exp);
            if (e == 1) s += "*" + g;
            if (e > 1) s += "*" + g + "^" + std::to_string(e);
        }
        return s;
    }

    std::string sum(GroundKind k, const std::vector<std::string>& gens, int lo, int hi) {
        int n = pick(lo, hi);
        if (n == 0) return "0";
        std::string s;
        for (int i = 0; i < n; ++i) s += (i ? " + " : "") + monomial(k, gens);
        return s;
    }

    // Left-monomial relation a <= sum.
    std::string left_monomial(GroundKind k, const std::vector<std::string>& gens) {
        return monomial(k, gens) + " <= " + sum(k, gens, 1, 2);
    }

    std::string relation(GroundKind k, const std::vector<std::string>& gens) {
        return sum(k, gens, 1, 2) + (pick(0, 2) == 0 ? " == " : " <= ") + sum(k, gens, 1, 2);
    }

    Presentation semiring(GroundKind k, const std::vector<std::string>& gens, int max_rels = 2) {
        std::vector<std::string> rels;
        int n = pick(0, max_rels);
        for (int i = 0; i < n; ++i) rels.push_back(left_monomial(k, gens));
        return pres(k, gens, rels);
    }

    std::mt19937& rng() { return rng_; }

private:
    std::mt19937 rng_;
};

inline const std::vector<GroundKind>& semiring_grounds() {
    static const std::vector<GroundKind> g{GroundKind::F1, GroundKind::BOOL, GroundKind::NAT, GroundKind::TROP};
    return g;
}

// Proved and Disproved survive a larger budget.
inline Report budget_monotonicity(unsigned seed, int n) {
    Gen g(seed);
    Report r;
    const Budget small{3, 6, 4}, large{8, 12, 8};
    for (int i = 0; i < n; ++i) {
        GroundKind k = g.choose(semiring_grounds());
        auto p = g.semiring(k, {"x", "y"});
        Relation goal = parse_relation(p, g.relation(k, {"x", "y"}));
        Verdict a = derives(p, goal, small), b = derives(p, goal, large);
        bool ok = (!a.is_proved() || b.is_proved()) && (!a.is_disproved() || b.is_disproved());
        r.check(ok, "budget monotonicity: " + goal.str() + " small " + outcome_name(a.outcome) + " large " +
                        outcome_name(b.outcome));
    }
    return r;
}

inline bool holds_in_trop(const ValuationSpec& s, const Relation& rel) {
    auto l = eval_sum(s, rel.lhs), rr = eval_sum(s, rel.rhs);
    if (!g_leq_sum(OrderMode::pos, l, rr)) return false;
    return rel.mode == RelMode::LE || g_leq_sum(OrderMode::pos, rr, l);
}

// A relation Proved by derives evaluates truly under every Proved valuation.
inline Report proved_implies_true(unsigned seed, int n) {
    Gen g(seed);
    Report r;
    const std::vector<std::string> values{"0", "1/2", "1", "2"};
    int done = 0;
    for (int attempt = 0; done < n && attempt < 50 * n; ++attempt) {
        auto p = g.semiring(GroundKind::BOOL, {"x", "y"}, 3);
        ValuationSpec s{p, base_valuation(BaseValuation::Kind::trivial, p.ground, tag(GroundKind::TROP)),
                        tag(GroundKind::TROP),
                        {{"x", val(GroundKind::TROP, g.choose(values))}, {"y", val(GroundKind::TROP, g.choose(values))}}};
        if (!is_valuation(s).is_proved()) continue;
        Relation goal = parse_relation(p, g.relation(GroundKind::BOOL, {"x", "y"}));
        if (!derives(p, goal).is_proved()) continue;
        ++done;
        r.check(holds_in_trop(s, goal), "proved but false under a valuation: " + goal.str());
    }
    r.check(done == n, "not enough proved pairs generated");
    return r;
}

inline Report functor_idempotency(unsigned seed, int n) {
    Gen g(seed);
    Report r;
    for (int i = 0; i < n; ++i) {
        GroundKind k = g.choose(semiring_grounds());
        auto p = g.semiring(k, {"x", "y"});
        FunctorTag f = i % 2 ? FunctorTag::POS : FunctorTag::HULL;
        auto once = apply_functor(p, f);
        Verdict v = congruence_equiv(apply_functor(once, f), once);
        r.check(v.is_proved(), functor_name(f) + " not idempotent: " + outcome_name(v.outcome));
    }
    return r;
}

inline Report tensor_laws(unsigned seed, int n) {
    Gen g(seed);
    Report r;
    for (int i = 0; i < n; ++i) {
        GroundKind k = g.choose(semiring_grounds());
        auto p = g.semiring(k, {"x", "y"}, 1);
        auto q = g.semiring(k, {"u", "v"}, 1);
        auto unit = pres(k, {});
        Verdict left = congruence_equiv(tensor(p, unit, unit, {}, {}), p);
        r.check(left.is_proved(), "tensor unit fails: " + outcome_name(left.outcome));
        Verdict comm = congruence_equiv(tensor(p, q, unit, {}, {}), tensor(q, p, unit, {}, {}));
        r.check(comm.is_proved(), "tensor not commutative: " + outcome_name(comm.outcome));
    }
    return r;
}

// Semiring axioms for g_add and g_mul on sampled triples.
inline Report ground_axioms(unsigned seed, int n) {
    Gen g(seed);
    Report r;
    const std::vector<std::pair<GroundKind, std::vector<std::string>>> samples{
        {GroundKind::BOOL, {"0", "1"}},
        {GroundKind::NAT, {"0", "1", "2", "5"}},
        {GroundKind::INT, {"0", "1", "-1", "3", "-4"}},
        {GroundKind::RAT, {"0", "1", "-1/2", "3/7"}},
        {GroundKind::RPLUS, {"0", "1", "1/2", "3"}},
        {GroundKind::TROP, {"0", "1", "1/2", "3"}},
        {GroundKind::OTROP, {"0", "1", "1/2", "1/3"}},
    };
    for (int i = 0; i < n; ++i) {
        auto& [k, vs] = samples[static_cast<size_t>(i) % samples.size()];
        auto a = val(k, g.choose(vs)), b = val(k, g.choose(vs)), c = val(k, g.choose(vs));
        bool ok = g_add(a, b) == g_add(b, a) && g_mul(a, b) == g_mul(b, a) &&
                  g_add(g_add(a, b), c) == g_add(a, g_add(b, c)) && g_mul(g_mul(a, b), c) == g_mul(a, g_mul(b, c)) &&
                  g_mul(a, g_add(b, c)) == g_add(g_mul(a, b), g_mul(a, c)) && g_mul(a, GroundValue::zero(a.tag)).is_zero();
        r.check(ok, "semiring axioms fail in " + a.tag.str() + " on " + a.str() + ", " + b.str() + ", " + c.str());
    }
    return r;
}

// Independent oracle: the maximum of the bend terms is attained at least twice.
inline bool max_twice(const std::vector<GroundValue>& terms) {
    GroundValue best = GroundValue::zero(terms.front().tag);
    for (auto& t : terms) best = g_add(best, t);
    if (best.is_zero()) return true;
    return std::count(terms.begin(), terms.end(), best) >= 2;
}

// Combines like terms of a ring sum.
inline std::vector<Monomial> combine(const FormalSum& f) {
    std::map<Exps, GroundValue> acc;
    for (auto& m : f.terms) {
        auto it = acc.find(m.exps);
        if (it == acc.end()) acc.emplace(m.exps, m.coeff);
        else it->second = g_add(it->second, m.coeff);
    }
    std::vector<Monomial> out;
    for (auto& [e, c] : acc)
        if (!c.is_zero()) out.push_back(Monomial{c, e});
    return out;
}

// point_in_trop on the bend agrees with is_valuation on ring sources.
inline Report trop_matches_valuation(unsigned seed, int n) {
    Gen g(seed);
    Report r;
    const std::vector<std::string> values{"0", "1/4", "1/2", "1", "2", "4"};
    for (int i = 0; i < n; ++i) {
        auto p = pres(GroundKind::RAT, {"x", "y"}, {g.sum(GroundKind::RAT, {"x", "y"}, 2, 3) + " == 0"});
        auto terms_of_f = combine(p.subaddition[0].lhs);
        if (terms_of_f.size() < 2) {
            --i;
            continue;
        }
        auto v = i % 2 ? padic_into(p, 2) : trivial_into(p, GroundKind::TROP);
        auto bp = bend(p, v, tag(GroundKind::TROP));
        auto pt = std::map<std::string, GroundValue>{{"x", val(GroundKind::TROP, g.choose(values))},
                                                     {"y", val(GroundKind::TROP, g.choose(values))}};
        ValuationSpec s{p, v, tag(GroundKind::TROP), pt};
        bool in = point_in_trop(bp, pt);
        Verdict iv = is_valuation(s);
        std::vector<GroundValue> terms;
        for (auto& m : terms_of_f) terms.push_back(eval_monomial(s, m));
        bool oracle = max_twice(terms);
        r.check(in == iv.is_proved() && in == oracle, "trop and valuation disagree on " + p.subaddition[0].str());
    }
    return r;
}

}  // namespace testing
