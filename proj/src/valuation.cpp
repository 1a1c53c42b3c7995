#include "bluebend/valuation.hpp"

#include "bluebend/engine.hpp"
#include "bluebend/normalizer.hpp"
#include "bluebend/trop.hpp"

namespace bluebend {

GroundValue eval_monomial(const ValuationSpec& spec, const Monomial& m) {
    if (m.is_zero()) return GroundValue::zero(spec.target);
    GroundValue acc = spec.base(m.coeff);
    for (auto& [name, e] : m.exps) {
        auto it = spec.assignment.find(name);
        if (it == spec.assignment.end()) fail("UnassignedGenerator", "no value for '" + name + "'");
        if (it->second.tag != spec.target)
            fail("TagMismatch", "value of '" + name + "' is not in " + spec.target.str());
        for (int i = 0; i < e; ++i) acc = g_mul(acc, it->second);
    }
    return acc;
}

std::vector<GroundValue> eval_sum(const ValuationSpec& spec, const FormalSum& s) {
    std::vector<GroundValue> out;
    for (auto& t : s.terms) out.push_back(eval_monomial(spec, t));
    return out;
}

namespace {

bool alg_target(GroundTag t) { return t.kind == GroundKind::INT || t.kind == GroundKind::RAT; }

std::vector<GroundValue> eval_poly(const ValuationSpec& spec, const Poly& f) {
    const Presentation& p = spec.source;
    std::vector<GroundValue> out;
    for (auto& [k, c] : f) {
        Monomial m{GroundValue::rational(p.ground, c), to_exps(p, k)};
        out.push_back(eval_monomial(spec, m));
    }
    return out;
}

// Every term is at most the sum of the others.
std::optional<size_t> bend_failure(const std::vector<GroundValue>& vals, GroundTag target) {
    for (size_t i = 0; i < vals.size(); ++i) {
        std::vector<GroundValue> rest;
        for (size_t j = 0; j < vals.size(); ++j)
            if (j != i) rest.push_back(vals[j]);
        if (rest.empty()) rest.push_back(GroundValue::zero(target));
        if (!g_leq_sum(OrderMode::pos, {vals[i]}, rest)) return i;
    }
    return std::nullopt;
}

std::string poly_text(const Presentation& p, const Poly& f) {
    std::vector<Monomial> ms;
    for (auto& [k, c] : f) ms.push_back(Monomial{GroundValue::rational(p.ground, c), to_exps(p, k)});
    return FormalSum(ms).str();
}

Verdict ring_source(const ValuationSpec& spec, const Budget& b) {
    const Presentation& p = spec.source;
    std::vector<Poly> gens = ideal_generators(p);
    if (alg_target(spec.target)) {
        for (auto& f : gens) {
            auto vals = eval_poly(spec, f);
            if (!g_sum(spec.target, vals).is_zero())
                return Verdict::disproved(poly_text(p, f) + " does not vanish under the character");
        }
        return Verdict::proved({"every ideal generator vanishes"});
    }
    for (auto& f : gens) {
        if (auto i = bend_failure(eval_poly(spec, f), spec.target))
            return Verdict::disproved("term " + std::to_string(*i) + " of " + poly_text(p, f) +
                                      " exceeds the sum of the others");
    }
    if (gens.empty()) return Verdict::proved({"no relations"});
    if (!spec.target.idempotent())
        return Verdict::unknown("generator check passed; the non-idempotent target needs every ideal element");
    if (gens.size() == 1) return Verdict::proved({"principal ideal: the generator attains its maximum twice"});
    int top = 0;
    for (auto& f : gens) top = std::max(top, poly_degree(f));
    int bound = top <= 1 ? 1 : std::min(top + 1, b.max_degree);
    for (auto& c : ideal_circuits(gens, p.generators.size(), bound)) {
        if (auto i = bend_failure(eval_poly(spec, c), spec.target))
            return Verdict::disproved("term " + std::to_string(*i) + " of the ideal element " + poly_text(p, c) +
                                      " exceeds the sum of the others");
    }
    if (top <= 1) return Verdict::proved({"linear ideal: every circuit attains its maximum twice"});
    return Verdict::unknown("circuits up to degree " + std::to_string(bound) + " pass; higher degrees unchecked");
}

Verdict semiring_source(const ValuationSpec& spec, const Budget& b) {
    const Presentation& p = spec.source;
    OrderMode mode = alg_target(spec.target) ? OrderMode::alg : OrderMode::pos;
    auto holds = [&](const FormalSum& l, const FormalSum& r) {
        auto lv = eval_sum(spec, l), rv = eval_sum(spec, r);
        if (lv.empty()) lv.push_back(GroundValue::zero(spec.target));
        if (rv.empty()) rv.push_back(GroundValue::zero(spec.target));
        return g_leq_sum(mode, lv, rv);
    };
    bool unknown = false;
    std::string why;
    for (auto& r : p.subaddition) {
        std::vector<std::pair<const FormalSum*, const FormalSum*>> sides{{&r.lhs, &r.rhs}};
        if (r.mode == RelMode::EQ) sides.push_back({&r.rhs, &r.lhs});
        for (auto [l, rr] : sides) {
            if (holds(*l, *rr)) continue;
            if (l->size() <= 1 || mode == OrderMode::alg)
                return Verdict::disproved("generator " + l->str() + " <= " + rr->str() + " fails in the target");
            // Only left-monomial consequences constrain a valuation.
            for (auto& a : l->terms) {
                Relation cand = Relation::le(FormalSum{a}, *rr);
                if (!holds(cand.lhs, cand.rhs) && derives(p, cand, b).is_proved())
                    return Verdict::disproved("derived " + cand.str() + " fails in the target");
            }
            unknown = true;
            why = l->str() + " <= " + rr->str() + " fails, and no failing monomial consequence was found";
        }
    }
    if (unknown) return Verdict::unknown(why);
    return Verdict::proved({"every generator holds in the target"});
}

}  // namespace

Verdict is_valuation(const ValuationSpec& spec, const Budget& b) {
    const Presentation& p = spec.source;
    p.validate();
    GroundKind t = spec.target.kind;
    if (t == GroundKind::F1 || t == GroundKind::F1SQ)
        fail("RegimeUnsupported", spec.target.str() + " has no addition to test against");
    if (spec.base.source != p.ground || spec.base.target != spec.target)
        fail("TagMismatch", "base valuation " + spec.base.str() + " does not match " + p.ground.str() + " -> " +
                                spec.target.str());
    for (auto& [name, val] : spec.assignment) {
        if (!p.has_generator(name)) fail("UnknownGenerator", "assignment names unknown generator '" + name + "'");
        if (val.tag != spec.target) fail("TagMismatch", "value of '" + name + "' is not in " + spec.target.str());
    }
    for (auto& g : p.generators)
        if (!spec.assignment.count(g)) fail("UnassignedGenerator", "no value for '" + g + "'");
    for (auto& [a, c] : p.monoid_relations) {
        if (!(eval_monomial(spec, a) == eval_monomial(spec, c)))
            return Verdict::disproved("monoid relation " + a.str() + " = " + c.str() + " is not respected");
    }
    if (p.ground.with_minus_one()) return ring_source(spec, b);
    return semiring_source(spec, b);
}

std::string valuation_class_name(ValuationClass c) {
    switch (c) {
        case ValuationClass::seminorm: return "seminorm";
        case ValuationClass::nonarch_seminorm: return "nonarch_seminorm";
        case ValuationClass::krull: return "krull";
        case ValuationClass::character: return "character";
        case ValuationClass::generic: return "generic";
    }
    return "?";
}

ValuationClass classify_valuation(const ValuationSpec& spec) {
    Verdict v = is_valuation(spec);
    if (!v.is_proved()) fail("NotAValuation", "is_valuation is " + outcome_name(v.outcome) + ": " + v.witness);
    switch (spec.target.kind) {
        case GroundKind::RPLUS: return ValuationClass::seminorm;
        case GroundKind::TROP:
        case GroundKind::OTROP:
        case GroundKind::TROPN: return ValuationClass::nonarch_seminorm;
        case GroundKind::ORDGROUP: return ValuationClass::krull;
        case GroundKind::INT:
        case GroundKind::RAT: return ValuationClass::character;
        default: return ValuationClass::generic;
    }
}

}  // namespace bluebend
