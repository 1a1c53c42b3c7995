#pragma once

#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bluebend/engine.hpp"
#include "bluebend/functors.hpp"
#include "bluebend/spectra.hpp"
#include "bluebend/trop.hpp"
#include "bluebend/valuation.hpp"

namespace testing {

using namespace bluebend;

inline GroundTag tag(GroundKind k, int n = 0) { return GroundTag::of(k, n); }

inline GroundValue val(GroundKind k, const std::string& s) { return GroundValue::parse(tag(k), s); }

// Relations in text syntax, monoid relations as text pairs.
inline Presentation pres(GroundKind k, std::vector<std::string> gens, std::vector<std::string> rels = {},
                         std::vector<std::pair<std::string, std::string>> monoid = {}) {
    Presentation p = Presentation::free(tag(k), std::move(gens));
    for (auto& [a, b] : monoid) p.monoid_relations.push_back({parse_monomial(p, a), parse_monomial(p, b)});
    for (auto& r : rels) p.subaddition.push_back(parse_relation(p, r));
    p.validate();
    return p;
}

inline std::map<std::string, GroundValue> point(GroundKind k,
                                                std::initializer_list<std::pair<const char*, const char*>> xs) {
    std::map<std::string, GroundValue> out;
    for (auto& [g, v] : xs) out.emplace(g, val(k, v));
    return out;
}

inline BaseValuation trivial_into(const Presentation& p, GroundKind target) {
    return base_valuation(BaseValuation::Kind::trivial, p.ground, tag(target));
}

inline BaseValuation padic_into(const Presentation& p, long prime, GroundKind target = GroundKind::TROP) {
    return base_valuation(BaseValuation::Kind::p_adic, p.ground, tag(target), prime);
}

inline Outcome derive(const Presentation& p, const std::string& rel) {
    return derives(p, parse_relation(p, rel)).outcome;
}

inline Presentation line() { return pres(GroundKind::RAT, {"x", "y"}, {"x + y + 1 == 0"}); }
inline Presentation conic() { return pres(GroundKind::RAT, {"x", "y"}, {"x^2 + y^2 + 1 == 0"}); }
inline Presentation nonlocal() { return pres(GroundKind::BOOL, {"T"}, {"T + 1 == T", "T == T^2"}); }

}  // namespace testing
