#pragma once

#include <map>
#include <string>

#include "bluebend/presentation.hpp"

namespace bluebend {

struct ValuationSpec {
    Presentation source;
    BaseValuation base;
    GroundTag target;
    std::map<std::string, GroundValue> assignment;
};

// base(coeff) * prod assignment(g)^e.
GroundValue eval_monomial(const ValuationSpec& spec, const Monomial& m);
std::vector<GroundValue> eval_sum(const ValuationSpec& spec, const FormalSum& s);

Verdict is_valuation(const ValuationSpec& spec, const Budget& b);
inline Verdict is_valuation(const ValuationSpec& spec) { return is_valuation(spec, spec.source.budget_default); }

enum class ValuationClass { seminorm, nonarch_seminorm, krull, character, generic };

std::string valuation_class_name(ValuationClass c);
ValuationClass classify_valuation(const ValuationSpec& spec);

}  // namespace bluebend
