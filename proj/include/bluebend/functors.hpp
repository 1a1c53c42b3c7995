#pragma once

#include <map>
#include <string>
#include <vector>

#include "bluebend/presentation.hpp"

namespace bluebend {

enum class FunctorTag { POS, HULL, INV, IDEM, CORE, MON, PADD, CONIC, PLUS };

FunctorTag parse_functor_tag(const std::string& s);
std::string functor_name(FunctorTag f);

// Presentation-level functors: POS, HULL, INV, IDEM.
Presentation apply_functor(const Presentation& p, FunctorTag f);

// View-level predicates: CORE, MON, PADD, CONIC, PLUS.
Verdict holds_in_view(const Presentation& p, FunctorTag view, const Relation& r, const Budget& b);
inline Verdict holds_in_view(const Presentation& p, FunctorTag view, const Relation& r) {
    return holds_in_view(p, view, r, p.budget_default);
}

// Image of a ground scalar under the canonical map between grounds; throws GroundMismatch.
GroundValue map_scalar(const GroundValue& c, GroundTag target);
bool ground_maps_to(GroundTag from, GroundTag to);

using GeneratorMap = std::map<std::string, Monomial>;

// Relative tensor product of pB and pC over pD along fB: D -> B and fC: D -> C.
Presentation tensor(const Presentation& pB, const Presentation& pC, const Presentation& pD, const GeneratorMap& fB,
                    const GeneratorMap& fC);

Presentation localize(const Presentation& p, const std::vector<Monomial>& elems);

Presentation free_extension(const Presentation& p, const std::vector<std::string>& new_gens);

}  // namespace bluebend
