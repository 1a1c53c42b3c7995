#pragma once

#include <map>
#include <string>

#include "json.hpp"

#include "bluebend/functors.hpp"
#include "bluebend/spectra.hpp"
#include "bluebend/trop.hpp"
#include "bluebend/valuation.hpp"

namespace bluebend::io {

using json = nlohmann::ordered_json;

json to_json(const Monomial& m);
json to_json(const FormalSum& s);
json to_json(const Relation& r);
json to_json(const Presentation& p);
json to_json(const Verdict& v);
json to_json(const PolyhedralComplex& c);
json to_json(const KatoFan& f);
json to_json(const SpanTable& t);

// Parsers raise ParseError on schema violations, then validate.
Monomial monomial_from_json(const Presentation& p, const json& j);
FormalSum sum_from_json(const Presentation& p, const json& j);
Relation relation_from_json(const Presentation& p, const json& j);
Presentation presentation_from_json(const json& j);
BaseValuation base_from_json(const json& j, GroundTag source, GroundTag target);
ValuationSpec valuation_from_json(const json& j);
// {"x": "1/2", ...} with every value parsed in tag.
std::map<std::string, GroundValue> assignment_from_json(const json& j, GroundTag tag);

json parse_text(const std::string& text);
json read_file(const std::string& path);

}  // namespace bluebend::io
