#include "bluebend/io.hpp"

#include <fstream>
#include <sstream>

namespace bluebend::io {

namespace {

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) fail("ParseError", std::string("missing field '") + key + "'");
    return j.at(key);
}

std::string text(const json& j, const char* what) {
    if (!j.is_string()) fail("ParseError", std::string(what) + " must be a string");
    return j.get<std::string>();
}

json q_json(const Q& q) { return q.get_str(); }

json qvec_json(const std::vector<Q>& v) {
    json a = json::array();
    for (auto& q : v) a.push_back(q_json(q));
    return a;
}

json zvec_json(const ZVec& v) {
    json a = json::array();
    for (auto& z : v) a.push_back(z.get_si());
    return a;
}

}  // namespace

json to_json(const Monomial& m) {
    json e = json::object();
    for (auto& [g, k] : m.exps) e[g] = k;
    return json{{"coeff", m.coeff.str()}, {"exps", e}};
}

json to_json(const FormalSum& s) {
    json a = json::array();
    for (auto& m : s.terms) a.push_back(to_json(m));
    return a;
}

json to_json(const Relation& r) {
    return json{{"mode", r.mode == RelMode::LE ? "le" : "eq"}, {"lhs", to_json(r.lhs)}, {"rhs", to_json(r.rhs)}};
}

json to_json(const Presentation& p) {
    json mr = json::array(), sub = json::array();
    for (auto& [a, b] : p.monoid_relations) mr.push_back(json::array({to_json(a), to_json(b)}));
    for (auto& r : p.subaddition) sub.push_back(to_json(r));
    return json{{"ground", p.ground.str()}, {"generators", p.generators}, {"monoid_relations", mr}, {"subaddition", sub}};
}

json to_json(const Verdict& v) {
    json j{{"verdict", outcome_name(v.outcome)}};
    if (v.is_proved()) j["trace"] = v.trace;
    else j["witness"] = v.witness;
    return j;
}

json to_json(const PolyhedralComplex& c) {
    json verts = json::array(), rays = json::array(), cells = json::array(), ridges = json::array();
    for (auto& v : c.vertices) verts.push_back(qvec_json(v));
    for (auto& r : c.rays) rays.push_back(zvec_json(r));
    for (auto& cell : c.cells) cells.push_back(json{{"vertices", cell.vertices}, {"rays", cell.rays}, {"weight", cell.weight}});
    for (auto& r : c.ridges) {
        json sides = json::array();
        for (auto& [cell, normal] : r.sides) sides.push_back(json{{"cell", cell}, {"normal", zvec_json(normal)}});
        json rj{{"point", qvec_json(r.point)}};
        if (!r.direction.empty()) rj["direction"] = zvec_json(r.direction);
        rj["sides"] = sides;
        ridges.push_back(rj);
    }
    return json{{"ambient_dim", c.ambient_dim}, {"vertices", verts}, {"rays", rays}, {"cells", cells}, {"ridges", ridges}};
}

json to_json(const KatoFan& f) {
    json pts = json::array(), secs = json::array();
    for (auto& p : f.points) {
        json pt = json::array({"<zero>"});
        for (auto& g : p) pt.push_back(g);
        pts.push_back(pt);
    }
    for (auto& [h, s] : f.sections) secs.push_back(json{{"open", h}, {"monoid", to_json(s)}});
    return json{{"points", pts}, {"sections", secs}};
}

json to_json(const SpanTable& t) {
    json spans = json::array();
    for (auto& s : t.spans) {
        json g = json::array();
        for (auto& m : s.generators) g.push_back(m.str());
        spans.push_back(g);
    }
    return json{{"atoms", t.atoms.size()}, {"spans", spans}, {"join", t.join}, {"product", t.product}, {"unknown", t.unknown}};
}

Monomial monomial_from_json(const Presentation& p, const json& j) {
    Monomial m{GroundValue::parse(p.ground, text(field(j, "coeff"), "coeff")), {}};
    if (j.contains("exps")) {
        const json& e = j.at("exps");
        if (!e.is_object()) fail("ParseError", "exps must be an object");
        for (auto& [g, k] : e.items()) {
            if (!k.is_number_integer() || k.get<long>() < 0) fail("ParseError", "exponent of '" + g + "' must be a natural number");
            if (k.get<int>() > 0) m.exps[g] = k.get<int>();
        }
    }
    if (m.is_zero()) m.exps.clear();
    p.validate(m);
    return m;
}

FormalSum sum_from_json(const Presentation& p, const json& j) {
    if (!j.is_array()) fail("ParseError", "a sum is an array of monomials");
    std::vector<Monomial> terms;
    for (auto& m : j) {
        Monomial x = monomial_from_json(p, m);
        if (!x.is_zero()) terms.push_back(x);
    }
    return FormalSum(std::move(terms));
}

Relation relation_from_json(const Presentation& p, const json& j) {
    std::string mode = text(field(j, "mode"), "mode");
    if (mode != "le" && mode != "eq") fail("ParseError", "mode must be \"le\" or \"eq\"");
    Relation r{mode == "le" ? RelMode::LE : RelMode::EQ, sum_from_json(p, field(j, "lhs")), sum_from_json(p, field(j, "rhs"))};
    p.validate(r);
    return r;
}

Presentation presentation_from_json(const json& j) {
    if (!j.is_object()) fail("ParseError", "a presentation is a JSON object");
    for (auto& [k, _] : j.items())
        if (k != "ground" && k != "generators" && k != "monoid_relations" && k != "subaddition")
            fail("ParseError", "unknown field '" + k + "'");
    Presentation p = Presentation::free(GroundTag::parse(text(field(j, "ground"), "ground")));
    if (j.contains("generators")) {
        if (!j.at("generators").is_array()) fail("ParseError", "generators must be an array");
        for (auto& g : j.at("generators")) p.generators.push_back(text(g, "generator"));
    }
    if (j.contains("monoid_relations")) {
        for (auto& r : j.at("monoid_relations")) {
            if (!r.is_array() || r.size() != 2) fail("ParseError", "a monoid relation is a pair of monomials");
            p.monoid_relations.push_back({monomial_from_json(p, r[0]), monomial_from_json(p, r[1])});
        }
    }
    if (j.contains("subaddition"))
        for (auto& r : j.at("subaddition")) p.subaddition.push_back(relation_from_json(p, r));
    p.validate();
    return p;
}

BaseValuation base_from_json(const json& j, GroundTag source, GroundTag target) {
    if (j.is_string()) return parse_base_valuation(j.get<std::string>(), source, target);
    std::string kind = text(field(j, "kind"), "kind");
    std::string spec = kind;
    if (kind == "p_adic") {
        const json& p = field(j, "p");
        if (!p.is_number_integer()) fail("ParseError", "p must be an integer");
        spec += "(" + std::to_string(p.get<long>()) + ")";
    } else if (kind == "lex_composite") {
        const json& ps = field(j, "primes");
        if (!ps.is_array()) fail("ParseError", "primes must be an array");
        spec += "(";
        for (size_t i = 0; i < ps.size(); ++i) {
            if (!ps[i].is_number_integer()) fail("ParseError", "primes must be integers");
            spec += (i ? "," : "") + std::to_string(ps[i].get<long>());
        }
        spec += ")";
    }
    return parse_base_valuation(spec, source, target);
}

std::map<std::string, GroundValue> assignment_from_json(const json& j, GroundTag tag) {
    if (!j.is_object()) fail("ParseError", "an assignment is an object of generator to value strings");
    std::map<std::string, GroundValue> out;
    for (auto& [g, v] : j.items()) out.emplace(g, GroundValue::parse(tag, text(v, "value")));
    return out;
}

ValuationSpec valuation_from_json(const json& j) {
    ValuationSpec s;
    s.source = presentation_from_json(field(j, "presentation"));
    s.target = GroundTag::parse(text(field(j, "target"), "target"));
    s.base = base_from_json(field(j, "base"), s.source.ground, s.target);
    s.assignment = j.contains("assignment") ? assignment_from_json(j.at("assignment"), s.target)
                                            : std::map<std::string, GroundValue>{};
    return s;
}

json parse_text(const std::string& t) {
    try {
        return json::parse(t);
    } catch (const json::parse_error& e) {
        fail("ParseError", std::string("malformed JSON: ") + e.what());
    }
}

json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("ParseError", "cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str());
}

}  // namespace bluebend::io
