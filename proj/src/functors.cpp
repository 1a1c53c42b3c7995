#include "bluebend/functors.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "bluebend/engine.hpp"
#include "bluebend/normalizer.hpp"

namespace bluebend {

FunctorTag parse_functor_tag(const std::string& s) {
    static const std::map<std::string, FunctorTag> names = {
        {"POS", FunctorTag::POS},   {"HULL", FunctorTag::HULL}, {"INV", FunctorTag::INV},
        {"IDEM", FunctorTag::IDEM}, {"CORE", FunctorTag::CORE}, {"MON", FunctorTag::MON},
        {"PADD", FunctorTag::PADD}, {"CONIC", FunctorTag::CONIC}, {"PLUS", FunctorTag::PLUS}};
    std::string up = s;
    std::transform(up.begin(), up.end(), up.begin(), ::toupper);
    auto it = names.find(up);
    if (it == names.end()) fail("ParseError", "unknown functor '" + s + "'");
    return it->second;
}

std::string functor_name(FunctorTag f) {
    switch (f) {
        case FunctorTag::POS: return "POS";
        case FunctorTag::HULL: return "HULL";
        case FunctorTag::INV: return "INV";
        case FunctorTag::IDEM: return "IDEM";
        case FunctorTag::CORE: return "CORE";
        case FunctorTag::MON: return "MON";
        case FunctorTag::PADD: return "PADD";
        case FunctorTag::CONIC: return "CONIC";
        case FunctorTag::PLUS: return "PLUS";
    }
    return "?";
}

GroundValue map_scalar(const GroundValue& c, GroundTag target) {
    if (c.tag == target) return c;
    if (c.is_zero()) return GroundValue::zero(target);
    auto mismatch = [&]() -> GroundValue {
        fail("GroundMismatch", "no ground map " + c.tag.str() + " -> " + target.str());
    };
    switch (c.tag.kind) {
        case GroundKind::F1:
            return GroundValue::one(target);
        case GroundKind::F1SQ:
            if (!target.with_minus_one()) return mismatch();
            return GroundValue::rational(target, c.q);
        case GroundKind::NAT:
            if (target.idempotent()) return GroundValue::one(target);
            if (target.kind == GroundKind::INT || target.kind == GroundKind::RAT || target.kind == GroundKind::RPLUS)
                return GroundValue::rational(target, c.q);
            return mismatch();
        case GroundKind::INT:
            if (target.kind == GroundKind::RAT) return GroundValue::rational(target, c.q);
            return mismatch();
        case GroundKind::BOOL:
            if (target.idempotent()) return GroundValue::one(target);
            return mismatch();
        case GroundKind::OTROP:
            if (target.kind == GroundKind::TROP) return GroundValue::rational(target, c.q);
            return mismatch();
        default:
            return mismatch();
    }
}

bool ground_maps_to(GroundTag from, GroundTag to) {
    if (from == to) return true;
    try {
        map_scalar(GroundValue::one(from), to);
        if (from.has_addition() && !from.idempotent()) map_scalar(GroundValue::integer(from, 2), to);
        if (from.with_minus_one()) map_scalar(GroundValue::integer(from, -1), to);
        return true;
    } catch (const Error&) {
        return false;
    }
}

namespace {

Monomial map_monomial(const Monomial& m, GroundTag target) { return Monomial{map_scalar(m.coeff, target), m.exps}; }

FormalSum map_sum(const FormalSum& s, GroundTag target) {
    std::vector<Monomial> out;
    for (auto& t : s.terms) out.push_back(map_monomial(t, target));
    return FormalSum(std::move(out));
}

Presentation change_ground(const Presentation& p, GroundTag target) {
    Presentation q = p;
    q.ground = target;
    for (auto& [a, b] : q.monoid_relations) {
        a = map_monomial(a, target);
        b = map_monomial(b, target);
    }
    for (auto& r : q.subaddition) {
        r.lhs = map_sum(r.lhs, target);
        r.rhs = map_sum(r.rhs, target);
    }
    return q;
}

std::string fresh(const Presentation& p, std::string name) {
    while (p.has_generator(name)) name += "_";
    return name;
}

}  // namespace

Presentation apply_functor(const Presentation& p, FunctorTag f) {
    p.validate();
    Presentation q = p;
    switch (f) {
        case FunctorTag::POS:
            q.subaddition.push_back(Relation::le(FormalSum{}, FormalSum{p.one()}));
            return q;
        case FunctorTag::HULL:
            for (auto& r : q.subaddition) r.mode = RelMode::EQ;
            return q;
        case FunctorTag::INV: {
            if (p.ground.with_minus_one()) return q;
            if (p.ground.kind == GroundKind::F1) return change_ground(p, GroundTag::of(GroundKind::F1SQ));
            if (p.ground.kind == GroundKind::NAT) return change_ground(p, GroundTag::of(GroundKind::INT));
            if (!p.ground.has_addition()) fail("UnsupportedGround", "no signed extension of " + p.ground.str());
            std::string neg = fresh(p, "neg");
            q.generators.push_back(neg);
            q.monoid_relations.push_back({q.gen(neg, 2), q.one()});
            q.subaddition.push_back(Relation::eq(FormalSum{q.one(), q.gen(neg)}, FormalSum{}));
            return q;
        }
        case FunctorTag::IDEM:
            q.subaddition.push_back(Relation::eq(FormalSum{p.one(), p.one()}, FormalSum{p.one()}));
            return q;
        default:
            fail("UnsupportedGround", functor_name(f) + " is a view; use holds_in_view");
    }
}

namespace {

// Splits terms into k nonempty-or-empty groups, calling visit for each assignment (multiset-aware).
void partitions(const std::vector<Monomial>& terms, size_t k, const std::function<bool(std::vector<FormalSum>&)>& visit) {
    std::vector<FormalSum> groups(k);
    std::function<bool(size_t)> rec = [&](size_t i) -> bool {
        if (i == terms.size()) return visit(groups);
        for (size_t g = 0; g < k; ++g) {
            groups[g].terms.push_back(terms[i]);
            bool stop = rec(i + 1);
            groups[g].terms.pop_back();
            if (stop) return true;
        }
        return false;
    };
    rec(0);
}

Verdict mon_decompose(const Presentation& p, const Relation& r, const Budget& b) {
    if (r.left_monomial()) return derives(p, r, b);
    Verdict whole = derives(p, r, b);
    if (whole.is_disproved()) return whole;
    if (r.mode == RelMode::EQ) {
        // An EQ relation is a pair of LE relations; each orientation must decompose.
        Verdict a = mon_decompose(p, Relation::le(r.lhs, r.rhs), b);
        if (a.is_disproved()) return a;
        return conjoin(a, mon_decompose(p, Relation::le(r.rhs, r.lhs), b));
    }
    const size_t k = r.lhs.size();
    if (k > 4 || r.rhs.size() > 8) return Verdict::unknown("decomposition search too large");
    std::map<std::pair<std::string, std::string>, Verdict> cache;
    auto piece = [&](const Monomial& a, const FormalSum& s) {
        auto key = std::make_pair(a.str(), s.str());
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        Verdict v = derives(p, Relation::le(FormalSum{a}, s), b);
        cache.emplace(key, v);
        return v;
    };
    bool all_disproved = true;
    Verdict found = Verdict::unknown("");
    partitions(r.rhs.terms, k, [&](std::vector<FormalSum>& groups) {
        bool dead = false, ok = true;
        std::vector<std::string> trace;
        for (size_t i = 0; i < k; ++i) {
            Verdict v = piece(r.lhs.terms[i], groups[i]);
            if (v.is_disproved()) dead = true;
            if (!v.is_proved()) ok = false;
            trace.push_back(r.lhs.terms[i].str() + " <= " + groups[i].str());
        }
        if (!dead) all_disproved = false;
        if (ok) {
            found = Verdict::proved(std::move(trace));
            return true;
        }
        return false;
    });
    if (found.is_proved()) return found;
    if (all_disproved) return Verdict::disproved("every split of the right side has a refuted piece");
    return Verdict::unknown("no decomposition into derivable left-monomial pieces found");
}

}  // namespace

Verdict holds_in_view(const Presentation& p, FunctorTag view, const Relation& r, const Budget& b) {
    p.validate(r);
    switch (view) {
        case FunctorTag::PLUS:
            return derives(p, r, b);
        case FunctorTag::CORE: {
            if (r.mode != RelMode::EQ) return Verdict::disproved("core relations are equalities");
            Verdict a = derives(p, Relation::le(r.lhs, r.rhs), b);
            if (a.is_disproved()) return a;
            return conjoin(a, derives(p, Relation::le(r.rhs, r.lhs), b));
        }
        case FunctorTag::MON:
            return mon_decompose(p, r, b);
        case FunctorTag::PADD: {
            if (p.ground.with_minus_one()) return derives(p, r, b);
            Verdict full = derives(p, r, b);
            if (full.is_disproved()) return full;
            Presentation q = p;
            q.subaddition.clear();
            for (auto& g : p.subaddition) {
                bool monomial_side = g.lhs.size() <= 1 || g.rhs.size() <= 1;
                if (g.mode == RelMode::EQ) {
                    if (monomial_side) q.subaddition.push_back(g);
                } else if (monomial_side && derives(p, Relation::le(g.rhs, g.lhs), b).is_proved()) {
                    q.subaddition.push_back(Relation::eq(g.lhs, g.rhs));
                }
            }
            return mon_decompose(q, r, b);
        }
        case FunctorTag::CONIC: {
            Verdict v = derives(p, r, b);
            if (v.is_proved() || r.mode == RelMode::LE) return v;
            // Strictly conic rule: L + c <= R and R + d <= L give L == R.
            std::vector<FormalSum> extras{FormalSum{}};
            extras.push_back(FormalSum{p.one()});
            for (auto& g : p.generators) extras.push_back(FormalSum{p.gen(g)});
            for (auto& c : extras)
                for (auto& d : extras) {
                    Verdict x = derives(p, Relation::le(r.lhs + c, r.rhs), b);
                    if (!x.is_proved()) continue;
                    Verdict y = derives(p, Relation::le(r.rhs + d, r.lhs), b);
                    if (y.is_proved())
                        return Verdict::proved({"conic instance with c = " + c.str() + ", d = " + d.str()});
                }
            ModelQuery q;
            q.goal = &r;
            q.conic_only = true;
            if (auto m = find_model(p, q)) return Verdict::disproved(*m);
            return v.is_disproved() ? Verdict::unknown("refuted only by a non-conic model") : v;
        }
        default:
            fail("UnsupportedGround", functor_name(view) + " is not a view");
    }
}

namespace {

Monomial substitute(const Monomial& m, const GeneratorMap& f, GroundTag target) {
    Monomial out = Monomial::constant(map_scalar(m.coeff, target));
    for (auto& [name, e] : m.exps) {
        auto it = f.find(name);
        if (it == f.end()) fail("NotAMorphism", "generator '" + name + "' has no image");
        Monomial img = map_monomial(it->second, target);
        for (int i = 0; i < e; ++i) out = out * img;
    }
    if (out.is_zero()) out.exps.clear();
    return out;
}

FormalSum substitute(const FormalSum& s, const GeneratorMap& f, GroundTag target) {
    std::vector<Monomial> out;
    for (auto& t : s.terms) out.push_back(substitute(t, f, target));
    return FormalSum(std::move(out));
}

void check_morphism(const Presentation& pD, const Presentation& pB, const GeneratorMap& f) {
    if (!ground_maps_to(pD.ground, pB.ground))
        fail("GroundMismatch", "no ground map " + pD.ground.str() + " -> " + pB.ground.str());
    for (auto& [name, img] : f) {
        if (!pD.has_generator(name)) fail("NotAMorphism", "'" + name + "' is not a generator of the base");
        pB.validate(img);
    }
    for (auto& g : pD.generators)
        if (!f.count(g)) fail("NotAMorphism", "generator '" + g + "' has no image");
    for (auto& [a, c] : pD.monoid_relations) {
        Relation r = Relation::eq(FormalSum{substitute(a, f, pB.ground)}, FormalSum{substitute(c, f, pB.ground)});
        if (!derives(pB, r).is_proved()) fail("NotAMorphism", "image of " + a.str() + " = " + c.str() + " not derived");
    }
    for (auto& rel : pD.subaddition) {
        Relation r{rel.mode, substitute(rel.lhs, f, pB.ground), substitute(rel.rhs, f, pB.ground)};
        if (!derives(pB, r).is_proved()) fail("NotAMorphism", "image of " + rel.str() + " not derived");
    }
}

}  // namespace

Presentation tensor(const Presentation& pB, const Presentation& pC, const Presentation& pD, const GeneratorMap& fB,
                    const GeneratorMap& fC) {
    pB.validate();
    pC.validate();
    pD.validate();
    check_morphism(pD, pB, fB);
    check_morphism(pD, pC, fC);
    GroundTag ground;
    if (ground_maps_to(pC.ground, pB.ground))
        ground = pB.ground;
    else if (ground_maps_to(pB.ground, pC.ground))
        ground = pC.ground;
    else
        fail("GroundMismatch", "grounds " + pB.ground.str() + " and " + pC.ground.str() + " have no common target");

    Presentation out = change_ground(pB, ground);
    // C generators that are plain images of base generators are identified with the B side.
    GeneratorMap c_map;
    std::set<std::string> identified;
    for (auto& d : pD.generators) {
        const Monomial& img = fC.at(d);
        if (img.coeff.is_one() && img.exps.size() == 1 && img.exps.begin()->second == 1) {
            const std::string& g = img.exps.begin()->first;
            if (!identified.count(g)) {
                identified.insert(g);
                c_map[g] = map_monomial(fB.at(d), ground);
            }
        }
    }
    for (auto& g : pC.generators) {
        if (identified.count(g)) continue;
        std::string name = g;
        while (out.has_generator(name)) name += "_c";
        out.generators.push_back(name);
        c_map[g] = Monomial::var(ground, name);
    }
    for (auto& [a, b] : pC.monoid_relations)
        out.monoid_relations.push_back({substitute(a, c_map, ground), substitute(b, c_map, ground)});
    for (auto& r : pC.subaddition)
        out.subaddition.push_back({r.mode, substitute(r.lhs, c_map, ground), substitute(r.rhs, c_map, ground)});
    GeneratorMap b_map;
    for (auto& g : pB.generators) b_map[g] = Monomial::var(ground, g);
    for (auto& d : pD.generators) {
        Monomial lb = substitute(fB.at(d), b_map, ground);
        Monomial lc = substitute(fC.at(d), c_map, ground);
        if (lb == lc) continue;
        out.monoid_relations.push_back({lb, lc});
    }
    // Drop relations that became trivial after identification.
    std::vector<std::pair<Monomial, Monomial>> kept;
    for (auto& rel : out.monoid_relations)
        if (!(rel.first == rel.second)) kept.push_back(rel);
    out.monoid_relations = std::move(kept);
    std::vector<Relation> subs;
    for (auto& r : out.subaddition)
        if (!(r.lhs == r.rhs) && std::find(subs.begin(), subs.end(), r) == subs.end()) subs.push_back(r);
    out.subaddition = std::move(subs);
    out.validate();
    return out;
}

namespace {

std::string inverse_name(const Monomial& m) {
    std::string s;
    for (auto& [name, e] : m.exps) {
        if (!s.empty()) s += "_";
        s += name;
        if (e != 1) s += std::to_string(e);
    }
    return "inv_" + s;
}

}  // namespace

Presentation localize(const Presentation& p, const std::vector<Monomial>& elems) {
    p.validate();
    Presentation q = p;
    for (auto& raw : elems) {
        q.validate(raw);
        if (raw.is_zero()) fail("ZeroInverted", "cannot invert 0");
        Normalizer norm(q);
        Term t = to_term(q, raw);
        norm.reduce(t);
        if (t.coeff.is_zero()) fail("ZeroInverted", raw.str() + " is zero in the presentation");
        if (!t.coeff.is_unit()) fail("UnsupportedGround", "coefficient of " + raw.str() + " is not a unit");
        Key inv;
        if (key_degree(t.key) == 0 || norm.invert(t.key, inv)) {
            if (t.coeff.is_unit()) continue;
        }
        Monomial s = to_monomial(q, t);
        std::string name = fresh(q, inverse_name(s));
        q.generators.push_back(name);
        Monomial prod = s * q.gen(name);
        q.monoid_relations.push_back({Monomial{GroundValue::one(q.ground), prod.exps}, Monomial::constant(prod.coeff.inverse())});
    }
    return q;
}

Presentation free_extension(const Presentation& p, const std::vector<std::string>& new_gens) {
    Presentation q = p;
    for (auto& g : new_gens) {
        if (q.has_generator(g)) fail("NameClash", "generator '" + g + "' already exists");
        q.generators.push_back(g);
    }
    q.validate();
    return q;
}

}  // namespace bluebend
