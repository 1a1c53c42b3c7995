#include <algorithm>
#include <functional>
#include <set>

#include "bluebend/engine.hpp"
#include "bluebend/normalizer.hpp"
#include "bluebend/trop.hpp"

namespace bluebend {

namespace {

Monomial push(const BaseValuation& v, const Monomial& m) {
    if (m.is_zero()) return Monomial::constant(GroundValue::zero(v.target));
    return Monomial{v(m.coeff), m.exps};
}

FormalSum push(const BaseValuation& v, const FormalSum& s) {
    std::vector<Monomial> out;
    for (auto& t : s.terms) out.push_back(push(v, t));
    return FormalSum(std::move(out));
}

void check_base(const Presentation& p, const BaseValuation& v, GroundTag target) {
    if (v.source != p.ground || v.target != target)
        fail("TagMismatch", "base valuation " + v.str() + " does not map " + p.ground.str() + " to " + target.str());
}

// Terms of a polynomial as monomials over the source ground.
std::vector<Monomial> poly_terms(const Presentation& p, const Poly& f) {
    std::vector<Monomial> out;
    for (auto& [k, c] : f) out.push_back(Monomial{GroundValue::rational(p.ground, c), to_exps(p, k)});
    return out;
}

// For each term i: t_i + rest == rest, coefficients pushed through v.
void bend_terms(const std::vector<Monomial>& terms, const BaseValuation& v, std::vector<Relation>& out) {
    for (size_t i = 0; i < terms.size(); ++i) {
        std::vector<Monomial> rest;
        for (size_t j = 0; j < terms.size(); ++j)
            if (j != i) rest.push_back(push(v, terms[j]));
        FormalSum r(rest);
        Relation rel = Relation::eq(FormalSum{push(v, terms[i])} + r, r);
        if (std::find(out.begin(), out.end(), rel) == out.end()) out.push_back(rel);
    }
}

void add_unique(std::vector<Relation>& out, Relation r) {
    if (r.lhs == r.rhs) return;
    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(std::move(r));
}

}  // namespace

BendPresentation bend(const Presentation& p, const BaseValuation& v, GroundTag target) {
    p.validate();
    if (!target.idempotent()) fail("NotIdempotentTarget", target.str() + " is not idempotent");
    check_base(p, v, target);
    Presentation q = Presentation::free(target, p.generators);
    q.budget_default = p.budget_default;
    for (auto& [a, b] : p.monoid_relations) q.monoid_relations.push_back({push(v, a), push(v, b)});
    if (p.ground.with_minus_one()) {
        for (auto& r : p.subaddition) {
            Poly f = poly_sub(to_poly(p, r.lhs), to_poly(p, r.rhs));
            if (!f.empty()) bend_terms(poly_terms(p, f), v, q.subaddition);
        }
    } else {
        for (auto& r : p.subaddition) {
            std::vector<std::pair<const FormalSum*, const FormalSum*>> sides;
            if (r.lhs.size() <= 1) sides.push_back({&r.lhs, &r.rhs});
            if (r.mode == RelMode::EQ && r.rhs.size() <= 1) sides.push_back({&r.rhs, &r.lhs});
            for (auto [a, rest] : sides) {
                FormalSum rr = push(v, *rest);
                add_unique(q.subaddition, Relation::eq(push(v, *a) + rr, rr));
            }
        }
    }
    return BendPresentation{q, p, v, p.generators};
}

Presentation trop_tp(const Presentation& p, const BaseValuation& v, GroundTag target) {
    p.validate();
    if (!target.has_pos_order() || target.with_minus_one() || target.kind == GroundKind::F1)
        fail("RegimeUnsupported", target.str() + " has no totally positive view");
    check_base(p, v, target);
    Presentation q = Presentation::free(target, p.generators);
    q.budget_default = p.budget_default;
    for (auto& [a, b] : p.monoid_relations) q.monoid_relations.push_back({push(v, a), push(v, b)});
    if (p.ground.with_minus_one()) {
        // Left-monomial generators of the ring: each term against the others (v(-c) = v(c)).
        for (auto& r : p.subaddition) {
            Poly f = poly_sub(to_poly(p, r.lhs), to_poly(p, r.rhs));
            auto terms = poly_terms(p, f);
            for (size_t i = 0; i < terms.size(); ++i) {
                std::vector<Monomial> rest;
                for (size_t j = 0; j < terms.size(); ++j)
                    if (j != i) rest.push_back(push(v, terms[j]));
                add_unique(q.subaddition, Relation::le(FormalSum{push(v, terms[i])}, FormalSum(rest)));
            }
        }
    } else {
        for (auto& r : p.subaddition) {
            bool l = r.lhs.size() <= 1, rr = r.rhs.size() <= 1;
            if (r.mode == RelMode::EQ && l && rr) {
                add_unique(q.subaddition, Relation::eq(push(v, r.lhs), push(v, r.rhs)));
                continue;
            }
            if (l) add_unique(q.subaddition, Relation::le(push(v, r.lhs), push(v, r.rhs)));
            if (r.mode == RelMode::EQ && rr) add_unique(q.subaddition, Relation::le(push(v, r.rhs), push(v, r.lhs)));
        }
    }
    q.subaddition.push_back(Relation::le(FormalSum{}, FormalSum{q.one()}));
    return q;
}

bool point_in_trop(const BendPresentation& bp, const std::map<std::string, GroundValue>& point) {
    const Presentation& q = bp.underlying;
    GroundTag t = q.ground;
    auto eval = [&](const Monomial& m) {
        if (m.is_zero()) return GroundValue::zero(t);
        GroundValue acc = m.coeff;
        for (auto& [name, e] : m.exps) {
            auto it = point.find(name);
            if (it == point.end()) fail("UnassignedGenerator", "no value for '" + name + "'");
            if (it->second.tag != t) fail("TagMismatch", "value of '" + name + "' is not in " + t.str());
            for (int i = 0; i < e; ++i) acc = g_mul(acc, it->second);
        }
        return acc;
    };
    auto sum = [&](const FormalSum& s) {
        GroundValue acc = GroundValue::zero(t);
        for (auto& m : s.terms) acc = g_add(acc, eval(m));
        return acc;
    };
    for (auto& g : q.generators)
        if (!point.count(g)) fail("UnassignedGenerator", "no value for '" + g + "'");
    for (auto& [a, b] : q.monoid_relations)
        if (!(eval(a) == eval(b))) return false;
    for (auto& r : q.subaddition) {
        GroundValue l = sum(r.lhs), rr = sum(r.rhs);
        if (r.mode == RelMode::EQ ? !(l == rr) : !g_le(l, rr)) return false;
    }
    return true;
}

std::vector<Poly> ideal_circuits(const std::vector<Poly>& gens, size_t nvars, int degree_bound) {
    // Monomial multiples of the generators within the bound.
    std::vector<Poly> rows;
    for (auto& g : gens) {
        int dg = poly_degree(g);
        if (dg > degree_bound) continue;
        Key cur(nvars, 0);
        std::function<void(size_t, int)> rec = [&](size_t i, int left) {
            if (i == nvars) {
                rows.push_back(poly_mul_term(g, cur, Q(1)));
                return;
            }
            for (int e = 0; e <= left; ++e) {
                cur[i] = e;
                rec(i + 1, left - e);
            }
            cur[i] = 0;
        };
        rec(0, degree_bound - dg);
    }
    std::vector<Key> cols;
    {
        std::set<Key, DeglexGreater> all;
        for (auto& r : rows)
            for (auto& [k, _] : r) all.insert(k);
        cols.assign(all.begin(), all.end());
    }
    std::map<Key, size_t> col_of;
    for (size_t i = 0; i < cols.size(); ++i) col_of[cols[i]] = i;
    QMatrix m;
    for (auto& r : rows) {
        std::vector<Q> row(cols.size(), Q(0));
        for (auto& [k, c] : r) row[col_of[k]] = c;
        m.push_back(row);
    }
    rref(m);
    const size_t rank = m.size(), n = cols.size();
    std::vector<Poly> out;
    if (rank == 0) return out;
    // Circuits: vanish on r-1 chosen columns with a one-dimensional solution.
    double combos = 1;
    for (size_t i = 0; i + 1 < rank; ++i) combos = combos * double(n - i) / double(i + 1);
    if (combos > 2e5) fail("EnumerationBoundExceeded", "too many column subsets for circuit enumeration");
    std::set<std::vector<Z>> seen;
    std::vector<std::pair<std::vector<bool>, ZVec>> found;
    std::vector<size_t> pick;
    std::function<void(size_t)> rec = [&](size_t start) {
        if (pick.size() + 1 == rank) {
            QMatrix sys;  // rows: columns in pick; unknowns: coefficients of the basis rows
            for (size_t c : pick) {
                std::vector<Q> eq(rank);
                for (size_t i = 0; i < rank; ++i) eq[i] = m[i][c];
                sys.push_back(eq);
            }
            QMatrix ker = nullspace(sys, rank);
            if (ker.size() != 1) return;
            std::vector<Q> vec(n, Q(0));
            for (size_t i = 0; i < rank; ++i)
                for (size_t j = 0; j < n; ++j) vec[j] += ker[0][i] * m[i][j];
            ZVec z = primitive(vec);
            if (!seen.insert(z).second) return;
            std::vector<bool> supp(n);
            for (size_t j = 0; j < n; ++j) supp[j] = z[j] != 0;
            found.push_back({supp, z});
            return;
        }
        for (size_t c = start; c < n; ++c) {
            pick.push_back(c);
            rec(c + 1);
            pick.pop_back();
        }
    };
    rec(0);
    for (size_t i = 0; i < found.size(); ++i) {
        bool minimal = true;
        for (size_t j = 0; j < found.size() && minimal; ++j) {
            if (i == j) continue;
            bool sub = true, strict = false;
            for (size_t c = 0; c < n; ++c) {
                if (found[j].first[c] && !found[i].first[c]) sub = false;
                if (found[i].first[c] && !found[j].first[c]) strict = true;
            }
            if (sub && strict) minimal = false;
        }
        if (!minimal) continue;
        Poly f;
        for (size_t c = 0; c < n; ++c)
            if (found[i].second[c] != 0) f.emplace(cols[c], Q(found[i].second[c]));
        out.push_back(f);
    }
    return out;
}

Presentation gg_congruence(GroundTag ground, const std::vector<std::string>& generators,
                           const std::vector<FormalSum>& ideal_gens, const BaseValuation& v, GroundTag target,
                           int degree_bound) {
    if (!ground.with_minus_one()) fail("UnsupportedGround", ground.str() + " is not a ring ground");
    if (!target.idempotent()) fail("NotIdempotentTarget", target.str() + " is not idempotent");
    Presentation ring = Presentation::free(ground, generators);
    ring.validate();
    if (v.source != ground || v.target != target)
        fail("TagMismatch", "base valuation " + v.str() + " does not map " + ground.str() + " to " + target.str());
    std::vector<Poly> gens;
    int top = 0;
    for (auto& s : ideal_gens) {
        ring.validate(s);
        Poly f = to_poly(ring, s);
        if (f.empty()) continue;
        top = std::max(top, poly_degree(f));
        gens.push_back(f);
    }
    if (degree_bound < top)
        fail("DegreeBoundTooSmall", "degree bound " + std::to_string(degree_bound) + " is below generator degree " +
                                        std::to_string(top));
    Presentation q = Presentation::free(target, generators);
    for (auto& c : ideal_circuits(gens, generators.size(), degree_bound)) bend_terms(poly_terms(ring, c), v, q.subaddition);
    return q;
}

Presentation gg_congruence(const Presentation& ring, const BaseValuation& v, GroundTag target, int degree_bound) {
    std::vector<FormalSum> gens;
    for (auto& r : ring.subaddition) {
        FormalSum neg;
        for (auto& t : r.rhs.terms) neg.terms.push_back(Monomial{g_mul(t.coeff, GroundValue::integer(ring.ground, -1)), t.exps});
        gens.push_back(r.lhs + neg);
    }
    for (auto& [a, b] : ring.monoid_relations)
        gens.push_back(FormalSum{a, Monomial{g_mul(b.coeff, GroundValue::integer(ring.ground, -1)), b.exps}});
    return gg_congruence(ring.ground, ring.generators, gens, v, target, degree_bound);
}

}  // namespace bluebend
