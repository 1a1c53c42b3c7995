#include <algorithm>

#include "bluebend/engine.hpp"
#include "bluebend/normalizer.hpp"
#include "bluebend/trop.hpp"

namespace bluebend {

namespace {

GroundValue eval_at(const Monomial& m, const std::map<std::string, GroundValue>& w, GroundTag t) {
    if (m.is_zero()) return GroundValue::zero(t);
    GroundValue acc = m.coeff;
    for (auto& [name, e] : m.exps) {
        auto it = w.find(name);
        if (it == w.end()) fail("UnassignedGenerator", "no value for '" + name + "'");
        if (it->second.tag != t) fail("TagMismatch", "value of '" + name + "' is not in " + t.str());
        for (int i = 0; i < e; ++i) acc = g_mul(acc, it->second);
    }
    return acc;
}

struct Tally {
    std::vector<ZVec> all;       // differences inside initial forms
    std::vector<ZVec> two_term;  // differences from binomial initial forms
};

Tally initial_differences(const BendPresentation& bp, const std::map<std::string, GroundValue>& w, int bound) {
    const Presentation& p = bp.origin;
    const size_t n = p.generators.size();
    const GroundTag t = bp.underlying.ground;
    Tally out;
    for (auto& c : ideal_circuits(ideal_generators(p), n, bound)) {
        std::vector<std::pair<Key, GroundValue>> vals;
        for (auto& [k, q] : c) {
            Monomial m{bp.base(GroundValue::rational(p.ground, q)), to_exps(p, k)};
            vals.push_back({k, eval_at(m, w, t)});
        }
        GroundValue best = GroundValue::zero(t);
        for (auto& [_, v] : vals) best = g_add(best, v);
        std::vector<Key> init;
        for (auto& [k, v] : vals)
            if (v == best) init.push_back(k);
        if (init.size() < 2) fail("NotInTrop", "an ideal element has a monomial initial form at this point");
        for (size_t i = 1; i < init.size(); ++i) {
            ZVec d(n);
            for (size_t j = 0; j < n; ++j) d[j] = init[i][j] - init[0][j];
            out.all.push_back(d);
            if (init.size() == 2) out.two_term.push_back(d);
        }
    }
    return out;
}

// Index of the lattice spanned by h inside its saturation.
Z saturation_index(const std::vector<ZVec>& h, size_t n) {
    QMatrix rows;
    for (auto& v : h) rows.push_back(std::vector<Q>(v.begin(), v.end()));
    std::vector<ZVec> perp = integer_kernel(rows, n);
    std::vector<ZVec> sat;
    if (perp.empty()) {
        for (size_t i = 0; i < n; ++i) {
            ZVec e(n, Z(0));
            e[i] = 1;
            sat.push_back(e);
        }
    } else {
        QMatrix prow;
        for (auto& v : perp) prow.push_back(std::vector<Q>(v.begin(), v.end()));
        sat = integer_kernel(prow, n);
    }
    const size_t r = sat.size();
    if (r == 0) return 0;
    // Coordinates of each generator of h in the saturated basis.
    std::vector<ZVec> coords;
    for (auto& v : h) {
        QMatrix sys;
        for (size_t i = 0; i < n; ++i) {
            std::vector<Q> row;
            for (auto& b : sat) row.push_back(Q(b[i]));
            row.push_back(Q(v[i]));
            sys.push_back(row);
        }
        std::vector<int> piv = rref(sys);
        ZVec c(r, Z(0));
        for (size_t i = 0; i < piv.size(); ++i)
            if (piv[i] < static_cast<int>(r)) c[piv[i]] = Z(sys[i][r]);
        coords.push_back(c);
    }
    return lattice_index(coords, r);
}

int class_count(const BendPresentation& bp, const std::map<std::string, GroundValue>& w, int bound) {
    Tally t = initial_differences(bp, w, bound);
    const size_t n = bp.origin.generators.size();
    ZLattice two(n);
    for (auto& v : t.two_term) two.add(v);
    for (auto& v : t.all)
        if (!two.contains(v))
            fail("TieSpaceNotLinear", "initial forms with three or more terms are not generated by binomial ties");
    if (t.two_term.empty()) fail("NotInTrop", "no binomial initial forms at this point");
    Z idx = saturation_index(t.two_term, n);
    if (idx == 0) fail("NotStabilized", "tie lattice has infinite index in its saturation");
    return static_cast<int>(idx.get_si());
}

}  // namespace

FormalSum mr_initial_form(const Presentation& trop, const FormalSum& f, const std::map<std::string, GroundValue>& w) {
    if (trop.ground.kind != GroundKind::TROP) fail("RegimeUnsupported", "initial forms are taken over TROP");
    trop.validate(f);
    GroundValue best = GroundValue::zero(trop.ground);
    std::vector<GroundValue> vals;
    for (auto& m : f.terms) {
        vals.push_back(eval_at(m, w, trop.ground));
        best = g_add(best, vals.back());
    }
    const GroundTag B = GroundTag::of(GroundKind::BOOL);
    std::vector<Monomial> out;
    for (size_t i = 0; i < f.terms.size(); ++i)
        if (vals[i] == best && !best.is_zero()) out.push_back(Monomial{GroundValue::one(B), f.terms[i].exps});
    return FormalSum(std::move(out));
}

int mr_weight(const BendPresentation& bp, const std::map<std::string, GroundValue>& w, int degree_bound) {
    if (!bp.origin.ground.with_minus_one()) fail("RegimeUnsupported", "weights need a ring source");
    if (bp.underlying.ground.kind != GroundKind::TROP) fail("RegimeUnsupported", "weights are computed over TROP");
    if (!point_in_trop(bp, w)) fail("NotInTrop", "the point is not in the tropicalization");
    int here = class_count(bp, w, degree_bound);
    int next = class_count(bp, w, degree_bound + 1);
    if (here != next)
        fail("NotStabilized", "class count " + std::to_string(here) + " at degree " + std::to_string(degree_bound) +
                                  " changes to " + std::to_string(next));
    return here;
}

}  // namespace bluebend
