#include <algorithm>
#include <functional>

#include "bluebend/engine.hpp"
#include "bluebend/normalizer.hpp"
#include "bluebend/trop.hpp"

namespace bluebend {

std::string Span::str() const {
    if (generators.empty()) return "<0>";
    std::string s = "<";
    for (size_t i = 0; i < generators.size(); ++i) s += (i ? ", " : "") + generators[i].str();
    return s + ">";
}

namespace {

constexpr size_t kSpanCap = 200000;

// The view used for the span preorder: left-monomial generators, designated a <= 1, and 0 <= 1.
Presentation span_view(const Presentation& p, const KDesignation& k) {
    Presentation q = p;
    q.subaddition.clear();
    for (auto& r : p.subaddition) {
        if (r.lhs.size() <= 1) q.subaddition.push_back(Relation::le(r.lhs, r.rhs));
        if (r.mode == RelMode::EQ && r.rhs.size() <= 1) q.subaddition.push_back(Relation::le(r.rhs, r.lhs));
    }
    for (auto& a : k.le_one) q.subaddition.push_back(Relation::le(FormalSum{a}, FormalSum{p.one()}));
    q.subaddition.push_back(Relation::le(FormalSum{}, FormalSum{p.one()}));
    return q;
}

}  // namespace

SpanTable macpherson_an(const Presentation& p, const KDesignation& k, int size_bound, const Budget& b) {
    p.validate();
    const bool ring = p.ground.with_minus_one();
    if (ring && (!p.subaddition.empty() || !p.monoid_relations.empty()))
        fail("UnsupportedGround", "span fragments over a ring ground need a free presentation");
    const size_t n = p.generators.size();
    Normalizer norm(p);

    std::vector<GroundValue> coeffs{GroundValue::one(p.ground)};
    if (p.ground.kind != GroundKind::F1)
        for (auto& c : k.fragment_coeffs) {
            if (c.tag != p.ground) fail("TagMismatch", "fragment coefficient " + c.str() + " is not in " + p.ground.str());
            if (c.is_zero()) continue;
            if (std::find(coeffs.begin(), coeffs.end(), c) == coeffs.end()) coeffs.push_back(c);
        }

    SpanTable out;
    std::vector<std::string> seen;
    for (int d = 0; d <= b.max_degree; ++d) {
        Key cur(n, 0);
        std::vector<Key> keys;
        std::function<void(size_t, int)> rec = [&](size_t i, int left) {
            if (i + 1 == n || n == 0) {
                if (n) cur[i] = left;
                if (n || left == 0) keys.push_back(cur);
                return;
            }
            for (int e = left; e >= 0; --e) {
                cur[i] = e;
                rec(i + 1, left - e);
            }
        };
        rec(0, d);
        for (auto& key : keys)
            for (auto& c : coeffs) {
                Term t = norm.normal(Term{c, key});
                if (t.coeff.is_zero()) continue;
                Monomial m = to_monomial(p, t);
                if (m.degree() > b.max_degree) continue;
                std::string s = m.str();
                if (std::find(seen.begin(), seen.end(), s) != seen.end()) continue;
                seen.push_back(s);
                out.atoms.push_back(m);
            }
    }

    Presentation view = span_view(p, k);
    auto le = [&](const Monomial& a, const Monomial& c) -> bool {
        if (ring) {
            if (a.exps != c.exps) return false;
            if (k.integral_prime == 0) return true;
            return padic_order(a.coeff.q / c.coeff.q, k.integral_prime) >= 0;
        }
        Verdict v = derives(view, Relation::le(FormalSum{a}, FormalSum{c}), b);
        if (v.is_unknown()) out.unknown = true;
        return v.is_proved();
    };
    // Drop atoms equivalent to an earlier one.
    {
        std::vector<Monomial> kept;
        for (auto& a : out.atoms) {
            bool dup = false;
            for (auto& c : kept)
                if (le(a, c) && le(c, a)) dup = true;
            if (!dup) kept.push_back(a);
        }
        out.atoms = std::move(kept);
    }
    const size_t m = out.atoms.size();
    out.atom_le.assign(m, std::vector<bool>(m, false));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) out.atom_le[i][j] = i == j || le(out.atoms[i], out.atoms[j]);

    // Antichains of at most size_bound atoms.
    std::vector<std::vector<int>> chains;
    std::vector<int> cur;
    std::function<void(size_t)> grow = [&](size_t start) {
        chains.push_back(cur);
        if (chains.size() > kSpanCap) fail("EnumerationBoundExceeded", "more than " + std::to_string(kSpanCap) + " spans");
        if (static_cast<int>(cur.size()) >= size_bound) return;
        for (size_t i = start; i < m; ++i) {
            bool ok = true;
            for (int c : cur) ok &= !out.atom_le[i][c] && !out.atom_le[c][i];
            if (!ok) continue;
            cur.push_back(static_cast<int>(i));
            grow(i + 1);
            cur.pop_back();
        }
    };
    grow(0);
    std::stable_sort(chains.begin(), chains.end(), [](auto& a, auto& c) { return a.size() < c.size(); });
    std::map<std::vector<int>, int> index;
    for (size_t i = 0; i < chains.size(); ++i) {
        index[chains[i]] = static_cast<int>(i);
        Span s;
        for (int a : chains[i]) s.generators.push_back(out.atoms[a]);
        out.spans.push_back(s);
    }

    auto reduce = [&](std::vector<int> xs) {
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        std::vector<int> r;
        for (int x : xs) {
            bool below = false;
            for (int y : xs)
                if (y != x && out.atom_le[x][y]) below = true;
            if (!below) r.push_back(x);
        }
        return r;
    };
    auto lookup = [&](const std::vector<int>& xs) {
        auto it = index.find(xs);
        return it == index.end() ? -1 : it->second;
    };
    std::map<std::string, int> atom_of;
    for (size_t i = 0; i < m; ++i) atom_of[out.atoms[i].str()] = static_cast<int>(i);
    std::vector<std::vector<int>> atom_prod(m, std::vector<int>(m, -1));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) {
            Monomial pr = normalize_monomial(p, out.atoms[i] * out.atoms[j]);
            auto it = atom_of.find(pr.str());
            if (it != atom_of.end()) {
                atom_prod[i][j] = it->second;
                continue;
            }
            for (size_t a = 0; a < m; ++a)
                if (!pr.is_zero() && le(pr, out.atoms[a]) && le(out.atoms[a], pr)) atom_prod[i][j] = static_cast<int>(a);
        }

    const size_t S = chains.size();
    out.join.assign(S, std::vector<int>(S, -1));
    out.product.assign(S, std::vector<int>(S, -1));
    for (size_t i = 0; i < S; ++i)
        for (size_t j = 0; j < S; ++j) {
            std::vector<int> u = chains[i];
            u.insert(u.end(), chains[j].begin(), chains[j].end());
            out.join[i][j] = lookup(reduce(u));
            std::vector<int> pr;
            bool inside = true;
            for (int a : chains[i])
                for (int c : chains[j]) {
                    if (atom_prod[a][c] < 0) inside = false;
                    pr.push_back(atom_prod[a][c]);
                }
            if (inside) out.product[i][j] = lookup(reduce(pr));
        }
    return out;
}

AnCheck check_macpherson_bend(const SpanTable& an, const Presentation& bend_side, const std::vector<Monomial>& atom_image,
                              const Budget& b) {
    AnCheck res;
    auto image = [&](size_t span) {
        std::vector<Monomial> ms;
        for (auto& g : an.spans[span].generators) {
            size_t a = std::find_if(an.atoms.begin(), an.atoms.end(), [&](auto& x) { return x == g; }) - an.atoms.begin();
            ms.push_back(atom_image.at(a));
        }
        return FormalSum(std::move(ms));
    };
    auto record = [&](bool ok, const std::string& what) {
        ++res.comparisons;
        if (!ok) {
            res.ok = false;
            if (res.failures.size() < 20) res.failures.push_back(what);
        }
    };
    const size_t m = an.atoms.size();
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) {
            if (i == j) continue;
            FormalSum a{atom_image[i]}, c{atom_image[j]};
            Verdict v = derives(bend_side, Relation::eq(a + c, c), b);
            bool want = an.atom_le[i][j];
            record(want ? v.is_proved() : v.is_disproved(),
                   an.atoms[i].str() + (want ? " <= " : " !<= ") + an.atoms[j].str() + " gives " + outcome_name(v.outcome));
        }
    const size_t S = an.spans.size();
    // Deterministic sample of pairs: all when small, a stride otherwise.
    const size_t total = S * S, stride = total <= 900 ? 1 : total / 900 + 1;
    for (size_t t = 0; t < total; t += stride) {
        size_t i = t / S, j = t % S;
        if (an.join[i][j] >= 0) {
            Verdict v = derives(bend_side, Relation::eq(image(an.join[i][j]), image(i) + image(j)), b);
            record(v.is_proved(), "join " + an.spans[i].str() + " + " + an.spans[j].str());
        }
        if (an.product[i][j] >= 0) {
            Verdict v = derives(bend_side, Relation::eq(image(an.product[i][j]), image(i) * image(j)), b);
            record(v.is_proved(), "product " + an.spans[i].str() + " * " + an.spans[j].str());
        }
    }
    return res;
}

}  // namespace bluebend
