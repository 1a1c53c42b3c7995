#include "bluebend/linalg.hpp"

#include <algorithm>
#include <deque>

namespace bluebend {

void poly_add_term(Poly& f, const Key& k, const Q& c) {
    if (c == 0) return;
    auto it = f.find(k);
    if (it == f.end()) {
        f.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second == 0) f.erase(it);
}

Poly poly_sub(const Poly& a, const Poly& b) {
    Poly r = a;
    for (auto& [k, c] : b) poly_add_term(r, k, -c);
    return r;
}

Poly poly_mul_term(const Poly& f, const Key& k, const Q& c) {
    Poly r;
    if (c == 0) return r;
    for (auto& [fk, fc] : f) r.emplace(key_add(fk, k), fc * c);
    return r;
}

int poly_degree(const Poly& f) {
    int d = 0;
    for (auto& [k, _] : f) d = std::max(d, key_degree(k));
    return d;
}

Poly poly_reduce(Poly f, const std::vector<Poly>& basis) {
    Poly rem;
    while (!f.empty()) {
        auto [lk, lc] = *f.begin();
        const Poly* hit = nullptr;
        for (auto& g : basis) {
            if (!g.empty() && divides(g.begin()->first, lk)) {
                hit = &g;
                break;
            }
        }
        if (!hit) {
            rem.emplace(lk, lc);
            f.erase(f.begin());
            continue;
        }
        const auto& [gk, gc] = *hit->begin();
        Poly sub = poly_mul_term(*hit, key_sub(lk, gk), lc / gc);
        for (auto& [k, c] : sub) poly_add_term(f, k, -c);
    }
    return rem;
}

namespace {

Poly monic(Poly f) {
    if (f.empty()) return f;
    Q lead = f.begin()->second;
    for (auto& [_, c] : f) c /= lead;
    return f;
}

}  // namespace

bool groebner(const std::vector<Poly>& gens, std::vector<Poly>& out, size_t max_pairs, int max_degree) {
    out.clear();
    for (auto& g : gens) {
        Poly r = poly_reduce(g, out);
        if (!r.empty()) out.push_back(monic(r));
    }
    std::deque<std::pair<size_t, size_t>> pairs;
    for (size_t j = 0; j < out.size(); ++j)
        for (size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);
    size_t processed = 0;
    while (!pairs.empty()) {
        if (++processed > max_pairs) return false;
        auto [i, j] = pairs.front();
        pairs.pop_front();
        const Key& a = out[i].begin()->first;
        const Key& b = out[j].begin()->first;
        bool coprime = true;
        for (size_t t = 0; t < a.size() && coprime; ++t) coprime = !(a[t] > 0 && b[t] > 0);
        if (coprime) continue;
        Key l = key_lcm(a, b);
        if (key_degree(l) > max_degree) return false;
        Poly s = poly_sub(poly_mul_term(out[i], key_sub(l, a), Q(1)), poly_mul_term(out[j], key_sub(l, b), Q(1)));
        Poly r = poly_reduce(s, out);
        if (r.empty()) continue;
        if (poly_degree(r) > max_degree) return false;
        out.push_back(monic(r));
        if (out.back().begin()->first == Key(a.size(), 0)) {
            // The ideal is the whole ring.
            out = {out.back()};
            return true;
        }
        for (size_t t = 0; t + 1 < out.size(); ++t) pairs.emplace_back(t, out.size() - 1);
    }
    return true;
}

std::vector<int> rref(QMatrix& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    size_t rows = m.size(), cols = m[0].size(), r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t sel = r;
        while (sel < rows && m[sel][c] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(m[sel], m[r]);
        Q inv = 1 / m[r][c];
        for (auto& x : m[r]) x *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Q f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    m.resize(r);
    return pivots;
}

QMatrix nullspace(const QMatrix& a, size_t ncols) {
    QMatrix m = a;
    for (auto& row : m) row.resize(ncols, Q(0));
    std::vector<int> pivots = rref(m);
    std::vector<bool> is_pivot(ncols, false);
    for (int p : pivots) is_pivot[p] = true;
    QMatrix basis;
    for (size_t f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Q> v(ncols, Q(0));
        v[f] = 1;
        for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][f];
        basis.push_back(v);
    }
    return basis;
}

Z vec_gcd(const ZVec& v) {
    Z g = 0;
    for (auto& x : v) g = gcd(g, x);
    return g;
}

ZVec primitive(const std::vector<Q>& v) {
    Z l = 1;
    for (auto& x : v) l = lcm(l, x.get_den());
    ZVec out;
    for (auto& x : v) out.push_back(Z(x * l));
    Z g = vec_gcd(out);
    if (g == 0) return out;
    for (auto& x : out) x /= g;
    for (auto& x : out) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : out) y = -y;
        break;
    }
    return out;
}

void ZLattice::add(ZVec v) {
    v.resize(dim_, Z(0));
    for (size_t c = 0; c < dim_; ++c) {
        if (v[c] == 0) continue;
        auto at = std::find(pivot_.begin(), pivot_.end(), static_cast<int>(c));
        if (at == pivot_.end()) {
            if (v[c] < 0)
                for (auto& x : v) x = -x;
            auto pos = std::lower_bound(pivot_.begin(), pivot_.end(), static_cast<int>(c));
            size_t idx = pos - pivot_.begin();
            pivot_.insert(pos, static_cast<int>(c));
            rows_.insert(rows_.begin() + idx, v);
            return;
        }
        ZVec& row = rows_[at - pivot_.begin()];
        Z g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), row[c].get_mpz_t(), v[c].get_mpz_t());
        Z a = row[c] / g, b = v[c] / g;
        ZVec nrow(dim_), nv(dim_);
        for (size_t j = 0; j < dim_; ++j) {
            nrow[j] = s * row[j] + t * v[j];
            nv[j] = a * v[j] - b * row[j];
        }
        if (nrow[c] < 0)
            for (auto& x : nrow) x = -x;
        row = nrow;
        v = nv;
    }
}

bool ZLattice::contains(ZVec v) const {
    v.resize(dim_, Z(0));
    for (size_t c = 0; c < dim_; ++c) {
        if (v[c] == 0) continue;
        auto at = std::find(pivot_.begin(), pivot_.end(), static_cast<int>(c));
        if (at == pivot_.end()) return false;
        const ZVec& row = rows_[at - pivot_.begin()];
        if (v[c] % row[c] != 0) return false;
        Z f = v[c] / row[c];
        for (size_t j = c; j < dim_; ++j) v[j] -= f * row[j];
    }
    return true;
}

std::vector<ZVec> integer_kernel(const QMatrix& a, size_t n) {
    std::vector<ZVec> m;
    for (auto& row : a) {
        std::vector<Q> r = row;
        r.resize(n, Q(0));
        ZVec z = primitive(r);
        if (vec_gcd(z) != 0) m.push_back(z);
    }
    std::vector<ZVec> u(n, ZVec(n, Z(0)));
    for (size_t i = 0; i < n; ++i) u[i][i] = 1;
    // Column operations on m, mirrored on the columns of u.
    size_t c = 0;
    for (size_t i = 0; i < m.size() && c < n; ++i) {
        for (size_t j = c + 1; j < n; ++j) {
            if (m[i][j] == 0) continue;
            Z x = m[i][c], y = m[i][j];
            Z g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
            Z p = x / g, q = y / g;
            auto mix = [&](auto& rows) {
                for (auto& r : rows) {
                    Z a0 = r[c], b0 = r[j];
                    r[c] = s * a0 + t * b0;
                    r[j] = -q * a0 + p * b0;
                }
            };
            mix(m);
            mix(u);
        }
        if (m[i][c] != 0) ++c;
    }
    std::vector<ZVec> basis;
    for (size_t j = c; j < n; ++j) {
        ZVec col(n);
        for (size_t i = 0; i < n; ++i) col[i] = u[i][j];
        basis.push_back(col);
    }
    return basis;
}

Z lattice_index(const std::vector<ZVec>& gens, size_t n) {
    ZLattice l(n);
    for (auto& g : gens) l.add(g);
    if (l.rank() < n) return 0;
    Z det = 1;
    for (size_t i = 0; i < n; ++i) det *= l.rows()[i][i];
    return abs(det);
}

}  // namespace bluebend
