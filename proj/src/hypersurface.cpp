#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <set>

#include "bluebend/engine.hpp"
#include "bluebend/normalizer.hpp"
#include "bluebend/trop.hpp"

namespace bluebend {

namespace {

using QVec = std::vector<Q>;

struct TermData {
    ZVec e;
    Q lam;
};

Q dot(const ZVec& a, const QVec& b) {
    Q s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += Q(a[i]) * b[i];
    return s;
}

ZVec zsub(const ZVec& a, const ZVec& b) {
    ZVec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

// Primitive integer vector with the same direction.
ZVec direction(const QVec& v) {
    Z l = 1;
    for (auto& x : v) l = lcm(l, x.get_den());
    ZVec out;
    for (auto& x : v) out.push_back(Z(x * l));
    Z g = vec_gcd(out);
    if (g != 0)
        for (auto& x : out) x /= g;
    return out;
}

QVec toq(const ZVec& v) { return QVec(v.begin(), v.end()); }

Q phi(const TermData& t, const QVec& u) { return dot(t.e, u) + t.lam; }

std::vector<int> tie_set(const std::vector<TermData>& terms, const QVec& u) {
    Q best = phi(terms[0], u);
    for (auto& t : terms) best = std::max(best, phi(t, u));
    std::vector<int> out;
    for (size_t i = 0; i < terms.size(); ++i)
        if (phi(terms[i], u) == best) out.push_back(static_cast<int>(i));
    return out;
}

Z lattice_length(const std::vector<TermData>& terms, const std::vector<int>& tie) {
    Z best = 0;
    for (size_t a = 0; a < tie.size(); ++a)
        for (size_t b = a + 1; b < tie.size(); ++b) best = std::max(best, vec_gcd(zsub(terms[tie[a]].e, terms[tie[b]].e)));
    return best;
}

int affine_rank(const std::vector<TermData>& terms, const std::vector<int>& idx) {
    QMatrix m;
    for (size_t i = 1; i < idx.size(); ++i) m.push_back(toq(zsub(terms[idx[i]].e, terms[idx[0]].e)));
    if (m.empty()) return 0;
    return static_cast<int>(rref(m).size());
}

struct Affine {
    QVec u0;
    std::vector<ZVec> basis;
};

// Points where all terms in eq share the value of eq[0].
std::optional<Affine> tie_space(const std::vector<TermData>& terms, const std::vector<int>& eq, size_t n) {
    QMatrix aug, rows;
    const TermData& r = terms[eq[0]];
    for (size_t i = 1; i < eq.size(); ++i) {
        const TermData& t = terms[eq[i]];
        QVec row = toq(zsub(r.e, t.e));
        rows.push_back(row);
        row.push_back(t.lam - r.lam);
        aug.push_back(row);
    }
    Affine out;
    out.u0.assign(n, Q(0));
    if (!aug.empty()) {
        std::vector<int> piv = rref(aug);
        for (size_t i = 0; i < piv.size(); ++i) {
            if (piv[i] == static_cast<int>(n)) return std::nullopt;
            out.u0[piv[i]] = aug[i][n];
        }
    }
    out.basis = integer_kernel(rows, n);
    return out;
}

struct Region {
    std::vector<QVec> verts;  // parameter space
    std::vector<QVec> rays;
    bool full = false;
};

struct Constraint {
    QVec a;
    Q c;  // a . s >= c
};

Region region_1d(const std::vector<Constraint>& cs) {
    Region r;
    std::optional<Q> lo, hi;
    for (auto& k : cs) {
        const Q& a = k.a[0];
        if (a == 0) {
            if (k.c > 0) return r;
            continue;
        }
        Q b = k.c / a;
        if (a > 0) {
            if (!lo || b > *lo) lo = b;
        } else {
            if (!hi || b < *hi) hi = b;
        }
    }
    if (lo && hi && !(*lo < *hi)) return r;
    r.full = true;
    if (lo) r.verts.push_back({*lo});
    if (hi) r.verts.push_back({*hi});
    if (!hi) r.rays.push_back({Q(1)});
    if (!lo) r.rays.push_back({Q(-1)});
    if (!lo && !hi) r.verts.push_back({Q(0)});
    return r;
}

bool satisfies(const std::vector<Constraint>& cs, const QVec& s) {
    for (auto& k : cs) {
        Q v = 0;
        for (size_t i = 0; i < s.size(); ++i) v += k.a[i] * s[i];
        if (v < k.c) return false;
    }
    return true;
}

bool in_cone(const std::vector<Constraint>& cs, const QVec& d) {
    for (auto& k : cs) {
        Q v = 0;
        for (size_t i = 0; i < d.size(); ++i) v += k.a[i] * d[i];
        if (v < 0) return false;
    }
    return true;
}

void push_unique(std::vector<QVec>& xs, const QVec& x) {
    if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
}

QVec prim2(const QVec& d) {
    ZVec z = direction(d);
    return toq(z);
}

Region region_2d(std::vector<Constraint> cs) {
    Region r;
    std::vector<Constraint> live;
    for (auto& k : cs) {
        if (k.a[0] == 0 && k.a[1] == 0) {
            if (k.c > 0) return r;
            continue;
        }
        live.push_back(k);
    }
    cs = live;
    for (size_t i = 0; i < cs.size(); ++i)
        for (size_t j = i + 1; j < cs.size(); ++j) {
            Q det = cs[i].a[0] * cs[j].a[1] - cs[i].a[1] * cs[j].a[0];
            if (det == 0) continue;
            QVec s{(cs[i].c * cs[j].a[1] - cs[j].c * cs[i].a[1]) / det,
                   (cs[i].a[0] * cs[j].c - cs[j].a[0] * cs[i].c) / det};
            if (satisfies(cs, s)) push_unique(r.verts, s);
        }
    std::vector<QVec> cand;
    if (cs.empty()) cand = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (auto& k : cs) {
        for (QVec d : {QVec{-k.a[1], k.a[0]}, QVec{k.a[1], -k.a[0]}, QVec{k.a[0], k.a[1]}, QVec{-k.a[0], -k.a[1]}})
            if (in_cone(cs, d)) push_unique(cand, prim2(d));
    }
    std::vector<QVec> lineal;
    for (auto& d : cand) {
        QVec m{-d[0], -d[1]};
        if (std::find(cand.begin(), cand.end(), m) != cand.end()) lineal.push_back(d);
    }
    if (lineal.empty()) {
        // Pointed cone: extreme rays lie on a constraint boundary.
        for (auto& d : cand) {
            bool boundary = false;
            for (auto& k : cs) boundary |= k.a[0] * d[0] + k.a[1] * d[1] == 0;
            if (boundary) r.rays.push_back(d);
        }
    } else {
        r.rays = lineal;
        for (auto& d : cand) {
            bool in_line = false;
            for (auto& l : lineal) in_line |= d[0] * l[1] - d[1] * l[0] == 0;
            if (!in_line) push_unique(r.rays, d);
        }
        if (lineal.size() == 4) r.rays = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    }
    if (r.verts.empty()) {
        // No vertex: the region is a half-plane, a strip or the plane. Find a feasible anchor.
        QVec anchor{0, 0};
        if (!cs.empty()) {
            const QVec& a = cs[0].a;
            Q norm = a[0] * a[0] + a[1] * a[1];
            // Non-parallel constraints would leave a vertex if the region were nonempty.
            for (auto& k : cs)
                if (k.a[0] * a[1] - k.a[1] * a[0] != 0) return r;
            std::optional<Q> lo, hi;
            for (auto& k : cs) {
                Q mu = (k.a[0] * a[0] + k.a[1] * a[1]) / norm;
                Q b = k.c / mu;
                if (mu > 0) {
                    if (!lo || b > *lo) lo = b;
                } else {
                    if (!hi || b < *hi) hi = b;
                }
            }
            if (lo && hi && !(*lo < *hi)) return r;
            Q t = lo ? *lo : (hi ? *hi : Q(0));
            anchor = {t * a[0] / norm, t * a[1] / norm};
            if (!satisfies(cs, anchor)) return r;
        }
        r.verts.push_back(anchor);
    }
    // Full dimensional iff the vertices and rays span the plane.
    QMatrix span;
    for (size_t i = 1; i < r.verts.size(); ++i) span.push_back({r.verts[i][0] - r.verts[0][0], r.verts[i][1] - r.verts[0][1]});
    for (auto& d : r.rays) span.push_back(d);
    r.full = !span.empty() && rref(span).size() == 2;
    return r;
}

QVec lift(const Affine& a, const QVec& s) {
    QVec u = a.u0;
    for (size_t j = 0; j < s.size(); ++j)
        for (size_t i = 0; i < u.size(); ++i) u[i] += s[j] * Q(a.basis[j][i]);
    return u;
}

QVec lift_dir(const Affine& a, const QVec& d) {
    QVec u(a.u0.size(), Q(0));
    for (size_t j = 0; j < d.size(); ++j)
        for (size_t i = 0; i < u.size(); ++i) u[i] += d[j] * Q(a.basis[j][i]);
    return u;
}

std::vector<Constraint> constraints(const std::vector<TermData>& terms, int ref, const Affine& a) {
    std::vector<Constraint> cs;
    for (size_t k = 0; k < terms.size(); ++k) {
        if (static_cast<int>(k) == ref) continue;
        ZVec diff = zsub(terms[ref].e, terms[k].e);
        Constraint c;
        for (auto& b : a.basis) c.a.push_back(Q(dot(diff, toq(b))));
        c.c = -(dot(diff, a.u0) + terms[ref].lam - terms[k].lam);
        cs.push_back(c);
    }
    return cs;
}

Region solve(const std::vector<Constraint>& cs, size_t m) {
    if (m == 1) return region_1d(cs);
    if (m == 2) return region_2d(cs);
    Region r;
    if (m == 0 && satisfies(cs, {})) {
        r.full = true;
        r.verts.push_back({});
    }
    return r;
}

QVec interior(const Region& r, size_t m) {
    QVec s(m, Q(0));
    for (auto& v : r.verts)
        for (size_t i = 0; i < m; ++i) s[i] += v[i] / Q(static_cast<long>(r.verts.size()));
    for (auto& d : r.rays)
        for (size_t i = 0; i < m; ++i) s[i] += d[i];
    return s;
}

Q log_abs(const GroundValue& c, const BaseValuation& v) {
    switch (v.kind) {
        case BaseValuation::Kind::trivial: return 0;
        case BaseValuation::Kind::p_adic: return Q(-padic_order(c.q, v.p));
        default: fail("RegimeUnsupported", "hypersurfaces need a trivial or p-adic base, got " + v.str());
    }
}

}  // namespace

PolyhedralComplex tropical_hypersurface(const Presentation& ring, const FormalSum& f, const BaseValuation& v) {
    if (!ring.ground.with_minus_one()) fail("UnsupportedGround", ring.ground.str() + " is not a ring ground");
    ring.validate(f);
    const size_t n = ring.generators.size();
    if (n == 0 || n > 3) fail("DimensionUnsupported", "hypersurfaces need 1 to 3 variables, got " + std::to_string(n));
    Poly poly = to_poly(ring, f);
    if (poly.size() < 2) fail("TooFewTerms", "a tropical hypersurface needs at least two terms");
    std::vector<TermData> terms;
    for (auto& [k, c] : poly) {
        TermData t;
        for (int e : k) t.e.push_back(Z(e));
        t.lam = log_abs(GroundValue::rational(ring.ground, c), v);
        terms.push_back(t);
    }

    PolyhedralComplex out;
    out.ambient_dim = static_cast<int>(n);
    auto vertex_index = [&](const QVec& p) {
        auto it = std::find(out.vertices.begin(), out.vertices.end(), p);
        if (it != out.vertices.end()) return static_cast<int>(it - out.vertices.begin());
        out.vertices.push_back(p);
        return static_cast<int>(out.vertices.size() - 1);
    };
    auto ray_index = [&](const ZVec& d) {
        auto it = std::find(out.rays.begin(), out.rays.end(), d);
        if (it != out.rays.end()) return static_cast<int>(it - out.rays.begin());
        out.rays.push_back(d);
        return static_cast<int>(out.rays.size() - 1);
    };

    std::vector<std::vector<int>> cell_ties;
    std::set<std::vector<int>> seen;
    for (size_t i = 0; i < terms.size(); ++i)
        for (size_t j = i + 1; j < terms.size(); ++j) {
            auto a = tie_space(terms, {static_cast<int>(i), static_cast<int>(j)}, n);
            if (!a || a->basis.size() + 1 != n) continue;
            Region r = solve(constraints(terms, static_cast<int>(i), *a), n - 1);
            if (!r.full) continue;
            std::vector<int> tie = tie_set(terms, lift(*a, interior(r, n - 1)));
            if (!seen.insert(tie).second) continue;
            Cell c;
            for (auto& s : r.verts) c.vertices.push_back(vertex_index(lift(*a, s)));
            for (auto& d : r.rays) c.rays.push_back(ray_index(direction(lift_dir(*a, d))));
            c.weight = static_cast<int>(lattice_length(terms, tie).get_si());
            out.cells.push_back(c);
            cell_ties.push_back(tie);
        }

    // Ridges come from affinely independent triples of tied terms.
    if (n >= 2) {
        std::set<std::vector<int>> ridge_seen;
        for (size_t i = 0; i < terms.size(); ++i)
            for (size_t j = i + 1; j < terms.size(); ++j)
                for (size_t k = j + 1; k < terms.size(); ++k) {
                    std::vector<int> tri{static_cast<int>(i), static_cast<int>(j), static_cast<int>(k)};
                    if (affine_rank(terms, tri) != 2) continue;
                    auto a = tie_space(terms, tri, n);
                    if (!a || a->basis.size() + 2 != n) continue;
                    Region r = solve(constraints(terms, static_cast<int>(i), *a), n - 2);
                    if (!r.full) continue;
                    QVec pt = lift(*a, interior(r, n - 2));
                    std::vector<int> tie = tie_set(terms, pt);
                    if (!ridge_seen.insert(tie).second) continue;
                    Ridge ridge;
                    ridge.point = pt;
                    if (n == 3) ridge.direction = a->basis[0];
                    for (size_t c = 0; c < out.cells.size(); ++c) {
                        const auto& ct = cell_ties[c];
                        if (!std::includes(tie.begin(), tie.end(), ct.begin(), ct.end())) continue;
                        // Lattice of the cell's tie hyperplane, split along the ridge direction.
                        QMatrix row{toq(zsub(terms[ct[0]].e, terms[ct.back()].e))};
                        std::vector<ZVec> basis = integer_kernel(row, n);
                        ZVec u;
                        if (n == 2) {
                            u = basis[0];
                        } else {
                            // Coordinates of the ridge direction in the basis, then a unimodular complement.
                            QMatrix sys;
                            for (size_t t = 0; t < n; ++t) sys.push_back({Q(basis[0][t]), Q(basis[1][t]), Q(ridge.direction[t])});
                            rref(sys);
                            Z alpha = Z(sys[0][2]), beta = Z(sys[1][2]);
                            Z g, s, t;
                            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), alpha.get_mpz_t(), beta.get_mpz_t());
                            u.resize(n);
                            for (size_t q = 0; q < n; ++q) u[q] = -t * basis[0][q] + s * basis[1][q];
                        }
                        // Orient into the cell: the cell's terms beat the rest of the ridge's tie set.
                        for (int other : tie) {
                            if (std::find(ct.begin(), ct.end(), other) != ct.end()) continue;
                            Z sgn = 0;
                            for (size_t q = 0; q < n; ++q) sgn += (terms[ct[0]].e[q] - terms[other].e[q]) * u[q];
                            if (sgn < 0)
                                for (auto& x : u) x = -x;
                            break;
                        }
                        ridge.sides.push_back({static_cast<int>(c), u});
                    }
                    out.ridges.push_back(ridge);
                }
    }
    return out;
}

std::vector<std::string> balancing_defects(const PolyhedralComplex& c) {
    std::vector<std::string> out;
    const size_t n = static_cast<size_t>(c.ambient_dim);
    for (auto& r : c.ridges) {
        ZVec sum(n, Z(0));
        for (auto& [cell, u] : r.sides)
            for (size_t i = 0; i < n; ++i) sum[i] += c.cells[cell].weight * u[i];
        bool ok;
        if (r.direction.empty()) {
            ok = vec_gcd(sum) == 0;
        } else {
            ZVec x{sum[1] * r.direction[2] - sum[2] * r.direction[1], sum[2] * r.direction[0] - sum[0] * r.direction[2],
                   sum[0] * r.direction[1] - sum[1] * r.direction[0]};
            ok = vec_gcd(x) == 0;
        }
        if (!ok) {
            std::string pt;
            for (auto& q : r.point) pt += (pt.empty() ? "" : ",") + q.get_str();
            out.push_back("unbalanced at (" + pt + ")");
        }
    }
    return out;
}

namespace {

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    std::string s = buf;
    if (s == "-0.000") s = "0.000";
    return s;
}

}  // namespace

std::string hypersurface_svg(const PolyhedralComplex& c) {
    if (c.ambient_dim != 2) fail("DimensionUnsupported", "SVG output is for plane curves");
    double lo = -3, hi = 3;
    for (auto& v : c.vertices)
        for (auto& x : v) {
            lo = std::min(lo, x.get_d() - 2);
            hi = std::max(hi, x.get_d() + 2);
        }
    const double size = 600, pad = 20, scale = (size - 2 * pad) / (hi - lo);
    auto px = [&](double x) { return pad + (x - lo) * scale; };
    auto py = [&](double y) { return size - pad - (y - lo) * scale; };
    std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"0 0 600 600\">\n";
    s += "<rect width=\"600\" height=\"600\" fill=\"white\"/>\n";
    s += "<line x1=\"" + fmt(px(lo)) + "\" y1=\"" + fmt(py(0)) + "\" x2=\"" + fmt(px(hi)) + "\" y2=\"" + fmt(py(0)) +
         "\" stroke=\"#bbb\" stroke-width=\"1\"/>\n";
    s += "<line x1=\"" + fmt(px(0)) + "\" y1=\"" + fmt(py(lo)) + "\" x2=\"" + fmt(px(0)) + "\" y2=\"" + fmt(py(hi)) +
         "\" stroke=\"#bbb\" stroke-width=\"1\"/>\n";
    const double reach = 2 * (hi - lo);
    for (auto& cell : c.cells) {
        std::vector<std::pair<double, double>> pts;
        for (int v : cell.vertices) pts.push_back({c.vertices[v][0].get_d(), c.vertices[v][1].get_d()});
        std::vector<std::array<double, 4>> segs;
        if (pts.size() == 2) segs.push_back({pts[0].first, pts[0].second, pts[1].first, pts[1].second});
        for (int r : cell.rays) {
            double dx = c.rays[r][0].get_d(), dy = c.rays[r][1].get_d();
            double len = std::sqrt(dx * dx + dy * dy);
            segs.push_back({pts[0].first, pts[0].second, pts[0].first + reach * dx / len, pts[0].second + reach * dy / len});
        }
        for (auto& g : segs) {
            s += "<line x1=\"" + fmt(px(g[0])) + "\" y1=\"" + fmt(py(g[1])) + "\" x2=\"" + fmt(px(g[2])) + "\" y2=\"" +
                 fmt(py(g[3])) + "\" stroke=\"black\" stroke-width=\"2\"/>\n";
        }
        if (!segs.empty()) {
            auto& g = segs[0];
            double mx = pts.size() == 2 ? (g[0] + g[2]) / 2 : g[0] + (g[2] - g[0]) * 0.25;
            double my = pts.size() == 2 ? (g[1] + g[3]) / 2 : g[1] + (g[3] - g[1]) * 0.25;
            s += "<text x=\"" + fmt(px(mx) + 6) + "\" y=\"" + fmt(py(my) - 6) +
                 "\" font-family=\"monospace\" font-size=\"14\">" + std::to_string(cell.weight) + "</text>\n";
        }
    }
    for (auto& v : c.vertices)
        s += "<circle cx=\"" + fmt(px(v[0].get_d())) + "\" cy=\"" + fmt(py(v[1].get_d())) + "\" r=\"3\" fill=\"black\"/>\n";
    s += "</svg>\n";
    return s;
}

}  // namespace bluebend
