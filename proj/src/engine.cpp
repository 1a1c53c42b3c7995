#include "bluebend/engine.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

namespace bluebend {

namespace {

thread_local size_t g_states = 0;

constexpr size_t kStateCap = 60000;

using ESum = std::map<Key, GroundValue>;

struct ERule {
    ESum lhs;
    ESum rhs;
    std::string label;
};

// Bounded bidirectional rewriting over canonical sums. Coefficients of equal monomials are
// merged by the ground addition, which realizes the implicit ground relations. Over F1 the
// coefficient slot holds a multiplicity.
class Search {
public:
    Search(const Presentation& p, const Budget& b) : p_(p), b_(b), norm_(p) {
        f1_ = p.ground.kind == GroundKind::F1;
        idem_ = p.ground.idempotent();
        sum_tag_ = f1_ ? GroundTag::of(GroundKind::NAT) : p.ground;
        all_eq_ = true;
        for (auto& r : p.subaddition) {
            ESum l = canon(r.lhs), rr = canon(r.rhs);
            if (l == rr) continue;
            fwd_.push_back({l, rr, r.str()});
            if (r.mode == RelMode::EQ) {
                fwd_.push_back({rr, l, r.str()});
            } else {
                all_eq_ = false;
            }
        }
        for (auto& r : fwd_) bwd_.push_back({r.rhs, r.lhs, r.label});
    }

    bool all_eq() const { return all_eq_; }
    bool has_rules() const { return !fwd_.empty(); }

    ESum canon(const FormalSum& s) const {
        ESum out;
        for (auto& m : s.terms) add(out, to_term(p_, m), unit());
        return out;
    }

    std::string show(const ESum& s) const {
        if (s.empty()) return "0";
        std::string out;
        for (auto& [k, c] : s) {
            if (!out.empty()) out += " + ";
            Monomial m{f1_ ? GroundValue::one(p_.ground) : c, to_exps(p_, k)};
            std::string t = m.str();
            if (f1_ && c.q != 1) t = c.q.get_str() + "*" + t;
            out += t;
        }
        return out;
    }

    Verdict run(const ESum& from, const ESum& to, const Budget& b) {
        if (from == to) return Verdict::proved({show(from)});
        struct Node {
            ESum s;
            int parent;
        };
        std::vector<Node> nodes[2];
        std::map<ESum, int> index[2];
        std::vector<int> frontier[2];
        nodes[0].push_back({from, -1});
        nodes[1].push_back({to, -1});
        index[0][from] = 0;
        index[1][to] = 0;
        frontier[0] = {0};
        frontier[1] = {0};
        size_t total = 2;
        int meet[2] = {-1, -1};
        bool capped = false;

        for (int level = 0; level < b.max_depth && meet[0] < 0 && !capped; ++level) {
            int side;
            if (frontier[0].empty() && frontier[1].empty()) break;
            if (frontier[0].empty())
                side = 1;
            else if (frontier[1].empty())
                side = 0;
            else
                side = frontier[0].size() <= frontier[1].size() ? 0 : 1;
            const auto& rules = side == 0 ? fwd_ : bwd_;
            const ESum& goal = side == 0 ? to : from;
            std::vector<int> next;
            for (int idx : frontier[side]) {
                ESum cur = nodes[side][idx].s;
                expand(cur, rules, goal, b, [&](ESum&& s2) {
                    if (meet[0] >= 0 || capped) return;
                    if (index[side].count(s2)) return;
                    int id = static_cast<int>(nodes[side].size());
                    index[side].emplace(s2, id);
                    auto other = index[1 - side].find(s2);
                    nodes[side].push_back({std::move(s2), idx});
                    next.push_back(id);
                    if (other != index[1 - side].end()) {
                        meet[side] = id;
                        meet[1 - side] = other->second;
                    }
                    if (++total > kStateCap) capped = true;
                });
                if (meet[0] >= 0 || capped) break;
            }
            frontier[side] = std::move(next);
        }
        g_states = total;
        if (meet[0] >= 0) {
            std::vector<std::string> trace;
            for (int i = meet[0]; i >= 0; i = nodes[0][i].parent) trace.push_back(show(nodes[0][i].s));
            std::reverse(trace.begin(), trace.end());
            for (int i = nodes[1][meet[1]].parent; i >= 0; i = nodes[1][i].parent) trace.push_back(show(nodes[1][i].s));
            return Verdict::proved(std::move(trace));
        }
        if (capped) return Verdict::unknown("visited-state cap of " + std::to_string(kStateCap) + " reached");
        return Verdict::unknown("budget exhausted (depth " + std::to_string(b.max_depth) + ", sum length " +
                                std::to_string(b.max_sum_len) + ", degree " + std::to_string(b.max_degree) + ")");
    }

private:
    GroundValue unit() const { return GroundValue::one(sum_tag_); }

    // Adds coefficient c (sum tag) of the monomial t to s after normalization.
    void add(ESum& s, Term t, const GroundValue& count) const {
        GroundValue mult = count;
        if (f1_) {
            t.coeff = GroundValue::one(p_.ground);
        } else {
            t.coeff = g_mul(t.coeff, count);
        }
        norm_.reduce(t);
        if (t.coeff.is_zero()) return;
        GroundValue v = f1_ ? mult : t.coeff;
        auto it = s.find(t.key);
        if (it == s.end())
            s.emplace(std::move(t.key), v);
        else
            it->second = g_add(it->second, v);
    }

    ESum mul(const Term& m, const ESum& x) const {
        ESum out;
        for (auto& [k, c] : x) {
            Term t{f1_ ? GroundValue::one(p_.ground) : m.coeff, key_add(m.key, k)};
            add(out, t, c);
        }
        return out;
    }

    bool cancellative() const { return !idem_; }

    void subtract(const ESum& s, const ESum& m, std::vector<ESum>& out) const {
        out.clear();
        if (m.empty()) {
            out.push_back(s);
            return;
        }
        ESum base = s;
        std::vector<Key> tied;
        for (auto& [k, c] : m) {
            auto it = s.find(k);
            if (it == s.end()) return;
            if (cancellative()) {
                if (it->second.q < c.q) return;
                Q rest = it->second.q - c.q;
                if (rest == 0)
                    base.erase(k);
                else
                    base[k] = GroundValue::rational(sum_tag_, rest);
            } else {
                if (!g_le(c, it->second)) return;
                if (c == it->second) tied.push_back(k);
            }
        }
        if (tied.empty()) {
            out.push_back(std::move(base));
            return;
        }
        if (tied.size() <= 3) {
            for (unsigned mask = 0; mask < (1u << tied.size()); ++mask) {
                ESum t = base;
                for (size_t i = 0; i < tied.size(); ++i)
                    if (mask & (1u << i)) t.erase(tied[i]);
                out.push_back(std::move(t));
            }
            return;
        }
        out.push_back(base);
        for (auto& k : tied) base.erase(k);
        out.push_back(std::move(base));
    }

    bool within(const ESum& s, const Budget& b) const {
        size_t len = 0;
        for (auto& [k, c] : s) {
            if (key_degree(k) > b.max_degree) return false;
            if (f1_) {
                if (c.q > b.max_sum_len) return false;
                len += c.q.get_num().get_ui();
            } else {
                ++len;
            }
        }
        return len <= static_cast<size_t>(b.max_sum_len);
    }

    void multipliers(const ESum& s, const ERule& r, const ESum& goal, std::vector<Term>& out) const {
        out.clear();
        std::set<std::pair<Key, GroundValue>> seen;
        GroundValue one = GroundValue::one(p_.ground);
        auto push = [&](const Key& k, const GroundValue& c) {
            if (c.is_zero()) return;
            if (seen.emplace(k, c).second) out.push_back(Term{c, k});
        };
        push(Key(norm_.nvars(), 0), one);
        auto from_pair = [&](const Key& tk, const GroundValue& tc, const Key& sk, const GroundValue& sc) {
            Key mk;
            if (divides(sk, tk)) {
                mk = key_sub(tk, sk);
            } else {
                Key inv;
                if (!norm_.invert(sk, inv)) return;
                mk = key_add(tk, inv);
            }
            push(mk, one);
            if (f1_ || !sc.is_unit()) return;
            GroundValue ratio;
            try {
                ratio = g_mul(tc, sc.inverse());
            } catch (const Error&) {
                return;
            }
            push(mk, ratio);
            if (p_.ground.kind == GroundKind::NAT && ratio.q > 1) {
                for (long c = 2; c <= 3 && ratio.q > c; ++c) push(mk, GroundValue::integer(p_.ground, c));
            }
        };
        for (auto& [lk, lc] : r.lhs)
            for (auto& [sk, sc] : s) from_pair(sk, sc, lk, lc);
        for (auto& [rk, rc] : r.rhs)
            for (auto& [gk, gc] : goal) from_pair(gk, gc, rk, rc);
    }

    template <class Emit>
    void expand(const ESum& s, const std::vector<ERule>& rules, const ESum& goal, const Budget& b, Emit&& emit) {
        std::vector<Term> ms;
        std::vector<ESum> rests;
        for (auto& r : rules) {
            multipliers(s, r, goal, ms);
            for (auto& m : ms) {
                ESum ml = mul(m, r.lhs);
                if (ml.empty() && !r.lhs.empty()) continue;
                subtract(s, ml, rests);
                if (rests.empty()) continue;
                ESum mr = mul(m, r.rhs);
                for (auto& rest : rests) {
                    ESum s2 = rest;
                    for (auto& [k, c] : mr) {
                        auto it = s2.find(k);
                        if (it == s2.end())
                            s2.emplace(k, c);
                        else
                            it->second = g_add(it->second, c);
                    }
                    if (s2 == s || !within(s2, b)) continue;
                    emit(std::move(s2));
                }
            }
        }
    }

    const Presentation& p_;
    Budget b_;
    Normalizer norm_;
    bool f1_ = false;
    bool idem_ = false;
    bool all_eq_ = true;
    GroundTag sum_tag_;
    std::vector<ERule> fwd_;
    std::vector<ERule> bwd_;
};

// ---------------------------------------------------------------------------
// Countermodels.

thread_local unsigned g_model_seed = 0x5eed;

template <class V>
struct Target {
    std::string name;
    std::function<V(const V&, const V&)> add;
    std::function<V(const V&, const V&)> mul;
    std::function<bool(const V&, const V&)> le;
    std::function<bool(const V&, const V&)> eq;
    std::function<std::optional<V>(const GroundValue&)> base;
    V zero;
    V one;
    std::vector<V> values;
    std::function<std::string(const V&)> show;
    bool no_zero_divisors = true;
    bool zero_sum_free = true;
    bool conic = true;
};

struct FlatTerm {
    GroundValue coeff;
    Key key;
};

struct FlatRel {
    bool eq;
    std::vector<FlatTerm> lhs;
    std::vector<FlatTerm> rhs;
};

std::vector<FlatTerm> flatten(const Presentation& p, const FormalSum& s) {
    std::vector<FlatTerm> out;
    for (auto& m : s.terms) {
        Term t = to_term(p, m);
        out.push_back({t.coeff, t.key});
    }
    return out;
}

template <class V>
std::optional<std::string> search_target(const Presentation& p, const Target<V>& t, const ModelQuery& q,
                                         const std::vector<FlatRel>& monoid, const std::vector<FlatRel>& sub,
                                         const std::optional<FlatRel>& goal) {
    const size_t n = p.generators.size();
    // Coefficient images; a missing image means the ground does not map into this target.
    std::map<GroundValue, V> coeff;
    auto image = [&](const GroundValue& c) -> bool {
        if (coeff.count(c)) return true;
        auto v = t.base(c);
        if (!v) return false;
        coeff.emplace(c, *v);
        return true;
    };
    auto all_images = [&](const std::vector<FlatRel>& rels) {
        for (auto& r : rels) {
            for (auto& ft : r.lhs)
                if (!image(ft.coeff)) return false;
            for (auto& ft : r.rhs)
                if (!image(ft.coeff)) return false;
        }
        return true;
    };
    if (!all_images(monoid) || !all_images(sub)) return std::nullopt;
    if (goal && !all_images({*goal})) return std::nullopt;
    if (q.zero_pattern)
        for (auto& [c, v] : coeff)
            if (!c.is_zero() && t.eq(v, t.zero)) return std::nullopt;

    std::vector<std::vector<V>> choices(n);
    for (size_t i = 0; i < n; ++i) {
        for (auto& v : t.values) {
            bool is_zero = t.eq(v, t.zero);
            if (q.zero_pattern) {
                if ((*q.zero_pattern)[i] != is_zero) continue;
            }
            choices[i].push_back(v);
        }
        if (choices[i].empty()) return std::nullopt;
    }

    std::vector<V> a(n, t.zero);
    auto power = [&](const V& x, int e) {
        V r = t.one;
        for (int i = 0; i < e; ++i) r = t.mul(r, x);
        return r;
    };
    auto eval = [&](const std::vector<FlatTerm>& s) {
        V acc = t.zero;
        for (auto& ft : s) {
            V term = coeff.at(ft.coeff);
            for (size_t i = 0; i < n; ++i)
                if (ft.key[i]) term = t.mul(term, power(a[i], ft.key[i]));
            acc = t.add(acc, term);
        }
        return acc;
    };
    auto holds = [&](const FlatRel& r) {
        V l = eval(r.lhs), rr = eval(r.rhs);
        if (!t.le(l, rr)) return false;
        return !r.eq || t.le(rr, l);
    };
    auto check = [&]() -> bool {
        for (auto& r : monoid)
            if (!t.eq(eval(r.lhs), eval(r.rhs))) return false;
        for (auto& r : sub)
            if (!holds(r)) return false;
        if (goal) return !holds(*goal);
        return true;
    };
    auto describe = [&]() {
        std::string s = "model in " + t.name + ":";
        if (n == 0) s += " (no generators)";
        for (size_t i = 0; i < n; ++i) s += " " + p.generators[i] + "=" + t.show(a[i]);
        return s;
    };

    double total = 1;
    for (auto& c : choices) total *= static_cast<double>(c.size());
    if (total <= static_cast<double>(q.assignment_cap)) {
        std::vector<size_t> idx(n, 0);
        while (true) {
            for (size_t i = 0; i < n; ++i) a[i] = choices[i][idx[i]];
            if (check()) return describe();
            size_t i = 0;
            while (i < n && ++idx[i] == choices[i].size()) idx[i++] = 0;
            if (i == n) break;
        }
        return std::nullopt;
    }
    std::mt19937 rng(g_model_seed);
    for (size_t trial = 0; trial < q.assignment_cap; ++trial) {
        for (size_t i = 0; i < n; ++i) a[i] = choices[i][rng() % choices[i].size()];
        if (check()) return describe();
    }
    return std::nullopt;
}

Target<GroundValue> ground_target(GroundTag tag, bool pos, std::vector<GroundValue> values,
                                  std::function<std::optional<GroundValue>(const GroundValue&)> base) {
    Target<GroundValue> t;
    t.name = tag.str() + (pos ? "(pos)" : "(alg)");
    t.add = [](const GroundValue& a, const GroundValue& b) { return g_add(a, b); };
    t.mul = [](const GroundValue& a, const GroundValue& b) { return g_mul(a, b); };
    t.eq = [](const GroundValue& a, const GroundValue& b) { return a == b; };
    if (pos)
        t.le = [](const GroundValue& a, const GroundValue& b) { return g_le(a, b); };
    else
        t.le = t.eq;
    t.base = std::move(base);
    t.zero = GroundValue::zero(tag);
    t.one = GroundValue::one(tag);
    t.values = std::move(values);
    t.show = [](const GroundValue& v) { return v.str(); };
    return t;
}

// Finite commutative semirings on {0,1,2}; element 2 is printed as "a".
struct Finite {
    int n;
    int add[3][3];
    int mul[3][3];
    bool idempotent() const { return add[1][1] == 1 && (n < 3 || add[2][2] == 2); }
    bool no_zero_divisors() const {
        for (int i = 1; i < n; ++i)
            for (int j = 1; j < n; ++j)
                if (mul[i][j] == 0) return false;
        return true;
    }
    bool zero_sum_free() const {
        for (int i = 1; i < n; ++i)
            for (int j = 1; j < n; ++j)
                if (add[i][j] == 0) return false;
        return true;
    }
    bool natural_le(int x, int y) const {
        for (int c = 0; c < n; ++c)
            if (add[x][c] == y) return true;
        return false;
    }
    std::string name() const {
        static const char* sym = "01a";
        std::string s = "S" + std::to_string(n) + "[";
        for (int i = 1; i < n; ++i)
            for (int j = i; j < n; ++j) s += std::string(1, sym[i]) + "+" + sym[j] + "=" + sym[add[i][j]] + ",";
        for (int i = 2; i < n; ++i)
            for (int j = i; j < n; ++j) s += std::string(1, sym[i]) + "*" + sym[j] + "=" + sym[mul[i][j]] + ",";
        s.back() = ']';
        return s;
    }
};

const std::vector<Finite>& finite_semirings() {
    static const std::vector<Finite> all = [] {
        std::vector<Finite> out;
        for (int code = 0; code < 81; ++code) {
            Finite f{};
            f.n = 3;
            int c = code;
            int s11 = c % 3, s1a = (c / 3) % 3, saa = (c / 9) % 3, maa = (c / 27) % 3;
            for (int i = 0; i < 3; ++i) {
                f.add[0][i] = f.add[i][0] = i;
                f.mul[0][i] = f.mul[i][0] = 0;
                f.mul[1][i] = f.mul[i][1] = i;
            }
            f.add[1][1] = s11;
            f.add[1][2] = f.add[2][1] = s1a;
            f.add[2][2] = saa;
            f.mul[2][2] = maa;
            bool ok = true;
            for (int x = 0; x < 3 && ok; ++x)
                for (int y = 0; y < 3 && ok; ++y)
                    for (int z = 0; z < 3 && ok; ++z) {
                        ok &= f.add[f.add[x][y]][z] == f.add[x][f.add[y][z]];
                        ok &= f.mul[f.mul[x][y]][z] == f.mul[x][f.mul[y][z]];
                        ok &= f.mul[x][f.add[y][z]] == f.add[f.mul[x][y]][f.mul[x][z]];
                    }
            if (ok) out.push_back(f);
        }
        return out;
    }();
    return all;
}

Target<int> finite_target(const Finite& f, bool pos, std::function<std::optional<int>(const GroundValue&)> base) {
    Target<int> t;
    t.name = f.name() + (pos ? "(pos)" : "(alg)");
    t.add = [f](const int& a, const int& b) { return f.add[a][b]; };
    t.mul = [f](const int& a, const int& b) { return f.mul[a][b]; };
    t.eq = [](const int& a, const int& b) { return a == b; };
    if (pos)
        t.le = [f](const int& a, const int& b) { return f.natural_le(a, b); };
    else
        t.le = t.eq;
    t.base = std::move(base);
    t.zero = 0;
    t.one = 1;
    for (int i = 0; i < f.n; ++i) t.values.push_back(i);
    t.show = [](const int& v) { return std::string(1, "01a"[v]); };
    t.no_zero_divisors = f.no_zero_divisors();
    t.zero_sum_free = f.zero_sum_free();
    t.conic = f.idempotent();
    return t;
}

Target<int> zmod_target(int p) {
    Target<int> t;
    t.name = "Z/" + std::to_string(p);
    t.add = [p](const int& a, const int& b) { return (a + b) % p; };
    t.mul = [p](const int& a, const int& b) { return (a * b) % p; };
    t.eq = [](const int& a, const int& b) { return a == b; };
    t.le = t.eq;
    t.zero = 0;
    t.one = 1;
    for (int i = 0; i < p; ++i) t.values.push_back(i);
    t.show = [](const int& v) { return std::to_string(v); };
    t.zero_sum_free = false;
    t.base = [p](const GroundValue& c) -> std::optional<int> {
        if (c.tag.kind == GroundKind::F1 || c.tag.kind == GroundKind::F1SQ || c.tag.kind == GroundKind::NAT ||
            c.tag.kind == GroundKind::INT || c.tag.kind == GroundKind::RAT) {
            Z den = c.q.get_den();
            if (den % p == 0) return std::nullopt;
            Z num = c.q.get_num();
            Z inv;
            Z pm = p;
            mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pm.get_mpz_t());
            Z r = (num * inv) % pm;
            if (r < 0) r += pm;
            return static_cast<int>(r.get_si());
        }
        return std::nullopt;
    };
    t.conic = false;
    return t;
}

std::vector<GroundValue> rationals(GroundTag tag, std::initializer_list<const char*> xs) {
    std::vector<GroundValue> out;
    for (auto* x : xs) out.push_back(GroundValue::parse(tag, x));
    return out;
}

std::vector<GroundValue> tuple_values(GroundTag tag) {
    std::vector<GroundValue> out{GroundValue::zero(tag), GroundValue::one(tag)};
    if (tag.kind == GroundKind::TROPN) {
        for (int i = 0; i < tag.n && i < 2; ++i)
            for (const char* v : {"2", "1/2"}) {
                std::vector<Q> c(tag.n, Q(1));
                c[i] = Q(v);
                out.push_back(GroundValue::tuple(tag, c));
            }
    } else {
        for (int i = 0; i < tag.n && i < 2; ++i)
            for (int s : {1, -1}) {
                std::vector<Q> c(tag.n, Q(0));
                c[i] = s;
                out.push_back(GroundValue::tuple(tag, c));
            }
    }
    return out;
}

// Ground maps into the built-in targets.
std::optional<GroundValue> to_bool(const GroundValue& c) {
    switch (c.tag.kind) {
        case GroundKind::F1SQ:
        case GroundKind::INT:
        case GroundKind::RAT:
            return std::nullopt;
        default:
            return c.is_zero() ? GroundValue::zero(GroundTag::of(GroundKind::BOOL))
                               : GroundValue::one(GroundTag::of(GroundKind::BOOL));
    }
}

std::function<std::optional<GroundValue>(const GroundValue&)> into(GroundTag target) {
    return [target](const GroundValue& c) -> std::optional<GroundValue> {
        GroundKind k = c.tag.kind;
        if (c.tag == target) return c;
        if (c.is_zero()) return GroundValue::zero(target);
        if (k == GroundKind::F1) return GroundValue::one(target);
        if (k == GroundKind::BOOL) {
            if (target.idempotent()) return GroundValue::one(target);
            return std::nullopt;
        }
        if (k == GroundKind::NAT) {
            if (target.idempotent()) return GroundValue::one(target);
            if (target.kind == GroundKind::RPLUS) return GroundValue::rational(target, c.q);
            return std::nullopt;
        }
        if (k == GroundKind::OTROP && target.kind == GroundKind::TROP) return GroundValue::rational(target, c.q);
        if (target.kind == GroundKind::BOOL) return to_bool(c);
        return std::nullopt;
    };
}

std::optional<int> finite_base(const Finite& f, const GroundValue& c) {
    GroundKind k = c.tag.kind;
    if (c.is_zero()) return 0;
    if (k == GroundKind::F1) return 1;
    if (k == GroundKind::NAT) {
        int acc = 0;
        Z n = c.q.get_num();
        // n*1 is eventually periodic; a short loop is exact for the sizes used.
        for (Z i = 0; i < n && i < 12; ++i) acc = f.add[acc][1];
        if (n >= 12) {
            int a12 = acc;
            int acc2 = a12;
            for (int i = 0; i < 6; ++i) acc2 = f.add[acc2][1];
            if (acc2 != a12) return std::nullopt;
        }
        return acc;
    }
    if (c.tag.with_minus_one()) return std::nullopt;
    // Every other ground maps onto BOOL, which embeds when 1+1=1.
    if (f.add[1][1] == 1) return 1;
    return std::nullopt;
}

template <class V>
bool usable(const Target<V>& t, const ModelQuery& q) {
    if (q.conic_only && !t.conic) return false;
    if (q.zero_pattern && !(t.no_zero_divisors && t.zero_sum_free)) return false;
    return true;
}

}  // namespace

size_t last_search_states() { return g_states; }

void set_model_seed(unsigned seed) { g_model_seed = seed; }

std::optional<std::string> find_model(const Presentation& p, const ModelQuery& q) {
    std::vector<FlatRel> monoid, sub;
    for (auto& [a, b] : p.monoid_relations) {
        Term ta = to_term(p, a), tb = to_term(p, b);
        FlatRel r{true, {}, {}};
        if (!ta.coeff.is_zero()) r.lhs.push_back({ta.coeff, ta.key});
        if (!tb.coeff.is_zero()) r.rhs.push_back({tb.coeff, tb.key});
        monoid.push_back(r);
    }
    bool ring = p.ground.with_minus_one();
    for (auto& r : p.subaddition)
        sub.push_back({r.mode == RelMode::EQ || ring, flatten(p, r.lhs), flatten(p, r.rhs)});
    std::optional<FlatRel> goal;
    if (q.goal) goal = FlatRel{q.goal->mode == RelMode::EQ || ring, flatten(p, q.goal->lhs), flatten(p, q.goal->rhs)};

    auto try_ground = [&](GroundTag tag, std::vector<GroundValue> values) -> std::optional<std::string> {
        for (bool pos : {true, false}) {
            auto t = ground_target(tag, pos, values, into(tag));
            if (tag.kind == GroundKind::NAT || tag.kind == GroundKind::RPLUS) t.conic = true;
            if (!usable(t, q)) continue;
            if (auto m = search_target(p, t, q, monoid, sub, goal)) return m;
        }
        return std::nullopt;
    };

    if (ring) {
        for (int prime : {2, 3, 5}) {
            auto t = zmod_target(prime);
            if (!usable(t, q)) continue;
            if (auto m = search_target(p, t, q, monoid, sub, goal)) return m;
        }
        return std::nullopt;
    }

    GroundKind g = p.ground.kind;
    const GroundTag BOOL = GroundTag::of(GroundKind::BOOL), TROP = GroundTag::of(GroundKind::TROP),
                    RPLUS = GroundTag::of(GroundKind::RPLUS), OTROP = GroundTag::of(GroundKind::OTROP);
    if (auto m = try_ground(BOOL, rationals(BOOL, {"0", "1"}))) return m;
    if (g == GroundKind::F1 || g == GroundKind::BOOL || g == GroundKind::NAT || g == GroundKind::TROP ||
        g == GroundKind::OTROP)
        if (auto m = try_ground(TROP, rationals(TROP, {"0", "1", "2", "1/2", "3", "1/3"}))) return m;
    if (g == GroundKind::F1 || g == GroundKind::NAT || g == GroundKind::RPLUS)
        if (auto m = try_ground(RPLUS, rationals(RPLUS, {"0", "1", "2", "1/2", "3"}))) return m;
    if (g == GroundKind::OTROP)
        if (auto m = try_ground(OTROP, rationals(OTROP, {"0", "1/3", "1/2", "1"}))) return m;
    if (g == GroundKind::TROPN || g == GroundKind::ORDGROUP)
        if (auto m = try_ground(p.ground, tuple_values(p.ground))) return m;
    if (g == GroundKind::F1 || g == GroundKind::BOOL || g == GroundKind::NAT) {
        GroundTag t2 = GroundTag::of(GroundKind::TROPN, 2);
        if (auto m = try_ground(t2, tuple_values(t2))) return m;
    }
    for (auto& f : finite_semirings()) {
        for (bool pos : {true, false}) {
            auto t = finite_target(f, pos, [f](const GroundValue& c) { return finite_base(f, c); });
            if (!usable(t, q)) continue;
            if (auto m = search_target(p, t, q, monoid, sub, goal)) return m;
        }
    }
    return std::nullopt;
}

Poly to_poly(const Presentation& p, const FormalSum& s) {
    Poly f;
    for (auto& m : s.terms) {
        Term t = to_term(p, m);
        poly_add_term(f, t.key, t.coeff.q);
    }
    return f;
}

std::vector<Poly> ideal_generators(const Presentation& p) {
    std::vector<Poly> gens;
    for (auto& r : p.subaddition) {
        Poly f = poly_sub(to_poly(p, r.lhs), to_poly(p, r.rhs));
        if (!f.empty()) gens.push_back(f);
    }
    for (auto& [a, b] : p.monoid_relations) {
        Poly f = poly_sub(to_poly(p, FormalSum{a}), to_poly(p, FormalSum{b}));
        if (!f.empty()) gens.push_back(f);
    }
    return gens;
}

namespace {

std::string poly_str(const Presentation& p, const Poly& f) {
    if (f.empty()) return "0";
    std::string out;
    for (auto& [k, c] : f) {
        if (!out.empty()) out += " + ";
        Monomial m{GroundValue{GroundTag::of(GroundKind::RAT), c, {}}, to_exps(p, k)};
        out += m.str();
    }
    return out;
}

// Z-span of all multiples m*g with deg(m*g) <= d.
bool integer_member(const Presentation& p, const std::vector<Poly>& gens, const Poly& f, int d) {
    const size_t n = p.generators.size();
    std::vector<Key> monos;
    Key cur(n, 0);
    std::function<void(size_t, int)> rec = [&](size_t i, int left) {
        if (i == n) {
            monos.push_back(cur);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            cur[i] = e;
            rec(i + 1, left - e);
        }
        cur[i] = 0;
    };
    std::map<Key, size_t> col;
    auto column = [&](const Key& k) {
        auto it = col.find(k);
        if (it != col.end()) return it->second;
        size_t c = col.size();
        col.emplace(k, c);
        return c;
    };
    std::vector<std::vector<std::pair<size_t, Z>>> rows;
    for (auto& g : gens) {
        int dg = poly_degree(g);
        if (dg > d) continue;
        monos.clear();
        rec(0, d - dg);
        for (auto& m : monos) {
            Poly mg = poly_mul_term(g, m, Q(1));
            std::vector<std::pair<size_t, Z>> row;
            Z l = 1;
            for (auto& [k, c] : mg) l = lcm(l, c.get_den());
            if (l != 1) return false;  // rational generator: no integer lattice
            for (auto& [k, c] : mg) row.emplace_back(column(k), Z(c));
            rows.push_back(row);
        }
    }
    std::vector<std::pair<size_t, Z>> target;
    for (auto& [k, c] : f) {
        if (c.get_den() != 1) return false;
        target.emplace_back(column(k), Z(c));
    }
    if (rows.size() > 4000 || col.size() > 4000) return false;
    ZLattice lat(col.size());
    for (auto& r : rows) {
        ZVec v(col.size(), Z(0));
        for (auto& [c, x] : r) v[c] = x;
        lat.add(v);
    }
    ZVec t(col.size(), Z(0));
    for (auto& [c, x] : target) t[c] = x;
    return lat.contains(t);
}

Verdict derive_ring(const Presentation& p, const Relation& r, const Budget& b) {
    std::vector<Poly> gens = ideal_generators(p);
    Poly f = poly_sub(to_poly(p, r.lhs), to_poly(p, r.rhs));
    if (f.empty()) return Verdict::proved({"both sides agree as polynomials"});
    bool over_q = p.ground.kind == GroundKind::RAT;
    int d = std::max(b.max_degree, poly_degree(f));
    for (auto& g : gens) d = std::max(d, poly_degree(g));
    if (!over_q && integer_member(p, gens, f, std::min(d, b.max_degree + 2)))
        return Verdict::proved({r.lhs.str() + " - (" + r.rhs.str() + ") is an integer combination of the relations"});
    std::vector<Poly> gb;
    bool complete = groebner(gens, gb, 3000, std::max(2 * d, 12));
    Poly rem = poly_reduce(f, gb);
    if (complete && rem.empty() && over_q)
        return Verdict::proved({r.lhs.str() + " - (" + r.rhs.str() + ") reduces to 0 modulo a Groebner basis"});
    if (complete && !rem.empty())
        return Verdict::disproved("normal form modulo the relation ideal is " + poly_str(p, rem));
    ModelQuery q;
    q.goal = &r;
    if (auto m = find_model(p, q)) return Verdict::disproved(*m);
    if (!complete) return Verdict::unknown("Groebner basis computation exceeded its caps");
    return Verdict::unknown("no integer certificate up to degree " + std::to_string(b.max_degree + 2));
}

Verdict one_direction(Search& s, const Presentation& p, const ESum& from, const ESum& to, const Relation& goal,
                      const Budget& b) {
    Budget quick{std::min(b.max_depth, 4), std::min(b.max_sum_len, 6), b.max_degree};
    Verdict v = s.run(from, to, quick);
    if (v.is_proved()) return v;
    ModelQuery q;
    q.goal = &goal;
    if (auto m = find_model(p, q)) return Verdict::disproved(*m);
    if (quick == b) return v;
    return s.run(from, to, b);
}

}  // namespace

Monomial normalize_monomial(const Presentation& p, const Monomial& m) {
    p.validate(m);
    Normalizer norm(p);
    Term t = to_term(p, m);
    norm.reduce(t);
    return to_monomial(p, t);
}

Verdict derives(const Presentation& p, const Relation& r, const Budget& b) {
    p.validate(r);
    if (p.ground.with_minus_one()) return derive_ring(p, r, b);
    std::optional<Search> s;
    try {
        s.emplace(p, b);
    } catch (const Error& e) {
        return Verdict::unknown(e.what());
    }
    ESum l = s->canon(r.lhs), rr = s->canon(r.rhs);
    if (l == rr) return Verdict::proved({s->show(l)});
    if (!s->has_rules())
        return Verdict::disproved("distinct normal forms " + s->show(l) + " and " + s->show(rr) +
                                  " in a presentation without subaddition");
    Relation fwd = Relation::le(r.lhs, r.rhs);
    Verdict v = one_direction(*s, p, l, rr, fwd, b);
    if (r.mode == RelMode::LE || s->all_eq() || !v.is_proved()) {
        if (r.mode == RelMode::EQ && !v.is_proved() && !s->all_eq()) {
            Verdict back = one_direction(*s, p, rr, l, Relation::le(r.rhs, r.lhs), b);
            return conjoin(v, back);
        }
        return v;
    }
    return conjoin(v, one_direction(*s, p, rr, l, Relation::le(r.rhs, r.lhs), b));
}

Verdict equal_in_quotient(const Presentation& p, const Monomial& a, const Monomial& b, const Budget& budget) {
    Verdict ab = derives(p, Relation::le(FormalSum{a}, FormalSum{b}), budget);
    if (ab.is_disproved()) return ab;
    return conjoin(ab, derives(p, Relation::le(FormalSum{b}, FormalSum{a}), budget));
}

Verdict congruence_equiv(const Presentation& p1, const Presentation& p2, const Budget& b) {
    if (p1.ground != p2.ground)
        fail("GeneratorMismatch", "grounds differ: " + p1.ground.str() + " vs " + p2.ground.str());
    std::set<std::string> g1(p1.generators.begin(), p1.generators.end());
    std::set<std::string> g2(p2.generators.begin(), p2.generators.end());
    if (g1 != g2) fail("GeneratorMismatch", "generator sets differ");
    Verdict acc = Verdict::proved();
    auto side = [&](const Presentation& from, const Presentation& to) {
        for (auto& r : from.subaddition) {
            Verdict v = derives(to, r, b);
            if (v.is_proved()) continue;
            v.witness = r.str() + ": " + v.witness;
            acc = conjoin(acc, v);
            if (acc.is_disproved()) return;
        }
        Normalizer norm(to);
        for (auto& [x, y] : from.monoid_relations) {
            Term tx = to_term(to, x), ty = to_term(to, y);
            norm.reduce(tx);
            norm.reduce(ty);
            if (tx.coeff == ty.coeff && (tx.coeff.is_zero() || tx.key == ty.key)) continue;
            Verdict v = derives(to, Relation::eq(FormalSum{x}, FormalSum{y}), b);
            if (v.is_proved()) continue;
            v.witness = x.str() + " = " + y.str() + ": " + v.witness;
            acc = conjoin(acc, v);
            if (acc.is_disproved()) return;
        }
    };
    side(p1, p2);
    if (acc.is_disproved()) return acc;
    side(p2, p1);
    if (acc.is_proved()) acc.trace = {"every generator of each side derives in the other"};
    return acc;
}

}  // namespace bluebend
