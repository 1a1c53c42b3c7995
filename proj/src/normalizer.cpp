#include "bluebend/normalizer.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace bluebend {

int key_degree(const Key& k) { return std::accumulate(k.begin(), k.end(), 0); }

bool deglex_less(const Key& a, const Key& b) {
    int da = key_degree(a), db = key_degree(b);
    if (da != db) return da < db;
    return a < b;
}

bool divides(const Key& a, const Key& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Key key_add(const Key& a, const Key& b) {
    Key r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Key key_sub(const Key& a, const Key& b) {
    Key r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Key key_lcm(const Key& a, const Key& b) {
    Key r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

Key to_key(const Presentation& p, const Exps& e) {
    Key k(p.generators.size(), 0);
    for (auto& [name, ex] : e) {
        int i = p.index_of(name);
        if (i < 0) fail("UnknownGenerator", "generator '" + name + "' is not declared");
        k[i] += ex;
    }
    return k;
}

Exps to_exps(const Presentation& p, const Key& k) {
    Exps e;
    for (size_t i = 0; i < k.size(); ++i)
        if (k[i] != 0) e[p.generators[i]] = k[i];
    return e;
}

Term to_term(const Presentation& p, const Monomial& m) {
    if (m.coeff.is_zero()) return Term{m.coeff, Key(p.generators.size(), 0)};
    return Term{m.coeff, to_key(p, m.exps)};
}

Monomial to_monomial(const Presentation& p, const Term& t) {
    if (t.coeff.is_zero()) return Monomial{t.coeff, {}};
    return Monomial{t.coeff, to_exps(p, t.key)};
}

Normalizer::Normalizer(const Presentation& p, int degree_cap, size_t rule_cap)
    : ground_(p.ground), n_(p.generators.size()), degree_cap_(degree_cap), rule_cap_(rule_cap), inverse_(n_, -1) {
    std::deque<std::pair<Term, Term>> queue;
    for (auto& [a, b] : p.monoid_relations) queue.emplace_back(to_term(p, a), to_term(p, b));
    while (!queue.empty()) {
        auto [a, b] = queue.front();
        queue.pop_front();
        reduce(a);
        reduce(b);
        if (a.coeff == b.coeff && (a.coeff.is_zero() || a.key == b.key)) continue;
        if (!add_equation(a, b)) continue;
        const Rule fresh = rules_.back();
        // Interreduce: rules whose left side contains the new one go back into the queue.
        std::vector<Rule> kept;
        for (size_t i = 0; i + 1 < rules_.size(); ++i) {
            const Rule& r = rules_[i];
            if (divides(fresh.lhs, r.lhs)) {
                Term lhs{GroundValue::one(ground_), r.lhs};
                Term rhs = r.to_zero ? Term{GroundValue::zero(ground_), Key(n_, 0)} : Term{r.coeff, r.rhs};
                queue.emplace_back(lhs, rhs);
            } else {
                kept.push_back(r);
            }
        }
        for (auto& r : kept) {
            bool overlap = false;
            for (size_t i = 0; i < n_; ++i) overlap |= (r.lhs[i] > 0 && fresh.lhs[i] > 0);
            if (!overlap) continue;
            Key l = key_lcm(r.lhs, fresh.lhs);
            auto side = [&](const Rule& q) {
                if (q.to_zero) return Term{GroundValue::zero(ground_), Key(n_, 0)};
                return Term{q.coeff, key_add(key_sub(l, q.lhs), q.rhs)};
            };
            queue.emplace_back(side(r), side(fresh));
        }
        kept.push_back(fresh);
        rules_ = std::move(kept);
    }
    find_inverses();
}

bool Normalizer::add_equation(Term a, Term b) {
    if (a.coeff.is_zero() && b.coeff.is_zero()) return false;
    if (a.coeff.is_zero() || b.coeff.is_zero()) {
        Term& t = a.coeff.is_zero() ? b : a;
        if (!t.coeff.is_unit())
            fail("UnsupportedGround", "relation c*m = 0 with non-unit c=" + t.coeff.str() + " cannot be oriented");
        Rule r;
        r.lhs = t.key;
        r.to_zero = true;
        r.coeff = GroundValue::zero(ground_);
        r.rhs = Key(n_, 0);
        if (key_degree(r.lhs) > degree_cap_ || rules_.size() >= rule_cap_)
            fail("CompletionBudgetExceeded", "monoid completion exceeded its degree or rule bound");
        rules_.push_back(r);
        return true;
    }
    if (a.key == b.key)
        fail("UnsupportedRelation", "monoid relation identifies distinct multiples of one monomial");
    if (deglex_less(a.key, b.key)) std::swap(a, b);
    orient(a, b);
    return true;
}

void Normalizer::orient(const Term& big, const Term& small) {
    if (!big.coeff.is_unit())
        fail("UnsupportedGround", "leading coefficient " + big.coeff.str() + " of a monoid relation is not a unit");
    if (key_degree(big.key) > degree_cap_ || rules_.size() >= rule_cap_)
        fail("CompletionBudgetExceeded", "monoid completion exceeded its degree or rule bound");
    Rule r;
    r.lhs = big.key;
    r.coeff = g_mul(small.coeff, big.coeff.inverse());
    r.rhs = small.key;
    rules_.push_back(r);
}

void Normalizer::reduce(Term& t) const {
    if (t.key.size() != n_) t.key.resize(n_, 0);
    if (t.coeff.is_zero()) {
        std::fill(t.key.begin(), t.key.end(), 0);
        return;
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& r : rules_) {
            if (!divides(r.lhs, t.key)) continue;
            if (r.to_zero) {
                t.coeff = GroundValue::zero(t.coeff.tag);
                std::fill(t.key.begin(), t.key.end(), 0);
                return;
            }
            t.coeff = g_mul(t.coeff, r.coeff);
            if (t.coeff.is_zero()) {
                std::fill(t.key.begin(), t.key.end(), 0);
                return;
            }
            for (size_t i = 0; i < n_; ++i) t.key[i] += r.rhs[i] - r.lhs[i];
            changed = true;
            break;
        }
    }
}

void Normalizer::find_inverses() {
    for (auto& r : rules_) {
        if (r.to_zero || key_degree(r.rhs) != 0 || !r.coeff.is_one()) continue;
        std::vector<int> support;
        for (size_t i = 0; i < n_; ++i)
            if (r.lhs[i] != 0) support.push_back(static_cast<int>(i));
        if (support.size() == 2 && r.lhs[support[0]] == 1 && r.lhs[support[1]] == 1) {
            inverse_[support[0]] = support[1];
            inverse_[support[1]] = support[0];
        }
    }
}

bool Normalizer::invert(const Key& k, Key& out) const {
    out.assign(n_, 0);
    for (size_t i = 0; i < n_; ++i) {
        if (k[i] == 0) continue;
        if (inverse_[i] < 0) return false;
        out[inverse_[i]] += k[i];
    }
    return true;
}

}  // namespace bluebend
