#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bluebend/ground.hpp"

namespace bluebend {

using Exps = std::map<std::string, int>;

struct Monomial {
    GroundValue coeff;
    Exps exps;  // zero exponents are never stored

    static Monomial constant(const GroundValue& c);
    static Monomial var(GroundTag t, const std::string& name, int e = 1);

    bool is_zero() const { return coeff.is_zero(); }
    int degree() const;
    std::string str() const;

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.coeff == b.coeff && a.exps == b.exps; }
    friend bool operator<(const Monomial& a, const Monomial& b);
};

Monomial operator*(const Monomial& a, const Monomial& b);

struct FormalSum {
    std::vector<Monomial> terms;

    FormalSum() = default;
    FormalSum(std::initializer_list<Monomial> ms);
    explicit FormalSum(std::vector<Monomial> ms);

    bool empty() const { return terms.empty(); }
    size_t size() const { return terms.size(); }
    std::string str() const;

    friend bool operator==(const FormalSum&, const FormalSum&) = default;
};

FormalSum operator+(const FormalSum& a, const FormalSum& b);
FormalSum operator*(const Monomial& m, const FormalSum& s);
FormalSum operator*(const FormalSum& a, const FormalSum& b);

enum class RelMode { LE, EQ };

struct Relation {
    RelMode mode = RelMode::LE;
    FormalSum lhs;
    FormalSum rhs;

    static Relation le(FormalSum l, FormalSum r) { return Relation{RelMode::LE, std::move(l), std::move(r)}; }
    static Relation eq(FormalSum l, FormalSum r) { return Relation{RelMode::EQ, std::move(l), std::move(r)}; }

    // At most one term on the left.
    bool left_monomial() const { return lhs.size() <= 1; }
    Relation flipped() const { return Relation{mode, rhs, lhs}; }
    std::string str() const;

    friend bool operator==(const Relation&, const Relation&) = default;
};

struct Budget {
    int max_depth = 8;
    int max_sum_len = 12;
    int max_degree = 8;

    friend bool operator==(const Budget&, const Budget&) = default;
};

struct Presentation {
    GroundTag ground;
    std::vector<std::string> generators;
    std::vector<std::pair<Monomial, Monomial>> monoid_relations;
    std::vector<Relation> subaddition;
    Budget budget_default;

    static Presentation free(GroundTag ground, std::vector<std::string> generators = {});

    int index_of(const std::string& name) const;  // -1 if absent
    bool has_generator(const std::string& name) const { return index_of(name) >= 0; }

    GroundValue c(long v) const { return GroundValue::integer(ground, v); }
    Monomial one() const { return Monomial::constant(GroundValue::one(ground)); }
    Monomial zero() const { return Monomial::constant(GroundValue::zero(ground)); }
    Monomial gen(const std::string& name, int e = 1) const;

    // Throws on unknown generators, wrong coefficient tags or duplicate names.
    void validate() const;
    void validate(const Monomial& m) const;
    void validate(const FormalSum& s) const;
    void validate(const Relation& r) const;
};

enum class Outcome { Proved, Disproved, Unknown };

std::string outcome_name(Outcome o);

struct Verdict {
    Outcome outcome = Outcome::Unknown;
    std::vector<std::string> trace;  // rewrite steps for Proved
    std::string witness;             // countermodel or reason for Disproved, exhausted bound for Unknown

    static Verdict proved(std::vector<std::string> trace = {}) { return {Outcome::Proved, std::move(trace), {}}; }
    static Verdict disproved(std::string witness) { return {Outcome::Disproved, {}, std::move(witness)}; }
    static Verdict unknown(std::string why) { return {Outcome::Unknown, {}, std::move(why)}; }

    bool is_proved() const { return outcome == Outcome::Proved; }
    bool is_disproved() const { return outcome == Outcome::Disproved; }
    bool is_unknown() const { return outcome == Outcome::Unknown; }
};

// Pessimistic conjunction: any Disproved wins, then any Unknown.
Verdict conjoin(const Verdict& a, const Verdict& b);

// Text syntax: terms joined by '+' or '-', each term a product like 2*x^2*y or 1/3*x.
// TROPN coefficients are written (a,b), ORDGROUP coefficients [e1,e2].
Monomial parse_monomial(const Presentation& p, const std::string& text);
FormalSum parse_sum(const Presentation& p, const std::string& text);
// "lhs <= rhs" or "lhs == rhs"; "0" denotes the empty sum.
Relation parse_relation(const Presentation& p, const std::string& text);

Monomial normalize_monomial(const Presentation& p, const Monomial& m);

Verdict derives(const Presentation& p, const Relation& r, const Budget& b);
inline Verdict derives(const Presentation& p, const Relation& r) { return derives(p, r, p.budget_default); }

Verdict equal_in_quotient(const Presentation& p, const Monomial& a, const Monomial& b, const Budget& budget);
inline Verdict equal_in_quotient(const Presentation& p, const Monomial& a, const Monomial& b) {
    return equal_in_quotient(p, a, b, p.budget_default);
}

// Both presentations must share ground and generator names (up to order).
Verdict congruence_equiv(const Presentation& p1, const Presentation& p2, const Budget& b);
inline Verdict congruence_equiv(const Presentation& p1, const Presentation& p2) {
    return congruence_equiv(p1, p2, p1.budget_default);
}

}  // namespace bluebend
