#pragma once

#include <vector>

#include "bluebend/presentation.hpp"

namespace bluebend {

// Dense exponent vector, indexed like Presentation::generators.
using Key = std::vector<int>;

int key_degree(const Key& k);
// Degree first, then lexicographic with the first generator largest.
bool deglex_less(const Key& a, const Key& b);
bool divides(const Key& a, const Key& b);
Key key_add(const Key& a, const Key& b);
Key key_sub(const Key& a, const Key& b);
Key key_lcm(const Key& a, const Key& b);

struct Term {
    GroundValue coeff;
    Key key;
};

Key to_key(const Presentation& p, const Exps& e);
Exps to_exps(const Presentation& p, const Key& k);
Term to_term(const Presentation& p, const Monomial& m);
Monomial to_monomial(const Presentation& p, const Term& t);

// Completed rewrite system for the monoid relations of a presentation.
// Rules have the shape x^lhs -> c * x^rhs or x^lhs -> 0 with lhs > rhs in deglex.
class Normalizer {
public:
    struct Rule {
        Key lhs;
        bool to_zero = false;
        GroundValue coeff;
        Key rhs;
    };

    explicit Normalizer(const Presentation& p, int degree_cap = 24, size_t rule_cap = 400);

    // Rewrites t in place to its normal form; a killed term gets a zero coefficient and empty-key form.
    void reduce(Term& t) const;
    Term normal(Term t) const {
        reduce(t);
        return t;
    }
    const std::vector<Rule>& rules() const { return rules_; }
    size_t nvars() const { return n_; }

    // Index of a generator y with x*y -> 1 among the rules, or -1.
    int inverse_of(int gen) const { return inverse_[gen]; }
    // Key of the inverse monomial if every generator in k has a recorded inverse.
    bool invert(const Key& k, Key& out) const;

private:
    bool add_equation(Term a, Term b);
    void orient(const Term& big, const Term& small);
    void find_inverses();

    GroundTag ground_;
    size_t n_;
    int degree_cap_;
    size_t rule_cap_;
    std::vector<Rule> rules_;
    std::vector<int> inverse_;
};

}  // namespace bluebend
