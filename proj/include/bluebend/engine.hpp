#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bluebend/linalg.hpp"
#include "bluebend/presentation.hpp"

namespace bluebend {

struct ModelQuery {
    // Refute this relation, if set.
    const Relation* goal = nullptr;
    // Only use targets whose order is strictly conic.
    bool conic_only = false;
    // If set, generator i maps to zero exactly when zero_pattern[i], and targets have no zero
    // divisors, no nonzero sums equal to zero, and keep nonzero coefficients nonzero.
    std::optional<std::vector<bool>> zero_pattern;
    size_t assignment_cap = 50000;
};

// Searches small semirings for an interpretation of p satisfying every relation of p and
// violating q.goal. Returns a description of the model found.
std::optional<std::string> find_model(const Presentation& p, const ModelQuery& q);

// Ideal generators of a presentation over a ground with -1, as polynomials over Q.
std::vector<Poly> ideal_generators(const Presentation& p);
Poly to_poly(const Presentation& p, const FormalSum& s);

// Seed for sampled countermodel search on this thread (the default is fixed).
void set_model_seed(unsigned seed);

// Number of states the last derives call on this thread visited.
size_t last_search_states();

}  // namespace bluebend
