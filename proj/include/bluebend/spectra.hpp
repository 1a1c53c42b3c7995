#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bluebend/presentation.hpp"

namespace bluebend {

struct PrimeKIdeal {
    std::vector<std::string> generator_subset;  // sorted
    std::vector<std::string> closure;           // "<zero>" and the ideal's normalized monomials of degree <= 2
    bool tentative = false;
    bool operator==(const PrimeKIdeal& o) const { return generator_subset == o.generator_subset; }
};

// Primes generated by subsets of the generators, ordered by subset size then lexicographically.
std::vector<PrimeKIdeal> prime_k_ideals(const Presentation& p, const Budget& b);
inline std::vector<PrimeKIdeal> prime_k_ideals(const Presentation& p) { return prime_k_ideals(p, p.budget_default); }

Presentation globalize(const Presentation& p, const Budget& b);
inline Presentation globalize(const Presentation& p) { return globalize(p, p.budget_default); }

struct KatoFan {
    std::vector<std::vector<std::string>> points;
    // Principal open U_h, keyed by h ("1" for the whole fan), with its sharp section monoid.
    std::vector<std::pair<std::string, Presentation>> sections;
};

KatoFan kato_fan(const Presentation& m);

bool extended_cone_membership(const Presentation& m, const std::map<std::string, GroundValue>& point);

struct KatoRecovery {
    KatoFan fan;
    Verdict iso;
};

KatoRecovery recover_kato_from_bend(const Presentation& p, const Budget& b);
inline KatoRecovery recover_kato_from_bend(const Presentation& p) { return recover_kato_from_bend(p, p.budget_default); }

}  // namespace bluebend
