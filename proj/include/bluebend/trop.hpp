#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bluebend/linalg.hpp"
#include "bluebend/presentation.hpp"

namespace bluebend {

struct BendPresentation {
    Presentation underlying;  // over the target ground
    Presentation origin;
    BaseValuation base;
    std::vector<std::string> embedding_gens;
};

BendPresentation bend(const Presentation& p, const BaseValuation& v, GroundTag target);

// Base change of the left-monomial part of p to the target with 0 <= 1.
Presentation trop_tp(const Presentation& p, const BaseValuation& v, GroundTag target);

bool point_in_trop(const BendPresentation& bp, const std::map<std::string, GroundValue>& point);

// Minimal-support elements of the degree <= degree_bound part of the ideal, as primitive integer vectors.
std::vector<Poly> ideal_circuits(const std::vector<Poly>& gens, size_t nvars, int degree_bound);

Presentation gg_congruence(GroundTag ground, const std::vector<std::string>& generators,
                           const std::vector<FormalSum>& ideal_gens, const BaseValuation& v, GroundTag target,
                           int degree_bound);
Presentation gg_congruence(const Presentation& ring, const BaseValuation& v, GroundTag target, int degree_bound);

struct Cell {
    std::vector<int> vertices;
    std::vector<int> rays;
    int weight = 1;
};

// Codimension-one face of the maximal cells: a vertex in the plane, an edge in space.
struct Ridge {
    std::vector<Q> point;
    ZVec direction;                         // empty for a vertex
    std::vector<std::pair<int, ZVec>> sides;  // adjacent cell and primitive normal pointing into it
};

struct PolyhedralComplex {
    int ambient_dim = 0;
    std::vector<std::vector<Q>> vertices;
    std::vector<ZVec> rays;  // primitive integer directions
    std::vector<Cell> cells;
    std::vector<Ridge> ridges;
};

// Tropical hypersurface of f in log coordinates u = log_p w (p from the base valuation; any base for trivial).
PolyhedralComplex tropical_hypersurface(const Presentation& ring, const FormalSum& f, const BaseValuation& v);

// Weighted sum of the side normals at every ridge; returns one message per unbalanced ridge.
std::vector<std::string> balancing_defects(const PolyhedralComplex& c);

std::string hypersurface_svg(const PolyhedralComplex& c);

// Tropical initial form: the terms reaching the maximum at w.
FormalSum mr_initial_form(const Presentation& trop, const FormalSum& f, const std::map<std::string, GroundValue>& w);

int mr_weight(const BendPresentation& bp, const std::map<std::string, GroundValue>& w, int degree_bound);

// Macpherson analytification fragment.
struct KDesignation {
    // Coefficients allowed in spans (besides 1); for a ring ground these are ground scalars.
    std::vector<GroundValue> fragment_coeffs;
    // Scalars with nonnegative order at this prime are integral; 0 makes every nonzero scalar integral.
    long integral_prime = 0;
    // Monomials of the source designated <= 1 (beyond the ground).
    std::vector<Monomial> le_one;
};

struct Span {
    std::vector<Monomial> generators;
    std::string str() const;
};

struct SpanTable {
    std::vector<Span> spans;
    std::vector<std::vector<int>> join;     // index of span i + span j
    std::vector<std::vector<int>> product;  // -1 when the product leaves the fragment
    bool unknown = false;
    std::vector<Monomial> atoms;
    std::vector<std::vector<bool>> atom_le;  // span preorder on atoms
};

SpanTable macpherson_an(const Presentation& p, const KDesignation& k, int size_bound, const Budget& b);

// Compares a span table with the bend side (atom order, joins and products).
struct AnCheck {
    bool ok = true;
    std::vector<std::string> failures;
    size_t comparisons = 0;
};
// atom_image[i] is the bend-side monomial of an.atoms[i].
AnCheck check_macpherson_bend(const SpanTable& an, const Presentation& bend_side,
                              const std::vector<Monomial>& atom_image, const Budget& b);

}  // namespace bluebend
