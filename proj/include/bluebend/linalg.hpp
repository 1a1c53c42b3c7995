#pragma once

#include <map>
#include <vector>

#include "bluebend/normalizer.hpp"

namespace bluebend {

struct DeglexGreater {
    bool operator()(const Key& a, const Key& b) const { return deglex_less(b, a); }
};

// Sparse polynomial over Q; begin() is the leading term.
using Poly = std::map<Key, Q, DeglexGreater>;

void poly_add_term(Poly& f, const Key& k, const Q& c);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_mul_term(const Poly& f, const Key& k, const Q& c);
int poly_degree(const Poly& f);
Poly poly_reduce(Poly f, const std::vector<Poly>& basis);

// Buchberger with deglex order. Returns false if the pair or degree cap is hit.
bool groebner(const std::vector<Poly>& gens, std::vector<Poly>& out, size_t max_pairs = 3000, int max_degree = 20);

using QMatrix = std::vector<std::vector<Q>>;
using ZVec = std::vector<Z>;

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(QMatrix& m);
// Basis of {x : m x = 0}.
QMatrix nullspace(const QMatrix& m, size_t ncols);

// Clears denominators and divides by the content; sign chosen so the first nonzero entry is positive.
ZVec primitive(const std::vector<Q>& v);
Z vec_gcd(const ZVec& v);

// Echelon basis of a sublattice of Z^n, grown one vector at a time.
class ZLattice {
public:
    explicit ZLattice(size_t dim) : dim_(dim) {}
    void add(ZVec v);
    bool contains(ZVec v) const;
    size_t rank() const { return rows_.size(); }
    size_t dim() const { return dim_; }
    const std::vector<ZVec>& rows() const { return rows_; }

private:
    size_t dim_;
    std::vector<ZVec> rows_;  // sorted by pivot column, pivots positive
    std::vector<int> pivot_;
};

// Saturated lattice basis of {u in Z^n : A u = 0}.
std::vector<ZVec> integer_kernel(const QMatrix& a, size_t ncols);

// Index of the lattice spanned by gens inside Z^n; 0 means infinite index.
Z lattice_index(const std::vector<ZVec>& gens, size_t n);

}  // namespace bluebend
