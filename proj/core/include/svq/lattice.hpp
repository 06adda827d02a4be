#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <utility>
#include <vector>

#include "svq/rng.hpp"

namespace svq {

// All lattice arithmetic is exact. Bases and vectors hold arbitrary-precision
// integers; Gram-Schmidt data is exact rational. No floating point enters this
// module.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;

struct LatticeBasis {
    int dim = 0;
    IntMat rows;                // row r is basis vector b_r
    std::vector<Int> norms_sq;  // cached exact squared norms, one per row
};

struct UnimodularTransform {
    IntMat matrix;
    int op_count = 0;  // elementary operations composed
};

struct LatticeVector {
    IntVec coords;     // coefficients c with v = sum_j c_j * b_j
    IntVec embedding;  // v itself
    Int norm_sq;
};

// Validates squareness and nonsingularity, caches row norms.
LatticeBasis make_basis(IntMat rows);

Int dot(const IntVec& a, const IntVec& b);
Int determinant(const IntMat& m);  // Bareiss fraction-free elimination

// Exact Gram-Schmidt profile of the rows: mu[i][j] for j < i, and the squared
// norms of the orthogonalized rows.
struct GramSchmidt {
    std::vector<std::vector<Rat>> mu;
    std::vector<Rat> bstar_norm_sq;
};
GramSchmidt gram_schmidt(const LatticeBasis& basis);

// Classic LLL with exact rational arithmetic. delta in (1/4, 1).
LatticeBasis lll_reduce(const LatticeBasis& basis, const Rat& delta = Rat(3, 4));

// Composition of `ops` elementary row operations (swap, negate, add c*row with
// c in {-2,-1,1,2}), each drawn uniformly. Operations that would push an entry
// beyond entry_bound are rejected and redrawn.
UnimodularTransform random_unimodular(int n, int ops, Rng& rng, const Int& entry_bound = 150);

LatticeBasis apply_transform(const UnimodularTransform& u, const LatticeBasis& basis);

// Exact solve of v = c * B. Absent when v is not a lattice point.
std::optional<IntVec> coordinates_of(const LatticeBasis& basis, const IntVec& v);

// Row replacement guarded by the |c_k| = 1 condition that keeps the generated
// lattice unchanged. k is a 0-based row index. Throws VerificationError when
// the guard fails; that always signals an algorithm bug upstream.
LatticeBasis replace_preserving_lattice(const LatticeBasis& basis, int k, const IntVec& v);

// True iff both bases generate the same lattice.
bool lattice_equal(const LatticeBasis& a, const LatticeBasis& b);

// Exact shortest nonzero vector by enumeration (LLL preprocessing, radius
// descent). Guarded to dim <= 8. The returned vector is sign-normalized so its
// first nonzero embedding entry is positive; coords refer to the input basis.
LatticeVector shortest_vector_oracle(const LatticeBasis& basis);

// Rows reordered by (norm_sq, lexicographic entries). perm[new_pos] = old_pos.
std::pair<LatticeBasis, std::vector<int>> sort_basis(const LatticeBasis& basis);

}  // namespace svq
