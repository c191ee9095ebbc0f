#pragma once

#include "kbound/gram.hpp"

#include <vector>

namespace kbound::lattice {

struct ReductionResult {
    GramMatrix reduced;          // full-rank, LLL-reduced
    IMat transform;              // original = transform * reduced * transform^T
    std::vector<int> dropped_rows; // indices removed as literally zero
};

// Remove zero rows/columns, factor out the exact kernel so the Gram matrix
// describes a full-rank lattice, then LLL-reduce.  The decomposition search
// is invariant under this: row systems for the input correspond one-to-one
// to row systems for the output.
ReductionResult prune(const GramMatrix& m, const Rat& delta = Rat(3, 4));

// Exact LLL on a positive definite Gram matrix (no vector coordinates
// involved).  delta in (1/4, 1].  Gram-Schmidt data is kept as rationals;
// both the size-reduction and Lovasz conditions are asserted on the result.
ReductionResult lll(const GramMatrix& m, const Rat& delta = Rat(3, 4));

// Decides S m_a S^T = m_b for some unimodular S, by matching short vectors.
// Both matrices must be positive definite of equal size <= size_cap.
bool congruent(const GramMatrix& a, const GramMatrix& b, int size_cap = 6);

// Diagonal divisor sequence d_1 | d_2 | ... (zeros trail for rank
// deficiency).
std::vector<Int> smith_normal_form(IMat m);

// All lattice vectors x (up to sign, first nonzero coordinate positive) with
// x^T a x <= bound, paired with their norms.  Helper for congruence testing
// and short-vector reporting; a must be positive definite.
std::vector<std::pair<std::vector<Int>, Int>> vectors_up_to_norm(const IMat& a, const Int& bound);

} // namespace kbound::lattice
