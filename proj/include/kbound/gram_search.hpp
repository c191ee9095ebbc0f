#pragma once

#include "kbound/gram.hpp"
#include "kbound/matrix.hpp"
#include "kbound/qforms.hpp"

#include <vector>

namespace kbound::gram_search {

// Rows of one expression of a Gram matrix as a sum of integral rank-one
// squares, each row sign-normalized (first nonzero entry positive) and the
// list non-increasing lexicographically.
struct Decomposition {
    std::vector<std::vector<long>> rows;
    bool operator==(const Decomposition&) const = default;
    bool operator<(const Decomposition& o) const { return rows < o.rows; }
};

struct SearchResult {
    long k = 0;
    Decomposition witness;
    bool optimal = true; // false when the node budget stopped the search
    long long nodes = 0;
};

struct Enumeration {
    std::vector<Decomposition> decompositions;
    bool complete = true;
    long long nodes = 0;
};

// Largest number of rank-one rows summing to m.  Exhaustive branch and bound;
// with the budget exhausted the result is a lower bound and optimal is false.
SearchResult max_k(const GramMatrix& m, long long budget = 100000000);

// Every decomposition with exactly k rows.  The canonical row order makes
// distinct results distinct as row multisets.
Enumeration all_max_decompositions(const GramMatrix& m, long k,
                                   long long budget = 100000000);

// Independent reference implementation, deliberately simple and slow; tiny
// inputs only (size <= 4, trace <= 16).
long max_k_reference(const GramMatrix& m);

// floor of the pairing of q against m, an upper bound for max_k whenever the
// minimum of q on nonzero integer vectors is at least 1 (checked).
Int quick_upper_bound(const GramMatrix& m, const qforms::QuadraticForm& q);

// Signed column permutations fixing m; entry i of a map is the signed 1-based
// image column of column i.
std::vector<std::vector<int>> signed_automorphisms(const GramMatrix& m);

// Orbit count of the decompositions under the signed permutations fixing m.
long equivalence_classes(const GramMatrix& m, const std::vector<Decomposition>& ds);

} // namespace kbound::gram_search
