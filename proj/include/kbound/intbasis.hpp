#pragma once

#include "kbound/cyclotomic.hpp"
#include "kbound/matrix.hpp"

#include <optional>
#include <vector>

namespace kbound::intbasis {

using cyclo::CycInt;
using cyclo::PrimePowerModulus;
using cyclo::UnitSubgroup;

// Index sets for the integral basis of the subring of Z[zeta] fixed by a unit
// subgroup N.  With |N| = p^s * r and H = the p'-part of N:
//
//   S_i = smallest-element representatives of the H-orbits on
//         {1 <= j <= p^i : gcd(j, p) = 1},
//   T_1 = S_1,
//   T_i = p*T_(i-1)  union  {t + j*p^(i-1) : t in S_(i-1), j = 0..p-2},
//
// and the basis consists of the traces over H of zeta^(p^s * t), t in T_(n-s).

// Provenance of a T-set member, kept so the basis can be permuted into the
// block order its Gram matrices are stated in.
struct TExponent {
    long exponent = 0; // value in T_level
    int born = 0;      // recursion level that created it
    long base = 0;     // t for born = 1; the S_(born-1) element otherwise
    int j = 0;         // translate index, 0 for born = 1
};

std::vector<std::vector<long>> build_s_sets(const PrimePowerModulus& mod,
                                            const UnitSubgroup& subgroup,
                                            int up_to_level);

std::vector<long> build_t_sets(const PrimePowerModulus& mod,
                               const UnitSubgroup& subgroup,
                               int level);

std::vector<TExponent> build_t_tagged(const PrimePowerModulus& mod,
                                      const UnitSubgroup& subgroup,
                                      int level);

struct FixedFieldBasis {
    PrimePowerModulus mod;
    UnitSubgroup subgroup;        // N
    std::vector<long> t_indices;  // exponents p^s * t, ascending
    std::vector<CycInt> elems;    // traces over the p'-part of N, same order
    std::vector<TExponent> tags;  // aligned with t_indices (tags carry T-set values)

    int size() const { return static_cast<int>(elems.size()); }
};

FixedFieldBasis build_basis(const PrimePowerModulus& mod, const UnitSubgroup& subgroup);

// Permutation placing the basis in block order: the (p-1)/r elements whose
// exponent has maximal p-valuation first, then the remaining elements in
// groups of p-1 sharing a T-set base.  Entry k of the result is the canonical
// index of the k-th element in block order.
std::vector<int> grouped_order(const FixedFieldBasis& basis);

// Integer coordinates of a over the basis.  Throws NotInFixedRing when a is
// not an integral combination.
std::vector<Int> express(const CycInt& a, const FixedFieldBasis& basis);

// Full check that the basis spans the fixed subring: independence, stability
// under N, expressibility of every generating trace, cardinality.
bool verify_basis(const FixedFieldBasis& basis, long cap = 343);

// Exact solver used by express; exposed for reuse.  Returns nothing when the
// system A x = rhs has no solution; requires full column rank for a unique
// one.
std::optional<std::vector<Rat>> solve_rational(const QMat& a, const std::vector<Rat>& rhs);

} // namespace kbound::intbasis
