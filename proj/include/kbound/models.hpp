#pragma once

#include "kbound/cyclotomic.hpp"
#include "kbound/gram.hpp"
#include "kbound/intbasis.hpp"
#include "kbound/matrix.hpp"

#include <utility>
#include <vector>

namespace kbound::models {

using cyclo::CycInt;
using cyclo::PrimePowerModulus;
using cyclo::UnitSubgroup;

// Decomposition column of the local model Z_(p^n) x| <gamma>: the list of
// distinct row values together with multiplicities.  Rows are, in order, the
// constant 1 (multiplicity p^s * r), one trace row per <gamma>-orbit on the
// nonzero residues mod p^(n-s) (multiplicity p^s each, orbits taken by
// ascending smallest exponent), and, when k > k0, a zero row of multiplicity
// k - k0.
struct SemidirectModel {
    PrimePowerModulus mod;
    long gamma = 1;
    int s = 0;  // |<gamma>| = p^s * r
    long r = 1;
    std::vector<std::pair<CycInt, long>> rows; // (value, multiplicity)
    long k = 0;  // class count of the model group; equals the multiplicity sum
    long k0 = 0; // rows with a nonzero value
};

SemidirectModel semidirect_model(long p, int n, long gamma);

// Height-zero class count of Z_(p^n) x| <gamma> for odd p:
// (p^n + p^s (r^2 - 1)) / r.
long k0_semidirect(long p, int n, long r, int s);

// p = 2 counterpart.  2 * |<gamma>| when some element of <gamma> is congruent
// to -5^a mod 2^n for an a, else 2^n.
long k0_semidirect_2(int n, long gamma);

// Brute-force conjugacy classes of Z_(p^n) x| <gamma>: (total, height zero).
// Group order capped at 100000 (CapExceeded beyond).
std::pair<long, long> conjugacy_count(long p, int n, long gamma);

// Rows of the model expressed over the fixed-ring basis, in the basis' block
// order, one matrix row per class (multiplicities expanded).  The product
// A^T A is checked against its block-diagonal closed form.
IMat semidirect_coefficients(const SemidirectModel& model,
                             const intbasis::FixedFieldBasis& basis);

// Pairing of A^T A against the Dynkin A form must give back k0.
bool semidirect_gram_sum_check(const SemidirectModel& model,
                               const intbasis::FixedFieldBasis& basis);

// Decomposition rows of the model with two rotated factors,
//   (Z_(p^n1) x| <x>) * (Z_(p^n2) x| <y>)  amalgamated over  |x^l1| = d = |y^l2|,
// x acting through gamma1 of order l1 and y through gamma2 of order l2.
// Entries live in Z[zeta] for zeta of order p^n1; each row has l2 columns
// arranged in l2/d groups of d.
struct MetacyclicModel {
    long p = 0;
    int n1 = 0, n2 = 0;
    long l1 = 1, l2 = 1, d = 1;
    long gamma1 = 1, gamma2 = 1;
    std::vector<long> zeta_reps; // smallest exponents of the <gamma1>-orbits
    std::vector<std::pair<std::vector<CycInt>, long>> rows; // (row, multiplicity)
};

MetacyclicModel metacyclic_model(long p, int n1, int n2, long l1, long l2, long d,
                                 long gamma1, long gamma2);

// Column Gram of the rows: entry (s, t) must equal p^n1 * (t2 + delta_st)
// with t2 = (p^n2 - 1) / l2.
bool verify_orthogonality(const MetacyclicModel& model);

// Block Gram of the rows' coefficients over the basis of the ring fixed by
// <gamma1^d>: diagonal blocks A_1^T A_1, off-diagonal blocks A_1^T A_(d+1),
// where A_j collects the coefficients of column j.  Basis in canonical
// (ascending exponent) order.
IMat metacyclic_coefficient_gram(const MetacyclicModel& model);

long metacyclic_row_count(const MetacyclicModel& model);

// Row-count bound (p^n1 - 1)(p^n2 - 1) / (l1 l2) + l1 (p^n2 - 1) / l2
// + l2 (p^n1 - 1) / l1 + l1 l2 / d^2.
Int metacyclic_row_bound(long p, int n1, int n2, long l1, long l2, long d);

// Brute-force class count of the group
//   <u, v, x, y | u^(p^n1), v^(p^n2), x^(d l1), y^(l2),
//     x u x^-1 = u^gamma1, y v y^-1 = v^gamma2, y x y^-1 = x^(1+l1), rest commute>.
// With d = 1 this is the quotient by the central <x^l1>.  Order capped at
// 100000.
long metacyclic_class_count(long p, int n1, int n2, long l1, long l2, long d,
                            long gamma1, long gamma2);

// (p^n - 1)/l1 * (p^m - 1)/l2 + l1 (p^m - 1)/l2 + l2 (p^n - 1)/l1.
Int brauer_diff(long p, int n, int m, long l1, long l2);

// ((pn - 1)/r + r) * (c11 + c22 - c12) for the two-row Cartan
// [[c11, c12], [c12, c22]].
Int l2_major_bound(const Int& pn, long r, const Int& c11, const Int& c12,
                   const Int& c22);

// ((u_order - 1)/l + l) * v_order <= ((quotient_order - 1)/l + l) * inter_order,
// compared exactly over the rationals.
bool quotient_count_check(const Int& u_order, long l, const Int& v_order,
                          const Int& quotient_order, const Int& inter_order);

// Cartan matrix (m + delta_ij) of a block with cyclic defect group, where
// m = (defect_order - 1) / l; the division must be exact.
GramMatrix cyclic_cartan(const Int& defect_order, long l);

} // namespace kbound::models
