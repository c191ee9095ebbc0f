#pragma once

#include "kbound/matrix.hpp"

namespace kbound::qforms {

// Integral-coefficient bookkeeping for quadratic forms q(x) = sum_{i<=j}
// q_ij x_i x_j.  The Gram matrix (q_ii on the diagonal, q_ij/2 off it) is
// held as an integer matrix over a common positive denominator, so tensor
// products with quarter-integral (and finer) coefficients stay exact.
struct QuadraticForm {
    int rank = 0;
    IMat num;      // den * Gram, symmetric
    Int den = 1;   // minimal positive denominator
    bool integral = false; // all q_ij integers

    // q_ii and q_ij as exact rationals.
    Rat coeff(int i, int j) const;
};

// Form from its doubled Gram matrix (diagonal 2*q_ii, off-diagonal q_ij).
QuadraticForm from_doubled_gram(const IMat& doubled);

// Form from den * Gram directly.
QuadraticForm from_scaled_gram(const IMat& num, const Int& den);

// x_1^2 + ... + x_t^2 - x_1 x_2 - ... - x_(t-1) x_t; doubled Gram is the
// type-A Cartan matrix.  Minimum 1, positive definite.
QuadraticForm dynkin_a(int t);

// Tensor product: Gram matrices multiply via the Kronecker product.  The
// minimum of the product of two positive definite forms of minimum >= 1 is
// again >= 1.
QuadraticForm tensor(const QuadraticForm& a, const QuadraticForm& b);

bool positive_definite(const QuadraticForm& q);

Rat evaluate(const QuadraticForm& q, const std::vector<Int>& x);

// True iff no nonzero integer vector has q(x) < 1.  Exhaustive exact
// enumeration inside the ellipsoid q < 1; q must be positive definite and of
// rank at most rank_cap.
bool minimum_at_least_one(const QuadraticForm& q, int rank_cap = 12);

// sum_{i<=j} q_ij m_ij = full Gram pairing <Gram, m>.
Rat weighted_sum(const QuadraticForm& q, const IMat& m);

// u_order * weighted_sum(q, cartan_bar); q must be integral, the product is
// then an integer.
Int bound_outer(const QuadraticForm& q, const IMat& cartan_bar, const Int& u_order);

// k0 * weighted_sum(q, cartan_bar); same integrality contract.
Int bound_stable(const QuadraticForm& q, const IMat& cartan_bar, const Int& k0);

// Basic-set change S C S^T for unimodular S; positive definiteness carries
// over.
IMat change_basic_set(const IMat& cartan, const IMat& s);

// The form in the coordinates x -> S x, i.e. Gram S^(-T) G S^(-1); pairs with
// change_basic_set so weighted sums are invariant.
QuadraticForm contragredient(const QuadraticForm& q, const IMat& s);

} // namespace kbound::qforms
