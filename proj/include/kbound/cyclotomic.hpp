#pragma once

#include "kbound/errors.hpp"
#include "kbound/ints.hpp"

#include <vector>

namespace kbound::cyclo {

// Arithmetic in Z[zeta] for zeta a primitive p^n-th root of unity, over the
// power basis 1, zeta, ..., zeta^(m-1) with m = p^(n-1)(p-1).  Reduction uses
// the relation
//
//     zeta^((p-1)p^(n-1)) = -(zeta^((p-2)p^(n-1)) + ... + zeta^(p^(n-1)) + 1),
//
// i.e. the minimal polynomial of zeta.  Ring arithmetic requires odd p; the
// residue and subgroup machinery below also accepts p = 2.
struct PrimePowerModulus {
    long p = 0;       // prime
    int n = 0;        // exponent, >= 1
    long pn = 0;      // p^n
    long m = 0;       // degree p^(n-1)(p-1)

    PrimePowerModulus() = default;
    PrimePowerModulus(long p, int n);

    bool operator==(const PrimePowerModulus& o) const { return p == o.p && n == o.n; }
    bool operator!=(const PrimePowerModulus& o) const { return !(*this == o); }
};

// Element of Z[zeta] with integer coordinates over the power basis.
struct CycInt {
    PrimePowerModulus mod;
    std::vector<Int> c; // length mod.m

    static CycInt zero(const PrimePowerModulus& mod);
    static CycInt one(const PrimePowerModulus& mod);

    bool is_zero() const;
    bool operator==(const CycInt& o) const;
    bool operator!=(const CycInt& o) const { return !(*this == o); }

    // Readable polynomial form, e.g. "z^4 - z + 1".
    std::string str() const;
};

// zeta^e as a basis combination (e taken mod p^n).
CycInt reduce_power(const PrimePowerModulus& mod, long e);

CycInt add(const CycInt& a, const CycInt& b);
CycInt sub(const CycInt& a, const CycInt& b);
CycInt neg(const CycInt& a);
CycInt mul(const CycInt& a, const CycInt& b);
CycInt mul_scalar(const CycInt& a, const Int& s);

// Ring automorphism zeta -> zeta^g for g coprime to p.
CycInt galois_apply(long g, const CycInt& a);

// Complex conjugation = galois_apply(-1).
CycInt conj(const CycInt& a);

// Subgroup of the unit group (Z/p^n Z)^*.  The order splits as p^s * r with
// r coprime to p; for odd p the unit group is cyclic, so r | p-1.
struct UnitSubgroup {
    PrimePowerModulus mod;
    std::vector<long> elements; // sorted, closed under multiplication, contains 1
    int s = 0;                  // p-adic valuation of the order
    long r = 1;                 // p'-part of the order

    long order() const { return static_cast<long>(elements.size()); }
    bool contains(long g) const;

    // The unique subgroup of order r (elements whose order is prime to p).
    UnitSubgroup p_prime_part() const;
};

UnitSubgroup trivial_subgroup(const PrimePowerModulus& mod);
UnitSubgroup subgroup_from_generator(const PrimePowerModulus& mod, long g);
UnitSubgroup subgroup_from_generators(const PrimePowerModulus& mod, const std::vector<long>& gens);

// A generator, when the subgroup is cyclic (always true for odd p).
long cyclic_generator(const UnitSubgroup& h);

// Orbits of h (reduced mod p^level) on {1 <= j <= p^level : gcd(j, p) = 1}.
// Each orbit is sorted ascending; orbits are sorted by smallest element.
std::vector<std::vector<long>> orbits_on_residues(const UnitSubgroup& h, int level);

// Elements of h fixing the residue j mod p^level.
std::vector<long> stabilizer_of_residue(const UnitSubgroup& h, long j, int level);

// Sum over the subgroup of the Galois images of a.
CycInt trace_over(const UnitSubgroup& h, const CycInt& a);
CycInt trace_over(const std::vector<long>& residues, const CycInt& a);

// Sum over ALL units g of the coefficient of zeta^(g*e); a rational integer:
//   m            if p^n | e
//   0            if p^(n-1) does not divide e
//   -p^(n-1)     otherwise.
Int full_unit_sum(const PrimePowerModulus& mod, long e);

long order_of_unit(const PrimePowerModulus& mod, long g);
long mod_pow(long base, long exp, long modulus);

} // namespace kbound::cyclo
