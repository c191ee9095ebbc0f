#pragma once

#include "kbound/cyclotomic.hpp"
#include "kbound/gram.hpp"
#include "kbound/matrix.hpp"

#include <string>
#include <utility>
#include <vector>

namespace kbound::ortho {

// Local data attached to a subsection: the order p^n of the cyclic p-element,
// the number l of modular characters of its block, their Cartan matrix, the
// stabilizer subgroup N of units mod p^n, and the permutation action of N on
// the l characters.
struct SubsectionSpec {
    cyclo::PrimePowerModulus mod;
    int l = 0;
    IMat cartan_bar; // l x l
    cyclo::UnitSubgroup subgroup;
    // Aligned with subgroup.elements; action[g] maps character indices 0..l-1.
    std::vector<std::vector<int>> action;

    const std::vector<int>& perm(long residue) const;
};

// Closure of generator images into a full action table.  Every product
// relation is checked, so an inconsistent assignment cannot slip through.
std::vector<std::vector<int>> make_action(
    const cyclo::UnitSubgroup& subgroup,
    const std::vector<std::pair<long, std::vector<int>>>& generator_images);

std::vector<std::vector<int>> trivial_action(const cyclo::UnitSubgroup& subgroup, int l);

// Hard checks (throws): Cartan symmetric positive definite, action a
// homomorphism, Cartan invariant under the action.  Returns soft warnings,
// e.g. a Cartan determinant that is not a power of p.
std::vector<std::string> validate(const SubsectionSpec& spec);

// The representative i' in {1, ..., p^(n-1)} of -i mod p^(n-1).
long neg_residue(long i, const cyclo::PrimePowerModulus& mod);

// Signed stabilizer count driving the contribution matrix; i, j are 0-based
// exponents in 0..m-1.
long w_count(long i, long j, int tau, long gamma, const SubsectionSpec& spec);

// The ml x ml contribution Gram; row (sigma, i) sits at sigma*m + i with
// m = p^(n-1)(p-1).  Odd p only.
GramMatrix build_m(const SubsectionSpec& spec);

// Shortcut when the action is trivial: cartan_bar tensor the coefficient Gram
// of the one-factor model, taken in its block basis order.
GramMatrix build_m_stable(const SubsectionSpec& spec);

} // namespace kbound::ortho
