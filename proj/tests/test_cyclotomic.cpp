#include "doctest.h"

#include "kbound/cyclotomic.hpp"
#include "kbound/errors.hpp"

#include <set>

using namespace kbound;
using namespace kbound::cyclo;

TEST_CASE("modulus validation") {
    CHECK_THROWS_AS(PrimePowerModulus(4, 1), std::domain_error);
    CHECK_THROWS_AS(PrimePowerModulus(1, 1), std::domain_error);
    CHECK_THROWS_AS(PrimePowerModulus(3, 0), std::domain_error);
    CHECK_THROWS_AS(PrimePowerModulus(3, 45), CapExceeded);
    PrimePowerModulus m(3, 2);
    CHECK(m.pn == 9);
    CHECK(m.m == 6);
    PrimePowerModulus two(2, 3);
    CHECK(two.pn == 8);
    CHECK(two.m == 4);
}

TEST_CASE("power reduction uses the minimal polynomial") {
    PrimePowerModulus m(3, 2);
    // zeta^6 = -(zeta^3 + 1)
    CycInt z6 = reduce_power(m, 6);
    CycInt expect = CycInt::zero(m);
    expect.c[0] = -1;
    expect.c[3] = -1;
    CHECK(z6 == expect);
    // exponents wrap mod p^n
    CHECK(reduce_power(m, 10) == reduce_power(m, 1));
    CHECK(reduce_power(m, -1) == reduce_power(m, 8));
}

TEST_CASE("ring arithmetic") {
    PrimePowerModulus m(3, 2);
    for (long a = 0; a < 9; ++a)
        for (long b = 0; b < 9; ++b)
            CHECK(mul(reduce_power(m, a), reduce_power(m, b)) == reduce_power(m, a + b));
    CycInt x = add(reduce_power(m, 1), CycInt::one(m));
    CHECK(sub(x, CycInt::one(m)) == reduce_power(m, 1));
    CHECK(add(x, neg(x)).is_zero());
    CHECK(mul_scalar(CycInt::one(m), Int(7)).c[0] == 7);
    // z^9 = 1 so the full geometric sum vanishes
    CycInt s = CycInt::zero(m);
    for (long e = 0; e < 9; ++e) s = add(s, reduce_power(m, e));
    CHECK(s.is_zero());
}

TEST_CASE("ring arithmetic rejects p = 2") {
    PrimePowerModulus two(2, 2);
    CHECK_THROWS_AS(reduce_power(two, 1), std::domain_error);
}

TEST_CASE("galois action is a ring homomorphism") {
    PrimePowerModulus m(3, 2);
    CycInt a = add(reduce_power(m, 1), reduce_power(m, 5));
    CycInt b = sub(reduce_power(m, 2), CycInt::one(m));
    CHECK(galois_apply(2, mul(a, b)) == mul(galois_apply(2, a), galois_apply(2, b)));
    CHECK(galois_apply(2, add(a, b)) == add(galois_apply(2, a), galois_apply(2, b)));
    // order of 2 mod 9 is 6
    CycInt c = a;
    for (int i = 0; i < 6; ++i) c = galois_apply(2, c);
    CHECK(c == a);
    CHECK(conj(conj(a)) == a);
    CHECK(conj(reduce_power(m, 1)) == reduce_power(m, 8));
}

TEST_CASE("unit subgroups split into p-part and p'-part") {
    PrimePowerModulus m(3, 2);
    UnitSubgroup full = subgroup_from_generator(m, 2);
    CHECK(full.order() == 6);
    CHECK(full.s == 1);
    CHECK(full.r == 2);
    UnitSubgroup pp = full.p_prime_part();
    CHECK(pp.order() == 2);
    CHECK(pp.contains(8)); // -1 mod 9
    UnitSubgroup ponly = subgroup_from_generator(m, 4);
    CHECK(ponly.order() == 3);
    CHECK(ponly.s == 1);
    CHECK(ponly.r == 1);
    CHECK(trivial_subgroup(m).order() == 1);
    CHECK_THROWS_AS(subgroup_from_generator(m, 3), std::domain_error);
}

TEST_CASE("subgroup generator round trip") {
    PrimePowerModulus m(7, 1);
    for (long g = 1; g < 7; ++g) {
        UnitSubgroup h = subgroup_from_generator(m, g);
        UnitSubgroup h2 = subgroup_from_generator(m, cyclic_generator(h));
        CHECK(h.elements == h2.elements);
    }
    UnitSubgroup joint = subgroup_from_generators(m, {2, 6});
    CHECK(joint.order() == 6); // <2> has order 3, adding -1 gives everything
}

TEST_CASE("orbits and stabilizers") {
    PrimePowerModulus m(3, 2);
    UnitSubgroup h = subgroup_from_generator(m, 8); // {1, 8}
    auto orbits = orbits_on_residues(h, 2);
    // residues coprime to 3 in 1..9: {1,8},{2,7},{4,5}
    REQUIRE(orbits.size() == 3);
    CHECK(orbits[0] == std::vector<long>{1, 8});
    CHECK(orbits[1] == std::vector<long>{2, 7});
    CHECK(orbits[2] == std::vector<long>{4, 5});
    // level 1: 8 = 2 mod 3, so {1,2} is a single orbit
    auto level1 = orbits_on_residues(h, 1);
    REQUIRE(level1.size() == 1);
    CHECK(level1[0] == std::vector<long>{1, 2});
    CHECK(stabilizer_of_residue(h, 1, 2) == std::vector<long>{1});
    CHECK(stabilizer_of_residue(h, 3, 1).size() == 2); // everything fixes 0 mod 3
}

TEST_CASE("traces over subgroups") {
    PrimePowerModulus m(3, 2);
    UnitSubgroup h = subgroup_from_generator(m, 8);
    CycInt t = trace_over(h, reduce_power(m, 1));
    CHECK(t == add(reduce_power(m, 1), reduce_power(m, 8)));
    CHECK(trace_over(trivial_subgroup(m), t) == t);
    CHECK(galois_apply(8, t) == t); // trace is fixed by the subgroup
}

TEST_CASE("full unit coefficient sums") {
    PrimePowerModulus m(3, 2);
    CHECK(full_unit_sum(m, 0) == 6);
    CHECK(full_unit_sum(m, 9) == 6);
    CHECK(full_unit_sum(m, 3) == -3);
    CHECK(full_unit_sum(m, 6) == -3);
    CHECK(full_unit_sum(m, 1) == 0);
    CHECK(full_unit_sum(m, 5) == 0);
    PrimePowerModulus p5(5, 1);
    CHECK(full_unit_sum(p5, 5) == 4);
    CHECK(full_unit_sum(p5, 2) == -1);
}

TEST_CASE("unit orders") {
    PrimePowerModulus m(3, 2);
    CHECK(order_of_unit(m, 2) == 6);
    CHECK(order_of_unit(m, 4) == 3);
    CHECK(order_of_unit(m, 8) == 2);
    CHECK(order_of_unit(m, 1) == 1);
    CHECK(mod_pow(2, 10, 1000) == 24);
    PrimePowerModulus two(2, 3);
    CHECK(order_of_unit(two, 3) == 2);
    CHECK(order_of_unit(two, 5) == 2);
}
