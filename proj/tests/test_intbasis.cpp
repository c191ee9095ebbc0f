#include "doctest.h"

#include "kbound/errors.hpp"
#include "kbound/intbasis.hpp"

using namespace kbound;
using namespace kbound::cyclo;
using namespace kbound::intbasis;

TEST_CASE("index sets for the trivial subgroup at p = 3, n = 2") {
    PrimePowerModulus m(3, 2);
    UnitSubgroup triv = trivial_subgroup(m);
    auto s = build_s_sets(m, triv, 2);
    REQUIRE(s.size() == 2);
    CHECK(s[0] == std::vector<long>{1, 2});
    CHECK(s[1] == std::vector<long>{1, 2, 4, 5, 7, 8});
    CHECK(build_t_sets(m, triv, 1) == std::vector<long>{1, 2});
    // T_2 = 3*T_1 union {t + 3j : t in S_1, j = 0, 1}
    CHECK(build_t_sets(m, triv, 2) == std::vector<long>{1, 2, 3, 4, 5, 6});
}

TEST_CASE("basis for the trivial subgroup is zeta..zeta^6 at p = 3, n = 2") {
    PrimePowerModulus m(3, 2);
    FixedFieldBasis b = build_basis(m, trivial_subgroup(m));
    REQUIRE(b.size() == 6);
    CHECK(b.t_indices == std::vector<long>{1, 2, 3, 4, 5, 6});
    for (int i = 0; i < 6; ++i) CHECK(b.elems[i] == reduce_power(m, b.t_indices[i]));
    // 1 = -zeta^3 - zeta^6
    auto coords = express(CycInt::one(m), b);
    CHECK(coords == std::vector<Int>{0, 0, -1, 0, 0, -1});
    CHECK(verify_basis(b));
}

TEST_CASE("block permutation groups exponents by p-valuation and T-base") {
    PrimePowerModulus m(3, 2);
    FixedFieldBasis b = build_basis(m, trivial_subgroup(m));
    CHECK(grouped_order(b) == std::vector<int>{2, 5, 0, 3, 1, 4});
}

TEST_CASE("basis for an order-2 subgroup at p = 3, n = 2") {
    PrimePowerModulus m(3, 2);
    UnitSubgroup h = subgroup_from_generator(m, 8); // {1, -1}
    FixedFieldBasis b = build_basis(m, h);
    REQUIRE(b.size() == 3); // p^(n-s-1) (p-1) / r = 3 * 2 / 2
    CHECK(verify_basis(b));
    // elements are traces, hence fixed by the subgroup
    for (const CycInt& e : b.elems) CHECK(galois_apply(8, e) == e);
    // zeta itself is not in the fixed ring
    CHECK_THROWS_AS(express(reduce_power(m, 1), b), NotInFixedRing);
}

TEST_CASE("cardinality formula across subgroups of 27") {
    PrimePowerModulus m(3, 3);
    for (long g = 1; g < 27; ++g) {
        if (g % 3 == 0) continue;
        UnitSubgroup h = subgroup_from_generator(m, g);
        FixedFieldBasis b = build_basis(m, h);
        long expect = 9 * 2; // p^(n-1) (p-1)
        for (int i = 0; i < h.s; ++i) expect /= 3;
        expect /= h.r;
        CHECK(b.size() == expect);
    }
}

TEST_CASE("rational solver") {
    QMat a(2, 2);
    a(0, 0) = Rat(1);
    a(0, 1) = Rat(2);
    a(1, 0) = Rat(3);
    a(1, 1) = Rat(4);
    auto x = solve_rational(a, {Rat(5), Rat(11)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == Rat(1));
    CHECK((*x)[1] == Rat(2));
    // inconsistent overdetermined system
    QMat b(2, 1);
    b(0, 0) = Rat(1);
    b(1, 0) = Rat(1);
    CHECK_FALSE(solve_rational(b, {Rat(0), Rat(1)}).has_value());
}
