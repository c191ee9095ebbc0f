#include "doctest.h"

#include "helpers.hpp"
#include "kbound/errors.hpp"
#include "kbound/intbasis.hpp"
#include "kbound/models.hpp"
#include "kbound/qforms.hpp"

using namespace kbound;
using namespace kbound::models;
using testutil::mat;

TEST_CASE("conjugacy oracle on known groups") {
    // symmetric group on 3 letters
    CHECK(conjugacy_count(3, 1, 2) == std::pair<long, long>{3, 3});
    // dihedral of order 10
    CHECK(conjugacy_count(5, 1, 4) == std::pair<long, long>{4, 4});
    // Frobenius group of order 20
    CHECK(conjugacy_count(5, 1, 2) == std::pair<long, long>{5, 5});
    // Frobenius group of order 42
    CHECK(conjugacy_count(7, 1, 3) == std::pair<long, long>{7, 7});
    // 9:2 and the extraspecial 27:3 quotient picture
    CHECK(conjugacy_count(3, 2, 8) == std::pair<long, long>{6, 6});
    CHECK(conjugacy_count(3, 2, 4) == std::pair<long, long>{11, 9});
    // cyclic: gamma = 1
    CHECK(conjugacy_count(3, 2, 1) == std::pair<long, long>{9, 9});
    // dihedral of order 8 and the modular group of order 16
    CHECK(conjugacy_count(2, 2, 3) == std::pair<long, long>{5, 4});
    CHECK(conjugacy_count(2, 3, 5) == std::pair<long, long>{10, 8});
    CHECK_THROWS_AS(conjugacy_count(3, 9, 2), CapExceeded);
}

TEST_CASE("height zero closed form, odd p") {
    CHECK(k0_semidirect(3, 1, 2, 0) == 3);
    CHECK(k0_semidirect(5, 1, 4, 0) == 5);
    CHECK(k0_semidirect(5, 1, 2, 0) == 4);
    CHECK(k0_semidirect(3, 2, 2, 0) == 6);
    CHECK(k0_semidirect(3, 2, 1, 1) == 9);
    CHECK(k0_semidirect(7, 1, 6, 0) == 7);
}

TEST_CASE("height zero closed form, p = 2") {
    CHECK(k0_semidirect_2(2, 3) == 4);
    CHECK(k0_semidirect_2(2, 1) == 4);
    CHECK(k0_semidirect_2(3, 5) == 8);
    CHECK(k0_semidirect_2(3, 3) == 4);
    CHECK(k0_semidirect_2(3, 7) == 4);
    // every case must agree with the brute-force count
    for (int n = 1; n <= 4; ++n) {
        long pn = 1L << n;
        for (long g = 1; g < pn; g += 2) {
            auto [k, k0] = conjugacy_count(2, n, g);
            CHECK(k0_semidirect_2(n, g) == k0);
            CHECK(k0 <= k);
        }
    }
}

TEST_CASE("semidirect model rows and counts") {
    SemidirectModel m = semidirect_model(5, 1, 2);
    CHECK(m.k == 5);
    CHECK(m.k0 == 5);
    REQUIRE(m.rows.size() == 2);
    CHECK(m.rows[0].second == 4); // the all-ones character column
    CHECK(m.rows[0].first == cyclo::CycInt::one(m.mod));
    CHECK(m.rows[1].second == 1); // full trace of zeta
    CHECK(m.rows[1].first ==
          cyclo::trace_over(cyclo::subgroup_from_generator(m.mod, m.gamma),
                            cyclo::reduce_power(m.mod, 1)));

    SemidirectModel e = semidirect_model(3, 2, 4);
    CHECK(e.k == 11);
    CHECK(e.k0 == 9);
    long mult_total = 0;
    for (const auto& [row, mult] : e.rows) {
        (void)row;
        mult_total += mult;
    }
    CHECK(mult_total == e.k);
}

TEST_CASE("semidirect coefficient Gram matches the closed block form") {
    {
        SemidirectModel m = semidirect_model(3, 2, 4);
        auto basis = intbasis::build_basis(m.mod, cyclo::subgroup_from_generator(m.mod, m.gamma));
        IMat a = semidirect_coefficients(m, basis);
        CHECK(a.transpose() * a == mat({{6, 3}, {3, 6}}));
        CHECK(semidirect_gram_sum_check(m, basis));
    }
    {
        SemidirectModel m = semidirect_model(5, 1, 4);
        auto basis = intbasis::build_basis(m.mod, cyclo::subgroup_from_generator(m.mod, m.gamma));
        IMat a = semidirect_coefficients(m, basis);
        CHECK(a.transpose() * a == mat({{3, 2}, {2, 3}}));
        CHECK(semidirect_gram_sum_check(m, basis));
    }
    {
        SemidirectModel m = semidirect_model(7, 1, 3);
        auto basis = intbasis::build_basis(m.mod, cyclo::subgroup_from_generator(m.mod, m.gamma));
        CHECK(semidirect_gram_sum_check(m, basis));
    }
}

TEST_CASE("metacyclic model, order 72 fixture") {
    MetacyclicModel m = metacyclic_model(3, 1, 1, 2, 2, 2, 2, 2);
    CHECK(verify_orthogonality(m));
    CHECK(metacyclic_row_count(m) == 6);
    CHECK(metacyclic_coefficient_gram(m) == mat({{5, 4}, {4, 5}}));
    // brute-force: class count of the order-72 group minus its d=1 quotient
    long full = metacyclic_class_count(3, 1, 1, 2, 2, 2, 2, 2);
    long quot = metacyclic_class_count(3, 1, 1, 2, 2, 1, 2, 2);
    CHECK(full == 15);
    CHECK(quot == 9);
    CHECK(full - quot == 6);
}

TEST_CASE("metacyclic model, order 200 fixture") {
    MetacyclicModel m = metacyclic_model(5, 1, 1, 2, 2, 2, 4, 4);
    CHECK(verify_orthogonality(m));
    CHECK(metacyclic_row_count(m) == 13);
    CHECK(metacyclic_coefficient_gram(m) ==
          mat({{8, 5, 5, 7}, {5, 8, 7, 5}, {5, 7, 8, 5}, {7, 5, 5, 8}}));
    CHECK(metacyclic_class_count(5, 1, 1, 2, 2, 2, 4, 4) -
              metacyclic_class_count(5, 1, 1, 2, 2, 1, 4, 4) ==
          13);
}

TEST_CASE("metacyclic model with two abelian factors") {
    // direct product of a cyclic 3-group with the symmetric group on 3 letters
    MetacyclicModel m = metacyclic_model(3, 1, 1, 1, 2, 1, 1, 2);
    CHECK(verify_orthogonality(m));
    CHECK(metacyclic_row_count(m) == 9);
    CHECK(metacyclic_class_count(3, 1, 1, 1, 2, 1, 1, 2) == 9);
    CHECK(metacyclic_coefficient_gram(m) ==
          mat({{4, 2, 2, 1}, {2, 4, 1, 2}, {2, 1, 4, 2}, {1, 2, 2, 4}}));
}

TEST_CASE("row count agrees with the closed formula") {
    MetacyclicModel a = metacyclic_model(3, 1, 1, 2, 2, 2, 2, 2);
    CHECK(Int(metacyclic_row_count(a)) == metacyclic_row_bound(3, 1, 1, 2, 2, 2));
    MetacyclicModel b = metacyclic_model(7, 1, 1, 6, 6, 6, 3, 3);
    CHECK(verify_orthogonality(b));
    CHECK(Int(metacyclic_row_count(b)) == metacyclic_row_bound(7, 1, 1, 6, 6, 6));
    CHECK(metacyclic_row_bound(7, 1, 1, 6, 6, 6) == 14);
}

TEST_CASE("bound formulas") {
    CHECK(brauer_diff(3, 1, 1, 2, 2) == 5);
    CHECK(brauer_diff(5, 1, 1, 4, 2) == 12);
    CHECK(brauer_diff(3, 2, 1, 1, 1) == 26); // nilpotent: p^(n+m) - 1
    CHECK_THROWS_AS(brauer_diff(3, 1, 1, 4, 2), std::domain_error);

    CHECK(metacyclic_row_bound(3, 1, 1, 2, 2, 2) == 6);
    for (long pn : {3L, 9L, 27L, 5L, 25L, 125L, 7L, 49L, 343L, 625L}) {
        long p = pn % 3 == 0 ? 3 : pn % 5 == 0 ? 5 : 7;
        int n = 0;
        for (long v = pn; v > 1; v /= p) ++n;
        for (int n2 = 1; n2 <= n; ++n2)
            if (pow_int(Int(p), n - n2 + n2) <= 625)
                CHECK(metacyclic_row_bound(p, n - n2 == 0 ? 1 : n - n2, n2, 1, 1, 1) ==
                      pow_int(Int(p), (n - n2 == 0 ? 1 : n - n2) + n2));
    }

    CHECK(l2_major_bound(Int(9), 2, Int(5), Int(4), Int(5)) == 36);
    CHECK(l2_major_bound(Int(3), 2, Int(2), Int(1), Int(2)) == 9);
    for (long pn : {3L, 5L, 7L, 9L})
        CHECK(l2_major_bound(Int(pn), 1, Int(1), Int(0), Int(1)) == 2 * pn);
    CHECK_THROWS_AS(l2_major_bound(Int(9), 5, Int(5), Int(4), Int(5)), std::domain_error);

    // equality case, the reduced |<v>| <= |P cap N| case, and a reversed instance
    CHECK(quotient_count_check(Int(9), 2, Int(3), Int(9), Int(3)));
    CHECK(quotient_count_check(Int(9), 2, Int(3), Int(9), Int(9)));
    CHECK_FALSE(quotient_count_check(Int(9), 2, Int(9), Int(9), Int(3)));

    CHECK(cyclic_cartan(Int(9), 2).m == mat({{5, 4}, {4, 5}}));
    CHECK(cyclic_cartan(Int(7), 3).m == mat({{3, 2, 2}, {2, 3, 2}, {2, 2, 3}}));
    CHECK(cyclic_cartan(Int(7), 1).m == mat({{7}}));
    CHECK_THROWS_AS(cyclic_cartan(Int(9), 5), std::domain_error);
}

TEST_CASE("invalid model parameters are rejected") {
    CHECK_THROWS_AS(semidirect_model(3, 1, 3), std::domain_error);  // not a unit
    CHECK_THROWS_AS(semidirect_model(2, 2, 3), std::domain_error);  // ring needs odd p
    CHECK_THROWS_AS(metacyclic_model(3, 1, 1, 2, 2, 3, 2, 2), std::domain_error);
    CHECK_THROWS_AS(metacyclic_model(3, 1, 1, 4, 2, 2, 2, 2), std::domain_error);
}
