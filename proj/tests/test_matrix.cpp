#include "doctest.h"

#include "helpers.hpp"
#include "kbound/matrix.hpp"

using namespace kbound;
using testutil::mat;

TEST_CASE("basic matrix algebra") {
    IMat a = mat({{1, 2}, {3, 4}});
    IMat b = mat({{0, 1}, {1, 0}});
    CHECK(a * b == mat({{2, 1}, {4, 3}}));
    CHECK(a + b == mat({{1, 3}, {4, 4}}));
    CHECK(a - a == IMat(2, 2));
    CHECK(a.transpose() == mat({{1, 3}, {2, 4}}));
    CHECK(IMat::identity(2) * a == a);
    CHECK((a * Int(2)) == mat({{2, 4}, {6, 8}}));
    CHECK(a.is_symmetric() == false);
    CHECK(mat({{1, 2}, {2, 1}}).is_symmetric());
    CHECK(IMat(3, 3).is_zero());
}

TEST_CASE("kronecker product") {
    IMat a = mat({{1, 2}, {3, 4}});
    IMat b = mat({{0, 5}, {6, 7}});
    IMat k = kron(a, b);
    REQUIRE(k.rows() == 4);
    CHECK(k == mat({{0, 5, 0, 10}, {6, 7, 12, 14}, {0, 15, 0, 20}, {18, 21, 24, 28}}));
}

TEST_CASE("positive semidefinite and definite tests") {
    CHECK(is_psd(mat({{2, 1}, {1, 2}})));
    CHECK(is_psd(mat({{1, 1}, {1, 1}})));
    CHECK(is_psd(IMat(2, 2)));
    CHECK_FALSE(is_psd(mat({{1, 2}, {2, 1}})));
    CHECK_FALSE(is_psd(mat({{-1}})));
    CHECK(is_positive_definite(mat({{2, 1}, {1, 2}})));
    CHECK_FALSE(is_positive_definite(mat({{1, 1}, {1, 1}})));
}

TEST_CASE("determinants") {
    CHECK(det_bareiss(mat({{2, 1}, {1, 2}})) == 3);
    CHECK(det_bareiss(mat({{5, 4}, {4, 5}})) == 9);
    CHECK(det_bareiss(mat({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}})) == 0);
    CHECK(det_bareiss(IMat::identity(4)) == 1);
}

TEST_CASE("unimodular inverse") {
    IMat s = mat({{1, 0}, {1, -1}});
    IMat inv = unimodular_inverse(s);
    CHECK(s * inv == IMat::identity(2));
    CHECK(inv * s == IMat::identity(2));
    CHECK_THROWS_AS(unimodular_inverse(mat({{2, 0}, {0, 1}})), std::domain_error);
}
