#include "doctest.h"

#include "helpers.hpp"
#include "kbound/errors.hpp"
#include "kbound/gram.hpp"
#include "kbound/lattice.hpp"

using namespace kbound;
using namespace kbound::lattice;
using testutil::mat;

TEST_CASE("lll reduces and records the transform") {
    GramMatrix g(mat({{10, 7}, {7, 5}}));
    ReductionResult r = lll(g);
    CHECK(r.transform * r.reduced.m * r.transform.transpose() == g.m);
    CHECK(det_bareiss(r.reduced.m) == det_bareiss(g.m));
    // reduced diagonal cannot exceed the input's
    CHECK(r.reduced.m(0, 0) <= 10);
}

TEST_CASE("prune drops zero rows and factors the kernel") {
    IMat padded = mat({{2, 1, 0}, {1, 2, 0}, {0, 0, 0}});
    ReductionResult r = prune(GramMatrix(padded));
    CHECK(r.dropped_rows == std::vector<int>{2});
    CHECK(r.reduced.size() == 2);
    CHECK(r.transform * r.reduced.m * r.transform.transpose() == padded);

    // rank-deficient without literal zero rows
    IMat dep = mat({{1, 1}, {1, 1}});
    ReductionResult r2 = prune(GramMatrix(dep));
    CHECK(r2.reduced.size() == 1);
    CHECK(r2.reduced.m(0, 0) == 1);
    CHECK(r2.transform * r2.reduced.m * r2.transform.transpose() == dep);
}

TEST_CASE("congruence testing") {
    CHECK(congruent(GramMatrix(mat({{5, 4}, {4, 5}})), GramMatrix(mat({{5, 1}, {1, 2}}))));
    CHECK(congruent(GramMatrix(mat({{2, 1}, {1, 2}})), GramMatrix(mat({{2, -1}, {-1, 2}}))));
    // same determinant, different minimum
    CHECK_FALSE(congruent(GramMatrix(mat({{2, 1}, {1, 2}})), GramMatrix(mat({{1, 0}, {0, 3}}))));
    // determinant mismatch rejected immediately
    CHECK_FALSE(congruent(GramMatrix(mat({{2, 0}, {0, 2}})), GramMatrix(mat({{1, 0}, {0, 3}}))));
    CHECK_THROWS_AS(congruent(GramMatrix(IMat::identity(7)), GramMatrix(IMat::identity(7))),
                    CapExceeded);
}

TEST_CASE("smith normal form") {
    CHECK(smith_normal_form(mat({{2, 0}, {0, 3}})) == std::vector<Int>{1, 6});
    CHECK(smith_normal_form(mat({{1, 1}, {1, 1}})) == std::vector<Int>{1, 0});
    CHECK(smith_normal_form(mat({{5, 4}, {4, 5}})) == std::vector<Int>{1, 9});
    auto d = smith_normal_form(mat({{2, 4}, {6, 8}}));
    CHECK(d == std::vector<Int>{2, 4}); // det -8, gcd 2
}

TEST_CASE("short vector enumeration") {
    auto v = vectors_up_to_norm(mat({{2, 1}, {1, 2}}), Int(2));
    REQUIRE(v.size() == 3);
    for (const auto& [x, norm] : v) {
        CHECK(norm == 2);
        // canonical sign: first nonzero coordinate positive
        for (const Int& c : x) {
            if (c != 0) {
                CHECK(c > 0);
                break;
            }
        }
    }
    CHECK(vectors_up_to_norm(mat({{2, 1}, {1, 2}}), Int(1)).empty());
}
