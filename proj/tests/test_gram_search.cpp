#include "doctest.h"

#include "helpers.hpp"
#include "kbound/errors.hpp"
#include "kbound/gram.hpp"
#include "kbound/gram_search.hpp"
#include "kbound/lattice.hpp"
#include "kbound/qforms.hpp"

using namespace kbound;
using namespace kbound::gram_search;
using testutil::mat;

namespace {

// sum of v v^T over the witness rows must reproduce the target
bool witness_matches(const Decomposition& d, const IMat& m) {
    IMat sum(m.rows(), m.cols());
    for (const auto& v : d.rows) {
        if (static_cast<int>(v.size()) != m.cols()) return false;
        bool nonzero = false;
        for (long c : v) nonzero = nonzero || c != 0;
        if (!nonzero) return false;
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) sum(i, j) += Int(v[i]) * v[j];
    }
    return sum == m;
}

} // namespace

TEST_CASE("maximal row counts on small fixtures") {
    {
        SearchResult r = max_k(GramMatrix(mat({{2, 1}, {1, 2}})));
        CHECK(r.k == 3);
        CHECK(r.optimal);
        CHECK(witness_matches(r.witness, mat({{2, 1}, {1, 2}})));
    }
    {
        SearchResult r = max_k(GramMatrix(mat({{5, 4}, {4, 5}})));
        CHECK(r.k == 6);
        CHECK(r.optimal);
        CHECK(witness_matches(r.witness, mat({{5, 4}, {4, 5}})));
    }
    {
        SearchResult r = max_k(GramMatrix(mat({{5, 1}, {1, 2}})));
        CHECK(r.k == 6);
        CHECK(r.optimal);
    }
    {
        // identity: k equals the rank
        SearchResult r = max_k(GramMatrix(IMat::identity(3)));
        CHECK(r.k == 3);
    }
    {
        // zero matrix: nothing to decompose
        SearchResult r = max_k(GramMatrix(IMat(2, 2)));
        CHECK(r.k == 0);
        CHECK(r.witness.rows.empty());
    }
}

TEST_CASE("enumeration at the maximum") {
    {
        Enumeration e = all_max_decompositions(GramMatrix(mat({{2, 1}, {1, 2}})), 3);
        CHECK(e.complete);
        REQUIRE(e.decompositions.size() == 1);
        CHECK(witness_matches(e.decompositions[0], mat({{2, 1}, {1, 2}})));
        CHECK(equivalence_classes(GramMatrix(mat({{2, 1}, {1, 2}})), e.decompositions) == 1);
    }
    {
        Enumeration e = all_max_decompositions(GramMatrix(mat({{5, 4}, {4, 5}})), 6);
        CHECK(e.complete);
        REQUIRE(e.decompositions.size() == 1);
        CHECK(equivalence_classes(GramMatrix(mat({{5, 4}, {4, 5}})), e.decompositions) == 1);
    }
    {
        // above the maximum nothing exists
        Enumeration e = all_max_decompositions(GramMatrix(mat({{2, 1}, {1, 2}})), 4);
        CHECK(e.complete);
        CHECK(e.decompositions.empty());
    }
}

TEST_CASE("reference search agrees on tiny matrices") {
    for (const auto& rows : {std::vector<std::vector<long>>{{2, 1}, {1, 2}},
                             {{5, 4}, {4, 5}},
                             {{3, 0}, {0, 3}},
                             {{2, 0}, {0, 2}},
                             {{4, 2}, {2, 4}},
                             {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}},
                             {{1, 1}, {1, 1}}}) {
        GramMatrix g(mat(rows));
        CHECK(max_k(g).k == max_k_reference(g));
    }
    CHECK_THROWS_AS(max_k_reference(GramMatrix(IMat::identity(5))), CapExceeded);
}

TEST_CASE("row count is a congruence invariant") {
    IMat m = mat({{5, 4}, {4, 5}});
    IMat s = mat({{1, 0}, {1, -1}});
    IMat moved = s * m * s.transpose();
    CHECK(max_k(GramMatrix(m)).k == max_k(GramMatrix(moved)).k);

    IMat s3 = mat({{1, 2, 0}, {0, 1, 0}, {3, 0, 1}});
    IMat a3 = mat({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}});
    CHECK(max_k(GramMatrix(a3)).k == max_k(GramMatrix(s3 * a3 * s3.transpose())).k);
}

TEST_CASE("zero rows do not change the row count") {
    IMat padded = mat({{2, 1, 0}, {1, 2, 0}, {0, 0, 0}});
    CHECK(max_k(GramMatrix(padded)).k == 3);
}

TEST_CASE("budget exhaustion reports a valid partial answer") {
    GramMatrix g(mat({{5, 4}, {4, 5}}));
    SearchResult r = max_k(g, 3);
    CHECK_FALSE(r.optimal);
    CHECK(r.k <= 6);
    CHECK(r.nodes <= 3 + 1);
}

TEST_CASE("entry cap") {
    IMat big = mat({{2000000, 0}, {0, 1}});
    CHECK_THROWS_AS(max_k(GramMatrix(big)), CapExceeded);
}

TEST_CASE("quick upper bound by form pairing") {
    GramMatrix g(mat({{2, 1}, {1, 2}}));
    CHECK(quick_upper_bound(g, qforms::dynkin_a(2)) == 3);
    CHECK_THROWS_AS(quick_upper_bound(g, qforms::dynkin_a(3)), std::domain_error);
    // forms with minimum below one are rejected
    CHECK_THROWS_AS(quick_upper_bound(g, qforms::from_scaled_gram(mat({{1, 0}, {0, 1}}), Int(2))),
                    std::domain_error);
}

TEST_CASE("signed permutation symmetries") {
    auto a = signed_automorphisms(GramMatrix(mat({{2, 1}, {1, 2}})));
    CHECK(a.size() == 4);
    auto b = signed_automorphisms(GramMatrix(mat({{2, 0}, {0, 3}})));
    CHECK(b.size() == 4);
    auto c = signed_automorphisms(GramMatrix(mat({{5, 1}, {1, 2}})));
    CHECK(c.size() == 2); // identity and global sign flip
}
