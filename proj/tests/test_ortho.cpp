#include "doctest.h"

#include "helpers.hpp"
#include "kbound/errors.hpp"
#include "kbound/intbasis.hpp"
#include "kbound/models.hpp"
#include "kbound/ortho.hpp"

using namespace kbound;
using namespace kbound::cyclo;
using namespace kbound::ortho;
using testutil::mat;

namespace {

// Four characters at p = 3, unit subgroup {1,2} swapping the first two.
SubsectionSpec example_spec() {
    SubsectionSpec s;
    s.mod = PrimePowerModulus(3, 1);
    s.l = 4;
    s.cartan_bar = mat({{3, 2, 2, 2}, {2, 3, 2, 2}, {2, 2, 3, 2}, {2, 2, 2, 3}});
    s.subgroup = subgroup_from_generator(s.mod, 2);
    s.action = make_action(s.subgroup, {{2, {1, 0, 2, 3}}});
    return s;
}

const IMat kExampleM = testutil::mat({{8, 1, 7, -1, 6, 0, 6, 0},
                                      {1, 2, -1, -2, 0, 0, 0, 0},
                                      {7, -1, 8, 1, 6, 0, 6, 0},
                                      {-1, -2, 1, 2, 0, 0, 0, 0},
                                      {6, 0, 6, 0, 9, 0, 6, 0},
                                      {0, 0, 0, 0, 0, 0, 0, 0},
                                      {6, 0, 6, 0, 6, 0, 9, 0},
                                      {0, 0, 0, 0, 0, 0, 0, 0}});

} // namespace

TEST_CASE("residue negation representative") {
    PrimePowerModulus m(3, 2);
    CHECK(neg_residue(1, m) == 2);
    CHECK(neg_residue(2, m) == 1);
    CHECK(neg_residue(3, m) == 3);
    CHECK(neg_residue(4, m) == 2);
    PrimePowerModulus p3(3, 1);
    for (long i = 1; i <= 3; ++i) CHECK(neg_residue(i, p3) == 1);
}

TEST_CASE("action construction and validation") {
    PrimePowerModulus m(3, 1);
    UnitSubgroup full = subgroup_from_generator(m, 2);
    auto triv = trivial_action(full, 3);
    REQUIRE(triv.size() == full.elements.size());
    for (const auto& img : triv) CHECK(img == std::vector<int>{0, 1, 2});

    auto swap = make_action(full, {{2, {1, 0, 2}}});
    CHECK(swap[0] == std::vector<int>{0, 1, 2});
    CHECK(swap[1] == std::vector<int>{1, 0, 2});

    // not a permutation
    CHECK_THROWS_AS(make_action(full, {{2, {0, 0, 2}}}), std::domain_error);
    // generator outside the subgroup
    CHECK_THROWS_AS(make_action(full, {{3, {0, 1, 2}}}), std::domain_error);
    // image order incompatible with the generator's order (2^2 = 1 must act trivially)
    UnitSubgroup seven = subgroup_from_generator(PrimePowerModulus(7, 1), 2);
    CHECK_THROWS_AS(make_action(seven, {{2, {1, 0, 2}}}), std::domain_error);
}

TEST_CASE("spec validation flags cartan problems") {
    SubsectionSpec s = example_spec();
    CHECK(validate(s).empty());

    // determinant 81 is a power of 3: no warning; perturb to lose that
    SubsectionSpec w = example_spec();
    w.cartan_bar = mat({{3, 2, 2, 2}, {2, 3, 2, 2}, {2, 2, 3, 2}, {2, 2, 2, 4}});
    w.action = trivial_action(w.subgroup, 4);
    auto warnings = validate(w);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("power") != std::string::npos);

    // cartan not invariant under the action
    SubsectionSpec bad = example_spec();
    bad.cartan_bar = mat({{3, 2, 2, 2}, {2, 4, 2, 2}, {2, 2, 3, 2}, {2, 2, 2, 3}});
    CHECK_THROWS_AS(validate(bad), ActionCartanMismatch);

    SubsectionSpec npd = example_spec();
    npd.cartan_bar = mat({{1, 2, 2, 2}, {2, 1, 2, 2}, {2, 2, 1, 2}, {2, 2, 2, 1}});
    CHECK_THROWS_AS(validate(npd), std::domain_error);
}

TEST_CASE("coefficient pair counts on the swap fixture") {
    SubsectionSpec s = example_spec();
    CHECK(w_count(0, 0, 0, 1, s) == 2);
    CHECK(w_count(0, 0, 0, 2, s) == 1);
    CHECK(w_count(0, 1, 0, 1, s) == 1);
    CHECK(w_count(0, 1, 0, 2, s) == -1);
}

TEST_CASE("contribution matrix of the swap fixture") {
    GramMatrix m = build_m(example_spec());
    CHECK(m.m == kExampleM);
    // determinism
    CHECK(build_m(example_spec()).m == kExampleM);
}

TEST_CASE("single character, trivial subgroup") {
    SubsectionSpec s;
    s.mod = PrimePowerModulus(3, 1);
    s.l = 1;
    s.cartan_bar = mat({{1}});
    s.subgroup = trivial_subgroup(s.mod);
    s.action = trivial_action(s.subgroup, 1);
    CHECK(build_m(s).m == mat({{2, 1}, {1, 2}}));
    CHECK(build_m_stable(s).m == mat({{2, 1}, {1, 2}}));
}

TEST_CASE("single character, full units of 3") {
    SubsectionSpec s;
    s.mod = PrimePowerModulus(3, 1);
    s.l = 1;
    s.cartan_bar = mat({{1}});
    s.subgroup = subgroup_from_generator(s.mod, 2);
    s.action = trivial_action(s.subgroup, 1);
    CHECK(build_m(s).m == mat({{3, 0}, {0, 0}}));
}

TEST_CASE("single character, order-2 subgroup of 9") {
    SubsectionSpec s;
    s.mod = PrimePowerModulus(3, 2);
    s.l = 1;
    s.cartan_bar = mat({{1}});
    s.subgroup = subgroup_from_generator(s.mod, 8);
    s.action = trivial_action(s.subgroup, 1);
    CHECK(build_m(s).m == mat({{3, 0, 0, 0, 0, 0},
                               {0, 2, -2, 0, 1, -1},
                               {0, -2, 2, 0, -1, 1},
                               {0, 0, 0, 0, 0, 0},
                               {0, 1, -1, 0, 2, 1},
                               {0, -1, 1, 0, 1, 2}}));
    // stable variant: Cartan (1) tensor the grouped coefficient Gram
    CHECK(build_m_stable(s).m == mat({{3, 0, 0}, {0, 2, 1}, {0, 1, 2}}));
}

TEST_CASE("stable matrix needs a trivial action") {
    SubsectionSpec s = example_spec();
    CHECK_THROWS_AS(build_m_stable(s), std::domain_error);
}

TEST_CASE("even prime is rejected for the contribution matrix") {
    SubsectionSpec s;
    s.mod = PrimePowerModulus(2, 2);
    s.l = 1;
    s.cartan_bar = mat({{1}});
    s.subgroup = trivial_subgroup(s.mod);
    s.action = trivial_action(s.subgroup, 1);
    CHECK_THROWS_AS(build_m(s), std::domain_error);
}

TEST_CASE("blocks transpose and shift correctly under the action") {
    SubsectionSpec s = example_spec();
    GramMatrix g = build_m(s);
    long mm = s.mod.m;
    for (int a = 0; a < s.l; ++a)
        for (int b = 0; b < s.l; ++b) {
            // A_ab = A_ba^T
            for (long i = 0; i < mm; ++i)
                for (long j = 0; j < mm; ++j)
                    CHECK(g.m(a * mm + i, b * mm + j) == g.m(b * mm + j, a * mm + i));
            // A_(ga)(gb) = A_ab for every subgroup element g
            for (long u : s.subgroup.elements) {
                int ga = s.perm(u)[a], gb = s.perm(u)[b];
                for (long i = 0; i < mm; ++i)
                    for (long j = 0; j < mm; ++j)
                        CHECK(g.m(a * mm + i, b * mm + j) == g.m(ga * mm + i, gb * mm + j));
            }
        }
}
