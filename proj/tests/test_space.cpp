#include <doctest.h>

#include "moelab/random.hpp"
#include "test_helpers.hpp"

using namespace moelab;
using namespace moelab::testing;

TEST_SUITE("space") {
    TEST_CASE("canonicalize orders bosonic pairs with positive sign") {
        auto space = spin_space();
        const auto a = label(space, "s2", {{1, "up"}});
        const auto b = label(space, "s1", {{1, "down"}});
        const auto res = canonicalize_ket(a, b, Statistics::boson);
        REQUIRE(res.has_value());
        CHECK(res->ket.first == b);
        CHECK(res->ket.second == a);
        CHECK(res->sign == +1);
    }

    TEST_CASE("canonicalize picks up the fermionic exchange sign") {
        auto space = spin_space();
        const auto a = label(space, "s2", {{1, "up"}});
        const auto b = label(space, "s1", {{1, "down"}});
        const auto res = canonicalize_ket(a, b, Statistics::fermion);
        REQUIRE(res.has_value());
        CHECK(res->ket.first == b);
        CHECK(res->sign == -1);
    }

    TEST_CASE("fermionic pair of identical labels is annihilated") {
        auto space = spin_space();
        const auto a = label(space, "s1", {{1, "down"}});
        CHECK_FALSE(canonicalize_ket(a, a, Statistics::fermion).has_value());
        CHECK(canonicalize_ket(a, a, Statistics::boson).has_value());
    }

    TEST_CASE("undeclared identifiers are rejected") {
        auto space = spin_space();
        CHECK_THROWS_AS(make_label(*space, "nowhere", {{1, "down"}}), domain_error);
        CHECK_THROWS_AS(make_label(*space, "s1", {{1, "sideways"}}), domain_error);
        CHECK_THROWS_AS(make_label(*space, "s1", {{7, "down"}}), domain_error);

        SingleParticleLabel bad;
        bad.location = 5;
        CHECK_THROWS_AS(validate_label(*space, bad), domain_error);
    }

    TEST_CASE("space invariants") {
        CHECK_THROWS_AS(LocationSet({"s1"}), domain_error);
        CHECK_THROWS_AS(LocationSet({"s1", "s1"}), domain_error);
        CHECK_THROWS_AS(ModelSpace(LocationSet({"s1", "s2"}),
                                   std::vector<DoFDomain>{{1, "spin", {"down"}}}),
                        domain_error);
        CHECK_THROWS_AS(ModelSpace(LocationSet({"s1", "s2"}),
                                   std::vector<DoFDomain>{{1, "spin", {"down", "down"}}}),
                        domain_error);

        LocationSet locs({"s1", "s2"});
        CHECK_THROWS_AS(locs.set_overlap({cplx(2.0), cplx(0.0), cplx(0.0), cplx(1.0)}), domain_error);
        CHECK_THROWS_AS(locs.set_overlap({cplx(1.0), cplx(0.1), cplx(0.3), cplx(1.0)}), domain_error);
        locs.set_overlap({cplx(1.0), cplx(0.3), cplx(0.3), cplx(1.0)});
        CHECK(approx(locs.overlap(0, 1), cplx(0.3)));
    }

    TEST_CASE("partial labels compare as distinct from full assignments") {
        auto space = toy_space();
        const auto full = label(space, "s1", {{1, "H"}, {2, "down"}});
        const auto partial = full.without_dof(1);
        CHECK(partial != full);
        CHECK(partial.dofs.size() == 1);
        CHECK(label_overlap(*space, partial, full) == cplx(0.0));
    }

    TEST_CASE("exchange symmetry: either ordering yields identical canonical storage") {
        auto space = toy_space();
        const auto labels = enumerate_full_labels(*space);
        SeededGenerator gen(7);
        for (int trial = 0; trial < 50; ++trial) {
            const auto& a = labels[static_cast<std::size_t>(gen.uniform_int(static_cast<int>(labels.size())))];
            const auto& b = labels[static_cast<std::size_t>(gen.uniform_int(static_cast<int>(labels.size())))];
            const cplx amp = gen.gaussian_cplx();
            for (Statistics stats : {Statistics::boson, Statistics::fermion}) {
                if (stats == Statistics::fermion && a == b) continue;
                StateVector forward(stats, space);
                StateVector backward(stats, space);
                forward.add_term(a, b, amp);
                backward.add_term(b, a, amp * static_cast<double>(eta(stats)));
                CHECK(forward.amplitudes() == backward.amplitudes());
            }
        }
    }
}
