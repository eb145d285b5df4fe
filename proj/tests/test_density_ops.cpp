#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "moelab/circuit.hpp"
#include "moelab/eig.hpp"
#include "moelab/random.hpp"
#include "moelab/tensor.hpp"
#include "test_helpers.hpp"

using namespace moelab;
using namespace moelab::testing;

namespace {

// Dense two-particle matrix over the orthonormalized canonical-ket support.
DenseMatrix two_particle_dense(const DensityOperator& rho) {
    std::set<CanonicalKet> kets;
    for (const auto& [key, _] : rho.entries()) {
        kets.insert(key.first);
        kets.insert(key.second);
    }
    std::vector<CanonicalKet> basis(kets.begin(), kets.end());
    std::vector<double> norms;
    for (const auto& k : basis)
        norms.push_back(symmetric_inner_product(rho.space(), rho.statistics(), k, k).real());

    const int n = static_cast<int>(basis.size());
    DenseMatrix m(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            m.at(r, c) = rho.value(basis[static_cast<std::size_t>(r)], basis[static_cast<std::size_t>(c)]) *
                         std::sqrt(norms[static_cast<std::size_t>(r)] * norms[static_cast<std::size_t>(c)]);
    return m;
}

// Dense matrix of a one-particle-per-location density over explicit label
// bases for the two sites (ket.first lives on basis1 by canonical order).
DenseMatrix dense_two_site(const DensityOperator& rho, const std::vector<SingleParticleLabel>& basis1,
                           const std::vector<SingleParticleLabel>& basis2) {
    const auto pos = [](const std::vector<SingleParticleLabel>& basis, const SingleParticleLabel& l) {
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (basis[i] == l) return static_cast<int>(i);
        throw shape_error("dense_two_site: label outside basis");
    };
    const int d2 = static_cast<int>(basis2.size());
    const int dim = static_cast<int>(basis1.size()) * d2;
    DenseMatrix m(dim, dim);
    for (const auto& [key, v] : rho.entries()) {
        const int r = pos(basis1, key.first.first) * d2 + pos(basis2, key.first.second);
        const int c = pos(basis1, key.second.first) * d2 + pos(basis2, key.second.second);
        m.at(r, c) += v;
    }
    return m;
}

StateVector bell_state(const SpacePtr& space) {
    StateVector psi(Statistics::boson, space);
    const double inv = 1.0 / std::sqrt(2.0);
    psi.add_term(make_label(*space, "s1", {{1, "down"}}), make_label(*space, "s2", {{1, "up"}}), inv);
    psi.add_term(make_label(*space, "s1", {{1, "up"}}), make_label(*space, "s2", {{1, "down"}}), inv);
    return psi;
}

ProjectorSpec li_projector(const SpacePtr& space) {
    const int s1 = space->locations().index_of("s1");
    const int s2 = space->locations().index_of("s2");
    return build_one_per_location_projector(
        Statistics::boson, space, s1, s2,
        {{s1, kPathDof, {static_cast<int>(Path::L), static_cast<int>(Path::D)}},
         {s2, kPathDof, {static_cast<int>(Path::R), static_cast<int>(Path::U)}}});
}

}  // namespace

TEST_SUITE("density-ops") {
    TEST_CASE("outer product") {
        auto space = spin_space();
        StateVector single(Statistics::boson, space);
        const auto s1d = label(space, "s1", {{1, "down"}});
        const auto s2u = label(space, "s2", {{1, "up"}});
        single.add_term(s1d, s2u, 1.0);
        const DensityOperator rho = outer_product(single);
        REQUIRE(rho.entries().size() == 1);
        CHECK(approx(density_trace(rho), cplx(1.0)));

        StateVector two(Statistics::boson, space);
        const double inv = 1.0 / std::sqrt(2.0);
        two.add_term(s1d, s2u, inv);
        two.add_term(label(space, "s1", {{1, "up"}}), label(space, "s2", {{1, "down"}}), inv);
        const DensityOperator rho2 = outer_product(two);
        CHECK(rho2.entries().size() == 4);
        for (const auto& [_, v] : rho2.entries()) CHECK(approx(std::abs(v), 0.5));

        // interferometer state: every entry is the product of amplitudes
        const StateVector li = build_li_state(PhaseConfig{0.6, 1.4, 0.2, 2.0});
        const DensityOperator rho_li = outer_product(li);
        for (const auto& [kk, kv] : li.amplitudes())
            for (const auto& [bk, bv] : li.amplitudes())
                CHECK(approx(rho_li.value(kk, bk), kv * std::conj(bv), 1e-14));
    }

    TEST_CASE("one-per-location projector spans") {
        CHECK(li_projector(li_space()).kets().size() == 16);

        const SpacePtr full = li_space();
        CHECK(build_one_per_location_projector(Statistics::boson, full, 0, 1).kets().size() == 64);
        CHECK(build_one_per_location_projector(Statistics::boson, toy_space(), 0, 1).kets().size() == 16);
        CHECK(build_one_per_location_projector(Statistics::boson, spin_space(), 0, 1).kets().size() == 4);
        CHECK_THROWS_AS(build_one_per_location_projector(Statistics::boson, spin_space(), 1, 1),
                        domain_error);
    }

    TEST_CASE("projection of the interferometer state") {
        const PhaseConfig phases{0.2, 1.7, 0.9, 2.4};
        const StateVector psi = build_li_state(phases);
        const SpacePtr space = psi.space_ptr();
        const ProjectorSpec proj = li_projector(space);

        const auto [rho_p, weight] = apply_projector(outer_product(psi), proj);
        CHECK(approx(weight, 0.5, 1e-12));

        const cplx k1 = phases.kappa1();
        const cplx k2 = phases.kappa2();
        const cplx plus = (k1 + k2) / (2.0 * std::sqrt(2.0));
        const cplx cross = cplx(0, 1) * (k1 - k2) / (2.0 * std::sqrt(2.0));

        const auto mode = [&](Path p, Spin s) { return mode_label(*space, Mode{p, s}); };
        const CanonicalKet ldrd{mode(Path::L, Spin::down), mode(Path::R, Spin::down)};
        const CanonicalKet duuu{mode(Path::D, Spin::up), mode(Path::U, Spin::up)};
        const CanonicalKet durd{mode(Path::D, Spin::up), mode(Path::R, Spin::down)};
        const CanonicalKet lduu{mode(Path::L, Spin::down), mode(Path::U, Spin::up)};

        CHECK(approx(rho_p.value(ldrd, ldrd), plus * std::conj(plus), 1e-12));
        CHECK(approx(rho_p.value(ldrd, duuu), plus * std::conj(-plus), 1e-12));
        CHECK(approx(rho_p.value(durd, lduu), cross * std::conj(cross), 1e-12));
        CHECK(approx(rho_p.value(ldrd, durd), plus * std::conj(cross), 1e-12));

        // the state route agrees with the density route
        const auto projected_state = apply_projector(psi, proj);
        CHECK(approx(projected_state.weight, 0.5, 1e-12));
        CHECK(approx(projected_state.state.amplitude(ldrd), plus, 1e-12));
        CHECK(approx(projected_state.state.amplitude(duuu), -plus, 1e-12));
        CHECK(approx(projected_state.state.amplitude(durd), cross, 1e-12));
        CHECK(approx(projected_state.state.amplitude(lduu), cross, 1e-12));
        CHECK(density_max_diff(outer_product(projected_state.state), rho_p) <= 1e-12);

        // doubly-occupied terms are annihilated exactly
        for (const auto& [key, _] : rho_p.entries()) {
            CHECK(key.first.first.location != key.first.second.location);
            CHECK(key.second.first.location != key.second.second.location);
        }

        // idempotency on the span
        const auto twice = apply_projector(rho_p, proj);
        CHECK(approx(twice.weight, 1.0, 1e-12));
        CHECK(density_max_diff(twice.density, rho_p) <= 1e-12);
    }

    TEST_CASE("projector spanning the full support leaves a density unchanged") {
        auto space = spin_space();
        SeededGenerator gen(43);
        const StateVector psi = random_two_particle_state(gen, space, Statistics::boson);
        const DensityOperator rho = outer_product(psi);

        std::vector<CanonicalKet> all;
        const auto labels = enumerate_full_labels(*space);
        for (std::size_t i = 0; i < labels.size(); ++i)
            for (std::size_t j = i; j < labels.size(); ++j)
                all.push_back(canonicalize_ket(labels[i], labels[j], Statistics::boson)->ket);
        const ProjectorSpec full(Statistics::boson, space, all);

        const auto [projected, weight] = apply_projector(rho, full);
        CHECK(approx(weight, 1.0, 1e-10));
        CHECK(density_max_diff(projected, rho) <= 1e-10);
    }

    TEST_CASE("projection onto an orthogonal subspace fails") {
        auto space = spin_space();
        StateVector psi(Statistics::boson, space);
        psi.add_term(label(space, "s1", {{1, "down"}}), label(space, "s2", {{1, "down"}}), 1.0);
        const ProjectorSpec proj(Statistics::boson, space,
                                 {CanonicalKet{label(space, "s1", {{1, "up"}}),
                                               label(space, "s2", {{1, "up"}})}});
        CHECK_THROWS_AS(apply_projector(outer_product(psi), proj), postselection_error);
    }

    TEST_CASE("particle trace over the full basis") {
        auto space = spin_space();
        const auto phi = label(space, "s1", {{1, "down"}});
        const auto chi = label(space, "s2", {{1, "up"}});
        StateVector psi(Statistics::boson, space);
        psi.add_term(phi, chi, 1.0);

        const SingleParticleOperator reduced = particle_trace(outer_product(psi));
        CHECK(approx(reduced.trace(), cplx(1.0), 1e-12));
        CHECK(approx(reduced.value(phi, phi), cplx(0.5), 1e-12));
        CHECK(approx(reduced.value(chi, chi), cplx(0.5), 1e-12));
        CHECK(approx(reduced.value(phi, chi), cplx(0.0)));
    }

    TEST_CASE("localized particle trace keeps the region's reduced state") {
        auto space = spin_space();
        const int s1 = space->locations().index_of("s1");

        StateVector product(Statistics::boson, space);
        const auto s1d = label(space, "s1", {{1, "down"}});
        product.add_term(s1d, label(space, "s2", {{1, "up"}}), 1.0);
        const auto reduced = normalize_density(particle_trace(outer_product(product), RegionSpec{s1}));
        REQUIRE(reduced.entries().size() == 1);
        CHECK(approx(reduced.value(s1d, s1d), cplx(1.0), 1e-12));
        // pure state at the region: zero entropy
        double entropy = 0.0;
        for (double l : hermitian_eigs(reduced.to_dense(reduced.support())).values)
            if (l > 0.0) entropy -= l * std::log(l);
        CHECK(approx(entropy, 0.0, 1e-12));

        const auto mixed =
            normalize_density(particle_trace(outer_product(bell_state(space)), RegionSpec{s1}));
        const auto basis = mixed.support();
        REQUIRE(basis.size() == 2);
        const DenseMatrix m = mixed.to_dense(basis);
        CHECK(approx(m.at(0, 0), cplx(0.5), 1e-12));
        CHECK(approx(m.at(1, 1), cplx(0.5), 1e-12));
        CHECK(approx(m.at(0, 1), cplx(0.0), 1e-12));
        double entropy2 = 0.0;
        for (double l : hermitian_eigs(m).values)
            if (l > 0.0) entropy2 -= l * std::log(l);
        CHECK(approx(entropy2, std::log(2.0), 1e-10));
    }

    TEST_CASE("localized trace with no support at the region fails") {
        auto space = three_site_space();
        StateVector psi(Statistics::boson, space);
        psi.add_term(label(space, "s1", {{1, "down"}}), label(space, "s2", {{1, "up"}}), 1.0);
        CHECK_THROWS_AS(particle_trace(outer_product(psi), RegionSpec{2}), degenerate_error);
    }

    TEST_CASE("DoF trace on an uncorrelated product ket is a relabeling") {
        auto space = li_space();
        const auto mode = [&](Path p, Spin s) { return mode_label(*space, Mode{p, s}); };
        StateVector psi(Statistics::boson, space);
        psi.add_term(mode(Path::L, Spin::down), mode(Path::R, Spin::down), 1.0);

        const DensityOperator traced =
            dof_trace_indist(outer_product(psi), space->locations().index_of("s1"), kPathDof);
        REQUIRE(traced.entries().size() == 1);
        CHECK(approx(density_trace(traced), cplx(1.0), 1e-12));
        const auto& key = traced.entries().begin()->first;
        CHECK(key.first.first.dofs.size() == 1);   // spin only at s1
        CHECK(key.first.second.dofs.size() == 2);  // untouched at s2
    }

    TEST_CASE("double path trace reproduces the reduced spin-spin table") {
        const PhaseConfig phases{1.3, 0.4, 2.9, 0.6};
        const StateVector psi = build_li_state(phases);
        const SpacePtr space = psi.space_ptr();
        const int s1 = space->locations().index_of("s1");
        const int s2 = space->locations().index_of("s2");

        const auto [rho_p, weight] = apply_projector(outer_product(psi), li_projector(space));
        const DensityOperator reduced =
            normalize_density(dof_trace_indist(dof_trace_indist(rho_p, s1, kPathDof), s2, kPathDof));

        const cplx k1 = phases.kappa1();
        const cplx k2 = phases.kappa2();
        const cplx plus = (k1 + k2) / (2.0 * std::sqrt(2.0));
        const cplx cross = cplx(0, 1) * (k1 - k2) / (2.0 * std::sqrt(2.0));

        const auto spin_only = [&](const char* loc, Spin s) {
            SingleParticleLabel l;
            l.location = space->locations().index_of(loc);
            l.dofs.emplace_back(kSpinDof, static_cast<int>(s));
            return l;
        };
        const std::vector<std::pair<CanonicalKet, cplx>> table{
            {{spin_only("s1", Spin::down), spin_only("s2", Spin::down)}, plus},
            {{spin_only("s1", Spin::down), spin_only("s2", Spin::up)}, cross},
            {{spin_only("s1", Spin::up), spin_only("s2", Spin::down)}, cross},
            {{spin_only("s1", Spin::up), spin_only("s2", Spin::up)}, -plus},
        };
        for (const auto& [kk, kv] : table)
            for (const auto& [bk, bv] : table)
                CHECK(approx(reduced.value(kk, bk), kv * std::conj(bv), 1e-12));

        CHECK(approx(density_trace(reduced), cplx(1.0), 1e-12));
        CHECK(reduced.hermiticity_defect() <= 1e-12);
        const auto eigs = hermitian_eigs(two_particle_dense(reduced)).values;
        CHECK(eigs.front() >= -1e-10);

        // tracing s2 before s1 gives the same operator
        const DensityOperator swapped =
            normalize_density(dof_trace_indist(dof_trace_indist(rho_p, s2, kPathDof), s1, kPathDof));
        CHECK(density_max_diff(reduced, swapped) <= 1e-12);
    }

    TEST_CASE("DoF trace errors") {
        auto space = spin_space();
        StateVector psi(Statistics::boson, space);
        psi.add_term(label(space, "s1", {{1, "down"}}), label(space, "s2", {{1, "up"}}), 1.0);
        DensityOperator rho = outer_product(psi);
        CHECK_THROWS_AS(dof_trace_indist(rho, 0, 3), domain_error);

        const DensityOperator once = dof_trace_indist(rho, 0, 1);
        const DensityOperator twice = dof_trace_indist(once, 1, 1);
        CHECK_THROWS_AS(dof_trace_indist(twice, 0, 1), domain_error);
    }

    TEST_CASE("uncorrelated traced DoF matches the distinguishable contraction") {
        auto space = toy_space();
        SeededGenerator gen(47);
        for (int trial = 0; trial < 40; ++trial) {
            const Statistics stats = trial % 2 ? Statistics::boson : Statistics::fermion;
            // frozen polarization per location: no coherences in the traced DoF
            const StateVector psi = random_one_per_location_state(gen, space, stats, 0, 1, 1);
            const DensityOperator traced = dof_trace_indist(outer_product(psi), 0, 1);

            const TensorDensity expected = dof_trace_dist(to_tensor_density(psi), 0, 1);

            std::vector<SingleParticleLabel> basis1;
            for (const auto& l : enumerate_full_labels_at(*space, 0)) {
                auto stripped = l.without_dof(1);
                if (std::find(basis1.begin(), basis1.end(), stripped) == basis1.end())
                    basis1.push_back(stripped);
            }
            const auto basis2 = enumerate_full_labels_at(*space, 1);
            const DenseMatrix actual = dense_two_site(traced, basis1, basis2);
            CHECK(actual.max_abs_diff(expected.matrix) <= 1e-10);
        }
    }

    TEST_CASE("iterated DoF traces differ from the localized particle trace") {
        const PhaseConfig phases{0.8, 0.15, 1.9, 2.6};
        const StateVector psi = build_li_state(phases);
        const SpacePtr space = psi.space_ptr();
        const int s1 = space->locations().index_of("s1");
        const int s2 = space->locations().index_of("s2");
        const auto [rho_p, w] = apply_projector(outer_product(psi), li_projector(space));

        const DensityOperator stripped =
            dof_trace_indist(dof_trace_indist(rho_p, s1, kPathDof), s1, kSpinDof);
        const SingleParticleOperator via_dof = normalize_density(collapse_bare_particle(stripped, s1));
        const SingleParticleOperator via_particle =
            normalize_density(particle_trace(rho_p, RegionSpec{s2}));

        CHECK(sp_op_max_diff(via_dof, via_particle) > 1e-3);

        // purity witnesses: iterated DoF stripping leaves a pure operator,
        // the particle trace of the maximally entangled pair is maximally
        // mixed on its two-dimensional support
        const auto eig_particle =
            hermitian_eigs(via_particle.to_dense(via_particle.support())).values;
        CHECK(approx(eig_particle.back(), 0.5, 1e-9));
        const auto eig_dof = hermitian_eigs(via_dof.to_dense(via_dof.support())).values;
        CHECK(approx(eig_dof.back(), 1.0, 1e-9));
    }

    TEST_CASE("normalize_density") {
        auto space = spin_space();
        StateVector psi(Statistics::boson, space);
        psi.add_term(label(space, "s1", {{1, "down"}}), label(space, "s2", {{1, "up"}}), 1.0);
        DensityOperator rho = outer_product(psi);
        rho.scale(2.0);
        const DensityOperator normed = normalize_density(rho);
        CHECK(approx(density_trace(normed), cplx(1.0), 1e-12));
        CHECK(density_max_diff(normalize_density(normed), normed) <= 1e-14);

        DensityOperator zero(Statistics::boson, space);
        CHECK_THROWS_AS(normalize_density(zero), degenerate_error);
    }

    TEST_CASE("embedding reduced operators as qudits") {
        auto space = spin_space();
        const auto s1d = label(space, "s1", {{1, "down"}});
        const auto s2d = label(space, "s2", {{1, "down"}});
        StateVector psi(Statistics::boson, space);
        psi.add_term(s1d, s2d, 1.0);
        const DenseMatrix m = embed_as_qudits(outer_product(psi), {{0, 1, {}}, {1, 1, {}}});
        CHECK(m.rows() == 4);
        CHECK(approx(m.at(0, 0), cplx(1.0)));
        CHECK(approx(m.max_abs(), 1.0));

        // slot mismatch: particles still carry two DoFs
        auto toy = toy_space();
        StateVector full(Statistics::boson, toy);
        full.add_term(label(toy, "s1", {{1, "H"}, {2, "down"}}),
                      label(toy, "s2", {{1, "V"}, {2, "up"}}), 1.0);
        CHECK_THROWS_AS(embed_as_qudits(outer_product(full), {{0, 1, {}}, {1, 1, {}}}), shape_error);
    }

    TEST_CASE("embedded spin-spin density shows the Bell pattern") {
        const PhaseConfig phases{2.2, 0.3, 1.0, 2.8};
        const auto space = li_space();
        const int s1 = 0, s2 = 1;
        const auto [rho_p, w] =
            apply_projector(outer_product(build_li_state(phases)), li_projector(space));
        const DensityOperator reduced =
            normalize_density(dof_trace_indist(dof_trace_indist(rho_p, s1, kPathDof), s2, kPathDof));
        const DenseMatrix m = embed_as_qudits(reduced, {{s1, kSpinDof, {}}, {s2, kSpinDof, {}}});

        const double a2 = std::norm(phases.kappa1() + phases.kappa2()) / 8.0;
        CHECK(approx(m.at(0, 0), cplx(a2), 1e-12));
        CHECK(approx(m.at(3, 3), cplx(a2), 1e-12));
        CHECK(approx(m.at(0, 3), cplx(-a2), 1e-12));
        CHECK(approx(m.trace(), cplx(1.0), 1e-12));
        CHECK(approx(density_trace(reduced), m.trace(), 1e-12));
    }

    TEST_CASE("mixed-slot embeddings match the relabeled dense contraction") {
        SeededGenerator gen(53);
        auto space = toy_space();
        for (int trial = 0; trial < 25; ++trial) {
            // pol frozen per location and spin frozen at s2, so both traces
            // coincide with the distinguishable contraction
            StateVector psi(Statistics::boson, space);
            {
                SeededGenerator draw = gen.split(static_cast<std::uint64_t>(trial));
                const int pol_a = draw.uniform_int(2);
                const int pol_b = draw.uniform_int(2);
                const int spin_b = draw.uniform_int(2);
                const auto& pol = space->dof(1).eigenvalues;
                const auto& spin = space->dof(2).eigenvalues;
                for (int spin_a = 0; spin_a < 2; ++spin_a)
                    psi.add_term(
                        label(space, "s1", {{1, pol[static_cast<std::size_t>(pol_a)]}, {2, spin[static_cast<std::size_t>(spin_a)]}}),
                        label(space, "s2", {{1, pol[static_cast<std::size_t>(pol_b)]}, {2, spin[static_cast<std::size_t>(spin_b)]}}),
                        draw.gaussian_cplx());
                psi = normalize_state(psi);
            }
            const DensityOperator reduced = normalize_density(
                dof_trace_indist(dof_trace_indist(outer_product(psi), 0, 1), 1, 2));
            const DenseMatrix actual = embed_as_qudits(reduced, {{0, 2, {}}, {1, 1, {}}});
            CHECK(actual.rows() == 4);
            CHECK(approx(actual.trace(), cplx(1.0), 1e-12));
            CHECK(actual.is_hermitian(1e-12));

            // oracle: contract the relabeled tensor density over the same axes
            const TensorDensity tensor = to_tensor_density(psi);
            DenseMatrix expected =
                dof_trace_dist(dof_trace_dist(tensor, 0, 1), 1, 2).matrix;  // axes (A-spin, B-pol)
            expected *= 1.0 / expected.trace();
            CHECK(actual.max_abs_diff(expected) <= 1e-10);
        }
    }

    TEST_CASE("trace outputs stay Hermitian and positive on random states") {
        SeededGenerator gen(59);
        auto space = toy_space();
        for (int trial = 0; trial < 30; ++trial) {
            const Statistics stats = trial % 2 ? Statistics::boson : Statistics::fermion;
            const StateVector psi = random_two_particle_state(gen, space, stats);
            const DensityOperator rho = outer_product(psi);

            const int dof = 1 + (trial / 2) % 2;
            bool carried = false;
            for (const auto& [key, _] : rho.entries())
                if (key.first.first.has_dof(dof)) carried = true;
            if (!carried) continue;

            const DensityOperator traced = dof_trace_indist(rho, trial % 2, dof);
            CHECK(traced.hermiticity_defect() <= 1e-12);
            if (std::abs(density_trace(traced)) > 1e-9) {
                const auto eigs = hermitian_eigs(two_particle_dense(normalize_density(traced))).values;
                CHECK(eigs.front() >= -1e-10);
            }

            const SingleParticleOperator reduced = particle_trace(rho);
            CHECK(approx(reduced.trace(), cplx(1.0), 1e-10));
            const auto eigs1 = hermitian_eigs(reduced.to_dense(reduced.support())).values;
            CHECK(eigs1.front() >= -1e-10);
        }
    }
}
