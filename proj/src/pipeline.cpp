#include "moelab/pipeline.hpp"

#include <cmath>
#include <numbers>

#include "moelab/eig.hpp"
#include "moelab/random.hpp"

namespace moelab {

namespace {

constexpr double kSqrt8 = 2.0 * std::numbers::sqrt2;

struct ExpectedCoefficients {
    cplx plus;   // (k1+k2)/(2 sqrt 2)
    cplx cross;  // i(k1-k2)/(2 sqrt 2)
};

ExpectedCoefficients expected_projected(const PhaseConfig& phases) {
    const cplx k1 = phases.kappa1();
    const cplx k2 = phases.kappa2();
    return {(k1 + k2) / kSqrt8, cplx(0, 1) * (k1 - k2) / kSqrt8};
}

}  // namespace

ReducedPair reduce_li_state(const PhaseConfig& phases) {
    const StateVector psi = build_li_state(phases);
    const SpacePtr space = psi.space_ptr();
    const int s1 = space->locations().index_of("s1");
    const int s2 = space->locations().index_of("s2");

    // Path values are location-bound in this circuit: {L,D} reach s1, {R,U}
    // reach s2; the projector enumerates exactly that operational basis.
    const std::vector<BasisRestriction> restrictions{
        {s1, kPathDof, {static_cast<int>(Path::L), static_cast<int>(Path::D)}},
        {s2, kPathDof, {static_cast<int>(Path::R), static_cast<int>(Path::U)}},
    };
    const ProjectorSpec projector =
        build_one_per_location_projector(psi.statistics(), space, s1, s2, restrictions);

    auto [rho_p, weight] = apply_projector(outer_product(psi), projector);

    const DensityOperator rho_ss = normalize_density(
        dof_trace_indist(dof_trace_indist(rho_p, s1, kPathDof), s2, kPathDof));
    const DensityOperator rho_sp = normalize_density(
        dof_trace_indist(dof_trace_indist(rho_p, s1, kPathDof), s2, kSpinDof));

    ReducedPair out{
        embed_as_qudits(rho_ss, {{s1, kSpinDof, {}}, {s2, kSpinDof, {}}}),
        embed_as_qudits(rho_sp, {{s1, kSpinDof, {}},
                                 {s2, kPathDof, {static_cast<int>(Path::R), static_cast<int>(Path::U)}}}),
        std::move(rho_p),
        weight,
    };
    return out;
}

ReproductionReport run_reproduction(const PhaseConfig& phases, double tol) {
    ReproductionReport rep;
    rep.phases = phases;
    rep.rng_algorithm = SeededGenerator::algorithm();
    rep.tolerance = tol;

    ReducedPair reduced = reduce_li_state(phases);
    const SpacePtr space = li_space();
    const int s1 = space->locations().index_of("s1");
    const int s2 = space->locations().index_of("s2");

    rep.projection_weight = reduced.weight;
    rep.projection_weight_error = std::abs(reduced.weight - 0.5);

    // Projected state: the four surviving cross-location coefficients.
    const StateVector psi = build_li_state(phases);
    const std::vector<BasisRestriction> restrictions{
        {s1, kPathDof, {static_cast<int>(Path::L), static_cast<int>(Path::D)}},
        {s2, kPathDof, {static_cast<int>(Path::R), static_cast<int>(Path::U)}},
    };
    const ProjectorSpec projector =
        build_one_per_location_projector(psi.statistics(), space, s1, s2, restrictions);
    const StateProjectionResult proj_state = apply_projector(psi, projector);

    const ExpectedCoefficients expect = expected_projected(phases);
    const auto label = [&](Path p, Spin s) { return mode_label(*space, Mode{p, s}); };
    const auto canonical = [&](Path pa, Spin sa, Path pb, Spin sb) {
        return canonicalize_ket(label(pa, sa), label(pb, sb), Statistics::boson)->ket;
    };
    const std::vector<std::pair<CanonicalKet, cplx>> expected_kets{
        {canonical(Path::L, Spin::down, Path::R, Spin::down), expect.plus},
        {canonical(Path::D, Spin::up, Path::U, Spin::up), -expect.plus},
        {canonical(Path::D, Spin::up, Path::R, Spin::down), expect.cross},
        {canonical(Path::L, Spin::down, Path::U, Spin::up), expect.cross},
    };
    for (const auto& [ket, expected_amp] : expected_kets) {
        const cplx actual = proj_state.state.amplitude(ket);
        rep.projected_coefficients.emplace_back(ket_to_string(*space, ket), actual);
        rep.projected_coeff_error =
            std::max(rep.projected_coeff_error, std::abs(actual - expected_amp));
    }

    // Doubly path-traced density vs the outer product of the reduced table.
    {
        const DensityOperator rho_ss_sparse = normalize_density(
            dof_trace_indist(dof_trace_indist(reduced.projected, s1, kPathDof), s2, kPathDof));
        const auto spin_label = [&](int loc, Spin s) {
            SingleParticleLabel l;
            l.location = loc;
            l.dofs.emplace_back(kSpinDof, static_cast<int>(s));
            return l;
        };
        const std::vector<std::pair<CanonicalKet, cplx>> reduced_kets{
            {{spin_label(s1, Spin::down), spin_label(s2, Spin::down)}, expect.plus},
            {{spin_label(s1, Spin::down), spin_label(s2, Spin::up)}, expect.cross},
            {{spin_label(s1, Spin::up), spin_label(s2, Spin::down)}, expect.cross},
            {{spin_label(s1, Spin::up), spin_label(s2, Spin::up)}, -expect.plus},
        };
        for (const auto& [kk, kv] : reduced_kets)
            for (const auto& [bk, bv] : reduced_kets)
                rep.reduced_coeff_error =
                    std::max(rep.reduced_coeff_error,
                             std::abs(rho_ss_sparse.value(kk, bk) - kv * std::conj(bv)));
    }

    rep.concurrence_spin_spin = concurrence(reduced.spin_spin);
    rep.concurrence_spin_path = concurrence(reduced.spin_path);
    rep.concurrence_error = std::max(std::abs(rep.concurrence_spin_spin - 1.0),
                                     std::abs(rep.concurrence_spin_path - 1.0));

    rep.r_eigenvalues = general_eigs(reduced.spin_spin * spin_flip(reduced.spin_spin));
    rep.r_spectrum_error = multiset_match_error(rep.r_eigenvalues, {1.0, 0.0, 0.0, 0.0});

    const NegativityResult neg_ss = negativity_lognegativity(reduced.spin_spin);
    const NegativityResult neg_sp = negativity_lognegativity(reduced.spin_path);
    rep.pt_eigenvalues_spin_spin = neg_ss.pt_eigenvalues;
    rep.pt_eigenvalues_spin_path = neg_sp.pt_eigenvalues;
    const std::vector<cplx> pt_expected{-0.5, 0.5, 0.5, 0.5};
    for (const auto& pt : {neg_ss.pt_eigenvalues, neg_sp.pt_eigenvalues}) {
        std::vector<cplx> actual(pt.begin(), pt.end());
        rep.pt_spectrum_error =
            std::max(rep.pt_spectrum_error, multiset_match_error(actual, pt_expected));
    }
    rep.negativity_spin_spin = neg_ss.negativity;
    rep.log_negativity_spin_spin = neg_ss.log_negativity;
    rep.negativity_spin_path = neg_sp.negativity;
    rep.log_negativity_spin_path = neg_sp.log_negativity;
    rep.negativity_error = std::max({std::abs(neg_ss.negativity - 0.5),
                                     std::abs(neg_sp.negativity - 0.5),
                                     std::abs(neg_ss.log_negativity - 1.0),
                                     std::abs(neg_sp.log_negativity - 1.0)});

    rep.moe_squared_concurrence =
        moe_report(rep.concurrence_spin_spin * rep.concurrence_spin_spin,
                   rep.concurrence_spin_path * rep.concurrence_spin_path, 1.0,
                   "squared-concurrence");
    rep.moe_log_negativity =
        moe_report(neg_ss.log_negativity, neg_sp.log_negativity, 1.0, "log-negativity");

    const double r_tol = std::max(tol, 1e-8);
    rep.pass = rep.projection_weight_error <= tol && rep.projected_coeff_error <= tol &&
               rep.reduced_coeff_error <= tol && rep.concurrence_error <= tol &&
               rep.r_spectrum_error <= r_tol && rep.pt_spectrum_error <= tol &&
               rep.negativity_error <= tol && rep.moe_squared_concurrence.maximal_violation &&
               !rep.moe_squared_concurrence.holds && rep.moe_log_negativity.maximal_violation;
    return rep;
}

namespace {

json complex_json(cplx v) { return json::array({v.real(), v.imag()}); }

json monogamy_json(const MonogamyReport& m) {
    return json{{"measure", m.measure},     {"e_ab", m.e_ab},
                {"e_ac", m.e_ac},           {"e_a_bc", m.e_a_bc},
                {"bound", m.bound},         {"holds", m.holds},
                {"maximal_violation", m.maximal_violation}};
}

}  // namespace

json report_to_json(const ReproductionReport& rep) {
    json j;
    j["phases"] = {{"L", rep.phases.phi_l},
                   {"D", rep.phases.phi_d},
                   {"R", rep.phases.phi_r},
                   {"U", rep.phases.phi_u}};
    if (rep.seed) {
        j["seed"] = *rep.seed;
        j["rng"] = rep.rng_algorithm;
    }
    j["projection_weight"] = rep.projection_weight;
    json coeffs = json::array();
    for (const auto& [name, v] : rep.projected_coefficients)
        coeffs.push_back(json{{"ket", name}, {"amp", complex_json(v)}});
    j["projected_coefficients"] = std::move(coeffs);
    j["concurrence"] = {{"spin_spin", rep.concurrence_spin_spin},
                        {"spin_path", rep.concurrence_spin_path}};
    json r_eigs = json::array();
    for (const cplx& v : rep.r_eigenvalues) r_eigs.push_back(complex_json(v));
    j["r_eigenvalues"] = std::move(r_eigs);
    j["pt_eigenvalues"] = {{"spin_spin", rep.pt_eigenvalues_spin_spin},
                           {"spin_path", rep.pt_eigenvalues_spin_path}};
    j["negativity"] = {{"spin_spin", rep.negativity_spin_spin},
                       {"spin_path", rep.negativity_spin_path}};
    j["log_negativity"] = {{"spin_spin", rep.log_negativity_spin_spin},
                           {"spin_path", rep.log_negativity_spin_path}};
    j["monogamy"] = json::array({monogamy_json(rep.moe_squared_concurrence),
                                 monogamy_json(rep.moe_log_negativity)});
    j["errors"] = {{"projection_weight", rep.projection_weight_error},
                   {"projected_coefficients", rep.projected_coeff_error},
                   {"reduced_coefficients", rep.reduced_coeff_error},
                   {"concurrence", rep.concurrence_error},
                   {"r_spectrum", rep.r_spectrum_error},
                   {"pt_spectrum", rep.pt_spectrum_error},
                   {"negativity", rep.negativity_error}};
    j["tolerance"] = rep.tolerance;
    j["pass"] = rep.pass;
    return j;
}

}  // namespace moelab
