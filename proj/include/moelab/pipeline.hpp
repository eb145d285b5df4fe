#pragma once

#include <optional>
#include <string>
#include <vector>

#include "moelab/circuit.hpp"
#include "moelab/density.hpp"
#include "moelab/io.hpp"
#include "moelab/measures.hpp"

namespace moelab {

// End-to-end run: build the interferometer state, post-select one particle
// per location, trace the path DoFs, embed the (spin,spin) and (spin,path)
// qubit pairs and evaluate every measure against its expected value.
struct ReproductionReport {
    PhaseConfig phases;
    std::optional<std::uint64_t> seed;  // set when phases were drawn randomly
    std::string rng_algorithm;

    double projection_weight = 0.0;
    double projection_weight_error = 0.0;
    std::vector<std::pair<std::string, cplx>> projected_coefficients;
    double projected_coeff_error = 0.0;
    double reduced_coeff_error = 0.0;  // doubly path-traced density vs expected

    double concurrence_spin_spin = 0.0;
    double concurrence_spin_path = 0.0;
    double concurrence_error = 0.0;

    std::vector<cplx> r_eigenvalues;
    double r_spectrum_error = 0.0;

    std::vector<double> pt_eigenvalues_spin_spin;
    std::vector<double> pt_eigenvalues_spin_path;
    double pt_spectrum_error = 0.0;

    double negativity_spin_spin = 0.0;
    double log_negativity_spin_spin = 0.0;
    double negativity_spin_path = 0.0;
    double log_negativity_spin_path = 0.0;
    double negativity_error = 0.0;

    MonogamyReport moe_squared_concurrence;
    MonogamyReport moe_log_negativity;

    double tolerance = 0.0;
    bool pass = false;
};

ReproductionReport run_reproduction(const PhaseConfig& phases, double tol = 1e-9);

json report_to_json(const ReproductionReport& report);

// The two reduced 4x4 matrices of the pipeline, exposed for reuse in tests.
struct ReducedPair {
    DenseMatrix spin_spin;
    DenseMatrix spin_path;
    DensityOperator projected;
    double weight = 0.0;
};

ReducedPair reduce_li_state(const PhaseConfig& phases);

}  // namespace moelab
