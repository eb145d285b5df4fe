#pragma once

#include <string>
#include <vector>

#include "moelab/dense.hpp"

namespace moelab {

// Outcome of a monogamy-inequality check for one bipartite measure.
struct MonogamyReport {
    std::string measure;
    double e_ab = 0.0;
    double e_ac = 0.0;
    double e_a_bc = 0.0;  // joint-bipartition entanglement (the bound)
    double bound = 0.0;
    bool holds = false;
    bool maximal_violation = false;
};

// (sigma_y x sigma_y) conj(rho) (sigma_y x sigma_y) on a 4x4 density.
DenseMatrix spin_flip(const DenseMatrix& rho);

// Throws domain_error unless rho is Hermitian, unit-trace and PSD within tol.
void validate_two_qubit_density(const DenseMatrix& rho, double tol = 1e-8);

// Wootters concurrence of a two-qubit density matrix.
double concurrence(const DenseMatrix& rho);

struct NegativityResult {
    double negativity = 0.0;
    double log_negativity = 0.0;  // log2(1 + 2 negativity)
    std::vector<double> pt_eigenvalues;  // ascending
};

NegativityResult negativity_lognegativity(const DenseMatrix& rho);

// -sum lambda ln lambda over the spectrum, natural logarithm.
double von_neumann_entropy(const DenseMatrix& rho);

// CKW inequality check on a normalized pure three-qubit state (8 amplitudes,
// qubit order A,B,C, row-major). The pure-state bipartite tangle is
// 4 det(rho_A).
MonogamyReport ckw_check(const std::vector<cplx>& psi);

// Generic monogamy verdict from two pairwise values and the measure maximum.
MonogamyReport moe_report(double e_pair_1, double e_pair_2, double e_max,
                          const std::string& measure = "");

}  // namespace moelab
