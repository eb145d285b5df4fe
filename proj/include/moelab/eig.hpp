#pragma once

#include <vector>

#include "moelab/dense.hpp"

namespace moelab {

inline constexpr int kMaxEigDim = 64;

struct HermitianEigen {
    std::vector<double> values;  // ascending
    DenseMatrix vectors;         // unitary, columns match values
};

// Cyclic complex Jacobi rotations. Input is symmetrized internally; inputs
// that deviate from Hermitian by more than `herm_tol` are rejected.
HermitianEigen hermitian_eigs(const DenseMatrix& m, double herm_tol = 1e-10);

// Eigenvalue multiset of a general square complex matrix via Householder
// Hessenberg reduction and Wilkinson-shifted QR iteration.
std::vector<cplx> general_eigs(const DenseMatrix& m);

// Greedy nearest-match of an eigenvalue multiset against expected values.
// Returns the largest matched distance, or a huge value on size mismatch.
double multiset_match_error(std::vector<cplx> actual, std::vector<cplx> expected);

}  // namespace moelab
