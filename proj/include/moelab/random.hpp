#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "moelab/dense.hpp"
#include "moelab/state.hpp"

namespace moelab {

// Deterministic splitmix64 stream with explicit seeding. The algorithm name
// is recorded in reports so runs stay auditable.
class SeededGenerator {
public:
    explicit SeededGenerator(std::uint64_t seed) : state_(seed), seed_(seed) {}

    static constexpr const char* algorithm() { return "splitmix64"; }
    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64();
    double uniform();                   // [0, 1)
    double uniform(double lo, double hi);
    double gaussian();                  // standard normal, Box-Muller
    cplx gaussian_cplx();
    int uniform_int(int n);             // [0, n)

    // Independent per-task stream derived from (seed, task index).
    SeededGenerator split(std::uint64_t task_index) const;

private:
    std::uint64_t state_;
    std::uint64_t seed_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Haar-distributed pure three-qubit state via normalized complex Gaussians.
std::vector<cplx> random_pure_three_qubit(SeededGenerator& gen);

// Random canonicalized state over the declared space, normalized by the
// symmetric norm. Amplitudes land on a random ket subset that may include
// doubly-occupied bosonic kets.
StateVector random_two_particle_state(SeededGenerator& gen, const SpacePtr& space,
                                      Statistics statistics);

// Random state with one particle at each of two given locations; optionally
// with every particle's `frozen_dof` pinned to a fixed eigenvalue per
// location, which removes coherences in that DoF.
StateVector random_one_per_location_state(SeededGenerator& gen, const SpacePtr& space,
                                          Statistics statistics, int location_a, int location_b,
                                          int frozen_dof = 0);

// Naive nested-loop index contraction over an explicitly enumerated basis.
// Ground truth for every trace/embedding equivalence test.
DenseMatrix brute_force_reduced(const DenseMatrix& dense_full, const std::vector<int>& dims,
                                const std::vector<int>& keep_axes);

}  // namespace moelab
