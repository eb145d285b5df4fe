#pragma once

#include <vector>

#include "moelab/dense.hpp"
#include "moelab/state.hpp"

namespace moelab {

// One tensor factor of a distinguishable-particle layout.
struct TensorAxis {
    int particle_id = 0;  // 0-based
    int dof_index = 0;    // 1-based within the particle
    int dim = 0;
};

// Row-major tensor layout over ordered distinguishable particles.
class TensorLayout {
public:
    TensorLayout() = default;
    explicit TensorLayout(std::vector<TensorAxis> axes);

    const std::vector<TensorAxis>& axes() const { return axes_; }
    int total_dim() const { return total_; }
    int axis_position(int particle_id, int dof_index) const;  // -1 when absent

    int flatten(const std::vector<int>& digits) const;
    std::vector<int> unflatten(int index) const;

private:
    std::vector<TensorAxis> axes_;
    int total_ = 1;
};

// Dense density matrix over a distinguishable tensor layout.
struct TensorDensity {
    TensorLayout layout;
    DenseMatrix matrix;
};

// Standard index contraction over one DoF of one distinguishable particle.
TensorDensity dof_trace_dist(const TensorDensity& rho, int particle_id, int dof_index);

// Relabels a one-particle-per-location two-particle state onto the
// distinguishable tensor layout (locations in ascending order become
// particles 0 and 1). Every ket must have exactly one particle at each of
// the two lowest-index occupied locations.
TensorDensity to_tensor_density(const StateVector& state);
TensorDensity to_tensor_density_pure(const std::vector<cplx>& amplitudes, TensorLayout layout);

}  // namespace moelab
