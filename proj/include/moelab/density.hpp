#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "moelab/dense.hpp"
#include "moelab/state.hpp"

namespace moelab {

// Sparse two-particle density operator over canonical ket/bra pairs.
class DensityOperator {
public:
    using Key = std::pair<CanonicalKet, CanonicalKet>;

    DensityOperator(Statistics statistics, SpacePtr space)
        : statistics_(statistics), space_(std::move(space)) {}

    Statistics statistics() const { return statistics_; }
    const ModelSpace& space() const { return *space_; }
    const SpacePtr& space_ptr() const { return space_; }
    const std::map<Key, cplx>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    void add(const CanonicalKet& ket, const CanonicalKet& bra, cplx value);
    cplx value(const CanonicalKet& ket, const CanonicalKet& bra) const;

    void scale(cplx factor);
    void prune(double tol = kPruneTol);

    // Largest |entry(k,b) - conj(entry(b,k))|.
    double hermiticity_defect() const;

private:
    Statistics statistics_;
    SpacePtr space_;
    std::map<Key, cplx> entries_;
};

// One-particle operator appearing as the output of particle traces.
class SingleParticleOperator {
public:
    using Key = std::pair<SingleParticleLabel, SingleParticleLabel>;

    explicit SingleParticleOperator(SpacePtr space) : space_(std::move(space)) {}

    const ModelSpace& space() const { return *space_; }
    const std::map<Key, cplx>& entries() const { return entries_; }

    void add(const SingleParticleLabel& ket, const SingleParticleLabel& bra, cplx value);
    cplx value(const SingleParticleLabel& ket, const SingleParticleLabel& bra) const;
    void scale(cplx factor);
    void prune(double tol = kPruneTol);

    cplx trace() const;
    // Sorted list of labels appearing on either side.
    std::vector<SingleParticleLabel> support() const;
    // Dense matrix over the given label basis.
    DenseMatrix to_dense(const std::vector<SingleParticleLabel>& basis) const;

private:
    SpacePtr space_;
    std::map<Key, cplx> entries_;
};

// |state><state| with kappa kappa* weights.
DensityOperator outer_product(const StateVector& state);

// Trace via Tr|k><b| = <b|k> under the symmetric inner product.
cplx density_trace(const DensityOperator& rho);

DensityOperator normalize_density(const DensityOperator& rho);
SingleParticleOperator normalize_density(const SingleParticleOperator& op);

// Projector onto the span of mutually orthogonal canonical kets.
class ProjectorSpec {
public:
    ProjectorSpec(Statistics statistics, SpacePtr space, std::vector<CanonicalKet> kets);

    const std::vector<CanonicalKet>& kets() const { return kets_; }
    const std::vector<double>& ket_norms() const { return norms_; }
    const ModelSpace& space() const { return *space_; }
    Statistics statistics() const { return statistics_; }

private:
    Statistics statistics_;
    SpacePtr space_;
    std::vector<CanonicalKet> kets_;
    std::vector<double> norms_;  // <k|k> of each spanning ket
};

// Restricts enumerated eigenvalues of one DoF at one location when building
// basis projectors.
struct BasisRestriction {
    int location = 0;
    int dof_index = 0;
    std::vector<int> value_ordinals;
};

// Projector spanning the kets with exactly one particle at each of the two
// locations, all DoF values enumerated (optionally restricted per location).
ProjectorSpec build_one_per_location_projector(Statistics statistics, const SpacePtr& space,
                                               int location_a, int location_b,
                                               const std::vector<BasisRestriction>& restrictions = {});

struct ProjectionResult {
    DensityOperator density;  // Pi rho Pi / weight
    double weight = 0.0;      // Tr(Pi rho)
};

ProjectionResult apply_projector(const DensityOperator& rho, const ProjectorSpec& proj);

struct StateProjectionResult {
    StateVector state;   // Pi |psi> / sqrt(weight)
    double weight = 0.0;
};

StateProjectionResult apply_projector(const StateVector& state, const ProjectorSpec& proj);

// Localized-trace region: the location whose reduced state is kept.
struct RegionSpec {
    int location = 0;
};

// One-particle reduction. Without a region: (1/2) sum_k <psi_k|rho|psi_k>
// over the complete single-particle basis. With a region M: the probe sum
// runs over the complementary locations, leaving the unnormalized reduced
// operator of the particle localized at M; normalize_density applies N_M.
SingleParticleOperator particle_trace(const DensityOperator& rho,
                                      std::optional<RegionSpec> region = std::nullopt);

// DoF trace-out at one location for indistinguishable particles: the
// eta-signed four-term slot sum that removes dof_index from particles at the
// location, weighting each term by the spatial Gram factors. Output kets
// carry partial labels; the caller renormalizes.
DensityOperator dof_trace_indist(const DensityOperator& rho, int location, int dof_index);

// Qudit slot for embedding reduced operators as dense matrices.
struct QuditSlot {
    int location = 0;
    int dof_index = 0;
    // Defaults to the declared eigenvalue order of the DoF domain.
    std::vector<int> value_ordinals;
};

// Dense matrix in the tensor basis ordered by slot sequence. Every ket must
// have exactly one particle per slot location whose only remaining DoF is
// the slot's dof_index.
DenseMatrix embed_as_qudits(const DensityOperator& rho, const std::vector<QuditSlot>& slots);

// Drops a bare (fully traced) particle label at `location` from every entry,
// yielding the one-particle operator carried by the other slot.
SingleParticleOperator collapse_bare_particle(const DensityOperator& rho, int location);

}  // namespace moelab
