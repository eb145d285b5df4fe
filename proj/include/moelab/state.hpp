#pragma once

#include <map>

#include "moelab/space.hpp"

namespace moelab {

// One-particle vector: sparse map from labels to amplitudes. Appears as the
// leftover of single-particle projections.
using OneParticleVector = std::map<SingleParticleLabel, cplx>;

// Spatial-Gram times DoF-delta overlap between two single-particle labels.
// Both labels must carry the same set of DoF indices.
cplx single_particle_overlap(const ModelSpace& space, const SingleParticleLabel& a,
                             const SingleParticleLabel& b);

// Same rule, but labels carrying different DoF-index sets are orthogonal:
// partial assignments are distinct basis elements, never comparable to full
// ones. This is the overlap used inside ket-level inner products.
cplx label_overlap(const ModelSpace& space, const SingleParticleLabel& a,
                   const SingleParticleLabel& b);

cplx one_particle_inner(const ModelSpace& space, const OneParticleVector& a,
                        const OneParticleVector& b);

// Exchange-symmetrized sparse amplitude map over canonical two-particle kets.
class StateVector {
public:
    StateVector(Statistics statistics, SpacePtr space)
        : statistics_(statistics), space_(std::move(space)) {}

    Statistics statistics() const { return statistics_; }
    const ModelSpace& space() const { return *space_; }
    const SpacePtr& space_ptr() const { return space_; }
    const std::map<CanonicalKet, cplx>& amplitudes() const { return amps_; }
    bool empty() const { return amps_.empty(); }
    std::size_t term_count() const { return amps_.size(); }

    // Canonicalizes the raw pair, folds the exchange sign into the amplitude
    // and accumulates. Fermionic identical pairs are annihilated.
    void add_term(const SingleParticleLabel& a, const SingleParticleLabel& b, cplx amplitude);
    void add_term(const CanonicalKet& ket, cplx amplitude);

    cplx amplitude(const CanonicalKet& ket) const;

    void scale(cplx factor);
    void prune(double tol = kPruneTol);

private:
    Statistics statistics_;
    SpacePtr space_;
    std::map<CanonicalKet, cplx> amps_;
};

// <bra|ket> under the exchange-symmetric rule
//   <p,q|a,b> = <p|a><q|b> + eta <p|b><q|a>.
cplx symmetric_inner_product(const ModelSpace& space, Statistics statistics,
                             const CanonicalKet& bra, const CanonicalKet& ket);

// Bilinear extension to whole states.
cplx symmetric_inner_product(const StateVector& bra, const StateVector& ket);

double state_norm(const StateVector& state);
StateVector normalize_state(const StateVector& state);

// Partial projection <probe| applied to a two-particle ket: a one-particle
// leftover with the exchange sign on the second slot.
OneParticleVector project_ket(const ModelSpace& space, Statistics statistics,
                              const SingleParticleLabel& probe, const CanonicalKet& ket,
                              cplx amplitude);

struct SingleParticleProjection {
    OneParticleVector conditional;  // normalized leftover state
    double probability = 0.0;       // p_k = <Pi_k>/2
};

// Projective single-particle measurement on a normalized state.
SingleParticleProjection project_single_particle(const StateVector& state,
                                                 const SingleParticleLabel& probe);

// Applies the resolved one-particle identity; returns the state scaled by
// exactly 2 when the declared basis is complete. Self-check operation.
StateVector one_particle_identity_apply(const StateVector& state);

// <outcome_a, outcome_b | state> with fully specified outcomes.
cplx joint_measurement_amplitude(const StateVector& state, const SingleParticleLabel& outcome_a,
                                 const SingleParticleLabel& outcome_b);

}  // namespace moelab
