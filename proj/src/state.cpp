#include "moelab/state.hpp"

#include <cmath>

namespace moelab {

cplx single_particle_overlap(const ModelSpace& space, const SingleParticleLabel& a,
                             const SingleParticleLabel& b) {
    if (a.dofs.size() != b.dofs.size())
        throw shape_error("single_particle_overlap: labels carry different DoF sets");
    for (std::size_t i = 0; i < a.dofs.size(); ++i)
        if (a.dofs[i].first != b.dofs[i].first)
            throw shape_error("single_particle_overlap: labels carry different DoF sets");
    return label_overlap(space, a, b);
}

cplx label_overlap(const ModelSpace& space, const SingleParticleLabel& a,
                   const SingleParticleLabel& b) {
    if (a.dofs.size() != b.dofs.size()) return 0.0;
    for (std::size_t i = 0; i < a.dofs.size(); ++i) {
        if (a.dofs[i].first != b.dofs[i].first) return 0.0;
        if (a.dofs[i].second != b.dofs[i].second) return 0.0;
    }
    return space.locations().overlap(a.location, b.location);
}

cplx one_particle_inner(const ModelSpace& space, const OneParticleVector& a,
                        const OneParticleVector& b) {
    cplx acc = 0.0;
    for (const auto& [la, va] : a)
        for (const auto& [lb, vb] : b) acc += std::conj(va) * vb * label_overlap(space, la, lb);
    return acc;
}

void StateVector::add_term(const SingleParticleLabel& a, const SingleParticleLabel& b,
                           cplx amplitude) {
    validate_label(*space_, a);
    validate_label(*space_, b);
    auto canon = canonicalize_ket(a, b, statistics_);
    if (!canon) return;  // fermionic exclusion
    add_term(canon->ket, amplitude * static_cast<double>(canon->sign));
}

void StateVector::add_term(const CanonicalKet& ket, cplx amplitude) {
    cplx& slot = amps_[ket];
    slot += amplitude;
    if (std::abs(slot) < kPruneTol) amps_.erase(ket);
}

cplx StateVector::amplitude(const CanonicalKet& ket) const {
    auto it = amps_.find(ket);
    return it == amps_.end() ? cplx(0.0) : it->second;
}

void StateVector::scale(cplx factor) {
    for (auto& [_, v] : amps_) v *= factor;
    prune();
}

void StateVector::prune(double tol) {
    for (auto it = amps_.begin(); it != amps_.end();) {
        if (std::abs(it->second) < tol)
            it = amps_.erase(it);
        else
            ++it;
    }
}

cplx symmetric_inner_product(const ModelSpace& space, Statistics statistics,
                             const CanonicalKet& bra, const CanonicalKet& ket) {
    const cplx direct =
        label_overlap(space, bra.first, ket.first) * label_overlap(space, bra.second, ket.second);
    const cplx crossed =
        label_overlap(space, bra.first, ket.second) * label_overlap(space, bra.second, ket.first);
    return direct + static_cast<double>(eta(statistics)) * crossed;
}

cplx symmetric_inner_product(const StateVector& bra, const StateVector& ket) {
    if (&bra.space() != &ket.space() &&
        bra.space().locations().names() != ket.space().locations().names())
        throw shape_error("symmetric_inner_product: states live on different spaces");
    cplx acc = 0.0;
    for (const auto& [kb, vb] : bra.amplitudes())
        for (const auto& [kk, vk] : ket.amplitudes())
            acc += std::conj(vb) * vk *
                   symmetric_inner_product(ket.space(), ket.statistics(), kb, kk);
    return acc;
}

double state_norm(const StateVector& state) {
    const cplx n2 = symmetric_inner_product(state, state);
    return std::sqrt(std::max(0.0, n2.real()));
}

StateVector normalize_state(const StateVector& state) {
    const double n = state_norm(state);
    if (n < kPruneTol) throw degenerate_error("normalize_state: zero-norm state");
    StateVector out = state;
    out.scale(1.0 / n);
    return out;
}

OneParticleVector project_ket(const ModelSpace& space, Statistics statistics,
                              const SingleParticleLabel& probe, const CanonicalKet& ket,
                              cplx amplitude) {
    OneParticleVector out;
    const cplx h1 = label_overlap(space, probe, ket.first);
    if (std::abs(h1) > 0.0) out[ket.second] += amplitude * h1;
    const cplx h2 = label_overlap(space, probe, ket.second);
    if (std::abs(h2) > 0.0)
        out[ket.first] += amplitude * h2 * static_cast<double>(eta(statistics));
    return out;
}

SingleParticleProjection project_single_particle(const StateVector& state,
                                                 const SingleParticleLabel& probe) {
    validate_label(state.space(), probe);
    OneParticleVector leftover;
    for (const auto& [ket, amp] : state.amplitudes()) {
        for (const auto& [label, v] : project_ket(state.space(), state.statistics(), probe, ket, amp)) {
            leftover[label] += v;
            if (std::abs(leftover[label]) < kPruneTol) leftover.erase(label);
        }
    }
    const double norm2 = one_particle_inner(state.space(), leftover, leftover).real();
    SingleParticleProjection result;
    result.probability = norm2 / 2.0;
    if (norm2 > kPruneTol) {
        const double inv = 1.0 / std::sqrt(norm2);
        for (auto& [_, v] : leftover) v *= inv;
        result.conditional = std::move(leftover);
    }
    return result;
}

StateVector one_particle_identity_apply(const StateVector& state) {
    for (const auto& [ket, _] : state.amplitudes()) {
        if (ket.first.dofs.size() != static_cast<std::size_t>(state.space().dof_count()) ||
            ket.second.dofs.size() != static_cast<std::size_t>(state.space().dof_count()))
            throw domain_error(
                "one_particle_identity_apply: declared basis does not span partial labels");
    }
    StateVector out(state.statistics(), state.space_ptr());
    const double sign = static_cast<double>(eta(state.statistics()));
    for (const auto& probe : enumerate_full_labels(state.space())) {
        for (const auto& [ket, amp] : state.amplitudes()) {
            // Pi_k |a,b> = <psi_k|a> |psi_k,b> + eta <psi_k|b> |a,psi_k>
            const cplx h1 = label_overlap(state.space(), probe, ket.first);
            if (std::abs(h1) > 0.0) out.add_term(probe, ket.second, amp * h1);
            const cplx h2 = label_overlap(state.space(), probe, ket.second);
            if (std::abs(h2) > 0.0) out.add_term(ket.first, probe, amp * h2 * sign);
        }
    }
    out.prune();
    return out;
}

cplx joint_measurement_amplitude(const StateVector& state, const SingleParticleLabel& outcome_a,
                                 const SingleParticleLabel& outcome_b) {
    const int n = state.space().dof_count();
    if (outcome_a.dofs.size() != static_cast<std::size_t>(n) ||
        outcome_b.dofs.size() != static_cast<std::size_t>(n))
        throw shape_error("joint_measurement_amplitude: outcomes must assign every DoF");
    validate_label(state.space(), outcome_a);
    validate_label(state.space(), outcome_b);
    auto canon = canonicalize_ket(outcome_a, outcome_b, state.statistics());
    if (!canon) return 0.0;
    cplx acc = 0.0;
    for (const auto& [ket, amp] : state.amplitudes())
        acc += static_cast<double>(canon->sign) * amp *
               symmetric_inner_product(state.space(), state.statistics(), canon->ket, ket);
    return acc;
}

}  // namespace moelab
