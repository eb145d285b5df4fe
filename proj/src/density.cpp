#include "moelab/density.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace moelab {

void DensityOperator::add(const CanonicalKet& ket, const CanonicalKet& bra, cplx value) {
    cplx& slot = entries_[{ket, bra}];
    slot += value;
    if (std::abs(slot) < kPruneTol) entries_.erase({ket, bra});
}

cplx DensityOperator::value(const CanonicalKet& ket, const CanonicalKet& bra) const {
    auto it = entries_.find({ket, bra});
    return it == entries_.end() ? cplx(0.0) : it->second;
}

void DensityOperator::scale(cplx factor) {
    for (auto& [_, v] : entries_) v *= factor;
    prune();
}

void DensityOperator::prune(double tol) {
    for (auto it = entries_.begin(); it != entries_.end();) {
        if (std::abs(it->second) < tol)
            it = entries_.erase(it);
        else
            ++it;
    }
}

double DensityOperator::hermiticity_defect() const {
    double worst = 0.0;
    for (const auto& [key, v] : entries_) {
        auto mirror = entries_.find({key.second, key.first});
        const cplx other = mirror == entries_.end() ? cplx(0.0) : mirror->second;
        worst = std::max(worst, std::abs(v - std::conj(other)));
    }
    return worst;
}

void SingleParticleOperator::add(const SingleParticleLabel& ket, const SingleParticleLabel& bra,
                                 cplx value) {
    cplx& slot = entries_[{ket, bra}];
    slot += value;
    if (std::abs(slot) < kPruneTol) entries_.erase({ket, bra});
}

cplx SingleParticleOperator::value(const SingleParticleLabel& ket,
                                   const SingleParticleLabel& bra) const {
    auto it = entries_.find({ket, bra});
    return it == entries_.end() ? cplx(0.0) : it->second;
}

void SingleParticleOperator::scale(cplx factor) {
    for (auto& [_, v] : entries_) v *= factor;
    prune();
}

void SingleParticleOperator::prune(double tol) {
    for (auto it = entries_.begin(); it != entries_.end();) {
        if (std::abs(it->second) < tol)
            it = entries_.erase(it);
        else
            ++it;
    }
}

cplx SingleParticleOperator::trace() const {
    cplx t = 0.0;
    for (const auto& [key, v] : entries_) t += v * label_overlap(*space_, key.second, key.first);
    return t;
}

std::vector<SingleParticleLabel> SingleParticleOperator::support() const {
    std::set<SingleParticleLabel> labels;
    for (const auto& [key, _] : entries_) {
        labels.insert(key.first);
        labels.insert(key.second);
    }
    return {labels.begin(), labels.end()};
}

DenseMatrix SingleParticleOperator::to_dense(const std::vector<SingleParticleLabel>& basis) const {
    const int n = static_cast<int>(basis.size());
    DenseMatrix out(n, n);
    std::map<SingleParticleLabel, int> pos;
    for (int i = 0; i < n; ++i) pos[basis[static_cast<std::size_t>(i)]] = i;
    for (const auto& [key, v] : entries_) {
        auto ik = pos.find(key.first);
        auto ib = pos.find(key.second);
        if (ik == pos.end() || ib == pos.end())
            throw shape_error("SingleParticleOperator::to_dense: label outside basis");
        out.at(ik->second, ib->second) += v;
    }
    return out;
}

DensityOperator outer_product(const StateVector& state) {
    DensityOperator rho(state.statistics(), state.space_ptr());
    for (const auto& [k, vk] : state.amplitudes())
        for (const auto& [b, vb] : state.amplitudes()) rho.add(k, b, vk * std::conj(vb));
    return rho;
}

cplx density_trace(const DensityOperator& rho) {
    cplx t = 0.0;
    for (const auto& [key, v] : rho.entries())
        t += v * symmetric_inner_product(rho.space(), rho.statistics(), key.second, key.first);
    return t;
}

DensityOperator normalize_density(const DensityOperator& rho) {
    const cplx t = density_trace(rho);
    if (std::abs(t) < 1e-12) throw degenerate_error("normalize_density: near-zero trace");
    DensityOperator out = rho;
    out.scale(1.0 / t);
    return out;
}

SingleParticleOperator normalize_density(const SingleParticleOperator& op) {
    const cplx t = op.trace();
    if (std::abs(t) < 1e-12) throw degenerate_error("normalize_density: near-zero trace");
    SingleParticleOperator out = op;
    out.scale(1.0 / t);
    return out;
}

ProjectorSpec::ProjectorSpec(Statistics statistics, SpacePtr space, std::vector<CanonicalKet> kets)
    : statistics_(statistics), space_(std::move(space)), kets_(std::move(kets)) {
    std::set<CanonicalKet> seen(kets_.begin(), kets_.end());
    if (seen.size() != kets_.size()) throw domain_error("ProjectorSpec: spanning kets must be distinct");
    norms_.reserve(kets_.size());
    for (std::size_t i = 0; i < kets_.size(); ++i) {
        const double n = symmetric_inner_product(*space_, statistics_, kets_[i], kets_[i]).real();
        if (n < kPruneTol) throw domain_error("ProjectorSpec: spanning ket with zero norm");
        norms_.push_back(n);
        for (std::size_t j = 0; j < i; ++j)
            if (std::abs(symmetric_inner_product(*space_, statistics_, kets_[j], kets_[i])) > 1e-12)
                throw domain_error("ProjectorSpec: spanning kets must be mutually orthogonal");
    }
}

ProjectorSpec build_one_per_location_projector(Statistics statistics, const SpacePtr& space,
                                               int location_a, int location_b,
                                               const std::vector<BasisRestriction>& restrictions) {
    if (location_a == location_b)
        throw domain_error("build_one_per_location_projector: locations must be distinct");
    const auto allowed = [&](int loc, int dof_index, int ordinal) {
        for (const auto& r : restrictions)
            if (r.location == loc && r.dof_index == dof_index)
                return std::find(r.value_ordinals.begin(), r.value_ordinals.end(), ordinal) !=
                       r.value_ordinals.end();
        return true;
    };
    const auto labels_at = [&](int loc) {
        std::vector<SingleParticleLabel> out;
        for (const auto& l : enumerate_full_labels_at(*space, loc)) {
            bool ok = true;
            for (const auto& [idx, v] : l.dofs)
                if (!allowed(loc, idx, v)) ok = false;
            if (ok) out.push_back(l);
        }
        return out;
    };

    std::vector<CanonicalKet> kets;
    for (const auto& la : labels_at(location_a))
        for (const auto& lb : labels_at(location_b)) {
            auto canon = canonicalize_ket(la, lb, statistics);
            if (canon) kets.push_back(canon->ket);
        }
    return ProjectorSpec(statistics, space, std::move(kets));
}

namespace {

// <k_j| rho |k_l> via symmetric inner products.
cplx sandwich(const DensityOperator& rho, const CanonicalKet& left, const CanonicalKet& right) {
    cplx acc = 0.0;
    for (const auto& [key, w] : rho.entries())
        acc += w * symmetric_inner_product(rho.space(), rho.statistics(), left, key.first) *
               symmetric_inner_product(rho.space(), rho.statistics(), key.second, right);
    return acc;
}

}  // namespace

ProjectionResult apply_projector(const DensityOperator& rho, const ProjectorSpec& proj) {
    const auto& kets = proj.kets();
    const auto& norms = proj.ket_norms();
    double weight = 0.0;
    for (std::size_t j = 0; j < kets.size(); ++j)
        weight += (sandwich(rho, kets[j], kets[j]) / norms[j]).real();
    if (weight < 1e-12) throw postselection_error("apply_projector: projected weight below threshold");

    DensityOperator out(rho.statistics(), rho.space_ptr());
    for (std::size_t j = 0; j < kets.size(); ++j)
        for (std::size_t l = 0; l < kets.size(); ++l) {
            const cplx v = sandwich(rho, kets[j], kets[l]) / (norms[j] * norms[l]);
            if (std::abs(v) > 0.0) out.add(kets[j], kets[l], v / weight);
        }
    out.prune();
    return {std::move(out), weight};
}

StateProjectionResult apply_projector(const StateVector& state, const ProjectorSpec& proj) {
    const auto& kets = proj.kets();
    const auto& norms = proj.ket_norms();
    StateVector projected(state.statistics(), state.space_ptr());
    double weight = 0.0;
    for (std::size_t j = 0; j < kets.size(); ++j) {
        cplx overlap = 0.0;
        for (const auto& [k, amp] : state.amplitudes())
            overlap += amp * symmetric_inner_product(state.space(), state.statistics(), kets[j], k);
        if (std::abs(overlap) > 0.0) projected.add_term(kets[j], overlap / norms[j]);
        weight += std::norm(overlap) / norms[j];
    }
    if (weight < 1e-12) throw postselection_error("apply_projector: projected weight below threshold");
    projected.scale(1.0 / std::sqrt(weight));
    return {std::move(projected), weight};
}

SingleParticleOperator particle_trace(const DensityOperator& rho, std::optional<RegionSpec> region) {
    const ModelSpace& space = rho.space();
    if (region) {
        const int m = region->location;
        if (m < 0 || m >= space.locations().size())
            throw domain_error("particle_trace: undeclared region location");
        bool touches = false;
        for (const auto& [key, _] : rho.entries()) {
            const auto& k = key.first;
            if (k.first.location == m || k.second.location == m) touches = true;
        }
        if (!touches) throw degenerate_error("particle_trace: no support at the region location");
    }

    std::vector<SingleParticleLabel> probes;
    for (int loc = 0; loc < space.locations().size(); ++loc) {
        if (region && loc == region->location) continue;
        auto at = enumerate_full_labels_at(space, loc);
        probes.insert(probes.end(), at.begin(), at.end());
    }

    SingleParticleOperator out(rho.space_ptr());
    for (const auto& probe : probes) {
        for (const auto& [key, w] : rho.entries()) {
            const auto& [k, b] = key;
            const OneParticleVector vk = project_ket(space, rho.statistics(), probe, k, 1.0);
            if (vk.empty()) continue;
            const OneParticleVector vb = project_ket(space, rho.statistics(), probe, b, 1.0);
            for (const auto& [lk, ak] : vk)
                for (const auto& [lb, ab] : vb) out.add(lk, lb, w * ak * std::conj(ab));
        }
    }
    if (!region) out.scale(0.5);
    out.prune();
    if (region && std::abs(out.trace()) < 1e-12)
        throw degenerate_error("particle_trace: degenerate localized trace");
    return out;
}

DensityOperator dof_trace_indist(const DensityOperator& rho, int location, int dof_index) {
    const ModelSpace& space = rho.space();
    if (location < 0 || location >= space.locations().size())
        throw domain_error("dof_trace_indist: undeclared location");
    space.dof(dof_index);  // validates the index

    bool carried = false;
    for (const auto& [key, _] : rho.entries()) {
        for (const SingleParticleLabel* l :
             {&key.first.first, &key.first.second, &key.second.first, &key.second.second})
            if (l->has_dof(dof_index)) carried = true;
    }
    if (!carried) throw domain_error("dof_trace_indist: DoF already absent from every particle");

    const double sign_eta = static_cast<double>(eta(rho.statistics()));
    const Statistics stats = rho.statistics();

    // Slot terms: removing the DoF from slot u of the ket and slot v of the
    // bra, weighted by eta^(u+v) and the spatial Gram factors of the probes.
    struct Strip {
        CanonicalKet ket;
        cplx factor;
        int canon_sign;
    };
    const auto strips = [&](const CanonicalKet& pair) {
        std::vector<Strip> out;
        const SingleParticleLabel* slots[2] = {&pair.first, &pair.second};
        for (int u = 0; u < 2; ++u) {
            const SingleParticleLabel& hit = *slots[u];
            if (!hit.has_dof(dof_index)) continue;
            const cplx g = space.locations().overlap(location, hit.location);
            if (std::abs(g) == 0.0) continue;
            SingleParticleLabel stripped = hit.without_dof(dof_index);
            const SingleParticleLabel& other = *slots[1 - u];
            auto canon = u == 0 ? canonicalize_ket(stripped, other, stats)
                                : canonicalize_ket(other, stripped, stats);
            if (!canon) continue;
            const double slot_sign = u == 0 ? 1.0 : sign_eta;
            out.push_back({canon->ket, g * slot_sign, canon->sign});
        }
        return out;
    };

    DensityOperator out(rho.statistics(), rho.space_ptr());
    for (const auto& [key, w] : rho.entries()) {
        const auto ket_strips = strips(key.first);
        if (ket_strips.empty()) continue;
        const auto bra_strips = strips(key.second);
        for (const auto& ks : ket_strips)
            for (const auto& bs : bra_strips)
                out.add(ks.ket, bs.ket,
                        w * ks.factor * std::conj(bs.factor) *
                            static_cast<double>(ks.canon_sign * bs.canon_sign));
    }
    out.prune();
    return out;
}

DenseMatrix embed_as_qudits(const DensityOperator& rho, const std::vector<QuditSlot>& slots) {
    const ModelSpace& space = rho.space();
    if (slots.size() != 2) throw shape_error("embed_as_qudits: exactly two slots expected");

    std::vector<QuditSlot> resolved = slots;
    int dim = 1;
    for (auto& s : resolved) {
        const DoFDomain& d = space.dof(s.dof_index);
        if (s.value_ordinals.empty()) {
            s.value_ordinals.resize(static_cast<std::size_t>(d.size()));
            for (int i = 0; i < d.size(); ++i) s.value_ordinals[static_cast<std::size_t>(i)] = i;
        }
        dim *= static_cast<int>(s.value_ordinals.size());
    }

    const auto index_of = [&](const CanonicalKet& k) {
        const SingleParticleLabel* labels[2] = {&k.first, &k.second};
        bool used[2] = {false, false};
        int idx = 0;
        for (const auto& s : resolved) {
            const SingleParticleLabel* match = nullptr;
            for (int i = 0; i < 2; ++i) {
                if (used[i] || labels[i]->location != s.location) continue;
                if (match) throw shape_error("embed_as_qudits: two particles at one slot location");
                match = labels[i];
                used[i] = true;
            }
            if (!match) throw shape_error("embed_as_qudits: no particle at slot location");
            if (match->dofs.size() != 1 || match->dofs[0].first != s.dof_index)
                throw shape_error("embed_as_qudits: slot particle must carry exactly the slot DoF");
            const auto it = std::find(s.value_ordinals.begin(), s.value_ordinals.end(),
                                      match->dofs[0].second);
            if (it == s.value_ordinals.end())
                throw shape_error("embed_as_qudits: eigenvalue outside the slot ordering");
            idx = idx * static_cast<int>(s.value_ordinals.size()) +
                  static_cast<int>(it - s.value_ordinals.begin());
        }
        if (!used[0] || !used[1]) throw shape_error("embed_as_qudits: unmatched particle in ket");
        return idx;
    };

    DenseMatrix out(dim, dim);
    for (const auto& [key, w] : rho.entries()) out.at(index_of(key.first), index_of(key.second)) += w;
    return out;
}

SingleParticleOperator collapse_bare_particle(const DensityOperator& rho, int location) {
    SingleParticleOperator out(rho.space_ptr());
    const auto pick_other = [&](const CanonicalKet& k) -> const SingleParticleLabel& {
        const bool first_bare = k.first.location == location && k.first.dofs.empty();
        const bool second_bare = k.second.location == location && k.second.dofs.empty();
        if (first_bare == second_bare)
            throw shape_error("collapse_bare_particle: expected exactly one bare label at location");
        return first_bare ? k.second : k.first;
    };
    for (const auto& [key, w] : rho.entries()) out.add(pick_other(key.first), pick_other(key.second), w);
    out.prune();
    return out;
}

}  // namespace moelab
