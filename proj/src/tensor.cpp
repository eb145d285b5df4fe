#include "moelab/tensor.hpp"

#include <algorithm>
#include <set>

namespace moelab {

TensorLayout::TensorLayout(std::vector<TensorAxis> axes) : axes_(std::move(axes)) {
    for (const auto& a : axes_) {
        if (a.dim < 2) throw shape_error("TensorLayout: axis dimension must be at least 2");
        total_ *= a.dim;
    }
}

int TensorLayout::axis_position(int particle_id, int dof_index) const {
    for (std::size_t i = 0; i < axes_.size(); ++i)
        if (axes_[i].particle_id == particle_id && axes_[i].dof_index == dof_index)
            return static_cast<int>(i);
    return -1;
}

int TensorLayout::flatten(const std::vector<int>& digits) const {
    int idx = 0;
    for (std::size_t i = 0; i < axes_.size(); ++i) idx = idx * axes_[i].dim + digits[i];
    return idx;
}

std::vector<int> TensorLayout::unflatten(int index) const {
    std::vector<int> digits(axes_.size(), 0);
    for (std::size_t i = axes_.size(); i-- > 0;) {
        digits[i] = index % axes_[i].dim;
        index /= axes_[i].dim;
    }
    return digits;
}

TensorDensity dof_trace_dist(const TensorDensity& rho, int particle_id, int dof_index) {
    const int pos = rho.layout.axis_position(particle_id, dof_index);
    if (pos < 0) throw domain_error("dof_trace_dist: no such particle/DoF axis");
    const auto& axes = rho.layout.axes();

    std::vector<TensorAxis> kept;
    for (std::size_t i = 0; i < axes.size(); ++i)
        if (static_cast<int>(i) != pos) kept.push_back(axes[i]);
    TensorLayout out_layout(kept);

    DenseMatrix out(out_layout.total_dim(), out_layout.total_dim());
    const int n = rho.layout.total_dim();
    for (int r = 0; r < n; ++r) {
        const auto dr = rho.layout.unflatten(r);
        std::vector<int> kr;
        for (std::size_t i = 0; i < dr.size(); ++i)
            if (static_cast<int>(i) != pos) kr.push_back(dr[i]);
        const int orow = out_layout.flatten(kr);
        for (int c = 0; c < n; ++c) {
            const auto dc = rho.layout.unflatten(c);
            if (dc[static_cast<std::size_t>(pos)] != dr[static_cast<std::size_t>(pos)]) continue;
            std::vector<int> kc;
            for (std::size_t i = 0; i < dc.size(); ++i)
                if (static_cast<int>(i) != pos) kc.push_back(dc[i]);
            out.at(orow, out_layout.flatten(kc)) += rho.matrix.at(r, c);
        }
    }
    return {std::move(out_layout), std::move(out)};
}

TensorDensity to_tensor_density(const StateVector& state) {
    const ModelSpace& space = state.space();
    std::set<int> locs;
    for (const auto& [k, _] : state.amplitudes()) {
        locs.insert(k.first.location);
        locs.insert(k.second.location);
    }
    if (locs.size() != 2)
        throw shape_error("to_tensor_density: state must occupy exactly two locations");

    std::vector<TensorAxis> axes;
    for (int p = 0; p < 2; ++p)
        for (const auto& d : space.dofs()) axes.push_back({p, d.index, d.size()});
    TensorLayout layout(axes);

    const int lo = *locs.begin();
    const int hi = *std::next(locs.begin());
    std::vector<cplx> psi(static_cast<std::size_t>(layout.total_dim()), 0.0);
    for (const auto& [k, amp] : state.amplitudes()) {
        if (k.first.location == k.second.location)
            throw shape_error("to_tensor_density: doubly-occupied ket has no tensor relabeling");
        const SingleParticleLabel& at_lo = k.first.location == lo ? k.first : k.second;
        const SingleParticleLabel& at_hi = k.first.location == hi ? k.first : k.second;
        std::vector<int> digits;
        for (const SingleParticleLabel* l : {&at_lo, &at_hi}) {
            if (l->dofs.size() != static_cast<std::size_t>(space.dof_count()))
                throw shape_error("to_tensor_density: partial labels have no tensor relabeling");
            for (const auto& [_, v] : l->dofs) digits.push_back(v);
        }
        psi[static_cast<std::size_t>(layout.flatten(digits))] = amp;
    }
    return to_tensor_density_pure(psi, layout);
}

TensorDensity to_tensor_density_pure(const std::vector<cplx>& amplitudes, TensorLayout layout) {
    const int n = layout.total_dim();
    if (static_cast<int>(amplitudes.size()) != n)
        throw shape_error("to_tensor_density_pure: amplitude count mismatch");
    DenseMatrix rho(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            rho.at(r, c) = amplitudes[static_cast<std::size_t>(r)] *
                           std::conj(amplitudes[static_cast<std::size_t>(c)]);
    return {std::move(layout), std::move(rho)};
}

}  // namespace moelab
