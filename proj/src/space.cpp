#include "moelab/space.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace moelab {

LocationSet::LocationSet(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.size() < 2) throw domain_error("LocationSet: at least 2 locations required");
    std::set<std::string> seen(names_.begin(), names_.end());
    if (seen.size() != names_.size()) throw domain_error("LocationSet: duplicate location names");
}

int LocationSet::index_of(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) throw domain_error("LocationSet: undeclared location '" + name + "'");
    return static_cast<int>(it - names_.begin());
}

void LocationSet::set_overlap(std::vector<cplx> gram) {
    const std::size_t p = names_.size();
    if (gram.size() != p * p) throw shape_error("LocationSet: Gram matrix must be p x p");
    for (std::size_t i = 0; i < p; ++i) {
        if (std::abs(gram[i * p + i] - cplx(1.0, 0.0)) > 1e-12)
            throw domain_error("LocationSet: Gram diagonal must be 1");
        for (std::size_t j = 0; j < p; ++j) {
            if (std::abs(gram[i * p + j] - std::conj(gram[j * p + i])) > 1e-12)
                throw domain_error("LocationSet: Gram matrix must be Hermitian");
        }
    }
    gram_ = std::move(gram);
}

cplx LocationSet::overlap(int a, int b) const {
    if (gram_.empty()) return a == b ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
    return gram_[static_cast<std::size_t>(a) * names_.size() + b];
}

ModelSpace::ModelSpace(LocationSet locations, std::vector<DoFDomain> dofs)
    : locations_(std::move(locations)), dofs_(std::move(dofs)) {
    for (std::size_t i = 0; i < dofs_.size(); ++i) {
        DoFDomain& d = dofs_[i];
        if (d.index == 0) d.index = static_cast<int>(i) + 1;
        if (d.index != static_cast<int>(i) + 1)
            throw domain_error("ModelSpace: DoF indices must be consecutive from 1");
        if (d.eigenvalues.size() < 2)
            throw domain_error("ModelSpace: DoF '" + d.name + "' needs at least 2 eigenvalues");
        std::set<std::string> seen(d.eigenvalues.begin(), d.eigenvalues.end());
        if (seen.size() != d.eigenvalues.size())
            throw domain_error("ModelSpace: duplicate eigenvalues in DoF '" + d.name + "'");
    }
}

const DoFDomain& ModelSpace::dof(int index) const {
    if (index < 1 || index > dof_count())
        throw domain_error("ModelSpace: DoF index " + std::to_string(index) + " out of range");
    return dofs_[static_cast<std::size_t>(index - 1)];
}

const DoFDomain* ModelSpace::find_dof_by_name(const std::string& name) const {
    for (const auto& d : dofs_)
        if (d.name == name) return &d;
    return nullptr;
}

int ModelSpace::value_ordinal(int dof_index, const std::string& value) const {
    const DoFDomain& d = dof(dof_index);
    auto it = std::find(d.eigenvalues.begin(), d.eigenvalues.end(), value);
    if (it == d.eigenvalues.end())
        throw domain_error("ModelSpace: eigenvalue '" + value + "' not in DoF '" + d.name + "'");
    return static_cast<int>(it - d.eigenvalues.begin());
}

bool SingleParticleLabel::has_dof(int dof_index) const {
    for (const auto& [idx, _] : dofs)
        if (idx == dof_index) return true;
    return false;
}

int SingleParticleLabel::dof_value(int dof_index) const {
    for (const auto& [idx, v] : dofs)
        if (idx == dof_index) return v;
    return -1;
}

SingleParticleLabel SingleParticleLabel::without_dof(int dof_index) const {
    SingleParticleLabel out;
    out.location = location;
    out.dofs.reserve(dofs.size());
    for (const auto& p : dofs)
        if (p.first != dof_index) out.dofs.push_back(p);
    return out;
}

SingleParticleLabel make_label(const ModelSpace& space, const std::string& location,
                               const std::map<int, std::string>& dof_values) {
    SingleParticleLabel l;
    l.location = space.locations().index_of(location);
    for (const auto& [idx, value] : dof_values)
        l.dofs.emplace_back(idx, space.value_ordinal(idx, value));
    // std::map iteration is index-sorted already
    return l;
}

void validate_label(const ModelSpace& space, const SingleParticleLabel& l) {
    if (l.location < 0 || l.location >= space.locations().size())
        throw domain_error("label: undeclared location index " + std::to_string(l.location));
    int prev = 0;
    for (const auto& [idx, v] : l.dofs) {
        const DoFDomain& d = space.dof(idx);
        if (v < 0 || v >= d.size())
            throw domain_error("label: eigenvalue ordinal out of range for DoF '" + d.name + "'");
        if (idx <= prev) throw domain_error("label: DoF indices must be strictly ascending");
        prev = idx;
    }
}

std::string label_to_string(const ModelSpace& space, const SingleParticleLabel& l) {
    std::ostringstream os;
    os << space.locations().name(l.location);
    for (const auto& [idx, v] : l.dofs) os << ' ' << space.dof(idx).eigenvalues[v];
    return os.str();
}

std::optional<CanonicalizeResult> canonicalize_ket(const SingleParticleLabel& a,
                                                   const SingleParticleLabel& b,
                                                   Statistics statistics) {
    if (a == b) {
        if (statistics == Statistics::fermion) return std::nullopt;
        return CanonicalizeResult{CanonicalKet{a, b}, +1};
    }
    if (a < b) return CanonicalizeResult{CanonicalKet{a, b}, +1};
    return CanonicalizeResult{CanonicalKet{b, a}, eta(statistics)};
}

std::string ket_to_string(const ModelSpace& space, const CanonicalKet& k) {
    return "|" + label_to_string(space, k.first) + ", " + label_to_string(space, k.second) + ">";
}

std::vector<SingleParticleLabel> enumerate_full_labels_at(const ModelSpace& space, int location) {
    std::vector<SingleParticleLabel> out;
    std::vector<int> ordinals(static_cast<std::size_t>(space.dof_count()), 0);
    const int n = space.dof_count();
    while (true) {
        SingleParticleLabel l;
        l.location = location;
        for (int i = 0; i < n; ++i) l.dofs.emplace_back(i + 1, ordinals[static_cast<std::size_t>(i)]);
        out.push_back(std::move(l));
        int k = n - 1;
        while (k >= 0) {
            if (++ordinals[static_cast<std::size_t>(k)] < space.dof(k + 1).size()) break;
            ordinals[static_cast<std::size_t>(k)] = 0;
            --k;
        }
        if (k < 0) break;
    }
    return out;
}

std::vector<SingleParticleLabel> enumerate_full_labels(const ModelSpace& space) {
    std::vector<SingleParticleLabel> out;
    for (int loc = 0; loc < space.locations().size(); ++loc) {
        auto at = enumerate_full_labels_at(space, loc);
        out.insert(out.end(), at.begin(), at.end());
    }
    return out;
}

}  // namespace moelab
