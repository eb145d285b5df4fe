#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "moelab/errors.hpp"

namespace moelab {

using cplx = std::complex<double>;

// Amplitudes below this magnitude are dropped after every arithmetic pass.
inline constexpr double kPruneTol = 1e-14;

// Exchange statistics of the two-particle sector.
enum class Statistics : int { boson = +1, fermion = -1 };

inline int eta(Statistics s) { return static_cast<int>(s); }
inline std::string to_string(Statistics s) { return s == Statistics::boson ? "boson" : "fermion"; }
inline Statistics statistics_from_string(const std::string& s) {
    if (s == "boson") return Statistics::boson;
    if (s == "fermion") return Statistics::fermion;
    throw domain_error("statistics: expected 'boson' or 'fermion', got '" + s + "'");
}

// One degree of freedom: a 1-based index, a name and an ordered eigenvalue list.
struct DoFDomain {
    int index = 0;                        // 1-based
    std::string name;
    std::vector<std::string> eigenvalues; // size >= 2, identifiers unique

    int size() const { return static_cast<int>(eigenvalues.size()); }
};

// Declared spatial locations plus an optional Hermitian Gram map between them.
// The default overlap is the Kronecker delta (orthonormal localized regions).
class LocationSet {
public:
    LocationSet() = default;
    explicit LocationSet(std::vector<std::string> names);

    int size() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(int i) const { return names_.at(i); }
    int index_of(const std::string& name) const;

    bool has_custom_overlap() const { return !gram_.empty(); }
    // Row-major p x p Gram matrix; must be Hermitian with unit diagonal.
    void set_overlap(std::vector<cplx> gram);
    cplx overlap(int a, int b) const;
    const std::vector<cplx>& gram() const { return gram_; }

private:
    std::vector<std::string> names_;
    std::vector<cplx> gram_;  // empty means identity
};

// The declared space: statistics-independent container of locations and DoFs.
class ModelSpace {
public:
    ModelSpace() = default;
    ModelSpace(LocationSet locations, std::vector<DoFDomain> dofs);

    const LocationSet& locations() const { return locations_; }
    const std::vector<DoFDomain>& dofs() const { return dofs_; }
    int dof_count() const { return static_cast<int>(dofs_.size()); }

    const DoFDomain& dof(int index) const;  // 1-based index
    const DoFDomain* find_dof_by_name(const std::string& name) const;
    int value_ordinal(int dof_index, const std::string& value) const;

private:
    LocationSet locations_;
    std::vector<DoFDomain> dofs_;
};

using SpacePtr = std::shared_ptr<const ModelSpace>;

// One particle's location plus a (possibly partial) DoF assignment.
// DoF values are stored as (dof index, eigenvalue ordinal), sorted by index.
struct SingleParticleLabel {
    int location = 0;
    std::vector<std::pair<int, int>> dofs;

    bool has_dof(int dof_index) const;
    int dof_value(int dof_index) const;  // -1 when absent
    SingleParticleLabel without_dof(int dof_index) const;

    auto operator<=>(const SingleParticleLabel&) const = default;
};

// Builds a label from names, validating against the space.
SingleParticleLabel make_label(const ModelSpace& space, const std::string& location,
                               const std::map<int, std::string>& dof_values);

std::string label_to_string(const ModelSpace& space, const SingleParticleLabel& l);

// Exchange-symmetrized two-particle ket stored in canonical (lexicographic)
// order. Construction goes through canonicalize_ket so the sign is folded
// into the amplitude by the caller.
struct CanonicalKet {
    SingleParticleLabel first;
    SingleParticleLabel second;

    auto operator<=>(const CanonicalKet&) const = default;
};

struct CanonicalizeResult {
    CanonicalKet ket;
    int sign = +1;  // eta^(number of transpositions)
};

// Canonicalizes a raw ordered pair. Returns nullopt for a fermionic pair of
// identical labels (annihilated by exclusion).
std::optional<CanonicalizeResult> canonicalize_ket(const SingleParticleLabel& a,
                                                   const SingleParticleLabel& b,
                                                   Statistics statistics);

// Validates that a label only references declared locations/eigenvalues.
void validate_label(const ModelSpace& space, const SingleParticleLabel& l);

std::string ket_to_string(const ModelSpace& space, const CanonicalKet& k);

// All full-assignment labels of the space, in deterministic order
// (location-major, then DoF ordinals row-major).
std::vector<SingleParticleLabel> enumerate_full_labels(const ModelSpace& space);

// Full-assignment labels restricted to one location.
std::vector<SingleParticleLabel> enumerate_full_labels_at(const ModelSpace& space, int location);

}  // namespace moelab
