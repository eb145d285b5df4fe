#pragma once

#include <string>

#include "moelab/density.hpp"
#include "moelab/state.hpp"

#include <json.hpp>

namespace moelab {

using json = nlohmann::ordered_json;

// File schema:
//   { "statistics": "boson"|"fermion",
//     "locations": [...],
//     "overlap": [[[re,im],...],...]            (optional Gram rows)
//     "dofs": [{"name":..., "eigenvalues":[...]}, ...],
//     "terms": [{"amp":[re,im],
//                "particles":[{"loc":..., "dofs":{"1":"L","2":"down"}}, ...]}] }
// Densities replace "terms" with
//   "entries": [{"ket":[particles], "bra":[particles], "val":[re,im]}].
// One-particle operators use single-particle "ket"/"bra" objects and carry
// "kind": "one_particle".

json space_to_json(const ModelSpace& space, Statistics statistics);
json state_to_json(const StateVector& state);
json density_to_json(const DensityOperator& rho);
json single_particle_operator_to_json(const SingleParticleOperator& op, Statistics statistics);

struct ParsedSpace {
    Statistics statistics = Statistics::boson;
    SpacePtr space;
};

ParsedSpace space_from_json(const json& j);
StateVector state_from_json(const json& j);
DensityOperator density_from_json(const json& j);

StateVector load_state_file(const std::string& path);
DensityOperator load_density_file(const std::string& path);
// Reads either schema; states are lifted to densities via the outer product.
DensityOperator load_density_or_state_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace moelab
