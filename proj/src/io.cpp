#include "moelab/io.hpp"

#include <fstream>

namespace moelab {

namespace {

json complex_to_json(cplx v) { return json::array({v.real(), v.imag()}); }

cplx complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw domain_error("file: complex values must be [re, im] pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

json label_to_json(const ModelSpace& space, const SingleParticleLabel& l) {
    json dofs = json::object();
    for (const auto& [idx, v] : l.dofs)
        dofs[std::to_string(idx)] = space.dof(idx).eigenvalues[static_cast<std::size_t>(v)];
    return json{{"loc", space.locations().name(l.location)}, {"dofs", std::move(dofs)}};
}

SingleParticleLabel label_from_json(const ModelSpace& space, const json& j) {
    if (!j.contains("loc")) throw domain_error("file: particle entry missing 'loc'");
    std::map<int, std::string> values;
    if (j.contains("dofs"))
        for (const auto& [key, v] : j.at("dofs").items())
            values[std::stoi(key)] = v.get<std::string>();
    return make_label(space, j.at("loc").get<std::string>(), values);
}

json particles_to_json(const ModelSpace& space, const CanonicalKet& k) {
    return json::array({label_to_json(space, k.first), label_to_json(space, k.second)});
}

std::pair<SingleParticleLabel, SingleParticleLabel> particles_from_json(const ModelSpace& space,
                                                                        const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw domain_error("file: expected exactly two particle labels");
    return {label_from_json(space, j[0]), label_from_json(space, j[1])};
}

}  // namespace

json space_to_json(const ModelSpace& space, Statistics statistics) {
    json j;
    j["statistics"] = to_string(statistics);
    j["locations"] = space.locations().names();
    if (space.locations().has_custom_overlap()) {
        const int p = space.locations().size();
        json rows = json::array();
        for (int r = 0; r < p; ++r) {
            json row = json::array();
            for (int c = 0; c < p; ++c) row.push_back(complex_to_json(space.locations().overlap(r, c)));
            rows.push_back(std::move(row));
        }
        j["overlap"] = std::move(rows);
    }
    json dofs = json::array();
    for (const auto& d : space.dofs())
        dofs.push_back(json{{"name", d.name}, {"eigenvalues", d.eigenvalues}});
    j["dofs"] = std::move(dofs);
    return j;
}

json state_to_json(const StateVector& state) {
    json j = space_to_json(state.space(), state.statistics());
    json terms = json::array();
    for (const auto& [k, amp] : state.amplitudes())
        terms.push_back(json{{"amp", complex_to_json(amp)},
                             {"particles", particles_to_json(state.space(), k)}});
    j["terms"] = std::move(terms);
    return j;
}

json density_to_json(const DensityOperator& rho) {
    json j = space_to_json(rho.space(), rho.statistics());
    json entries = json::array();
    for (const auto& [key, v] : rho.entries())
        entries.push_back(json{{"ket", particles_to_json(rho.space(), key.first)},
                               {"bra", particles_to_json(rho.space(), key.second)},
                               {"val", complex_to_json(v)}});
    j["entries"] = std::move(entries);
    return j;
}

json single_particle_operator_to_json(const SingleParticleOperator& op, Statistics statistics) {
    json j = space_to_json(op.space(), statistics);
    j["kind"] = "one_particle";
    json entries = json::array();
    for (const auto& [key, v] : op.entries())
        entries.push_back(json{{"ket", label_to_json(op.space(), key.first)},
                               {"bra", label_to_json(op.space(), key.second)},
                               {"val", complex_to_json(v)}});
    j["entries"] = std::move(entries);
    return j;
}

ParsedSpace space_from_json(const json& j) {
    for (const char* field : {"statistics", "locations", "dofs"})
        if (!j.contains(field))
            throw domain_error(std::string("file: missing required field '") + field + "'");
    ParsedSpace out;
    out.statistics = statistics_from_string(j.at("statistics").get<std::string>());
    LocationSet locations(j.at("locations").get<std::vector<std::string>>());
    if (j.contains("overlap")) {
        const auto& rows = j.at("overlap");
        std::vector<cplx> gram;
        for (const auto& row : rows)
            for (const auto& v : row) gram.push_back(complex_from_json(v));
        locations.set_overlap(std::move(gram));
    }
    std::vector<DoFDomain> dofs;
    int index = 1;
    for (const auto& d : j.at("dofs"))
        dofs.push_back({index++, d.at("name").get<std::string>(),
                        d.at("eigenvalues").get<std::vector<std::string>>()});
    out.space = std::make_shared<const ModelSpace>(std::move(locations), std::move(dofs));
    return out;
}

StateVector state_from_json(const json& j) {
    ParsedSpace parsed = space_from_json(j);
    if (!j.contains("terms")) throw domain_error("file: state schema requires 'terms'");
    StateVector state(parsed.statistics, parsed.space);
    for (const auto& t : j.at("terms")) {
        const auto [a, b] = particles_from_json(*parsed.space, t.at("particles"));
        state.add_term(a, b, complex_from_json(t.at("amp")));
    }
    return state;
}

DensityOperator density_from_json(const json& j) {
    ParsedSpace parsed = space_from_json(j);
    if (!j.contains("entries")) throw domain_error("file: density schema requires 'entries'");
    DensityOperator rho(parsed.statistics, parsed.space);
    for (const auto& e : j.at("entries")) {
        const auto [ka, kb] = particles_from_json(*parsed.space, e.at("ket"));
        const auto [ba, bb] = particles_from_json(*parsed.space, e.at("bra"));
        auto ket = canonicalize_ket(ka, kb, parsed.statistics);
        auto bra = canonicalize_ket(ba, bb, parsed.statistics);
        if (!ket || !bra) continue;  // fermionic exclusion annihilates the entry
        rho.add(ket->ket, bra->ket,
                complex_from_json(e.at("val")) * static_cast<double>(ket->sign * bra->sign));
    }
    return rho;
}

namespace {

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("file: cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw domain_error("file: malformed JSON in '" + path + "': " + e.what());
    }
    return j;
}

}  // namespace

StateVector load_state_file(const std::string& path) { return state_from_json(load_json_file(path)); }

DensityOperator load_density_file(const std::string& path) {
    return density_from_json(load_json_file(path));
}

DensityOperator load_density_or_state_file(const std::string& path) {
    const json j = load_json_file(path);
    if (j.contains("entries")) return density_from_json(j);
    return outer_product(state_from_json(j));
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw domain_error("file: cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

}  // namespace moelab
