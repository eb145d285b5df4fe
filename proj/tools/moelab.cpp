// Command-line front end: reproduction pipeline, monogamy sweeps, trace and
// measure operations on state/density files.

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "moelab/eig.hpp"
#include "moelab/io.hpp"
#include "moelab/measures.hpp"
#include "moelab/pipeline.hpp"
#include "moelab/random.hpp"

namespace {

using namespace moelab;

constexpr std::uint64_t kDefaultSeed = 20240901;

std::uint64_t base_seed(bool seed_given, std::uint64_t seed_flag) {
    if (seed_given) return seed_flag;
    if (const char* env = std::getenv("MOELAB_SEED")) return std::stoull(env);
    return kDefaultSeed;
}

PhaseConfig parse_phases(const std::string& csv) {
    std::vector<double> values;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) values.push_back(std::stod(item));
    if (values.size() != 4)
        throw domain_error("--phases expects four comma-separated radians: L,D,R,U");
    return PhaseConfig{values[0], values[1], values[2], values[3]};
}

PhaseConfig random_phases(SeededGenerator& gen) {
    PhaseConfig p;
    p.phi_l = gen.uniform(0.0, 2.0 * std::numbers::pi);
    p.phi_d = gen.uniform(0.0, 2.0 * std::numbers::pi);
    p.phi_r = gen.uniform(0.0, 2.0 * std::numbers::pi);
    p.phi_u = gen.uniform(0.0, 2.0 * std::numbers::pi);
    return p;
}

void print_report_text(const ReproductionReport& rep) {
    std::ostream& os = std::cout;
    os << std::fixed << std::setprecision(12);
    os << "phases (L,D,R,U): " << rep.phases.phi_l << ", " << rep.phases.phi_d << ", "
       << rep.phases.phi_r << ", " << rep.phases.phi_u << "\n";
    os << "projection weight: " << rep.projection_weight << "\n";
    os << "projected coefficients:\n";
    for (const auto& [ket, amp] : rep.projected_coefficients)
        os << "  " << ket << " -> " << amp.real() << (amp.imag() < 0 ? " - " : " + ")
           << std::abs(amp.imag()) << "i\n";
    os << "concurrence (spin,spin): " << rep.concurrence_spin_spin << "\n";
    os << "concurrence (spin,path): " << rep.concurrence_spin_path << "\n";
    os << "R eigenvalues:";
    for (const cplx& v : rep.r_eigenvalues) os << " " << v.real();
    os << "\n";
    os << "PT eigenvalues (spin,spin):";
    for (double v : rep.pt_eigenvalues_spin_spin) os << " " << v;
    os << "\n";
    os << "negativity (spin,spin): " << rep.negativity_spin_spin
       << ", log-negativity: " << rep.log_negativity_spin_spin << "\n";
    os << "negativity (spin,path): " << rep.negativity_spin_path
       << ", log-negativity: " << rep.log_negativity_spin_path << "\n";
    for (const MonogamyReport* m : {&rep.moe_squared_concurrence, &rep.moe_log_negativity})
        os << "monogamy [" << m->measure << "]: sum " << (m->e_ab + m->e_ac) << " vs bound "
           << m->bound << (m->holds ? " (holds)" : " (violated)")
           << (m->maximal_violation ? " [maximal]" : "") << "\n";
    os << (rep.pass ? "PASS" : "FAIL") << "\n";
}

int cmd_reproduce(const std::string& phases_csv, bool seed_given, std::uint64_t seed_flag,
                  int sweep, double tol, bool as_json, bool verbose) {
    SeededGenerator gen(base_seed(seed_given, seed_flag));
    const int runs = std::max(1, sweep);
    bool all_pass = true;
    json sweep_reports = json::array();
    for (int i = 0; i < runs; ++i) {
        ReproductionReport rep;
        if (!phases_csv.empty() && sweep <= 1) {
            rep = run_reproduction(parse_phases(phases_csv), tol);
        } else {
            SeededGenerator task = gen.split(static_cast<std::uint64_t>(i));
            rep = run_reproduction(random_phases(task), tol);
            rep.seed = gen.seed();
        }
        all_pass = all_pass && rep.pass;
        if (sweep > 1) {
            sweep_reports.push_back(report_to_json(rep));
        } else if (as_json) {
            std::cout << report_to_json(rep).dump(2) << "\n";
        } else {
            print_report_text(rep);
            if (verbose) {
                const ReducedPair reduced = reduce_li_state(rep.phases);
                std::cout << "reduced (spin,spin):\n" << reduced.spin_spin.to_string();
                std::cout << "reduced (spin,path):\n" << reduced.spin_path.to_string();
            }
        }
    }
    if (sweep > 1) {
        if (as_json) {
            json j{{"sweep", runs}, {"all_pass", all_pass}, {"reports", std::move(sweep_reports)}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "sweep " << runs << ": " << (all_pass ? "all PASS" : "FAIL") << "\n";
        }
    }
    return all_pass ? 0 : 2;
}

int cmd_monogamy(int samples, bool seed_given, std::uint64_t seed_flag, bool as_json) {
    if (samples < 1) throw domain_error("--samples must be at least 1");
    SeededGenerator gen(base_seed(seed_given, seed_flag));
    int violations = 0;
    double min_slack = std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i) {
        SeededGenerator task = gen.split(static_cast<std::uint64_t>(i));
        const MonogamyReport rep = ckw_check(random_pure_three_qubit(task));
        const double slack = rep.bound - rep.e_ab - rep.e_ac;
        min_slack = std::min(min_slack, slack);
        if (slack < -1e-9) ++violations;
    }
    if (as_json) {
        json j{{"samples", samples},   {"seed", gen.seed()},      {"rng", gen.algorithm()},
               {"min_slack", min_slack}, {"violations", violations}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "samples: " << samples << ", min slack: " << std::setprecision(12)
                  << min_slack << ", violations: " << violations << "\n";
    }
    return violations == 0 ? 0 : 2;
}

int resolve_dof(const ModelSpace& space, const std::string& spec) {
    if (const DoFDomain* d = space.find_dof_by_name(spec)) return d->index;
    try {
        return space.dof(std::stoi(spec)).index;
    } catch (const std::invalid_argument&) {
        throw domain_error("unknown DoF '" + spec + "'");
    }
}

int cmd_trace(const std::string& in_file, const std::string& loc, const std::string& dof,
              bool particle, bool normalize, const std::string& out_file) {
    DensityOperator rho = load_density_or_state_file(in_file);
    const ModelSpace& space = rho.space();

    json out;
    double weight = 0.0;
    if (particle) {
        std::optional<RegionSpec> region;
        if (!loc.empty()) region = RegionSpec{space.locations().index_of(loc)};
        SingleParticleOperator reduced = particle_trace(rho, region);
        weight = reduced.trace().real();
        const SingleParticleOperator normed = normalize_density(reduced);
        if (normalize) reduced = normed;
        const double entropy = von_neumann_entropy(normed.to_dense(normed.support()));
        std::cout << "trace weight: " << std::setprecision(12) << weight << "\n";
        std::cout << "entropy: " << std::setprecision(12) << entropy << "\n";
        out = single_particle_operator_to_json(reduced, rho.statistics());
    } else {
        if (loc.empty() || dof.empty())
            throw domain_error("trace: --loc and --dof are required without --particle");
        DensityOperator reduced =
            dof_trace_indist(rho, space.locations().index_of(loc), resolve_dof(space, dof));
        if (reduced.empty()) throw degenerate_error("trace: no support at the requested location");
        weight = density_trace(reduced).real();
        if (normalize) reduced = normalize_density(reduced);
        std::cout << "trace weight: " << std::setprecision(12) << weight << "\n";
        out = density_to_json(reduced);
    }
    if (out_file.empty())
        std::cout << out.dump(2) << "\n";
    else
        write_json_file(out_file, out);
    return 0;
}

std::vector<QuditSlot> parse_slots(const ModelSpace& space, const std::string& spec) {
    std::vector<QuditSlot> slots;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        QuditSlot slot;
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw domain_error("--slots entries must look like loc:dof or loc:dof=v1|v2");
        slot.location = space.locations().index_of(item.substr(0, colon));
        std::string rest = item.substr(colon + 1);
        const auto eq = rest.find('=');
        std::string values;
        if (eq != std::string::npos) {
            values = rest.substr(eq + 1);
            rest = rest.substr(0, eq);
        }
        slot.dof_index = resolve_dof(space, rest);
        if (!values.empty()) {
            std::stringstream vs(values);
            std::string v;
            while (std::getline(vs, v, '|'))
                slot.value_ordinals.push_back(space.value_ordinal(slot.dof_index, v));
        }
        slots.push_back(std::move(slot));
    }
    return slots;
}

int cmd_measure(const std::string& in_file, const std::string& measure, const std::string& slots_spec) {
    DensityOperator rho = normalize_density(load_density_or_state_file(in_file));
    const DenseMatrix m = embed_as_qudits(rho, parse_slots(rho.space(), slots_spec));

    double value = 0.0;
    if (measure == "concurrence") {
        value = concurrence(m);
    } else if (measure == "negativity") {
        value = negativity_lognegativity(m).negativity;
    } else if (measure == "entropy") {
        value = von_neumann_entropy(m);
    } else {
        throw domain_error("unknown measure '" + measure + "'");
    }
    std::cout << std::fixed << std::setprecision(12) << value << "\n";
    return 0;
}

int cmd_circuit(const std::string& phases_csv, bool seed_given, std::uint64_t seed_flag,
                bool project, const std::string& out_file) {
    PhaseConfig phases;
    if (!phases_csv.empty()) {
        phases = parse_phases(phases_csv);
    } else {
        SeededGenerator gen(base_seed(seed_given, seed_flag));
        phases = random_phases(gen);
    }
    StateVector psi = build_li_state(phases);
    if (project) {
        const SpacePtr space = psi.space_ptr();
        const int s1 = space->locations().index_of("s1");
        const int s2 = space->locations().index_of("s2");
        const ProjectorSpec proj = build_one_per_location_projector(
            psi.statistics(), space, s1, s2,
            {{s1, kPathDof, {static_cast<int>(Path::L), static_cast<int>(Path::D)}},
             {s2, kPathDof, {static_cast<int>(Path::R), static_cast<int>(Path::U)}}});
        psi = apply_projector(psi, proj).state;
    }
    const json j = state_to_json(psi);
    if (out_file.empty())
        std::cout << j.dump(2) << "\n";
    else
        write_json_file(out_file, j);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-particle ket algebra, DoF traces and entanglement measures"};
    app.require_subcommand(1);

    std::string phases_csv;
    std::uint64_t seed_flag = 0;
    bool as_json = false;
    bool verbose = false;
    int sweep = 0;
    double tol = 1e-9;

    auto* reproduce = app.add_subcommand("reproduce", "Run the full interferometer pipeline");
    auto* rp = reproduce->add_option("--phases", phases_csv, "Phases L,D,R,U in radians");
    auto* rs = reproduce->add_option("--seed", seed_flag, "Seed for random phases");
    reproduce->add_option("--sweep", sweep, "Repeat with N random phase tuples");
    reproduce->add_option("--tol", tol, "Comparison tolerance");
    reproduce->add_flag("--json", as_json, "Machine-readable report");
    reproduce->add_flag("--verbose", verbose, "Print the reduced matrices");

    int samples = 1000;
    auto* monogamy = app.add_subcommand("monogamy", "CKW inequality sweep on random pure states");
    monogamy->add_option("--samples", samples, "Number of Haar-random three-qubit states");
    auto* ms = monogamy->add_option("--seed", seed_flag, "Sweep seed");
    monogamy->add_flag("--json", as_json, "Machine-readable report");

    std::string in_file, out_file, loc, dof;
    bool particle = false, normalize = false;
    auto* trace = app.add_subcommand("trace", "Apply a DoF or particle trace to a file");
    trace->add_option("--in", in_file, "State or density JSON file")->required();
    trace->add_option("--loc", loc, "Location identifier");
    trace->add_option("--dof", dof, "DoF name or 1-based index");
    trace->add_flag("--particle", particle, "Particle trace (localized when --loc is given)");
    trace->add_flag("--normalize", normalize, "Normalize the reduced operator");
    trace->add_option("--out", out_file, "Output JSON file (stdout when omitted)");

    std::string measure_name, slots_spec;
    auto* measure = app.add_subcommand("measure", "Evaluate a two-qubit measure on a file");
    measure->add_option("--in", in_file, "State or density JSON file")->required();
    measure->add_option("--measure", measure_name, "concurrence|negativity|entropy")->required();
    measure->add_option("--slots", slots_spec, "Qudit slots, e.g. s1:spin,s2:path=R|U")->required();

    bool project = false;
    auto* circuit = app.add_subcommand("circuit", "Emit the interferometer state file");
    auto* cp = circuit->add_option("--phases", phases_csv, "Phases L,D,R,U in radians");
    auto* cs = circuit->add_option("--seed", seed_flag, "Seed for random phases");
    circuit->add_flag("--project", project, "Post-select one particle per location");
    circuit->add_option("--out", out_file, "Output JSON file (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (reproduce->parsed())
            return cmd_reproduce(rp->count() ? phases_csv : "", rs->count() > 0, seed_flag, sweep,
                                 tol, as_json, verbose);
        if (monogamy->parsed())
            return cmd_monogamy(samples, ms->count() > 0, seed_flag, as_json);
        if (trace->parsed()) return cmd_trace(in_file, loc, dof, particle, normalize, out_file);
        if (measure->parsed()) return cmd_measure(in_file, measure_name, slots_spec);
        if (circuit->parsed())
            return cmd_circuit(cp->count() ? phases_csv : "", cs->count() > 0, seed_flag, project,
                               out_file);
    } catch (const degenerate_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const postselection_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const convergence_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
