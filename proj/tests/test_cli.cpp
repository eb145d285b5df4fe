// End-to-end checks of the command-line surface: file formats, printed
// values and exit codes. Usage: moelab_cli_tests <path-to-cli>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "moelab/circuit.hpp"
#include "moelab/io.hpp"

using namespace moelab;

namespace {

std::string g_cli;
int g_failures = 0;

struct CommandResult {
    int exit_code = -1;
    std::string output;
};

CommandResult run(const std::string& args, const std::string& env = "") {
    const std::string out_path = "/tmp/moelab_cli_out.txt";
    const std::string cmd = env + g_cli + " " + args + " > " + out_path + " 2>&1";
    const int status = std::system(cmd.c_str());
    CommandResult res;
    res.exit_code = status < 0 ? status : WEXITSTATUS(status);
    std::ifstream in(out_path);
    std::ostringstream os;
    os << in.rdbuf();
    res.output = os.str();
    std::remove(out_path.c_str());
    return res;
}

void expect(bool ok, const std::string& what) {
    std::cout << (ok ? "  ok: " : "  FAILED: ") << what << "\n";
    if (!ok) ++g_failures;
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

void write_bell_fixture(const std::string& path) {
    const auto space = std::make_shared<const ModelSpace>(
        LocationSet({"s1", "s2"}), std::vector<DoFDomain>{{1, "spin", {"down", "up"}}});
    StateVector psi(Statistics::boson, space);
    const double inv = 1.0 / std::sqrt(2.0);
    psi.add_term(make_label(*space, "s1", {{1, "down"}}), make_label(*space, "s2", {{1, "up"}}), inv);
    psi.add_term(make_label(*space, "s1", {{1, "up"}}), make_label(*space, "s2", {{1, "down"}}), inv);
    write_json_file(path, state_to_json(psi));
}

void write_spin_product_mixture(const std::string& path) {
    // diag(3/4, 1/4) at s1 next to a pure spin at s2
    const auto space = std::make_shared<const ModelSpace>(
        LocationSet({"s1", "s2"}), std::vector<DoFDomain>{{1, "spin", {"down", "up"}}});
    StateVector down(Statistics::boson, space);
    down.add_term(make_label(*space, "s1", {{1, "down"}}), make_label(*space, "s2", {{1, "down"}}), 1.0);
    StateVector up(Statistics::boson, space);
    up.add_term(make_label(*space, "s1", {{1, "up"}}), make_label(*space, "s2", {{1, "down"}}), 1.0);

    const DensityOperator rho_down = outer_product(down);
    const DensityOperator rho_up = outer_product(up);
    DensityOperator rho(Statistics::boson, space);
    for (const auto& [k, v] : rho_down.entries()) rho.add(k.first, k.second, 0.75 * v);
    for (const auto& [k, v] : rho_up.entries()) rho.add(k.first, k.second, 0.25 * v);
    write_json_file(path, density_to_json(rho));
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: moelab_cli_tests <path-to-cli>\n";
        return 2;
    }
    g_cli = argv[1];

    std::cout << "circuit emits a loadable state file\n";
    {
        const std::string file = "/tmp/moelab_cli_circuit.json";
        const auto res = run("circuit --phases 0,0,0,0 --out " + file);
        expect(res.exit_code == 0, "exit 0");
        const StateVector psi = load_state_file(file);
        const StateVector expected = build_li_state(PhaseConfig{});
        bool same = psi.term_count() == expected.term_count();
        for (const auto& [ket, amp] : expected.amplitudes())
            same = same && std::abs(psi.amplitude(ket) - amp) < 1e-12;
        expect(same, "file matches the zero-phase coefficient table");
        std::remove(file.c_str());
    }

    std::cout << "projected circuit file post-selects one particle per location\n";
    {
        const std::string file = "/tmp/moelab_cli_projected.json";
        const auto res = run("circuit --phases 0,0,0,0 --project --out " + file);
        expect(res.exit_code == 0, "exit 0");
        const StateVector psi = load_state_file(file);
        expect(psi.term_count() == 2, "two surviving kets at zero phases");
        std::remove(file.c_str());
    }

    std::cout << "particle trace of a Bell fixture prints entropy ln 2\n";
    {
        const std::string file = "/tmp/moelab_cli_bell.json";
        write_bell_fixture(file);
        const auto res = run("trace --in " + file + " --particle --loc s1 --normalize");
        expect(res.exit_code == 0, "exit 0");
        expect(contains(res.output, "entropy: 0.69314718056"), "entropy ln 2 printed");
        expect(contains(res.output, "trace weight: 1"), "localized weight printed");
        std::remove(file.c_str());
    }

    std::cout << "DoF traces through files reproduce the reduced table\n";
    {
        const std::string projected = "/tmp/moelab_cli_p.json";
        const std::string once = "/tmp/moelab_cli_t1.json";
        const std::string twice = "/tmp/moelab_cli_t2.json";
        const auto r0 = run("circuit --phases 0.4,1.1,2.7,0.3 --project --out " + projected);
        const auto r1 = run("trace --in " + projected + " --loc s1 --dof path --out " + once);
        const auto r2 = run("trace --in " + once + " --loc s2 --dof 1 --normalize --out " + twice);
        expect(r0.exit_code == 0 && r1.exit_code == 0 && r2.exit_code == 0, "all exits 0");

        const DensityOperator reduced = load_density_file(twice);
        const PhaseConfig p{0.4, 1.1, 2.7, 0.3};
        const cplx plus = (p.kappa1() + p.kappa2()) / (2.0 * std::sqrt(2.0));
        const auto space = reduced.space_ptr();
        SingleParticleLabel d1, d2;
        d1.location = 0;
        d1.dofs.emplace_back(2, 0);
        d2.location = 1;
        d2.dofs.emplace_back(2, 0);
        const CanonicalKet dd{d1, d2};
        expect(std::abs(reduced.value(dd, dd) - plus * std::conj(plus)) < 1e-12,
               "top-left reduced coefficient");
        for (const std::string& f : {projected, once, twice}) std::remove(f.c_str());
    }

    std::cout << "measure prints 12-digit values\n";
    {
        const std::string bell = "/tmp/moelab_cli_bell2.json";
        write_bell_fixture(bell);
        const auto conc = run("measure --in " + bell + " --measure concurrence --slots s1:spin,s2:spin");
        expect(conc.exit_code == 0, "concurrence exit 0");
        expect(contains(conc.output, "1.000000000000"), "concurrence 1.000000000000");

        const auto neg = run("measure --in " + bell + " --measure negativity --slots s1:spin,s2:spin");
        expect(contains(neg.output, "0.500000000000"), "negativity 0.5");
        std::remove(bell.c_str());

        const std::string mix = "/tmp/moelab_cli_mix.json";
        write_spin_product_mixture(mix);
        const auto ent = run("measure --in " + mix + " --measure entropy --slots s1:spin,s2:spin");
        expect(contains(ent.output, "0.56233514461"), "entropy 0.562335144619");
        std::remove(mix.c_str());
    }

    std::cout << "paper pipeline measures through files\n";
    {
        const std::string projected = "/tmp/moelab_cli_p2.json";
        const std::string ss = "/tmp/moelab_cli_ss.json";
        run("circuit --seed 99 --project --out " + projected);
        run("trace --in " + projected + " --loc s1 --dof path --out /tmp/moelab_cli_m1.json");
        run("trace --in /tmp/moelab_cli_m1.json --loc s2 --dof path --normalize --out " + ss);
        const auto conc = run("measure --in " + ss + " --measure concurrence --slots s1:spin,s2:spin");
        expect(contains(conc.output, "1.000000000000"), "spin-spin concurrence 1");
        const auto neg = run("measure --in " + ss + " --measure negativity --slots s1:spin,s2:spin");
        expect(contains(neg.output, "0.500000000000"), "spin-spin negativity 0.5");
        for (const std::string& f : {projected, ss, std::string("/tmp/moelab_cli_m1.json")})
            std::remove(f.c_str());
    }

    std::cout << "exit-code contract\n";
    {
        std::ofstream("/tmp/moelab_cli_bad.json") << "{ not json";
        expect(run("trace --in /tmp/moelab_cli_bad.json --loc s1 --dof 1").exit_code == 1,
               "malformed file exits 1");
        std::remove("/tmp/moelab_cli_bad.json");

        const std::string bell = "/tmp/moelab_cli_bell3.json";
        write_bell_fixture(bell);
        expect(run("measure --in " + bell + " --measure sparkle --slots s1:spin,s2:spin").exit_code == 1,
               "unknown measure exits 1");
        expect(run("measure --in " + bell + " --measure concurrence --slots s1:nope,s2:spin").exit_code == 1,
               "unknown DoF exits 1");

        // tracing the only DoF twice leaves nothing to trace
        const std::string once = "/tmp/moelab_cli_once.json";
        run("trace --in " + bell + " --loc s1 --dof 1 --out " + once);
        const std::string twice = "/tmp/moelab_cli_twice.json";
        run("trace --in " + once + " --loc s2 --dof 1 --out " + twice);
        expect(run("trace --in " + twice + " --loc s1 --dof 1").exit_code == 1,
               "absent DoF exits 1");
        expect(run("nonsense").exit_code == 1, "unknown subcommand exits 1");

        // a three-site state with nothing at s3: tracing there is degenerate
        const std::string off = "/tmp/moelab_cli_off.json";
        std::ofstream(off) << R"({"statistics":"boson","locations":["s1","s2","s3"],
          "dofs":[{"name":"spin","eigenvalues":["down","up"]}],
          "terms":[{"amp":[1.0,0.0],"particles":[
            {"loc":"s1","dofs":{"1":"down"}},{"loc":"s2","dofs":{"1":"up"}}]}]})";
        expect(run("trace --in " + off + " --loc s3 --dof 1").exit_code == 2,
               "degenerate trace exits 2");
        std::remove(off.c_str());
        for (const std::string& f : {bell, once, twice}) std::remove(f.c_str());
    }

    std::cout << "seeding contract\n";
    {
        const auto a = run("reproduce --json --seed 5");
        const auto b = run("reproduce --json --seed 5");
        const auto c = run("reproduce --json --seed 6");
        expect(a.output == b.output, "same seed, identical report");
        expect(a.output != c.output, "different seed, different phases");
        const auto d = run("reproduce --json", "MOELAB_SEED=5 ");
        expect(d.output == a.output, "MOELAB_SEED env matches --seed");
        const auto sweep = run("reproduce --sweep 100 --seed 3");
        expect(sweep.exit_code == 0 && contains(sweep.output, "all PASS"),
               "sweep of 100 tuples passes");
        const auto zero = run("reproduce --phases 0,0,0,0");
        expect(zero.exit_code == 0 && contains(zero.output, "0.707106781187"),
               "zero-phase projected coefficient 1/sqrt(2)");
    }

    std::cout << (g_failures == 0 ? "CLI TESTS PASSED" : "CLI TESTS FAILED") << "\n";
    return g_failures == 0 ? 0 : 1;
}
