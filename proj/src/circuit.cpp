#include "moelab/circuit.hpp"

#include <cmath>

namespace moelab {

void LadderPolynomial::add_monomial(Mode a, Mode b, cplx coeff) {
    int ia = a.index();
    int ib = b.index();
    double sign = 1.0;
    if (ia > ib) {
        std::swap(ia, ib);
        sign = static_cast<double>(eta(statistics_));
    } else if (ia == ib && statistics_ == Statistics::fermion) {
        return;  // b^dag squared vanishes
    }
    cplx& slot = terms_[{ia, ib}];
    slot += sign * coeff;
    if (std::abs(slot) < kPruneTol) terms_.erase({ia, ib});
}

cplx LadderPolynomial::coefficient(Mode a, Mode b) const {
    int ia = a.index();
    int ib = b.index();
    double sign = 1.0;
    if (ia > ib) {
        std::swap(ia, ib);
        sign = static_cast<double>(eta(statistics_));
    }
    auto it = terms_.find({ia, ib});
    return it == terms_.end() ? cplx(0.0) : sign * it->second;
}

double LadderPolynomial::norm() const {
    double n2 = 0.0;
    for (const auto& [mono, c] : terms_)
        n2 += std::norm(c) * (mono.first == mono.second ? 2.0 : 1.0);
    return std::sqrt(n2);
}

void LadderPolynomial::prune(double tol) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (std::abs(it->second) < tol)
            it = terms_.erase(it);
        else
            ++it;
    }
}

LinearModeTransform LinearModeTransform::identity() {
    return {DenseMatrix::identity(kModeCount)};
}

bool LinearModeTransform::is_unitary(double tol) const {
    const DenseMatrix gram = matrix.dagger() * matrix;
    return gram.max_abs_diff(DenseMatrix::identity(kModeCount)) <= tol;
}

LinearModeTransform hbs_transform(Path path_a, Path path_b) {
    if (path_a == path_b) throw domain_error("hbs_transform: paths must differ");
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    DenseMatrix u = DenseMatrix::identity(kModeCount);
    for (Spin s : {Spin::down, Spin::up}) {
        const Spin flipped = s == Spin::down ? Spin::up : Spin::down;
        const Mode in_a{path_a, s};
        const Mode in_b{path_b, s};
        u.at(in_a.index(), in_a.index()) = inv_sqrt2;
        u.at(Mode{path_b, flipped}.index(), in_a.index()) = cplx(0.0, inv_sqrt2);
        u.at(in_b.index(), in_b.index()) = inv_sqrt2;
        u.at(Mode{path_a, flipped}.index(), in_b.index()) = cplx(0.0, inv_sqrt2);
    }
    return {std::move(u)};
}

cplx PhaseConfig::kappa1() const { return std::polar(1.0, phi_r + phi_l); }
cplx PhaseConfig::kappa2() const { return std::polar(1.0, phi_d + phi_u); }
double PhaseConfig::phi() const { return 0.5 * (phi_d + phi_u - phi_r - phi_l); }

LinearModeTransform phase_transform(const PhaseConfig& config) {
    DenseMatrix u = DenseMatrix::identity(kModeCount);
    const auto set = [&](Path p, Spin s, double phase) {
        const int i = Mode{p, s}.index();
        u.at(i, i) = std::polar(1.0, phase);
    };
    set(Path::R, Spin::down, config.phi_r);
    set(Path::U, Spin::up, config.phi_u);
    set(Path::L, Spin::down, config.phi_l);
    set(Path::D, Spin::up, config.phi_d);
    return {std::move(u)};
}

LinearModeTransform compose(const LinearModeTransform& second, const LinearModeTransform& first) {
    return {second.matrix * first.matrix};
}

LadderPolynomial apply_transform(const LadderPolynomial& poly, const LinearModeTransform& t) {
    LadderPolynomial out(poly.statistics());
    for (const auto& [mono, c] : poly.terms()) {
        for (int ma = 0; ma < kModeCount; ++ma) {
            const cplx ua = t.matrix.at(ma, mono.first);
            if (std::abs(ua) == 0.0) continue;
            for (int mb = 0; mb < kModeCount; ++mb) {
                const cplx ub = t.matrix.at(mb, mono.second);
                if (std::abs(ub) == 0.0) continue;
                out.add_monomial(Mode::from_index(ma), Mode::from_index(mb), c * ua * ub);
            }
        }
    }
    out.prune();
    return out;
}

SpacePtr li_space() {
    static const SpacePtr space = [] {
        LocationSet locations({"s1", "s2"});
        std::vector<DoFDomain> dofs{
            {kPathDof, "path", {"L", "D", "R", "U"}},
            {kSpinDof, "spin", {"down", "up"}},
        };
        return std::make_shared<const ModelSpace>(std::move(locations), std::move(dofs));
    }();
    return space;
}

SingleParticleLabel mode_label(const ModelSpace& space, Mode m) {
    const int loc = (m.path == Path::L || m.path == Path::D) ? 0 : 1;
    SingleParticleLabel l;
    l.location = space.locations().index_of(loc == 0 ? "s1" : "s2");
    l.dofs.emplace_back(kPathDof, static_cast<int>(m.path));
    l.dofs.emplace_back(kSpinDof, static_cast<int>(m.spin));
    return l;
}

StateVector ladder_to_state(const LadderPolynomial& poly, const SpacePtr& space) {
    StateVector state(poly.statistics(), space);
    for (const auto& [mono, c] : poly.terms())
        state.add_term(mode_label(*space, Mode::from_index(mono.first)),
                       mode_label(*space, Mode::from_index(mono.second)), c);
    state.prune();
    return state;
}

LadderPolynomial run_interferometer(const PhaseConfig& config) {
    LadderPolynomial psi(Statistics::boson);
    psi.add_monomial({Path::R, Spin::down}, {Path::L, Spin::down}, 1.0);

    // Each party keeps one output port and sends the other across: R->D and
    // L->U in the first layer; local recombination R/U and L/D in the second.
    const LinearModeTransform layer1 =
        compose(hbs_transform(Path::L, Path::U), hbs_transform(Path::R, Path::D));
    const LinearModeTransform layer2 =
        compose(hbs_transform(Path::D, Path::L), hbs_transform(Path::R, Path::U));

    psi = apply_transform(psi, layer1);
    psi = apply_transform(psi, phase_transform(config));
    psi = apply_transform(psi, layer2);
    return psi;
}

StateVector build_li_state_via_circuit(const PhaseConfig& config) {
    return ladder_to_state(run_interferometer(config), li_space());
}

StateVector build_li_state(const PhaseConfig& config) {
    const SpacePtr space = li_space();
    const cplx k1 = config.kappa1();
    const cplx k2 = config.kappa2();
    const cplx i{0.0, 1.0};

    const auto label = [&](Path p, Spin s) { return mode_label(*space, Mode{p, s}); };
    StateVector state(Statistics::boson, space);
    state.add_term(label(Path::L, Spin::down), label(Path::R, Spin::down), 0.25 * (k1 + k2));
    state.add_term(label(Path::D, Spin::up), label(Path::U, Spin::up), -0.25 * (k1 + k2));
    state.add_term(label(Path::D, Spin::up), label(Path::R, Spin::down), 0.25 * i * (k1 - k2));
    state.add_term(label(Path::L, Spin::down), label(Path::U, Spin::up), 0.25 * i * (k1 - k2));
    state.add_term(label(Path::R, Spin::down), label(Path::R, Spin::down), 0.25 * i * k1);
    state.add_term(label(Path::U, Spin::up), label(Path::U, Spin::up), 0.25 * i * k1);
    state.add_term(label(Path::D, Spin::up), label(Path::D, Spin::up), 0.25 * i * k2);
    state.add_term(label(Path::L, Spin::down), label(Path::L, Spin::down), 0.25 * i * k2);
    state.prune();
    return state;
}

}  // namespace moelab
