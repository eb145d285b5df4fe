#include "moelab/measures.hpp"

#include <algorithm>
#include <cmath>

#include "moelab/eig.hpp"
#include "moelab/random.hpp"

namespace moelab {

namespace {

const DenseMatrix& sigma_y_pair() {
    static const DenseMatrix yy = [] {
        DenseMatrix y(2, 2, {cplx(0, 0), cplx(0, -1), cplx(0, 1), cplx(0, 0)});
        return kron(y, y);
    }();
    return yy;
}

DenseMatrix sqrt_psd(const DenseMatrix& m) {
    const auto eig = hermitian_eigs(m);
    const int n = m.rows();
    DenseMatrix out(n, n);
    for (int k = 0; k < n; ++k) {
        const double root = eig.values[static_cast<std::size_t>(k)] > 0.0
                                ? std::sqrt(eig.values[static_cast<std::size_t>(k)])
                                : 0.0;
        if (root == 0.0) continue;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                out.at(r, c) += root * eig.vectors.at(r, k) * std::conj(eig.vectors.at(c, k));
    }
    return out;
}

}  // namespace

DenseMatrix spin_flip(const DenseMatrix& rho) {
    if (rho.rows() != 4 || rho.cols() != 4) throw shape_error("spin_flip: expected a 4x4 matrix");
    return sigma_y_pair() * rho.conjugate() * sigma_y_pair();
}

void validate_two_qubit_density(const DenseMatrix& rho, double tol) {
    if (rho.rows() != 4 || rho.cols() != 4)
        throw domain_error("two-qubit density must be 4x4");
    if (!rho.is_hermitian(tol)) throw domain_error("density matrix not Hermitian");
    if (std::abs(rho.trace() - cplx(1.0)) > tol) throw domain_error("density matrix trace is not 1");
    const auto eig = hermitian_eigs(rho, tol);
    if (eig.values.front() < -tol) throw domain_error("density matrix not positive semidefinite");
}

double concurrence(const DenseMatrix& rho) {
    validate_two_qubit_density(rho);
    // The sqrt-eigenvalues of rho*spin_flip(rho) are the singular values of
    // W = sqrt(rho~) sqrt(rho); reading them off the Hermitian embedding
    // [[0, W], [W^dag, 0]] avoids squaring away half the precision on
    // rank-deficient inputs.
    const DenseMatrix w = sqrt_psd(spin_flip(rho)) * sqrt_psd(rho);
    DenseMatrix embed(8, 8);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            embed.at(r, 4 + c) = w.at(r, c);
            embed.at(4 + r, c) = std::conj(w.at(c, r));
        }
    const auto eig = hermitian_eigs(embed);  // ascending: {-s_i} then {+s_i}
    std::vector<double> roots;
    for (int k = 7; k >= 4; --k) roots.push_back(std::max(0.0, eig.values[static_cast<std::size_t>(k)]));
    const double c = roots[0] - roots[1] - roots[2] - roots[3];
    return std::max(0.0, c);
}

NegativityResult negativity_lognegativity(const DenseMatrix& rho) {
    validate_two_qubit_density(rho);
    const DenseMatrix pt = partial_transpose(rho, 2, 2, Subsystem::B);
    NegativityResult out;
    out.pt_eigenvalues = hermitian_eigs(pt).values;
    for (double l : out.pt_eigenvalues)
        if (l < 0.0) out.negativity += -l;
    out.log_negativity = std::log2(1.0 + 2.0 * out.negativity);
    return out;
}

double von_neumann_entropy(const DenseMatrix& rho) {
    if (!rho.square()) throw domain_error("von_neumann_entropy: matrix not square");
    if (!rho.is_hermitian(1e-8)) throw domain_error("von_neumann_entropy: matrix not Hermitian");
    if (std::abs(rho.trace() - cplx(1.0)) > 1e-8)
        throw domain_error("von_neumann_entropy: trace is not 1");
    double s = 0.0;
    for (double l : hermitian_eigs(rho).values) {
        if (l < -1e-10) throw domain_error("von_neumann_entropy: negative eigenvalue");
        if (l > 0.0) s -= l * std::log(l);
    }
    return std::max(0.0, s);
}

MonogamyReport ckw_check(const std::vector<cplx>& psi) {
    if (psi.size() != 8) throw domain_error("ckw_check: expected 8 amplitudes");
    double norm2 = 0.0;
    for (const cplx& a : psi) norm2 += std::norm(a);
    if (std::abs(norm2 - 1.0) > 1e-10) throw domain_error("ckw_check: state not normalized");

    DenseMatrix rho(8, 8);
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c)
            rho.at(r, c) = psi[static_cast<std::size_t>(r)] * std::conj(psi[static_cast<std::size_t>(c)]);

    const std::vector<int> dims{2, 2, 2};
    const DenseMatrix rho_ab = brute_force_reduced(rho, dims, {0, 1});
    const DenseMatrix rho_ac = brute_force_reduced(rho, dims, {0, 2});
    const DenseMatrix rho_a = brute_force_reduced(rho, dims, {0});

    const double c_ab = concurrence(rho_ab);
    const double c_ac = concurrence(rho_ac);
    const cplx det_a = rho_a.at(0, 0) * rho_a.at(1, 1) - rho_a.at(0, 1) * rho_a.at(1, 0);

    MonogamyReport rep;
    rep.measure = "squared-concurrence";
    rep.e_ab = c_ab * c_ab;
    rep.e_ac = c_ac * c_ac;
    rep.e_a_bc = 4.0 * det_a.real();
    rep.bound = rep.e_a_bc;
    rep.holds = rep.e_ab + rep.e_ac <= rep.bound + 1e-9;
    rep.maximal_violation = std::abs(rep.e_ab - 1.0) < 1e-6 && std::abs(rep.e_ac - 1.0) < 1e-6;
    return rep;
}

MonogamyReport moe_report(double e_pair_1, double e_pair_2, double e_max,
                          const std::string& measure) {
    if (e_pair_1 < 0.0 || e_pair_2 < 0.0 || e_max < 0.0)
        throw domain_error("moe_report: entanglement values must be nonnegative");
    if (e_pair_1 > e_max + 1e-9 || e_pair_2 > e_max + 1e-9)
        throw domain_error("moe_report: pair value exceeds the measure maximum");
    MonogamyReport rep;
    rep.measure = measure;
    rep.e_ab = e_pair_1;
    rep.e_ac = e_pair_2;
    rep.e_a_bc = e_max;
    rep.bound = e_max;
    rep.holds = e_pair_1 + e_pair_2 <= e_max + 1e-9;
    rep.maximal_violation =
        std::abs(e_pair_1 - e_max) < 1e-6 && std::abs(e_pair_2 - e_max) < 1e-6;
    return rep;
}

}  // namespace moelab
