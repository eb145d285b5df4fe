#include "moelab/eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace moelab {

namespace {

double offdiag_norm(const DenseMatrix& a) {
    double s = 0.0;
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < a.cols(); ++c)
            if (r != c) s += std::norm(a.at(r, c));
    return std::sqrt(s);
}

}  // namespace

HermitianEigen hermitian_eigs(const DenseMatrix& m, double herm_tol) {
    if (!m.square()) throw shape_error("hermitian_eigs: matrix not square");
    if (m.rows() > kMaxEigDim) throw shape_error("hermitian_eigs: dimension above cap");
    if (!m.is_hermitian(herm_tol)) throw shape_error("hermitian_eigs: matrix not Hermitian");

    const int n = m.rows();
    DenseMatrix a(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) a.at(r, c) = 0.5 * (m.at(r, c) + std::conj(m.at(c, r)));
    DenseMatrix v = DenseMatrix::identity(n);

    const double scale = std::max(a.max_abs(), 1e-300);
    const double stop = 1e-15 * scale * n;
    constexpr int max_sweeps = 60;

    for (int sweep = 0; sweep < max_sweeps && offdiag_norm(a) > stop; ++sweep) {
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = a.at(p, q);
                const double r = std::abs(apq);
                if (r <= 1e-30 * scale) {
                    a.at(p, q) = 0.0;
                    a.at(q, p) = 0.0;
                    continue;
                }
                const double app = a.at(p, p).real();
                const double aqq = a.at(q, q).real();
                const cplx phase = apq / r;  // apq = r * phase
                const double tau = (app - aqq) / (2.0 * r);
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double sigma = t * c;
                const cplx s = sigma * std::conj(phase);

                // two-sided rotation in the (p,q) plane, J has J_pp=J_qq=c,
                // J_qp=s, J_pq=-conj(s)
                for (int k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const cplx akp = a.at(k, p);
                    const cplx akq = a.at(k, q);
                    a.at(k, p) = akp * c + akq * s;
                    a.at(k, q) = -akp * std::conj(s) + akq * c;
                    a.at(p, k) = std::conj(a.at(k, p));
                    a.at(q, k) = std::conj(a.at(k, q));
                }
                const double app_new = c * c * app + 2.0 * c * sigma * r + sigma * sigma * aqq;
                const double aqq_new = sigma * sigma * app - 2.0 * c * sigma * r + c * c * aqq;
                a.at(p, p) = app_new;
                a.at(q, q) = aqq_new;
                a.at(p, q) = 0.0;
                a.at(q, p) = 0.0;

                for (int k = 0; k < n; ++k) {
                    const cplx vkp = v.at(k, p);
                    const cplx vkq = v.at(k, q);
                    v.at(k, p) = vkp * c + vkq * s;
                    v.at(k, q) = -vkp * std::conj(s) + vkq * c;
                }
            }
        }
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return a.at(i, i).real() < a.at(j, j).real(); });

    HermitianEigen out;
    out.values.reserve(static_cast<std::size_t>(n));
    out.vectors = DenseMatrix(n, n);
    for (int c = 0; c < n; ++c) {
        out.values.push_back(a.at(order[static_cast<std::size_t>(c)], order[static_cast<std::size_t>(c)]).real());
        for (int r = 0; r < n; ++r) out.vectors.at(r, c) = v.at(r, order[static_cast<std::size_t>(c)]);
    }
    return out;
}

namespace {

struct Givens {
    double c = 1.0;
    cplx s = 0.0;
};

Givens make_givens(cplx a, cplx b) {
    Givens g;
    const double na = std::abs(a);
    const double nb = std::abs(b);
    if (nb == 0.0) return g;
    const double r = std::hypot(na, nb);
    if (na == 0.0) {
        g.c = 0.0;
        g.s = std::conj(b) / nb;
        return g;
    }
    g.c = na / r;
    g.s = (a / na) * std::conj(b) / r;
    return g;
}

// Eigenvalues of [[a, b], [c, d]].
std::pair<cplx, cplx> eig2x2(cplx a, cplx b, cplx c, cplx d) {
    const cplx tr = a + d;
    const cplx det = a * d - b * c;
    const cplx disc = std::sqrt(tr * tr - 4.0 * det);
    return {0.5 * (tr + disc), 0.5 * (tr - disc)};
}

void hessenberg_reduce(DenseMatrix& h) {
    const int n = h.rows();
    for (int k = 0; k < n - 2; ++k) {
        double colnorm = 0.0;
        for (int i = k + 1; i < n; ++i) colnorm += std::norm(h.at(i, k));
        colnorm = std::sqrt(colnorm);
        if (colnorm <= 1e-300) continue;

        cplx alpha = h.at(k + 1, k);
        const double aabs = std::abs(alpha);
        const cplx phase = aabs > 0.0 ? alpha / aabs : cplx(1.0);
        const cplx beta = -phase * colnorm;

        std::vector<cplx> u(static_cast<std::size_t>(n), 0.0);
        u[static_cast<std::size_t>(k + 1)] = alpha - beta;
        for (int i = k + 2; i < n; ++i) u[static_cast<std::size_t>(i)] = h.at(i, k);
        double unorm2 = 0.0;
        for (const auto& x : u) unorm2 += std::norm(x);
        if (unorm2 <= 1e-300) continue;

        // H <- P H P with P = I - 2 u u^dag / |u|^2
        for (int c = 0; c < n; ++c) {
            cplx dot = 0.0;
            for (int i = k + 1; i < n; ++i) dot += std::conj(u[static_cast<std::size_t>(i)]) * h.at(i, c);
            dot *= 2.0 / unorm2;
            for (int i = k + 1; i < n; ++i) h.at(i, c) -= dot * u[static_cast<std::size_t>(i)];
        }
        for (int r = 0; r < n; ++r) {
            cplx dot = 0.0;
            for (int i = k + 1; i < n; ++i) dot += h.at(r, i) * u[static_cast<std::size_t>(i)];
            dot *= 2.0 / unorm2;
            for (int i = k + 1; i < n; ++i) h.at(r, i) -= dot * std::conj(u[static_cast<std::size_t>(i)]);
        }
        for (int i = k + 2; i < n; ++i) h.at(i, k) = 0.0;
    }
}

}  // namespace

std::vector<cplx> general_eigs(const DenseMatrix& m) {
    if (!m.square()) throw shape_error("general_eigs: matrix not square");
    if (m.rows() > kMaxEigDim) throw shape_error("general_eigs: dimension above cap");
    const int n = m.rows();
    std::vector<cplx> values;
    values.reserve(static_cast<std::size_t>(n));
    if (n == 0) return values;
    if (n == 1) return {m.at(0, 0)};

    DenseMatrix h = m;
    hessenberg_reduce(h);

    const double scale = std::max(h.max_abs(), 1e-300);
    const double eps = std::numeric_limits<double>::epsilon();
    int hi = n - 1;
    int iters_total = 0;
    int iters_since_deflation = 0;
    const int max_iters = 100 * n;

    while (hi >= 0) {
        // locate the active block [lo..hi]
        int lo = hi;
        while (lo > 0) {
            const double sub = std::abs(h.at(lo, lo - 1));
            if (sub <= eps * (std::abs(h.at(lo - 1, lo - 1)) + std::abs(h.at(lo, lo))) + 1e-300) {
                h.at(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }

        if (lo == hi) {
            values.push_back(h.at(hi, hi));
            --hi;
            iters_since_deflation = 0;
            continue;
        }
        if (lo == hi - 1) {
            auto [e1, e2] = eig2x2(h.at(lo, lo), h.at(lo, hi), h.at(hi, lo), h.at(hi, hi));
            values.push_back(e1);
            values.push_back(e2);
            hi = lo - 1;
            iters_since_deflation = 0;
            continue;
        }

        if (++iters_total > max_iters)
            throw convergence_error("general_eigs: QR iteration exceeded sweep cap");

        // Wilkinson shift: trailing 2x2 eigenvalue closest to the corner
        cplx shift;
        {
            auto [e1, e2] = eig2x2(h.at(hi - 1, hi - 1), h.at(hi - 1, hi), h.at(hi, hi - 1), h.at(hi, hi));
            const cplx corner = h.at(hi, hi);
            shift = std::abs(e1 - corner) < std::abs(e2 - corner) ? e1 : e2;
        }
        if (++iters_since_deflation % 12 == 0)
            shift += cplx(0.75 * std::abs(h.at(hi, hi - 1)), 0.0);  // exceptional shift

        for (int i = lo; i <= hi; ++i) h.at(i, i) -= shift;

        std::vector<Givens> rot(static_cast<std::size_t>(hi - lo));
        for (int k = lo; k < hi; ++k) {
            Givens g = make_givens(h.at(k, k), h.at(k + 1, k));
            rot[static_cast<std::size_t>(k - lo)] = g;
            for (int c = k; c <= hi; ++c) {
                const cplx x = h.at(k, c);
                const cplx y = h.at(k + 1, c);
                h.at(k, c) = g.c * x + g.s * y;
                h.at(k + 1, c) = -std::conj(g.s) * x + g.c * y;
            }
            h.at(k + 1, k) = 0.0;
        }
        for (int k = lo; k < hi; ++k) {
            const Givens& g = rot[static_cast<std::size_t>(k - lo)];
            const int rmax = std::min(k + 2, hi);
            for (int r = lo; r <= rmax; ++r) {
                const cplx x = h.at(r, k);
                const cplx y = h.at(r, k + 1);
                h.at(r, k) = x * g.c + y * std::conj(g.s);
                h.at(r, k + 1) = -x * g.s + y * g.c;
            }
        }
        for (int i = lo; i <= hi; ++i) h.at(i, i) += shift;

        // suppress subdiagonal underflow noise
        for (int k = lo + 1; k <= hi; ++k)
            if (std::abs(h.at(k, k - 1)) < 1e-300 * scale) h.at(k, k - 1) = 0.0;
    }
    return values;
}

double multiset_match_error(std::vector<cplx> actual, std::vector<cplx> expected) {
    if (actual.size() != expected.size()) return std::numeric_limits<double>::infinity();
    std::sort(expected.begin(), expected.end(),
              [](cplx a, cplx b) { return std::abs(a) > std::abs(b); });
    double worst = 0.0;
    std::vector<bool> used(actual.size(), false);
    for (const cplx& e : expected) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_i = 0;
        for (std::size_t i = 0; i < actual.size(); ++i) {
            if (used[i]) continue;
            const double d = std::abs(actual[i] - e);
            if (d < best) {
                best = d;
                best_i = i;
            }
        }
        used[best_i] = true;
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace moelab
