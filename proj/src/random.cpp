#include "moelab/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace moelab {

std::uint64_t SeededGenerator::next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double SeededGenerator::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SeededGenerator::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double SeededGenerator::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
}

cplx SeededGenerator::gaussian_cplx() {
    const double re = gaussian();
    const double im = gaussian();
    return {re, im};
}

int SeededGenerator::uniform_int(int n) {
    return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n));
}

SeededGenerator SeededGenerator::split(std::uint64_t task_index) const {
    SeededGenerator child(seed_ ^ (0x632be59bd9b4e019ULL * (task_index + 1)));
    return child;
}

std::vector<cplx> random_pure_three_qubit(SeededGenerator& gen) {
    std::vector<cplx> amps(8);
    double norm2 = 0.0;
    for (auto& a : amps) {
        a = gen.gaussian_cplx();
        norm2 += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& a : amps) a *= inv;
    return amps;
}

StateVector random_two_particle_state(SeededGenerator& gen, const SpacePtr& space,
                                      Statistics statistics) {
    const auto labels = enumerate_full_labels(*space);
    const int m = static_cast<int>(labels.size());
    StateVector state(statistics, space);
    const int target_terms = 2 + gen.uniform_int(std::min(10, m * m));
    int added = 0;
    int guard = 0;
    while (added < target_terms && guard++ < 200) {
        const auto& a = labels[static_cast<std::size_t>(gen.uniform_int(m))];
        const auto& b = labels[static_cast<std::size_t>(gen.uniform_int(m))];
        if (statistics == Statistics::fermion && a == b) continue;
        state.add_term(a, b, gen.gaussian_cplx());
        ++added;
    }
    return normalize_state(state);
}

StateVector random_one_per_location_state(SeededGenerator& gen, const SpacePtr& space,
                                          Statistics statistics, int location_a, int location_b,
                                          int frozen_dof) {
    const auto at_a = enumerate_full_labels_at(*space, location_a);
    const auto at_b = enumerate_full_labels_at(*space, location_b);
    int frozen_a = 0;
    int frozen_b = 0;
    if (frozen_dof > 0) {
        frozen_a = gen.uniform_int(space->dof(frozen_dof).size());
        frozen_b = gen.uniform_int(space->dof(frozen_dof).size());
    }
    StateVector state(statistics, space);
    for (const auto& la : at_a) {
        if (frozen_dof > 0 && la.dof_value(frozen_dof) != frozen_a) continue;
        for (const auto& lb : at_b) {
            if (frozen_dof > 0 && lb.dof_value(frozen_dof) != frozen_b) continue;
            state.add_term(la, lb, gen.gaussian_cplx());
        }
    }
    return normalize_state(state);
}

DenseMatrix brute_force_reduced(const DenseMatrix& dense_full, const std::vector<int>& dims,
                                const std::vector<int>& keep_axes) {
    int total = 1;
    for (int d : dims) total *= d;
    if (dense_full.rows() != total || dense_full.cols() != total)
        throw shape_error("brute_force_reduced: matrix does not match the axis dimensions");
    for (int k : keep_axes)
        if (k < 0 || k >= static_cast<int>(dims.size()))
            throw shape_error("brute_force_reduced: keep axis out of range");
    std::set<int> keep(keep_axes.begin(), keep_axes.end());

    int kept_dim = 1;
    for (int k : keep_axes) kept_dim *= dims[static_cast<std::size_t>(k)];

    const auto digits_of = [&](int index) {
        std::vector<int> d(dims.size());
        for (std::size_t i = dims.size(); i-- > 0;) {
            d[i] = index % dims[i];
            index /= dims[i];
        }
        return d;
    };
    const auto kept_index = [&](const std::vector<int>& digits) {
        int idx = 0;
        for (int k : keep_axes) idx = idx * dims[static_cast<std::size_t>(k)] + digits[static_cast<std::size_t>(k)];
        return idx;
    };

    DenseMatrix out(kept_dim, kept_dim);
    for (int r = 0; r < total; ++r) {
        const auto dr = digits_of(r);
        for (int c = 0; c < total; ++c) {
            const auto dc = digits_of(c);
            bool diagonal_in_traced = true;
            for (std::size_t i = 0; i < dims.size(); ++i)
                if (!keep.count(static_cast<int>(i)) && dr[i] != dc[i]) diagonal_in_traced = false;
            if (!diagonal_in_traced) continue;
            out.at(kept_index(dr), kept_index(dc)) += dense_full.at(r, c);
        }
    }
    return out;
}

}  // namespace moelab
