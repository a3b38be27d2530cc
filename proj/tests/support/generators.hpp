#pragma once

// Hand-rolled generators for property tests. Every generator is a pure
// function of its seed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "iwasawa/kan.hpp"
#include "iwasawa/linalg.hpp"
#include "iwasawa/rng.hpp"
#include "iwasawa/spectral_frame.hpp"
#include "iwasawa/triangular.hpp"

namespace iwasawa::testing {

/// Strictly decreasing values with consecutive gaps in [min_gap, min_gap + 1).
inline std::vector<double> separated_values(std::size_t n, std::uint64_t seed, double min_gap = 0.5) {
    Rng rng(seed);
    std::vector<double> v(n);
    double x = rng.uniform(-1.0, 1.0) + static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = x;
        x -= min_gap + rng.uniform();
    }
    return v;
}

/// Frame with the given multiplicities, separated cluster values and a
/// random unitary basis.
inline SpectralFrame random_frame(const std::vector<std::size_t>& multiplicities, std::uint64_t seed) {
    std::size_t n = 0;
    for (auto m : multiplicities) n += m;
    const std::vector<double> values = separated_values(multiplicities.size(), splitmix64(seed));
    std::vector<Cluster> clusters;
    for (std::size_t i = 0; i < values.size(); ++i) clusters.push_back({values[i], multiplicities[i]});
    return SpectralFrame(std::move(clusters), random_unitary(n, splitmix64(seed + 1)));
}

inline SpectralFrame random_regular_frame(std::size_t n, std::uint64_t seed) {
    return random_frame(std::vector<std::size_t>(n, 1), seed);
}

/// Random composition of n into blocks of size 1..3, at least one of size > 1
/// when n >= 2.
inline std::vector<std::size_t> random_multiplicities(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::size_t> m;
    std::size_t left = n;
    while (left > 0) {
        const std::size_t take = std::min<std::size_t>(left, 1 + rng.next_u64() % 3);
        m.push_back(take);
        left -= take;
    }
    if (n >= 2 && std::all_of(m.begin(), m.end(), [](std::size_t k) { return k == 1; })) {
        m.front() = 2;
        m.pop_back();
    }
    return m;
}

inline ComplexMatrix random_hermitian(std::size_t n, std::uint64_t seed) {
    const ComplexMatrix z = random_ginibre(n, seed);
    return 0.5 * (z + adjoint(z));
}

/// Well-conditioned Hermitian positive definite: c* c / n + shift.
inline ComplexMatrix random_hpd(std::size_t n, std::uint64_t seed, double shift = 0.5) {
    const ComplexMatrix c = random_ginibre(n, seed);
    ComplexMatrix p = (1.0 / static_cast<double>(n)) * (adjoint(c) * c) + shift * ComplexMatrix::identity(n);
    return 0.5 * (p + adjoint(p));
}

/// Valid factors for a frame: Haar-like k, block positive a with spectrum in
/// [0.5, 2], unipotent n with strictly upper entries of size about 1/sqrt(n).
inline KanFactors random_factors(const SpectralFrame& frame, std::uint64_t seed) {
    const std::size_t n = frame.dim();
    Rng rng(seed);
    const ComplexMatrix k = random_unitary(n, splitmix64(seed));

    ComplexMatrix af(n, n);
    const auto& off = frame.block_offsets();
    for (std::size_t b = 0; b < frame.block_count(); ++b) {
        const std::size_t m = off[b + 1] - off[b];
        const ComplexMatrix u = random_unitary(m, splitmix64(seed + 10 + b));
        ComplexMatrix d(m, m);
        for (std::size_t i = 0; i < m; ++i) d(i, i) = rng.uniform(0.5, 2.0);
        ComplexMatrix block = u * d * adjoint(u);
        af.set_block(off[b], off[b], 0.5 * (block + adjoint(block)));
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    ComplexMatrix nf = ComplexMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (frame.block_of()[i] < frame.block_of()[j]) nf(i, j) = scale * rng.complex_normal();
    return {k, from_frame(frame, af), from_frame(frame, nf), 0.0, 0.0};
}

/// Relative Frobenius distance ||x - y|| / (1 + ||y||).
inline double rel_diff(const ComplexMatrix& x, const ComplexMatrix& y) {
    return frobenius_norm(x - y) / (1.0 + frobenius_norm(y));
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on the
/// three-term recurrence.
inline void gauss_legendre(std::size_t order, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(order, 0.0);
    weights.assign(order, 0.0);
    const double n = static_cast<double>(order);
    for (std::size_t i = 0; i < order; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= order; ++k) {
                const double kk = static_cast<double>(k);
                const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
}

/// (1/T) int_0^T e^{itX} z e^{-itX} dt with T an integer, by 16-point
/// Gauss-Legendre on each unit panel. The panel integral S is computed once
/// and then shifted by powers of P = e^{iX}.
inline ComplexMatrix cesaro_average(const ComplexMatrix& x, const ComplexMatrix& z, std::size_t horizon) {
    const std::size_t dim = x.rows();
    std::vector<double> nodes, weights;
    gauss_legendre(16, nodes, weights);
    ComplexMatrix panel(dim, dim);
    for (std::size_t q = 0; q < nodes.size(); ++q) {
        const double t = 0.5 * (nodes[q] + 1.0);
        const ComplexMatrix u = matrix_exp(cplx(0.0, t) * x);
        panel += (0.5 * weights[q]) * (u * z * adjoint(u));
    }
    const ComplexMatrix step = matrix_exp(cplx(0.0, 1.0) * x);
    const ComplexMatrix step_adj = adjoint(step);
    ComplexMatrix shifted = panel;
    ComplexMatrix total(dim, dim);
    for (std::size_t p = 0; p < horizon; ++p) {
        total += shifted;
        shifted = step * shifted * step_adj;
    }
    return (1.0 / static_cast<double>(horizon)) * total;
}

}  // namespace iwasawa::testing
