#pragma once

// Shared generators and independent oracles for the test suites. Everything
// here recomputes results by the most literal route available (explicit
// inverses, double loops, quadrature) so it cannot share a bug with the
// implementation under test.

#include <cmath>
#include <complex>
#include <vector>

#include "jamsim/array.hpp"
#include "jamsim/linalg.hpp"
#include "jamsim/rng.hpp"

namespace oracle {

using jamsim::cplx;
using jamsim::ComplexMatrix;

inline ComplexMatrix random_hermitian(jamsim::Rng& rng, std::size_t n, double scale = 1.0) {
    ComplexMatrix h(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        h(r, r) = scale * rng.gaussian();
        for (std::size_t c = r + 1; c < n; ++c) {
            const cplx v{scale * rng.gaussian(), scale * rng.gaussian()};
            h(r, c) = v;
            h(c, r) = std::conj(v);
        }
    }
    return h;
}

/// Random Hermitian positive definite matrix A A^H + eps I.
inline ComplexMatrix random_spd(jamsim::Rng& rng, std::size_t n, double ridge = 0.1) {
    ComplexMatrix a(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) a(r, c) = cplx{rng.gaussian(), rng.gaussian()};
    ComplexMatrix spd = a.multiply(a.conjugate_transpose());
    for (std::size_t i = 0; i < n; ++i) spd(i, i) += ridge;
    return spd;
}

/// Gauss-Jordan inverse with partial pivoting; the brute-force reference for
/// everything the library solves without forming an inverse.
inline ComplexMatrix explicit_inverse(const ComplexMatrix& m) {
    const std::size_t n = m.rows();
    ComplexMatrix a = m;
    ComplexMatrix inv = ComplexMatrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        if (pivot != col)
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(a(col, c), a(pivot, c));
                std::swap(inv(col, c), inv(pivot, c));
            }
        const cplx p = a(col, col);
        for (std::size_t c = 0; c < n; ++c) {
            a(col, c) /= p;
            inv(col, c) /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const cplx f = a(r, col);
            if (f == cplx{}) continue;
            for (std::size_t c = 0; c < n; ++c) {
                a(r, c) -= f * a(col, c);
                inv(r, c) -= f * inv(col, c);
            }
        }
    }
    return inv;
}

inline double vec_rel_err(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += std::norm(a[i] - b[i]);
        den += std::norm(b[i]);
    }
    return std::sqrt(num / std::max(den, 1e-300));
}

/// Analytic two-source covariance p_s a_s a_s^H + p_j a_j a_j^H + sigma^2 I.
inline ComplexMatrix analytic_covariance(const jamsim::ArrayGeometry& geom,
                                         const jamsim::Direction& src, double p_src,
                                         const jamsim::Direction& jam, double p_jam,
                                         double noise) {
    const auto a_s = jamsim::steering_vector(geom, src);
    const auto a_j = jamsim::steering_vector(geom, jam);
    const std::size_t n = a_s.size();
    ComplexMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            r(i, k) = p_src * a_s[i] * std::conj(a_s[k]) + p_jam * a_j[i] * std::conj(a_j[k]);
    for (std::size_t i = 0; i < n; ++i) r(i, i) += noise;
    return r;
}

/// Analytic output SINR of weights w against the signal/interference model.
inline double analytic_sinr(const std::vector<cplx>& w, const std::vector<cplx>& a_s,
                            double p_src, const std::vector<cplx>& a_j, double p_jam,
                            double noise) {
    cplx gs{}, gj{};
    double wnorm = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        gs += std::conj(w[i]) * a_s[i];
        gj += std::conj(w[i]) * a_j[i];
        wnorm += std::norm(w[i]);
    }
    return p_src * std::norm(gs) / (p_jam * std::norm(gj) + noise * wnorm);
}

/// Student-t two-sided p-value by Simpson quadrature of the density; the
/// independent check on the continued-fraction implementation.
inline double t_two_sided_p_quadrature(double t, double dof) {
    const double a = std::abs(t);
    // log normalization: lgamma((v+1)/2) - lgamma(v/2) - 0.5 log(v pi)
    const double ln_c = std::lgamma((dof + 1.0) / 2.0) - std::lgamma(dof / 2.0) -
                        0.5 * std::log(dof * std::acos(-1.0));
    auto pdf = [&](double x) {
        return std::exp(ln_c - (dof + 1.0) / 2.0 * std::log1p(x * x / dof));
    };
    // integrate pdf over [-a, a] with Simpson, p = 1 - integral
    const int steps = 20000;
    const double h = 2.0 * a / steps;
    double acc = pdf(-a) + pdf(a);
    for (int i = 1; i < steps; ++i) acc += pdf(-a + h * i) * (i % 2 ? 4.0 : 2.0);
    const double central = acc * h / 3.0;
    return std::max(0.0, 1.0 - central);
}

} // namespace oracle
