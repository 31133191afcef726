#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "jamsim/error.hpp"

namespace jamsim {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Deliberately small-scale: the whole
/// pipeline works on M*N x M*N covariance blocks (4x4 by default).
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const cplx> data() const { return data_; }
    std::span<cplx> data() { return data_; }

    ComplexMatrix conjugate_transpose() const {
        ComplexMatrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                out(c, r) = std::conj((*this)(r, c));
        return out;
    }

    ComplexMatrix multiply(const ComplexMatrix& rhs) const {
        if (cols_ != rhs.rows_)
            throw DimensionError("matrix multiply: inner dimensions disagree");
        ComplexMatrix out(rows_, rhs.cols_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t k = 0; k < cols_; ++k) {
                const cplx v = (*this)(r, k);
                if (v == cplx{}) continue;
                for (std::size_t c = 0; c < rhs.cols_; ++c)
                    out(r, c) += v * rhs(k, c);
            }
        }
        return out;
    }

    std::vector<cplx> multiply(std::span<const cplx> v) const {
        if (cols_ != v.size())
            throw DimensionError("matrix-vector multiply: length mismatch");
        std::vector<cplx> out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            cplx acc{};
            for (std::size_t c = 0; c < cols_; ++c) acc += (*this)(r, c) * v[c];
            out[r] = acc;
        }
        return out;
    }

    cplx trace() const {
        cplx t{};
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const cplx& v : data_) s += std::norm(v);
        return std::sqrt(s);
    }

    double max_abs() const {
        double m = 0.0;
        for (const cplx& v : data_) m = std::max(m, std::abs(v));
        return m;
    }

    /// Max |H - H^H| entry relative to max |H| entry.
    double hermitian_defect() const {
        if (rows_ != cols_) return std::numeric_limits<double>::infinity();
        double defect = 0.0;
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                defect = std::max(defect, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
        return defect;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

/// Eigenvalues sorted descending; eigenvector columns aligned with them.
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;
};

namespace detail {

constexpr int kJacobiMaxSweeps = 100;

inline double offdiag_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            if (r != c) s += std::norm(a(r, c));
    return std::sqrt(s);
}

} // namespace detail

/// Hermitian eigendecomposition by cyclic Jacobi rotations.
///
/// Unconditionally convergent on Hermitian input and fully accurate at the
/// 4x4 scale this library runs at. Ties in the descending eigenvalue order
/// are broken by the original column index so repeated runs and degenerate
/// spectra stay deterministic.
inline EigenDecomposition hermitian_eig(const ComplexMatrix& input) {
    const std::size_t n = input.rows();
    if (n == 0 || input.cols() != n)
        throw DimensionError("hermitian_eig: matrix must be square and non-empty");
    const double scale = input.max_abs();
    if (input.hermitian_defect() > 1e-8 * std::max(scale, 1e-300))
        throw DimensionError("hermitian_eig: matrix is not Hermitian within 1e-8 relative tolerance");

    ComplexMatrix a = input;
    // Symmetrize exactly; removes the caller's roundoff-level defect.
    for (std::size_t r = 0; r < n; ++r) {
        a(r, r) = cplx(a(r, r).real(), 0.0);
        for (std::size_t c = r + 1; c < n; ++c) {
            const cplx m = 0.5 * (a(r, c) + std::conj(a(c, r)));
            a(r, c) = m;
            a(c, r) = std::conj(m);
        }
    }

    ComplexMatrix v = ComplexMatrix::identity(n);
    const double threshold = 1e-12 * a.frobenius_norm();

    int sweep = 0;
    for (; sweep < detail::kJacobiMaxSweeps; ++sweep) {
        if (detail::offdiag_norm(a) <= threshold) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;
                const cplx phase = apq / mag;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? -1.0 : 1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // G differs from identity in the (p,q) block:
                //   [ c        -s*phase ]
                //   [ s*conj(phase)  c  ]
                const cplx gpq = -s * phase;
                const cplx gqp = s * std::conj(phase);
                // A <- G^H A G, applied as column then row updates.
                for (std::size_t r = 0; r < n; ++r) {
                    const cplx arp = a(r, p);
                    const cplx arq = a(r, q);
                    a(r, p) = arp * c + arq * gqp;
                    a(r, q) = arp * gpq + arq * c;
                }
                for (std::size_t col = 0; col < n; ++col) {
                    const cplx apc = a(p, col);
                    const cplx aqc = a(q, col);
                    a(p, col) = c * apc + std::conj(gqp) * aqc;
                    a(q, col) = std::conj(gpq) * apc + c * aqc;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const cplx vrp = v(r, p);
                    const cplx vrq = v(r, q);
                    v(r, p) = vrp * c + vrq * gqp;
                    v(r, q) = vrp * gpq + vrq * c;
                }
            }
        }
    }
    if (sweep == detail::kJacobiMaxSweeps &&
        detail::offdiag_norm(a) > threshold)
        throw ConvergenceError("hermitian_eig: Jacobi did not converge within 100 sweeps");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() > a(j, j).real();
    });

    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; ++r)
            out.eigenvectors(r, k) = v(r, order[k]);
    }
    return out;
}

/// Solves H x = b for Hermitian positive definite H through the
/// eigendecomposition, so no explicit inverse is ever formed.
inline std::vector<cplx> solve_hermitian(const ComplexMatrix& h, std::span<const cplx> b) {
    if (h.rows() != b.size())
        throw DimensionError("solve_hermitian: right-hand side length mismatch");
    const EigenDecomposition eig = hermitian_eig(h);
    const double lambda_max = eig.eigenvalues.front();
    const double lambda_min = eig.eigenvalues.back();
    if (lambda_min <= 1e-12 * lambda_max)
        throw ConditioningError("solve_hermitian: matrix singular or indefinite "
                                "(min eigenvalue <= 1e-12 * max)");
    const std::size_t n = h.rows();
    // x = V diag(1/lambda) V^H b
    std::vector<cplx> proj(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx acc{};
        for (std::size_t r = 0; r < n; ++r)
            acc += std::conj(eig.eigenvectors(r, k)) * b[r];
        proj[k] = acc / eig.eigenvalues[k];
    }
    std::vector<cplx> x(n);
    for (std::size_t r = 0; r < n; ++r) {
        cplx acc{};
        for (std::size_t k = 0; k < n; ++k)
            acc += eig.eigenvectors(r, k) * proj[k];
        x[r] = acc;
    }
    return x;
}

/// Loading term used before inverting sample covariances that may be
/// rank-deficient at small snapshot counts.
inline ComplexMatrix diagonally_loaded(const ComplexMatrix& r, double factor = 1e-10) {
    ComplexMatrix out = r;
    const double load = factor * r.trace().real() / static_cast<double>(r.rows());
    for (std::size_t i = 0; i < r.rows(); ++i) out(i, i) += load;
    return out;
}

} // namespace jamsim
