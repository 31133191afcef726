#pragma once

#include <cmath>
#include <cstddef>
#include <deque>
#include <string>
#include <vector>

#include "jamsim/error.hpp"
#include "jamsim/estimation.hpp"

namespace jamsim {

namespace detail {

/// Regularized incomplete beta function I_x(a, b) by the Lentz continued
/// fraction. Accuracy is far below 1e-10 over the argument range the
/// t-distribution tail ever produces here.
inline double incomplete_beta_cf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 1e-15;
    constexpr double kTiny = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h;
}

inline double incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * incomplete_beta_cf(a, b, x) / a;
    return 1.0 - front * incomplete_beta_cf(b, a, 1.0 - x) / b;
}

/// Two-sided p-value of a t statistic with `dof` degrees of freedom.
inline double t_two_sided_p(double t, double dof) {
    const double x = dof / (dof + t * t);
    return incomplete_beta(dof / 2.0, 0.5, x);
}

} // namespace detail

/// Lag-k ordinary least squares model over azimuth histories:
///   predicted = intercept + sum_i coefficients[i] * window[i]
/// where window runs oldest to newest (window[0] is the oldest lag).
struct LinearModel {
    std::size_t lag_count = 0;
    double intercept = 0.0;
    std::vector<double> coefficients;  // size lag_count, oldest lag first
    double intercept_stderr = 0.0;
    std::vector<double> stderrs;       // per coefficient
    double intercept_p_value = 1.0;
    std::vector<double> p_values;      // per coefficient
    double r_squared = 0.0;
    bool exact_fit = false;            // residual variance was zero
    std::size_t training_rows = 0;
};

struct TrainingSet {
    std::size_t lag_count = 0;
    std::vector<double> windows;  // row-major, rows x lag_count, oldest first
    std::vector<double> targets;

    std::size_t rows() const { return targets.size(); }

    void append_row(const double* window, double target) {
        windows.insert(windows.end(), window, window + lag_count);
        targets.push_back(target);
    }
};

/// Sliding lag-k windows over each ground-truth azimuth sequence; the target
/// is the angle one step ahead. Sequences shorter than k+1 are skipped.
inline TrainingSet build_training_set(const std::vector<std::vector<double>>& sequences,
                                      std::size_t k) {
    if (k < 1) throw ValidationError("build_training_set: lag count must be >= 1");
    TrainingSet ts;
    ts.lag_count = k;
    for (const std::vector<double>& seq : sequences) {
        if (seq.size() < k + 1) continue;
        for (std::size_t i = 0; i + k < seq.size(); ++i)
            ts.append_row(seq.data() + i, seq[i + k]);
    }
    return ts;
}

namespace detail {

/// Solves the symmetric positive definite system G x = rhs by Cholesky.
/// Returns false when a pivot is not positive (rank deficiency), reporting
/// the failing column.
inline bool cholesky_solve(std::vector<double> g, std::size_t n,
                           std::vector<double>& rhs, std::size_t& bad_col) {
    for (std::size_t j = 0; j < n; ++j) {
        double d = g[j * n + j];
        for (std::size_t k = 0; k < j; ++k) d -= g[j * n + k] * g[j * n + k];
        const double scale = std::abs(g[j * n + j]) + 1.0;
        if (d <= 1e-12 * scale) {
            bad_col = j;
            return false;
        }
        g[j * n + j] = std::sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            double v = g[i * n + j];
            for (std::size_t k = 0; k < j; ++k) v -= g[i * n + k] * g[j * n + k];
            g[i * n + j] = v / g[j * n + j];
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        double v = rhs[i];
        for (std::size_t k = 0; k < i; ++k) v -= g[i * n + k] * rhs[k];
        rhs[i] = v / g[i * n + i];
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double v = rhs[ii];
        for (std::size_t k = ii + 1; k < n; ++k) v -= g[k * n + ii] * rhs[k];
        rhs[ii] = v / g[ii * n + ii];
    }
    return true;
}

/// Inverse of a symmetric positive definite matrix, column by column.
inline std::vector<double> spd_inverse(const std::vector<double>& g, std::size_t n) {
    std::vector<double> inv(n * n);
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<double> e(n, 0.0);
        e[c] = 1.0;
        std::size_t bad = 0;
        if (!cholesky_solve(g, n, e, bad))
            throw CollinearityError("spd_inverse: matrix not positive definite");
        for (std::size_t r = 0; r < n; ++r) inv[r * n + c] = e[r];
    }
    return inv;
}

} // namespace detail

/// Ordinary least squares with intercept via the normal equations.
/// Coefficient standard errors and two-sided p-values follow the classical
/// t statistics with rows - k - 1 degrees of freedom.
inline LinearModel fit_linear(const TrainingSet& ts) {
    const std::size_t k = ts.lag_count;
    const std::size_t rows = ts.rows();
    if (rows <= k + 1)
        throw ValidationError("fit_linear: need more than lag_count + 1 training rows");
    const std::size_t p = k + 1;  // intercept + lags

    // G = X^T X and rhs = X^T y with the intercept column folded in front.
    std::vector<double> g(p * p, 0.0), rhs(p, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
        const double* w = ts.windows.data() + r * k;
        const double y = ts.targets[r];
        g[0] += 1.0;
        rhs[0] += y;
        for (std::size_t i = 0; i < k; ++i) {
            g[(i + 1) * p] += w[i];
            g[i + 1] += w[i];
            rhs[i + 1] += w[i] * y;
            for (std::size_t j = 0; j < k; ++j) g[(i + 1) * p + (j + 1)] += w[i] * w[j];
        }
    }

    std::vector<double> beta = rhs;
    std::size_t bad_col = 0;
    if (!detail::cholesky_solve(g, p, beta, bad_col)) {
        if (bad_col == 0)
            throw CollinearityError("fit_linear: degenerate intercept column");
        throw CollinearityError("fit_linear: rank-deficient design, lag column " +
                                std::to_string(bad_col) + " (oldest lag = 1) is collinear");
    }

    LinearModel m;
    m.lag_count = k;
    m.training_rows = rows;
    m.intercept = beta[0];
    m.coefficients.assign(beta.begin() + 1, beta.end());

    double rss = 0.0, tss = 0.0;
    double ysum = 0.0;
    for (double y : ts.targets) ysum += y;
    const double ybar = ysum / static_cast<double>(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        const double* w = ts.windows.data() + r * k;
        double pred = m.intercept;
        for (std::size_t i = 0; i < k; ++i) pred += m.coefficients[i] * w[i];
        const double resid = ts.targets[r] - pred;
        rss += resid * resid;
        tss += (ts.targets[r] - ybar) * (ts.targets[r] - ybar);
    }
    m.r_squared = tss > 0.0 ? 1.0 - rss / tss : 1.0;

    const double dof = static_cast<double>(rows - p);
    const double sigma2 = rss / dof;
    m.exact_fit = sigma2 <= 1e-24;
    const std::vector<double> ginv = detail::spd_inverse(g, p);
    m.stderrs.resize(k);
    m.p_values.resize(k);
    for (std::size_t i = 0; i < p; ++i) {
        const double se = std::sqrt(std::max(sigma2 * ginv[i * p + i], 0.0));
        const double pv = m.exact_fit ? 0.0
                          : (se > 0.0 ? detail::t_two_sided_p(beta[i] / se, dof) : 0.0);
        if (i == 0) {
            m.intercept_stderr = se;
            m.intercept_p_value = pv;
        } else {
            m.stderrs[i - 1] = se;
            m.p_values[i - 1] = pv;
        }
    }
    return m;
}

/// Ring buffer of recent accepted azimuth estimates.
class AngleHistory {
public:
    explicit AngleHistory(std::size_t capacity = 32) : capacity_(capacity) {}

    void push(double azimuth_deg, EstimateSource source) {
        entries_.push_back({azimuth_deg, source});
        if (entries_.size() > capacity_) entries_.pop_front();
    }

    std::size_t size() const { return entries_.size(); }

    /// The k most recent azimuths, oldest first.
    std::vector<double> latest_window(std::size_t k) const {
        if (entries_.size() < k)
            throw ColdStartError("angle history holds fewer entries than the requested lag count");
        std::vector<double> w;
        w.reserve(k);
        for (std::size_t i = entries_.size() - k; i < entries_.size(); ++i)
            w.push_back(entries_[i].azimuth_deg);
        return w;
    }

private:
    struct Entry {
        double azimuth_deg;
        EstimateSource source;
    };
    std::size_t capacity_;
    std::deque<Entry> entries_;
};

/// Next-azimuth forecast from the k most recent history entries, clamped to
/// the scan range.
inline double predict_next(const LinearModel& model, const AngleHistory& history) {
    const std::vector<double> w = history.latest_window(model.lag_count);
    double pred = model.intercept;
    for (std::size_t i = 0; i < model.lag_count; ++i) pred += model.coefficients[i] * w[i];
    return std::clamp(pred, -90.0, 90.0);
}

/// One row of the coefficient significance report.
struct CoefficientReport {
    std::string label;   // "theta_{t-2}" ... "theta_t" or "intercept"
    double coefficient;
    double stderr_value;
    double t_statistic;
    double p_value;
};

struct SignificanceReport {
    std::vector<CoefficientReport> rows;
    bool exact_fit = false;
    double r_squared = 0.0;
    std::size_t training_rows = 0;
};

inline SignificanceReport coefficient_significance(const LinearModel& m) {
    if (m.training_rows <= m.lag_count + 1)
        throw ValidationError("coefficient_significance: no residual degrees of freedom");
    SignificanceReport rep;
    rep.exact_fit = m.exact_fit;
    rep.r_squared = m.r_squared;
    rep.training_rows = m.training_rows;
    rep.rows.push_back({"intercept", m.intercept, m.intercept_stderr,
                        m.intercept_stderr > 0.0 ? m.intercept / m.intercept_stderr : 0.0,
                        m.intercept_p_value});
    for (std::size_t i = 0; i < m.lag_count; ++i) {
        const std::size_t back = m.lag_count - 1 - i;  // 0 for theta_t
        const std::string label = back == 0 ? "theta_t" : "theta_{t-" + std::to_string(back) + "}";
        rep.rows.push_back({label, m.coefficients[i], m.stderrs[i],
                            m.stderrs[i] > 0.0 ? m.coefficients[i] / m.stderrs[i] : 0.0,
                            m.p_values[i]});
    }
    return rep;
}

} // namespace jamsim
