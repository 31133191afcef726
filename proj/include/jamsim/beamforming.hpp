#pragma once

#include <vector>

#include "jamsim/array.hpp"
#include "jamsim/estimation.hpp"
#include "jamsim/linalg.hpp"
#include "jamsim/signal_sim.hpp"

namespace jamsim {

enum class WeightKind { kMvdr, kFixed };

/// Complex element weights satisfying w^H a(look) = 1.
struct BeamWeights {
    std::vector<cplx> weights;
    Direction look_direction;
    WeightKind kind = WeightKind::kMvdr;
};

/// MVDR weights w = R^-1 a / (a^H R^-1 a). The covariance is diagonally
/// loaded before the solve because sample covariances from short snapshots
/// can be rank-deficient.
inline BeamWeights mvdr_weights(const CovarianceEstimate& cov, const ArrayGeometry& geom,
                                const Direction& look) {
    const std::vector<cplx> a = steering_vector(geom, look);
    const ComplexMatrix loaded = diagonally_loaded(cov.matrix);
    const std::vector<cplx> ri_a = solve_hermitian(loaded, a);
    cplx denom{};
    for (std::size_t i = 0; i < a.size(); ++i) denom += std::conj(a[i]) * ri_a[i];
    // a^H R^-1 a is real and positive for Hermitian positive definite R.
    const double d = denom.real();
    BeamWeights w;
    w.kind = WeightKind::kMvdr;
    w.look_direction = look;
    w.weights.resize(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) w.weights[i] = ri_a[i] / d;
    return w;
}

/// Data-independent matched filter w = a / (a^H a); the static baseline.
inline BeamWeights fixed_weights(const ArrayGeometry& geom, const Direction& look) {
    const std::vector<cplx> a = steering_vector(geom, look);
    const double n = static_cast<double>(a.size());  // |a_i| = 1, so a^H a = count
    BeamWeights w;
    w.kind = WeightKind::kFixed;
    w.look_direction = look;
    w.weights.resize(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) w.weights[i] = a[i] / n;
    return w;
}

/// Beamformer output series, regions carried over from the input snapshot.
struct BeamformedSeries {
    std::vector<cplx> samples;
    Region signal_region;
    Region noise_region;
};

/// y(t) = w^H x(t) per sample.
inline BeamformedSeries apply_beamformer(const BeamWeights& w, const Snapshot& snap) {
    if (w.weights.size() != snap.samples.rows())
        throw DimensionError("apply_beamformer: weight length does not match element count");
    BeamformedSeries out;
    out.signal_region = snap.signal_region;
    out.noise_region = snap.noise_region;
    const std::size_t len = snap.samples.cols();
    out.samples.resize(len);
    for (std::size_t t = 0; t < len; ++t) {
        cplx acc{};
        for (std::size_t e = 0; e < w.weights.size(); ++e)
            acc += std::conj(w.weights[e]) * snap.samples(e, t);
        out.samples[t] = acc;
    }
    return out;
}

struct BeampatternGrid {
    std::vector<double> az_grid;
    std::vector<double> el_grid;
    std::vector<double> gain_db;  // az-major, floored at -100 dB

    double gain(std::size_t ai, std::size_t ei) const {
        return gain_db[ai * el_grid.size() + ei];
    }
};

/// Array gain 20 log10 |w^H a(az, el)| over the scan grid.
inline BeampatternGrid beampattern(const BeamWeights& w, const ArrayGeometry& geom,
                                   double grid_step_deg, double el_step_deg = 5.0) {
    if (!(grid_step_deg > 0.0) || !(el_step_deg > 0.0))
        throw ValidationError("beampattern: grid steps must be positive");
    BeampatternGrid out;
    out.az_grid = detail::degree_grid(-90.0, 90.0, grid_step_deg);
    out.el_grid = detail::degree_grid(-90.0, 90.0, el_step_deg);
    out.gain_db.resize(out.az_grid.size() * out.el_grid.size());
    for (std::size_t ai = 0; ai < out.az_grid.size(); ++ai) {
        for (std::size_t ei = 0; ei < out.el_grid.size(); ++ei) {
            const std::vector<cplx> a = steering_vector(geom, {out.az_grid[ai], out.el_grid[ei]});
            cplx resp{};
            for (std::size_t e = 0; e < a.size(); ++e)
                resp += std::conj(w.weights[e]) * a[e];
            const double g = 20.0 * std::log10(std::abs(resp));
            out.gain_db[ai * out.el_grid.size() + ei] = std::max(g, -100.0);
        }
    }
    return out;
}

} // namespace jamsim
