#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "jamsim/array.hpp"
#include "jamsim/linalg.hpp"
#include "jamsim/signal_sim.hpp"

namespace jamsim {

struct CovarianceEstimate {
    ComplexMatrix matrix;
    std::size_t snapshot_count = 0;
};

/// Sample covariance R = (1/T) sum_t x(t) x^H(t). Hermitian by construction.
inline CovarianceEstimate estimate_covariance(const Snapshot& snap) {
    const std::size_t elems = snap.samples.rows();
    const std::size_t len = snap.samples.cols();
    if (elems == 0 || len == 0)
        throw ValidationError("estimate_covariance: empty snapshot");
    CovarianceEstimate cov;
    cov.matrix = ComplexMatrix(elems, elems);
    cov.snapshot_count = len;
    for (std::size_t t = 0; t < len; ++t)
        for (std::size_t r = 0; r < elems; ++r) {
            const cplx xr = snap.samples(r, t);
            for (std::size_t c = 0; c < elems; ++c)
                cov.matrix(r, c) += xr * std::conj(snap.samples(c, t));
        }
    const double inv = 1.0 / static_cast<double>(len);
    for (cplx& v : cov.matrix.data()) v *= inv;
    return cov;
}

struct MusicSpectrum {
    std::vector<double> az_grid;  // degrees, ascending
    std::vector<double> el_grid;  // degrees, ascending
    std::vector<double> values;   // az-major: values[ai * el_grid.size() + ei]
    std::size_t num_sources = 0;

    double value(std::size_t ai, std::size_t ei) const {
        return values[ai * el_grid.size() + ei];
    }
};

enum class EstimateSource { kMusic, kMlPredicted, kFallbackLast, kFixed };

inline const char* estimate_source_name(EstimateSource s) {
    switch (s) {
        case EstimateSource::kMusic: return "MUSIC";
        case EstimateSource::kMlPredicted: return "ML_PREDICTED";
        case EstimateSource::kFallbackLast: return "FALLBACK_LAST";
        case EstimateSource::kFixed: return "FIXED";
    }
    return "??";
}

struct DoaEstimate {
    Direction direction;
    EstimateSource source = EstimateSource::kMusic;
    double spectrum_peak_value = 0.0;
};

namespace detail {

/// Projector onto the noise subspace: U_n U_n^H from the eigenvectors of the
/// element_count - num_sources smallest eigenvalues.
inline ComplexMatrix noise_projector(const CovarianceEstimate& cov, std::size_t num_sources) {
    const std::size_t n = cov.matrix.rows();
    if (num_sources >= n)
        throw ValidationError("music: num_sources must be smaller than the element count");
    const EigenDecomposition eig = hermitian_eig(cov.matrix);
    ComplexMatrix p(n, n);
    for (std::size_t k = num_sources; k < n; ++k)
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                p(r, c) += eig.eigenvectors(r, k) * std::conj(eig.eigenvectors(c, k));
    return p;
}

inline double pseudospectrum_value(const ComplexMatrix& proj, const ArrayGeometry& geom,
                                   const Direction& dir) {
    const std::vector<cplx> a = steering_vector(geom, dir);
    cplx den{};
    for (std::size_t r = 0; r < a.size(); ++r) {
        cplx acc{};
        for (std::size_t c = 0; c < a.size(); ++c) acc += proj(r, c) * a[c];
        den += std::conj(a[r]) * acc;
    }
    return 1.0 / std::max(den.real(), 1e-30);
}

inline std::vector<double> degree_grid(double start, double stop, double step) {
    std::vector<double> g;
    for (double v = start; v <= stop + 1e-9; v += step) g.push_back(std::min(v, stop));
    return g;
}

} // namespace detail

/// MUSIC pseudospectrum over the scan grid: azimuth -90..90 at
/// `az_step_deg`, elevation -90..90 at `el_step_deg`. The elevation grid is
/// deliberately coarse; estimate_directions refines it around the peaks.
inline MusicSpectrum music_spectrum(const CovarianceEstimate& cov, const ArrayGeometry& geom,
                                    double az_step_deg, std::size_t num_sources,
                                    double el_step_deg = 5.0) {
    if (!(az_step_deg > 0.0) || !(el_step_deg > 0.0))
        throw ValidationError("music_spectrum: grid steps must be positive");
    const ComplexMatrix proj = detail::noise_projector(cov, num_sources);
    MusicSpectrum spec;
    spec.num_sources = num_sources;
    spec.az_grid = detail::degree_grid(-90.0, 90.0, az_step_deg);
    spec.el_grid = detail::degree_grid(-90.0, 90.0, el_step_deg);
    spec.values.resize(spec.az_grid.size() * spec.el_grid.size());
    for (std::size_t ai = 0; ai < spec.az_grid.size(); ++ai)
        for (std::size_t ei = 0; ei < spec.el_grid.size(); ++ei)
            spec.values[ai * spec.el_grid.size() + ei] = detail::pseudospectrum_value(
                proj, geom, {spec.az_grid[ai], spec.el_grid[ei]});
    return spec;
}

struct PeakList {
    std::vector<DoaEstimate> peaks;
    bool shortage = false;  // fewer strict local maxima than requested
};

/// Top-k strict local maxima of the spectrum grid (every existing neighbor
/// in the 8-neighborhood strictly lower), sorted by value descending with
/// ties broken by lower azimuth, then lower elevation.
inline PeakList find_peaks(const MusicSpectrum& spec, std::size_t k) {
    if (k < 1) throw ValidationError("find_peaks: k must be >= 1");
    const std::size_t naz = spec.az_grid.size();
    const std::size_t nel = spec.el_grid.size();
    std::vector<DoaEstimate> found;
    for (std::size_t ai = 0; ai < naz; ++ai) {
        for (std::size_t ei = 0; ei < nel; ++ei) {
            const double v = spec.value(ai, ei);
            bool is_peak = true;
            for (int da = -1; da <= 1 && is_peak; ++da) {
                for (int de = -1; de <= 1; ++de) {
                    if (da == 0 && de == 0) continue;
                    const auto a2 = static_cast<std::ptrdiff_t>(ai) + da;
                    const auto e2 = static_cast<std::ptrdiff_t>(ei) + de;
                    if (a2 < 0 || e2 < 0 || a2 >= static_cast<std::ptrdiff_t>(naz) ||
                        e2 >= static_cast<std::ptrdiff_t>(nel))
                        continue;
                    if (spec.value(static_cast<std::size_t>(a2), static_cast<std::size_t>(e2)) >= v) {
                        is_peak = false;
                        break;
                    }
                }
            }
            if (is_peak)
                found.push_back({{spec.az_grid[ai], spec.el_grid[ei]},
                                 EstimateSource::kMusic, v});
        }
    }
    std::sort(found.begin(), found.end(), [](const DoaEstimate& x, const DoaEstimate& y) {
        if (x.spectrum_peak_value != y.spectrum_peak_value)
            return x.spectrum_peak_value > y.spectrum_peak_value;
        if (x.direction.azimuth_deg != y.direction.azimuth_deg)
            return x.direction.azimuth_deg < y.direction.azimuth_deg;
        return x.direction.elevation_deg < y.direction.elevation_deg;
    });
    PeakList out;
    out.shortage = found.size() < k;
    if (found.size() > k) found.resize(k);
    out.peaks = std::move(found);
    return out;
}

/// Combined azimuth/elevation estimation error as a percentage of the total
/// angle span (180 deg azimuth + 180 deg elevation). Azimuth differences
/// wrap on the circle.
inline double doa_error_pct(const Direction& est, const Direction& truth) {
    double daz = std::fmod(std::abs(est.azimuth_deg - truth.azimuth_deg), 360.0);
    if (daz > 180.0) daz = 360.0 - daz;
    const double del = std::abs(est.elevation_deg - truth.elevation_deg);
    return 100.0 * (daz + del) / 360.0;
}

struct EstimatorConfig {
    double az_step_deg = 1.0;
    double el_coarse_step_deg = 5.0;
    double el_refine_step_deg = 1.0;
    double el_refine_halfwidth_deg = 5.0;
    std::size_t num_sources = 2;
    std::size_t max_candidates = 8;
    double min_separation_deg = 3.0;  // great-circle distance between kept peaks
};

struct DirectionEstimate {
    DoaEstimate source;
    std::optional<DoaEstimate> jammer;
    std::size_t candidate_count = 0;
};

/// Full per-collection DoA estimate: coarse MUSIC scan, peak picking with
/// great-circle non-maximum suppression, elevation refinement, and
/// source/jammer labeling by proximity to the expected source direction.
///
/// Returns nullopt when the spectrum has no strict local maxima at all.
///
/// Two scan-domain quirks of a planar z=0 array are resolved here rather
/// than in find_peaks: the spectrum cannot distinguish +el from -el, so
/// peaks are folded into the upper hemisphere (every simulated emitter sits
/// above the array plane); and near-zenith interference smears into a ring
/// of equal-value maxima, which the great-circle suppression collapses.
inline std::optional<DirectionEstimate> estimate_directions(const CovarianceEstimate& cov,
                                                            const ArrayGeometry& geom,
                                                            const Direction& expected_source,
                                                            const EstimatorConfig& cfg = {}) {
    const MusicSpectrum spec = music_spectrum(cov, geom, cfg.az_step_deg,
                                              cfg.num_sources, cfg.el_coarse_step_deg);
    const PeakList raw = find_peaks(spec, spec.values.size());

    std::vector<DoaEstimate> kept;
    for (const DoaEstimate& p : raw.peaks) {
        DoaEstimate cand = p;
        cand.direction.elevation_deg = std::abs(cand.direction.elevation_deg);
        bool suppressed = false;
        for (const DoaEstimate& k : kept)
            if (angular_distance_deg(cand.direction, k.direction) < cfg.min_separation_deg) {
                suppressed = true;
                break;
            }
        if (suppressed) continue;
        kept.push_back(cand);
        if (kept.size() >= cfg.max_candidates) break;
    }
    if (kept.empty()) return std::nullopt;

    const ComplexMatrix proj = detail::noise_projector(cov, cfg.num_sources);
    for (DoaEstimate& cand : kept) {
        // Coordinate ascent around the coarse cell: the elevation grid is 5x
        // coarser than azimuth, and a displaced elevation drags the azimuth
        // peak sideways, so alternate the two 1-D refinements.
        for (int pass = 0; pass < 2; ++pass) {
            const double el0 = cand.direction.elevation_deg;
            double best_el = el0;
            double best_val = cand.spectrum_peak_value;
            const double el_lo = std::max(-90.0, el0 - cfg.el_refine_halfwidth_deg);
            const double el_hi = std::min(90.0, el0 + cfg.el_refine_halfwidth_deg);
            // Scan downward: on the mirror-symmetric ties of a planar array
            // the above-plane elevation should win.
            for (double el = el_hi; el >= el_lo - 1e-9; el -= cfg.el_refine_step_deg) {
                const double v = detail::pseudospectrum_value(proj, geom,
                                                              {cand.direction.azimuth_deg, el});
                if (v > best_val) {
                    best_val = v;
                    best_el = el;
                }
            }
            cand.direction.elevation_deg = best_el;
            cand.spectrum_peak_value = best_val;

            const double az0 = cand.direction.azimuth_deg;
            double best_az = az0;
            const double az_lo = std::max(-90.0, az0 - 3.0 * cfg.az_step_deg);
            const double az_hi = std::min(90.0, az0 + 3.0 * cfg.az_step_deg);
            for (double az = az_lo; az <= az_hi + 1e-9; az += cfg.az_step_deg) {
                const double v = detail::pseudospectrum_value(proj, geom,
                                                              {az, cand.direction.elevation_deg});
                if (v > best_val) {
                    best_val = v;
                    best_az = az;
                }
            }
            cand.direction.azimuth_deg = best_az;
            cand.spectrum_peak_value = best_val;
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < kept.size(); ++i)
        if (doa_error_pct(kept[i].direction, expected_source) <
            doa_error_pct(kept[best].direction, expected_source))
            best = i;

    DirectionEstimate out;
    out.source = kept[best];
    out.candidate_count = kept.size();
    std::size_t best_other = kept.size();
    for (std::size_t i = 0; i < kept.size(); ++i) {
        if (i == best) continue;
        if (best_other == kept.size() ||
            kept[i].spectrum_peak_value > kept[best_other].spectrum_peak_value)
            best_other = i;
    }
    if (best_other < kept.size()) out.jammer = kept[best_other];
    return out;
}

} // namespace jamsim
