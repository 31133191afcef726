#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "jamsim/beamforming.hpp"
#include "jamsim/estimation.hpp"
#include "jamsim/signal_sim.hpp"

namespace jamsim {

/// Non-negative time series with the metric regions attached.
struct RealSeries {
    std::vector<double> values;
    Region signal_region;
    Region noise_region;
};

/// Combined array signal x2(t): the magnitude of each element's sample
/// averaged across all elements. Normalizing by the element count avoids
/// artificial gain inflation when comparing against the beamformer output.
inline RealSeries combine_elements(const Snapshot& snap) {
    RealSeries out;
    out.signal_region = snap.signal_region;
    out.noise_region = snap.noise_region;
    const std::size_t elems = snap.samples.rows();
    const std::size_t len = snap.samples.cols();
    out.values.resize(len);
    const double inv = 1.0 / static_cast<double>(elems);
    for (std::size_t t = 0; t < len; ++t) {
        double acc = 0.0;
        for (std::size_t e = 0; e < elems; ++e) acc += std::abs(snap.samples(e, t));
        out.values[t] = acc * inv;
    }
    return out;
}

inline RealSeries magnitude_series(const BeamformedSeries& y) {
    RealSeries out;
    out.signal_region = y.signal_region;
    out.noise_region = y.noise_region;
    out.values.reserve(y.samples.size());
    for (const cplx& v : y.samples) out.values.push_back(std::abs(v));
    return out;
}

/// How region means are formed before the 20 log10 ratio. The magnitude-mean
/// form is the primary definition; the power-mean variant exists for
/// sensitivity checks only.
enum class SnrAveraging { kMagnitudeMean, kPowerMean };

struct SnrValue {
    double db = 0.0;
    bool finite = true;  // false when the noise-region mean is zero
};

inline double region_mean(std::span<const double> vals, const Region& r, SnrAveraging mode) {
    double acc = 0.0;
    for (std::size_t t = r.first; t <= r.last; ++t)
        acc += mode == SnrAveraging::kMagnitudeMean ? vals[t] : vals[t] * vals[t];
    return acc / static_cast<double>(r.length());
}

/// SNR (dB) = 20 log10(signal-region mean / noise-region mean), means taken
/// over |x2| exactly as the region definitions prescribe.
inline SnrValue snr_db(const RealSeries& series, SnrAveraging mode = SnrAveraging::kMagnitudeMean) {
    if (series.noise_region.last >= series.values.size() ||
        series.signal_region.last >= series.values.size() ||
        series.noise_region.last >= series.signal_region.first)
        throw ValidationError("snr_db: regions invalid or not disjoint");
    const double sig = region_mean(series.values, series.signal_region, mode);
    const double noi = region_mean(series.values, series.noise_region, mode);
    if (noi <= 0.0) return {std::numeric_limits<double>::infinity(), false};
    return {20.0 * std::log10(sig / noi), true};
}

struct SnrReport {
    double snr_before_db = 0.0;
    double snr_after_db = 0.0;
    double improvement_db = 0.0;
    Region signal_region;
    Region noise_region;
    bool finite = true;
};

/// Before-SNR on the combined raw array signal, after-SNR on the beamformer
/// output magnitude, improvement = after - before.
inline SnrReport snr_improvement(const Snapshot& before, const BeamformedSeries& after,
                                 SnrAveraging mode = SnrAveraging::kMagnitudeMean) {
    const SnrValue b = snr_db(combine_elements(before), mode);
    const SnrValue a = snr_db(magnitude_series(after), mode);
    SnrReport rep;
    rep.signal_region = before.signal_region;
    rep.noise_region = before.noise_region;
    rep.snr_before_db = b.db;
    rep.snr_after_db = a.db;
    rep.improvement_db = a.db - b.db;
    rep.finite = a.finite && b.finite;
    return rep;
}

struct DoaPair {
    Direction estimate;
    Direction truth;
};

/// Hit rates for the three tolerance tiers plus the mean absolute azimuth
/// error. Tiers nest: every 7.5% hit is also a 10% and a 15% hit.
struct AccuracyReport {
    double hit_rate_15 = 0.0;
    double hit_rate_10 = 0.0;
    double hit_rate_7_5 = 0.0;
    double mean_abs_azimuth_error_deg = 0.0;
};

inline AccuracyReport accuracy_report(std::span<const DoaPair> records) {
    if (records.empty())
        throw ValidationError("accuracy_report: need at least one record");
    AccuracyReport rep;
    double az_err = 0.0;
    for (const DoaPair& r : records) {
        const double err = doa_error_pct(r.estimate, r.truth);
        if (err <= 15.0) rep.hit_rate_15 += 1.0;
        if (err <= 10.0) rep.hit_rate_10 += 1.0;
        if (err <= 7.5) rep.hit_rate_7_5 += 1.0;
        double daz = std::fmod(std::abs(r.estimate.azimuth_deg - r.truth.azimuth_deg), 360.0);
        if (daz > 180.0) daz = 360.0 - daz;
        az_err += daz;
    }
    const double n = static_cast<double>(records.size());
    rep.hit_rate_15 /= n;
    rep.hit_rate_10 /= n;
    rep.hit_rate_7_5 /= n;
    rep.mean_abs_azimuth_error_deg = az_err / n;
    return rep;
}

} // namespace jamsim
