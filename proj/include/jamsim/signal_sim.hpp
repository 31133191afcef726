#pragma once

#include <cstdint>
#include <numbers>

#include "jamsim/array.hpp"
#include "jamsim/linalg.hpp"
#include "jamsim/rng.hpp"
#include "jamsim/scenario.hpp"

namespace jamsim {

/// Inclusive sample index range.
struct Region {
    std::size_t first = 0;
    std::size_t last = 0;

    std::size_t length() const { return last - first + 1; }
};

/// One collection of element x time samples, with the signal-present and
/// signal-absent windows that the SNR metric integrates over.
struct Snapshot {
    ComplexMatrix samples;      // element_count x snapshot_len
    double sample_rate_hz = 0.0;
    Region signal_region;
    Region noise_region;
};

struct SignalSpec {
    double desired_power = 1.0;   // linear, at the array
    double jammer_power = 10.0;   // linear, from jsr_db
    double noise_power = 0.1;     // linear per element, from input_snr_db
    std::size_t snapshot_len = 256;
    double burst_fraction = 0.5;  // share of the snapshot carrying the burst
    double sample_rate_hz = 1000.0;
};

inline SignalSpec make_signal_spec(double jsr_db, double input_snr_db,
                                   std::size_t snapshot_len = 256,
                                   double burst_fraction = 0.5,
                                   double sample_rate_hz = 1000.0) {
    SignalSpec s;
    s.desired_power = 1.0;
    s.jammer_power = s.desired_power * std::pow(10.0, jsr_db / 10.0);
    s.noise_power = s.desired_power / std::pow(10.0, input_snr_db / 10.0);
    s.snapshot_len = snapshot_len;
    s.burst_fraction = burst_fraction;
    s.sample_rate_hz = sample_rate_hz;
    return s;
}

inline void validate_signal_spec(const SignalSpec& s) {
    if (s.snapshot_len < 16)
        throw ValidationError("signal spec: snapshot_len must be >= 16");
    if (!(s.desired_power > 0.0) || !(s.jammer_power >= 0.0) || !(s.noise_power >= 0.0))
        throw ValidationError("signal spec: powers must be non-negative and desired power positive");
    if (!(s.burst_fraction > 0.0) || !(s.burst_fraction < 1.0))
        throw ValidationError("signal spec: burst_fraction must lie in (0, 1)");
}

/// Region layout: the first quarter of the snapshot is signal-free (noise
/// region), the burst occupies the middle `burst_fraction`, and the tail is
/// guard. Keeps the two metric windows disjoint by construction.
inline void snapshot_regions(std::size_t len, double burst_fraction,
                             Region& signal, Region& noise) {
    const auto noise_len = static_cast<std::size_t>(static_cast<double>(len) * 0.25);
    const auto burst_len = static_cast<std::size_t>(static_cast<double>(len) * burst_fraction);
    noise = {0, noise_len - 1};
    signal = {noise_len, std::min(noise_len + burst_len, len) - 1};
}

/// Synthesizes one snapshot of the array signal: a unit-power random-phase
/// QPSK burst from the true source direction, a continuous complex-gaussian
/// barrage jammer from the true jammer direction (rank-1 across elements),
/// and white noise independent per element. Deterministic given the seed.
inline Snapshot synth_snapshot(const WorldState& world, const ArrayGeometry& geom,
                               const SignalSpec& spec, std::uint64_t seed) {
    validate_signal_spec(spec);
    const std::size_t elems = geom.element_count();
    const std::size_t len = spec.snapshot_len;

    Snapshot snap;
    snap.samples = ComplexMatrix(elems, len);
    snap.sample_rate_hz = spec.sample_rate_hz;
    snapshot_regions(len, spec.burst_fraction, snap.signal_region, snap.noise_region);

    const std::vector<cplx> a_src = steering_vector(geom, world.true_src_doa);
    const std::vector<cplx> a_jam = steering_vector(geom, world.true_jam_doa);

    // Independent streams per role so changing one process cannot shift the
    // samples of another.
    Rng src_rng(derive_seed(seed, 0x51));
    Rng jam_rng(derive_seed(seed, 0x1A));
    Rng noise_rng(derive_seed(seed, 0x0E));

    std::vector<cplx> s(len), j(len);
    const double amp = std::sqrt(spec.desired_power);
    for (std::size_t t = snap.signal_region.first; t <= snap.signal_region.last; ++t) {
        const double phase = (static_cast<double>(src_rng.uniform_int(4)) + 0.5) *
                             (std::numbers::pi / 2.0);
        s[t] = amp * cplx{std::cos(phase), std::sin(phase)};
    }
    for (std::size_t t = 0; t < len; ++t)
        j[t] = jam_rng.complex_gaussian(spec.jammer_power);

    for (std::size_t e = 0; e < elems; ++e)
        for (std::size_t t = 0; t < len; ++t)
            snap.samples(e, t) = s[t] * a_src[e] + j[t] * a_jam[e] +
                                 noise_rng.complex_gaussian(spec.noise_power);
    return snap;
}

} // namespace jamsim
