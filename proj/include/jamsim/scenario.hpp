#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "jamsim/array.hpp"
#include "jamsim/error.hpp"

namespace jamsim {

/// Start->end cardinal arms of the highway intersection. Only the north,
/// south and west arms carry traffic in the simulated scenario.
enum class TrajectoryId { NS, NW, SN, SW, WN, WS };

inline constexpr std::array<TrajectoryId, 6> kAllTrajectories = {
    TrajectoryId::NS, TrajectoryId::NW, TrajectoryId::SN,
    TrajectoryId::SW, TrajectoryId::WN, TrajectoryId::WS};

inline const char* trajectory_name(TrajectoryId t) {
    switch (t) {
        case TrajectoryId::NS: return "NS";
        case TrajectoryId::NW: return "NW";
        case TrajectoryId::SN: return "SN";
        case TrajectoryId::SW: return "SW";
        case TrajectoryId::WN: return "WN";
        case TrajectoryId::WS: return "WS";
    }
    return "??";
}

inline TrajectoryId parse_trajectory(const std::string& s) {
    for (TrajectoryId t : kAllTrajectories)
        if (s == trajectory_name(t)) return t;
    throw ValidationError("unknown trajectory '" + s + "' (expected NS, NW, SN, SW, WN or WS)");
}

/// Jammer path run against each receiver path in the six-scenario suite.
/// Chosen so the two vehicles never share a start arm and the jammer stays
/// resolvable from the transmitter direction for the bulk of the run.
inline TrajectoryId default_jammer_trajectory(TrajectoryId rx) {
    switch (rx) {
        case TrajectoryId::NS: return TrajectoryId::WN;
        case TrajectoryId::NW: return TrajectoryId::SN;
        case TrajectoryId::SN: return TrajectoryId::WS;
        case TrajectoryId::SW: return TrajectoryId::NS;
        case TrajectoryId::WN: return TrajectoryId::SW;
        case TrajectoryId::WS: return TrajectoryId::NW;
    }
    return TrajectoryId::NS;
}

/// Antenna heights above the road surface. The jammer van rides higher than
/// the receiver car, so the two antennas never coincide even when both
/// vehicles sit at the intersection.
inline constexpr double kRxAntennaHeightM = 1.5;
inline constexpr double kJammerAntennaHeightM = 2.5;

struct ScenarioConfig {
    Vec3 tx_position{0.0, 450.0, 25.0};
    TrajectoryId rx_trajectory = TrajectoryId::NS;
    TrajectoryId jammer_trajectory = TrajectoryId::WN;
    std::size_t collections = 50;
    double speed_mps = 20.0;
    double collection_interval_s = 0.5;
    double arm_length_m = 250.0;
    double jsr_db = 10.0;
    double input_snr_db = 10.0;
    std::uint64_t seed = 1;
};

inline void validate_scenario(const ScenarioConfig& cfg) {
    if (cfg.collections < 1)
        throw ValidationError("scenario: collections must be >= 1");
    if (!(cfg.arm_length_m > 0.0))
        throw ValidationError("scenario: arm_length must be positive");
    if (!(cfg.speed_mps > 0.0) || !(cfg.collection_interval_s > 0.0))
        throw ValidationError("scenario: speed and collection interval must be positive");
    if (!std::isfinite(cfg.jsr_db) || !std::isfinite(cfg.input_snr_db))
        throw ValidationError("scenario: jsr_db and input_snr_db must be finite");
}

namespace detail {

inline Vec3 arm_unit(char arm) {
    switch (arm) {
        case 'N': return {0.0, 1.0, 0.0};
        case 'S': return {0.0, -1.0, 0.0};
        case 'W': return {-1.0, 0.0, 0.0};
        case 'E': return {1.0, 0.0, 0.0};
    }
    throw ValidationError("unknown arm");
}

/// Ground-track position after driving arc length s: inbound along the start
/// arm from distance `arm_length`, through the origin, outbound on the end
/// arm. Continues outward past the arm end if s exceeds the path length.
inline Vec3 path_position(TrajectoryId traj, double s, double arm_length) {
    const char* name = trajectory_name(traj);
    if (s <= arm_length) return (arm_length - s) * arm_unit(name[0]);
    return (s - arm_length) * arm_unit(name[1]);
}

} // namespace detail

/// Ground-track position (z = 0) of a vehicle on `traj` at collection
/// `t_index`. With the default configuration the vehicle covers one arm in
/// exactly collections/2 steps, so it crosses the intersection at the
/// midpoint collection.
inline Vec3 position_at(TrajectoryId traj, std::size_t t_index, const ScenarioConfig& cfg) {
    if (t_index >= cfg.collections)
        throw ValidationError("position_at: collection index out of range");
    const double s = cfg.speed_mps * cfg.collection_interval_s * static_cast<double>(t_index);
    return detail::path_position(traj, s, cfg.arm_length_m);
}

struct WorldState {
    std::size_t collection_index = 0;
    Vec3 rx_position;
    Vec3 jammer_position;
    Direction true_src_doa;
    Direction true_jam_doa;
};

/// Positions and ground-truth DoAs at one collection. The array frame stays
/// aligned with the world frame (no vehicle-heading rotation), so a DoA is
/// simply the world-frame direction from the receiver antenna to the source.
inline WorldState world_at(const ScenarioConfig& cfg, std::size_t t_index) {
    validate_scenario(cfg);
    WorldState w;
    w.collection_index = t_index;
    w.rx_position = position_at(cfg.rx_trajectory, t_index, cfg) + Vec3{0.0, 0.0, kRxAntennaHeightM};
    w.jammer_position = position_at(cfg.jammer_trajectory, t_index, cfg) + Vec3{0.0, 0.0, kJammerAntennaHeightM};
    w.true_src_doa = direction_from_vector(cfg.tx_position - w.rx_position);
    w.true_jam_doa = direction_from_vector(w.jammer_position - w.rx_position);
    return w;
}

/// Ground-truth source azimuth sequence seen by a receiver driving `traj`
/// at `speed_mps`, sampled every `interval_s` over the full path. Feeds the
/// predictor's training set.
inline std::vector<double> ground_truth_azimuth_sequence(TrajectoryId traj,
                                                         const ScenarioConfig& cfg,
                                                         double speed_mps,
                                                         double interval_s) {
    const double path_len = 2.0 * cfg.arm_length_m;
    const double step = speed_mps * interval_s;
    const auto samples = static_cast<std::size_t>(path_len / step) + 1;
    std::vector<double> az;
    az.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        const Vec3 p = detail::path_position(traj, step * static_cast<double>(i), cfg.arm_length_m) +
                       Vec3{0.0, 0.0, kRxAntennaHeightM};
        az.push_back(direction_from_vector(cfg.tx_position - p).azimuth_deg);
    }
    return az;
}

} // namespace jamsim
