#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "jamsim/array.hpp"
#include "jamsim/beamforming.hpp"
#include "jamsim/estimation.hpp"
#include "jamsim/metrics.hpp"
#include "jamsim/predictor.hpp"
#include "jamsim/scenario.hpp"
#include "jamsim/signal_sim.hpp"

namespace jamsim {

enum class Algorithm { kFixed, kMusicMvdr, kMusicMvdrMl };

inline const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::kFixed: return "FIXED";
        case Algorithm::kMusicMvdr: return "MUSIC_MVDR";
        case Algorithm::kMusicMvdrMl: return "MUSIC_MVDR_ML";
    }
    return "??";
}

inline Algorithm parse_algorithm(const std::string& s) {
    if (s == "FIXED") return Algorithm::kFixed;
    if (s == "MUSIC_MVDR") return Algorithm::kMusicMvdr;
    if (s == "MUSIC_MVDR_ML") return Algorithm::kMusicMvdrMl;
    throw ValidationError("unknown algorithm '" + s + "' (expected FIXED, MUSIC_MVDR or MUSIC_MVDR_ML)");
}

struct RunConfig {
    ScenarioConfig scenario;
    // Array: a 2x2 half-wavelength URA at the 100 MHz carrier by default.
    double carrier_hz = 100e6;
    double element_spacing_m = 0.0;  // 0 = half wavelength
    std::size_t array_rows = 2;
    std::size_t array_cols = 2;
    // Signal.
    std::size_t snapshot_len = 256;
    double burst_fraction = 0.5;
    double sample_rate_hz = 1000.0;
    // Estimation.
    double grid_step_deg = 1.0;
    // Hierarchical reporting tiers, strictly decreasing; the strictest tier
    // doubles as the run-time gate threshold epsilon.
    double threshold_loose_pct = 15.0;
    double threshold_mid_pct = 10.0;
    double threshold_strict_pct = 7.5;
    std::size_t ml_trigger_failures = 3;
    Algorithm algorithm = Algorithm::kMusicMvdrMl;
    std::string output_dir = "out";
    // Predictor.
    std::size_t predictor_lag = 3;
    std::vector<double> training_speeds_mps = {15.0, 20.0, 25.0, 30.0, 35.0, 40.0};
    std::size_t predictor_refresh_every = 10;
    // Metrics.
    SnrAveraging snr_averaging = SnrAveraging::kMagnitudeMean;
    // Baseline behavior: when true the fixed beamformer is re-steered to the
    // true source DoA each collection instead of holding the initial one.
    bool fixed_tracks_truth = false;
    // Comparison suite.
    std::size_t comparison_seeds = 5;

    double wavelength_m() const { return 299792458.0 / carrier_hz; }
    double spacing_m() const {
        return element_spacing_m > 0.0 ? element_spacing_m : wavelength_m() / 2.0;
    }
};

inline void validate_run_config(const RunConfig& cfg) {
    validate_scenario(cfg.scenario);
    if (!(cfg.threshold_loose_pct > cfg.threshold_mid_pct &&
          cfg.threshold_mid_pct > cfg.threshold_strict_pct && cfg.threshold_strict_pct > 0.0))
        throw ValidationError("run config: thresholds must be strictly decreasing and positive");
    if (cfg.ml_trigger_failures < 1)
        throw ValidationError("run config: ml_trigger_failures must be >= 1");
    if (!(cfg.carrier_hz > 0.0))
        throw ValidationError("run config: carrier frequency must be positive");
    if (cfg.predictor_lag < 1)
        throw ValidationError("run config: predictor lag must be >= 1");
}

inline ArrayGeometry make_array(const RunConfig& cfg) {
    return make_ura(cfg.array_rows, cfg.array_cols, cfg.spacing_m(), cfg.wavelength_m());
}

inline SignalSpec make_signal(const RunConfig& cfg) {
    return make_signal_spec(cfg.scenario.jsr_db, cfg.scenario.input_snr_db,
                            cfg.snapshot_len, cfg.burst_fraction, cfg.sample_rate_hz);
}

/// One row of the per-collection log.
struct CollectionRecord {
    std::size_t t_index = 0;
    double true_src_az = 0.0, true_src_el = 0.0;
    double true_jam_az = 0.0, true_jam_el = 0.0;
    double est_az = 0.0, est_el = 0.0;
    EstimateSource est_source = EstimateSource::kMusic;
    double doa_error_pct = 0.0;
    double snr_before_db = 0.0;
    double snr_after_db = 0.0;
    double improvement_db = 0.0;
    double music_ms = 0.0;
    double mvdr_ms = 0.0;
    double ml_ms = 0.0;
    bool gate_failed = false;  // audit only, not part of the CSV schema
};

/// Ground-truth training set for the azimuth predictor: every trajectory
/// driven at each configured speed, sampled at the collection interval.
inline TrainingSet build_default_training_set(const RunConfig& cfg) {
    std::vector<std::vector<double>> seqs;
    for (TrajectoryId traj : kAllTrajectories)
        for (double v : cfg.training_speeds_mps)
            seqs.push_back(ground_truth_azimuth_sequence(traj, cfg.scenario, v,
                                                         cfg.scenario.collection_interval_s));
    return build_training_set(seqs, cfg.predictor_lag);
}

inline LinearModel train_default_predictor(const RunConfig& cfg) {
    return fit_linear(build_default_training_set(cfg));
}

namespace detail {

inline double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace detail

/// Algorithm 1: per collection, synthesize the snapshot, estimate the
/// covariance and DoA, gate the estimate, compute weights, beamform and log
/// SNR improvement.
///
/// Run-time gating compares the MUSIC estimate against the causally
/// available reference: the predictor forecast for MUSIC_MVDR_ML, the track
/// (last gate-passing estimate) for MUSIC_MVDR. After ml_trigger_failures
/// consecutive gate failures the ML run substitutes the forecast for that
/// collection and the failure streak restarts.
///
/// The track that seeds peak labeling and the predictor history only
/// advances on gate-passing estimates and ML substitutions, so one garbage
/// collection cannot drag the labeling reference (or the forecast meant to
/// correct it) off the source. Without a predictor the track re-seeds from
/// MUSIC after 2x the trigger count, which bounds how long a stale
/// reference can persist. Records always log what the algorithm actually
/// output, gate-failing estimates included.
inline std::vector<CollectionRecord> run_mitigation_loop(const RunConfig& cfg,
                                                         const LinearModel* model = nullptr) {
    validate_run_config(cfg);
    const bool use_ml = cfg.algorithm == Algorithm::kMusicMvdrMl;
    if (use_ml && model == nullptr)
        throw ValidationError("run_mitigation_loop: MUSIC_MVDR_ML requires a trained predictor");

    const ArrayGeometry geom = make_array(cfg);
    const SignalSpec spec = make_signal(cfg);
    EstimatorConfig est_cfg;
    est_cfg.az_step_deg = cfg.grid_step_deg;

    LinearModel live_model;
    if (use_ml) live_model = *model;
    TrainingSet online = use_ml ? build_default_training_set(cfg) : TrainingSet{};
    AngleHistory history(std::max<std::size_t>(cfg.predictor_lag + 1, 8));
    std::vector<double> recent_window;  // pending azimuths feeding online rows

    std::vector<CollectionRecord> records;
    records.reserve(cfg.scenario.collections);

    Direction initial_truth{};
    Direction track{};
    bool have_track = false;
    std::size_t failure_streak = 0;

    for (std::size_t t = 0; t < cfg.scenario.collections; ++t) {
        const WorldState world = world_at(cfg.scenario, t);
        if (t == 0) initial_truth = world.true_src_doa;
        const std::uint64_t snap_seed =
            derive_seed(cfg.scenario.seed, static_cast<std::uint64_t>(t), 0xC0113C7);
        const Snapshot snap = synth_snapshot(world, geom, spec, snap_seed);

        CollectionRecord rec;
        rec.t_index = t;
        rec.true_src_az = world.true_src_doa.azimuth_deg;
        rec.true_src_el = world.true_src_doa.elevation_deg;
        rec.true_jam_az = world.true_jam_doa.azimuth_deg;
        rec.true_jam_el = world.true_jam_doa.elevation_deg;

        Direction accepted{};
        BeamWeights weights;

        if (cfg.algorithm == Algorithm::kFixed) {
            accepted = cfg.fixed_tracks_truth ? world.true_src_doa : initial_truth;
            rec.est_source = EstimateSource::kFixed;
            const auto t0 = std::chrono::steady_clock::now();
            weights = fixed_weights(geom, accepted);
            rec.mvdr_ms = detail::elapsed_ms(t0);
        } else {
            const auto t_music = std::chrono::steady_clock::now();
            const CovarianceEstimate cov = estimate_covariance(snap);

            bool have_forecast = false;
            Direction forecast{};
            double ml_ms = 0.0;
            if (use_ml && history.size() >= cfg.predictor_lag) {
                const auto t_ml = std::chrono::steady_clock::now();
                forecast = {predict_next(live_model, history),
                            have_track ? track.elevation_deg : world.true_src_doa.elevation_deg};
                ml_ms += detail::elapsed_ms(t_ml);
                have_forecast = true;
            }

            // Peak labeling follows the track; at t=0 acquisition seeds it
            // with the true source direction.
            const Direction expected = have_track ? track : world.true_src_doa;
            const Direction gate_ref = have_forecast ? forecast : expected;

            const auto est = estimate_directions(cov, geom, expected, est_cfg);
            rec.music_ms = detail::elapsed_ms(t_music);

            bool advance_track = false;
            if (!est.has_value()) {
                // No strict spectrum maxima at all: hold the last estimate.
                accepted = have_track ? track : initial_truth;
                rec.est_source = EstimateSource::kFallbackLast;
                failure_streak = 0;
            } else {
                const Direction music_est = est->source.direction;
                rec.gate_failed = doa_error_pct(music_est, gate_ref) > cfg.threshold_strict_pct;
                failure_streak = rec.gate_failed ? failure_streak + 1 : 0;
                if (rec.gate_failed && use_ml && failure_streak >= cfg.ml_trigger_failures) {
                    failure_streak = 0;
                    if (have_forecast) {
                        accepted = forecast;
                        rec.est_source = EstimateSource::kMlPredicted;
                        advance_track = true;
                    } else {
                        accepted = have_track ? track : music_est;
                        rec.est_source = EstimateSource::kFallbackLast;
                    }
                } else {
                    accepted = music_est;
                    rec.est_source = EstimateSource::kMusic;
                    advance_track = !rec.gate_failed;
                    if (rec.gate_failed && !use_ml &&
                        failure_streak >= 2 * cfg.ml_trigger_failures) {
                        // Stale track: trust the data again.
                        advance_track = true;
                        failure_streak = 0;
                    }
                }
            }

            if (advance_track) {
                track = accepted;
                have_track = true;
                if (use_ml) {
                    history.push(accepted.azimuth_deg, rec.est_source);
                    recent_window.push_back(accepted.azimuth_deg);
                    if (recent_window.size() >= cfg.predictor_lag + 1) {
                        online.append_row(recent_window.data() +
                                              (recent_window.size() - cfg.predictor_lag - 1),
                                          recent_window.back());
                    }
                }
            }

            if (use_ml && cfg.predictor_refresh_every > 0 &&
                (t + 1) % cfg.predictor_refresh_every == 0 &&
                online.rows() > cfg.predictor_lag + 1) {
                const auto t_ml = std::chrono::steady_clock::now();
                live_model = fit_linear(online);
                ml_ms += detail::elapsed_ms(t_ml);
            }
            rec.ml_ms = ml_ms;

            const auto t_mvdr = std::chrono::steady_clock::now();
            weights = mvdr_weights(cov, geom, accepted);
            rec.mvdr_ms = detail::elapsed_ms(t_mvdr);
        }

        rec.est_az = accepted.azimuth_deg;
        rec.est_el = accepted.elevation_deg;
        rec.doa_error_pct = doa_error_pct(accepted, world.true_src_doa);

        const BeamformedSeries out = apply_beamformer(weights, snap);
        const SnrReport snr = snr_improvement(snap, out, cfg.snr_averaging);
        rec.snr_before_db = snr.snr_before_db;
        rec.snr_after_db = snr.snr_after_db;
        rec.improvement_db = snr.improvement_db;
        records.push_back(rec);
    }
    return records;
}

struct AlgorithmSummary {
    Algorithm algorithm = Algorithm::kFixed;
    std::size_t collections = 0;
    double mean_improvement_db = 0.0;
    double max_improvement_db = 0.0;
    double mean_snr_before_db = 0.0;
    double mean_snr_after_db = 0.0;
    AccuracyReport accuracy;
    double mean_music_ms = 0.0;
    double mean_mvdr_ms = 0.0;
    double mean_ml_ms = 0.0;
    std::size_t ml_activations = 0;
    std::size_t fallbacks = 0;
};

inline AlgorithmSummary summarize(Algorithm alg, const std::vector<CollectionRecord>& records) {
    if (records.empty()) throw ValidationError("summarize: no records");
    AlgorithmSummary s;
    s.algorithm = alg;
    s.collections = records.size();
    s.max_improvement_db = records.front().improvement_db;
    std::vector<DoaPair> pairs;
    pairs.reserve(records.size());
    for (const CollectionRecord& r : records) {
        s.mean_improvement_db += r.improvement_db;
        s.max_improvement_db = std::max(s.max_improvement_db, r.improvement_db);
        s.mean_snr_before_db += r.snr_before_db;
        s.mean_snr_after_db += r.snr_after_db;
        s.mean_music_ms += r.music_ms;
        s.mean_mvdr_ms += r.mvdr_ms;
        s.mean_ml_ms += r.ml_ms;
        if (r.est_source == EstimateSource::kMlPredicted) ++s.ml_activations;
        if (r.est_source == EstimateSource::kFallbackLast) ++s.fallbacks;
        pairs.push_back({{r.est_az, r.est_el}, {r.true_src_az, r.true_src_el}});
    }
    const double n = static_cast<double>(records.size());
    s.mean_improvement_db /= n;
    s.mean_snr_before_db /= n;
    s.mean_snr_after_db /= n;
    s.mean_music_ms /= n;
    s.mean_mvdr_ms /= n;
    s.mean_ml_ms /= n;
    s.accuracy = accuracy_report(pairs);
    return s;
}

struct ComparisonResult {
    std::vector<AlgorithmSummary> summaries;  // FIXED, MUSIC_MVDR, MUSIC_MVDR_ML
    // Per-algorithm records concatenated over the suite, kept for emission.
    std::vector<std::vector<CollectionRecord>> records;
};

/// Runs the six-trajectory suite (each receiver path with its default jammer
/// pairing) for every algorithm over `comparison_seeds` seeds derived from
/// the configured base seed. All algorithms see identical snapshots.
inline ComparisonResult run_comparison(const RunConfig& base) {
    validate_run_config(base);
    constexpr Algorithm kAlgs[] = {Algorithm::kFixed, Algorithm::kMusicMvdr,
                                   Algorithm::kMusicMvdrMl};
    const LinearModel model = train_default_predictor(base);
    ComparisonResult out;
    for (Algorithm alg : kAlgs) {
        std::vector<CollectionRecord> all;
        for (TrajectoryId rx : kAllTrajectories) {
            for (std::size_t s = 0; s < base.comparison_seeds; ++s) {
                RunConfig cfg = base;
                cfg.algorithm = alg;
                cfg.scenario.rx_trajectory = rx;
                cfg.scenario.jammer_trajectory = default_jammer_trajectory(rx);
                cfg.scenario.seed = derive_seed(base.scenario.seed,
                                                static_cast<std::uint64_t>(rx),
                                                static_cast<std::uint64_t>(s), 0x5EED);
                const auto recs = run_mitigation_loop(cfg, &model);
                all.insert(all.end(), recs.begin(), recs.end());
            }
        }
        out.summaries.push_back(summarize(alg, all));
        out.records.push_back(std::move(all));
    }
    return out;
}

} // namespace jamsim
