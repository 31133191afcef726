#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "jamsim/beamforming.hpp"
#include "jamsim/estimation.hpp"
#include "jamsim/pipeline.hpp"
#include "jamsim/predictor.hpp"

namespace jamsim {

inline constexpr const char* kRecordsCsvHeader =
    "t,true_src_az,true_src_el,true_jam_az,true_jam_el,est_az,est_el,est_source,"
    "doa_err_pct,snr_before_db,snr_after_db,improvement_db,music_ms,mvdr_ms,ml_ms";

namespace detail {

/// Fixed-format double for CSV cells; deterministic for identical values.
inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

inline std::ofstream open_out(const std::string& path) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot open output file: " + path);
    return out;
}

} // namespace detail

inline void write_records_csv(const std::vector<CollectionRecord>& records,
                              const std::string& path) {
    std::ofstream out = detail::open_out(path);
    out << kRecordsCsvHeader << '\n';
    for (const CollectionRecord& r : records) {
        out << r.t_index << ',' << detail::fmt(r.true_src_az) << ',' << detail::fmt(r.true_src_el)
            << ',' << detail::fmt(r.true_jam_az) << ',' << detail::fmt(r.true_jam_el) << ','
            << detail::fmt(r.est_az) << ',' << detail::fmt(r.est_el) << ','
            << estimate_source_name(r.est_source) << ',' << detail::fmt(r.doa_error_pct) << ','
            << detail::fmt(r.snr_before_db) << ',' << detail::fmt(r.snr_after_db) << ','
            << detail::fmt(r.improvement_db) << ',' << detail::fmt(r.music_ms) << ','
            << detail::fmt(r.mvdr_ms) << ',' << detail::fmt(r.ml_ms) << '\n';
    }
    if (!out) throw IoError("failed while writing: " + path);
}

inline nlohmann::ordered_json summary_json(const AlgorithmSummary& s) {
    nlohmann::ordered_json j;
    j["algorithm"] = algorithm_name(s.algorithm);
    j["collections"] = s.collections;
    j["mean_improvement_db"] = s.mean_improvement_db;
    j["max_improvement_db"] = s.max_improvement_db;
    j["mean_snr_before_db"] = s.mean_snr_before_db;
    j["mean_snr_after_db"] = s.mean_snr_after_db;
    j["accuracy"] = {{"pct_15", s.accuracy.hit_rate_15},
                     {"pct_10", s.accuracy.hit_rate_10},
                     {"pct_7_5", s.accuracy.hit_rate_7_5}};
    j["mean_abs_azimuth_error_deg"] = s.accuracy.mean_abs_azimuth_error_deg;
    j["timing_ms"] = {{"music_mean", s.mean_music_ms},
                      {"mvdr_mean", s.mean_mvdr_ms},
                      {"ml_mean", s.mean_ml_ms}};
    j["ml_activations"] = s.ml_activations;
    j["fallbacks"] = s.fallbacks;
    return j;
}

inline void write_summary_json(const AlgorithmSummary& s, const std::string& path) {
    std::ofstream out = detail::open_out(path);
    out << summary_json(s).dump(2) << '\n';
    if (!out) throw IoError("failed while writing: " + path);
}

/// Comparison table; deliberately timing-free so repeated runs with the same
/// configuration are byte-identical. Timing means live in the JSON summary.
inline void write_comparison_csv(const ComparisonResult& cmp, const std::string& path) {
    std::ofstream out = detail::open_out(path);
    out << "algorithm,mean_improvement_db,max_improvement_db,accuracy_pct_15,"
           "accuracy_pct_10,accuracy_pct_7_5,mean_abs_azimuth_error_deg\n";
    for (const AlgorithmSummary& s : cmp.summaries) {
        out << algorithm_name(s.algorithm) << ',' << detail::fmt(s.mean_improvement_db) << ','
            << detail::fmt(s.max_improvement_db) << ',' << detail::fmt(s.accuracy.hit_rate_15)
            << ',' << detail::fmt(s.accuracy.hit_rate_10) << ','
            << detail::fmt(s.accuracy.hit_rate_7_5) << ','
            << detail::fmt(s.accuracy.mean_abs_azimuth_error_deg) << '\n';
    }
    if (!out) throw IoError("failed while writing: " + path);
}

inline void write_comparison_json(const ComparisonResult& cmp, const std::string& path) {
    nlohmann::ordered_json j;
    j["algorithms"] = nlohmann::ordered_json::array();
    for (const AlgorithmSummary& s : cmp.summaries) j["algorithms"].push_back(summary_json(s));
    std::ofstream out = detail::open_out(path);
    out << j.dump(2) << '\n';
    if (!out) throw IoError("failed while writing: " + path);
}

inline void write_spectrum_csv(const MusicSpectrum& spec, const std::string& path) {
    std::ofstream out = detail::open_out(path);
    out << "az_deg,el_deg,value\n";
    for (std::size_t ai = 0; ai < spec.az_grid.size(); ++ai)
        for (std::size_t ei = 0; ei < spec.el_grid.size(); ++ei)
            out << detail::fmt(spec.az_grid[ai]) << ',' << detail::fmt(spec.el_grid[ei]) << ','
                << detail::fmt(spec.value(ai, ei)) << '\n';
    if (!out) throw IoError("failed while writing: " + path);
}

inline void write_beampattern_csv(const BeampatternGrid& bp, const std::string& path) {
    std::ofstream out = detail::open_out(path);
    out << "az_deg,el_deg,gain_db\n";
    for (std::size_t ai = 0; ai < bp.az_grid.size(); ++ai)
        for (std::size_t ei = 0; ei < bp.el_grid.size(); ++ei)
            out << detail::fmt(bp.az_grid[ai]) << ',' << detail::fmt(bp.el_grid[ei]) << ','
                << detail::fmt(bp.gain(ai, ei)) << '\n';
    if (!out) throw IoError("failed while writing: " + path);
}

inline void write_snapshot_csv(const Snapshot& snap, const std::string& path) {
    std::ofstream out = detail::open_out(path);
    out << "element,sample_index,re,im\n";
    for (std::size_t e = 0; e < snap.samples.rows(); ++e)
        for (std::size_t t = 0; t < snap.samples.cols(); ++t)
            out << e << ',' << t << ',' << detail::fmt(snap.samples(e, t).real()) << ','
                << detail::fmt(snap.samples(e, t).imag()) << '\n';
    if (!out) throw IoError("failed while writing: " + path);
}

inline nlohmann::ordered_json model_json(const LinearModel& m) {
    nlohmann::ordered_json j;
    j["lag_count"] = m.lag_count;
    j["intercept"] = m.intercept;
    j["coefficients"] = m.coefficients;
    j["intercept_stderr"] = m.intercept_stderr;
    j["stderr"] = m.stderrs;
    j["intercept_p_value"] = m.intercept_p_value;
    j["p_values"] = m.p_values;
    j["r_squared"] = m.r_squared;
    j["exact_fit"] = m.exact_fit;
    j["training_rows"] = m.training_rows;
    return j;
}

inline void save_model_json(const LinearModel& m, const std::string& path) {
    std::ofstream out = detail::open_out(path);
    out << model_json(m).dump(2) << '\n';
    if (!out) throw IoError("failed while writing: " + path);
}

inline LinearModel load_model_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open model file: " + path);
    nlohmann::json j;
    try {
        in >> j;
        LinearModel m;
        m.lag_count = j.at("lag_count").get<std::size_t>();
        m.intercept = j.at("intercept").get<double>();
        m.coefficients = j.at("coefficients").get<std::vector<double>>();
        m.intercept_stderr = j.value("intercept_stderr", 0.0);
        m.stderrs = j.value("stderr", std::vector<double>(m.lag_count, 0.0));
        m.intercept_p_value = j.value("intercept_p_value", 1.0);
        m.p_values = j.value("p_values", std::vector<double>(m.lag_count, 1.0));
        m.r_squared = j.value("r_squared", 0.0);
        m.exact_fit = j.value("exact_fit", false);
        m.training_rows = j.value("training_rows", std::size_t{0});
        if (m.coefficients.size() != m.lag_count)
            throw ValidationError("model file: coefficient count does not match lag_count");
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("model file: malformed JSON: ") + e.what());
    }
}

} // namespace jamsim
