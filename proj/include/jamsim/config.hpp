#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "jamsim/error.hpp"
#include "jamsim/pipeline.hpp"

namespace jamsim {

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ValidationError("config: value for '" + key + "' is not a number: '" + v + "'");
    }
}

inline std::uint64_t to_u64(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const unsigned long long d = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ValidationError("config: value for '" + key + "' is not an unsigned integer: '" + v + "'");
    }
}

inline bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ValidationError("config: value for '" + key + "' is not a boolean: '" + v + "'");
}

inline std::vector<double> to_double_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(to_double(key, item));
    }
    if (out.empty()) throw ValidationError("config: empty list for '" + key + "'");
    return out;
}

} // namespace detail

/// `key = value` lines, UTF-8, '#' starts a comment. Returned in file order
/// isn't needed; later duplicates win.
inline std::map<std::string, std::string> parse_config_text(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config: line " + std::to_string(lineno) +
                                  " has no '=' separator: '" + line + "'");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty())
            throw ValidationError("config: empty key on line " + std::to_string(lineno));
        kv[key] = value;
    }
    return kv;
}

/// Applies one key/value pair onto the run configuration. Unknown keys are
/// rejected so typos fail loudly.
inline void apply_config_key(RunConfig& cfg, const std::string& key, const std::string& value) {
    using namespace detail;
    bool jammer_set = false;
    if (key == "rx_trajectory") {
        cfg.scenario.rx_trajectory = parse_trajectory(value);
    } else if (key == "jammer_trajectory") {
        cfg.scenario.jammer_trajectory = parse_trajectory(value);
        jammer_set = true;
    } else if (key == "tx_x") {
        cfg.scenario.tx_position.x = to_double(key, value);
    } else if (key == "tx_y") {
        cfg.scenario.tx_position.y = to_double(key, value);
    } else if (key == "tx_z") {
        cfg.scenario.tx_position.z = to_double(key, value);
    } else if (key == "collections") {
        cfg.scenario.collections = to_u64(key, value);
    } else if (key == "speed_mps") {
        cfg.scenario.speed_mps = to_double(key, value);
    } else if (key == "collection_interval_s") {
        cfg.scenario.collection_interval_s = to_double(key, value);
    } else if (key == "arm_length_m") {
        cfg.scenario.arm_length_m = to_double(key, value);
    } else if (key == "jsr_db") {
        cfg.scenario.jsr_db = to_double(key, value);
    } else if (key == "input_snr_db") {
        cfg.scenario.input_snr_db = to_double(key, value);
    } else if (key == "seed") {
        cfg.scenario.seed = to_u64(key, value);
    } else if (key == "carrier_hz") {
        cfg.carrier_hz = to_double(key, value);
    } else if (key == "element_spacing_m") {
        cfg.element_spacing_m = to_double(key, value);
    } else if (key == "array_rows") {
        cfg.array_rows = to_u64(key, value);
    } else if (key == "array_cols") {
        cfg.array_cols = to_u64(key, value);
    } else if (key == "snapshot_len") {
        cfg.snapshot_len = to_u64(key, value);
    } else if (key == "burst_fraction") {
        cfg.burst_fraction = to_double(key, value);
    } else if (key == "sample_rate_hz") {
        cfg.sample_rate_hz = to_double(key, value);
    } else if (key == "grid_step_deg") {
        cfg.grid_step_deg = to_double(key, value);
    } else if (key == "threshold_loose_pct") {
        cfg.threshold_loose_pct = to_double(key, value);
    } else if (key == "threshold_mid_pct") {
        cfg.threshold_mid_pct = to_double(key, value);
    } else if (key == "threshold_strict_pct") {
        cfg.threshold_strict_pct = to_double(key, value);
    } else if (key == "ml_trigger_failures") {
        cfg.ml_trigger_failures = to_u64(key, value);
    } else if (key == "algorithm") {
        cfg.algorithm = parse_algorithm(value);
    } else if (key == "output_dir") {
        cfg.output_dir = value;
    } else if (key == "predictor_lag") {
        cfg.predictor_lag = to_u64(key, value);
    } else if (key == "training_speeds_mps") {
        cfg.training_speeds_mps = to_double_list(key, value);
    } else if (key == "predictor_refresh_every") {
        cfg.predictor_refresh_every = to_u64(key, value);
    } else if (key == "snr_power_mean") {
        cfg.snr_averaging = to_bool(key, value) ? SnrAveraging::kPowerMean
                                                : SnrAveraging::kMagnitudeMean;
    } else if (key == "fixed_tracks_truth") {
        cfg.fixed_tracks_truth = to_bool(key, value);
    } else if (key == "comparison_seeds") {
        cfg.comparison_seeds = to_u64(key, value);
    } else {
        throw ValidationError("config: unknown key '" + key + "'");
    }
    (void)jammer_set;
}

/// Loads a configuration file over the defaults. The jammer trajectory
/// follows the default pairing for the receiver trajectory unless the file
/// pins it explicitly.
inline RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    RunConfig cfg;
    const auto kv = parse_config_text(in);
    const bool jammer_pinned = kv.count("jammer_trajectory") > 0;
    for (const auto& [key, value] : kv) apply_config_key(cfg, key, value);
    if (!jammer_pinned)
        cfg.scenario.jammer_trajectory = default_jammer_trajectory(cfg.scenario.rx_trajectory);
    validate_run_config(cfg);
    return cfg;
}

} // namespace jamsim
