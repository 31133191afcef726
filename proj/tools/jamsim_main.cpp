#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "jamsim/config.hpp"
#include "jamsim/emit.hpp"
#include "jamsim/pipeline.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::vector<std::string> overrides;  // key=value pairs from the command line
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("-c,--config", opts.config_path, "configuration file (key = value lines)")
        ->check(CLI::ExistingFile);
    cmd->add_option("-s,--set", opts.overrides,
                    "override a config key, e.g. --set seed=7 --set algorithm=FIXED");
}

jamsim::RunConfig resolve_config(const CommonOpts& opts) {
    jamsim::RunConfig cfg;
    bool jammer_pinned = false;
    bool rx_changed = false;
    if (!opts.config_path.empty()) cfg = jamsim::load_run_config(opts.config_path);
    for (const std::string& kv : opts.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw jamsim::ValidationError("--set expects key=value, got '" + kv + "'");
        const std::string key = kv.substr(0, eq);
        jamsim::apply_config_key(cfg, key, kv.substr(eq + 1));
        if (key == "jammer_trajectory") jammer_pinned = true;
        if (key == "rx_trajectory") rx_changed = true;
    }
    if (rx_changed && !jammer_pinned)
        cfg.scenario.jammer_trajectory =
            jamsim::default_jammer_trajectory(cfg.scenario.rx_trajectory);
    jamsim::validate_run_config(cfg);
    return cfg;
}

std::filesystem::path out_path(const jamsim::RunConfig& cfg, const std::string& name) {
    return std::filesystem::path(cfg.output_dir) / name;
}

int cmd_simulate(const CommonOpts& opts, const std::string& snapshot_dump,
                 std::size_t snapshot_index) {
    const jamsim::RunConfig cfg = resolve_config(opts);
    std::optional<jamsim::LinearModel> model;
    if (cfg.algorithm == jamsim::Algorithm::kMusicMvdrMl)
        model = jamsim::train_default_predictor(cfg);
    const auto records = jamsim::run_mitigation_loop(cfg, model ? &*model : nullptr);
    const auto summary = jamsim::summarize(cfg.algorithm, records);

    const std::string stem = std::string("run_") + jamsim::algorithm_name(cfg.algorithm) + "_" +
                             jamsim::trajectory_name(cfg.scenario.rx_trajectory);
    jamsim::write_records_csv(records, out_path(cfg, stem + ".csv").string());
    jamsim::write_summary_json(summary, out_path(cfg, stem + ".json").string());

    if (!snapshot_dump.empty()) {
        const auto world = jamsim::world_at(cfg.scenario, snapshot_index);
        const auto snap = jamsim::synth_snapshot(
            world, jamsim::make_array(cfg), jamsim::make_signal(cfg),
            jamsim::derive_seed(cfg.scenario.seed, snapshot_index, 0xC0113C7));
        jamsim::write_snapshot_csv(snap, snapshot_dump);
    }

    std::printf("%s %s->%s: mean improvement %.2f dB, max %.2f dB, accuracy(7.5%%) %.3f\n",
                jamsim::algorithm_name(cfg.algorithm),
                jamsim::trajectory_name(cfg.scenario.rx_trajectory),
                jamsim::trajectory_name(cfg.scenario.jammer_trajectory),
                summary.mean_improvement_db, summary.max_improvement_db,
                summary.accuracy.hit_rate_7_5);
    std::printf("wrote %s and %s\n", out_path(cfg, stem + ".csv").string().c_str(),
                out_path(cfg, stem + ".json").string().c_str());
    return 0;
}

int cmd_compare(const CommonOpts& opts, bool write_records) {
    const jamsim::RunConfig cfg = resolve_config(opts);
    const auto cmp = jamsim::run_comparison(cfg);
    jamsim::write_comparison_csv(cmp, out_path(cfg, "comparison.csv").string());
    jamsim::write_comparison_json(cmp, out_path(cfg, "comparison.json").string());
    if (write_records)
        for (std::size_t i = 0; i < cmp.summaries.size(); ++i)
            jamsim::write_records_csv(
                cmp.records[i],
                out_path(cfg, std::string("records_") +
                                  jamsim::algorithm_name(cmp.summaries[i].algorithm) + ".csv")
                    .string());
    std::printf("%-14s %10s %10s %10s\n", "algorithm", "mean dB", "max dB", "acc 7.5%");
    for (const auto& s : cmp.summaries)
        std::printf("%-14s %10.2f %10.2f %10.3f\n", jamsim::algorithm_name(s.algorithm),
                    s.mean_improvement_db, s.max_improvement_db, s.accuracy.hit_rate_7_5);
    std::printf("wrote %s\n", out_path(cfg, "comparison.csv").string().c_str());
    return 0;
}

int cmd_train(const CommonOpts& opts, const std::string& model_out) {
    const jamsim::RunConfig cfg = resolve_config(opts);
    const auto ts = jamsim::build_default_training_set(cfg);
    const auto model = jamsim::fit_linear(ts);
    const auto report = jamsim::coefficient_significance(model);
    std::printf("training rows: %zu, r^2 = %.6f%s\n", model.training_rows, model.r_squared,
                report.exact_fit ? " (exact fit)" : "");
    std::printf("%-14s %14s %14s %12s %12s\n", "term", "coefficient", "stderr", "t", "p");
    for (const auto& row : report.rows)
        std::printf("%-14s %14.6f %14.6f %12.3f %12.3e\n", row.label.c_str(), row.coefficient,
                    row.stderr_value, row.t_statistic, row.p_value);
    const std::string path = model_out.empty() ? out_path(cfg, "model.json").string() : model_out;
    jamsim::save_model_json(model, path);
    std::printf("wrote %s\n", path.c_str());
    return 0;
}

int cmd_beampattern(const CommonOpts& opts, std::size_t collection, bool fixed) {
    const jamsim::RunConfig cfg = resolve_config(opts);
    const auto geom = jamsim::make_array(cfg);
    const auto world = jamsim::world_at(cfg.scenario, collection);
    const auto snap = jamsim::synth_snapshot(
        world, geom, jamsim::make_signal(cfg),
        jamsim::derive_seed(cfg.scenario.seed, collection, 0xC0113C7));
    jamsim::BeamWeights w;
    if (fixed) {
        w = jamsim::fixed_weights(geom, world.true_src_doa);
    } else {
        const auto cov = jamsim::estimate_covariance(snap);
        w = jamsim::mvdr_weights(cov, geom, world.true_src_doa);
    }
    const auto bp = jamsim::beampattern(w, geom, cfg.grid_step_deg);
    const std::string path = out_path(cfg, "beampattern.csv").string();
    jamsim::write_beampattern_csv(bp, path);
    std::printf("collection %zu: source (%.1f, %.1f), jammer (%.1f, %.1f)\n", collection,
                world.true_src_doa.azimuth_deg, world.true_src_doa.elevation_deg,
                world.true_jam_doa.azimuth_deg, world.true_jam_doa.elevation_deg);
    std::printf("wrote %s\n", path.c_str());
    return 0;
}

int cmd_spectrum(const CommonOpts& opts, std::size_t collection) {
    const jamsim::RunConfig cfg = resolve_config(opts);
    const auto geom = jamsim::make_array(cfg);
    const auto world = jamsim::world_at(cfg.scenario, collection);
    const auto snap = jamsim::synth_snapshot(
        world, geom, jamsim::make_signal(cfg),
        jamsim::derive_seed(cfg.scenario.seed, collection, 0xC0113C7));
    const auto cov = jamsim::estimate_covariance(snap);
    const auto spec = jamsim::music_spectrum(cov, geom, cfg.grid_step_deg, 2);
    const std::string path = out_path(cfg, "spectrum.csv").string();
    jamsim::write_spectrum_csv(spec, path);
    std::printf("wrote %s\n", path.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mobile-jammer mitigation simulator: MUSIC DoA estimation, MVDR "
                 "null steering and a linear-regression DoA predictor"};
    app.require_subcommand(1);

    CommonOpts sim_opts, cmp_opts, train_opts, bp_opts, spec_opts;
    std::string snapshot_dump, model_out;
    std::size_t snapshot_index = 0, bp_collection = 0, spec_collection = 0;
    bool cmp_records = false, bp_fixed = false;

    auto* sim = app.add_subcommand("simulate", "run one mitigation loop and write records");
    add_common(sim, sim_opts);
    sim->add_option("--dump-snapshot", snapshot_dump, "also write one snapshot as CSV to this path");
    sim->add_option("--snapshot-index", snapshot_index, "collection index for --dump-snapshot");

    auto* cmp = app.add_subcommand("compare", "run the six-trajectory suite for all algorithms");
    add_common(cmp, cmp_opts);
    cmp->add_flag("--records", cmp_records, "also write per-algorithm record CSVs");

    auto* train = app.add_subcommand("train", "fit the DoA predictor on ground-truth trajectories");
    add_common(train, train_opts);
    train->add_option("-o,--model-out", model_out, "model JSON output path");

    auto* bp = app.add_subcommand("beampattern", "write the beampattern CSV for one collection");
    add_common(bp, bp_opts);
    bp->add_option("--collection", bp_collection, "collection index");
    bp->add_flag("--fixed", bp_fixed, "use the fixed baseline weights instead of MVDR");

    auto* spec = app.add_subcommand("spectrum", "write the MUSIC pseudospectrum CSV for one collection");
    add_common(spec, spec_opts);
    spec->add_option("--collection", spec_collection, "collection index");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(sim_opts, snapshot_dump, snapshot_index);
        if (cmp->parsed()) return cmd_compare(cmp_opts, cmp_records);
        if (train->parsed()) return cmd_train(train_opts, model_out);
        if (bp->parsed()) return cmd_beampattern(bp_opts, bp_collection, bp_fixed);
        if (spec->parsed()) return cmd_spectrum(spec_opts, spec_collection);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
