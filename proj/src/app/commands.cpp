#include "pinnfcg/app/commands.hpp"

#include "pinnfcg/app/manifest.hpp"
#include "pinnfcg/app/report.hpp"
#include "pinnfcg/errors.hpp"
#include "pinnfcg/synthetic_data.hpp"
#include "pinnfcg/trainer.hpp"

#include <algorithm>

namespace pinnfcg::app {

namespace {

PipelineConfig config_or_default(const std::optional<fs::path>& path) {
    return path ? load_config(*path) : PipelineConfig{};
}

std::vector<fs::path> require_inputs(const std::vector<std::string>& args, std::string_view suffix) {
    auto paths = expand_inputs(args, suffix);
    if (paths.empty()) {
        std::string joined;
        for (const auto& a : args) {
            joined += (joined.empty() ? "" : " ") + a;
        }
        throw ParseError(joined.empty() ? "<inputs>" : joined, 0, "no *" + std::string(suffix) + " files found");
    }
    return paths;
}

}  // namespace

TrainMode train_mode_from_string(std::string_view name) {
    if (name == "individual") {
        return TrainMode::Individual;
    }
    if (name == "combined") {
        return TrainMode::Combined;
    }
    throw ConfigError("mode must be individual or combined, got '" + std::string(name) + "'");
}

std::string_view to_string(TrainMode mode) { return mode == TrainMode::Individual ? "individual" : "combined"; }

GenerateResult cmd_generate(const GenerateOptions& options) {
    RunManifest manifest;
    manifest.started_utc = utc_timestamp();
    manifest.command = "generate";
    PipelineConfig cfg = config_or_default(options.config_path);
    if (options.count) {
        cfg.batch.count = *options.count;
    }
    if (options.seed) {
        cfg.batch.seed = *options.seed;
    }
    cfg.validate();

    auto levels = stress_ladder(cfg.batch.count, cfg.batch.stress_min_mpa, cfg.batch.stress_max_mpa);
    auto coupons =
        generate_batch(cfg.batch.count, cfg.generator, levels, cfg.batch.seed, cfg.geometry, cfg.batch.variation);

    fs::create_directories(options.out_dir);
    GenerateResult result;
    for (const auto& c : coupons) {
        write_coupon(options.out_dir, c.dataset);
        write_truth(options.out_dir, c.dataset.id, c.truth);
        result.ids.push_back(c.dataset.id);
        result.runouts += c.truth.reached_runout ? 1 : 0;
    }
    manifest.seed = cfg.batch.seed;
    manifest.config = cfg;
    manifest.options["count"] = std::to_string(cfg.batch.count);
    manifest.finished_utc = utc_timestamp();
    write_manifest(options.out_dir / kManifestFile, manifest);
    return result;
}

PrepareResult cmd_prepare(const PrepareOptions& options) {
    RunManifest manifest;
    manifest.started_utc = utc_timestamp();
    manifest.command = "prepare";
    PipelineConfig cfg = config_or_default(options.config_path);
    auto metas = require_inputs(options.inputs, kMetaSuffix);

    std::vector<fs::path> hashed;
    std::vector<CouponDataset> coupons;
    for (const auto& meta : metas) {
        coupons.push_back(read_coupon(meta));
        hashed.push_back(meta);
        hashed.push_back(meta.parent_path() / (coupons.back().id + ".csv"));
    }

    fs::create_directories(options.out_dir);
    PrepareResult result;
    std::string report("dataset_id,status,raw_rows,transition_index,retained_rows,sigma_w_mpa,delta_k_th\n");
    for (const auto& coupon : coupons) {
        auto outcome = prepare(coupon, coupon.material(cfg.murakami_c1), cfg.prep);
        PrepareEntry entry;
        entry.id = coupon.id;
        entry.raw_rows = coupon.cycles.size();
        if (const auto* data = std::get_if<PreparedDataset>(&outcome)) {
            write_prepared(options.out_dir, *data);
            entry.transition_index = data->transition_index;
            entry.retained_rows = data->size();
            entry.sigma_w = data->sigma_w;
            entry.delta_k_th = data->delta_k_th;
            report += entry.id + ",prepared," + std::to_string(entry.raw_rows) + "," +
                      std::to_string(entry.transition_index) + "," + std::to_string(entry.retained_rows) + "," +
                      format_double(entry.sigma_w) + "," + format_double(entry.delta_k_th) + "\n";
        } else {
            entry.runout = true;
            result.notices.push_back("runout: " + coupon.id + " shows no nonlinear region, skipped");
            report += entry.id + ",runout," + std::to_string(entry.raw_rows) + ",,0,,\n";
        }
        result.entries.push_back(entry);
    }
    write_file_atomic(options.out_dir / kPrepReportFile, report);

    manifest.seed = cfg.train.seed;
    manifest.config = cfg;
    manifest.inputs = hash_inputs(hashed);
    manifest.finished_utc = utc_timestamp();
    write_manifest(options.out_dir / kManifestFile, manifest);
    return result;
}

TrainResult cmd_train(const TrainOptions& options) {
    RunManifest manifest;
    manifest.started_utc = utc_timestamp();
    manifest.command = "train";

    PipelineConfig cfg;
    TrainMode mode = options.mode;
    bool reference_rows = options.reference_rows;
    std::vector<fs::path> inputs;
    if (options.manifest_path) {
        RunManifest previous = read_manifest(*options.manifest_path);
        if (previous.command != "train") {
            throw ConfigError(options.manifest_path->string() + ": not a train manifest");
        }
        verify_inputs(previous);
        cfg = previous.config;
        cfg.train.seed = previous.seed;
        mode = train_mode_from_string(previous.options.at("mode"));
        reference_rows = previous.options.count("reference") > 0;
        for (const auto& in : previous.inputs) {
            if (in.path.size() > kPreparedSuffix.size() &&
                in.path.compare(in.path.size() - kPreparedSuffix.size(), kPreparedSuffix.size(), kPreparedSuffix) == 0) {
                inputs.emplace_back(in.path);
            }
        }
    } else {
        cfg = config_or_default(options.config_path);
        if (options.seed) {
            cfg.train.seed = *options.seed;
        }
        inputs = require_inputs(options.inputs, kPreparedSuffix);
    }
    if (options.jobs < 1) {
        throw ConfigError("jobs must be >= 1");
    }
    cfg.validate();

    std::vector<PreparedDataset> datasets;
    std::vector<fs::path> hashed;
    for (const auto& p : inputs) {
        datasets.push_back(read_prepared(p));
        hashed.push_back(p);
        hashed.push_back(p.parent_path() / (datasets.back().source_id + std::string(kPreparedMetaSuffix)));
    }
    {
        std::vector<std::string> ids;
        for (const auto& d : datasets) {
            ids.push_back(d.source_id);
        }
        std::sort(ids.begin(), ids.end());
        if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
            throw ParseError(*std::adjacent_find(ids.begin(), ids.end()), 0, "dataset id appears more than once");
        }
    }
    if (mode == TrainMode::Combined && datasets.size() < 2) {
        throw ConfigError("combined mode needs at least two prepared datasets");
    }

    fs::create_directories(options.out_dir);
    TrainResult result;
    auto record = [&](const PreparedDataset& d, const CrackGrowthPrediction& p, const ParisFit& fit) {
        write_prediction(options.out_dir / (d.source_id + std::string(kPredictionSuffix)), p);
        result.fits.push_back({d.source_id, fit.params.coeff_c, fit.params.exponent_m, fit.r_squared,
                               p.final_crack_mm()});
    };

    if (mode == TrainMode::Individual) {
        auto reports = train_individual_batch(datasets, cfg.train, cfg.geometry, options.jobs, cfg.predict);
        for (std::size_t i = 0; i < datasets.size(); ++i) {
            const auto& d = datasets[i];
            const auto& r = reports[i];
            fs::path model = options.out_dir / (d.source_id + std::string(kModelSuffix));
            write_model(model, {r.final_network, cfg.train.scaling, {d.source_id}});
            write_loss_history(options.out_dir / (d.source_id + std::string(kLossSuffix)), r.loss_history);
            record(d, r.predictions.front(), r.fits.front());
            result.models.push_back(model);
        }
    } else {
        auto r = train_combined(datasets, cfg.train, cfg.geometry, cfg.predict);
        fs::path model = options.out_dir / ("combined" + std::string(kModelSuffix));
        write_model(model, {r.final_network, cfg.train.scaling, r.dataset_ids});
        write_loss_history(options.out_dir / ("combined" + std::string(kLossSuffix)), r.loss_history);
        for (std::size_t i = 0; i < datasets.size(); ++i) {
            record(datasets[i], r.predictions[i], r.fits[i]);
        }
        result.models.push_back(model);
    }

    std::vector<FitRow> rows = result.fits;
    if (reference_rows) {
        auto refs = reference_fit_rows();
        rows.insert(rows.end(), refs.begin(), refs.end());
    }
    write_fits(options.out_dir / kFitsFile, rows);

    manifest.seed = cfg.train.seed;
    manifest.config = cfg;
    manifest.options["mode"] = std::string(to_string(mode));
    if (reference_rows) {
        manifest.options["reference"] = "table2";
    }
    manifest.inputs = hash_inputs(hashed);
    manifest.finished_utc = utc_timestamp();
    write_manifest(options.out_dir / kManifestFile, manifest);
    return result;
}

std::vector<fs::path> cmd_report(const ReportOptions& options) {
    if (!fs::is_directory(options.run_dir)) {
        throw ParseError(options.run_dir.string(), 0, "run directory does not exist");
    }
    return build_report(options.run_dir, options.out_dir.value_or(options.run_dir)).written;
}

}  // namespace pinnfcg::app
