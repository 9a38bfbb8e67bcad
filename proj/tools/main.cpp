#include "pinnfcg/app/commands.hpp"
#include "pinnfcg/app/manifest.hpp"
#include "pinnfcg/errors.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

namespace {

enum ExitCode : int { kOk = 0, kInputError = 2, kNumericAbort = 3, kConfigError = 4, kOther = 1 };

}  // namespace

int main(int argc, char** argv) {
    using namespace pinnfcg;
    using namespace pinnfcg::app;

    CLI::App app{"Physics-informed fatigue crack growth from resonance-frequency records"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    std::string config;
    std::string out;
    std::uint64_t seed = 0;

    GenerateOptions gen;
    std::size_t count = 0;
    auto* generate = app.add_subcommand("generate", "Write a batch of synthetic coupon records");
    generate->add_option("--config", config, "JSON config")->check(CLI::ExistingFile);
    generate->add_option("--out", out, "Output directory")->required();
    generate->add_option("--n", count, "Number of coupons")->check(CLI::PositiveNumber);
    generate->add_option("--seed", seed, "Batch seed");

    PrepareOptions prep;
    auto* prepare = app.add_subcommand("prepare", "Select the nonlinear region and build network features");
    prepare->add_option("inputs", prep.inputs, "Coupon .meta.json files, directories or globs")->required();
    prepare->add_option("--config", config, "JSON config")->check(CLI::ExistingFile);
    prepare->add_option("--out", out, "Output directory")->required();

    TrainOptions tr;
    std::string mode = "individual";
    std::string reference;
    std::string manifest;
    auto* train = app.add_subcommand("train", "Train the physics-informed network");
    train->add_option("inputs", tr.inputs, "Prepared .prepared.csv files, directories or globs");
    train->add_option("--config", config, "JSON config")->check(CLI::ExistingFile);
    train->add_option("--manifest", manifest, "Repeat the run recorded in a manifest")->check(CLI::ExistingFile);
    train->add_option("--out", out, "Output directory")->required();
    train->add_option("--mode", mode, "individual or combined")->check(CLI::IsMember({"individual", "combined"}));
    train->add_option("--jobs", tr.jobs, "Parallel trainings in individual mode")->check(CLI::PositiveNumber);
    train->add_option("--reference", reference, "Append published reference rows")->check(CLI::IsMember({"table2"}));
    train->add_option("--seed", seed, "Network initialisation seed");

    ReportOptions rep;
    auto* report = app.add_subcommand("report", "Write plot files for a training run");
    report->add_option("run_dir", rep.run_dir, "Training output directory")->required();
    report->add_option("--out", out, "Output directory (default: run_dir)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }

    auto optional_path = [](const std::string& s) {
        return s.empty() ? std::optional<std::filesystem::path>{} : std::optional<std::filesystem::path>{s};
    };

    try {
        if (*generate) {
            gen.config_path = optional_path(config);
            gen.out_dir = out;
            if (generate->count("--n")) {
                gen.count = count;
            }
            if (generate->count("--seed")) {
                gen.seed = seed;
            }
            auto result = cmd_generate(gen);
            std::cout << "generated " << result.ids.size() << " coupons in " << out;
            if (result.runouts > 0) {
                std::cout << " (" << result.runouts << " reached runout)";
            }
            std::cout << "\n";
        } else if (*prepare) {
            prep.config_path = optional_path(config);
            prep.out_dir = out;
            auto result = cmd_prepare(prep);
            std::cout << "dataset_id  raw  omega  retained  sigma_w[MPa]  dK_th[MPa m^0.5]\n";
            for (const auto& e : result.entries) {
                if (e.runout) {
                    continue;
                }
                std::cout << e.id << "  " << e.raw_rows << "  " << e.transition_index << "  " << e.retained_rows
                          << "  " << e.sigma_w << "  " << e.delta_k_th << "\n";
            }
            for (const auto& notice : result.notices) {
                std::cerr << "notice: " << notice << "\n";
            }
        } else if (*train) {
            tr.config_path = optional_path(config);
            tr.manifest_path = optional_path(manifest);
            tr.out_dir = out;
            tr.mode = train_mode_from_string(mode);
            tr.reference_rows = !reference.empty();
            if (train->count("--seed")) {
                tr.seed = seed;
            }
            if (tr.inputs.empty() && !tr.manifest_path) {
                throw ConfigError("train needs prepared inputs or --manifest");
            }
            auto result = cmd_train(tr);
            std::cout << "dataset_id  C  m  r_squared  final_crack_mm\n";
            for (const auto& f : result.fits) {
                std::cout << f.dataset_id << "  " << f.coeff_c << "  " << f.exponent_m << "  " << f.r_squared << "  "
                          << f.final_crack_mm << "\n";
            }
        } else if (*report) {
            rep.out_dir = optional_path(out);
            for (const auto& path : cmd_report(rep)) {
                std::cout << "wrote " << path.string() << "\n";
            }
        }
    } catch (const NumericAbort& e) {
        std::cerr << "error: training aborted: " << e.what() << "\n";
        return kNumericAbort;
    } catch (const ConfigError& e) {
        std::cerr << "error: config: " << e.what() << "\n";
        return kConfigError;
    } catch (const ParseError& e) {
        std::cerr << "error: input: " << e.what() << "\n";
        return kInputError;
    } catch (const DomainError& e) {
        std::cerr << "error: input: " << e.what() << "\n";
        return kInputError;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kOther;
    }
    return kOk;
}
