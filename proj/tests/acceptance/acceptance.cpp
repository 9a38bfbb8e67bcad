// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include "pinnfcg/app/commands.hpp"
#include "pinnfcg/app/formats.hpp"
#include "pinnfcg/app/manifest.hpp"
#include "pinnfcg/fatigue_physics.hpp"
#include "pinnfcg/signal_prep.hpp"
#include "pinnfcg/synthetic_data.hpp"
#include "pinnfcg/trainer.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "test_support.hpp"

using namespace pinnfcg;
using namespace pinnfcg::testing;

namespace {

// Tolerances and budgets.
constexpr int kGradientConfigs = 24;
constexpr std::size_t kGradientRows = 30;
constexpr double kFiniteDifferenceStep = 1e-6;
constexpr double kGradientRelTol = 1e-5;
constexpr double kGradientSeconds = 30.0;

constexpr std::size_t kBatchSize = 10;
constexpr int kTrainEpochs = 50;
constexpr double kSecondsPerDataset = 60.0;
constexpr std::size_t kMonotoneRequired = 9;
constexpr double kMinRSquared = 0.99;
constexpr std::size_t kLinearRequired = 9;
constexpr double kMaxLogCrackGap = 0.5;
constexpr std::size_t kBoundaryRequired = 8;
constexpr double kIcLo = 0.5;
constexpr double kIcHi = 2.0;
constexpr std::size_t kInitialRequired = 8;

constexpr std::uint64_t kDispersionSeeds[] = {0, 1, 2};
constexpr int kChangepointCases = 20;
constexpr double kExponentTol = 1e-6;
constexpr double kCoeffRelTol = 0.01;
constexpr double kRSquaredExact = 1e-12;

constexpr std::uint64_t kBatchSeed = 0;

struct Outcome {
    bool pass{false};
    std::string detail;
};

int failures = 0;

void report(int id, const char* name, const std::function<Outcome()>& body) {
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Shared by criteria 2-5: individual training over the default synthetic batch.
struct IndividualRun {
    std::vector<PreparedDataset> data;
    std::vector<TrainReport> reports;
    double seconds_per_dataset{0.0};
};

const IndividualRun& individual_run() {
    static const IndividualRun run = [] {
        IndividualRun r;
        r.data = prepared_batch(kBatchSize, kBatchSeed);
        TrainConfig cfg;
        cfg.epochs = kTrainEpochs;
        auto t0 = std::chrono::steady_clock::now();
        for (const auto& d : r.data) {
            r.reports.push_back(train_individual(d, cfg, {}));
        }
        r.seconds_per_dataset = seconds_since(t0) / static_cast<double>(std::max<std::size_t>(1, r.data.size()));
        return r;
    }();
    return run;
}

Outcome require_batch(const IndividualRun& run) {
    if (run.data.size() != kBatchSize) {
        return {false, "only " + std::to_string(run.data.size()) + " of 10 coupons produced a prepared dataset"};
    }
    return {true, ""};
}

Outcome gradient_criterion() {
    auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    std::string worst_where = "-";
    std::size_t compared = 0, skipped = 0;
    for (int s = 0; s < kGradientConfigs; ++s) {
        auto c = random_gradient_case(static_cast<std::uint64_t>(1000 + s), kGradientRows);
        auto checks = check_gradients(c, kFiniteDifferenceStep);
        for (Objective o : kAllObjectives) {
            const auto& r = checks[static_cast<std::size_t>(o)];
            compared += r.compared;
            skipped += r.skipped;
            if (r.compared == 0) {
                return {false, std::string("no comparable components for ") + objective_name(o)};
            }
            if (r.relative_error > worst) {
                worst = r.relative_error;
                worst_where = std::string(objective_name(o)) + " config " + std::to_string(s);
            }
        }
    }
    const double secs = seconds_since(t0);
    const bool pass = worst <= kGradientRelTol && secs <= kGradientSeconds;
    return {pass, std::to_string(kGradientConfigs) + " configs x 6 objectives, worst rel err " + fmt("%.2e", worst) +
                      " (" + worst_where + "), " + std::to_string(compared) + " components compared, " +
                      std::to_string(skipped) + " skipped at kinks, " + fmt("%.1f s", secs)};
}

Outcome monotonicity_criterion() {
    const auto& run = individual_run();
    if (auto b = require_batch(run); !b.pass) {
        return b;
    }
    std::size_t ok = 0;
    for (const auto& r : run.reports) {
        const auto& last = r.loss_history.back();
        ok += (last.l_mon_a == 0.0 && last.l_mon_k == 0.0) ? 1 : 0;
    }
    const bool pass = ok >= kMonotoneRequired && run.seconds_per_dataset <= kSecondsPerDataset;
    return {pass, std::to_string(ok) + "/10 datasets end with l_mon_a = l_mon_k = 0, " +
                      fmt("%.2f s per dataset", run.seconds_per_dataset)};
}

Outcome linearity_criterion() {
    const auto& run = individual_run();
    if (auto b = require_batch(run); !b.pass) {
        return b;
    }
    std::size_t ok = 0;
    double lowest = 1.0;
    for (const auto& r : run.reports) {
        const double r2 = r.fits.front().r_squared;
        lowest = std::min(lowest, r2);
        ok += r2 >= kMinRSquared ? 1 : 0;
    }
    return {ok >= kLinearRequired, std::to_string(ok) + "/10 fits with R^2 >= 0.99, lowest " + fmt("%.5f", lowest)};
}

Outcome boundary_criterion() {
    const auto& run = individual_run();
    if (auto b = require_batch(run); !b.pass) {
        return b;
    }
    GeometryConfig geom;
    std::size_t ok = 0;
    double worst = 0.0;
    for (const auto& r : run.reports) {
        const double gap = std::abs(std::log10(r.predictions.front().final_crack_mm() / geom.gauge_width_mm));
        worst = std::max(worst, std::isfinite(gap) ? gap : 1e9);
        ok += gap <= kMaxLogCrackGap ? 1 : 0;
    }
    return {ok >= kBoundaryRequired,
            std::to_string(ok) + "/10 final sizes within a factor 10^0.5 of W, worst |log10(a/W)| " + fmt("%.3f", worst)};
}

Outcome initial_condition_criterion() {
    const auto& run = individual_run();
    if (auto b = require_batch(run); !b.pass) {
        return b;
    }
    std::size_t ok = 0;
    double lo = 1e9, hi = 0.0;
    for (std::size_t i = 0; i < run.reports.size(); ++i) {
        const double ratio = run.reports[i].predictions.front().delta_k.front() / run.data[i].delta_k_th;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        ok += (ratio >= kIcLo && ratio <= kIcHi) ? 1 : 0;
    }
    return {ok >= kInitialRequired, std::to_string(ok) + "/10 with dK_1/dK_th in [0.5, 2], range " + fmt("%.3f", lo) +
                                         " to " + fmt("%.3f", hi)};
}

Outcome dispersion_criterion() {
    std::string detail;
    bool pass = true;
    for (std::uint64_t seed : kDispersionSeeds) {
        auto data = prepared_batch(kBatchSize, seed);
        if (data.size() != kBatchSize) {
            return {false, "seed " + std::to_string(seed) + ": batch has runouts"};
        }
        TrainConfig cfg;
        cfg.epochs = kTrainEpochs;
        cfg.seed = seed;
        std::vector<double> m_ind, m_comb;
        for (const auto& r : train_individual_batch(data, cfg, {}, 4)) {
            m_ind.push_back(r.fits.front().params.exponent_m);
        }
        for (const auto& f : train_combined(data, cfg, {}).fits) {
            m_comb.push_back(f.params.exponent_m);
        }
        const double s_ind = sample_stddev(m_ind), s_comb = sample_stddev(m_comb);
        pass = pass && s_comb < s_ind;
        detail += (detail.empty() ? "" : "; ") + std::string("seed ") + std::to_string(seed) + " std(m) combined " +
                  fmt("%.4f", s_comb) + " vs individual " + fmt("%.4f", s_ind);
    }
    return {pass, detail};
}

Outcome changepoint_criterion() {
    PrepConfig prep;
    const double tol = prep.smoothing_window + 5.0;
    int ok = 0;
    double worst = 0.0;
    for (int s = 0; s < kChangepointCases; ++s) {
        GeneratorConfig g;
        g.noise_sigma_hz = 0.0;
        g.seed = static_cast<std::uint64_t>(s);
        g.stress_amplitude_mpa = 200.0 + 250.0 * s / (kChangepointCases - 1);
        auto c = generate(g, {});
        auto w = detect_transition(moving_average(c.dataset.frequency_hz, prep.smoothing_window), prep);
        if (!w) {
            worst = 1e9;
            continue;
        }
        const double err = std::abs(static_cast<double>(*w) - static_cast<double>(c.truth.crack_initiation_index));
        worst = std::max(worst, err);
        ok += err <= tol ? 1 : 0;
    }
    return {ok == kChangepointCases, std::to_string(ok) + "/20 within +-" + fmt("%.0f", tol) +
                                         " samples, worst offset " + fmt("%.0f", worst)};
}

Outcome regression_criterion() {
    double worst_m = 0.0, worst_c = 0.0, worst_r2 = 0.0;
    for (const auto& lit : literature_paris_constants()) {
        std::vector<double> dk, rate;
        for (int i = 0; i < 50; ++i) {
            dk.push_back(4.0 + 0.8 * i);
            rate.push_back(paris_rate(lit.params, dk.back()));
        }
        auto f = fit_paris_constants(dk, rate);
        worst_m = std::max(worst_m, std::abs(f.params.exponent_m - lit.params.exponent_m));
        worst_c = std::max(worst_c, std::abs(f.params.coeff_c / lit.params.coeff_c - 1.0));
        worst_r2 = std::max(worst_r2, 1.0 - f.r_squared);
    }
    const bool pass = worst_m <= kExponentTol && worst_c <= kCoeffRelTol && worst_r2 <= kRSquaredExact;
    return {pass, "5 reference pairs, worst |dm| " + fmt("%.1e", worst_m) + ", worst |dC|/C " + fmt("%.1e", worst_c) +
                      ", worst 1-R^2 " + fmt("%.1e", worst_r2)};
}

Outcome determinism_criterion() {
    using namespace pinnfcg::app;
    auto root = scratch_dir("acceptance_determinism");
    cmd_generate({std::nullopt, root / "coupons", 4, 3});
    cmd_prepare({{(root / "coupons").string()}, std::nullopt, root / "prepared"});

    TrainOptions first;
    first.inputs = {(root / "prepared").string()};
    first.out_dir = root / "run1";
    first.mode = TrainMode::Individual;
    first.reference_rows = true;
    cmd_train(first);

    TrainOptions replay;
    replay.manifest_path = root / "run1" / kManifestFile;
    replay.out_dir = root / "run2";
    replay.jobs = 4;
    cmd_train(replay);

    const auto a = read_file(root / "run1" / kFitsFile);
    const auto b = read_file(root / "run2" / kFitsFile);
    const bool pass = !a.empty() && a == b;
    fs::remove_all(root);
    return {pass, std::string(pass ? "identical" : "different") + " fits_summary.csv (" + std::to_string(a.size()) +
                      " bytes) from a run and its manifest replay with 4 jobs"};
}

Outcome trend_criterion() {
    auto data = prepared_batch(kBatchSize, kBatchSeed);
    if (data.size() != kBatchSize) {
        return {false, "batch has runouts"};
    }
    std::vector<double> stress, rows;
    for (const auto& d : data) {
        stress.push_back(d.stress_amplitude_mpa);
        rows.push_back(static_cast<double>(d.size()));
    }
    const double rho = spearman(stress, rows);
    return {rho < 0.0, "Spearman rho(stress, retained rows) = " + fmt("%.3f", rho)};
}

}  // namespace

int main() {
    report(1, "gradient correctness", gradient_criterion);
    report(2, "monotonicity healing", monotonicity_criterion);
    report(3, "Paris linearity", linearity_criterion);
    report(4, "boundary condition", boundary_criterion);
    report(5, "initial condition", initial_condition_criterion);
    report(6, "combined vs individual dispersion", dispersion_criterion);
    report(7, "changepoint oracle", changepoint_criterion);
    report(8, "regression round trip", regression_criterion);
    report(9, "determinism", determinism_criterion);
    report(10, "pipeline trend", trend_criterion);
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
