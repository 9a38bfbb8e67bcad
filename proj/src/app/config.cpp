#include "pinnfcg/app/config.hpp"

#include "pinnfcg/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace pinnfcg::app {

using nlohmann::json;

namespace {

/// Reads fields out of one section and remembers which keys were consumed.
class Section {
public:
    Section(const json& root, const std::string& name, const std::string& origin) : name_(name), origin_(origin) {
        if (root.contains(name)) {
            node_ = &root.at(name);
            if (!node_->is_object()) {
                fail("section must be an object");
            }
        }
    }

    template <class T>
    void read(const char* key, T& target) {
        if (node_ == nullptr || !node_->contains(key)) {
            return;
        }
        seen_.insert(key);
        try {
            target = node_->at(key).get<T>();
        } catch (const json::exception& e) {
            fail(std::string("bad value for '") + key + "': " + e.what());
        }
    }

    void read_range(const char* key, double& lo, double& hi) {
        std::vector<double> pair{lo, hi};
        read(key, pair);
        if (pair.size() != 2) {
            fail(std::string("'") + key + "' must be a [lo, hi] pair");
        }
        lo = pair[0];
        hi = pair[1];
    }

    void finish() const {
        if (node_ == nullptr) {
            return;
        }
        for (const auto& item : node_->items()) {
            if (!seen_.count(item.key())) {
                fail("unknown key '" + item.key() + "'");
            }
        }
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw ConfigError(origin_ + ": [" + name_ + "] " + what);
    }

private:
    std::string name_;
    std::string origin_;
    const json* node_{nullptr};
    std::set<std::string> seen_;
};

const char* rule_name(IntegrationRule rule) {
    return rule == IntegrationRule::LeftEndpoint ? "left_endpoint" : "trapezoidal";
}

}  // namespace

void PipelineConfig::validate() const {
    try {
        geometry.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("physics: ") + e.what());
    }
    if (!(murakami_c1 > 0.0)) {
        throw ConfigError("physics: murakami_c1 must be positive");
    }
    if (predict.initial_crack_mm && !(*predict.initial_crack_mm >= 0.0)) {
        throw ConfigError("physics: initial_crack_mm must be non-negative");
    }
    prep.validate();
    train.validate();
    generator.validate();
    if (batch.count < 1) {
        throw ConfigError("batch: count must be >= 1");
    }
    if (!(batch.stress_min_mpa > 0.0) || !(batch.stress_max_mpa >= batch.stress_min_mpa)) {
        throw ConfigError("batch: need 0 < stress_min_mpa <= stress_max_mpa");
    }
    if (!(batch.variation.defect_jitter >= 0.0 && batch.variation.defect_jitter < 1.0)) {
        throw ConfigError("batch: defect_jitter must lie in [0, 1)");
    }
}

PipelineConfig parse_config(const std::string& json_text, const std::string& origin) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    if (!root.is_object()) {
        throw ConfigError(origin + ": top level must be an object");
    }
    static const std::set<std::string> sections{"physics", "prep", "network", "loss", "train", "generator", "batch"};
    for (const auto& item : root.items()) {
        if (!sections.count(item.key())) {
            throw ConfigError(origin + ": unknown section '" + item.key() + "'");
        }
    }

    PipelineConfig c;

    Section physics(root, "physics", origin);
    physics.read("gauge_width_mm", c.geometry.gauge_width_mm);
    physics.read("geometry_factor", c.geometry.geometry_factor);
    physics.read("runout_cycles", c.geometry.runout_cycles);
    physics.read("murakami_c1", c.murakami_c1);
    std::string rule = rule_name(c.predict.rule);
    physics.read("integration_rule", rule);
    if (rule == "left_endpoint") {
        c.predict.rule = IntegrationRule::LeftEndpoint;
    } else if (rule == "trapezoidal") {
        c.predict.rule = IntegrationRule::Trapezoidal;
    } else {
        physics.fail("integration_rule must be left_endpoint or trapezoidal");
    }
    json a0 = nullptr;
    physics.read("initial_crack_mm", a0);
    if (a0.is_number()) {
        c.predict.initial_crack_mm = a0.get<double>();
    } else if (!a0.is_null()) {
        physics.fail("initial_crack_mm must be a number or null");
    }
    physics.finish();

    Section prep(root, "prep", origin);
    prep.read("smoothing_window", c.prep.smoothing_window);
    prep.read("initial_window", c.prep.initial_window);
    prep.read("alpha", c.prep.alpha);
    prep.finish();

    Section network(root, "network", origin);
    network.read("hidden_sizes", c.train.hidden_sizes);
    std::string act(to_string(c.train.hidden_activation));
    network.read("hidden_activation", act);
    try {
        c.train.hidden_activation = activation_from_string(act);
    } catch (const ConfigError& e) {
        network.fail(e.what());
    }
    network.read_range("c_log10_range", c.train.scaling.c_log10_lo, c.train.scaling.c_log10_hi);
    network.read_range("m_range", c.train.scaling.m_lo, c.train.scaling.m_hi);
    network.finish();

    Section loss(root, "loss", origin);
    loss.read("w_ic", c.train.weights.w_ic);
    loss.read("w_bc", c.train.weights.w_bc);
    loss.read("w_mon_a", c.train.weights.w_mon_a);
    loss.read("w_mon_k", c.train.weights.w_mon_k);
    loss.read("w_rss", c.train.weights.w_rss);
    loss.finish();

    Section train(root, "train", origin);
    train.read("epochs", c.train.epochs);
    train.read("learning_rate", c.train.learning_rate);
    train.read("seed", c.train.seed);
    train.read("combined_epochs_per_dataset", c.train.combined_epochs_per_dataset);
    train.read("beta1", c.train.beta1);
    train.read("beta2", c.train.beta2);
    train.read("epsilon", c.train.epsilon);
    train.finish();

    Section gen(root, "generator", origin);
    gen.read("paris_c", c.generator.true_paris.coeff_c);
    gen.read("paris_m", c.generator.true_paris.exponent_m);
    gen.read("initial_crack_mm", c.generator.initial_crack_mm);
    gen.read("stress_amplitude_mpa", c.generator.stress_amplitude_mpa);
    gen.read("sqrt_area_um", c.generator.sqrt_area_um);
    gen.read("hardness_hv", c.generator.hardness_hv);
    gen.read("base_frequency_hz", c.generator.base_frequency_hz);
    gen.read("linear_drift_hz_per_mcycle", c.generator.linear_drift_hz_per_mcycle);
    gen.read("failure_drop_hz", c.generator.failure_drop_hz);
    gen.read("failure_crack_mm", c.generator.failure_crack_mm);
    gen.read("sample_interval", c.generator.sample_interval);
    gen.read("runout", c.generator.runout);
    gen.read("stiffness_exponent", c.generator.stiffness_exponent);
    gen.read("noise_sigma_hz", c.generator.noise_sigma_hz);
    gen.read("initiation_fraction_lo", c.generator.initiation_fraction_lo);
    gen.read("initiation_fraction_hi", c.generator.initiation_fraction_hi);
    gen.read("seed", c.generator.seed);
    gen.finish();

    Section batch(root, "batch", origin);
    batch.read("count", c.batch.count);
    batch.read("stress_min_mpa", c.batch.stress_min_mpa);
    batch.read("stress_max_mpa", c.batch.stress_max_mpa);
    batch.read("seed", c.batch.seed);
    batch.read("defect_jitter", c.batch.variation.defect_jitter);
    batch.finish();

    c.validate();
    return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), path.string());
}

std::string config_to_json(const PipelineConfig& c) {
    json root;
    root["physics"] = {
        {"gauge_width_mm", c.geometry.gauge_width_mm},
        {"geometry_factor", c.geometry.geometry_factor},
        {"runout_cycles", c.geometry.runout_cycles},
        {"murakami_c1", c.murakami_c1},
        {"integration_rule", rule_name(c.predict.rule)},
        {"initial_crack_mm", c.predict.initial_crack_mm ? json(*c.predict.initial_crack_mm) : json(nullptr)},
    };
    root["prep"] = {
        {"smoothing_window", c.prep.smoothing_window},
        {"initial_window", c.prep.initial_window},
        {"alpha", c.prep.alpha},
    };
    root["network"] = {
        {"hidden_sizes", c.train.hidden_sizes},
        {"hidden_activation", std::string(to_string(c.train.hidden_activation))},
        {"c_log10_range", {c.train.scaling.c_log10_lo, c.train.scaling.c_log10_hi}},
        {"m_range", {c.train.scaling.m_lo, c.train.scaling.m_hi}},
    };
    root["loss"] = {
        {"w_ic", c.train.weights.w_ic},       {"w_bc", c.train.weights.w_bc},   {"w_mon_a", c.train.weights.w_mon_a},
        {"w_mon_k", c.train.weights.w_mon_k}, {"w_rss", c.train.weights.w_rss},
    };
    root["train"] = {
        {"epochs", c.train.epochs},
        {"learning_rate", c.train.learning_rate},
        {"seed", c.train.seed},
        {"combined_epochs_per_dataset", c.train.combined_epochs_per_dataset},
        {"beta1", c.train.beta1},
        {"beta2", c.train.beta2},
        {"epsilon", c.train.epsilon},
    };
    root["generator"] = {
        {"paris_c", c.generator.true_paris.coeff_c},
        {"paris_m", c.generator.true_paris.exponent_m},
        {"initial_crack_mm", c.generator.initial_crack_mm},
        {"stress_amplitude_mpa", c.generator.stress_amplitude_mpa},
        {"sqrt_area_um", c.generator.sqrt_area_um},
        {"hardness_hv", c.generator.hardness_hv},
        {"base_frequency_hz", c.generator.base_frequency_hz},
        {"linear_drift_hz_per_mcycle", c.generator.linear_drift_hz_per_mcycle},
        {"failure_drop_hz", c.generator.failure_drop_hz},
        {"failure_crack_mm", c.generator.failure_crack_mm},
        {"sample_interval", c.generator.sample_interval},
        {"runout", c.generator.runout},
        {"stiffness_exponent", c.generator.stiffness_exponent},
        {"noise_sigma_hz", c.generator.noise_sigma_hz},
        {"initiation_fraction_lo", c.generator.initiation_fraction_lo},
        {"initiation_fraction_hi", c.generator.initiation_fraction_hi},
        {"seed", c.generator.seed},
    };
    root["batch"] = {
        {"count", c.batch.count},
        {"stress_min_mpa", c.batch.stress_min_mpa},
        {"stress_max_mpa", c.batch.stress_max_mpa},
        {"seed", c.batch.seed},
        {"defect_jitter", c.batch.variation.defect_jitter},
    };
    return root.dump(2) + "\n";
}

}  // namespace pinnfcg::app
