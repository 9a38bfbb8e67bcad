#include "pinnfcg/app/formats.hpp"

#include "pinnfcg/errors.hpp"

#include <json.hpp>

#include <fnmatch.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace pinnfcg::app {

using nlohmann::json;

namespace {

std::vector<std::string_view> split_commas(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

double parse_double(std::string_view text, const std::string& file, std::size_t line) {
    while (!text.empty() && text.front() == ' ') {
        text.remove_prefix(1);
    }
    while (!text.empty() && (text.back() == ' ' || text.back() == '\r')) {
        text.remove_suffix(1);
    }
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ParseError(file, line, "not a number: '" + std::string(text) + "'");
    }
    return value;
}

/// CSV body reader. Checks the header and the column count of every row.
class CsvReader {
public:
    CsvReader(const fs::path& path, std::string_view header) : file_(path.string()), in_(path) {
        if (!in_) {
            throw ParseError(file_, 0, "cannot open file");
        }
        std::string line;
        if (!std::getline(in_, line)) {
            throw ParseError(file_, 1, "missing header");
        }
        strip_cr(line);
        if (line != header) {
            throw ParseError(file_, 1, "expected header '" + std::string(header) + "', got '" + line + "'");
        }
        line_no_ = 1;
        columns_ = split_commas(header).size();
    }

    /// Next non-empty row split into fields; false at end of file.
    bool next(std::vector<std::string>& fields) {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_no_;
            strip_cr(line);
            if (line.empty()) {
                continue;
            }
            auto parts = split_commas(line);
            if (parts.size() != columns_) {
                throw ParseError(file_, line_no_,
                                 "expected " + std::to_string(columns_) + " fields, got " +
                                     std::to_string(parts.size()));
            }
            fields.assign(parts.begin(), parts.end());
            return true;
        }
        return false;
    }

    double number(const std::string& field) const { return parse_double(field, file_, line_no_); }
    std::size_t line() const noexcept { return line_no_; }
    const std::string& file() const noexcept { return file_; }

private:
    static void strip_cr(std::string& s) {
        if (!s.empty() && s.back() == '\r') {
            s.pop_back();
        }
    }

    std::string file_;
    std::ifstream in_;
    std::size_t line_no_{0};
    std::size_t columns_{0};
};

json read_json(const fs::path& path) {
    std::string text = read_file(path);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(path.string(), 0, e.what());
    }
}

template <class T>
T json_field(const json& doc, const char* key, const fs::path& path) {
    if (!doc.is_object() || !doc.contains(key)) {
        throw ParseError(path.string(), 0, std::string("missing field '") + key + "'");
    }
    try {
        return doc.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(path.string(), 0, std::string("bad field '") + key + "': " + e.what());
    }
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

void append_row(std::string& out, std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
        if (!first) {
            out += ',';
        }
        out += format_double(v);
        first = false;
    }
    out += '\n';
}

std::string stem_before(const fs::path& path, std::string_view suffix) {
    std::string name = path.filename().string();
    if (name.size() <= suffix.size() || name.compare(name.size() - suffix.size(), suffix.size(), suffix) != 0) {
        throw ParseError(path.string(), 0, "file name must end with " + std::string(suffix));
    }
    return name.substr(0, name.size() - suffix.size());
}

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

std::string format_double(double value) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) {
        throw std::runtime_error("format_double failed");
    }
    return std::string(buf.data(), ptr);
}

void write_file_atomic(const fs::path& path, std::string_view content) {
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot write " + tmp.string());
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            throw std::runtime_error("write failed for " + tmp.string());
        }
    }
    fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError(path.string(), 0, "cannot open file");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

void require_valid_id(std::string_view id) {
    if (id.empty() || id == "." || id == "..") {
        throw DomainError("dataset id must be a non-empty file stem");
    }
    for (char ch : id) {
        bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || (ch >= '0' && ch <= '9') || ch == '_' ||
                  ch == '-' || ch == '.';
        if (!ok) {
            throw DomainError("dataset id '" + std::string(id) + "' contains characters outside [A-Za-z0-9_.-]");
        }
    }
}

void write_coupon(const fs::path& dir, const CouponDataset& dataset) {
    require_valid_id(dataset.id);
    dataset.validate();
    std::string csv(kCouponHeader);
    csv += '\n';
    for (std::size_t i = 0; i < dataset.cycles.size(); ++i) {
        append_row(csv, {dataset.cycles[i], dataset.frequency_hz[i]});
    }
    json meta = {
        {"id", dataset.id},
        {"sqrt_area_um", dataset.sqrt_area_um},
        {"stress_amplitude_mpa", dataset.stress_amplitude_mpa},
        {"hardness_hv", dataset.hardness_hv},
    };
    write_file_atomic(dir / (dataset.id + ".csv"), csv);
    write_file_atomic(dir / (dataset.id + std::string(kMetaSuffix)), dump(meta));
}

CouponDataset read_coupon(const fs::path& meta_path) {
    json meta = read_json(meta_path);
    CouponDataset d;
    d.id = json_field<std::string>(meta, "id", meta_path);
    d.sqrt_area_um = json_field<double>(meta, "sqrt_area_um", meta_path);
    d.stress_amplitude_mpa = json_field<double>(meta, "stress_amplitude_mpa", meta_path);
    d.hardness_hv = json_field<double>(meta, "hardness_hv", meta_path);
    try {
        require_valid_id(d.id);
    } catch (const DomainError& e) {
        throw ParseError(meta_path.string(), 0, e.what());
    }

    fs::path csv_path = meta_path.parent_path() / (stem_before(meta_path, kMetaSuffix) + ".csv");
    CsvReader reader(csv_path, kCouponHeader);
    std::vector<std::string> fields;
    while (reader.next(fields)) {
        double cycle = reader.number(fields[0]);
        double freq = reader.number(fields[1]);
        if (!std::isfinite(cycle) || !std::isfinite(freq)) {
            throw ParseError(reader.file(), reader.line(), "non-finite value");
        }
        if (!d.cycles.empty() && !(cycle > d.cycles.back())) {
            throw ParseError(reader.file(), reader.line(), "cycle count must be strictly increasing");
        }
        d.cycles.push_back(cycle);
        d.frequency_hz.push_back(freq);
    }
    try {
        d.validate();
    } catch (const DomainError& e) {
        throw ParseError(csv_path.string(), 0, e.what());
    }
    return d;
}

void write_truth(const fs::path& dir, const std::string& id, const SyntheticTruth& truth) {
    require_valid_id(id);
    json doc = {
        {"id", id},
        {"crack_initiation_index", truth.crack_initiation_index},
        {"initiation_fraction", truth.initiation_fraction},
        {"reached_runout", truth.reached_runout},
        {"paris_c", truth.true_paris.coeff_c},
        {"paris_m", truth.true_paris.exponent_m},
        {"crack_sizes_mm", truth.crack_sizes},
    };
    write_file_atomic(dir / (id + std::string(kTruthSuffix)), dump(doc));
}

SyntheticTruth read_truth(const fs::path& path) {
    json doc = read_json(path);
    SyntheticTruth t;
    t.crack_initiation_index = json_field<std::size_t>(doc, "crack_initiation_index", path);
    t.initiation_fraction = json_field<double>(doc, "initiation_fraction", path);
    t.reached_runout = json_field<bool>(doc, "reached_runout", path);
    t.true_paris.coeff_c = json_field<double>(doc, "paris_c", path);
    t.true_paris.exponent_m = json_field<double>(doc, "paris_m", path);
    t.crack_sizes = json_field<std::vector<double>>(doc, "crack_sizes_mm", path);
    return t;
}

void write_prepared(const fs::path& dir, const PreparedDataset& data) {
    require_valid_id(data.source_id);
    if (data.cycles_retained.size() != data.features.size()) {
        throw DomainError("prepared dataset " + data.source_id + ": feature and cycle counts differ");
    }
    std::string csv(kPreparedHeader);
    csv += '\n';
    for (std::size_t i = 0; i < data.features.size(); ++i) {
        const auto& r = data.features[i];
        append_row(csv, {data.cycles_retained[i], r[0], r[1], r[2], r[3]});
    }
    json meta = {
        {"source_id", data.source_id},
        {"sigma_w_mpa", data.sigma_w},
        {"delta_k_th", data.delta_k_th},
        {"sqrt_area_um", data.sqrt_area_um},
        {"stress_amplitude_mpa", data.stress_amplitude_mpa},
        {"hardness_hv", data.hardness_hv},
        {"transition_index", data.transition_index},
        {"raw_rows", data.raw_rows},
        {"retained_rows", data.features.size()},
    };
    write_file_atomic(dir / (data.source_id + std::string(kPreparedSuffix)), csv);
    write_file_atomic(dir / (data.source_id + std::string(kPreparedMetaSuffix)), dump(meta));
}

PreparedDataset read_prepared(const fs::path& csv_path) {
    fs::path meta_path = csv_path.parent_path() / (stem_before(csv_path, kPreparedSuffix) + std::string(kPreparedMetaSuffix));
    json meta = read_json(meta_path);
    PreparedDataset d;
    d.source_id = json_field<std::string>(meta, "source_id", meta_path);
    d.sigma_w = json_field<double>(meta, "sigma_w_mpa", meta_path);
    d.delta_k_th = json_field<double>(meta, "delta_k_th", meta_path);
    d.sqrt_area_um = json_field<double>(meta, "sqrt_area_um", meta_path);
    d.stress_amplitude_mpa = json_field<double>(meta, "stress_amplitude_mpa", meta_path);
    d.hardness_hv = json_field<double>(meta, "hardness_hv", meta_path);
    d.transition_index = json_field<std::size_t>(meta, "transition_index", meta_path);
    d.raw_rows = json_field<std::size_t>(meta, "raw_rows", meta_path);
    auto retained = json_field<std::size_t>(meta, "retained_rows", meta_path);

    CsvReader reader(csv_path, kPreparedHeader);
    std::vector<std::string> fields;
    while (reader.next(fields)) {
        d.cycles_retained.push_back(reader.number(fields[0]));
        d.features.push_back({reader.number(fields[1]), reader.number(fields[2]), reader.number(fields[3]),
                              reader.number(fields[4])});
    }
    if (d.features.size() != retained) {
        throw ParseError(csv_path.string(), 0,
                         "expected " + std::to_string(retained) + " rows, got " + std::to_string(d.features.size()));
    }
    if (d.features.size() < 2) {
        throw ParseError(csv_path.string(), 0, "prepared dataset needs at least two rows");
    }
    return d;
}

void write_model(const fs::path& path, const StoredModel& model) {
    model.network.validate();
    json layers = json::array();
    for (const auto& layer : model.network.layers) {
        layers.push_back({
            {"inputs", layer.inputs},
            {"outputs", layer.outputs},
            {"weights", layer.weights},
            {"biases", layer.biases},
        });
    }
    json doc = {
        {"format", "pinnfcg-model"},
        {"layer_sizes", model.network.layer_sizes},
        {"hidden_activation", std::string(to_string(model.network.hidden_activation))},
        {"seed", model.network.seed},
        {"output_scaling",
         {
             {"c_log10_lo", model.scaling.c_log10_lo},
             {"c_log10_hi", model.scaling.c_log10_hi},
             {"m_lo", model.scaling.m_lo},
             {"m_hi", model.scaling.m_hi},
         }},
        {"dataset_ids", model.dataset_ids},
        {"layers", layers},
    };
    write_file_atomic(path, dump(doc));
}

StoredModel read_model(const fs::path& path) {
    json doc = read_json(path);
    if (json_field<std::string>(doc, "format", path) != "pinnfcg-model") {
        throw ParseError(path.string(), 0, "not a model file");
    }
    StoredModel m;
    m.network.layer_sizes = json_field<std::vector<std::size_t>>(doc, "layer_sizes", path);
    m.network.seed = json_field<std::uint64_t>(doc, "seed", path);
    m.dataset_ids = json_field<std::vector<std::string>>(doc, "dataset_ids", path);
    try {
        m.network.hidden_activation = activation_from_string(json_field<std::string>(doc, "hidden_activation", path));
    } catch (const ConfigError& e) {
        throw ParseError(path.string(), 0, e.what());
    }
    json scaling = json_field<json>(doc, "output_scaling", path);
    m.scaling.c_log10_lo = json_field<double>(scaling, "c_log10_lo", path);
    m.scaling.c_log10_hi = json_field<double>(scaling, "c_log10_hi", path);
    m.scaling.m_lo = json_field<double>(scaling, "m_lo", path);
    m.scaling.m_hi = json_field<double>(scaling, "m_hi", path);
    for (const auto& layer : json_field<json>(doc, "layers", path)) {
        DenseLayer l;
        l.inputs = json_field<std::size_t>(layer, "inputs", path);
        l.outputs = json_field<std::size_t>(layer, "outputs", path);
        l.weights = json_field<std::vector<double>>(layer, "weights", path);
        l.biases = json_field<std::vector<double>>(layer, "biases", path);
        m.network.layers.push_back(std::move(l));
    }
    try {
        m.network.validate();
        m.scaling.validate();
    } catch (const std::exception& e) {
        throw ParseError(path.string(), 0, e.what());
    }
    return m;
}

void write_loss_history(const fs::path& path, const std::vector<LossBreakdown>& history) {
    std::string csv(kLossHeader);
    csv += '\n';
    for (std::size_t e = 0; e < history.size(); ++e) {
        const auto& b = history[e];
        csv += std::to_string(e + 1);
        csv += ',';
        append_row(csv, {b.l_ic, b.l_bc, b.l_mon_a, b.l_mon_k, b.l_rss, b.total});
    }
    write_file_atomic(path, csv);
}

std::vector<LossBreakdown> read_loss_history(const fs::path& path) {
    CsvReader reader(path, kLossHeader);
    std::vector<LossBreakdown> out;
    std::vector<std::string> fields;
    while (reader.next(fields)) {
        if (reader.number(fields[0]) != static_cast<double>(out.size() + 1)) {
            throw ParseError(reader.file(), reader.line(), "epochs must count up from 1");
        }
        LossBreakdown b;
        b.l_ic = reader.number(fields[1]);
        b.l_bc = reader.number(fields[2]);
        b.l_mon_a = reader.number(fields[3]);
        b.l_mon_k = reader.number(fields[4]);
        b.l_rss = reader.number(fields[5]);
        b.total = reader.number(fields[6]);
        out.push_back(b);
    }
    return out;
}

void write_prediction(const fs::path& path, const CrackGrowthPrediction& p) {
    std::string csv(kPredictionHeader);
    csv += '\n';
    for (std::size_t i = 0; i < p.size(); ++i) {
        append_row(csv, {p.cycles[i], p.delta_k[i], p.paris_c[i], p.paris_m[i], p.rate[i], p.crack_size[i]});
    }
    write_file_atomic(path, csv);
}

CrackGrowthPrediction read_prediction(const fs::path& path) {
    CsvReader reader(path, kPredictionHeader);
    CrackGrowthPrediction p;
    std::vector<std::string> fields;
    while (reader.next(fields)) {
        p.cycles.push_back(reader.number(fields[0]));
        p.delta_k.push_back(reader.number(fields[1]));
        p.paris_c.push_back(reader.number(fields[2]));
        p.paris_m.push_back(reader.number(fields[3]));
        p.rate.push_back(reader.number(fields[4]));
        p.crack_size.push_back(reader.number(fields[5]));
    }
    return p;
}

void write_fits(const fs::path& path, const std::vector<FitRow>& rows) {
    std::string csv(kFitsHeader);
    csv += '\n';
    for (const auto& r : rows) {
        require_valid_id(r.dataset_id);
        csv += r.dataset_id;
        csv += ',';
        append_row(csv, {r.coeff_c, r.exponent_m, r.r_squared, r.final_crack_mm});
    }
    write_file_atomic(path, csv);
}

std::vector<FitRow> read_fits(const fs::path& path) {
    CsvReader reader(path, kFitsHeader);
    std::vector<FitRow> out;
    std::vector<std::string> fields;
    while (reader.next(fields)) {
        FitRow r;
        r.dataset_id = fields[0];
        try {
            require_valid_id(r.dataset_id);
        } catch (const DomainError& e) {
            throw ParseError(reader.file(), reader.line(), e.what());
        }
        r.coeff_c = reader.number(fields[1]);
        r.exponent_m = reader.number(fields[2]);
        r.r_squared = reader.number(fields[3]);
        r.final_crack_mm = reader.number(fields[4]);
        out.push_back(r);
    }
    return out;
}

std::vector<FitRow> reference_fit_rows() {
    std::vector<FitRow> rows;
    const double nan = std::nan("");
    for (const auto& lit : literature_paris_constants()) {
        rows.push_back({"reference_" + std::string(lit.label), lit.params.coeff_c, lit.params.exponent_m, nan, nan});
    }
    return rows;
}

std::vector<fs::path> list_with_suffix(const fs::path& dir, std::string_view suffix) {
    std::vector<fs::path> out;
    if (!fs::is_directory(dir)) {
        return out;
    }
    for (const auto& entry : fs::directory_iterator(dir)) {
        std::string name = entry.path().filename().string();
        if (entry.is_regular_file() && ends_with(name, suffix) && !ends_with(name, kTruthSuffix)) {
            out.push_back(entry.path());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<fs::path> expand_inputs(const std::vector<std::string>& args, std::string_view suffix) {
    std::vector<fs::path> out;
    std::set<fs::path> seen;
    auto add = [&](const fs::path& p) {
        if (!ends_with(p.filename().string(), kTruthSuffix) && seen.insert(p).second) {
            out.push_back(p);
        }
    };
    for (const auto& arg : args) {
        fs::path p(arg);
        std::string name = p.filename().string();
        if (name.find_first_of("*?[") != std::string::npos) {
            fs::path dir = p.has_parent_path() ? p.parent_path() : fs::path(".");
            for (const auto& match : list_with_suffix(dir, suffix)) {
                if (fnmatch(name.c_str(), match.filename().c_str(), 0) == 0) {
                    add(match);
                }
            }
        } else if (fs::is_directory(p)) {
            for (const auto& match : list_with_suffix(p, suffix)) {
                add(match);
            }
        } else if (fs::is_regular_file(p)) {
            add(p);
        } else {
            throw ParseError(arg, 0, "no such file or directory");
        }
    }
    return out;
}

}  // namespace pinnfcg::app
