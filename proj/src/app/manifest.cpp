#include "pinnfcg/app/manifest.hpp"

#include "pinnfcg/app/formats.hpp"
#include "pinnfcg/errors.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <array>
#include <chrono>
#include <ctime>
#include <memory>

namespace pinnfcg::app {

using nlohmann::json;

std::string sha256_hex(std::string_view bytes) {
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1) {
        throw std::runtime_error("sha256 failed");
    }
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xf];
    }
    return out;
}

std::string sha256_file(const std::filesystem::path& path) { return sha256_hex(read_file(path)); }

std::vector<InputFile> hash_inputs(const std::vector<std::filesystem::path>& paths) {
    std::vector<InputFile> out;
    for (const auto& p : paths) {
        out.push_back({p.generic_string(), sha256_file(p)});
    }
    return out;
}

std::string utc_timestamp() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::array<char, 32> buf{};
    std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf.data();
}

std::string manifest_to_json(const RunManifest& m) {
    json inputs = json::array();
    for (const auto& in : m.inputs) {
        inputs.push_back({{"path", in.path}, {"sha256", in.sha256}});
    }
    json doc = {
        {"tool_version", m.tool_version},
        {"command", m.command},
        {"seed", m.seed},
        {"options", m.options},
        {"config", json::parse(config_to_json(m.config))},
        {"inputs", inputs},
        {"started_utc", m.started_utc},
        {"finished_utc", m.finished_utc},
    };
    return doc.dump(2) + "\n";
}

RunManifest parse_manifest(const std::string& text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(origin, 0, e.what());
    }
    RunManifest m;
    try {
        m.tool_version = doc.at("tool_version").get<std::string>();
        m.command = doc.at("command").get<std::string>();
        m.seed = doc.at("seed").get<std::uint64_t>();
        m.options = doc.at("options").get<std::map<std::string, std::string>>();
        for (const auto& in : doc.at("inputs")) {
            m.inputs.push_back({in.at("path").get<std::string>(), in.at("sha256").get<std::string>()});
        }
        m.started_utc = doc.value("started_utc", "");
        m.finished_utc = doc.value("finished_utc", "");
    } catch (const json::exception& e) {
        throw ParseError(origin, 0, e.what());
    }
    if (!doc.contains("config")) {
        throw ParseError(origin, 0, "missing config snapshot");
    }
    m.config = parse_config(doc.at("config").dump(), origin + " (config)");
    return m;
}

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest) {
    write_file_atomic(path, manifest_to_json(manifest));
}

RunManifest read_manifest(const std::filesystem::path& path) { return parse_manifest(read_file(path), path.string()); }

void verify_inputs(const RunManifest& manifest) {
    for (const auto& in : manifest.inputs) {
        if (!std::filesystem::is_regular_file(in.path)) {
            throw ParseError(in.path, 0, "input listed in manifest is missing");
        }
        if (sha256_file(in.path) != in.sha256) {
            throw ParseError(in.path, 0, "content hash differs from manifest");
        }
    }
}

}  // namespace pinnfcg::app
