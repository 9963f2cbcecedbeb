#include "portree/output.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace portree {

std::string format_double(double x) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf.data(), ptr);
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) throw std::runtime_error("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.close();
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string sample_csv(std::span<const double> values) {
    std::string out;
    out.reserve(values.size() * 12);
    for (const double v : values) {
        out += format_double(v);
        out += '\n';
    }
    return out;
}

std::string dump_json(const Json& value) { return value.dump(2) + "\n"; }

Json RunManifest::to_json() const {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["tool"] = "portree";
    j["version"] = kToolVersion;
    j["subcommand"] = subcommand;
    j["argv"] = argv;
    j["resolved_args"] = resolved_args;
    j["options"] = options;
    if (has_seed) {
        j["seed"] = seed;
    } else {
        j["seed"] = nullptr;
    }
    return j;
}

RunManifest RunManifest::from_json(const Json& j) {
    if (!j.contains("schema_version") || j.at("schema_version").get<int>() != kSchemaVersion) {
        throw std::invalid_argument("run manifest: unsupported schema_version");
    }
    RunManifest m;
    m.subcommand = j.at("subcommand").get<std::string>();
    m.argv = j.at("argv").get<std::vector<std::string>>();
    m.resolved_args = j.at("resolved_args").get<std::vector<std::string>>();
    m.options = j.value("options", Json::object());
    if (j.contains("seed") && !j.at("seed").is_null()) {
        m.seed = j.at("seed").get<std::uint64_t>();
        m.has_seed = true;
    }
    return m;
}

void write_manifest(const std::filesystem::path& dir, const RunManifest& manifest) {
    write_text_file(dir / "run-manifest.json", dump_json(manifest.to_json()));
}

}  // namespace portree
