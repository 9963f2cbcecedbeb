#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace portree {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr std::string_view kToolVersion = "0.1.0";

/// Shortest decimal text that reads back as the same double.
[[nodiscard]] std::string format_double(double x);

/// Writes @p text to @p path, creating parent directories. Throws
/// std::runtime_error on I/O failure.
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// Reads a whole file; throws std::runtime_error when it cannot be opened.
[[nodiscard]] std::string read_text_file(const std::filesystem::path& path);

/// One value per line, no header.
[[nodiscard]] std::string sample_csv(std::span<const double> values);

/// Pretty-printed JSON with a trailing newline.
[[nodiscard]] std::string dump_json(const Json& value);

/**
 * @brief Everything needed to rerun a command and get the same bytes.
 *
 * resolved_args is the subcommand followed by every option that was set,
 * by flag, config file or default, excluding the output location.
 */
struct RunManifest {
    std::string subcommand;
    std::vector<std::string> argv;
    std::vector<std::string> resolved_args;
    Json options = Json::object();
    std::uint64_t seed = 0;
    bool has_seed = false;

    [[nodiscard]] Json to_json() const;
    static RunManifest from_json(const Json& j);
};

/// Writes run-manifest.json into @p dir.
void write_manifest(const std::filesystem::path& dir, const RunManifest& manifest);

}  // namespace portree
