#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace portree {

struct VerifyOptions {
    std::int64_t n_max = 8;           ///< oracle / moment suites (capped at 9)
    std::int64_t route_n_max = 30;    ///< exact route equivalence
    std::int64_t normalization_n_max = 500;
    std::uint64_t seed = 20240601;
};

struct SuiteReport {
    std::string name;
    std::int64_t passed = 0;
    std::int64_t failed = 0;
    std::vector<std::string> failures;  ///< first few failure descriptions

    void check(bool ok, const std::string& what);
    [[nodiscard]] bool ok() const { return failed == 0; }
};

/// oracle, routes, normalization, moments, zagreb, martingale, tree.
[[nodiscard]] const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown suite.
[[nodiscard]] SuiteReport run_suite(std::string_view name, const VerifyOptions& options);

}  // namespace portree
