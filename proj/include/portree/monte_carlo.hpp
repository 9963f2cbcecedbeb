#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "portree/output.hpp"
#include "portree/statistic.hpp"
#include "portree/stats.hpp"
#include "portree/tree.hpp"

namespace portree {

struct SimulationConfig {
    std::int64_t n = 2;
    std::int64_t replicates = 1;
    AttachmentKernel kernel = AttachmentKernel::DegreeProportional;
    std::uint64_t seed = 0;
    Statistic statistic = Statistic::of(StatisticKind::Zagreb);
    unsigned threads = 0;         ///< 0 uses every hardware thread; results do not depend on it
    std::size_t kde_grid = 512;   ///< 0 disables the density estimate

    /// Throws std::invalid_argument when the configuration cannot run.
    void validate() const;
};

struct StatsSummary {
    Moments moments;
    std::optional<JarqueBera> jarque_bera;  ///< absent for fewer than 8 values or a constant sample
    std::optional<Kde> kde;                 ///< absent when disabled or the sample is constant
};

/// Summary of an already-collected sample.
[[nodiscard]] StatsSummary summarize(std::span<const double> sample, std::size_t kde_grid);

struct ExperimentResult {
    SimulationConfig config;
    std::vector<double> sample;  ///< ordered by replicate index
    StatsSummary summary;
};

/// The statistic on one tree grown to config.n from stream (seed, replicate).
[[nodiscard]] double simulate_replicate(const SimulationConfig& config, std::uint64_t replicate);

/**
 * @brief Grows config.replicates independent trees and records the statistic.
 *
 * Replicate r draws from make_stream(seed, r), so the sample is identical for
 * every thread count.
 */
[[nodiscard]] ExperimentResult run_experiment(const SimulationConfig& config);

/// summary.json contents.
[[nodiscard]] Json summary_json(const ExperimentResult& result);

/// "x,density" rows with a header.
[[nodiscard]] std::string kde_csv(const Kde& kde);

/// Writes sample.csv, summary.json and (when present) kde.csv into @p dir.
void write_experiment(const ExperimentResult& result, const std::filesystem::path& dir);

struct TrajectorySummary {
    double final_value = 0.0;      ///< M_n
    double max_abs_diff = 0.0;     ///< max_j |M_j - M_{j-1}| over 3 <= j <= n
    std::int64_t argmax_j = 0;
    std::int64_t violations = 0;   ///< steps with |M_j - M_{j-1}| above the bound
};

struct MartingaleReport {
    std::int64_t n = 0;
    std::int64_t replicates = 0;
    Moments moments;                    ///< of M_n across trajectories
    double mean_over_se = 0.0;          ///< sample mean / standard error
    double limit_second_moment = 0.0;   ///< 64 - 8π²/3
    double exact_second_moment = 0.0;   ///< E[M_n²] = 4 Var[Z_n]/(n-1)² at this n
    double max_abs_diff = 0.0;          ///< over all trajectories
    std::int64_t total_violations = 0;
    std::int64_t trajectories_with_violation = 0;
    std::vector<TrajectorySummary> trajectories;
};

/**
 * @brief Follows M_j = 2Z_j/(j-1) - 4H_{j-1} along each trajectory up to n.
 *
 * Requires the Martingale statistic, the DegreeProportional kernel and n >= 3.
 * Only per-trajectory summaries are kept, not whole paths.
 */
[[nodiscard]] MartingaleReport martingale_diagnostics(const SimulationConfig& config);

[[nodiscard]] Json martingale_json(const MartingaleReport& report);

}  // namespace portree
