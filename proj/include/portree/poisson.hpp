#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "portree/random.hpp"
#include "portree/stats.hpp"
#include "portree/tree.hpp"

// Continuous-time embedding: every gap carries an independent unit-rate
// exponential clock. W(t) counts the gaps of a focal node j (its white balls),
// B(t) all other gaps. A white ring adds one white and one blue gap; a blue
// ring adds two blue gaps, so W alone is a Yule process started at 1.

namespace portree {

struct PoissonUrnState {
    double t0 = 0.0;
    double t = 0.0;
    std::int64_t white = 1;
    std::int64_t blue = 0;
};

/// E[e^{uW}] at elapsed time dt: e^{u-dt} / (1 - (1 - e^{-dt}) e^u).
/// Throws std::domain_error for dt < 0 or u >= -ln(1 - e^{-dt}).
[[nodiscard]] double mgf_W(double u, double dt);

struct WMoments {
    double mean;
    double second_moment;
    double variance;
};

/// (e^{dt}, 2e^{2dt} - e^{dt}, e^{2dt} - e^{dt}); throws std::domain_error for dt < 0.
[[nodiscard]] WMoments moments_W(double dt);

/// P(W = k) = p(1 - p)^{k-1} with p = e^{-dt}, k >= 1.
[[nodiscard]] double geometric_pmf_W(double dt, std::int64_t k);

/// Pearson test of a W sample against Geometric(e^{-dt}) over the cells
/// 1..cells plus a tail cell; neighbouring cells are pooled until each
/// expects at least 5 observations. Requires dt > 0.
[[nodiscard]] ChiSquare geometric_goodness_of_fit(std::span<const double> sample, double dt, int cells = 30);

/// W at elapsed time dt, simulated ring by ring from W = 1.
[[nodiscard]] std::int64_t simulate_yule(double dt, Rng& rng);

inline constexpr std::int64_t kDefaultEventCap = 10'000'000;

struct PoissonEvent {
    double time;
    Label parent;  ///< node whose gap rang
};

struct PoissonTreeRun {
    std::int64_t j = 2;
    double horizon = 0.0;
    PoissonUrnState state;
    std::int64_t events = 0;
    std::int64_t total_gaps = 0;          ///< 2(j + events) - 1
    std::int64_t initial_blue = 0;        ///< 2j - 2: gaps of the other j - 1 nodes
    std::int64_t alternate_initial_blue = 0;  ///< 2j - 3, recorded only
    std::vector<double> white_times;      ///< times at which W increased
    std::vector<PoissonEvent> log;        ///< every event, when requested
};

/**
 * @brief Full event-clock simulation of the whole tree.
 *
 * The tree is first grown in discrete time (gap kernel) to j nodes, which sets
 * t0 = 0. Events then arrive after Exp(total gaps) waits and the ringing gap
 * is uniform among all gaps, until @p horizon. Throws std::invalid_argument
 * for j < 2 or horizon < 0, std::length_error past @p event_cap events.
 */
[[nodiscard]] PoissonTreeRun simulate_poissonized_tree(std::int64_t j, double horizon, Rng& rng,
                                                       std::int64_t event_cap = kDefaultEventCap,
                                                       bool keep_log = false);

/// sup_x |P(pW <= x) - (1 - e^{-x})| for W ~ Geometric(p): the smallest KS
/// distance any exact sample of W e^{-dt} can show against Exp(1).
[[nodiscard]] double geometric_ks_floor(double p);

struct ScaledLimitResult {
    double dt = 0.0;
    std::int64_t replicates = 0;
    double distance = 0.0;
    double floor = 0.0;
    double threshold = 0.0;  ///< 1.5 (floor + 1.63/√reps)
    double mean = 0.0;       ///< of W e^{-dt}
    double standard_error = 0.0;
    bool pass = false;
};

/// KS test of W/e^{dt} against the unit exponential. Requires e^{-dt} < 0.05
/// (std::domain_error) and reps >= 10^4 (std::invalid_argument).
[[nodiscard]] ScaledLimitResult scaled_limit_test(double dt, std::int64_t reps, Rng& rng);

/// Replicate r of each sampler draws from make_stream(seed, r).
[[nodiscard]] std::vector<double> yule_sample(double dt, std::int64_t reps, std::uint64_t seed, unsigned threads = 0);
[[nodiscard]] std::vector<double> poissonized_tree_sample(std::int64_t j, double dt, std::int64_t reps,
                                                          std::uint64_t seed, unsigned threads = 0);

}  // namespace portree
