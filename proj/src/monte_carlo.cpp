#include "portree/monte_carlo.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "portree/exact_zagreb.hpp"
#include "portree/parallel.hpp"
#include "portree/random.hpp"

namespace portree {

void SimulationConfig::validate() const {
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    if (replicates < 1) throw std::invalid_argument("replicates must be at least 1");
    if (static_cast<std::uint64_t>(n) > kDefaultMaxNodes) throw std::invalid_argument("n exceeds the node budget");
    statistic.validate(static_cast<std::size_t>(n));
}

StatsSummary summarize(std::span<const double> sample, std::size_t kde_grid) {
    StatsSummary s;
    s.moments = describe(sample);
    const bool varies = s.moments.variance > 0.0;
    if (varies && sample.size() >= 8) s.jarque_bera = jarque_bera(sample);
    if (varies && kde_grid >= 2) s.kde = kde(sample, kde_grid);
    return s;
}

double simulate_replicate(const SimulationConfig& config, std::uint64_t replicate) {
    Rng rng = make_stream(config.seed, replicate);
    TreeState tree(config.kernel);
    tree.grow_to(static_cast<std::size_t>(config.n), rng);
    return evaluate(tree, config.statistic);
}

ExperimentResult run_experiment(const SimulationConfig& config) {
    config.validate();
    ExperimentResult result;
    result.config = config;
    result.sample = parallel_map<double>(static_cast<std::size_t>(config.replicates), config.threads,
                                         [&](std::size_t r) { return simulate_replicate(config, r); });
    result.summary = summarize(result.sample, config.kde_grid);
    return result;
}

namespace {

Json moments_json(const Moments& m) {
    Json j;
    j["count"] = m.count;
    j["mean"] = m.mean;
    j["variance"] = m.variance;
    j["standard_error"] = m.standard_error();
    j["skewness"] = m.skewness;
    j["excess_kurtosis"] = m.excess_kurtosis;
    j["min"] = m.min;
    j["max"] = m.max;
    return j;
}

}  // namespace

Json summary_json(const ExperimentResult& result) {
    const auto& c = result.config;
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["n"] = c.n;
    j["replicates"] = c.replicates;
    j["kernel"] = std::string(to_string(c.kernel));
    j["statistic"] = c.statistic.name();
    j["seed"] = c.seed;
    j["moments"] = moments_json(result.summary.moments);
    if (result.summary.jarque_bera) {
        j["normality_test"] = {{"name", "jarque-bera"},
                               {"statistic", result.summary.jarque_bera->statistic},
                               {"pvalue", result.summary.jarque_bera->pvalue},
                               {"note", "moment-based Jarque-Bera test used in place of Shapiro-Wilk"}};
    } else {
        j["normality_test"] = nullptr;
    }
    if (result.summary.kde) {
        j["kde"] = {{"bandwidth", result.summary.kde->bandwidth},
                    {"grid_size", result.summary.kde->grid.size()},
                    {"file", "kde.csv"}};
    } else {
        j["kde"] = nullptr;
    }
    return j;
}

std::string kde_csv(const Kde& kde) {
    std::string out = "x,density\n";
    for (std::size_t i = 0; i < kde.grid.size(); ++i) {
        out += format_double(kde.grid[i]);
        out += ',';
        out += format_double(kde.density[i]);
        out += '\n';
    }
    return out;
}

void write_experiment(const ExperimentResult& result, const std::filesystem::path& dir) {
    write_text_file(dir / "sample.csv", sample_csv(result.sample));
    write_text_file(dir / "summary.json", dump_json(summary_json(result)));
    if (result.summary.kde) write_text_file(dir / "kde.csv", kde_csv(*result.summary.kde));
}

namespace {

TrajectorySummary follow_trajectory(const SimulationConfig& config, std::uint64_t replicate,
                                    std::span<const double> harmonic) {
    Rng rng = make_stream(config.seed, replicate);
    TreeState tree(AttachmentKernel::DegreeProportional);
    tree.reserve(static_cast<std::size_t>(config.n));
    tree.insert_node(rng);  // n = 2, M_2 = 0
    TrajectorySummary t;
    auto z_prev = static_cast<double>(tree.zagreb());
    for (std::int64_t j = 3; j <= config.n; ++j) {
        tree.insert_node(rng);
        const auto z = static_cast<double>(tree.zagreb());
        const auto jj = static_cast<double>(j);
        // M_j - M_{j-1} written out so no large terms cancel
        const double diff = 2.0 * z / (jj - 1.0) - 2.0 * z_prev / (jj - 2.0) - 4.0 / (jj - 1.0);
        const double bound = martingale_diff_bound(j);
        if (std::abs(diff) > bound * (1.0 + 1e-12)) ++t.violations;
        if (std::abs(diff) > t.max_abs_diff) {
            t.max_abs_diff = std::abs(diff);
            t.argmax_j = j;
        }
        z_prev = z;
    }
    const auto n = static_cast<double>(config.n);
    t.final_value = 2.0 * z_prev / (n - 1.0) - 4.0 * harmonic[static_cast<std::size_t>(config.n - 1)];
    return t;
}

}  // namespace

MartingaleReport martingale_diagnostics(const SimulationConfig& config) {
    config.validate();
    if (config.statistic.kind != StatisticKind::Martingale) {
        throw std::invalid_argument("martingale diagnostics need the martingale statistic");
    }
    if (config.kernel != AttachmentKernel::DegreeProportional) {
        throw std::invalid_argument("the martingale is defined under the degree kernel");
    }
    if (config.n < 3) throw std::invalid_argument("martingale diagnostics need n >= 3");

    // harmonic[k] = H_k, k = 0..n-1
    std::vector<double> harmonic(static_cast<std::size_t>(config.n), 0.0);
    double sum = 0.0;
    double carry = 0.0;
    for (std::size_t k = 1; k < harmonic.size(); ++k) {
        const double y = 1.0 / static_cast<double>(k) - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
        harmonic[k] = sum;
    }

    MartingaleReport report;
    report.n = config.n;
    report.replicates = config.replicates;
    report.trajectories = parallel_map<TrajectorySummary>(
        static_cast<std::size_t>(config.replicates), config.threads,
        [&](std::size_t r) { return follow_trajectory(config, r, harmonic); });

    std::vector<double> finals;
    finals.reserve(report.trajectories.size());
    for (const auto& t : report.trajectories) {
        finals.push_back(t.final_value);
        report.max_abs_diff = std::max(report.max_abs_diff, t.max_abs_diff);
        report.total_violations += t.violations;
        if (t.violations > 0) ++report.trajectories_with_violation;
    }
    report.moments = describe(finals);
    const double se = report.moments.standard_error();
    report.mean_over_se = se > 0.0 ? report.moments.mean / se : 0.0;
    report.limit_second_moment = kMartingaleSecondMomentLimit;
    const double nm1 = static_cast<double>(config.n - 1);
    report.exact_second_moment = 4.0 * zagreb_series(config.n).back().var_z / (nm1 * nm1);
    return report;
}

Json martingale_json(const MartingaleReport& report) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["n"] = report.n;
    j["replicates"] = report.replicates;
    j["moments"] = moments_json(report.moments);
    j["mean_over_se"] = report.mean_over_se;
    j["limit_second_moment"] = report.limit_second_moment;
    j["exact_second_moment"] = report.exact_second_moment;
    j["max_abs_diff"] = report.max_abs_diff;
    j["total_violations"] = report.total_violations;
    j["trajectories_with_violation"] = report.trajectories_with_violation;
    Json per = Json::array();
    for (const auto& t : report.trajectories) {
        per.push_back({{"final_value", t.final_value},
                       {"max_abs_diff", t.max_abs_diff},
                       {"argmax_j", t.argmax_j},
                       {"violations", t.violations}});
    }
    j["trajectories"] = std::move(per);
    return j;
}

}  // namespace portree
