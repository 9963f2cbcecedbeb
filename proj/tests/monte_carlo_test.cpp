#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <stdexcept>

#include "portree/exact_zagreb.hpp"
#include "portree/monte_carlo.hpp"
#include "portree/oracle.hpp"

using namespace portree;

namespace {

SimulationConfig config(std::int64_t n, std::int64_t reps, AttachmentKernel kernel, Statistic stat,
                        std::uint64_t seed) {
    SimulationConfig c;
    c.n = n;
    c.replicates = reps;
    c.kernel = kernel;
    c.statistic = stat;
    c.seed = seed;
    c.threads = 1;
    return c;
}

}  // namespace

TEST_CASE("degree of node 2 at n = 3 under the gap kernel") {
    const auto r = run_experiment(
        config(3, 100'000, AttachmentKernel::GapOriented, Statistic::degree_of(2), 17));
    const auto& m = r.summary.moments;
    CHECK(std::abs(m.mean - 4.0 / 3.0) < 4.0 * m.standard_error());
}

TEST_CASE("Zagreb index at n = 4 under the degree kernel") {
    const auto r = run_experiment(
        config(4, 100'000, AttachmentKernel::DegreeProportional, Statistic::of(StatisticKind::Zagreb), 18));
    const auto& m = r.summary.moments;
    CHECK(std::abs(m.mean - 11.0) < 4.0 * m.standard_error());
    CHECK(m.min == 10.0);
    CHECK(m.max == 12.0);
}

TEST_CASE("sample means agree with the oracle across seeds") {
    const auto exact = enumerate(8, AttachmentKernel::DegreeProportional, Statistic::of(StatisticKind::Zagreb));
    const double target = to_double(oracle_moment(exact, 1));
    int within = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto r = run_experiment(
            config(8, 2000, AttachmentKernel::DegreeProportional, Statistic::of(StatisticKind::Zagreb), seed));
        if (std::abs(r.summary.moments.mean - target) < 4.0 * r.summary.moments.standard_error()) ++within;
    }
    CHECK(within >= 99);
}

TEST_CASE("results do not depend on the thread count") {
    auto c = config(200, 64, AttachmentKernel::GapOriented, Statistic::of(StatisticKind::RootDegree), 5);
    const auto one = run_experiment(c);
    c.threads = 4;
    const auto four = run_experiment(c);
    CHECK(one.sample == four.sample);
    CHECK(simulate_replicate(c, 10) == one.sample[10]);
}

TEST_CASE("written experiments are byte-identical across runs") {
    const auto dir = std::filesystem::temp_directory_path() / "portree_mc_test";
    std::filesystem::remove_all(dir);
    const auto c = config(50, 300, AttachmentKernel::DegreeProportional, Statistic::of(StatisticKind::Zagreb), 77);
    write_experiment(run_experiment(c), dir / "a");
    write_experiment(run_experiment(c), dir / "b");
    for (const char* f : {"sample.csv", "summary.json", "kde.csv"}) {
        CHECK(read_text_file(dir / "a" / f) == read_text_file(dir / "b" / f));
    }
    const auto summary = Json::parse(read_text_file(dir / "a" / "summary.json"));
    CHECK(summary.at("schema_version") == kSchemaVersion);
    CHECK(summary.dump().find("Jarque-Bera") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("Zagreb density at large n peaks left of the mean") {
    auto c = config(20'000, 2000, AttachmentKernel::DegreeProportional, Statistic::of(StatisticKind::Zagreb), 3);
    c.threads = 0;
    const auto r = run_experiment(c);
    REQUIRE(r.summary.kde.has_value());
    const auto& k = *r.summary.kde;
    std::size_t mode = 0;
    for (std::size_t i = 1; i < k.density.size(); ++i) {
        if (k.density[i] > k.density[mode]) mode = i;
    }
    CHECK(k.grid[mode] < r.summary.moments.mean);
}

TEST_CASE("martingale diagnostics") {
    auto c = config(2000, 200, AttachmentKernel::DegreeProportional, Statistic::of(StatisticKind::Martingale), 11);
    const auto rep = martingale_diagnostics(c);
    CHECK(rep.replicates == 200);
    CHECK(std::abs(rep.mean_over_se) < 4.0);
    CHECK(rep.total_violations == 0);
    CHECK(rep.trajectories.size() == 200);
    CHECK(rep.limit_second_moment == doctest::Approx(kMartingaleSecondMomentLimit));
    // each final value matches a fresh simulation of the same stream
    CHECK(rep.trajectories[7].final_value == doctest::Approx(simulate_replicate(c, 7)).epsilon(1e-12));

    c.statistic = Statistic::of(StatisticKind::Zagreb);
    CHECK_THROWS_AS((void)martingale_diagnostics(c), std::invalid_argument);
    c.statistic = Statistic::of(StatisticKind::Martingale);
    c.kernel = AttachmentKernel::GapOriented;
    CHECK_THROWS_AS((void)martingale_diagnostics(c), std::invalid_argument);
}

TEST_CASE("configuration checks") {
    auto c = config(5, 10, AttachmentKernel::GapOriented, Statistic::degree_of(6), 1);
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.statistic = Statistic::of(StatisticKind::Zagreb);
    c.replicates = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.replicates = 10;
    c.n = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}
