#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "portree/random.hpp"
#include "portree/statistic.hpp"
#include "portree/tree.hpp"

using namespace portree;

TEST_CASE("initial states of the two kernels") {
    const TreeState gap(AttachmentKernel::GapOriented);
    CHECK(gap.size() == 1);
    CHECK(gap.degree(1) == 0);
    CHECK(gap.parent(1) == 0);
    CHECK(gap.weight_bag().size() == 1);
    CHECK(gap.gaps(1) == 1);
    const TreeState deg(AttachmentKernel::DegreeProportional);
    CHECK(deg.weight_bag().empty());
    CHECK(deg.zagreb() == 0);
}

TEST_CASE("attach maintains degrees and index sums") {
    TreeState t(AttachmentKernel::GapOriented);
    t.attach(1);  // 1-2
    t.attach(2);  // 2-3
    t.attach(1);  // 1-4
    CHECK(t.size() == 4);
    CHECK(t.degree(1) == 2);
    CHECK(t.degree(2) == 2);
    CHECK(t.degree(3) == 1);
    CHECK(t.parent(4) == 1);
    CHECK(t.zagreb() == 4 + 4 + 1 + 1);
    CHECK(t.cubic() == 8 + 8 + 1 + 1);
    CHECK(t.gaps(1) == 3);
    CHECK(t.gaps(2) == 2);
    CHECK(t.weight_bag().size() == 7);
    CHECK_FALSE(check_invariants(t).has_value());
    CHECK_THROWS_AS(t.attach(0), std::out_of_range);
    CHECK_THROWS_AS(t.attach(9), std::out_of_range);
}

TEST_CASE("the first degree-kernel insertion is forced") {
    Rng rng = make_stream(1, 0);
    TreeState t(AttachmentKernel::DegreeProportional);
    CHECK(t.insert_node(rng) == 1);
    CHECK(t.zagreb() == 2);
    CHECK(t.weight_bag().size() == 2);
}

TEST_CASE("random growth keeps every invariant") {
    for (const auto kernel : {AttachmentKernel::GapOriented, AttachmentKernel::DegreeProportional}) {
        for (std::uint64_t s = 0; s < 10; ++s) {
            Rng rng = make_stream(42, s);
            TreeState t(kernel);
            for (const std::size_t n : {2UL, 5UL, 50UL, 3000UL}) {
                t.grow_to(n, rng);
                REQUIRE(t.size() == n);
                const auto problem = check_invariants(t);
                CHECK_MESSAGE(!problem.has_value(), problem.value_or(""));
                const std::size_t expected_bag = kernel == AttachmentKernel::GapOriented ? 2 * n - 1 : 2 * (n - 1);
                CHECK(t.weight_bag().size() == expected_bag);
            }
        }
    }
}

TEST_CASE("node budget and argument checks") {
    Rng rng = make_stream(3, 0);
    TreeState t(AttachmentKernel::GapOriented, 10);
    CHECK_THROWS_AS(t.grow_to(11, rng), std::length_error);
    t.grow_to(10, rng);
    CHECK_THROWS_AS(t.insert_node(rng), std::length_error);
    CHECK_THROWS_AS(t.grow_to(5, rng), std::invalid_argument);
}

TEST_CASE("parent choice follows the kernel weights") {
    // degrees: 1 -> 3, 2 -> 2, 3..5 -> 1 (root 1 has children 2, 4, 5; node 2 has child 3)
    TreeState base(AttachmentKernel::GapOriented);
    base.attach(1);
    base.attach(2);
    base.attach(1);
    base.attach(1);
    for (const auto kernel : {AttachmentKernel::GapOriented, AttachmentKernel::DegreeProportional}) {
        TreeState shaped(kernel);
        shaped.attach(1);
        shaped.attach(2);
        shaped.attach(1);
        shaped.attach(1);
        // expected weights: gap kernel uses gaps (root degree + 1), degree kernel uses degree
        std::map<Label, double> weight;
        double total = 0.0;
        for (Label v = 1; v <= 5; ++v) {
            weight[v] = kernel == AttachmentKernel::GapOriented ? shaped.gaps(v) : shaped.degree(v);
            total += weight[v];
        }
        std::map<Label, int> hits;
        Rng rng = make_stream(99, static_cast<std::uint64_t>(kernel));
        constexpr int draws = 200000;
        for (int i = 0; i < draws; ++i) {
            TreeState copy = shaped;
            hits[copy.insert_node(rng)] += 1;
        }
        double chi2 = 0.0;
        for (Label v = 1; v <= 5; ++v) {
            const double e = draws * weight[v] / total;
            chi2 += (hits[v] - e) * (hits[v] - e) / e;
        }
        CHECK(chi2 < 18.47);  // chi-square(4) upper 0.001 point
    }
}

TEST_CASE("csv export") {
    TreeState t(AttachmentKernel::GapOriented);
    t.attach(1);
    t.attach(1);
    std::ostringstream out;
    t.write_csv(out);
    CHECK(out.str() == "label,parent,degree\n1,0,2\n2,1,1\n3,1,1\n");
}

TEST_CASE("kernel and statistic parsing") {
    CHECK(parse_kernel("gap") == AttachmentKernel::GapOriented);
    CHECK(parse_kernel("degree") == AttachmentKernel::DegreeProportional);
    CHECK(to_string(AttachmentKernel::DegreeProportional) == "degree");
    CHECK_THROWS_AS((void)parse_kernel("uniform"), std::invalid_argument);

    CHECK(Statistic::parse("degree:7") == Statistic::degree_of(7));
    CHECK(Statistic::parse("root-degree").kind == StatisticKind::RootDegree);
    CHECK(Statistic::parse("zagreb2").name() == "zagreb2");
    CHECK_THROWS_AS((void)Statistic::parse("degree:"), std::invalid_argument);
    CHECK_THROWS_AS((void)Statistic::parse("degree:0"), std::invalid_argument);
    CHECK_THROWS_AS((void)Statistic::parse("degree:3x"), std::invalid_argument);
    CHECK_THROWS_AS(Statistic::degree_of(5).validate(4), std::invalid_argument);
    CHECK_THROWS_AS(Statistic::of(StatisticKind::Martingale).validate(1), std::invalid_argument);
}

TEST_CASE("statistic evaluation") {
    TreeState t(AttachmentKernel::DegreeProportional);
    t.attach(1);
    t.attach(2);
    t.attach(2);  // degrees 1, 3, 1, 1
    CHECK(evaluate(t, Statistic::of(StatisticKind::Zagreb)) == 12.0);
    CHECK(evaluate(t, Statistic::of(StatisticKind::Cubic)) == 30.0);
    CHECK(evaluate(t, Statistic::of(StatisticKind::ZagrebSquared)) == 144.0);
    CHECK(evaluate(t, Statistic::of(StatisticKind::RootDegree)) == 1.0);
    CHECK(evaluate(t, Statistic::degree_of(2)) == 3.0);
    // M_4 = 2·12/3 - 4·(1 + 1/2 + 1/3)
    CHECK(evaluate(t, Statistic::of(StatisticKind::Martingale)) == doctest::Approx(8.0 - 22.0 / 3.0));
}

TEST_CASE("random streams") {
    Rng a = make_stream(5, 0);
    Rng b = make_stream(5, 0);
    Rng c = make_stream(5, 1);
    Rng d = make_stream(6, 0);
    const auto x = a();
    CHECK(x == b());
    CHECK(x != c());
    CHECK(x != d());

    Rng rng = make_stream(11, 0);
    std::vector<int> counts(7, 0);
    constexpr int draws = 70000;
    for (int i = 0; i < draws; ++i) {
        const auto u = uniform_below(rng, 7);
        REQUIRE(u < 7);
        counts[u] += 1;
    }
    double chi2 = 0.0;
    for (const int k : counts) chi2 += (k - 10000.0) * (k - 10000.0) / 10000.0;
    CHECK(chi2 < 22.46);  // chi-square(6) upper 0.001 point

    double sum = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double e = exponential(rng, 2.0);
        REQUIRE(e >= 0.0);
        sum += e;
    }
    CHECK(std::abs(sum / 100000 - 0.5) < 4 * 0.5 / std::sqrt(100000.0));
    for (int i = 0; i < 1000; ++i) {
        const double u = uniform01(rng);
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
    }
}
