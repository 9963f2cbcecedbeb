#include "portree/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "portree/exact_degree.hpp"
#include "portree/exact_zagreb.hpp"
#include "portree/monte_carlo.hpp"
#include "portree/oracle.hpp"
#include "portree/random.hpp"
#include "portree/tree.hpp"

namespace portree {

void SuiteReport::check(bool ok, const std::string& what) {
    if (ok) {
        ++passed;
        return;
    }
    ++failed;
    if (failures.size() < 20) failures.push_back(what);
}

namespace {

std::string tag(std::int64_t n, std::int64_t j) { return "n=" + std::to_string(n) + " j=" + std::to_string(j); }

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

// The oracle's law of D(n, j) as a degree table starting at the law's min degree.
bool oracle_matches_law(const ExactDist& dist, const ExactDegreeLaw& law) {
    if (dist.outcomes.size() != law.probs.size()) return false;
    for (const auto& [value, p] : dist.outcomes) {
        if (value.get_den() != 1) return false;
        if (law.at(value.get_num().get_si()) != p) return false;
    }
    return true;
}

SuiteReport oracle_suite(const VerifyOptions& o) {
    SuiteReport r;
    r.name = "oracle";
    const std::int64_t n_max = std::min(o.n_max, kOracleMaxN);
    for (std::int64_t n = 2; n <= n_max; ++n) {
        for (const auto kernel : {AttachmentKernel::GapOriented, AttachmentKernel::DegreeProportional}) {
            const ExactDist z = enumerate(n, kernel, Statistic::of(StatisticKind::Zagreb));
            r.check(z.total() == 1, "probabilities sum to 1, " + tag(n, 0));
            r.check(z.history_count == expected_history_count(n, kernel), "history count, n=" + std::to_string(n));
        }
        for (std::int64_t j = 1; j <= n; ++j) {
            const ExactDist d = enumerate(n, AttachmentKernel::GapOriented, Statistic::degree_of(static_cast<Label>(j)));
            r.check(oracle_matches_law(d, degree_pmf_recurrence_exact(n, j)), "oracle vs recurrence, " + tag(n, j));
        }
        const ExactDist z = enumerate(n, AttachmentKernel::DegreeProportional, Statistic::of(StatisticKind::Zagreb));
        const ExactDist y = enumerate(n, AttachmentKernel::DegreeProportional, Statistic::of(StatisticKind::Cubic));
        const ExactZagrebRow row = zagreb_series_exact(n).back();
        r.check(oracle_moment(z, 1) == row.mean_z, "E[Z] vs recurrence, n=" + std::to_string(n));
        r.check(oracle_moment(z, 2) == row.second_z, "E[Z^2] vs recurrence, n=" + std::to_string(n));
        r.check(oracle_moment(y, 1) == row.mean_y, "E[Y] vs recurrence, n=" + std::to_string(n));
        r.check(oracle_moment(z, 1) == zagreb_mean(n), "E[Z] vs closed form, n=" + std::to_string(n));
    }
    return r;
}

SuiteReport routes_suite(const VerifyOptions& o) {
    SuiteReport r;
    r.name = "routes";
    for (std::int64_t n = 2; n <= o.route_n_max; ++n) {
        for (std::int64_t j = 2; j <= n; ++j) {
            const ExactDegreeLaw rec = degree_pmf_recurrence_exact(n, j);
            bool closed_ok = true;
            bool hyper_ok = true;
            for (std::int64_t d = rec.min_degree; d <= rec.max_degree(); ++d) {
                closed_ok = closed_ok && degree_pmf_closed_exact({n, j, d}) == rec.at(d);
                hyper_ok = hyper_ok && degree_pmf_hypergeom_exact({n, j, d}) == rec.at(d);
            }
            r.check(closed_ok, "alternating sum vs recurrence, " + tag(n, j));
            r.check(hyper_ok, "hypergeometric vs recurrence, " + tag(n, j));
        }
        const ExactDegreeLaw root = degree_pmf_recurrence_exact(n, 1);
        bool root_ok = true;
        for (std::int64_t d = 1; d <= n - 1; ++d) {
            root_ok = root_ok && root_pmf_exact(n, d) == root.at(d) && root_pmf_substituted(n, d) == root.at(d);
        }
        r.check(root_ok, "root closed form vs recurrence, n=" + std::to_string(n));
    }
    // floating routes inside their validity range
    for (std::int64_t n = 2; n <= std::min<std::int64_t>(o.route_n_max, 12); ++n) {
        for (std::int64_t j = 2; j <= n; ++j) {
            const DegreeLaw rec = degree_pmf_recurrence(n, j);
            bool ok = true;
            for (std::int64_t d = rec.min_degree; d <= rec.max_degree(); ++d) {
                ok = ok && close(degree_pmf_closed({n, j, d}), rec.at(d), 1e-9) &&
                     close(degree_pmf_hypergeom({n, j, d}), rec.at(d), 1e-9);
            }
            r.check(ok, "floating routes within 1e-9, " + tag(n, j));
        }
    }
    return r;
}

SuiteReport normalization_suite(const VerifyOptions& o) {
    SuiteReport r;
    r.name = "normalization";
    const std::int64_t n_max = o.normalization_n_max;
    for (std::int64_t n = 1; n <= n_max; n = (n < 40 ? n + 1 : n + 23)) {
        for (std::int64_t j = 1; j <= n; ++j) {
            const DegreeLaw law = degree_pmf_recurrence(n, j);
            r.check(std::abs(law.total() - 1.0) <= 1e-10, "recurrence law sums to 1, " + tag(n, j));
        }
        if (n >= 2) {
            const DegreeLaw root = degree_law(n, 1, PmfMethod::ClosedForm);
            r.check(std::abs(root.total() - 1.0) <= 1e-10, "root closed form sums to 1, n=" + std::to_string(n));
        }
    }
    {
        const DegreeLaw law = degree_pmf_recurrence(n_max, 1);
        r.check(std::abs(law.total() - 1.0) <= 1e-10, "recurrence law sums to 1 at n_max");
    }
    return r;
}

SuiteReport moments_suite(const VerifyOptions& o) {
    SuiteReport r;
    r.name = "moments";
    const std::int64_t n_max = std::min(o.n_max, kOracleMaxN);
    for (std::int64_t n = 2; n <= n_max; ++n) {
        for (std::int64_t j = 1; j <= n; ++j) {
            const ExactDist d = enumerate(n, AttachmentKernel::GapOriented, Statistic::degree_of(static_cast<Label>(j)));
            const Rational mean = oracle_moment(d, 1);
            const Rational var = oracle_moment(d, 2) - mean * mean;
            r.check(close(degree_mean(n, j), mean.get_d(), 1e-10), "mean vs oracle, " + tag(n, j));
            r.check(close(degree_variance(n, j), var.get_d(), 1e-10), "variance vs oracle, " + tag(n, j));
        }
    }
    for (std::int64_t n = 2; n <= 200; n += 7) {
        for (std::int64_t j = 1; j <= n; j += 3) {
            const DegreeLaw law = degree_pmf_recurrence(n, j);
            r.check(close(degree_mean(n, j), law.mean(), 1e-9), "mean vs recurrence law, " + tag(n, j));
            r.check(close(degree_variance(n, j), law.variance(), 1e-8), "variance vs recurrence law, " + tag(n, j));
        }
    }
    return r;
}

SuiteReport zagreb_suite(const VerifyOptions& o) {
    SuiteReport r;
    r.name = "zagreb";
    const auto rows = zagreb_series_exact(std::max<std::int64_t>(200, o.n_max));
    const auto floating = zagreb_series(static_cast<std::int64_t>(rows.size()));
    for (const auto& row : rows) {
        const std::string n = "n=" + std::to_string(row.n);
        r.check(row.mean_z == zagreb_mean(row.n), "E[Z] recurrence vs closed form, " + n);
        r.check(close(cubic_mean(row.n), row.mean_y.get_d(), 1e-9), "E[Y] recurrence vs closed form, " + n);
        r.check(row.var_z() >= 0, "variance nonnegative, " + n);
        const ZagrebRow& f = floating[static_cast<std::size_t>(row.n - 1)];
        r.check(close(f.second_z, row.second_z.get_d(), 1e-10), "floating E[Z^2] pass, " + n);
    }
    r.check(rows[3].mean_z == 11 && rows[2].mean_y == 10 && rows[3].second_z == 122 && rows[3].var_z() == 1,
            "spot values at n = 3, 4");
    const ExactDist gap = enumerate(4, AttachmentKernel::GapOriented, Statistic::of(StatisticKind::Zagreb));
    r.check(oracle_moment(gap, 1) == make_rational(166, 15), "gap-kernel E[Z_4] = 166/15");
    r.check(oracle_moment(gap, 1) != 11, "gap-kernel E[Z_4] differs from the degree-kernel value");
    return r;
}

SuiteReport martingale_suite(const VerifyOptions& o) {
    SuiteReport r;
    r.name = "martingale";
    const auto rows = zagreb_series_exact(300);
    for (std::size_t k = 1; k < rows.size(); ++k) {
        r.check(martingale_value_exact(rows[k].n, rows[k].mean_z) == 0, "E[M_n] = 0, n=" + std::to_string(rows[k].n));
    }
    for (std::int64_t n = 2; n <= std::min(o.n_max, kOracleMaxN); ++n) {
        const ExactDist m = enumerate(n, AttachmentKernel::DegreeProportional, Statistic::of(StatisticKind::Martingale));
        r.check(oracle_moment(m, 1) == 0, "oracle E[M_n] = 0, n=" + std::to_string(n));
        const Rational expected = make_rational(4, (n - 1) * (n - 1)) * rows[static_cast<std::size_t>(n - 1)].var_z();
        r.check(oracle_moment(m, 2) == expected, "oracle E[M_n^2] = 4 Var[Z_n]/(n-1)^2, n=" + std::to_string(n));
    }
    SimulationConfig c;
    c.n = 2000;
    c.replicates = 200;
    c.kernel = AttachmentKernel::DegreeProportional;
    c.statistic = Statistic::of(StatisticKind::Martingale);
    c.seed = o.seed;
    c.threads = 1;
    const MartingaleReport rep = martingale_diagnostics(c);
    r.check(rep.total_violations == 0, "increment bound holds on every trajectory");
    r.check(std::abs(rep.mean_over_se) < 4.0, "sample mean of M_n within 4 s.e. of 0");
    return r;
}

SuiteReport tree_suite(const VerifyOptions& o) {
    SuiteReport r;
    r.name = "tree";
    for (const auto kernel : {AttachmentKernel::GapOriented, AttachmentKernel::DegreeProportional}) {
        for (std::uint64_t rep = 0; rep < 20; ++rep) {
            Rng rng = make_stream(o.seed, rep);
            TreeState tree(kernel);
            for (const std::size_t n : {2UL, 3UL, 10UL, 137UL, 2000UL}) {
                tree.grow_to(n, rng);
                const auto problem = check_invariants(tree);
                r.check(!problem, std::string(to_string(kernel)) + " tree invariants: " + problem.value_or(""));
            }
        }
    }
    return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"oracle", "routes", "normalization", "moments",
                                                "zagreb", "martingale", "tree"};
    return names;
}

SuiteReport run_suite(std::string_view name, const VerifyOptions& options) {
    if (name == "oracle") return oracle_suite(options);
    if (name == "routes") return routes_suite(options);
    if (name == "normalization") return normalization_suite(options);
    if (name == "moments") return moments_suite(options);
    if (name == "zagreb") return zagreb_suite(options);
    if (name == "martingale") return martingale_suite(options);
    if (name == "tree") return tree_suite(options);
    throw std::invalid_argument("unknown verify suite '" + std::string(name) + "'");
}

}  // namespace portree
