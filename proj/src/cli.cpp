#include "portree/cli.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "portree/exact_degree.hpp"
#include "portree/exact_zagreb.hpp"
#include "portree/monte_carlo.hpp"
#include "portree/oracle.hpp"
#include "portree/output.hpp"
#include "portree/parallel.hpp"
#include "portree/poisson.hpp"
#include "portree/stats.hpp"
#include "portree/verify.hpp"

namespace portree::cli {

namespace {

namespace fs = std::filesystem;

// Floating PMF and moment output up to these sizes is the exact rational
// value rounded to the nearest double.
constexpr std::int64_t kExactPmfOutputMaxN = 100;
constexpr std::int64_t kExactZagrebOutputMaxN = 2000;

constexpr std::int64_t kUnderpoweredReplicates = 1000;

struct Invocation {
    std::vector<std::string> argv;
    std::ostream& out;
    std::ostream& err;
};

std::string option_name(const CLI::Option* opt) { return "--" + opt->get_lnames().front(); }

// Every option of the subcommand that has a value (from the command line, a
// config file or its default), in declaration order, minus the output path.
RunManifest make_manifest(const CLI::App* sub, const Invocation& inv) {
    RunManifest m;
    m.subcommand = sub->get_name();
    m.argv = inv.argv;
    m.resolved_args.push_back(m.subcommand);
    for (const CLI::Option* opt : sub->get_options()) {
        if (opt->get_lnames().empty()) continue;
        const std::string name = option_name(opt);
        if (name == "--help" || name == "--out" || name == "--threads") continue;
        const std::string key = opt->get_lnames().front();
        if (opt->get_items_expected_max() == 0) {  // flag
            const bool set = opt->count() > 0;
            m.options[key] = set;
            if (set) m.resolved_args.push_back(name);
            continue;
        }
        std::string value;
        if (opt->count() > 0) {
            value = opt->results().back();
        } else {
            value = opt->get_default_str();
        }
        if (value.empty()) continue;
        m.options[key] = value;
        m.resolved_args.push_back(name);
        m.resolved_args.push_back(value);
        if (key == "seed") {
            m.seed = std::stoull(value);
            m.has_seed = true;
        }
    }
    return m;
}

PmfMethod parse_method(const std::string& s) {
    if (s == "closed") return PmfMethod::ClosedForm;
    if (s == "recurrence") return PmfMethod::Recurrence;
    if (s == "hypergeom") return PmfMethod::Hypergeometric;
    throw std::invalid_argument("unknown method '" + s + "'");
}

MomentRegime parse_regime(const std::string& s) {
    if (s == "exact") return MomentRegime::Exact;
    if (s == "fixed-j") return MomentRegime::FixedJ;
    if (s == "growing-j") return MomentRegime::GrowingJ;
    if (s == "linear") return MomentRegime::LinearTheta;
    throw std::invalid_argument("unknown regime '" + s + "'");
}

// Sends text to --out/<file> (with a manifest) or to stdout.
void emit(const Invocation& inv, const CLI::App* sub, const std::string& out_dir, const std::string& file,
          const std::string& text) {
    if (out_dir.empty()) {
        inv.out << text;
        return;
    }
    write_text_file(fs::path(out_dir) / file, text);
    write_manifest(out_dir, make_manifest(sub, inv));
}

// ---------------------------------------------------------------- exact-pmf

struct PmfArgs {
    std::int64_t n = 0;
    std::int64_t j = 0;
    std::string method = "recurrence";
    bool rational = false;
    std::string out;
};

void run_exact_pmf(const PmfArgs& a, const Invocation& inv, const CLI::App* sub) {
    const PmfMethod method = parse_method(a.method);
    if (a.n < 1 || a.j < 1 || a.j > a.n) throw std::invalid_argument("exact-pmf needs 1 <= j <= n");
    std::string csv = "d,probability\n";
    if (a.rational || a.n <= kExactPmfOutputMaxN) {
        const ExactDegreeLaw law = degree_law_exact(a.n, a.j, method);
        for (std::int64_t d = law.min_degree; d <= law.max_degree(); ++d) {
            csv += std::to_string(d) + "," + (a.rational ? to_string(law.at(d)) : format_double(to_double(law.at(d)))) +
                   "\n";
        }
    } else {
        if (method != PmfMethod::Recurrence && a.j != 1) {
            inv.err << "warning: the floating " << a.method
                    << " route loses accuracy beyond n ~ 12; prefer --rational or --method recurrence\n";
        }
        const DegreeLaw law = degree_law(a.n, a.j, method);
        for (std::int64_t d = law.min_degree; d <= law.max_degree(); ++d) {
            csv += std::to_string(d) + "," + format_double(law.at(d)) + "\n";
        }
    }
    emit(inv, sub, a.out, "pmf.csv", csv);
}

// ------------------------------------------------------------ exact-moments

struct MomentArgs {
    std::int64_t n = 0;
    std::int64_t j = 0;
    std::string regime = "exact";
    bool rational = false;
    std::string out;
};

std::string regime_name(MomentRegime r) {
    switch (r) {
        case MomentRegime::Exact: return "exact";
        case MomentRegime::FixedJ: return "fixed-j";
        case MomentRegime::GrowingJ: return "growing-j";
        case MomentRegime::LinearTheta: return "linear";
    }
    return "?";
}

void run_exact_moments(const MomentArgs& a, const Invocation& inv, const CLI::App* sub) {
    std::string csv = "n,j,regime,mean,variance\n";
    const std::string prefix = std::to_string(a.n) + "," + std::to_string(a.j) + ",";
    if (a.rational) {
        if (a.regime != "exact") throw std::invalid_argument("--rational applies to the exact regime only");
        const ExactDegreeLaw law = degree_pmf_recurrence_exact(a.n, a.j);
        csv += prefix + "exact," + to_string(law.mean()) + "," + to_string(law.variance()) + "\n";
    } else {
        std::vector<MomentRegime> regimes;
        if (a.regime == "all") {
            regimes = {MomentRegime::Exact, MomentRegime::FixedJ, MomentRegime::GrowingJ, MomentRegime::LinearTheta};
        } else {
            regimes = {parse_regime(a.regime)};
        }
        for (const MomentRegime r : regimes) {
            if (r == MomentRegime::LinearTheta && a.j >= a.n && a.regime == "all") continue;
            const DegreeMoments m = degree_moments_asymptotic(a.n, a.j, r);
            csv += prefix + regime_name(r) + "," + format_double(m.mean) + "," + format_double(m.variance) + "\n";
        }
    }
    emit(inv, sub, a.out, "moments.csv", csv);
}

// ----------------------------------------------------------- zagreb-moments

struct ZagrebArgs {
    std::int64_t n_max = 0;
    bool rational = false;
    std::int64_t rational_cap = kDefaultRationalCap;
    std::string out;
};

void run_zagreb_moments(const ZagrebArgs& a, const Invocation& inv, const CLI::App* sub) {
    if (a.n_max < 1) throw std::invalid_argument("--n-max must be at least 1");
    std::ostringstream csv;
    csv << "n,mean_Z,mean_Y,second_Z,var_Z\n";
    if (a.rational || a.n_max <= std::min(kExactZagrebOutputMaxN, a.rational_cap)) {
        for (const auto& row : zagreb_series_exact(a.n_max, a.rational_cap)) {
            if (a.rational) {
                csv << row.n << ',' << to_string(row.mean_z) << ',' << to_string(row.mean_y) << ','
                    << to_string(row.second_z) << ',' << to_string(row.var_z()) << '\n';
            } else {
                csv << row.n << ',' << format_double(to_double(row.mean_z)) << ','
                    << format_double(to_double(row.mean_y)) << ',' << format_double(to_double(row.second_z)) << ','
                    << format_double(to_double(row.var_z())) << '\n';
            }
        }
    } else {
        for (const auto& row : zagreb_series(a.n_max)) {
            csv << row.n << ',' << format_double(row.mean_z) << ',' << format_double(row.mean_y) << ','
                << format_double(row.second_z) << ',' << format_double(row.var_z) << '\n';
        }
    }
    if (a.out.empty()) {
        inv.out << csv.str();
        return;
    }
    // --out names the series file; the manifest goes next to it
    const fs::path file(a.out);
    write_text_file(file, csv.str());
    write_manifest(file.has_parent_path() ? file.parent_path() : fs::path("."), make_manifest(sub, inv));
}

// ------------------------------------------------------------------- oracle

struct OracleArgs {
    std::int64_t n = 0;
    std::string kernel = "gap";
    std::string stat;
    std::int64_t max_n = kOracleMaxN;
    std::string out;
};

void run_oracle(const OracleArgs& a, const Invocation& inv, const CLI::App* sub) {
    const ExactDist dist = enumerate(a.n, parse_kernel(a.kernel), Statistic::parse(a.stat), a.max_n);
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["n"] = dist.n;
    j["kernel"] = std::string(to_string(dist.kernel));
    j["statistic"] = dist.statistic.name();
    j["history_count"] = dist.history_count.get_str();
    Json outcomes = Json::object();
    for (const auto& [value, p] : dist.outcomes) outcomes[to_string(value)] = to_string(p);
    j["outcomes"] = std::move(outcomes);
    emit(inv, sub, a.out, "oracle.json", dump_json(j));
}

// ----------------------------------------------------------------- simulate

struct SimulateArgs {
    std::int64_t n = 0;
    std::int64_t reps = 0;
    std::string kernel = "degree";
    std::string stat = "zagreb";
    std::uint64_t seed = 0;
    std::size_t kde_grid = 512;
    bool diagnostics = false;
    unsigned threads = 0;
    std::string out;
};

void run_simulate(const SimulateArgs& a, const Invocation& inv, const CLI::App* sub) {
    SimulationConfig c;
    c.n = a.n;
    c.replicates = a.reps;
    c.kernel = parse_kernel(a.kernel);
    c.statistic = Statistic::parse(a.stat);
    c.seed = a.seed;
    c.kde_grid = a.kde_grid;
    c.threads = a.threads;
    if (a.diagnostics && c.statistic.kind != StatisticKind::Martingale) {
        throw std::invalid_argument("--diagnostics requires --stat martingale");
    }
    const ExperimentResult result = run_experiment(c);
    const fs::path dir(a.out);
    write_experiment(result, dir);
    if (a.diagnostics) write_text_file(dir / "martingale.json", dump_json(martingale_json(martingale_diagnostics(c))));
    write_manifest(dir, make_manifest(sub, inv));
    const Moments& m = result.summary.moments;
    inv.out << "mean " << format_double(m.mean) << "  se " << format_double(m.standard_error()) << "  skewness "
            << format_double(m.skewness) << "\n";
}

// ------------------------------------------------------------------ poisson

struct PoissonArgs {
    std::int64_t j = 2;
    double dt = 0.0;
    std::int64_t reps = 0;
    std::string mode = "yule";
    std::uint64_t seed = 0;
    std::int64_t event_cap = kDefaultEventCap;
    unsigned threads = 0;
    std::string out;
};

void run_poisson(const PoissonArgs& a, const Invocation& inv, const CLI::App* sub) {
    if (!(a.dt >= 0.0)) throw std::invalid_argument("--dt must be nonnegative");
    std::vector<double> sample;
    if (a.mode == "yule") {
        sample = yule_sample(a.dt, a.reps, a.seed, a.threads);
    } else if (a.mode == "tree") {
        if (a.reps < 1) throw std::invalid_argument("--reps must be positive");
        sample = parallel_map<double>(static_cast<std::size_t>(a.reps), a.threads, [&](std::size_t r) {
            Rng rng = make_stream(a.seed, r);
            return static_cast<double>(simulate_poissonized_tree(a.j, a.dt, rng, a.event_cap).state.white);
        });
    } else {
        throw std::invalid_argument("unknown mode '" + a.mode + "' (expected yule|tree)");
    }
    const Moments m = describe(sample);
    const WMoments theory = moments_W(a.dt);
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["mode"] = a.mode;
    j["j"] = a.j;
    j["dt"] = a.dt;
    j["replicates"] = a.reps;
    j["seed"] = a.seed;
    j["sample"] = {{"mean", m.mean},
                   {"variance", m.variance},
                   {"standard_error", m.standard_error()},
                   {"min", m.min},
                   {"max", m.max}};
    j["theory"] = {{"mean", theory.mean}, {"second_moment", theory.second_moment}, {"variance", theory.variance}};
    j["mean_over_se"] = m.standard_error() > 0.0 ? (m.mean - theory.mean) / m.standard_error() : 0.0;
    if (a.dt > 0.0) {
        const ChiSquare gof = geometric_goodness_of_fit(sample, a.dt);
        j["geometric_gof"] = {{"statistic", gof.statistic}, {"dof", gof.dof}, {"pvalue", gof.pvalue}};
    }
    const double p = std::exp(-a.dt);
    if (p < 0.05) {
        std::vector<double> scaled(sample.begin(), sample.end());
        for (double& x : scaled) x *= p;
        const KsResult ks = ks_exponential(scaled, 1.0);
        j["scaled_limit"] = {{"ks_distance", ks.distance}, {"discretization_floor", geometric_ks_floor(p)}};
    }
    const fs::path dir(a.out);
    write_text_file(dir / "sample.csv", sample_csv(sample));
    write_text_file(dir / "summary.json", dump_json(j));
    write_manifest(dir, make_manifest(sub, inv));
    inv.out << "mean " << format_double(m.mean) << " (theory " << format_double(theory.mean) << ")  variance "
            << format_double(m.variance) << " (theory " << format_double(theory.variance) << ")\n";
}

// --------------------------------------------------------- normality-report

struct NormalityArgs {
    std::int64_t n = 20000;
    std::int64_t reps = 5000;
    std::uint64_t seed = 0;
    double alpha = 0.05;
    std::size_t kde_grid = 512;
    unsigned threads = 0;
    std::string out;
};

void run_normality_report(const NormalityArgs& a, const Invocation& inv, const CLI::App* sub) {
    SimulationConfig c;
    c.n = a.n;
    c.replicates = a.reps;
    c.kernel = AttachmentKernel::DegreeProportional;
    c.statistic = Statistic::of(StatisticKind::Zagreb);
    c.seed = a.seed;
    c.kde_grid = a.kde_grid;
    c.threads = a.threads;
    const ExperimentResult result = run_experiment(c);
    const Moments& m = result.summary.moments;
    const bool underpowered = a.reps < kUnderpoweredReplicates;
    if (underpowered) inv.err << "warning: underpowered (" << a.reps << " replicates < " << kUnderpoweredReplicates << ")\n";

    std::string verdict = "insufficient data";
    if (result.summary.jarque_bera) {
        verdict = result.summary.jarque_bera->pvalue < a.alpha ? "normality rejected" : "normality not rejected";
    }

    std::ostringstream txt;
    txt << "zagreb index normality report\n";
    txt << "n " << a.n << "  replicates " << a.reps << "  seed " << a.seed << "  kernel degree\n";
    txt << "mean " << format_double(m.mean) << "\n";
    txt << "variance " << format_double(m.variance) << "\n";
    txt << "skewness " << format_double(m.skewness) << (m.skewness < 0.0 ? " (left-skewed)" : "") << "\n";
    txt << "excess kurtosis " << format_double(m.excess_kurtosis) << "\n";
    if (result.summary.jarque_bera) {
        txt << "jarque-bera statistic " << format_double(result.summary.jarque_bera->statistic) << "\n";
        txt << "jarque-bera p-value " << format_double(result.summary.jarque_bera->pvalue) << "\n";
    }
    txt << "note: moment-based Jarque-Bera test used in place of Shapiro-Wilk\n";
    if (underpowered) txt << "warning: underpowered (replicates < " << kUnderpoweredReplicates << ")\n";
    txt << "verdict: " << verdict << " (alpha " << format_double(a.alpha) << ")\n";

    Json j = summary_json(result);
    j["alpha"] = a.alpha;
    j["underpowered"] = underpowered;
    j["verdict"] = verdict;

    const fs::path dir(a.out);
    write_text_file(dir / "sample.csv", sample_csv(result.sample));
    if (result.summary.kde) write_text_file(dir / "kde.csv", kde_csv(*result.summary.kde));
    write_text_file(dir / "report.json", dump_json(j));
    write_text_file(dir / "report.txt", txt.str());
    write_manifest(dir, make_manifest(sub, inv));
    inv.out << txt.str();
}

// ------------------------------------------------------------------- verify

struct VerifyArgs {
    std::string suite = "all";
    std::int64_t n_max = 8;
    std::uint64_t seed = VerifyOptions{}.seed;
    std::string out;
};

int run_verify(const VerifyArgs& a, const Invocation& inv, const CLI::App* sub) {
    VerifyOptions o;
    o.n_max = a.n_max;
    o.seed = a.seed;
    std::vector<std::string> names;
    if (a.suite == "all") {
        names = suite_names();
    } else {
        names = {a.suite};
    }
    std::int64_t passed = 0;
    std::int64_t failed = 0;
    Json report = Json::array();
    for (const auto& name : names) {
        const SuiteReport r = run_suite(name, o);
        passed += r.passed;
        failed += r.failed;
        inv.out << "suite " << r.name << ": " << r.passed << " passed, " << r.failed << " failed\n";
        for (const auto& f : r.failures) inv.out << "  FAIL " << f << "\n";
        report.push_back({{"suite", r.name}, {"passed", r.passed}, {"failed", r.failed}, {"failures", r.failures}});
    }
    inv.out << "total: " << passed << " passed, " << failed << " failed\n";
    if (!a.out.empty()) {
        Json j;
        j["schema_version"] = kSchemaVersion;
        j["suites"] = std::move(report);
        j["passed"] = passed;
        j["failed"] = failed;
        write_text_file(fs::path(a.out) / "verify-report.json", dump_json(j));
        write_manifest(a.out, make_manifest(sub, inv));
    }
    return failed == 0 ? kExitOk : kExitVerifyFailed;
}

// ------------------------------------------------------------------- replay

struct ReplayArgs {
    std::string manifest;
    std::string out;
};

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    const Invocation inv{args, out, err};
    CLI::App app{"portree: exact laws and simulation of plane-oriented recursive trees"};
    app.name(args.empty() ? "portree" : fs::path(args.front()).filename().string());
    app.set_config("--config", "", "TOML/INI file of option values; explicit flags take precedence");
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    // exact-pmf
    PmfArgs pmf;
    auto* pmf_cmd = app.add_subcommand("exact-pmf", "exact law of the degree of node j at time n (CSV d,probability)");
    pmf_cmd->add_option("--n", pmf.n, "tree size")->required();
    pmf_cmd->add_option("--j", pmf.j, "node label, 1 is the root")->required();
    pmf_cmd->add_option("--method", pmf.method, "closed|recurrence|hypergeom")
        ->check(CLI::IsMember({"closed", "recurrence", "hypergeom"}));
    pmf_cmd->add_flag("--rational", pmf.rational, "print exact p/q values");
    pmf_cmd->add_option("--out", pmf.out, "output directory (default: stdout)");

    // exact-moments
    MomentArgs mom;
    auto* mom_cmd = app.add_subcommand("exact-moments", "mean and variance of the degree of node j");
    mom_cmd->add_option("--n", mom.n, "tree size")->required();
    mom_cmd->add_option("--j", mom.j, "node label")->required();
    mom_cmd->add_option("--regime", mom.regime, "exact|fixed-j|growing-j|linear|all")
        ->check(CLI::IsMember({"exact", "fixed-j", "growing-j", "linear", "all"}));
    mom_cmd->add_flag("--rational", mom.rational, "exact p/q values from the rational law");
    mom_cmd->add_option("--out", mom.out, "output directory (default: stdout)");

    // zagreb-moments
    ZagrebArgs zag;
    auto* zag_cmd = app.add_subcommand("zagreb-moments", "E[Z_n], E[Y_n], E[Z_n^2], Var[Z_n] for n = 1..n-max");
    zag_cmd->add_option("--n-max", zag.n_max, "last n")->required();
    zag_cmd->add_flag("--rational", zag.rational, "print exact p/q values");
    zag_cmd->add_option("--rational-cap", zag.rational_cap, "largest n for rational arithmetic");
    zag_cmd->add_option("--out", zag.out, "output CSV file (default: stdout)");

    // oracle
    OracleArgs ora;
    auto* ora_cmd = app.add_subcommand("oracle", "exact law of a statistic by enumerating every history");
    ora_cmd->add_option("--n", ora.n, "tree size")->required();
    ora_cmd->add_option("--kernel", ora.kernel, "gap|degree")->check(CLI::IsMember({"gap", "degree"}));
    ora_cmd->add_option("--stat", ora.stat, "root-degree|degree:J|zagreb|zagreb2|cubic|martingale")->required();
    ora_cmd->add_option("--max-n", ora.max_n, "enumeration cap");
    ora_cmd->add_option("--out", ora.out, "output directory (default: stdout)");

    // simulate
    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "replicated tree growth; sample.csv, summary.json, kde.csv");
    sim_cmd->add_option("--n", sim.n, "tree size")->required();
    sim_cmd->add_option("--reps", sim.reps, "number of replicates")->required();
    sim_cmd->add_option("--kernel", sim.kernel, "gap|degree")->check(CLI::IsMember({"gap", "degree"}));
    sim_cmd->add_option("--stat", sim.stat, "root-degree|degree:J|zagreb|zagreb2|cubic|martingale");
    sim_cmd->add_option("--seed", sim.seed, "master seed")->required();
    sim_cmd->add_option("--kde-grid", sim.kde_grid, "density grid size, 0 disables");
    sim_cmd->add_flag("--diagnostics", sim.diagnostics, "martingale increment diagnostics (martingale.json)");
    sim_cmd->add_option("--threads", sim.threads, "worker threads, 0 = all cores; does not change results");
    sim_cmd->add_option("--out", sim.out, "output directory")->required();

    // poisson
    PoissonArgs poi;
    auto* poi_cmd = app.add_subcommand("poisson", "continuous-time gap count W of node j");
    poi_cmd->add_option("--j", poi.j, "focal node (tree mode)");
    poi_cmd->add_option("--dt", poi.dt, "elapsed time since node j arrived")->required();
    poi_cmd->add_option("--reps", poi.reps, "number of replicates")->required();
    poi_cmd->add_option("--mode", poi.mode, "yule|tree")->check(CLI::IsMember({"yule", "tree"}));
    poi_cmd->add_option("--seed", poi.seed, "master seed")->required();
    poi_cmd->add_option("--event-cap", poi.event_cap, "event limit per tree-mode replicate");
    poi_cmd->add_option("--threads", poi.threads, "worker threads, 0 = all cores; does not change results");
    poi_cmd->add_option("--out", poi.out, "output directory")->required();

    // normality-report
    NormalityArgs nor;
    auto* nor_cmd = app.add_subcommand("normality-report", "Zagreb-index normality study with a verdict line");
    nor_cmd->add_option("--n", nor.n, "tree size");
    nor_cmd->add_option("--reps", nor.reps, "number of trees");
    nor_cmd->add_option("--seed", nor.seed, "master seed")->required();
    nor_cmd->add_option("--alpha", nor.alpha, "rejection level for the verdict");
    nor_cmd->add_option("--kde-grid", nor.kde_grid, "density grid size, 0 disables");
    nor_cmd->add_option("--threads", nor.threads, "worker threads, 0 = all cores; does not change results");
    nor_cmd->add_option("--out", nor.out, "output directory")->required();

    // verify
    VerifyArgs ver;
    auto* ver_cmd = app.add_subcommand("verify", "cross-module invariant suites; exit 2 on any failure");
    ver_cmd->add_option("--suite", ver.suite, "all|oracle|routes|normalization|moments|zagreb|martingale|tree")
        ->check(CLI::IsMember({"all", "oracle", "routes", "normalization", "moments", "zagreb", "martingale", "tree"}));
    ver_cmd->add_option("--n-max", ver.n_max, "largest n for the enumeration-based suites")
        ->check(CLI::Range(2, static_cast<int>(kOracleMaxN)));
    ver_cmd->add_option("--seed", ver.seed, "seed for the randomized checks");
    ver_cmd->add_option("--out", ver.out, "directory for verify-report.json");

    // replay
    ReplayArgs rep;
    auto* rep_cmd = app.add_subcommand("replay", "rerun the command recorded in a run-manifest.json");
    rep_cmd->add_option("--manifest", rep.manifest, "path to run-manifest.json")->required();
    rep_cmd->add_option("--out", rep.out, "output location for the rerun (same kind as the original --out)");

    try {
        std::vector<const char*> raw;
        raw.reserve(args.size());
        for (const auto& a : args) raw.push_back(a.c_str());
        app.parse(static_cast<int>(raw.size()), raw.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*pmf_cmd) run_exact_pmf(pmf, inv, pmf_cmd);
        if (*mom_cmd) run_exact_moments(mom, inv, mom_cmd);
        if (*zag_cmd) run_zagreb_moments(zag, inv, zag_cmd);
        if (*ora_cmd) run_oracle(ora, inv, ora_cmd);
        if (*sim_cmd) run_simulate(sim, inv, sim_cmd);
        if (*poi_cmd) run_poisson(poi, inv, poi_cmd);
        if (*nor_cmd) run_normality_report(nor, inv, nor_cmd);
        if (*ver_cmd) return run_verify(ver, inv, ver_cmd);
        if (*rep_cmd) {
            const RunManifest m = RunManifest::from_json(Json::parse(read_text_file(rep.manifest)));
            if (m.resolved_args.empty() || m.resolved_args.front() == "replay") {
                throw std::invalid_argument("manifest does not describe a replayable command");
            }
            std::vector<std::string> replay_args{args.front()};
            replay_args.insert(replay_args.end(), m.resolved_args.begin(), m.resolved_args.end());
            if (!rep.out.empty()) {
                replay_args.emplace_back("--out");
                replay_args.push_back(rep.out);
            }
            return dispatch(replay_args, out, err);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitOk;
}

int dispatch(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return dispatch(args, std::cout, std::cerr);
}

}  // namespace portree::cli
