#include "portree/poisson.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "portree/parallel.hpp"
#include "portree/stats.hpp"

namespace portree {

double mgf_W(double u, double dt) {
    if (!(dt >= 0.0)) throw std::domain_error("mgf_W: dt must be nonnegative");
    const double q = -std::expm1(-dt);  // 1 - e^{-dt}
    if (q > 0.0 && !(u < -std::log(q))) throw std::domain_error("mgf_W: u outside the convergence region");
    return std::exp(u - dt) / (1.0 - q * std::exp(u));
}

WMoments moments_W(double dt) {
    if (!(dt >= 0.0)) throw std::domain_error("moments_W: dt must be nonnegative");
    const double e = std::exp(dt);
    return {e, 2.0 * e * e - e, e * e - e};
}

double geometric_pmf_W(double dt, std::int64_t k) {
    if (!(dt >= 0.0)) throw std::domain_error("geometric_pmf_W: dt must be nonnegative");
    if (k < 1) return 0.0;
    const double p = std::exp(-dt);
    return p * std::exp(static_cast<double>(k - 1) * std::log1p(-p));
}

ChiSquare geometric_goodness_of_fit(std::span<const double> sample, double dt, int cells) {
    if (!(dt > 0.0)) throw std::domain_error("geometric_goodness_of_fit: dt must be positive");
    if (cells < 1) throw std::invalid_argument("geometric_goodness_of_fit: need at least one cell");
    const auto total = static_cast<double>(sample.size());
    std::vector<std::uint64_t> raw_counts(static_cast<std::size_t>(cells) + 1, 0);
    for (const double w : sample) {
        if (w < 1.0) throw std::invalid_argument("geometric_goodness_of_fit: W must be at least 1");
        const auto k = static_cast<std::size_t>(std::min<double>(w, cells + 1.0));
        raw_counts[k - 1] += 1;
    }
    std::vector<double> raw_probs(raw_counts.size(), 0.0);
    double head = 0.0;
    for (int k = 1; k <= cells; ++k) {
        raw_probs[static_cast<std::size_t>(k - 1)] = geometric_pmf_W(dt, k);
        head += raw_probs[static_cast<std::size_t>(k - 1)];
    }
    raw_probs.back() = std::max(0.0, 1.0 - head);

    std::vector<std::uint64_t> counts;
    std::vector<double> probs;
    std::uint64_t acc_count = 0;
    double acc_prob = 0.0;
    for (std::size_t i = 0; i < raw_counts.size(); ++i) {
        acc_count += raw_counts[i];
        acc_prob += raw_probs[i];
        if (acc_prob * total >= 5.0) {
            counts.push_back(acc_count);
            probs.push_back(acc_prob);
            acc_count = 0;
            acc_prob = 0.0;
        }
    }
    if ((acc_count > 0 || acc_prob > 0.0) && !counts.empty()) {
        counts.back() += acc_count;
        probs.back() += acc_prob;
    }
    return chi_square_gof(counts, probs);
}

std::int64_t simulate_yule(double dt, Rng& rng) {
    if (!(dt >= 0.0)) throw std::domain_error("simulate_yule: dt must be nonnegative");
    std::int64_t w = 1;
    double t = exponential(rng, 1.0);
    while (t <= dt) {
        ++w;
        t += exponential(rng, static_cast<double>(w));
    }
    return w;
}

PoissonTreeRun simulate_poissonized_tree(std::int64_t j, double horizon, Rng& rng, std::int64_t event_cap,
                                         bool keep_log) {
    if (j < 2) throw std::invalid_argument("simulate_poissonized_tree: j must be at least 2");
    if (!(horizon >= 0.0)) throw std::invalid_argument("simulate_poissonized_tree: horizon must be nonnegative");

    TreeState tree(AttachmentKernel::GapOriented,
                   static_cast<std::size_t>(j) + static_cast<std::size_t>(std::max<std::int64_t>(event_cap, 0)));
    tree.grow_to(static_cast<std::size_t>(j), rng);

    PoissonTreeRun run;
    run.j = j;
    run.horizon = horizon;
    run.initial_blue = 2 * j - 2;
    run.alternate_initial_blue = 2 * j - 3;
    run.state = {0.0, 0.0, 1, run.initial_blue};
    const auto focal = static_cast<Label>(j);

    double t = 0.0;
    for (;;) {
        const auto gaps = static_cast<double>(tree.weight_bag().size());
        t += exponential(rng, gaps);
        if (t > horizon) break;
        if (run.events >= event_cap) {
            throw std::length_error("poissonized tree exceeded " + std::to_string(event_cap) + " events");
        }
        const Label p = tree.insert_node(rng);
        ++run.events;
        if (p == focal) {
            run.state.white += 1;
            run.state.blue += 1;
            run.white_times.push_back(t);
        } else {
            run.state.blue += 2;
        }
        if (keep_log) run.log.push_back({t, p});
    }
    run.state.t = horizon;
    run.total_gaps = static_cast<std::int64_t>(tree.weight_bag().size());
    return run;
}

double geometric_ks_floor(double p) {
    if (!(p > 0.0 && p <= 1.0)) throw std::domain_error("geometric_ks_floor: p must lie in (0, 1]");
    // The scaled geometric cdf jumps at x = kp from 1 - (1-p)^{k-1} to 1 - (1-p)^k;
    // compare both sides of each jump with 1 - e^{-kp}.
    const double log_q = std::log1p(-p);
    double d = 0.0;
    for (std::int64_t k = 1;; ++k) {
        const double tail_exp = std::exp(-static_cast<double>(k) * p);
        const double before = k == 1 ? 1.0 : std::exp(static_cast<double>(k - 1) * log_q);
        const double after = std::exp(static_cast<double>(k) * log_q);
        d = std::max({d, std::abs(before - tail_exp), std::abs(after - tail_exp)});
        if (before < 1e-17 || k > 100'000'000) break;
    }
    return d;
}

ScaledLimitResult scaled_limit_test(double dt, std::int64_t reps, Rng& rng) {
    const double p = std::exp(-dt);
    if (!(p < 0.05)) throw std::domain_error("scaled_limit_test: needs e^{-dt} < 0.05");
    if (reps < 10'000) throw std::invalid_argument("scaled_limit_test: needs at least 10^4 replicates");
    std::vector<double> scaled;
    scaled.reserve(static_cast<std::size_t>(reps));
    for (std::int64_t r = 0; r < reps; ++r) scaled.push_back(static_cast<double>(simulate_yule(dt, rng)) * p);

    ScaledLimitResult res;
    res.dt = dt;
    res.replicates = reps;
    res.distance = ks_exponential(scaled, 1.0).distance;
    res.floor = geometric_ks_floor(p);
    res.threshold = 1.5 * (res.floor + 1.63 / std::sqrt(static_cast<double>(reps)));
    const Moments m = describe(scaled);
    res.mean = m.mean;
    res.standard_error = m.standard_error();
    res.pass = res.distance < res.threshold;
    return res;
}

std::vector<double> yule_sample(double dt, std::int64_t reps, std::uint64_t seed, unsigned threads) {
    if (reps < 1) throw std::invalid_argument("yule_sample: reps must be positive");
    return parallel_map<double>(static_cast<std::size_t>(reps), threads, [&](std::size_t r) {
        Rng rng = make_stream(seed, r);
        return static_cast<double>(simulate_yule(dt, rng));
    });
}

std::vector<double> poissonized_tree_sample(std::int64_t j, double dt, std::int64_t reps, std::uint64_t seed,
                                            unsigned threads) {
    if (reps < 1) throw std::invalid_argument("poissonized_tree_sample: reps must be positive");
    return parallel_map<double>(static_cast<std::size_t>(reps), threads, [&](std::size_t r) {
        Rng rng = make_stream(seed, r);
        return static_cast<double>(simulate_poissonized_tree(j, dt, rng).state.white);
    });
}

}  // namespace portree
