#include "portree/oracle.hpp"

#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "portree/exact_zagreb.hpp"

namespace portree {

namespace {

// Minimal mutable tree for the traversal: degrees plus the two running sums.
class Walker {
public:
    Walker(std::int64_t n, AttachmentKernel kernel, const Statistic& statistic)
        : n_(n), kernel_(kernel), statistic_(statistic) {
        degree_.reserve(static_cast<std::size_t>(n));
        degree_.push_back(0);
    }

    void run() { step(1); }

    // Key -> summed path weight. Keys are the integer statistic (Z, Y, degree);
    // derived statistics are mapped afterwards.
    const std::unordered_map<std::int64_t, std::uint64_t>& tally() const { return tally_; }

private:
    std::int64_t weight(std::size_t v) const {
        const std::int64_t d = degree_[v];
        if (kernel_ == AttachmentKernel::GapOriented) return d + (v == 0 ? 1 : 0);
        return d;
    }

    std::int64_t key() const {
        switch (statistic_.kind) {
            case StatisticKind::DegreeOf: return degree_[statistic_.node - 1];
            case StatisticKind::RootDegree: return degree_[0];
            case StatisticKind::Cubic: return cubic_;
            default: return zagreb_;
        }
    }

    void step(std::int64_t m) {
        if (m == n_) {
            tally_[key()] += path_weight_;
            return;
        }
        const bool forced = kernel_ == AttachmentKernel::DegreeProportional && m == 1;
        for (std::size_t v = 0; v < degree_.size(); ++v) {
            const std::int64_t w = forced ? 1 : weight(v);
            if (w == 0) continue;
            const std::int64_t d = degree_[v];
            const std::uint64_t saved = path_weight_;
            path_weight_ *= static_cast<std::uint64_t>(w);
            zagreb_ += 2 * d + 2;
            cubic_ += 3 * d * d + 3 * d + 2;
            degree_[v] += 1;
            degree_.push_back(1);
            step(m + 1);
            degree_.pop_back();
            degree_[v] -= 1;
            cubic_ -= 3 * d * d + 3 * d + 2;
            zagreb_ -= 2 * d + 2;
            path_weight_ = saved;
        }
    }

    std::int64_t n_;
    AttachmentKernel kernel_;
    Statistic statistic_;
    std::vector<std::int64_t> degree_;
    std::int64_t zagreb_ = 0;
    std::int64_t cubic_ = 0;
    std::uint64_t path_weight_ = 1;
    std::unordered_map<std::int64_t, std::uint64_t> tally_;
};

Rational outcome_value(const Statistic& statistic, std::int64_t n, std::int64_t key) {
    switch (statistic.kind) {
        case StatisticKind::ZagrebSquared: return Rational(BigInt(static_cast<long>(key)) * key);
        case StatisticKind::Martingale: return martingale_value_exact(n, Rational(static_cast<long>(key)));
        default: return Rational(static_cast<long>(key));
    }
}

}  // namespace

Rational ExactDist::total() const {
    Rational s{0};
    for (const auto& [value, p] : outcomes) s += p;
    return s;
}

BigInt expected_history_count(std::int64_t n, AttachmentKernel kernel) {
    BigInt count{1};
    for (std::int64_t m = 2; m <= n - 1; ++m) {
        count *= static_cast<unsigned long>(kernel == AttachmentKernel::GapOriented ? 2 * m - 1 : 2 * (m - 1));
    }
    return count;
}

ExactDist enumerate(std::int64_t n, AttachmentKernel kernel, const Statistic& statistic, std::int64_t max_n) {
    if (n < 2) throw std::invalid_argument("enumerate requires n >= 2");
    if (n > max_n) {
        throw std::length_error("enumeration capped at n = " + std::to_string(max_n) + " (requested " +
                                std::to_string(n) + ")");
    }
    statistic.validate(static_cast<std::size_t>(n));

    Walker walker(n, kernel, statistic);
    walker.run();

    ExactDist dist;
    dist.n = n;
    dist.kernel = kernel;
    dist.statistic = statistic;
    dist.history_count = 0;
    for (const auto& [key, w] : walker.tally()) dist.history_count += static_cast<unsigned long>(w);
    for (const auto& [key, w] : walker.tally()) {
        Rational p(BigInt(static_cast<unsigned long>(w)), dist.history_count);
        p.canonicalize();
        dist.outcomes[outcome_value(statistic, n, key)] += p;
    }
    return dist;
}

Rational oracle_moment(const ExactDist& dist, int order) {
    if (order < 1 || order > 3) throw std::invalid_argument("oracle_moment: order must be 1, 2 or 3");
    Rational s{0};
    for (const auto& [value, p] : dist.outcomes) {
        Rational v{1};
        for (int k = 0; k < order; ++k) v *= value;
        s += v * p;
    }
    return s;
}

}  // namespace portree
