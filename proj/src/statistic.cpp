#include "portree/statistic.hpp"

#include <charconv>
#include <stdexcept>

#include "portree/special_functions.hpp"

namespace portree {

Statistic Statistic::parse(std::string_view text) {
    if (text == "root-degree") return of(StatisticKind::RootDegree);
    if (text == "zagreb") return of(StatisticKind::Zagreb);
    if (text == "zagreb2") return of(StatisticKind::ZagrebSquared);
    if (text == "cubic") return of(StatisticKind::Cubic);
    if (text == "martingale") return of(StatisticKind::Martingale);
    constexpr std::string_view prefix = "degree:";
    if (text.starts_with(prefix)) {
        const std::string_view digits = text.substr(prefix.size());
        Label j = 0;
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), j);
        if (ec == std::errc{} && ptr == digits.data() + digits.size() && j >= 1) return degree_of(j);
    }
    throw std::invalid_argument("unknown statistic '" + std::string(text) +
                                "' (expected root-degree|degree:J|zagreb|zagreb2|cubic|martingale)");
}

std::string Statistic::name() const {
    switch (kind) {
        case StatisticKind::DegreeOf: return "degree:" + std::to_string(node);
        case StatisticKind::Zagreb: return "zagreb";
        case StatisticKind::Cubic: return "cubic";
        case StatisticKind::ZagrebSquared: return "zagreb2";
        case StatisticKind::RootDegree: return "root-degree";
        case StatisticKind::Martingale: return "martingale";
    }
    return "?";
}

void Statistic::validate(std::size_t n) const {
    if (kind == StatisticKind::DegreeOf && (node < 1 || node > n)) {
        throw std::invalid_argument("degree:" + std::to_string(node) + " requires 1 <= J <= n");
    }
    if (kind == StatisticKind::Martingale && n < 2) {
        throw std::invalid_argument("the martingale is defined for n >= 2");
    }
}

double evaluate(const TreeState& tree, const Statistic& statistic) {
    switch (statistic.kind) {
        case StatisticKind::DegreeOf: return tree.degree(statistic.node);
        case StatisticKind::RootDegree: return tree.degree(1);
        case StatisticKind::Zagreb: return static_cast<double>(tree.zagreb());
        case StatisticKind::Cubic: return static_cast<double>(tree.cubic());
        case StatisticKind::ZagrebSquared: {
            const auto z = static_cast<double>(tree.zagreb());
            return z * z;
        }
        case StatisticKind::Martingale: {
            const auto n = static_cast<std::int64_t>(tree.size());
            return 2.0 * static_cast<double>(tree.zagreb()) / static_cast<double>(n - 1) -
                   4.0 * digamma_plus_gamma_real(n);
        }
    }
    return 0.0;
}

}  // namespace portree
