#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "portree/tree.hpp"

namespace portree {

enum class StatisticKind { DegreeOf, Zagreb, Cubic, ZagrebSquared, RootDegree, Martingale };

/// A per-tree quantity recorded by the oracle and the Monte Carlo harness.
struct Statistic {
    StatisticKind kind = StatisticKind::Zagreb;
    Label node = 0;  ///< only for DegreeOf

    static Statistic degree_of(Label j) { return {StatisticKind::DegreeOf, j}; }
    static Statistic of(StatisticKind kind) { return {kind, 0}; }

    /// root-degree | degree:J | zagreb | zagreb2 | cubic | martingale
    [[nodiscard]] static Statistic parse(std::string_view text);
    [[nodiscard]] std::string name() const;

    /// Throws std::invalid_argument when the statistic makes no sense on n nodes.
    void validate(std::size_t n) const;

    bool operator==(const Statistic&) const = default;
};

/// Value of the statistic on a grown tree, as a double.
[[nodiscard]] double evaluate(const TreeState& tree, const Statistic& statistic);

}  // namespace portree
