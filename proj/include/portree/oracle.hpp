#pragma once

#include <cstdint>
#include <map>

#include "portree/special_functions.hpp"
#include "portree/statistic.hpp"
#include "portree/tree.hpp"

namespace portree {

/// Largest n the enumeration accepts by default ((2n-3)!! = 2027025 histories at n = 9).
inline constexpr std::int64_t kOracleMaxN = 9;

/**
 * @brief Exact law of a tree statistic, obtained by enumerating every
 * weighted attachment history.
 */
struct ExactDist {
    std::int64_t n = 0;
    AttachmentKernel kernel = AttachmentKernel::GapOriented;
    Statistic statistic;
    std::map<Rational, Rational> outcomes;  ///< value -> probability
    BigInt history_count;                   ///< sum over histories of the product of branch weights

    [[nodiscard]] Rational total() const;
};

/**
 * Depth-first traversal over all parent choices. Each branch carries its
 * integer attachment weight; the statistic is updated incrementally along the
 * path. Throws std::invalid_argument for n < 2 or a statistic that does not
 * apply, std::length_error when n exceeds @p max_n.
 */
[[nodiscard]] ExactDist enumerate(std::int64_t n, AttachmentKernel kernel, const Statistic& statistic,
                                  std::int64_t max_n = kOracleMaxN);

/// Σ value^order · probability, order in 1..3.
[[nodiscard]] Rational oracle_moment(const ExactDist& dist, int order);

/// Number of weighted histories predicted in closed form:
/// (2n-3)!! for GapOriented, Π_{m=2}^{n-1} 2(m-1) for DegreeProportional.
[[nodiscard]] BigInt expected_history_count(std::int64_t n, AttachmentKernel kernel);

}  // namespace portree
