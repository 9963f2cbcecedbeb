#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "portree/random.hpp"

namespace portree {

/**
 * @brief How a newcomer picks its parent in a tree of m nodes.
 *
 * GapOriented: node v is chosen with probability (outdegree(v) + 1)/(2m - 1),
 * i.e. proportional to the number of insertion gaps it carries. This is the
 * model behind the exact degree laws.
 *
 * DegreeProportional: node v is chosen with probability degree(v)/(2(m - 1)).
 * This is the model behind the Zagreb-index recurrences. The selection is
 * undefined on the isolated root, so the first insertion is forced.
 */
enum class AttachmentKernel { GapOriented, DegreeProportional };

[[nodiscard]] std::string_view to_string(AttachmentKernel kernel);
/// Accepts "gap" or "degree".
[[nodiscard]] AttachmentKernel parse_kernel(std::string_view text);

/// 1-based insertion rank. 0 means "no node".
using Label = std::uint32_t;

inline constexpr std::size_t kDefaultMaxNodes = std::size_t{1} << 28;

/**
 * @brief A growing plane-oriented recursive tree.
 *
 * Parent selection uses a weight bag: label v appears once per unit of
 * attachment weight, so a uniform draw from the bag is a preferential draw
 * and each insertion is O(1). The Zagreb index (sum of squared degrees) and
 * the cubic index (sum of cubed degrees) are maintained incrementally.
 */
class TreeState {
public:
    explicit TreeState(AttachmentKernel kernel, std::size_t max_nodes = kDefaultMaxNodes);

    [[nodiscard]] AttachmentKernel kernel() const { return kernel_; }
    [[nodiscard]] std::size_t size() const { return degree_.size(); }
    [[nodiscard]] std::size_t max_nodes() const { return max_nodes_; }

    [[nodiscard]] std::uint32_t degree(Label v) const { return degree_.at(v - 1); }
    /// 0 for the root.
    [[nodiscard]] Label parent(Label v) const { return parent_.at(v - 1); }
    /// Number of gaps (outdegree + 1) carried by v.
    [[nodiscard]] std::uint32_t gaps(Label v) const;

    /// Degrees indexed by label - 1.
    [[nodiscard]] std::span<const std::uint32_t> degrees() const { return degree_; }
    [[nodiscard]] std::span<const Label> weight_bag() const { return bag_; }

    [[nodiscard]] std::int64_t zagreb() const { return zagreb_; }
    [[nodiscard]] std::int64_t cubic() const { return cubic_; }

    /// Samples a parent, attaches node n + 1 to it, and returns the parent.
    Label insert_node(Rng& rng);

    /// Attaches node n + 1 to @p parent. Used by enumeration and tests.
    void attach(Label parent);

    /// Grows to @p n_target nodes. Throws std::length_error past max_nodes().
    void grow_to(std::size_t n_target, Rng& rng);

    void reserve(std::size_t n);

    /// "label,parent,degree" per node; the root's parent is written as 0.
    void write_csv(std::ostream& out) const;

private:
    AttachmentKernel kernel_;
    std::size_t max_nodes_;
    std::vector<std::uint32_t> degree_;
    std::vector<Label> parent_;
    std::vector<Label> bag_;
    std::int64_t zagreb_ = 0;
    std::int64_t cubic_ = 0;
};

/// Recomputes every derived quantity from scratch. Returns a description of
/// the first broken invariant, or nullopt when the state is consistent.
[[nodiscard]] std::optional<std::string> check_invariants(const TreeState& tree);

}  // namespace portree
