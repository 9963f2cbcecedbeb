#include "portree/tree.hpp"

#include <map>
#include <ostream>
#include <stdexcept>

namespace portree {

std::string_view to_string(AttachmentKernel kernel) {
    return kernel == AttachmentKernel::GapOriented ? "gap" : "degree";
}

AttachmentKernel parse_kernel(std::string_view text) {
    if (text == "gap") return AttachmentKernel::GapOriented;
    if (text == "degree") return AttachmentKernel::DegreeProportional;
    throw std::invalid_argument("unknown kernel '" + std::string(text) + "' (expected gap|degree)");
}

TreeState::TreeState(AttachmentKernel kernel, std::size_t max_nodes)
    : kernel_(kernel), max_nodes_(max_nodes), degree_{0}, parent_{0} {
    if (kernel_ == AttachmentKernel::GapOriented) bag_.push_back(1);  // the root's single gap
}

std::uint32_t TreeState::gaps(Label v) const { return degree(v) + (v == 1 ? 1 : 0); }

void TreeState::reserve(std::size_t n) {
    degree_.reserve(n);
    parent_.reserve(n);
    bag_.reserve(2 * n);
}

void TreeState::attach(Label p) {
    if (p == 0 || p > size()) throw std::out_of_range("attach: parent label out of range");
    if (size() >= max_nodes_) throw std::length_error("tree exceeds configured node budget");
    const auto child = static_cast<Label>(size() + 1);
    const std::int64_t d = degree_[p - 1];
    zagreb_ += 2 * d + 2;
    cubic_ += 3 * d * d + 3 * d + 2;
    degree_[p - 1] += 1;
    degree_.push_back(1);
    parent_.push_back(p);
    bag_.push_back(p);
    bag_.push_back(child);
}

Label TreeState::insert_node(Rng& rng) {
    Label p = 1;
    // Under DegreeProportional the bag is empty for the isolated root and the
    // only possible tree on two nodes is forced.
    if (!bag_.empty()) p = bag_[uniform_below(rng, bag_.size())];
    attach(p);
    return p;
}

void TreeState::grow_to(std::size_t n_target, Rng& rng) {
    if (n_target < size()) throw std::invalid_argument("grow_to: target is below the current size");
    if (n_target > max_nodes_) throw std::length_error("grow_to: target exceeds configured node budget");
    reserve(n_target);
    while (size() < n_target) insert_node(rng);
}

void TreeState::write_csv(std::ostream& out) const {
    out << "label,parent,degree\n";
    for (std::size_t i = 0; i < size(); ++i) out << i + 1 << ',' << parent_[i] << ',' << degree_[i] << '\n';
}

std::optional<std::string> check_invariants(const TreeState& tree) {
    const std::size_t n = tree.size();
    std::int64_t degree_sum = 0;
    std::int64_t z = 0;
    std::int64_t y = 0;
    std::vector<std::int64_t> recount(n, 0);
    for (Label v = 1; v <= n; ++v) {
        const std::int64_t d = tree.degree(v);
        degree_sum += d;
        z += d * d;
        y += d * d * d;
        if (n >= 2 && d < 1) return "node " + std::to_string(v) + " has degree 0";
        if (v > 1) {
            const Label p = tree.parent(v);
            if (p == 0 || p >= v) return "node " + std::to_string(v) + " has a non-recursive parent";
            recount[p - 1] += 1;
            recount[v - 1] += 1;
        }
    }
    for (Label v = 1; v <= n; ++v) {
        if (recount[v - 1] != tree.degree(v)) return "degree of node " + std::to_string(v) + " disagrees with edges";
    }
    if (degree_sum != 2 * static_cast<std::int64_t>(n - 1)) return "degree sum is not 2(n-1)";
    if (z != tree.zagreb()) return "running Zagreb index disagrees with recomputation";
    if (y != tree.cubic()) return "running cubic index disagrees with recomputation";

    const std::size_t expected_bag =
        tree.kernel() == AttachmentKernel::GapOriented ? 2 * n - 1 : 2 * (n - 1);
    if (tree.weight_bag().size() != expected_bag) return "weight bag has the wrong size";
    std::map<Label, std::int64_t> multiplicity;
    for (const Label v : tree.weight_bag()) ++multiplicity[v];
    for (Label v = 1; v <= n; ++v) {
        const std::int64_t want =
            tree.kernel() == AttachmentKernel::GapOriented ? tree.gaps(v) : tree.degree(v);
        const auto it = multiplicity.find(v);
        const std::int64_t have = it == multiplicity.end() ? 0 : it->second;
        if (have != want) return "weight bag multiplicity of node " + std::to_string(v) + " is wrong";
    }
    return std::nullopt;
}

}  // namespace portree
