// SPDX-License-Identifier: Apache-2.0

#ifndef SUBSHIFT_TREE_HPP
#define SUBSHIFT_TREE_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "subshift/delta.hpp"
#include "subshift/language.hpp"

namespace subshift {

using NodeId = std::uint32_t;
inline constexpr NodeId no_node = ~NodeId{0};

/// Truncated tree of words: level n holds the length-n prefixes of the
/// depth-N words, each level in lexicographic order. Node ids are dense and
/// grouped by level; the children of a node are consecutive ids.
class MichonTree {
 public:
  static constexpr std::size_t default_max_nodes = std::size_t{1} << 24;

  /// Throws std::domain_error when the table is not right-extendable or a
  /// table word does not reach depth N.
  static MichonTree build(const LanguageTable& table, std::size_t max_nodes = default_max_nodes);

  std::size_t depth() const noexcept { return level_begin_.size() - 2; }
  std::size_t size() const noexcept { return nodes_.size(); }
  NodeId root() const noexcept { return 0; }

  std::size_t level_size(std::size_t n) const { return level_begin_.at(n + 1) - level_begin_.at(n); }
  NodeId level_begin(std::size_t n) const { return level_begin_.at(n); }
  std::size_t level(NodeId v) const { return nodes_[v].level; }
  NodeId parent(NodeId v) const { return nodes_[v].parent; }
  std::size_t child_count(NodeId v) const { return nodes_[v].child_count; }
  NodeId first_child(NodeId v) const { return nodes_[v].first_child; }
  /// a(v) = number of children minus one (0 for leaves).
  std::size_t branching(NodeId v) const {
    return nodes_[v].child_count == 0 ? 0 : nodes_[v].child_count - 1;
  }
  bool is_leaf(NodeId v) const { return nodes_[v].level == depth(); }
  std::string_view word(NodeId v) const;

  /// Ancestor of v at level n <= level(v).
  NodeId ancestor(NodeId v, std::size_t n) const;
  /// Level of the deepest common ancestor.
  std::size_t common_level(NodeId x, NodeId y) const;
  std::optional<NodeId> find(std::string_view w) const;
  /// Leaves in lexicographic order.
  std::size_t leaf_count() const { return level_size(depth()); }
  NodeId leaf(std::size_t index) const { return level_begin(depth()) + static_cast<NodeId>(index); }

 private:
  struct Node {
    std::uint32_t level = 0;
    std::uint32_t position = 0;  // offset of the word in the text
    NodeId parent = no_node;
    NodeId first_child = no_node;
    std::uint32_t child_count = 0;
  };
  std::shared_ptr<const std::string> text_;
  std::vector<Node> nodes_;
  std::vector<NodeId> level_begin_;  // size depth + 2
};

/// Unordered pair of distinct siblings at `level` (children of a level-1 node).
struct HorizontalEdge {
  std::size_t level = 0;
  NodeId u = no_node;
  NodeId v = no_node;
  /// delta_{level - 1}: siblings below a level-m vertex are delta_m apart.
  double length(const DeltaSequence& delta) const { return delta[level - 1]; }
};

std::vector<HorizontalEdge> horizontal_edges(const MichonTree& tree, std::size_t level);

/// One selected child per non-leaf node, plus the induced depth-N representative.
class ChoiceFunction {
 public:
  struct Canonical {};
  struct SeededRandom {
    std::uint64_t seed = 0;
  };
  /// Deviate from xi at level n exactly when bits[n] = 1 (n = 0..N-1).
  struct AdversarialPath {
    NodeId leaf = no_node;
    std::vector<std::uint8_t> bits;
  };
  using Policy = std::variant<Canonical, SeededRandom, AdversarialPath>;

  /// Explicit selection; selected[v] must be a child of v for every non-leaf v.
  static ChoiceFunction from_selection(const MichonTree& tree, std::vector<NodeId> selected);

  NodeId selected(NodeId v) const { return selected_[v]; }
  NodeId representative(NodeId v) const { return representative_[v]; }
  const std::vector<NodeId>& selection() const noexcept { return selected_; }

 private:
  std::vector<NodeId> selected_;
  std::vector<NodeId> representative_;
};

ChoiceFunction choice_function(const MichonTree& tree, const ChoiceFunction::Policy& policy);

/// Approximation graph: vertices are the leaves (index = lexicographic leaf
/// index), edges are the images of horizontal edges.
struct MetricGraph {
  struct Edge {
    std::uint32_t u = 0, v = 0;
    double length = 0;
    std::size_t level = 0;
  };
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adjacency;

  std::size_t vertex_count() const noexcept { return labels.size(); }
  bool connected() const;
};

MetricGraph approximation_graph(const MichonTree& tree, const ChoiceFunction& tau,
                                const DeltaSequence& delta);

}  // namespace subshift

#endif  // SUBSHIFT_TREE_HPP
