// SPDX-License-Identifier: Apache-2.0

#ifndef SUBSHIFT_SKELETON_HPP
#define SUBSHIFT_SKELETON_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "subshift/language.hpp"
#include "subshift/tree.hpp"

namespace subshift {

/// The Michon tree with its unary chains contracted: nodes are the root, the
/// branching vertices below depth N and the leaves. Identical subtrees may be
/// shared (the full shift is a single chain with multiplicities), so a node
/// stands for `copies` vertices of the tree. Nodes are in breadth-first order.
///
/// Non-branching vertices carry a(v) = 0 and contribute nothing to the
/// order diagnostics or to zeta, which therefore run here at depths where the
/// explicit tree would not fit in memory.
class BranchingSkeleton {
 public:
  struct Node {
    std::uint32_t level = 0;
    std::uint32_t position = 0;    // offset of a representative word in the text
    std::uint32_t branching = 0;   // a(v)
    double log_copies = 0;         // ln of the number of tree vertices represented
    std::uint32_t edge_begin = 0;
    std::uint32_t edge_count = 0;
  };
  struct Edge {
    std::uint32_t child = 0;
    std::uint32_t multiplicity = 1;  // tree children of one copy that lead to `child`
  };

  static BranchingSkeleton from_table(const LanguageTable& table);
  static BranchingSkeleton from_tree(const MichonTree& tree);
  static BranchingSkeleton full_shift(std::size_t k, std::size_t depth);

  std::size_t depth() const noexcept { return depth_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  const Node& node(std::uint32_t v) const { return nodes_[v]; }
  std::span<const Edge> edges(std::uint32_t v) const {
    return {edges_.data() + nodes_[v].edge_begin, nodes_[v].edge_count};
  }
  std::string_view word(std::uint32_t v) const;
  /// Representative word extended by its lexicographically least descent to `length`.
  std::string extend(std::uint32_t v, std::size_t length) const;

  /// Per-level sums over branching vertices at levels 0..N-1, in long double
  /// because full-shift counts exceed the double range at large depth.
  struct LevelSums {
    std::vector<long double> branching;  // number of vertices with a(v) > 0
    std::vector<long double> g;          // sum of a(v)
    std::vector<long double> oriented;   // sum of a(v)(a(v) + 1)
  };
  LevelSums level_sums() const;

 private:
  std::size_t depth_ = 0;
  std::shared_ptr<const std::string> text_;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
};

/// Skeleton of the depth-N tree of a subshift: closed form for full shifts,
/// otherwise read off a language table (whose stabilization is reported
/// through `stabilized` when given).
BranchingSkeleton skeleton_for(const SubshiftSpec& spec, std::size_t depth,
                               const TableOptions& options = {}, bool* stabilized = nullptr);

}  // namespace subshift

#endif  // SUBSHIFT_SKELETON_HPP
