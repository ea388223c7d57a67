// SPDX-License-Identifier: Apache-2.0

#include "subshift/skeleton.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace subshift {

namespace {

struct Draft {
  std::uint32_t level = 0;
  std::uint32_t position = 0;
  std::vector<std::uint32_t> children;
};

// Breadth-first renumbering of a draft tree rooted at `root`.
void flatten(const std::vector<Draft>& draft, std::uint32_t root,
             std::vector<BranchingSkeleton::Node>& nodes,
             std::vector<BranchingSkeleton::Edge>& edges) {
  std::vector<std::uint32_t> order{root};
  order.reserve(draft.size());
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (auto c : draft[order[head]].children) order.push_back(c);
  }
  std::vector<std::uint32_t> id(draft.size());
  for (std::size_t i = 0; i < order.size(); ++i) id[order[i]] = static_cast<std::uint32_t>(i);
  nodes.resize(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Draft& d = draft[order[i]];
    auto& n = nodes[i];
    n.level = d.level;
    n.position = d.position;
    n.branching = d.children.size() > 1 ? static_cast<std::uint32_t>(d.children.size() - 1) : 0;
    n.edge_begin = static_cast<std::uint32_t>(edges.size());
    n.edge_count = static_cast<std::uint32_t>(d.children.size());
    for (auto c : d.children) edges.push_back({id[c], 1});
  }
}

}  // namespace

BranchingSkeleton BranchingSkeleton::from_table(const LanguageTable& table) {
  const std::size_t N = table.depth();
  if (auto dead = table.dead_end()) {
    throw std::domain_error("skeleton: word '" + std::string(*dead) +
                            "' has no right extension in the table");
  }
  const std::string_view text = table.text();
  const auto& sa = table.suffix_array();
  const auto& lcp = table.lcp_array();
  const std::size_t L = text.size();

  std::vector<Draft> draft;
  draft.push_back({0, 0, {}});
  std::vector<std::uint32_t> stack{0};
  bool first = true;
  std::uint32_t running = 0;
  std::size_t leaves = 0;
  for (std::size_t i = 0; i < L; ++i) {
    running = i == 0 ? 0 : std::min(running, lcp[i]);
    if (L - sa[i] < N) continue;
    const std::uint32_t h = first ? 0 : std::min<std::uint32_t>(running, static_cast<std::uint32_t>(N));
    running = static_cast<std::uint32_t>(N);
    if (!first && h == N) continue;  // same depth-N word as the previous leaf
    if (!first) {
      std::uint32_t last = UINT32_MAX;
      while (draft[stack.back()].level > h) {
        last = stack.back();
        stack.pop_back();
        if (draft[stack.back()].level < h) {
          draft.push_back({h, draft[last].position, {last}});
          stack.push_back(static_cast<std::uint32_t>(draft.size() - 1));
          last = UINT32_MAX;
          break;
        }
        draft[stack.back()].children.push_back(last);
      }
    }
    first = false;
    draft.push_back({static_cast<std::uint32_t>(N), sa[i], {}});
    stack.push_back(static_cast<std::uint32_t>(draft.size() - 1));
    ++leaves;
  }
  if (leaves == 0) {
    throw std::domain_error("skeleton: the table has no word of length " + std::to_string(N));
  }
  while (stack.size() > 1) {
    const auto last = stack.back();
    stack.pop_back();
    draft[stack.back()].children.push_back(last);
  }
  if (leaves != table.count(N)) {
    throw std::logic_error("skeleton: leaf count disagrees with the table");
  }
  draft[0].position = draft[draft[0].children.front()].position;

  BranchingSkeleton s;
  s.depth_ = N;
  s.text_ = std::make_shared<const std::string>(text);
  flatten(draft, 0, s.nodes_, s.edges_);
  return s;
}

BranchingSkeleton BranchingSkeleton::from_tree(const MichonTree& tree) {
  const std::size_t N = tree.depth();
  std::vector<Draft> draft;
  std::vector<std::pair<NodeId, std::uint32_t>> work{{tree.root(), 0}};
  draft.push_back({0, 0, {}});
  std::string text;
  while (!work.empty()) {
    auto [v, d] = work.back();
    work.pop_back();
    const std::size_t count = tree.child_count(v);
    for (std::size_t i = count; i-- > 0;) {
      NodeId c = tree.first_child(v) + static_cast<NodeId>(i);
      while (!tree.is_leaf(c) && tree.child_count(c) == 1) c = tree.first_child(c);
      draft.push_back({static_cast<std::uint32_t>(tree.level(c)), 0, {}});
      const auto id = static_cast<std::uint32_t>(draft.size() - 1);
      draft[d].children.push_back(id);
      work.emplace_back(c, id);
    }
    std::reverse(draft[d].children.begin(), draft[d].children.end());
    if (tree.is_leaf(v)) {
      draft[d].position = static_cast<std::uint32_t>(text.size());
      text.append(tree.word(v));
    }
  }
  // Leaves of a subtree are consecutive in the text only by lexicographic
  // order; point internal nodes at their least leaf.
  for (std::size_t i = draft.size(); i-- > 0;) {
    if (!draft[i].children.empty()) draft[i].position = draft[draft[i].children.front()].position;
  }

  BranchingSkeleton s;
  s.depth_ = N;
  s.text_ = std::make_shared<const std::string>(std::move(text));
  flatten(draft, 0, s.nodes_, s.edges_);
  return s;
}

BranchingSkeleton BranchingSkeleton::full_shift(std::size_t k, std::size_t depth) {
  if (k == 0 || k > max_alphabet) throw std::invalid_argument("skeleton: alphabet size out of range");
  BranchingSkeleton s;
  s.depth_ = depth;
  s.text_ = std::make_shared<const std::string>(depth, 'a');
  for (std::size_t n = 0; n <= depth; ++n) {
    Node node;
    node.level = static_cast<std::uint32_t>(n);
    node.log_copies = static_cast<double>(n) * std::log(static_cast<double>(k));
    if (n < depth) {
      node.branching = static_cast<std::uint32_t>(k - 1);
      node.edge_begin = static_cast<std::uint32_t>(s.edges_.size());
      node.edge_count = 1;
      s.edges_.push_back({static_cast<std::uint32_t>(n + 1), static_cast<std::uint32_t>(k)});
    }
    s.nodes_.push_back(node);
  }
  return s;
}

std::string_view BranchingSkeleton::word(std::uint32_t v) const {
  return std::string_view(*text_).substr(nodes_[v].position, nodes_[v].level);
}

std::string BranchingSkeleton::extend(std::uint32_t v, std::size_t length) const {
  if (length < nodes_[v].level || length > depth_) {
    throw std::out_of_range("skeleton: extension length out of range");
  }
  return std::string(std::string_view(*text_).substr(nodes_[v].position, length));
}

BranchingSkeleton::LevelSums BranchingSkeleton::level_sums() const {
  LevelSums sums;
  sums.branching.assign(depth_, 0.0L);
  sums.g.assign(depth_, 0.0L);
  sums.oriented.assign(depth_, 0.0L);
  for (const auto& n : nodes_) {
    if (n.branching == 0 || n.level >= depth_) continue;
    long double copies = std::exp(static_cast<long double>(n.log_copies));
    if (copies < 1e18L) copies = std::nearbyint(copies);  // vertex counts are integers
    const long double a = n.branching;
    sums.branching[n.level] += copies;
    sums.g[n.level] += copies * a;
    sums.oriented[n.level] += copies * a * (a + 1);
  }
  return sums;
}

BranchingSkeleton skeleton_for(const SubshiftSpec& spec, std::size_t depth,
                               const TableOptions& options, bool* stabilized) {
  if (const auto* full = std::get_if<FullShiftSpec>(&spec)) {
    if (stabilized) *stabilized = true;
    return BranchingSkeleton::full_shift(full->k, depth);
  }
  TableOptions opts = options;
  opts.materialize_words = false;
  const auto table = LanguageTable::build(spec, depth, opts);
  if (stabilized) *stabilized = table.fully_stabilized();
  return BranchingSkeleton::from_table(table);
}

}  // namespace subshift
