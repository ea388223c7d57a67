// SPDX-License-Identifier: Apache-2.0

#include "subshift/tree.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace subshift {

MichonTree MichonTree::build(const LanguageTable& table, std::size_t max_nodes) {
  const std::size_t N = table.depth();
  if (auto dead = table.dead_end()) {
    throw std::domain_error("build_tree: word '" + std::string(*dead) +
                            "' has no right extension in the table");
  }
  const std::string_view text = table.text();
  const auto& sa = table.suffix_array();
  const auto& lcp = table.lcp_array();
  const std::size_t L = text.size();

  // Suffixes long enough to spell a depth-N word, with the LCP to the
  // previous such suffix (capped at N).
  std::vector<std::uint32_t> rank_of;
  std::vector<std::uint32_t> rlcp;
  std::uint32_t running = 0;
  for (std::size_t i = 0; i < L; ++i) {
    running = i == 0 ? 0 : std::min(running, lcp[i]);
    if (L - sa[i] < N) continue;
    rlcp.push_back(rank_of.empty() ? 0 : std::min<std::uint32_t>(running, static_cast<std::uint32_t>(N)));
    rank_of.push_back(static_cast<std::uint32_t>(i));
    running = static_cast<std::uint32_t>(N);
  }
  if (rank_of.empty()) {
    throw std::domain_error("build_tree: the table has no word of length " + std::to_string(N));
  }

  std::size_t total = 1;
  for (std::size_t j = 1; j < rlcp.size(); ++j) total += N - rlcp[j];
  total += N;  // the first suffix leads every level
  if (total > max_nodes) {
    throw std::length_error("build_tree: " + std::to_string(total) + " nodes exceed the limit of " +
                            std::to_string(max_nodes));
  }

  // Leaders per level, in lexicographic order.
  std::vector<std::vector<std::uint32_t>> leaders(N + 1);
  for (std::size_t j = 0; j < rank_of.size(); ++j) {
    const std::size_t lo = j == 0 ? 0 : rlcp[j] + 1;
    for (std::size_t n = lo; n <= N; ++n) leaders[n].push_back(static_cast<std::uint32_t>(j));
  }

  MichonTree tree;
  tree.text_ = std::make_shared<const std::string>(text);
  tree.level_begin_.assign(N + 2, 0);
  for (std::size_t n = 0; n <= N; ++n) {
    tree.level_begin_[n + 1] = tree.level_begin_[n] + static_cast<NodeId>(leaders[n].size());
  }
  tree.nodes_.resize(tree.level_begin_[N + 1]);
  for (std::size_t n = 0; n <= N; ++n) {
    for (std::size_t k = 0; k < leaders[n].size(); ++k) {
      Node& node = tree.nodes_[tree.level_begin_[n] + k];
      node.level = static_cast<std::uint32_t>(n);
      node.position = sa[rank_of[leaders[n][k]]];
    }
  }
  // Leaders at level n-1 are a subset of those at level n; the parent of a
  // level-n leader is the last level-(n-1) leader not after it.
  for (std::size_t n = 1; n <= N; ++n) {
    const auto& up = leaders[n - 1];
    const auto& down = leaders[n];
    std::size_t p = 0;
    for (std::size_t k = 0; k < down.size(); ++k) {
      while (p + 1 < up.size() && up[p + 1] <= down[k]) ++p;
      const NodeId child = tree.level_begin_[n] + static_cast<NodeId>(k);
      const NodeId par = tree.level_begin_[n - 1] + static_cast<NodeId>(p);
      tree.nodes_[child].parent = par;
      Node& pn = tree.nodes_[par];
      if (pn.child_count == 0) pn.first_child = child;
      ++pn.child_count;
    }
  }

  for (std::size_t n = 0; n <= N; ++n) {
    if (tree.level_size(n) == table.count(n)) continue;
    std::string orphan;
    if (table.has_words()) {
      for (auto w : table.words(n)) {
        if (!tree.find(w)) {
          orphan = std::string(w);
          break;
        }
      }
    }
    throw std::domain_error("build_tree: table word '" + orphan + "' of length " +
                            std::to_string(n) + " does not extend to depth " + std::to_string(N));
  }
  return tree;
}

std::string_view MichonTree::word(NodeId v) const {
  return std::string_view(*text_).substr(nodes_[v].position, nodes_[v].level);
}

NodeId MichonTree::ancestor(NodeId v, std::size_t n) const {
  if (n > level(v)) throw std::out_of_range("ancestor: level below the node");
  while (level(v) > n) v = parent(v);
  return v;
}

std::size_t MichonTree::common_level(NodeId x, NodeId y) const {
  while (level(x) > level(y)) x = parent(x);
  while (level(y) > level(x)) y = parent(y);
  while (x != y) {
    x = parent(x);
    y = parent(y);
  }
  return level(x);
}

std::optional<NodeId> MichonTree::find(std::string_view w) const {
  if (w.size() > depth()) return std::nullopt;
  const std::size_t n = w.size();
  NodeId lo = level_begin(n), hi = level_begin(n + 1);
  while (lo < hi) {
    const NodeId mid = lo + (hi - lo) / 2;
    if (word(mid) < w) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < level_begin(n + 1) && word(lo) == w) return lo;
  return std::nullopt;
}

std::vector<HorizontalEdge> horizontal_edges(const MichonTree& tree, std::size_t level) {
  if (level == 0 || level > tree.depth()) {
    throw std::out_of_range("horizontal_edges: level must be in 1..depth");
  }
  std::vector<HorizontalEdge> out;
  const NodeId begin = tree.level_begin(level - 1), end = tree.level_begin(level);
  for (NodeId p = begin; p < end; ++p) {
    const NodeId first = tree.first_child(p);
    const NodeId count = static_cast<NodeId>(tree.child_count(p));
    for (NodeId i = 0; i < count; ++i) {
      for (NodeId j = i + 1; j < count; ++j) out.push_back({level, first + i, first + j});
    }
  }
  return out;
}

namespace {

std::vector<NodeId> representatives(const MichonTree& tree, const std::vector<NodeId>& selected) {
  std::vector<NodeId> rep(tree.size());
  for (NodeId v = static_cast<NodeId>(tree.size()); v-- > 0;) {
    rep[v] = tree.is_leaf(v) ? v : rep[selected[v]];
  }
  return rep;
}

}  // namespace

ChoiceFunction ChoiceFunction::from_selection(const MichonTree& tree, std::vector<NodeId> selected) {
  if (selected.size() != tree.size()) {
    throw std::invalid_argument("choice_function: selection size does not match the tree");
  }
  for (NodeId v = 0; v < tree.size(); ++v) {
    if (tree.is_leaf(v)) {
      selected[v] = no_node;
      continue;
    }
    if (selected[v] == no_node || tree.parent(selected[v]) != v) {
      throw std::invalid_argument("choice_function: selection at '" + std::string(tree.word(v)) +
                                  "' is not a child");
    }
  }
  ChoiceFunction tau;
  tau.representative_ = representatives(tree, selected);
  tau.selected_ = std::move(selected);
  return tau;
}

ChoiceFunction choice_function(const MichonTree& tree, const ChoiceFunction::Policy& policy) {
  std::vector<NodeId> selected(tree.size(), no_node);
  for (NodeId v = 0; v < tree.size(); ++v) {
    if (!tree.is_leaf(v)) selected[v] = tree.first_child(v);
  }

  if (const auto* random = std::get_if<ChoiceFunction::SeededRandom>(&policy)) {
    std::mt19937_64 rng(random->seed);
    for (NodeId v = 0; v < tree.size(); ++v) {
      if (tree.is_leaf(v)) continue;
      selected[v] = tree.first_child(v) + static_cast<NodeId>(rng() % tree.child_count(v));
    }
  } else if (const auto* adv = std::get_if<ChoiceFunction::AdversarialPath>(&policy)) {
    const std::size_t N = tree.depth();
    if (adv->leaf >= tree.size() || !tree.is_leaf(adv->leaf)) {
      throw std::invalid_argument("choice_function: adversarial path must end at a leaf");
    }
    if (adv->bits.size() != N) {
      throw std::invalid_argument("choice_function: expected " + std::to_string(N) + " bits");
    }
    std::vector<NodeId> path(N + 1);
    for (NodeId v = adv->leaf;; v = tree.parent(v)) {
      path[tree.level(v)] = v;
      if (v == tree.root()) break;
    }
    for (std::size_t n = 0; n < N; ++n) {
      const NodeId here = path[n], next = path[n + 1];
      if (adv->bits[n] == 0) {
        selected[here] = next;
        continue;
      }
      if (tree.branching(here) == 0) {
        throw std::domain_error("choice_function: infeasible deviation at level " +
                                std::to_string(n) + " (vertex '" + std::string(tree.word(here)) +
                                "' does not branch)");
      }
      selected[here] = tree.first_child(here) == next ? next + 1 : tree.first_child(here);
    }
  }
  return ChoiceFunction::from_selection(tree, std::move(selected));
}

bool MetricGraph::connected() const {
  if (labels.empty()) return true;
  std::vector<bool> seen(labels.size(), false);
  std::vector<std::uint32_t> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const auto u = stack.back();
    stack.pop_back();
    for (const auto& [v, len] : adjacency[u]) {
      if (!seen[v]) {
        seen[v] = true;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == labels.size();
}

MetricGraph approximation_graph(const MichonTree& tree, const ChoiceFunction& tau,
                                const DeltaSequence& delta) {
  const std::size_t N = tree.depth();
  if (N > 0) delta.require_decreasing(N - 1);
  MetricGraph g;
  const NodeId first_leaf = tree.level_begin(N);
  g.labels.reserve(tree.leaf_count());
  for (std::size_t i = 0; i < tree.leaf_count(); ++i) g.labels.emplace_back(tree.word(tree.leaf(i)));

  std::unordered_map<std::uint64_t, std::size_t> index;
  for (std::size_t n = 1; n <= N; ++n) {
    const double length = delta[n - 1];
    for (const auto& e : horizontal_edges(tree, n)) {
      std::uint32_t a = tau.representative(e.u) - first_leaf;
      std::uint32_t b = tau.representative(e.v) - first_leaf;
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      const std::uint64_t key = (std::uint64_t{a} << 32) | b;
      auto [it, inserted] = index.emplace(key, g.edges.size());
      if (inserted) {
        g.edges.push_back({a, b, length, n});
      } else if (length < g.edges[it->second].length) {
        g.edges[it->second].length = length;
        g.edges[it->second].level = n;
      }
    }
  }
  g.adjacency.assign(g.labels.size(), {});
  for (const auto& e : g.edges) {
    g.adjacency[e.u].emplace_back(e.v, e.length);
    g.adjacency[e.v].emplace_back(e.u, e.length);
  }
  return g;
}

}  // namespace subshift
