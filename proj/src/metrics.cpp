// SPDX-License-Identifier: Apache-2.0

#include "subshift/metrics.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace subshift {

double ultrametric_distance(std::string_view xi, std::string_view eta, const DeltaSequence& delta) {
  if (xi.size() != eta.size()) {
    throw std::invalid_argument("ultrametric_distance: depths differ (" + std::to_string(xi.size()) +
                                " vs " + std::to_string(eta.size()) + ")");
  }
  const auto diff = std::mismatch(xi.begin(), xi.end(), eta.begin());
  if (diff.first == xi.end()) return 0.0;
  return delta[static_cast<std::size_t>(diff.first - xi.begin())];
}

namespace {

void require_leaf(const MichonTree& tree, NodeId v) {
  if (v >= tree.size() || !tree.is_leaf(v)) {
    throw std::invalid_argument("metrics: points must be depth-N leaves");
  }
}

std::vector<NodeId> path_of(const MichonTree& tree, NodeId leaf) {
  std::vector<NodeId> path(tree.depth() + 1);
  for (NodeId v = leaf;; v = tree.parent(v)) {
    path[tree.level(v)] = v;
    if (v == tree.root()) break;
  }
  return path;
}

double tail_sum(const std::vector<std::uint8_t>& bits, std::size_t m, const DeltaSequence& delta) {
  double sum = 0;
  for (std::size_t n = m + 1; n < bits.size(); ++n) {
    if (bits[n]) sum += delta[n];
  }
  return sum;
}

}  // namespace

std::vector<std::uint8_t> beta_profile(const MichonTree& tree, const ChoiceFunction& tau, NodeId xi) {
  require_leaf(tree, xi);
  const auto path = path_of(tree, xi);
  std::vector<std::uint8_t> bits(tree.depth(), 0);
  for (std::size_t n = 0; n < tree.depth(); ++n) bits[n] = tau.selected(path[n]) != path[n + 1];
  return bits;
}

std::vector<std::uint8_t> sup_beta_profile(const MichonTree& tree, NodeId xi) {
  require_leaf(tree, xi);
  const auto path = path_of(tree, xi);
  std::vector<std::uint8_t> bits(tree.depth(), 0);
  for (std::size_t n = 0; n < tree.depth(); ++n) bits[n] = tree.branching(path[n]) > 0;
  return bits;
}

double spectral_distance(const MichonTree& tree, const ChoiceFunction& tau,
                         const DeltaSequence& delta, NodeId xi, NodeId eta) {
  require_leaf(tree, xi);
  require_leaf(tree, eta);
  if (xi == eta) return 0.0;
  const std::size_t m = tree.common_level(xi, eta);
  return delta[m] + tail_sum(beta_profile(tree, tau, xi), m, delta) +
         tail_sum(beta_profile(tree, tau, eta), m, delta);
}

double sup_spectral_distance(const MichonTree& tree, const DeltaSequence& delta, NodeId xi, NodeId eta) {
  require_leaf(tree, xi);
  require_leaf(tree, eta);
  if (xi == eta) return 0.0;
  const std::size_t m = tree.common_level(xi, eta);
  return delta[m] + tail_sum(sup_beta_profile(tree, xi), m, delta) +
         tail_sum(sup_beta_profile(tree, eta), m, delta);
}

double inf_spectral_distance(const MichonTree& tree, const DeltaSequence& delta, NodeId xi, NodeId eta) {
  require_leaf(tree, xi);
  require_leaf(tree, eta);
  return ultrametric_distance(tree.word(xi), tree.word(eta), delta);
}

std::optional<double> truncation_tail(const DeltaSequence& delta, std::size_t N) {
  if (N == 0) return std::nullopt;
  return delta.tail_bound(N - 1);
}

double graph_distance(const MetricGraph& graph, std::uint32_t u, std::uint32_t v) {
  const std::size_t V = graph.vertex_count();
  if (u >= V || v >= V) throw std::out_of_range("graph_distance: vertex out of range");
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(V, inf);
  using Item = std::pair<double, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[u] = 0;
  heap.emplace(0.0, u);
  while (!heap.empty()) {
    auto [d, x] = heap.top();
    heap.pop();
    if (d > dist[x]) continue;
    if (x == v) return d;
    for (const auto& [y, len] : graph.adjacency[x]) {
      if (d + len < dist[y]) {
        dist[y] = d + len;
        heap.emplace(dist[y], y);
      }
    }
  }
  throw std::logic_error("graph_distance: vertex " + std::to_string(v) + " unreachable from " +
                         std::to_string(u) + " (approximation graph is disconnected)");
}

namespace {

// R(v) = T(v) / delta_{level v}, with the first maximizing edge per node.
struct ScaledDP {
  std::vector<double> R;
  std::vector<std::uint32_t> best;
};

ScaledDP scaled_dp(const BranchingSkeleton& s, const DeltaSequence& delta) {
  const std::size_t N = s.depth();
  if (N > 0) delta.require_decreasing(N - 1);
  ScaledDP dp;
  dp.R.assign(s.size(), 0.0);
  dp.best.assign(s.size(), UINT32_MAX);
  for (std::size_t i = s.size(); i-- > 0;) {
    const auto v = static_cast<std::uint32_t>(i);
    const auto& node = s.node(v);
    double best = -1;
    for (const auto& e : s.edges(v)) {
      const auto& c = s.node(e.child);
      const double gain = (c.branching > 0 && c.level < N ? 1.0 : 0.0) + dp.R[e.child];
      const double value = delta.ratio(c.level, node.level) * gain;
      if (value > best) {
        best = value;
        dp.best[v] = e.child;
      }
    }
    dp.R[v] = std::max(best, 0.0);
  }
  return dp;
}

std::string descend(const BranchingSkeleton& s, const ScaledDP& dp, std::uint32_t v) {
  while (dp.best[v] != UINT32_MAX) v = dp.best[v];
  return std::string(s.word(v));
}

}  // namespace

LipschitzReport lipschitz_estimate(const BranchingSkeleton& s, const DeltaSequence& delta) {
  const auto dp = scaled_dp(s, delta);
  LipschitzReport report;
  report.depth = s.depth();
  std::vector<double> level_max(s.depth(), -1.0);
  std::uint32_t arg = UINT32_MAX;
  for (std::uint32_t v = 0; v < s.size(); ++v) {
    const auto& node = s.node(v);
    if (node.branching == 0 || node.level >= s.depth()) continue;
    level_max[node.level] = std::max(level_max[node.level], dp.R[v]);
    // Ties go to the shallower, then lexicographically smaller vertex.
    if (arg == UINT32_MAX || dp.R[v] > report.C ||
        (dp.R[v] == report.C && (node.level < s.node(arg).level ||
                                 (node.level == s.node(arg).level && s.word(v) < s.word(arg))))) {
      report.C = dp.R[v];
      arg = v;
    }
  }
  for (std::size_t m = 0; m < level_max.size(); ++m) {
    if (level_max[m] >= 0) report.per_level.emplace_back(m, level_max[m]);
  }
  if (arg != UINT32_MAX) {
    report.witness_word = std::string(s.word(arg));
    report.witness_path = descend(s, dp, arg);
  }
  return report;
}

ContinuityReport continuity_witness(const BranchingSkeleton& s, const DeltaSequence& delta) {
  const auto dp = scaled_dp(s, delta);
  ContinuityReport report;
  report.depth = s.depth();
  report.W = delta[0] * dp.R[0];
  report.witness_path = descend(s, dp, 0);
  return report;
}

double path_deviation_sum(const MichonTree& tree, std::string_view word, const DeltaSequence& delta) {
  if (word.size() > tree.depth()) throw std::invalid_argument("path_deviation_sum: word too long");
  NodeId v = tree.root();
  double sum = 0;
  for (std::size_t n = 0; n < tree.depth(); ++n) {
    if (n > 0 && tree.branching(v) > 0) sum += delta[n];
    NodeId next = tree.first_child(v);
    if (n < word.size()) {
      const auto found = tree.find(word.substr(0, n + 1));
      if (!found) throw std::invalid_argument("path_deviation_sum: '" + std::string(word) + "' is not a tree word");
      next = *found;
    }
    v = next;
  }
  return sum;
}

const char* trend_name(Trend t) noexcept {
  switch (t) {
    case Trend::bounded:
      return "yes";
    case Trend::unbounded:
      return "no";
    case Trend::undecided:
      return "undecided";
  }
  return "?";
}

double relative_growth(double previous, double last) {
  if (previous == 0) return last == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  return (last - previous) / previous;
}

Trend classify_trend(double previous, double last, const TrendPolicy& policy) {
  const double growth = relative_growth(previous, last);
  if (growth < policy.bounded_growth) return Trend::bounded;
  if (growth > policy.unbounded_growth) return Trend::unbounded;
  return Trend::undecided;
}

DivergentConstruction divergent_construction(const DeltaSequence& delta, std::uint64_t length_budget) {
  DivergentConstruction out;
  std::uint64_t len_a = 1, len_b = 1;
  for (std::size_t i = 0;; ++i) {
    const std::uint64_t u = i % 2 == 0 ? len_a : len_b;
    const std::uint64_t grown = i % 2 == 0 ? len_b : len_a;
    if (grown + u > length_budget) break;
    const std::uint64_t mu_max = (length_budget - grown) / u;
    const double target = static_cast<double>(i + 1);
    double sum = 0;
    std::uint64_t mu = 0;
    while (mu < mu_max && sum < target) {
      ++mu;
      sum += delta[static_cast<std::size_t>(mu * u)];
    }
    out.cf.prefix.push_back(mu);
    out.stage_sums.push_back(sum);
    out.period_lengths.push_back(u);
    (i % 2 == 0 ? len_b : len_a) = grown + mu * u;
    out.length = grown + mu * u;
    if (sum < target) {
      out.last_stage_truncated = true;
      break;
    }
  }
  if (out.cf.prefix.empty()) throw std::invalid_argument("divergent_construction: budget too small");
  CoefficientRule ones;
  ones.kind = CoefficientRule::Kind::constant;
  ones.offset = 1;
  out.cf.tail = ones;
  return out;
}

}  // namespace subshift
