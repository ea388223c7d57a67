// SPDX-License-Identifier: Apache-2.0

#ifndef SUBSHIFT_METRICS_HPP
#define SUBSHIFT_METRICS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "subshift/delta.hpp"
#include "subshift/skeleton.hpp"
#include "subshift/tree.hpp"
#include "subshift/words.hpp"

namespace subshift {

/// Points are depth-N leaves (equivalently depth-N words); sums stop at N - 1.

/// delta_{lcp(xi, eta)}, or 0 when the words agree.
double ultrametric_distance(std::string_view xi, std::string_view eta, const DeltaSequence& delta);

/// beta[n] for n = 0..N-1: 1 when tau does not select xi_{n+1} at xi_n.
std::vector<std::uint8_t> beta_profile(const MichonTree& tree, const ChoiceFunction& tau, NodeId xi);
/// beta-bar[n] = [a(xi_n) > 0].
std::vector<std::uint8_t> sup_beta_profile(const MichonTree& tree, NodeId xi);

double spectral_distance(const MichonTree& tree, const ChoiceFunction& tau,
                         const DeltaSequence& delta, NodeId xi, NodeId eta);
double sup_spectral_distance(const MichonTree& tree, const DeltaSequence& delta, NodeId xi, NodeId eta);
/// The infimum over choice functions is the ultrametric distance itself.
double inf_spectral_distance(const MichonTree& tree, const DeltaSequence& delta, NodeId xi, NodeId eta);

/// Bound on the neglected tail sum_{n >= N} delta_n, when available.
std::optional<double> truncation_tail(const DeltaSequence& delta, std::size_t N);

/// Dijkstra. Throws std::logic_error when v is unreachable from u.
double graph_distance(const MetricGraph& graph, std::uint32_t u, std::uint32_t v);

struct LipschitzReport {
  std::size_t depth = 0;
  double C = 0;
  std::string witness_word;  // branching vertex attaining C (empty when none)
  std::string witness_path;  // depth-N word below it realizing T(v)
  /// (m, max over branching level-m vertices of T(v) / delta_m)
  std::vector<std::pair<std::size_t, double>> per_level;
};
LipschitzReport lipschitz_estimate(const BranchingSkeleton& skeleton, const DeltaSequence& delta);

struct ContinuityReport {
  std::size_t depth = 0;
  double W = 0;
  std::string witness_path;
};
ContinuityReport continuity_witness(const BranchingSkeleton& skeleton, const DeltaSequence& delta);

/// sum_{n=1}^{N-1} [a(xi_n) > 0] delta_n along the tree path spelled by `word`
/// (|word| <= N), continued below by first children.
double path_deviation_sum(const MichonTree& tree, std::string_view word, const DeltaSequence& delta);

enum class Trend { bounded, unbounded, undecided };
const char* trend_name(Trend t) noexcept;
struct TrendPolicy {
  double bounded_growth = 0.01;    // relative growth below: bounded
  double unbounded_growth = 0.25;  // above: unbounded
};
/// Verdict from the relative growth (last - previous) / previous.
Trend classify_trend(double previous, double last, const TrendPolicy& policy = {});
double relative_growth(double previous, double last);

/// Continued fraction whose stage sums sum_{j=1}^{mu_i} delta_{j |u_i|} reach
/// i + 1, each mu_i the least such value. Stages stop once the characteristic
/// word would exceed `length_budget`; the last stage then takes the largest
/// coefficient that fits.
struct DivergentConstruction {
  SturmianCF cf;
  std::vector<double> stage_sums;
  std::vector<std::uint64_t> period_lengths;  // |u_i|
  bool last_stage_truncated = false;
  std::uint64_t length = 0;                   // |R| after the last stage
};
DivergentConstruction divergent_construction(const DeltaSequence& delta, std::uint64_t length_budget);

}  // namespace subshift

#endif  // SUBSHIFT_METRICS_HPP
