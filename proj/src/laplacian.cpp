// SPDX-License-Identifier: Apache-2.0

#include "subshift/laplacian.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace subshift {

CylinderMeasure CylinderMeasure::from_weights(const MichonTree& tree, std::vector<double> weights) {
  if (weights.size() != tree.size()) {
    throw std::invalid_argument("cylinder_measure: expected " + std::to_string(tree.size()) +
                                " weights, got " + std::to_string(weights.size()));
  }
  weights[tree.root()] = 1.0;
  for (NodeId v = 0; v < tree.size(); ++v) {
    if (!(weights[v] > 0) || !std::isfinite(weights[v])) {
      throw std::invalid_argument("cylinder_measure: weight of '" + std::string(tree.word(v)) +
                                  "' is not positive");
    }
    if (tree.is_leaf(v)) continue;
    double sum = 0;
    for (std::size_t i = 0; i < tree.child_count(v); ++i) {
      sum += weights[tree.first_child(v) + i];
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      throw std::invalid_argument("cylinder_measure: weights below '" + std::string(tree.word(v)) +
                                  "' sum to " + std::to_string(sum));
    }
  }
  CylinderMeasure m;
  m.mass_.assign(tree.size(), 1.0);
  for (NodeId v = 1; v < tree.size(); ++v) m.mass_[v] = m.mass_[tree.parent(v)] * weights[v];
  m.weight_ = std::move(weights);
  return m;
}

CylinderMeasure CylinderMeasure::uniform(const MichonTree& tree) {
  std::vector<double> w(tree.size(), 1.0);
  for (NodeId v = 1; v < tree.size(); ++v) {
    w[v] = 1.0 / static_cast<double>(tree.child_count(tree.parent(v)));
  }
  return from_weights(tree, std::move(w));
}

CylinderMeasure CylinderMeasure::random(const MichonTree& tree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> w(tree.size(), 1.0);
  for (NodeId v = 0; v < tree.size(); ++v) {
    if (tree.is_leaf(v)) continue;
    const NodeId first = tree.first_child(v);
    const std::size_t count = tree.child_count(v);
    double sum = 0;
    for (std::size_t i = 0; i < count; ++i) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      w[first + i] = 0.05 + 0.95 * u;
      sum += w[first + i];
    }
    for (std::size_t i = 0; i < count; ++i) w[first + i] /= sum;
  }
  return from_weights(tree, std::move(w));
}

double Density::level_weight(std::size_t n, const DeltaSequence& delta) const {
  if (n == 0) throw std::out_of_range("density: levels start at 1");
  const double L = delta[n - 1];
  double rho = 0;
  if (table.empty()) {
    rho = std::exp(exponent * delta.log_value(n - 1));
  } else {
    if (n > table.size()) {
      throw std::out_of_range("density: table has no value for level " + std::to_string(n));
    }
    rho = table[n - 1];
  }
  if (!(rho > 0)) throw std::domain_error("density: rho must be positive");
  return rho / (L * L);
}

namespace {

struct LeafRange {
  std::uint32_t lo = 0, hi = 0;
};

std::vector<LeafRange> leaf_ranges(const MichonTree& tree) {
  std::vector<LeafRange> r(tree.size());
  const NodeId first_leaf = tree.level_begin(tree.depth());
  for (NodeId v = static_cast<NodeId>(tree.size()); v-- > 0;) {
    if (tree.is_leaf(v)) {
      r[v] = {v - first_leaf, v - first_leaf + 1};
    } else {
      r[v] = {r[tree.first_child(v)].lo,
              r[tree.first_child(v) + static_cast<NodeId>(tree.child_count(v)) - 1].hi};
    }
  }
  return r;
}

void require_measure(const MichonTree& tree, const CylinderMeasure& mu) {
  if (mu.size() != tree.size()) {
    throw std::domain_error("laplacian: measure has " + std::to_string(mu.size()) +
                            " masses for a tree of " + std::to_string(tree.size()) + " vertices");
  }
}

LaplacianMatrix empty_matrix(const MichonTree& tree, const CylinderMeasure& mu) {
  LaplacianMatrix m;
  m.depth = tree.depth();
  const std::size_t L = tree.leaf_count();
  m.M = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(L), static_cast<Eigen::Index>(L));
  for (std::size_t i = 0; i < L; ++i) {
    m.labels.emplace_back(tree.word(tree.leaf(i)));
    m.mu.push_back(mu[tree.leaf(i)]);
  }
  return m;
}

}  // namespace

LaplacianMatrix assemble_laplacian(const MichonTree& tree, const CylinderMeasure& mu,
                                   const Density& rho, const DeltaSequence& delta) {
  require_measure(tree, mu);
  const std::size_t N = tree.depth();
  if (N > 0) delta.require_decreasing(N - 1);
  const auto range = leaf_ranges(tree);
  LaplacianMatrix m = empty_matrix(tree, mu);

  for (std::size_t j = 0; j < tree.leaf_count(); ++j) {
    const NodeId gamma = tree.leaf(j);
    const auto col = static_cast<Eigen::Index>(j);
    NodeId gn = gamma;
    for (std::size_t n = N; n >= 1; --n, gn = tree.parent(gn)) {
      const NodeId parent = tree.parent(gn);
      const std::size_t a = tree.branching(parent);
      if (a == 0) continue;
      const double w = rho.level_weight(n, delta);
      m.M(col, col) += w * static_cast<double>(a) / mu[gn];
      const NodeId first = tree.first_child(parent);
      for (NodeId u = first; u < first + tree.child_count(parent); ++u) {
        if (u == gn) continue;
        const double c = w * mu[gamma] / (mu[gn] * mu[u]);
        for (auto i = range[u].lo; i < range[u].hi; ++i) m.M(static_cast<Eigen::Index>(i), col) -= c;
      }
    }
  }
  return m;
}

double dirichlet_form_value(const MichonTree& tree, const CylinderMeasure& mu, const Density& rho,
                            const DeltaSequence& delta, const std::vector<double>& f,
                            const std::vector<double>& g) {
  require_measure(tree, mu);
  const std::size_t L = tree.leaf_count();
  if (f.size() != L || g.size() != L) {
    throw std::invalid_argument("dirichlet_form: expected " + std::to_string(L) + " coefficients");
  }
  const std::size_t N = tree.depth();
  const auto range = leaf_ranges(tree);
  std::vector<double> Ef(tree.size()), Eg(tree.size()), Efg(tree.size());
  for (NodeId u = 0; u < tree.size(); ++u) {
    double sf = 0, sg = 0, sfg = 0;
    for (auto i = range[u].lo; i < range[u].hi; ++i) {
      const double p = mu[tree.leaf(i)] / mu[u];
      sf += f[i] * p;
      sg += g[i] * p;
      sfg += f[i] * g[i] * p;
    }
    Ef[u] = sf;
    Eg[u] = sg;
    Efg[u] = sfg;
  }

  double Q = 0;
  for (std::size_t n = 1; n <= N; ++n) {
    double q = 0;
    for (NodeId p = tree.level_begin(n - 1); p < tree.level_begin(n); ++p) {
      const NodeId first = tree.first_child(p);
      const NodeId end = first + static_cast<NodeId>(tree.child_count(p));
      for (NodeId u = first; u < end; ++u) {
        for (NodeId v = first; v < end; ++v) {
          if (u == v) continue;
          q += 0.5 * (Efg[u] - Ef[u] * Eg[v] - Ef[v] * Eg[u] + Efg[v]);
        }
      }
    }
    if (q != 0) Q += rho.level_weight(n, delta) * q;
  }
  return Q;
}

LaplacianMatrix assemble_from_dirichlet_form(const MichonTree& tree, const CylinderMeasure& mu,
                                             const Density& rho, const DeltaSequence& delta) {
  require_measure(tree, mu);
  LaplacianMatrix m = empty_matrix(tree, mu);
  const std::size_t L = tree.leaf_count();
  std::vector<double> ei(L, 0.0), ej(L, 0.0);
  for (std::size_t j = 0; j < L; ++j) {
    ej[j] = 1;
    for (std::size_t i = 0; i < L; ++i) {
      ei[i] = 1;
      m.M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          dirichlet_form_value(tree, mu, rho, delta, ej, ei) / m.mu[i];
      ei[i] = 0;
    }
    ej[j] = 0;
  }
  return m;
}

LaplacianMatrix assemble_pb_laplacian(const MichonTree& tree, const CylinderMeasure& mu,
                                      const Density& rho, const DeltaSequence& delta,
                                      const PairSelection& selection) {
  require_measure(tree, mu);
  const std::size_t N = tree.depth();
  if (N > 0) delta.require_decreasing(N - 1);

  for (const auto& [v, pair] : selection.pairs) {
    const bool ok = v < tree.size() && !tree.is_leaf(v) && pair.first != pair.second &&
                    pair.first < tree.size() && pair.second < tree.size() &&
                    tree.parent(pair.first) == v && tree.parent(pair.second) == v;
    if (!ok) {
      throw std::invalid_argument("pb_laplacian: selected pair at vertex " + std::to_string(v) +
                                  " is not a pair of distinct children");
    }
  }

  // weight[v] lists (u1, u2, omega) for the pairs kept below v.
  struct Pair {
    NodeId u1, u2;
    double omega;
  };
  std::vector<std::vector<Pair>> kept(tree.size());
  for (NodeId v = 0; v < tree.size(); ++v) {
    if (tree.branching(v) == 0) continue;
    const NodeId first = tree.first_child(v);
    const NodeId end = first + static_cast<NodeId>(tree.child_count(v));
    if (selection.mode == PairSelection::Mode::single) {
      const auto it = selection.pairs.find(v);
      auto pair = it == selection.pairs.end() ? std::pair{first, first + 1} : it->second;
      kept[v].push_back({pair.first, pair.second, 1.0});
    } else {
      double total = 0;
      for (NodeId u1 = first; u1 < end; ++u1) {
        for (NodeId u2 = u1 + 1; u2 < end; ++u2) total += mu[u1] * mu[u2];
      }
      for (NodeId u1 = first; u1 < end; ++u1) {
        for (NodeId u2 = u1 + 1; u2 < end; ++u2) kept[v].push_back({u1, u2, mu[u1] * mu[u2] / total});
      }
    }
  }

  const auto range = leaf_ranges(tree);
  LaplacianMatrix m = empty_matrix(tree, mu);
  for (std::size_t j = 0; j < tree.leaf_count(); ++j) {
    const NodeId gamma = tree.leaf(j);
    const auto col = static_cast<Eigen::Index>(j);
    NodeId gn = gamma;
    for (std::size_t n = N; n >= 1; --n, gn = tree.parent(gn)) {
      const NodeId parent = tree.parent(gn);
      if (kept[parent].empty()) continue;
      const double w = rho.level_weight(n, delta);
      for (const auto& pair : kept[parent]) {
        if (pair.u1 != gn && pair.u2 != gn) continue;
        const NodeId u = pair.u1 == gn ? pair.u2 : pair.u1;
        m.M(col, col) += w * pair.omega / mu[gn];
        const double c = w * pair.omega * mu[gamma] / (mu[gn] * mu[u]);
        for (auto i = range[u].lo; i < range[u].hi; ++i) m.M(static_cast<Eigen::Index>(i), col) -= c;
      }
    }
  }
  return m;
}

InvariantReport check_invariants(const LaplacianMatrix& m) {
  InvariantReport r;
  const auto L = m.M.rows();
  for (Eigen::Index i = 0; i < L; ++i) {
    long double row = 0;
    for (Eigen::Index j = 0; j < L; ++j) {
      row += m.M(i, j);
      r.max_entry = std::max(r.max_entry, std::abs(m.M(i, j)));
      const double asym = m.mu[i] * m.M(i, j) - m.mu[j] * m.M(j, i);
      r.max_asymmetry = std::max(r.max_asymmetry, std::abs(asym));
    }
    r.max_row_sum = std::max(r.max_row_sum, static_cast<double>(std::abs(row)));
  }
  return r;
}

Spectrum spectrum(const LaplacianMatrix& m) {
  const auto inv = check_invariants(m);
  const double scale = std::max(1.0, inv.max_entry);
  if (inv.max_row_sum > 1e-9 * scale) {
    throw InvariantViolation("spectrum: row sums reach " + std::to_string(inv.max_row_sum) +
                            "; the matrix does not annihilate constants");
  }
  if (inv.max_asymmetry > 1e-9 * scale) {
    throw InvariantViolation("spectrum: matrix is not self-adjoint for the measure (defect " +
                            std::to_string(inv.max_asymmetry) + ")");
  }
  const auto L = m.M.rows();
  Eigen::VectorXd root(L);
  for (Eigen::Index i = 0; i < L; ++i) root(i) = std::sqrt(m.mu[i]);
  Eigen::MatrixXd S = root.asDiagonal() * m.M * root.cwiseInverse().asDiagonal();
  S = 0.5 * (S + S.transpose()).eval();

  Spectrum out;
  out.trace = S.trace();
  if (L == 0) return out;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(S, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("spectrum: eigensolver failed");
  const auto& ev = solver.eigenvalues();
  out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  return out;
}

}  // namespace subshift
