// SPDX-License-Identifier: Apache-2.0

#ifndef SUBSHIFT_LAPLACIAN_HPP
#define SUBSHIFT_LAPLACIAN_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "subshift/delta.hpp"
#include "subshift/tree.hpp"

namespace subshift {

/// An assembled operator violates a structural invariant (internal bug).
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// mu([v]) for every tree vertex, from child-selection probabilities.
class CylinderMeasure {
 public:
  /// weights[v] is the probability of choosing v at its parent (ignored for
  /// the root). Throws std::invalid_argument unless every weight is positive
  /// and the weights of each sibling group sum to 1 within 1e-12.
  static CylinderMeasure from_weights(const MichonTree& tree, std::vector<double> weights);
  static CylinderMeasure uniform(const MichonTree& tree);
  /// Independent uniform(0.05, 1) draws per child, normalized per sibling group.
  static CylinderMeasure random(const MichonTree& tree, std::uint64_t seed);

  double operator[](NodeId v) const { return mass_[v]; }
  std::size_t size() const noexcept { return mass_.size(); }
  const std::vector<double>& weights() const noexcept { return weight_; }

 private:
  std::vector<double> weight_;
  std::vector<double> mass_;
};

/// rho(L) = L^exponent, or rho(L_n) = table[n - 1] for level-n edges.
struct Density {
  double exponent = 2.0;
  std::vector<double> table;

  /// w_n = rho(L_n) / L_n^2 with L_n = delta_{n-1}, the length of level-n
  /// horizontal edges.
  double level_weight(std::size_t n, const DeltaSequence& delta) const;
};

inline constexpr const char* edge_length_convention = "H_n edges have length delta_{n-1}";

/// Operator on depth-N cylinder functions: column j is Delta chi_j expanded
/// in the leaf indicators, rows and columns in lexicographic leaf order.
struct LaplacianMatrix {
  std::size_t depth = 0;
  std::vector<std::string> labels;
  std::vector<double> mu;
  Eigen::MatrixXd M;
};

LaplacianMatrix assemble_laplacian(const MichonTree& tree, const CylinderMeasure& mu,
                                   const Density& rho, const DeltaSequence& delta);

/// Q(f, g) for cylinder coefficient vectors over the leaves, evaluated from
/// the expectations E(f_u), E(f_u g_u) over each oriented sibling pair.
double dirichlet_form_value(const MichonTree& tree, const CylinderMeasure& mu, const Density& rho,
                            const DeltaSequence& delta, const std::vector<double>& f,
                            const std::vector<double>& g);

/// M[i][j] = Q(chi_j, chi_i) / mu_i, one form evaluation per entry.
LaplacianMatrix assemble_from_dirichlet_form(const MichonTree& tree, const CylinderMeasure& mu,
                                             const Density& rho, const DeltaSequence& delta);

/// Horizontal edges restricted to one sibling pair per branching vertex, or
/// averaged over all pairs with nu({u1, u2}) = mu(u1) mu(u2) / sum over pairs.
struct PairSelection {
  enum class Mode { single, nu_average };
  Mode mode = Mode::single;
  /// Single mode: chosen pair per branching vertex; missing vertices use
  /// their first two children.
  std::map<NodeId, std::pair<NodeId, NodeId>> pairs;
};

LaplacianMatrix assemble_pb_laplacian(const MichonTree& tree, const CylinderMeasure& mu,
                                      const Density& rho, const DeltaSequence& delta,
                                      const PairSelection& selection);

struct InvariantReport {
  double max_row_sum = 0;        // max_i |sum_j M_ij|
  double max_asymmetry = 0;      // max_ij |mu_i M_ij - mu_j M_ji|
  double max_entry = 0;
};
InvariantReport check_invariants(const LaplacianMatrix& m);

struct Spectrum {
  std::vector<double> eigenvalues;  // ascending
  double trace = 0;                 // of the symmetrized matrix
};
/// Eigenvalues of D^{1/2} M D^{-1/2}. Refuses (InvariantViolation) when the
/// row sums or the mu-asymmetry exceed 1e-9 relative to the largest entry.
Spectrum spectrum(const LaplacianMatrix& m);

}  // namespace subshift

#endif  // SUBSHIFT_LAPLACIAN_HPP
