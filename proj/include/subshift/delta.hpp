// SPDX-License-Identifier: Apache-2.0

#ifndef SUBSHIFT_DELTA_HPP
#define SUBSHIFT_DELTA_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace subshift {

/// Strictly decreasing null sequence (delta_n) defining the ultrametric.
///
/// Values are kept in log form so that e^{-n} stays usable at depths where it
/// underflows a double; `ratio` is the quantity the diagnostics rely on.
class DeltaSequence {
 public:
  enum class Family { power_log, exponential, geometric, harmonic, table };

  /// delta_n = f(n + x0) / f(x0), f(x) = ln^b(x) / x^a, with x0 = 1 for b = 0 and
  /// otherwise past the maximum of f, so that the sequence decreases from n = 0.
  static DeltaSequence power_log(double a, double b);
  static DeltaSequence exponential();            // e^{-n}
  static DeltaSequence geometric(double q);      // q^n, 0 < q < 1
  static DeltaSequence harmonic();               // 1 / (n + 1)
  static DeltaSequence table(std::vector<double> values);

  Family family() const noexcept { return family_; }
  double operator[](std::size_t n) const;
  double log_value(std::size_t n) const;
  /// delta_n / delta_m.
  double ratio(std::size_t n, std::size_t m) const;
  /// rho(delta_n) for rho(x) = x^s, computed in log form.
  double power(std::size_t n, double s) const;
  /// Number of defined terms (SIZE_MAX for analytic families).
  std::size_t size() const noexcept;

  /// Upper bound on sum_{k > n} delta_k when the family admits one in closed
  /// form; +inf when the series diverges; nullopt when unknown.
  std::optional<double> tail_bound(std::size_t n) const;
  bool summable() const noexcept;

  /// Throws unless delta is positive and strictly decreasing on 0..n.
  void require_decreasing(std::size_t n) const;

  std::string describe() const;

 private:
  Family family_ = Family::harmonic;
  double a_ = 0, b_ = 0, x0_ = 1, log_norm_ = 0;
  std::vector<double> logs_;
};

}  // namespace subshift

#endif  // SUBSHIFT_DELTA_HPP
