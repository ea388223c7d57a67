// SPDX-License-Identifier: Apache-2.0

#ifndef SUBSHIFT_ZETA_HPP
#define SUBSHIFT_ZETA_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "subshift/delta.hpp"
#include "subshift/skeleton.hpp"

namespace subshift {

class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ZetaVariant { full, low, pb };
inline constexpr ZetaVariant zeta_variants[] = {ZetaVariant::full, ZetaVariant::low, ZetaVariant::pb};
const char* variant_name(ZetaVariant v) noexcept;

/// Z(s, N) = sum_{n<N} sum_{v level n} a(v)(a(v)+1) delta_n^s, Z_low with
/// 2 g(n) and Z_PB with twice the number of branching vertices. Kept in long
/// double: full-shift partial sums leave the double range.
struct ZetaPartials {
  std::vector<double> s;
  std::vector<std::size_t> depths;  // strictly increasing schedule
  /// value[variant][i][k] = partial sum at s[i], depths[k].
  std::vector<std::vector<std::vector<long double>>> value;
  /// block[variant][i][k] = sum over depths[k-1] <= n < depths[k] (depths[-1] = 0),
  /// summed directly so that tiny increments keep their precision.
  std::vector<std::vector<std::vector<long double>>> block;

  long double at(ZetaVariant v, std::size_t i, std::size_t k) const {
    return value[static_cast<std::size_t>(v)][i][k];
  }
};

ZetaPartials zeta_partials(const BranchingSkeleton& skeleton, const DeltaSequence& delta,
                           std::vector<double> s_grid, std::vector<std::size_t> depths);

/// Evenly spaced grid lo, lo + step, ..., hi (inclusive up to rounding).
std::vector<double> uniform_grid(double lo, double hi, double step);
/// depths first, 2 first, 4 first, ... <= last (last appended when missing).
std::vector<std::size_t> doubling_schedule(std::size_t first, std::size_t last);

enum class SeriesClass { convergent, divergent, undecided };
const char* class_name(SeriesClass c) noexcept;

struct AbscissaOptions {
  double convergent_ratio = 0.7;   // last block / first block at or below: convergent
  double divergent_ratio = 0.95;   // above: divergent
};

/// Classifies a series from its block sums over a doubling schedule by the
/// ratio of the last block to the first.
SeriesClass classify_blocks(const std::vector<long double>& blocks, const AbscissaOptions& options);

struct AbscissaBracket {
  ZetaVariant variant = ZetaVariant::full;
  std::vector<SeriesClass> classes;  // per s
  bool applicable = true;            // false when every partial sum is 0
  std::optional<double> divergent;   // largest divergent s
  std::optional<double> convergent;  // smallest convergent s
  /// Midpoint, present only for a closed and ordered bracket.
  std::optional<double> estimate() const;
  std::optional<double> width() const;
};

std::vector<AbscissaBracket> abscissa_estimate(const ZetaPartials& partials,
                                               const AbscissaOptions& options = {});

struct ExponentOptions {
  double gamma_step = 0.05;
  double gamma_max = 8.0;
  double bounded_factor = 2.0;      // window max <= factor * window median
  double median_drift = 1.02;       // median growth allowed against the previous window
  double superpolynomial_growth = 1.25;
  AbscissaOptions series;
};

struct ExponentReport {
  std::size_t N = 0;
  double beta_lower = 0, beta_upper = 0;
  bool super_polynomial = false;
  std::optional<double> eta_upper;  // nullopt: no grid value bounds g(n) / n^{gamma-1}
  std::optional<double> eta_lower;  // nullopt: g vanishes in the window
  bool eta_lower_at_boundary = false;  // no gamma > 1 passed; reported as 1
};

/// Counts read off a skeleton: g(n) from the branching numbers, P by summation.
std::pair<std::vector<long double>, std::vector<long double>> complexity_from_skeleton(
    const BranchingSkeleton& skeleton);

/// P(n) for n = 0..N and g(n) for n = 0..N-1, as long double so that
/// full-shift counts fit. Throws InsufficientData for N < 16.
ExponentReport exponent_estimates(const std::vector<long double>& P,
                                  const std::vector<long double>& g, std::size_t N,
                                  const ExponentOptions& options = {});

/// beta_lower <= eta_lower <= s0_low <= eta_upper <= beta_upper, each step
/// allowed to fail by `tolerance`.
bool exponent_chain_holds(const ExponentReport& report, double s0_low, double tolerance);

}  // namespace subshift

#endif  // SUBSHIFT_ZETA_HPP
