// SPDX-License-Identifier: Apache-2.0

#include "subshift/zeta.hpp"

#include <algorithm>
#include <cmath>

namespace subshift {

const char* variant_name(ZetaVariant v) noexcept {
  switch (v) {
    case ZetaVariant::full:
      return "zeta";
    case ZetaVariant::low:
      return "zeta_low";
    case ZetaVariant::pb:
      return "zeta_pb";
  }
  return "?";
}

const char* class_name(SeriesClass c) noexcept {
  switch (c) {
    case SeriesClass::convergent:
      return "convergent";
    case SeriesClass::divergent:
      return "divergent";
    case SeriesClass::undecided:
      return "undecided";
  }
  return "?";
}

std::vector<double> uniform_grid(double lo, double hi, double step) {
  if (!(step > 0) || hi < lo) throw std::invalid_argument("grid: need step > 0 and lo <= hi");
  std::vector<double> grid;
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  for (std::size_t i = 0; i <= count; ++i) {
    // Round to the step's decimal resolution so that grid values print cleanly.
    grid.push_back(std::round((lo + static_cast<double>(i) * step) * 1e9) / 1e9);
  }
  return grid;
}

std::vector<std::size_t> doubling_schedule(std::size_t first, std::size_t last) {
  if (first == 0 || last < first) throw std::invalid_argument("schedule: need 1 <= first <= last");
  std::vector<std::size_t> out;
  for (std::size_t n = first; n <= last; n *= 2) out.push_back(n);
  if (out.back() != last) out.push_back(last);
  return out;
}

ZetaPartials zeta_partials(const BranchingSkeleton& skeleton, const DeltaSequence& delta,
                           std::vector<double> s_grid, std::vector<std::size_t> depths) {
  if (depths.empty() || !std::is_sorted(depths.begin(), depths.end()) ||
      std::adjacent_find(depths.begin(), depths.end()) != depths.end()) {
    throw std::invalid_argument("zeta_partials: depths must be strictly increasing");
  }
  if (depths.back() > skeleton.depth()) {
    throw std::invalid_argument("zeta_partials: depth " + std::to_string(depths.back()) +
                                " exceeds the tree depth " + std::to_string(skeleton.depth()));
  }
  for (double s : s_grid) {
    if (!(s > 0)) throw std::invalid_argument("zeta_partials: exponents must be positive");
  }
  const std::size_t N = depths.back();
  if (N > 0) delta.require_decreasing(N - 1);
  const auto sums = skeleton.level_sums();

  ZetaPartials out;
  out.s = std::move(s_grid);
  out.depths = std::move(depths);
  const std::size_t S = out.s.size(), K = out.depths.size();
  out.value.assign(3, std::vector<std::vector<long double>>(S, std::vector<long double>(K, 0.0L)));
  out.block = out.value;

  std::vector<long double> log_delta(N);
  for (std::size_t n = 0; n < N; ++n) log_delta[n] = delta.log_value(n);

  for (std::size_t i = 0; i < S; ++i) {
    const long double s = out.s[i];
    std::size_t n = 0;
    long double running[3] = {0, 0, 0};
    for (std::size_t k = 0; k < K; ++k) {
      long double blk[3] = {0, 0, 0};
      for (; n < out.depths[k]; ++n) {
        const long double w = std::exp(s * log_delta[n]);
        blk[0] += sums.oriented[n] * w;
        blk[1] += 2 * sums.g[n] * w;
        blk[2] += 2 * sums.branching[n] * w;
      }
      for (int v = 0; v < 3; ++v) {
        running[v] += blk[v];
        out.block[v][i][k] = blk[v];
        out.value[v][i][k] = running[v];
      }
    }
  }
  return out;
}

SeriesClass classify_blocks(const std::vector<long double>& blocks, const AbscissaOptions& options) {
  // blocks[0] covers the levels below the first schedule depth and is ignored.
  if (blocks.size() < 3) return SeriesClass::undecided;
  const long double first = blocks[1];
  const long double last = blocks.back();
  if (!(first > 0)) return last > 0 ? SeriesClass::divergent : SeriesClass::undecided;
  const long double ratio = last / first;
  if (ratio <= options.convergent_ratio) return SeriesClass::convergent;
  if (ratio > options.divergent_ratio) return SeriesClass::divergent;
  return SeriesClass::undecided;
}

std::optional<double> AbscissaBracket::estimate() const {
  if (!divergent || !convergent || *divergent >= *convergent) return std::nullopt;
  return 0.5 * (*divergent + *convergent);
}

std::optional<double> AbscissaBracket::width() const {
  if (!divergent || !convergent || *divergent >= *convergent) return std::nullopt;
  return *convergent - *divergent;
}

std::vector<AbscissaBracket> abscissa_estimate(const ZetaPartials& partials,
                                               const AbscissaOptions& options) {
  std::vector<AbscissaBracket> out;
  for (ZetaVariant variant : zeta_variants) {
    const auto v = static_cast<std::size_t>(variant);
    AbscissaBracket b;
    b.variant = variant;
    b.applicable = false;
    for (std::size_t i = 0; i < partials.s.size(); ++i) {
      if (partials.value[v][i].back() > 0) b.applicable = true;
    }
    for (std::size_t i = 0; i < partials.s.size(); ++i) {
      const SeriesClass c =
          b.applicable ? classify_blocks(partials.block[v][i], options) : SeriesClass::undecided;
      b.classes.push_back(c);
      const double s = partials.s[i];
      if (c == SeriesClass::divergent && (!b.divergent || s > *b.divergent)) b.divergent = s;
      if (c == SeriesClass::convergent && (!b.convergent || s < *b.convergent)) b.convergent = s;
    }
    out.push_back(std::move(b));
  }
  return out;
}

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

std::pair<std::vector<long double>, std::vector<long double>> complexity_from_skeleton(
    const BranchingSkeleton& skeleton) {
  auto g = skeleton.level_sums().g;
  std::vector<long double> P(g.size() + 1, 1.0L);
  for (std::size_t n = 0; n < g.size(); ++n) P[n + 1] = P[n] + g[n];
  return {std::move(P), std::move(g)};
}

ExponentReport exponent_estimates(const std::vector<long double>& P,
                                  const std::vector<long double>& g, std::size_t N,
                                  const ExponentOptions& options) {
  if (N < 16) {
    throw InsufficientData("exponent_estimates: need N >= 16, got " + std::to_string(N));
  }
  if (P.size() < N + 1 || g.size() < N) {
    throw std::invalid_argument("exponent_estimates: P or g shorter than N");
  }
  ExponentReport r;
  r.N = N;

  auto beta_window = [&](std::size_t lo, std::size_t hi) {
    double mn = HUGE_VAL, mx = -HUGE_VAL;
    for (std::size_t n = std::max<std::size_t>(lo, 2); n <= hi; ++n) {
      const double b = static_cast<double>(std::log(P[n]) / std::log(static_cast<long double>(n)));
      mn = std::min(mn, b);
      mx = std::max(mx, b);
    }
    return std::pair{mn, mx};
  };
  std::tie(r.beta_lower, r.beta_upper) = beta_window(N / 2, N);
  const auto half = beta_window(N / 4, N / 2);
  r.super_polynomial = r.beta_lower > options.superpolynomial_growth * half.first;

  // g(n) for n in [N/2, N): the last window index available is N - 1.
  const std::size_t lo = N / 2, hi = N - 1, lo2 = N / 4;
  bool vanishes = false;
  for (std::size_t n = lo2; n <= hi; ++n) vanishes = vanishes || g[n] == 0;
  if (vanishes) return r;

  const auto gammas = uniform_grid(1.0, options.gamma_max, options.gamma_step);
  for (double gamma : gammas) {
    auto h = [&](std::size_t n) {
      return static_cast<double>(g[n] / std::pow(static_cast<long double>(n), gamma - 1.0L));
    };
    std::vector<double> win, prev;
    double mx = 0;
    for (std::size_t n = lo; n <= hi; ++n) {
      win.push_back(h(n));
      mx = std::max(mx, h(n));
    }
    for (std::size_t n = lo2; n < lo; ++n) prev.push_back(h(n));
    const double med = median(win);
    if (mx <= options.bounded_factor * med && med <= options.median_drift * median(prev)) {
      r.eta_upper = gamma;
      break;
    }
  }

  const auto schedule = doubling_schedule(std::max<std::size_t>(1, N / 64), N);
  for (auto it = gammas.rbegin(); it != gammas.rend(); ++it) {
    const double gamma = *it;
    if (gamma <= 1.0) break;
    const double e = -1.0 / (gamma - 1.0);
    std::vector<long double> blocks;
    std::size_t n = 1;
    for (std::size_t depth : schedule) {
      long double b = 0;
      for (; n < depth; ++n) b += std::pow(g[n], static_cast<long double>(e));
      blocks.push_back(b);
    }
    if (classify_blocks(blocks, options.series) == SeriesClass::convergent) {
      r.eta_lower = gamma;
      break;
    }
  }
  if (!r.eta_lower) {
    r.eta_lower = 1.0;
    r.eta_lower_at_boundary = true;
  }
  return r;
}

bool exponent_chain_holds(const ExponentReport& r, double s0_low, double tolerance) {
  if (!r.eta_lower || !r.eta_upper) return false;
  const double chain[] = {r.beta_lower, *r.eta_lower, s0_low, *r.eta_upper, r.beta_upper};
  for (std::size_t i = 0; i + 1 < std::size(chain); ++i) {
    if (chain[i] > chain[i + 1] + tolerance) return false;
  }
  return true;
}

}  // namespace subshift
