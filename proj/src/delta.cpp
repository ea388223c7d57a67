// SPDX-License-Identifier: Apache-2.0

#include "subshift/delta.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace subshift {

DeltaSequence DeltaSequence::power_log(double a, double b) {
  if (!(a > 0) || !(b >= 0)) throw std::invalid_argument("delta powerlog: need a > 0, b >= 0");
  DeltaSequence d;
  d.family_ = Family::power_log;
  d.a_ = a;
  d.b_ = b;
  d.x0_ = b == 0 ? 1.0 : std::floor(std::exp(b / a)) + 1.0;
  d.log_norm_ = (b == 0 ? 0.0 : b * std::log(std::log(d.x0_))) - a * std::log(d.x0_);
  return d;
}

DeltaSequence DeltaSequence::exponential() {
  DeltaSequence d;
  d.family_ = Family::exponential;
  d.a_ = 1.0;
  return d;
}

DeltaSequence DeltaSequence::geometric(double q) {
  if (!(q > 0 && q < 1)) throw std::invalid_argument("delta geometric: need 0 < q < 1");
  DeltaSequence d;
  d.family_ = Family::geometric;
  d.a_ = q;
  return d;
}

DeltaSequence DeltaSequence::harmonic() { return DeltaSequence{}; }

DeltaSequence DeltaSequence::table(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("delta table: no values");
  DeltaSequence d;
  d.family_ = Family::table;
  d.logs_.reserve(values.size());
  for (std::size_t n = 0; n < values.size(); ++n) {
    if (!(values[n] > 0) || !std::isfinite(values[n])) {
      throw std::invalid_argument("delta table: value " + std::to_string(n) + " is not positive");
    }
    if (n > 0 && !(values[n] < values[n - 1])) {
      throw std::invalid_argument("delta table: not strictly decreasing at " + std::to_string(n));
    }
    d.logs_.push_back(std::log(values[n]));
  }
  return d;
}

double DeltaSequence::log_value(std::size_t n) const {
  const double x = static_cast<double>(n);
  switch (family_) {
    case Family::power_log: {
      const double y = x + x0_;
      const double lb = b_ == 0 ? 0.0 : b_ * std::log(std::log(y));
      return lb - a_ * std::log(y) - log_norm_;
    }
    case Family::exponential:
      return -x;
    case Family::geometric:
      return x * std::log(a_);
    case Family::harmonic:
      return -std::log1p(x);
    case Family::table:
      if (n >= logs_.size()) {
        throw std::out_of_range("delta table: index " + std::to_string(n) + " beyond " +
                                std::to_string(logs_.size()) + " values");
      }
      return logs_[n];
  }
  return 0;
}

double DeltaSequence::operator[](std::size_t n) const {
  switch (family_) {
    case Family::harmonic:
      return 1.0 / (static_cast<double>(n) + 1.0);
    case Family::geometric:
      return std::pow(a_, static_cast<double>(n));
    default:
      return std::exp(log_value(n));
  }
}

double DeltaSequence::ratio(std::size_t n, std::size_t m) const {
  if (family_ == Family::harmonic) {
    return (static_cast<double>(m) + 1.0) / (static_cast<double>(n) + 1.0);
  }
  return std::exp(log_value(n) - log_value(m));
}

double DeltaSequence::power(std::size_t n, double s) const {
  return std::exp(s * log_value(n));
}

std::size_t DeltaSequence::size() const noexcept {
  return family_ == Family::table ? logs_.size() : std::numeric_limits<std::size_t>::max();
}

std::optional<double> DeltaSequence::tail_bound(std::size_t n) const {
  const double x = static_cast<double>(n);
  constexpr double inf = std::numeric_limits<double>::infinity();
  switch (family_) {
    case Family::exponential:
      return std::exp(-(x + 1.0)) / (1.0 - std::exp(-1.0));
    case Family::geometric:
      return std::pow(a_, x + 1.0) / (1.0 - a_);
    case Family::harmonic:
      return inf;
    case Family::power_log:
      if (a_ <= 1.0) return inf;
      if (b_ == 0) return std::pow(x + 1.0, 1.0 - a_) / (a_ - 1.0);
      return std::nullopt;
    case Family::table:
      return std::nullopt;
  }
  return std::nullopt;
}

bool DeltaSequence::summable() const noexcept {
  switch (family_) {
    case Family::exponential:
    case Family::geometric:
      return true;
    case Family::power_log:
      return a_ > 1.0;
    default:
      return false;
  }
}

void DeltaSequence::require_decreasing(std::size_t n) const {
  if (n >= size()) {
    throw std::out_of_range("delta: sequence has only " + std::to_string(size()) +
                            " terms, need " + std::to_string(n + 1));
  }
  double prev = log_value(0);
  if (!std::isfinite(prev)) throw std::domain_error("delta: delta_0 is not finite");
  for (std::size_t k = 1; k <= n; ++k) {
    const double cur = log_value(k);
    if (!(cur < prev)) {
      throw std::domain_error("delta: not strictly decreasing at n = " + std::to_string(k));
    }
    prev = cur;
  }
}

std::string DeltaSequence::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (family_) {
    case Family::power_log:
      os << "powerlog:" << a_ << ',' << b_;
      break;
    case Family::exponential:
      os << "exp";
      break;
    case Family::geometric:
      os << "geometric:" << a_;
      break;
    case Family::harmonic:
      os << "harmonic";
      break;
    case Family::table:
      os << "table[" << logs_.size() << "]";
      break;
  }
  return os.str();
}

}  // namespace subshift
