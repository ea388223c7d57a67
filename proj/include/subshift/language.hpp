// SPDX-License-Identifier: Apache-2.0

#ifndef SUBSHIFT_LANGUAGE_HPP
#define SUBSHIFT_LANGUAGE_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "subshift/words.hpp"

namespace subshift {

struct TableOptions {
  /// Length of the first generating window; 0 picks max(256, 8 * depth).
  std::size_t initial_window = 0;
  /// Doubling stops here; counts that still move are flagged unstabilized.
  std::size_t max_window = std::size_t{1} << 20;
  /// Keep per-level word lists. Off for deep tables that only feed the skeleton.
  bool materialize_words = true;
};

/// Factors of length <= depth of a subshift, read off a generating window.
///
/// Words are views into the window, listed per length in lexicographic order.
/// The window's suffix array and LCP array are kept for the tree builders.
class LanguageTable {
 public:
  static LanguageTable build(const SubshiftSpec& spec, std::size_t depth,
                             const TableOptions& options = {});
  /// Exact table of the factors of `window` (no stabilization involved).
  static LanguageTable from_window(Word window, std::size_t depth, std::size_t alphabet,
                                   bool materialize_words = true);

  std::size_t depth() const noexcept { return depth_; }
  std::size_t alphabet_size() const noexcept { return alphabet_; }
  std::string_view text() const noexcept { return *text_; }
  const std::vector<std::uint32_t>& suffix_array() const noexcept { return sa_; }
  const std::vector<std::uint32_t>& lcp_array() const noexcept { return lcp_; }

  /// P(n), n = 0..depth.
  std::size_t count(std::size_t n) const { return counts_.at(n); }
  const std::vector<std::size_t>& counts() const noexcept { return counts_; }
  /// Whether the count at n was unchanged across the last window doubling.
  bool stabilized(std::size_t n) const { return stabilized_.at(n); }
  bool fully_stabilized() const noexcept;
  /// Every word of length < depth has a one-letter right extension in the table.
  bool right_extendable() const noexcept { return !dead_end_; }
  /// First word (shortest) without right extension, if any.
  std::optional<std::string_view> dead_end() const;

  bool has_words() const noexcept { return !levels_.empty(); }
  /// Suffix-array ranks of the first suffix of each length-n group, lex order.
  std::span<const std::uint32_t> level_ranks(std::size_t n) const;
  std::string_view word(std::size_t n, std::size_t index) const;
  std::vector<std::string_view> words(std::size_t n) const;
  bool contains(std::string_view w) const;
  /// Index of w among the length-|w| words.
  std::optional<std::size_t> index_of(std::string_view w) const;

 private:
  LanguageTable() = default;
  void index_window(bool materialize_words);

  std::size_t depth_ = 0;
  std::size_t alphabet_ = 0;
  std::shared_ptr<const std::string> text_;
  std::vector<std::uint32_t> sa_;
  std::vector<std::uint32_t> lcp_;
  std::vector<std::size_t> counts_;
  std::vector<bool> stabilized_;
  std::vector<std::vector<std::uint32_t>> levels_;
  std::optional<std::pair<std::uint32_t, std::uint32_t>> dead_end_;  // (position, length)
};

std::vector<std::string_view> right_special_words(const LanguageTable& table, std::size_t n);

struct ComplexityProfile {
  std::vector<std::size_t> P;  // n = 0..N
  std::vector<std::size_t> g;  // n = 0..N-1, g(n) = P(n+1) - P(n)
  bool provisional = false;    // table not stabilized up to N
};
ComplexityProfile complexity_profile(const LanguageTable& table);

struct RepulsivenessEstimate {
  static constexpr double none = std::numeric_limits<double>::infinity();
  double value = none;
  /// Minimizing (w, W) pairs; w is a proper border of W.
  std::vector<std::pair<std::string, std::string>> witnesses;
};
struct RepulsivenessReport {
  std::size_t depth = 0;
  RepulsivenessEstimate all;            // over every table word
  RepulsivenessEstimate right_special;  // w and W both right special
};
/// Minimum of (|W| - |w|) / |w| over words W with |W| <= depth and nonempty
/// proper borders w, via the border array of each W.
RepulsivenessReport repulsiveness_estimates(const LanguageTable& table, std::size_t depth);

/// Smallest n' <= depth such that each length-n' word contains every length-n word.
std::optional<std::size_t> repetitivity_estimate(const LanguageTable& table, std::size_t n);

}  // namespace subshift

#endif  // SUBSHIFT_LANGUAGE_HPP
