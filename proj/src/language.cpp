// SPDX-License-Identifier: Apache-2.0

#include "subshift/language.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "subshift/suffix_array.hpp"

namespace subshift {

namespace {

Word generating_window(const SubshiftSpec& spec, std::size_t length) {
  if (const auto* cf = std::get_if<SturmianCF>(&spec)) {
    return sturmian_characteristic(*cf, length, length);
  }
  if (const auto* sub = std::get_if<SubstitutionSpec>(&spec)) {
    return substitution_fixed_point_prefix(*sub, length);
  }
  throw std::logic_error("generating_window: spec has no generating sequence");
}

}  // namespace

LanguageTable LanguageTable::from_window(Word window, std::size_t depth, std::size_t alphabet,
                                         bool materialize_words) {
  if (depth == 0) throw std::invalid_argument("language_table: depth must be >= 1");
  for (char c : window) {
    if (c < 'a' || static_cast<std::size_t>(symbol_of(c)) >= alphabet) {
      throw std::invalid_argument(std::string("language_table: symbol '") + c +
                                  "' outside the alphabet");
    }
  }
  LanguageTable t;
  t.depth_ = depth;
  t.alphabet_ = alphabet;
  t.text_ = std::make_shared<const std::string>(std::move(window));
  t.index_window(materialize_words);
  t.stabilized_.assign(depth + 1, true);
  return t;
}

LanguageTable LanguageTable::build(const SubshiftSpec& spec, std::size_t depth,
                                   const TableOptions& options) {
  if (depth == 0) throw std::invalid_argument("language_table: depth must be >= 1");
  const std::size_t k = subshift::alphabet_size(spec);

  if (const auto* full = std::get_if<FullShiftSpec>(&spec)) {
    return from_window(de_bruijn_window(full->k, depth), depth, k, options.materialize_words);
  }
  if (const auto* win = std::get_if<WindowSpec>(&spec)) {
    return from_window(win->window, depth, k, options.materialize_words);
  }

  std::size_t length = options.initial_window != 0
                           ? options.initial_window
                           : std::max<std::size_t>(256, 8 * depth);
  length = std::min(length, options.max_window);
  if (length <= depth) {
    throw std::invalid_argument("language_table: max_window must exceed the depth");
  }

  LanguageTable current;
  current.depth_ = depth;
  current.alphabet_ = k;
  current.text_ = std::make_shared<const std::string>(generating_window(spec, length));
  current.index_window(false);

  bool compared = false;
  while (true) {
    const std::size_t next_length = 2 * length;
    if (next_length > options.max_window) {
      // Cap reached; flags keep the outcome of the last comparison, if any.
      if (!compared) {
        current.stabilized_.assign(depth + 1, false);
        current.stabilized_[0] = true;
      }
      break;
    }
    LanguageTable next;
    next.depth_ = depth;
    next.alphabet_ = k;
    next.text_ = std::make_shared<const std::string>(generating_window(spec, next_length));
    next.index_window(false);
    next.stabilized_.assign(depth + 1, false);
    bool all_equal = true;
    for (std::size_t n = 0; n <= depth; ++n) {
      next.stabilized_[n] = next.counts_[n] == current.counts_[n];
      all_equal = all_equal && next.stabilized_[n];
    }
    current = std::move(next);
    length = next_length;
    compared = true;
    if (all_equal) break;
  }
  if (options.materialize_words) current.index_window(true);
  return current;
}

void LanguageTable::index_window(bool materialize_words) {
  const std::string_view text = *text_;
  const std::size_t L = text.size();
  sa_ = build_suffix_array(text);
  lcp_ = build_lcp_array(text, sa_);

  // Suffix sa[i] opens a new length-n group for n in (lcp[i], |suffix|].
  std::vector<std::ptrdiff_t> diff(depth_ + 2, 0);
  for (std::size_t i = 0; i < L; ++i) {
    const std::size_t lo = lcp_[i] + 1;
    const std::size_t hi = std::min<std::size_t>(L - sa_[i], depth_);
    if (lo <= hi) {
      ++diff[lo];
      --diff[hi + 1];
    }
  }
  counts_.assign(depth_ + 1, 0);
  counts_[0] = 1;
  std::ptrdiff_t running = 0;
  for (std::size_t n = 1; n <= depth_; ++n) {
    running += diff[n];
    counts_[n] = static_cast<std::size_t>(running);
  }

  levels_.clear();
  if (materialize_words) {
    levels_.assign(depth_ + 1, {});
    for (std::size_t n = 1; n <= depth_; ++n) levels_[n].reserve(counts_[n]);
    if (L > 0) levels_[0].push_back(0);
    for (std::size_t i = 0; i < L; ++i) {
      const std::size_t hi = std::min<std::size_t>(L - sa_[i], depth_);
      for (std::size_t n = lcp_[i] + 1; n <= hi; ++n) {
        levels_[n].push_back(static_cast<std::uint32_t>(i));
      }
    }
  }

  // A word without right extension can only be a suffix of the window that
  // occurs nowhere else.
  dead_end_.reset();
  if (L > 0) {
    std::vector<std::uint32_t> rank(L);
    for (std::size_t i = 0; i < L; ++i) rank[sa_[i]] = static_cast<std::uint32_t>(i);
    const std::size_t top = std::min(depth_, L + 1);
    for (std::size_t n = 1; n < top; ++n) {
      if (n > L) break;
      const std::size_t r = rank[L - n];
      const bool shared_left = lcp_[r] >= n;
      const bool shared_right = r + 1 < L && lcp_[r + 1] >= n;
      if (!shared_left && !shared_right) {
        dead_end_ = std::make_pair(static_cast<std::uint32_t>(L - n), static_cast<std::uint32_t>(n));
        break;
      }
    }
  }
}

bool LanguageTable::fully_stabilized() const noexcept {
  return std::all_of(stabilized_.begin(), stabilized_.end(), [](bool b) { return b; });
}

std::optional<std::string_view> LanguageTable::dead_end() const {
  if (!dead_end_) return std::nullopt;
  return text().substr(dead_end_->first, dead_end_->second);
}

std::span<const std::uint32_t> LanguageTable::level_ranks(std::size_t n) const {
  if (!has_words()) throw std::logic_error("language_table: word lists were not materialized");
  if (n > depth_) throw std::out_of_range("language_table: length beyond depth");
  return levels_[n];
}

std::string_view LanguageTable::word(std::size_t n, std::size_t index) const {
  const auto ranks = level_ranks(n);
  return text().substr(sa_[ranks[index]], n);
}

std::vector<std::string_view> LanguageTable::words(std::size_t n) const {
  const auto ranks = level_ranks(n);
  std::vector<std::string_view> out;
  out.reserve(ranks.size());
  for (auto r : ranks) out.push_back(text().substr(sa_[r], n));
  return out;
}

bool LanguageTable::contains(std::string_view w) const {
  if (w.size() > depth_) return false;
  if (w.empty()) return true;
  const std::string_view t = text();
  auto it = std::lower_bound(sa_.begin(), sa_.end(), w, [&](std::uint32_t pos, std::string_view key) {
    return t.substr(pos, key.size()) < key;
  });
  return it != sa_.end() && t.substr(*it, w.size()) == w;
}

std::optional<std::size_t> LanguageTable::index_of(std::string_view w) const {
  if (w.size() > depth_) return std::nullopt;
  const auto ranks = level_ranks(w.size());
  const std::string_view t = text();
  auto it = std::lower_bound(ranks.begin(), ranks.end(), w, [&](std::uint32_t r, std::string_view key) {
    return t.substr(sa_[r], key.size()) < key;
  });
  if (it == ranks.end() || t.substr(sa_[*it], w.size()) != w) return std::nullopt;
  return static_cast<std::size_t>(it - ranks.begin());
}

std::vector<std::string_view> right_special_words(const LanguageTable& table, std::size_t n) {
  if (n >= table.depth()) {
    throw std::out_of_range("right_special_words: length " + std::to_string(n) +
                            " is not below the table depth " + std::to_string(table.depth()));
  }
  const std::string_view text = table.text();
  const auto& sa = table.suffix_array();
  const auto& lcp = table.lcp_array();
  const std::size_t L = text.size();
  std::vector<std::string_view> out;

  std::size_t group_start = L;  // position of the current group's word
  std::uint32_t letters = 0;
  auto flush = [&] {
    if (group_start != L && __builtin_popcount(letters) >= 2) {
      out.push_back(text.substr(group_start, n));
    }
  };
  for (std::size_t i = 0; i < L; ++i) {
    const std::size_t len = L - sa[i];
    if (len < n) continue;
    if (group_start == L || lcp[i] < n) {
      flush();
      group_start = sa[i];
      letters = 0;
    }
    if (len > n) letters |= 1u << symbol_of(text[sa[i] + n]);
  }
  flush();
  return out;
}

ComplexityProfile complexity_profile(const LanguageTable& table) {
  ComplexityProfile p;
  p.P = table.counts();
  p.g.reserve(table.depth());
  for (std::size_t n = 0; n < table.depth(); ++n) {
    const auto a = p.P[n + 1], b = p.P[n];
    p.g.push_back(a >= b ? a - b : 0);
  }
  p.provisional = !table.fully_stabilized();
  return p;
}

namespace {

struct RatioTracker {
  // Best (|W| - |w|) / |w| as an exact fraction num/den.
  std::size_t num = 1, den = 0;
  RepulsivenessEstimate est;
  static constexpr std::size_t max_witnesses = 16;

  void offer(std::string_view W, std::size_t border) {
    const std::size_t n = W.size() - border, d = border;
    if (den != 0 && n * den > num * d) return;
    if (den == 0 || n * den < num * d) {
      num = n;
      den = d;
      est.value = static_cast<double>(n) / static_cast<double>(d);
      est.witnesses.clear();
    }
    if (est.witnesses.size() < max_witnesses) {
      est.witnesses.emplace_back(std::string(W.substr(0, border)), std::string(W));
    }
  }
};

}  // namespace

RepulsivenessReport repulsiveness_estimates(const LanguageTable& table, std::size_t depth) {
  if (depth > table.depth()) {
    throw std::out_of_range("repulsiveness_estimates: depth beyond table depth");
  }
  // Right specialness is decidable only below the table depth.
  std::unordered_set<std::string_view> special;
  for (std::size_t n = 1; n < table.depth() && n <= depth; ++n) {
    for (auto w : right_special_words(table, n)) special.insert(w);
  }

  RatioTracker all, rs;
  for (std::size_t n = 2; n <= depth; ++n) {
    for (auto W : table.words(n)) {
      const auto fail = border_array(W);
      std::size_t b = fail.back();
      if (b > 0) all.offer(W, b);
      if (!special.contains(W)) continue;
      for (; b > 0; b = fail[b - 1]) {
        if (special.contains(W.substr(0, b))) {
          rs.offer(W, b);
          break;
        }
      }
    }
  }
  return {depth, std::move(all.est), std::move(rs.est)};
}

std::optional<std::size_t> repetitivity_estimate(const LanguageTable& table, std::size_t n) {
  if (n >= table.depth()) throw std::out_of_range("repetitivity_estimate: length beyond depth");
  if (n == 0) return 0;
  const std::size_t target = table.count(n);
  if (target == 0) return std::nullopt;

  const std::string_view text = table.text();
  const auto& sa = table.suffix_array();
  const auto& lcp = table.lcp_array();
  const std::size_t L = text.size();

  // Id of the length-n factor starting at each position.
  constexpr std::uint32_t no_id = ~std::uint32_t{0};
  std::vector<std::uint32_t> id(L, no_id);
  std::uint32_t next = 0;
  bool open = false;
  for (std::size_t i = 0; i < L; ++i) {
    if (L - sa[i] < n) continue;
    if (open && lcp[i] < n) ++next;
    open = true;
    id[sa[i]] = next;
  }

  std::vector<std::uint32_t> stamp(target, 0);
  std::uint32_t epoch = 0;
  for (std::size_t m = n; m <= table.depth(); ++m) {
    if (table.count(m) == 0) return std::nullopt;
    bool every = true;
    for (auto r : table.level_ranks(m)) {
      ++epoch;
      std::size_t seen = 0;
      const std::size_t q = sa[r];
      for (std::size_t p = q; p + n <= q + m; ++p) {
        const auto f = id[p];
        if (stamp[f] != epoch) {
          stamp[f] = epoch;
          ++seen;
        }
      }
      if (seen < target) {
        every = false;
        break;
      }
    }
    if (every) return m;
  }
  return std::nullopt;
}

}  // namespace subshift
