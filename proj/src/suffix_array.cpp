// SPDX-License-Identifier: Apache-2.0

#include "subshift/suffix_array.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace subshift {

std::vector<std::uint32_t> build_suffix_array(std::string_view text) {
  const std::size_t n = text.size();
  if (n >= std::numeric_limits<std::uint32_t>::max()) {
    throw std::length_error("build_suffix_array: text too long");
  }
  std::vector<std::uint32_t> sa(n), rank(n), tmp(n), count;
  if (n == 0) return sa;

  for (std::size_t i = 0; i < n; ++i) rank[i] = static_cast<unsigned char>(text[i]);
  std::iota(sa.begin(), sa.end(), 0u);
  std::sort(sa.begin(), sa.end(), [&](std::uint32_t x, std::uint32_t y) {
    return rank[x] < rank[y] || (rank[x] == rank[y] && x < y);
  });
  // Dense ranks for the single-symbol keys.
  tmp[sa[0]] = 0;
  for (std::size_t i = 1; i < n; ++i) {
    tmp[sa[i]] = tmp[sa[i - 1]] + (rank[sa[i]] != rank[sa[i - 1]] ? 1u : 0u);
  }
  rank.swap(tmp);

  std::vector<std::uint32_t> second(n);
  for (std::size_t h = 1; rank[sa[n - 1]] + 1 < n; h <<= 1) {
    // Order by second key: suffixes without a partner at +h come first.
    std::size_t p = 0;
    for (std::size_t i = n - h; i < n; ++i) second[p++] = static_cast<std::uint32_t>(i);
    for (std::size_t i = 0; i < n; ++i) {
      if (sa[i] >= h) second[p++] = static_cast<std::uint32_t>(sa[i] - h);
    }
    // Stable counting sort by first key.
    const std::size_t classes = rank[sa[n - 1]] + 1;
    count.assign(classes + 1, 0);
    for (std::size_t i = 0; i < n; ++i) ++count[rank[i] + 1];
    std::partial_sum(count.begin(), count.end(), count.begin());
    for (std::size_t i = 0; i < n; ++i) sa[count[rank[second[i]]]++] = second[i];

    tmp[sa[0]] = 0;
    for (std::size_t i = 1; i < n; ++i) {
      const std::uint32_t a = sa[i - 1], b = sa[i];
      const std::uint32_t ra = a + h < n ? rank[a + h] + 1 : 0;
      const std::uint32_t rb = b + h < n ? rank[b + h] + 1 : 0;
      tmp[b] = tmp[a] + ((rank[a] != rank[b] || ra != rb) ? 1u : 0u);
    }
    rank.swap(tmp);
  }
  return sa;
}

std::vector<std::uint32_t> build_lcp_array(std::string_view text,
                                           const std::vector<std::uint32_t>& sa) {
  const std::size_t n = text.size();
  std::vector<std::uint32_t> rank(n), lcp(n, 0);
  for (std::size_t i = 0; i < n; ++i) rank[sa[i]] = static_cast<std::uint32_t>(i);
  std::size_t h = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (rank[i] == 0) {
      h = 0;
      continue;
    }
    const std::size_t j = sa[rank[i] - 1];
    while (i + h < n && j + h < n && text[i + h] == text[j + h]) ++h;
    lcp[rank[i]] = static_cast<std::uint32_t>(h);
    if (h > 0) --h;
  }
  return lcp;
}

}  // namespace subshift
