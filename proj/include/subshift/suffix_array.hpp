// SPDX-License-Identifier: Apache-2.0

#ifndef SUBSHIFT_SUFFIX_ARRAY_HPP
#define SUBSHIFT_SUFFIX_ARRAY_HPP

#include <cstdint>
#include <string_view>
#include <vector>

namespace subshift {

/// Suffix array by prefix doubling with radix passes, O(n log n).
std::vector<std::uint32_t> build_suffix_array(std::string_view text);

/// Kasai et al.: lcp[i] = lcp(suffix sa[i-1], suffix sa[i]), lcp[0] = 0.
std::vector<std::uint32_t> build_lcp_array(std::string_view text,
                                           const std::vector<std::uint32_t>& sa);

}  // namespace subshift

#endif  // SUBSHIFT_SUFFIX_ARRAY_HPP
