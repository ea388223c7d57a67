// SPDX-License-Identifier: Apache-2.0

#ifndef SUBSHIFT_SPEC_PARSE_HPP
#define SUBSHIFT_SPEC_PARSE_HPP

#include <string>
#include <string_view>

#include "subshift/delta.hpp"
#include "subshift/words.hpp"

namespace subshift {

/// Subshift descriptors:
///   full:K
///   window:WORD
///   subst:a=ab,b=a[;seed=a]
///   sturmian:cf=1,2[,...]        the listed coefficients repeat periodically
///   sturmian:cf=3,1;tail=RULE    explicit prefix followed by RULE
///   sturmian:mu=RULE             RULE from index 0
/// with RULE one of const:C, linear:A:B (mu_i = A i + B), pow2, periodic:LIST.
/// Throws std::invalid_argument with the offending fragment.
SubshiftSpec parse_spec(std::string_view text);

/// exp | harmonic | geometric:q | powerlog:a,b | table:FILE
DeltaSequence parse_delta(std::string_view text);

}  // namespace subshift

#endif  // SUBSHIFT_SPEC_PARSE_HPP
