// SPDX-License-Identifier: Apache-2.0

#ifndef SUBSHIFT_WORDS_HPP
#define SUBSHIFT_WORDS_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace subshift {

/// Symbol indices are stored as the letters 'a', 'b', 'c', ... so that a Word
/// is directly its serialized form. Alphabets are limited to 26 letters.
using Symbol = std::uint8_t;
using Word = std::string;

inline constexpr std::size_t max_alphabet = 26;

constexpr char letter(Symbol s) noexcept { return static_cast<char>('a' + s); }
constexpr Symbol symbol_of(char c) noexcept { return static_cast<Symbol>(c - 'a'); }

/// Non-erasing substitution on the first `images.size()` letters.
class Substitution {
 public:
  Substitution() = default;
  explicit Substitution(std::vector<Word> images);
  /// Keys must be single letters; every letter below the largest key must be present.
  static Substitution from_rules(const std::map<char, Word>& rules);

  std::size_t alphabet_size() const noexcept { return images_.size(); }
  const Word& image(Symbol s) const;

  Word apply(std::string_view w) const;
  Substitution then(const Substitution& inner) const;  // (*this) o inner

 private:
  std::vector<Word> images_;
};

/// sigma_0: a -> a, b -> ba ; sigma_1: a -> ab, b -> b.
const Substitution& sturmian_sigma0();
const Substitution& sturmian_sigma1();

/// Rule for continued-fraction coefficients beyond the explicit prefix.
struct CoefficientRule {
  enum class Kind { constant, linear, power_of_two, periodic };
  Kind kind = Kind::constant;
  std::uint64_t scale = 0;               // linear: mu_i = scale * i + offset
  std::uint64_t offset = 1;              // constant value / linear offset
  std::vector<std::uint64_t> period;     // periodic: repeats after the prefix
};

/// Coefficients mu_0 >= 0, mu_i >= 1 (i >= 1) of [1 + mu_0, mu_1, ...].
struct SturmianCF {
  std::vector<std::uint64_t> prefix;
  std::optional<CoefficientRule> tail;

  /// Saturates at UINT64_MAX. nullopt once a finite list is exhausted.
  std::optional<std::uint64_t> coefficient(std::size_t i) const;
  void validate() const;
};

struct FullShiftSpec {
  std::size_t k = 2;
};

struct SubstitutionSpec {
  Substitution rules;
  Symbol seed = 0;
};

struct WindowSpec {
  Word window;
};

using SubshiftSpec = std::variant<SturmianCF, SubstitutionSpec, FullShiftSpec, WindowSpec>;

std::size_t alphabet_size(const SubshiftSpec& spec);
std::string describe(const SubshiftSpec& spec);

/// Suffix of the left-infinite characteristic word: the first stage
/// R_k = sigma0^mu0 sigma1^mu1 ... sigma0^mu_{2k}(b) with |R_k| >= min_len.
/// At most `max_len` trailing symbols are returned.
Word sturmian_characteristic(const SturmianCF& cf, std::size_t min_len,
                             std::size_t max_len = std::size_t{1} << 26);

/// Length of u_j and the trailing block u_j^{mu_j} of the characteristic word,
/// for each stage j whose data fits below `length_cap`.
struct CharacteristicStage {
  std::size_t index = 0;
  std::uint64_t coefficient = 0;
  std::uint64_t period_length = 0;  // |u_j|
};
std::vector<CharacteristicStage> characteristic_stages(const SturmianCF& cf,
                                                       std::uint64_t length_cap);

/// Prefix of sigma^infinity(seed); requires image(seed) to start with seed.
Word substitution_fixed_point_prefix(const SubstitutionSpec& spec, std::size_t length);

/// De Bruijn word whose factors of length <= order are all k^order words.
Word de_bruijn_window(std::size_t k, std::size_t order);

/// Longest-proper-border table (KMP failure function).
std::vector<std::uint32_t> border_array(std::string_view w);

}  // namespace subshift

#endif  // SUBSHIFT_WORDS_HPP
