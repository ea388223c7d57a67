// SPDX-License-Identifier: Apache-2.0

#include "subshift/words.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace subshift {

namespace {

constexpr std::uint64_t saturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > saturated - b ? saturated : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > saturated / b ? saturated : a * b;
}

// Trailing symbols of a word too long to hold, together with its true length.
struct Tail {
  Word symbols;
  std::uint64_t length = 0;
};

// Last `keep` symbols of x . y^m.
Tail append_power(const Tail& x, const Tail& y, std::uint64_t m, std::size_t keep) {
  Tail out;
  out.length = sat_add(x.length, sat_mul(y.length, m));
  const std::size_t out_len =
      static_cast<std::size_t>(std::min<std::uint64_t>(out.length, keep));
  out.symbols.assign(out_len, '\0');
  std::size_t pos = out_len;
  for (std::uint64_t copies = 0; pos > 0 && copies < m; ++copies) {
    const std::size_t take = std::min(pos, y.symbols.size());
    std::copy(y.symbols.end() - static_cast<std::ptrdiff_t>(take), y.symbols.end(),
              out.symbols.begin() + static_cast<std::ptrdiff_t>(pos - take));
    pos -= take;
  }
  if (pos > 0) {
    std::copy(x.symbols.end() - static_cast<std::ptrdiff_t>(pos), x.symbols.end(),
              out.symbols.begin());
  }
  return out;
}

}  // namespace

Substitution::Substitution(std::vector<Word> images) : images_(std::move(images)) {
  if (images_.size() > max_alphabet) throw std::invalid_argument("substitution: alphabet too large");
  for (std::size_t s = 0; s < images_.size(); ++s) {
    if (images_[s].empty()) {
      throw std::invalid_argument(std::string("substitution: erasing rule for '") +
                                  letter(static_cast<Symbol>(s)) + "'");
    }
    for (char c : images_[s]) {
      if (c < 'a' || static_cast<std::size_t>(symbol_of(c)) >= images_.size()) {
        throw std::invalid_argument(std::string("substitution: image of '") +
                                    letter(static_cast<Symbol>(s)) +
                                    "' uses symbol outside the alphabet: '" + c + "'");
      }
    }
  }
}

Substitution Substitution::from_rules(const std::map<char, Word>& rules) {
  if (rules.empty()) throw std::invalid_argument("substitution: no rules");
  const std::size_t k = static_cast<std::size_t>(symbol_of(rules.rbegin()->first)) + 1;
  std::vector<Word> images(k);
  for (std::size_t s = 0; s < k; ++s) {
    auto it = rules.find(letter(static_cast<Symbol>(s)));
    if (it == rules.end()) {
      throw std::invalid_argument(std::string("substitution: missing rule for '") +
                                  letter(static_cast<Symbol>(s)) + "'");
    }
    images[s] = it->second;
  }
  return Substitution(std::move(images));
}

const Word& Substitution::image(Symbol s) const {
  if (s >= images_.size()) {
    throw std::domain_error(std::string("substitution: unknown symbol '") + letter(s) + "'");
  }
  return images_[s];
}

Word Substitution::apply(std::string_view w) const {
  Word out;
  for (char c : w) {
    if (c < 'a' || static_cast<std::size_t>(symbol_of(c)) >= images_.size()) {
      throw std::domain_error(std::string("substitution: unknown symbol '") + c + "'");
    }
    out += images_[symbol_of(c)];
  }
  return out;
}

Substitution Substitution::then(const Substitution& inner) const {
  std::vector<Word> images;
  images.reserve(inner.images_.size());
  for (const Word& w : inner.images_) images.push_back(apply(w));
  return Substitution(std::move(images));
}

const Substitution& sturmian_sigma0() {
  static const Substitution s({"a", "ba"});
  return s;
}

const Substitution& sturmian_sigma1() {
  static const Substitution s({"ab", "b"});
  return s;
}

std::optional<std::uint64_t> SturmianCF::coefficient(std::size_t i) const {
  if (i < prefix.size()) return prefix[i];
  if (!tail) return std::nullopt;
  switch (tail->kind) {
    case CoefficientRule::Kind::constant:
      return tail->offset;
    case CoefficientRule::Kind::linear:
      return sat_add(sat_mul(tail->scale, i), tail->offset);
    case CoefficientRule::Kind::power_of_two:
      return i >= 64 ? saturated : (std::uint64_t{1} << i);
    case CoefficientRule::Kind::periodic:
      if (tail->period.empty()) return std::nullopt;
      return tail->period[(i - prefix.size()) % tail->period.size()];
  }
  return std::nullopt;
}

void SturmianCF::validate() const {
  if (prefix.empty() && !tail) throw std::invalid_argument("sturmian: no coefficients");
  if (tail && tail->kind == CoefficientRule::Kind::periodic && tail->period.empty()) {
    throw std::invalid_argument("sturmian: empty period");
  }
  // Rules are checked on the first coefficients they produce; all supported
  // rules are non-decreasing or periodic, so this covers every index.
  const std::size_t probe =
      prefix.size() + (tail ? std::max<std::size_t>(2, tail->period.size()) + 1 : 0);
  for (std::size_t i = 1; i < probe; ++i) {
    auto mu = coefficient(i);
    if (mu && *mu == 0) {
      throw std::invalid_argument("sturmian: coefficient mu_" + std::to_string(i) +
                                  " must be >= 1");
    }
  }
}

std::size_t alphabet_size(const SubshiftSpec& spec) {
  struct Visitor {
    std::size_t operator()(const SturmianCF&) const { return 2; }
    std::size_t operator()(const SubstitutionSpec& s) const { return s.rules.alphabet_size(); }
    std::size_t operator()(const FullShiftSpec& s) const { return s.k; }
    std::size_t operator()(const WindowSpec& s) const {
      std::size_t k = 0;
      for (char c : s.window) k = std::max<std::size_t>(k, symbol_of(c) + 1u);
      return k;
    }
  };
  return std::visit(Visitor{}, spec);
}

std::string describe(const SubshiftSpec& spec) {
  struct Visitor {
    std::string operator()(const SturmianCF& cf) const {
      std::string s = "sturmian:cf=";
      for (std::size_t i = 0; i < cf.prefix.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(cf.prefix[i]);
      }
      if (cf.tail) {
        switch (cf.tail->kind) {
          case CoefficientRule::Kind::constant:
            s += ";tail=const:" + std::to_string(cf.tail->offset);
            break;
          case CoefficientRule::Kind::linear:
            s += ";tail=linear:" + std::to_string(cf.tail->scale) + ":" +
                 std::to_string(cf.tail->offset);
            break;
          case CoefficientRule::Kind::power_of_two:
            s += ";tail=pow2";
            break;
          case CoefficientRule::Kind::periodic:
            s += ";tail=periodic:";
            for (std::size_t i = 0; i < cf.tail->period.size(); ++i) {
              if (i) s += ',';
              s += std::to_string(cf.tail->period[i]);
            }
            break;
        }
      }
      return s;
    }
    std::string operator()(const SubstitutionSpec& s) const {
      std::string out = "subst:";
      for (std::size_t i = 0; i < s.rules.alphabet_size(); ++i) {
        if (i) out += ',';
        out += letter(static_cast<Symbol>(i));
        out += '=';
        out += s.rules.image(static_cast<Symbol>(i));
      }
      out += ";seed=";
      out += letter(s.seed);
      return out;
    }
    std::string operator()(const FullShiftSpec& s) const { return "full:" + std::to_string(s.k); }
    std::string operator()(const WindowSpec& s) const { return "window:" + s.window; }
  };
  return std::visit(Visitor{}, spec);
}

Word sturmian_characteristic(const SturmianCF& cf, std::size_t min_len, std::size_t max_len) {
  cf.validate();
  if (min_len == 0) throw std::invalid_argument("sturmian_characteristic: min_len must be >= 1");
  if (max_len < min_len) throw std::invalid_argument("sturmian_characteristic: max_len < min_len");

  // Images of a and b under the composed prefix sigma0^mu0 sigma1^mu1 ...;
  // composing on the right with sigma0 maps b -> B A, with sigma1 maps a -> A B.
  Tail a{"a", 1};
  Tail b{"b", 1};
  for (std::size_t j = 0;; ++j) {
    auto mu = cf.coefficient(j);
    if (!mu) {
      throw std::length_error("sturmian_characteristic: coefficients exhausted before length " +
                              std::to_string(min_len));
    }
    if (j % 2 == 0) {
      b = append_power(b, a, *mu, max_len);
      if (b.length >= min_len) return b.symbols;
    } else {
      a = append_power(a, b, *mu, max_len);
    }
  }
}

std::vector<CharacteristicStage> characteristic_stages(const SturmianCF& cf,
                                                       std::uint64_t length_cap) {
  cf.validate();
  std::vector<CharacteristicStage> out;
  std::uint64_t len_a = 1;
  std::uint64_t len_b = 1;
  for (std::size_t j = 0;; ++j) {
    auto mu = cf.coefficient(j);
    if (!mu) break;
    const std::uint64_t u = (j % 2 == 0) ? len_a : len_b;
    if (u >= length_cap) break;
    out.push_back({j, *mu, u});
    if (j % 2 == 0) {
      len_b = sat_add(len_b, sat_mul(len_a, *mu));
    } else {
      len_a = sat_add(len_a, sat_mul(len_b, *mu));
    }
  }
  return out;
}

Word substitution_fixed_point_prefix(const SubstitutionSpec& spec, std::size_t length) {
  const Word& first = spec.rules.image(spec.seed);
  if (first.front() != letter(spec.seed)) {
    throw std::invalid_argument(std::string("substitution: image of seed '") + letter(spec.seed) +
                                "' does not begin with the seed");
  }
  Word w(1, letter(spec.seed));
  while (w.size() < length) {
    Word next = spec.rules.apply(w);
    if (next.size() == w.size()) {
      throw std::invalid_argument("substitution: fixed point of the seed is finite");
    }
    if (next.size() > length) next.resize(length);
    w = std::move(next);
  }
  w.resize(length);
  return w;
}

Word de_bruijn_window(std::size_t k, std::size_t order) {
  if (k == 0 || k > max_alphabet) throw std::invalid_argument("de_bruijn_window: bad alphabet");
  if (order == 0) return Word(1, 'a');
  double size = 1;
  for (std::size_t i = 0; i < order; ++i) size *= static_cast<double>(k);
  if (size > double(std::size_t{1} << 30)) {
    throw std::length_error("de_bruijn_window: k^order too large");
  }
  if (k == 1) return Word(order, 'a');

  // Fredricksen-Kessler-Maiorana: concatenate Lyndon words whose length divides order.
  Word seq;
  std::vector<std::size_t> a(order + 1, 0);
  auto gen = [&](auto&& self, std::size_t t, std::size_t p) -> void {
    if (t > order) {
      if (order % p == 0) {
        for (std::size_t i = 1; i <= p; ++i) seq += letter(static_cast<Symbol>(a[i]));
      }
      return;
    }
    a[t] = a[t - p];
    self(self, t + 1, p);
    for (std::size_t j = a[t - p] + 1; j < k; ++j) {
      a[t] = j;
      self(self, t + 1, t);
    }
  };
  gen(gen, 1, 1);
  seq += seq.substr(0, order - 1);
  return seq;
}

std::vector<std::uint32_t> border_array(std::string_view w) {
  std::vector<std::uint32_t> fail(w.size(), 0);
  std::uint32_t k = 0;
  for (std::size_t i = 1; i < w.size(); ++i) {
    while (k > 0 && w[i] != w[k]) k = fail[k - 1];
    if (w[i] == w[k]) ++k;
    fail[i] = k;
  }
  return fail;
}

}  // namespace subshift
