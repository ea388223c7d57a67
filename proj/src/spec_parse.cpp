// SPDX-License-Identifier: Apache-2.0

#include "subshift/spec_parse.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace subshift {

namespace {

[[noreturn]] void bad(std::string_view what, std::string_view fragment) {
  throw std::invalid_argument(std::string(what) + ": '" + std::string(fragment) + "'");
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::uint64_t parse_uint(std::string_view s) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) bad("expected an integer", s);
  return v;
}

double parse_real(std::string_view s) {
  double v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) bad("expected a number", s);
  return v;
}

std::vector<std::uint64_t> parse_list(std::string_view s, bool* ellipsis = nullptr) {
  std::vector<std::uint64_t> out;
  if (s.empty()) return out;
  for (auto item : split(s, ',')) {
    if (item == "..." && ellipsis) {
      *ellipsis = true;
      continue;
    }
    out.push_back(parse_uint(item));
  }
  return out;
}

CoefficientRule parse_rule(std::string_view s) {
  CoefficientRule rule;
  const auto parts = split(s, ':');
  if (parts[0] == "const" && parts.size() == 2) {
    rule.kind = CoefficientRule::Kind::constant;
    rule.offset = parse_uint(parts[1]);
  } else if (parts[0] == "linear" && parts.size() == 3) {
    rule.kind = CoefficientRule::Kind::linear;
    rule.scale = parse_uint(parts[1]);
    rule.offset = parse_uint(parts[2]);
  } else if (parts[0] == "pow2" && parts.size() == 1) {
    rule.kind = CoefficientRule::Kind::power_of_two;
  } else if (parts[0] == "periodic" && parts.size() == 2) {
    rule.kind = CoefficientRule::Kind::periodic;
    rule.period = parse_list(parts[1]);
    if (rule.period.empty()) bad("empty period", s);
  } else {
    bad("unknown coefficient rule", s);
  }
  return rule;
}

SturmianCF parse_sturmian(std::string_view body) {
  SturmianCF cf;
  std::vector<std::uint64_t> listed;
  bool have_cf = false;
  for (auto field : split(body, ';')) {
    const auto eq = field.find('=');
    if (eq == std::string_view::npos) bad("expected key=value", field);
    const auto key = field.substr(0, eq), value = field.substr(eq + 1);
    if (key == "cf") {
      listed = parse_list(value, nullptr);
      have_cf = true;
    } else if (key == "tail" || key == "mu") {
      if (cf.tail) bad("coefficient rule given twice", field);
      cf.tail = parse_rule(value);
    } else {
      bad("unknown sturmian field", field);
    }
  }
  if (have_cf && !cf.tail) {
    // A finite expansion would describe a periodic word; read the list as a period.
    if (listed.empty()) bad("empty coefficient list", body);
    CoefficientRule periodic;
    periodic.kind = CoefficientRule::Kind::periodic;
    periodic.period = std::move(listed);
    cf.tail = std::move(periodic);
  } else {
    cf.prefix = std::move(listed);
  }
  cf.validate();
  return cf;
}

}  // namespace

SubshiftSpec parse_spec(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) bad("spec needs kind:body", text);
  const auto kind = text.substr(0, colon), body = text.substr(colon + 1);

  if (kind == "full") {
    const auto k = parse_uint(body);
    if (k == 0 || k > max_alphabet) bad("alphabet size must be in 1..26", body);
    return FullShiftSpec{static_cast<std::size_t>(k)};
  }
  if (kind == "window") {
    if (body.empty()) bad("empty window", text);
    for (char c : body) {
      if (c < 'a' || c > 'z') bad("window letters must be a..z", body);
    }
    return WindowSpec{Word(body)};
  }
  if (kind == "subst") {
    std::map<char, Word> rules;
    Symbol seed = 0;
    const auto fields = split(body, ';');
    for (auto rule : split(fields[0], ',')) {
      if (rule.size() < 3 || rule[1] != '=') bad("expected x=image", rule);
      rules[rule[0]] = Word(rule.substr(2));
    }
    for (std::size_t i = 1; i < fields.size(); ++i) {
      if (fields[i].size() == 6 && fields[i].substr(0, 5) == "seed=") {
        seed = symbol_of(fields[i][5]);
      } else {
        bad("unknown substitution field", fields[i]);
      }
    }
    SubstitutionSpec spec{Substitution::from_rules(rules), seed};
    if (seed >= spec.rules.alphabet_size()) bad("seed outside the alphabet", body);
    if (spec.rules.image(seed).front() != letter(seed)) {
      bad("seed image must begin with the seed", body);
    }
    return spec;
  }
  if (kind == "sturmian") {
    std::string cleaned(body);
    // "cf=1,1,..." and "cf=1,1" mean the same periodic expansion.
    for (auto pos = cleaned.find(",..."); pos != std::string::npos; pos = cleaned.find(",...")) {
      cleaned.erase(pos, 4);
    }
    return parse_sturmian(cleaned);
  }
  bad("unknown spec kind", kind);
}

DeltaSequence parse_delta(std::string_view text) {
  if (text == "exp") return DeltaSequence::exponential();
  if (text == "harmonic") return DeltaSequence::harmonic();
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) bad("unknown delta family", text);
  const auto kind = text.substr(0, colon), body = text.substr(colon + 1);
  if (kind == "geometric") return DeltaSequence::geometric(parse_real(body));
  if (kind == "powerlog") {
    const auto parts = split(body, ',');
    if (parts.size() != 2) bad("powerlog needs a,b", body);
    return DeltaSequence::power_log(parse_real(parts[0]), parse_real(parts[1]));
  }
  if (kind == "table") {
    std::ifstream in{std::string(body)};
    if (!in) bad("cannot read delta table", body);
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::string content = buffer.str();
    for (char& c : content) {
      if (c == ',' || c == '\n' || c == '\r' || c == '\t') c = ' ';
    }
    std::vector<double> values;
    for (auto item : split(content, ' ')) {
      if (!item.empty()) values.push_back(parse_real(item));
    }
    return DeltaSequence::table(std::move(values));
  }
  bad("unknown delta family", text);
}

}  // namespace subshift
