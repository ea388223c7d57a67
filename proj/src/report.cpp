// SPDX-License-Identifier: Apache-2.0

#include "subshift/report.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace subshift {

namespace {

template <typename T>
std::string shortest(T x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

}  // namespace

std::string format_number(double x) { return shortest(x); }
std::string format_number(long double x) { return shortest(x); }

nlohmann::json language_json(const LanguageTable& table, std::size_t max_words) {
  auto out = nlohmann::json::array();
  for (std::size_t n = 0; n <= table.depth(); ++n) {
    nlohmann::json rec{{"n", n}, {"count", table.count(n)}};
    if (table.has_words() && table.count(n) <= max_words) {
      auto words = nlohmann::json::array();
      for (auto w : table.words(n)) words.push_back(std::string(w));
      rec["words"] = std::move(words);
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::string language_csv(const LanguageTable& table) {
  std::ostringstream os;
  os << "n,P,g,right_special\n";
  for (std::size_t n = 0; n < table.depth(); ++n) {
    os << n << ',' << table.count(n) << ',' << static_cast<long long>(table.count(n + 1)) - static_cast<long long>(table.count(n))
       << ','
       << right_special_words(table, n).size() << '\n';
  }
  return os.str();
}

nlohmann::json tree_json(const MichonTree& tree) {
  auto out = nlohmann::json::array();
  for (NodeId v = 0; v < tree.size(); ++v) {
    auto children = nlohmann::json::array();
    for (std::size_t i = 0; i < tree.child_count(v); ++i) children.push_back(tree.first_child(v) + i);
    nlohmann::json rec{{"id", v},
                       {"level", tree.level(v)},
                       {"word", std::string(tree.word(v))},
                       {"parent", v == tree.root() ? nlohmann::json(nullptr) : nlohmann::json(tree.parent(v))},
                       {"children", std::move(children)},
                       {"a", tree.branching(v)}};
    out.push_back(std::move(rec));
  }
  return out;
}

std::string graph_csv(const MetricGraph& graph) {
  std::ostringstream os;
  os << "u,v,length\n";
  for (const auto& e : graph.edges) {
    os << graph.labels[e.u] << ',' << graph.labels[e.v] << ',' << format_number(e.length) << '\n';
  }
  return os.str();
}

std::string matrix_csv(const LaplacianMatrix& m) {
  std::ostringstream os;
  os << "i,j,value\n";
  for (Eigen::Index i = 0; i < m.M.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.M.cols(); ++j) {
      if (m.M(i, j) != 0) os << i << ',' << j << ',' << format_number(m.M(i, j)) << '\n';
    }
  }
  return os.str();
}

nlohmann::json matrix_index_json(const LaplacianMatrix& m) {
  auto out = nlohmann::json::array();
  for (std::size_t i = 0; i < m.labels.size(); ++i) {
    out.push_back({{"index", i}, {"word", m.labels[i]}, {"mu", m.mu[i]}});
  }
  return out;
}

std::string spectrum_csv(const Spectrum& s) {
  std::ostringstream os;
  os << "rank,eigenvalue\n";
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
    os << i << ',' << format_number(s.eigenvalues[i]) << '\n';
  }
  return os.str();
}

std::string zeta_csv(const ZetaPartials& p) {
  std::ostringstream os;
  os << "variant,s,N,partial\n";
  for (ZetaVariant v : zeta_variants) {
    for (std::size_t i = 0; i < p.s.size(); ++i) {
      for (std::size_t k = 0; k < p.depths.size(); ++k) {
        os << variant_name(v) << ',' << format_number(p.s[i]) << ',' << p.depths[k] << ','
           << format_number(p.at(v, i, k)) << '\n';
      }
    }
  }
  return os.str();
}

}  // namespace subshift
