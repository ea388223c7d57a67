// SPDX-License-Identifier: Apache-2.0

#ifndef SUBSHIFT_REPORT_HPP
#define SUBSHIFT_REPORT_HPP

#include <string>

#include <json.hpp>

#include "subshift/laplacian.hpp"
#include "subshift/language.hpp"
#include "subshift/tree.hpp"
#include "subshift/zeta.hpp"

namespace subshift {

/// Shortest round-trip decimal form; "inf" / "nan" for non-finite values.
std::string format_number(double x);
std::string format_number(long double x);

/// [{n, count, words?}]; words are listed for levels with at most `max_words` entries.
nlohmann::json language_json(const LanguageTable& table, std::size_t max_words = 64);
/// n,P,g,right_special for n < depth.
std::string language_csv(const LanguageTable& table);

/// [{id, level, word, parent, children, a}]
nlohmann::json tree_json(const MichonTree& tree);
/// u,v,length with u, v the representative words.
std::string graph_csv(const MetricGraph& graph);

/// i,j,value for the nonzero entries.
std::string matrix_csv(const LaplacianMatrix& m);
/// [{index, word, mu}]
nlohmann::json matrix_index_json(const LaplacianMatrix& m);
/// rank,eigenvalue
std::string spectrum_csv(const Spectrum& s);

/// variant,s,N,partial
std::string zeta_csv(const ZetaPartials& partials);

}  // namespace subshift

#endif  // SUBSHIFT_REPORT_HPP
