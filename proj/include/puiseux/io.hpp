#ifndef PUISEUX_IO_HPP
#define PUISEUX_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include <puiseux/henselian.hpp>
#include <puiseux/reduction.hpp>
#include <puiseux/truncated_series.hpp>
#include <puiseux/wilczynski.hpp>
#include <puiseux/xy_polynomial.hpp>

namespace puiseux::io {

using json = nlohmann::json;

json multi_index_json(const MultiIndex& n);
MultiIndex multi_index_from(const json& j, int r);

// Coefficient forms: integer, expression string, {"sym": name, "pow": k},
// {"product": [coeff...]}.
Scalar scalar_from(const json& j, int r, ScalarMode mode);
ScalarMode deduce_scalar_mode(const json& j);

json polynomial_json(const XYPolynomial& p);
XYPolynomial polynomial_from(const json& j);

json series_json(const TruncatedSeries& s);
struct LoadedSeries {
    TruncatedSeries series;
    std::vector<SymbolRule> relations;
};
// Relations listed in the file are parsed but not installed; callers decide
// the rule scope.
LoadedSeries series_from(const json& j);

json shape_json(const wilczynski::SupportShape& s);
wilczynski::SupportShape shape_from(const json& j);

json equation_json(const henselian::HenselianEquation& eq);
henselian::HenselianEquation equation_from(const json& j);

reduction::RamifiedChart chart_from(const json& j);
json chart_json(const reduction::RamifiedChart& c);

json reconstruction_json(const wilczynski::ReconstructionResult& r);
json verdict_json(const wilczynski::AlgebraicityVerdict& v);
json separation_json(const reduction::SeparationOutcome& s);
json witness_json(const reduction::EisensteinWitness& w);

json read_file(const std::string& path);

} // namespace puiseux::io

#endif
