#pragma once

#include <string>
#include <string_view>

#include "bwgf/families.hpp"
#include "bwgf/graph.hpp"
#include "bwgf/series.hpp"

namespace bwgf {

// Graph JSON {"vertices": n, "edges": [[a, b, m], ...]} or the edge-list text
// form ("vertices n" followed by "a b [m]" lines; '#' starts a comment).
// Throws ParseError.
Multigraph parse_graph(std::string_view text);
std::string graph_to_json(const Multigraph& g);

// {"kind", "base", "subgraph", "subgraph_edges", "edges", "mode",
//  "multigraph", "min_subdivisions"}. Throws ParseError; the result is
// validated.
FamilySpec parse_family_spec(std::string_view text);
std::string family_spec_to_json(const FamilySpec& spec);

// [{"coeff": [num, den], "exps": {var: e}}, ...]; integers outside the
// 64-bit range are written as decimal strings.
std::string poly_to_json(const LaurentPoly& p);
LaurentPoly poly_from_json(std::string_view text);

// {"var": name, "coefficients": [poly, ...]}
std::string series_to_json(const TruncatedSeries& s);
// {"var": name, "numerator": [poly, ...], "denominator": [poly, ...]}
std::string rational_to_json(const RationalGF& r);

}  // namespace bwgf
