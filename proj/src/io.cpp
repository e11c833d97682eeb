#include "bwgf/io.hpp"

#include <charconv>
#include <limits>
#include <optional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "bwgf/error.hpp"

namespace bwgf {

using nlohmann::json;

namespace {

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

int as_int(const json& j, const std::string& what) {
  if (!j.is_number_integer()) throw ParseError(what + " must be an integer");
  auto v = j.get<long long>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw ParseError(what + " is out of range");
  }
  return static_cast<int>(v);
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& what) {
  if (!obj.is_object()) throw ParseError(what + " must be a JSON object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [k, v] : obj.items()) {
    if (!ok.count(k)) throw ParseError("unknown key '" + k + "' in " + what);
  }
}

Multigraph graph_from_json(const json& j) {
  check_keys(j, {"vertices", "edges"}, "graph");
  if (!j.contains("vertices")) throw ParseError("graph needs \"vertices\"");
  int n = as_int(j["vertices"], "vertex count");
  if (n < 0) throw ParseError("vertex count must be nonnegative");
  Multigraph g(n);
  if (!j.contains("edges")) return g;
  if (!j["edges"].is_array()) throw ParseError("\"edges\" must be an array");
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() < 2 || e.size() > 3) throw ParseError("each edge must be [a, b] or [a, b, m]");
    int a = as_int(e[0], "edge endpoint"), b = as_int(e[1], "edge endpoint");
    int m = e.size() == 3 ? as_int(e[2], "edge multiplicity") : 1;
    if (a < 0 || b < 0 || a >= n || b >= n) throw ParseError("edge endpoint out of range");
    if (m < 1) throw ParseError("edge multiplicity must be positive");
    g.add_edge(a, b, m);
  }
  return g;
}

json graph_json(const Multigraph& g) {
  json edges = json::array();
  for (const auto& [p, m] : g.edges()) edges.push_back({p.first, p.second, m});
  return {{"vertices", g.vertex_count()}, {"edges", edges}};
}

Multigraph graph_from_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<Multigraph> g;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string s; ls >> s;) tok.push_back(s);
    if (tok.empty()) continue;
    auto num = [&](const std::string& s) {
      int v = 0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw ParseError("line " + std::to_string(lineno) + ": expected an integer, got '" + s + "'");
      }
      return v;
    };
    if (!g) {
      if (tok.size() != 2 || tok[0] != "vertices") {
        throw ParseError("line " + std::to_string(lineno) + ": expected 'vertices n' header");
      }
      int n = num(tok[1]);
      if (n < 0) throw ParseError("vertex count must be nonnegative");
      g.emplace(n);
      continue;
    }
    if (tok.size() < 2 || tok.size() > 3) throw ParseError("line " + std::to_string(lineno) + ": expected 'a b [m]'");
    int a = num(tok[0]), b = num(tok[1]), m = tok.size() == 3 ? num(tok[2]) : 1;
    if (a < 0 || b < 0 || a >= g->vertex_count() || b >= g->vertex_count()) {
      throw ParseError("line " + std::to_string(lineno) + ": edge endpoint out of range");
    }
    if (m < 1) throw ParseError("line " + std::to_string(lineno) + ": edge multiplicity must be positive");
    g->add_edge(a, b, m);
  }
  if (!g) throw ParseError("empty graph description");
  return *g;
}

json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>());
    } catch (const std::invalid_argument&) {
    }
  }
  throw ParseError("coefficient entries must be integers or decimal strings");
}

json poly_json(const LaurentPoly& p) {
  json out = json::array();
  for (const auto& t : p.terms()) {
    json exps = json::object();
    for (const auto& [v, e] : t.mono.factors()) exps[VarRegistry::global().name(v)] = e;
    out.push_back({{"coeff", {integer_json(t.coeff.get_num()), integer_json(t.coeff.get_den())}}, {"exps", exps}});
  }
  return out;
}

LaurentPoly poly_from(const json& j) {
  if (!j.is_array()) throw ParseError("polynomial JSON must be an array of terms");
  std::vector<Term> terms;
  for (const auto& t : j) {
    check_keys(t, {"coeff", "exps"}, "term");
    if (!t.contains("coeff") || !t["coeff"].is_array() || t["coeff"].size() != 2) {
      throw ParseError("term needs \"coeff\": [num, den]");
    }
    Integer den = integer_from_json(t["coeff"][1]);
    if (den == 0) throw ParseError("zero denominator");
    Rational c(integer_from_json(t["coeff"][0]), den);
    c.canonicalize();
    std::vector<Monomial::Factor> f;
    if (t.contains("exps")) {
      if (!t["exps"].is_object()) throw ParseError("\"exps\" must be an object");
      for (const auto& [name, e] : t["exps"].items()) {
        f.emplace_back(VarRegistry::global().intern(name), as_int(e, "exponent"));
      }
    }
    terms.push_back({Monomial::from_factors(std::move(f)), c});
  }
  return LaurentPoly::from_terms(std::move(terms));
}

json poly_list(std::span<const LaurentPoly> ps) {
  json out = json::array();
  for (const auto& p : ps) out.push_back(poly_json(p));
  return out;
}

}  // namespace

Multigraph parse_graph(std::string_view text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return graph_from_json(parse_json(text));
  return graph_from_edge_list(text);
}

std::string graph_to_json(const Multigraph& g) { return graph_json(g).dump(); }

FamilySpec parse_family_spec(std::string_view text) {
  json j = parse_json(text);
  check_keys(j, {"kind", "base", "subgraph", "subgraph_edges", "edges", "mode", "multigraph", "min_subdivisions"},
             "family spec");
  FamilySpec spec;
  if (!j.contains("kind") || !j["kind"].is_string()) throw ParseError("family spec needs a \"kind\" string");
  spec.kind = parse_family_kind(j["kind"].get<std::string>());
  if (!j.contains("base")) throw ParseError("family spec needs a \"base\" graph");
  spec.base = graph_from_json(j["base"]);
  if (j.contains("subgraph")) {
    if (!j["subgraph"].is_array()) throw ParseError("\"subgraph\" must be an array of vertices");
    for (const auto& v : j["subgraph"]) spec.subgraph.push_back(as_int(v, "subgraph vertex"));
  }
  if (j.contains("subgraph_edges")) {
    if (!j["subgraph_edges"].is_array()) throw ParseError("\"subgraph_edges\" must be an array");
    std::vector<std::pair<Multigraph::Pair, int>> edges;
    for (const auto& e : j["subgraph_edges"]) {
      if (!e.is_array() || e.size() < 2 || e.size() > 3) throw ParseError("subgraph edges must be [a, b] or [a, b, m]");
      int m = e.size() == 3 ? as_int(e[2], "multiplicity") : 1;
      edges.push_back({{as_int(e[0], "vertex"), as_int(e[1], "vertex")}, m});
    }
    spec.subgraph_edges = std::move(edges);
  }
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) throw ParseError("\"edges\" must be an array");
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() < 2 || e.size() > 3) throw ParseError("edges must be [a, b] or [a, b, strand]");
      spec.edges.push_back({as_int(e[0], "vertex"), as_int(e[1], "vertex"),
                            e.size() == 3 ? as_int(e[2], "strand") : 0});
    }
  }
  if (j.contains("mode")) {
    if (j["mode"] == "t") {
      spec.mode = CoefficientMode::kT;
    } else if (j["mode"] == "full") {
      spec.mode = CoefficientMode::kFull;
    } else {
      throw ParseError("\"mode\" must be \"t\" or \"full\"");
    }
  }
  if (j.contains("multigraph")) {
    if (!j["multigraph"].is_boolean()) throw ParseError("\"multigraph\" must be a boolean");
    spec.multigraph = j["multigraph"].get<bool>();
  }
  if (j.contains("min_subdivisions")) spec.min_subdivisions = as_int(j["min_subdivisions"], "min_subdivisions");
  validate(spec);
  return spec;
}

std::string family_spec_to_json(const FamilySpec& spec) {
  json j = {{"kind", to_string(spec.kind)},
            {"base", graph_json(spec.base)},
            {"mode", spec.mode == CoefficientMode::kT ? "t" : "full"}};
  if (!spec.subgraph.empty()) j["subgraph"] = spec.subgraph;
  if (spec.subgraph_edges) {
    json se = json::array();
    for (const auto& [p, m] : *spec.subgraph_edges) se.push_back({p.first, p.second, m});
    j["subgraph_edges"] = se;
  }
  if (!spec.edges.empty()) {
    json e = json::array();
    for (const auto& r : spec.edges) e.push_back({r.a, r.b, r.strand});
    j["edges"] = e;
  }
  if (spec.multigraph) j["multigraph"] = true;
  if (spec.min_subdivisions) j["min_subdivisions"] = spec.min_subdivisions;
  return j.dump();
}

std::string poly_to_json(const LaurentPoly& p) { return poly_json(p).dump(); }

LaurentPoly poly_from_json(std::string_view text) { return poly_from(parse_json(text)); }

std::string series_to_json(const TruncatedSeries& s) {
  return json{{"var", VarRegistry::global().name(s.var())}, {"coefficients", poly_list(s.coeffs())}}.dump();
}

std::string rational_to_json(const RationalGF& r) {
  return json{{"var", VarRegistry::global().name(r.var)},
              {"numerator", poly_list(r.numerator)},
              {"denominator", poly_list(r.denominator)}}
      .dump();
}

}  // namespace bwgf
