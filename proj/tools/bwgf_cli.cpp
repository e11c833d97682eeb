#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bwgf/bwgf.h"

namespace {

// Process exit codes.
enum Exit { kOk = 0, kVerifyFailed = 1, kBadInput = 2, kBound = 3, kInternal = 4 };

int exit_code(bwgf_status s) {
  switch (s) {
    case BWGF_OK:
      return kOk;
    case BWGF_ERR_VERIFY:
      return kVerifyFailed;
    case BWGF_ERR_PARSE:
    case BWGF_ERR_INVALID:
      return kBadInput;
    case BWGF_ERR_BOUND:
      return kBound;
    default:
      return kInternal;
  }
}

struct InputError {
  std::string message;
};

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError{"cannot open '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Prints the owned string (if any) to stdout, the error to stderr.
int finish(bwgf_status s, char* out) {
  if (out) {
    std::fputs(out, stdout);
    bwgf_string_free(out);
  }
  if (s != BWGF_OK && s != BWGF_ERR_VERIFY) std::fprintf(stderr, "error: %s\n", bwgf_last_error());
  return exit_code(s);
}

struct GraphHandle {
  bwgf_graph* g = nullptr;
  ~GraphHandle() { bwgf_graph_free(g); }
};

struct FamilyHandle {
  bwgf_family* f = nullptr;
  ~FamilyHandle() { bwgf_family_free(f); }
};

// "v=b,u=w" -> vertices and black flags.
void parse_assignments(const std::string& text, std::vector<int>& vertices, std::vector<int>& black) {
  std::istringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError{"restriction '" + item + "' is not of the form vertex=b|w"};
    std::string colour = item.substr(eq + 1);
    if (colour != "b" && colour != "w") throw InputError{"colour in '" + item + "' must be b or w"};
    try {
      std::size_t used = 0;
      int v = std::stoi(item.substr(0, eq), &used);
      if (used != eq) throw std::invalid_argument(item);
      vertices.push_back(v);
    } catch (const std::logic_error&) {
      throw InputError{"vertex in '" + item + "' is not an integer"};
    }
    black.push_back(colour == "b");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Black-white polynomials of multigraphs and their generating functions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(bwgf_version()));

  bool json = false;

  auto* wpoly = app.add_subcommand("wpoly", "W polynomial of a graph (JSON or edge list; '-' reads stdin)");
  std::string graph_path;
  bool full = false;
  std::optional<std::string> restricted;
  wpoly->add_option("graph", graph_path, "graph file")->required();
  wpoly->add_flag("--full", full, "trivariate polynomial in b, w_plus, w_minus");
  wpoly->add_option("--restricted", restricted, "fixed colours, e.g. 0=b,2=w");
  wpoly->add_flag("--json", json, "JSON output");

  auto* family = app.add_subcommand("family", "generating function of a graph family");
  std::string spec_path;
  int terms = 50;
  bool rational = false;
  family->add_option("spec", spec_path, "family spec JSON file")->required();
  auto* terms_opt = family->add_option("--terms", terms, "expand through x^N")->capture_default_str();
  family->add_flag("--rational", rational, "reduced numerator and denominator")->excludes(terms_opt);
  family->add_flag("--json", json, "JSON output");

  auto* allgraphs = app.add_subcommand("allgraphs", "exponential generating function over all multigraphs");
  std::vector<int> degrees;
  int max_half_edges = 12;
  bool connected = false, gaussian = false;
  std::optional<std::string> t_value;
  allgraphs->add_option("--degrees", degrees, "allowed vertex degrees (default 1..U)")->delimiter(',');
  allgraphs->add_option("--max-halfedges", max_half_edges, "truncation U in half-edges")->capture_default_str();
  allgraphs->add_flag("--connected", connected, "connected graphs only");
  allgraphs->add_flag("--gaussian", gaussian, "count graphs without colour weights");
  allgraphs->add_option("--t-value", t_value, "substitute a rational for t");
  allgraphs->add_flag("--json", json, "JSON output");

  auto* wright = app.add_subcommand("wright", "series for connected graphs of fixed loop number");
  int genus = 0, order = 8;
  bool classical = false, trees_only = false, itemize = false;
  wright->add_option("--genus", genus, "loop number g")->required();
  wright->add_option("--order", order, "truncation order")->capture_default_str();
  wright->add_flag("--classical", classical, "uncoloured counting series");
  wright->add_flag("--trees-only", trees_only, "rooted two-coloured tree series");
  wright->add_flag("--itemize", itemize, "per-graph contributions");
  wright->add_flag("--json", json, "JSON output");

  auto* verify = app.add_subcommand("verify", "differential self-checks");
  std::string suite;
  std::optional<int> bound;
  verify->add_option("--suite", suite, "families, feynman, wright or aut")
      ->required()
      ->check(CLI::IsMember({"families", "feynman", "wright", "aut"}));
  verify->add_option("--bound", bound, "instance size bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kBadInput;
  }

  char* out = nullptr;
  bwgf_status s = BWGF_ERR_INTERNAL;
  try {
    if (*wpoly) {
      GraphHandle h;
      s = bwgf_graph_parse(read_input(graph_path).c_str(), &h.g);
      if (s != BWGF_OK) return finish(s, nullptr);
      if (restricted) {
        std::vector<int> vertices, black;
        parse_assignments(*restricted, vertices, black);
        s = bwgf_w_restricted(h.g, vertices.data(), black.data(), vertices.size(), full, json, &out);
      } else {
        s = bwgf_w_polynomial(h.g, full, json, &out);
      }
    } else if (*family) {
      FamilyHandle h;
      s = bwgf_family_parse(read_input(spec_path).c_str(), &h.f);
      if (s != BWGF_OK) return finish(s, nullptr);
      s = rational ? bwgf_family_rational(h.f, json, &out) : bwgf_family_series(h.f, terms, json, &out);
    } else if (*allgraphs) {
      if (degrees.empty()) {
        for (int d = 1; d <= max_half_edges; ++d) degrees.push_back(d);
      }
      s = bwgf_allgraphs(degrees.data(), degrees.size(), max_half_edges, connected, gaussian,
                         t_value ? t_value->c_str() : nullptr, json, &out);
    } else if (*wright) {
      s = bwgf_wright(genus, order, classical, trees_only, itemize, json, &out);
    } else if (*verify) {
      int k = bound.value_or(suite == "feynman" ? 8 : suite == "aut" ? 6 : 5);
      s = bwgf_verify(suite.c_str(), k, &out);
    }
  } catch (const InputError& e) {
    std::fprintf(stderr, "error: %s\n", e.message.c_str());
    return kBadInput;
  }
  return finish(s, out);
}
