#include "bwgf/bwgf.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "bwgf/error.hpp"
#include "bwgf/families.hpp"
#include "bwgf/feynman.hpp"
#include "bwgf/io.hpp"
#include "bwgf/verify.hpp"
#include "bwgf/wright.hpp"

struct bwgf_graph {
  bwgf::Multigraph g;
};

struct bwgf_family {
  bwgf::FamilySpec spec;
};

namespace {

// Longest family expansion served through the API.
constexpr int kMaxFamilyTerms = 2000;

thread_local std::string last_error;

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <class F>
bwgf_status guarded(F&& body) {
  last_error.clear();
  try {
    return body();
  } catch (const bwgf::ParseError& e) {
    last_error = e.what();
    return BWGF_ERR_PARSE;
  } catch (const bwgf::BoundError& e) {
    last_error = e.what();
    return BWGF_ERR_BOUND;
  } catch (const bwgf::DomainError& e) {
    last_error = e.what();
    return BWGF_ERR_INVALID;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return BWGF_ERR_BOUND;
  } catch (const std::exception& e) {
    last_error = std::string("internal error: ") + e.what();
    return BWGF_ERR_INTERNAL;
  } catch (...) {
    last_error = "internal error";
    return BWGF_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw bwgf::DomainError(std::string(what) + " must not be NULL");
}

std::string render(const bwgf::LaurentPoly& p, int json) {
  return json ? bwgf::poly_to_json(p) : p.to_string() + "\n";
}

std::string render(const bwgf::TruncatedSeries& s, int json) {
  return json ? bwgf::series_to_json(s) : s.to_string();
}

bwgf_status emit(const std::string& s, char** out) {
  *out = dup(s.empty() || s.back() == '\n' ? s : s + "\n");
  return BWGF_OK;
}

bwgf::Rational parse_rational(const char* text) {
  try {
    bwgf::Rational q(text);
    if (q.get_den() == 0) throw bwgf::ParseError("zero denominator");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw bwgf::ParseError(std::string("expected a rational p or p/q, got '") + text + "'");
  }
}

}  // namespace

extern "C" {

const char* bwgf_version(void) { return "1.0.0"; }

const char* bwgf_last_error(void) { return last_error.c_str(); }

void bwgf_string_free(char* s) { std::free(s); }

bwgf_status bwgf_graph_parse(const char* text, bwgf_graph** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new bwgf_graph{bwgf::parse_graph(text)};
    return BWGF_OK;
  });
}

void bwgf_graph_free(bwgf_graph* g) { delete g; }

int bwgf_graph_vertex_count(const bwgf_graph* g) { return g ? g->g.vertex_count() : -1; }

bwgf_status bwgf_w_polynomial(const bwgf_graph* g, int full, int json, char** out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    return emit(render(full ? bwgf::full_w_polynomial(g->g) : bwgf::w_polynomial(g->g), json), out);
  });
}

bwgf_status bwgf_w_restricted(const bwgf_graph* g, const int* vertices, const int* black, size_t count, int full,
                              int json, char** out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    if (count) {
      require(vertices, "vertices");
      require(black, "black");
    }
    std::vector<int> fixed(vertices, vertices + count);
    std::vector<bool> colour(count);
    for (std::size_t i = 0; i < count; ++i) colour[i] = black[i] != 0;
    auto p = full ? bwgf::full_w_restricted(g->g, fixed, colour) : bwgf::w_restricted(g->g, fixed, colour);
    return emit(render(p, json), out);
  });
}

bwgf_status bwgf_poly_normalize(const char* input, int json, char** out) {
  return guarded([&] {
    require(input, "input");
    require(out, "out");
    std::string_view s(input);
    auto first = s.find_first_not_of(" \t\r\n");
    bool is_json = first != std::string_view::npos && s[first] == '[';
    return emit(render(is_json ? bwgf::poly_from_json(s) : bwgf::parse_poly(s), json), out);
  });
}

bwgf_status bwgf_family_parse(const char* json, bwgf_family** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    *out = new bwgf_family{bwgf::parse_family_spec(json)};
    return BWGF_OK;
  });
}

void bwgf_family_free(bwgf_family* f) { delete f; }

bwgf_status bwgf_family_series(const bwgf_family* f, int terms, int json, char** out) {
  return guarded([&] {
    require(f, "family");
    require(out, "out");
    if (terms < 0) throw bwgf::DomainError("term count must be nonnegative");
    if (terms > kMaxFamilyTerms) {
      throw bwgf::BoundError("term count " + std::to_string(terms) + " exceeds " + std::to_string(kMaxFamilyTerms));
    }
    bwgf::TruncatedSeries s(bwgf::kX, bwgf::expand_family(f->spec, terms));
    return emit(render(s, json), out);
  });
}

bwgf_status bwgf_family_rational(const bwgf_family* f, int json, char** out) {
  return guarded([&] {
    require(f, "family");
    require(out, "out");
    auto r = bwgf::rational_family_gf(f->spec);
    return emit(json ? bwgf::rational_to_json(r) : r.to_string(), out);
  });
}

bwgf_status bwgf_allgraphs(const int* degrees, size_t degree_count, int max_half_edges, int connected, int gaussian,
                           const char* t_value, int json, char** out) {
  return guarded([&] {
    require(out, "out");
    if (degree_count) require(degrees, "degrees");
    auto filter = bwgf::DegreeFilter::of(std::vector<int>(degrees, degrees + degree_count), max_half_edges);
    bwgf::TruncatedSeries s = gaussian ? (connected ? bwgf::connected_gaussian_series(filter)
                                                    : bwgf::gaussian_graph_series(filter))
                                       : (connected ? bwgf::connected_bw_series(filter) : bwgf::bw_graph_series(filter));
    if (t_value && !gaussian) {
      bwgf::Rational q = parse_rational(t_value);
      s = s.map([&](const bwgf::LaurentPoly& p) { return p.evaluate({{bwgf::kT, q}}); });
    }
    return emit(render(s, json), out);
  });
}

bwgf_status bwgf_wright(int genus, int order, int classical, int trees_only, int itemize, int json, char** out) {
  return guarded([&] {
    require(out, "out");
    if (order < 1) throw bwgf::DomainError("order must be at least 1");
    if (trees_only) return emit(render(bwgf::colored_tree_triple(order).total(), json), out);
    if (classical) return emit(render(bwgf::classical_a(genus, order), json), out);
    auto total = bwgf::w_g_series(genus, order);
    if (!itemize) return emit(render(total, json), out);
    auto items = bwgf::itemize_w_g(genus, order);
    if (json) {
      std::string s = "{\"series\":" + bwgf::series_to_json(total) + ",\"contributions\":[";
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) s += ",";
        s += "{\"graph\":" + bwgf::graph_to_json(items[i].graph) + ",\"aut\":" + items[i].aut.get_str() +
             ",\"series\":" + bwgf::series_to_json(items[i].series) + "}";
      }
      return emit(s + "]}", out);
    }
    std::ostringstream s;
    s << total.to_string();
    for (const auto& it : items) {
      s << "# graph " << bwgf::graph_to_json(it.graph) << " aut " << it.aut.get_str() << "\n" << it.series.to_string();
    }
    return emit(s.str(), out);
  });
}

bwgf_status bwgf_verify(const char* suite, int bound, char** report) {
  return guarded([&] {
    require(suite, "suite");
    require(report, "report");
    auto r = bwgf::run_verify(suite, bound);
    emit(r.to_string(), report);
    if (r.passed()) return BWGF_OK;
    last_error = "verification failed";
    return BWGF_ERR_VERIFY;
  });
}

}  // extern "C"
