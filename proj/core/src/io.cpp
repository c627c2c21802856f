#include "extdual/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace extdual {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <typename T>
T get(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("field '") + key + "': " + e.what());
  }
}

void check_kind(const Json& j, const char* kind) {
  if (!j.is_object()) throw InputError(std::string("expected a ") + kind + " document");
  if (j.contains("schema_version") && j.at("schema_version") != kSchemaVersion)
    throw InputError("unsupported schema_version " + j.at("schema_version").dump());
  if (j.contains("kind") && j.at("kind") != kind)
    throw InputError(std::string("expected kind '") + kind + "', found " + j.at("kind").dump());
}

Json header(const char* kind) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = kind;
  return j;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\n");
  return s.substr(b, e - b + 1);
}

int parse_int(const std::string& s, const std::string& context) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InputError("expected an integer in " + context + ", found '" + s + "'");
  }
}

std::vector<std::string> split_top_level(const std::string& s, char sep) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(trim(cur));
  return parts;
}

Json residue_matrix_to_json(const ResidueMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows; ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols; ++j) row.push_back(m(i, j).get_str());
    rows.push_back(std::move(row));
  }
  return rows;
}

ResidueMatrix residue_matrix_from_json(const Json& j, std::size_t rows, std::size_t cols) {
  ResidueMatrix m(rows, cols);
  if (!j.is_array() || j.size() != rows) throw InputError("matrix has the wrong number of rows");
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw InputError("matrix row has the wrong length");
    for (std::size_t k = 0; k < cols; ++k) {
      const Json& e = j[i][k];
      m(i, k) = e.is_string() ? mpz_class(e.get<std::string>()) : mpz_class(e.get<long>());
    }
  }
  return m;
}

Json clause_to_json(const ClauseResult& c) {
  Json j;
  j["passed"] = c.passed;
  j["failures"] = c.failures;
  return j;
}

Json window_to_json(const ExtWindow& w) {
  Json j;
  j["s_max"] = w.s_max;
  j["t_lo"] = w.t_lo;
  j["t_hi"] = w.t_hi;
  return j;
}

}  // namespace

GradedRing parse_ring_spec(const std::string& spec) {
  try {
    if (spec.rfind("bp:", 0) == 0) {
      auto parts = split_top_level(spec.substr(3), ',');
      if (parts.size() != 2) throw InputError("ring shorthand must be bp:p,n");
      return bp_ring(parse_int(parts[0], "ring p"), parse_int(parts[1], "ring n"));
    }
    if (spec.rfind("ring:", 0) == 0) {
      const std::string rest = spec.substr(5);
      const auto colon = rest.find(':');
      if (colon == std::string::npos) throw InputError("ring shorthand must be ring:p:d1,d2,...");
      std::vector<int> degrees;
      const std::string list = trim(rest.substr(colon + 1));
      if (!list.empty())
        for (const auto& d : split_top_level(list, ',')) degrees.push_back(parse_int(d, "ring degrees"));
      return make_ring(parse_int(rest.substr(0, colon), "ring p"), degrees);
    }
  } catch (const InputError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  throw InputError("unrecognized ring '" + spec + "' (use bp:p,n or ring:p:d1,d2,...)");
}

Json ring_to_json(const GradedRing& ring) {
  Json j;
  j["p"] = ring.p;
  j["degrees"] = ring.degrees;
  return j;
}

GradedRing ring_from_json(const Json& j) {
  if (j.is_string()) return parse_ring_spec(j.get<std::string>());
  try {
    return make_ring(get<long>(j, "p"), get<std::vector<int>>(j, "degrees"));
  } catch (const InputError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

Json poly_to_json(const PolyElement& e) {
  Json terms = Json::array();
  for (const auto& [m, c] : e.terms()) {
    Json t;
    t["coefficient"] = c.to_string();
    t["exponents"] = m;
    terms.push_back(std::move(t));
  }
  return terms;
}

PolyElement poly_from_json(const Json& j, std::size_t num_vars) {
  if (!j.is_array()) throw InputError("polynomial must be a list of terms");
  PolyElement e;
  for (const auto& t : j) {
    const Json& c = field(t, "coefficient");
    PLocalScalar coeff;
    try {
      coeff = c.is_string() ? PLocalScalar::parse(c.get<std::string>()) : PLocalScalar(c.get<long>());
    } catch (const std::exception& ex) {
      throw InputError(std::string("coefficient: ") + ex.what());
    }
    auto exps = get<std::vector<int>>(t, "exponents");
    if (exps.size() != num_vars) throw InputError("exponent vector has length " + std::to_string(exps.size()) +
                                                  ", ring has " + std::to_string(num_vars) + " variables");
    for (int x : exps)
      if (x < 0) throw InputError("negative exponent");
    e.add_term(exps, coeff);
  }
  return e;
}

Json presentation_to_json(const GradedModulePresentation& m) {
  Json j = header("module");
  j["ring"] = ring_to_json(m.ring);
  Json gens = Json::array();
  for (std::size_t i = 0; i < m.generators.rank(); ++i) {
    Json g;
    g["label"] = m.generators.labels[i];
    g["degree"] = m.generators.degrees[i];
    gens.push_back(std::move(g));
  }
  j["generators"] = std::move(gens);
  Json rels = Json::array();
  for (std::size_t r = 0; r < m.num_relations(); ++r) {
    Json rel = Json::array();
    for (std::size_t i = 0; i < m.generators.rank(); ++i) {
      const PolyElement& e = m.relations.at(i, r);
      if (e.is_zero()) continue;
      Json part;
      part["generator"] = m.generators.labels[i];
      part["terms"] = poly_to_json(e);
      rel.push_back(std::move(part));
    }
    rels.push_back(std::move(rel));
  }
  j["relations"] = std::move(rels);
  return j;
}

GradedModulePresentation presentation_from_json(const Json& j, const std::optional<GradedRing>& ring_override) {
  check_kind(j, "module");
  GradedRing ring;
  if (ring_override) {
    ring = *ring_override;
  } else if (j.contains("ring")) {
    ring = ring_from_json(j.at("ring"));
  } else {
    throw InputError("module document names no ring; pass one explicitly");
  }
  if (j.contains("builtin")) return builtin_module(get<std::string>(j, "builtin"), ring);

  GradedFreeModule gens;
  std::map<std::string, std::size_t> index;
  for (const auto& g : field(j, "generators")) {
    const auto label = get<std::string>(g, "label");
    if (!index.emplace(label, gens.rank()).second) throw InputError("generator label '" + label + "' repeated");
    gens.add_generator(label, get<int>(g, "degree"));
  }
  std::vector<std::vector<PolyElement>> rels;
  if (j.contains("relations")) {
    for (const auto& rel : j.at("relations")) {
      std::vector<PolyElement> col(gens.rank());
      for (const auto& part : rel) {
        const auto label = get<std::string>(part, "generator");
        auto it = index.find(label);
        if (it == index.end()) throw InputError("relation names unknown generator '" + label + "'");
        col[it->second] += poly_from_json(field(part, "terms"), ring.num_vars());
      }
      rels.push_back(std::move(col));
    }
  }
  try {
    return make_presentation(ring, gens, rels);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

namespace {

PolyElement parse_element(const std::string& text, const GradedRing& ring) {
  const std::size_t n = ring.num_vars();
  mpz_class coeff = 1;
  Monomial mono(n, 0);
  for (const auto& raw : split_top_level(text, '*')) {
    const std::string f = trim(raw);
    if (f.empty()) throw InputError("empty factor in '" + text + "'");
    const auto caret = f.find('^');
    const std::string base = f.substr(0, caret);
    const int power = caret == std::string::npos ? 1 : parse_int(f.substr(caret + 1), "'" + text + "'");
    if (power < 0) throw InputError("negative power in '" + text + "'");
    if (base == "p") {
      coeff *= prime_power(ring.p, power);
    } else if ((base[0] == 'x' || base[0] == 'v') && base.size() > 1) {
      const int i = parse_int(base.substr(1), "'" + text + "'");
      if (i < 1 || static_cast<std::size_t>(i) > n)
        throw InputError("variable " + base + " is not in a ring with " + std::to_string(n) + " variables");
      mono[static_cast<std::size_t>(i - 1)] += power;
    } else {
      mpz_class v = parse_int(base, "'" + text + "'");
      for (int k = 0; k < power; ++k) coeff *= v;
    }
  }
  if (coeff == 0) throw InputError("zero element in '" + text + "'");
  return PolyElement::monomial(PLocalScalar(coeff), mono);
}

GradedModulePresentation builtin_summand(const std::string& spec, const GradedRing& ring) {
  std::string body = spec;
  int shift = 0;
  if (auto at = spec.rfind('@'); at != std::string::npos) {
    body = trim(spec.substr(0, at));
    shift = parse_int(trim(spec.substr(at + 1)), "'" + spec + "'");
  }
  GradedModulePresentation m;
  if (body == "R") {
    GradedFreeModule gens;
    gens.add_generator("1", 0);
    m = make_presentation(ring, gens, {});
  } else if (body.rfind("R/(", 0) == 0 && body.back() == ')') {
    std::vector<PolyElement> elements;
    for (const auto& e : split_top_level(body.substr(3, body.size() - 4), ',')) elements.push_back(parse_element(e, ring));
    m = cyclic_module(ring, elements, 0, "1");
  } else if (body.rfind("Z/", 0) == 0) {
    const std::string q = body.substr(2);
    int k = 0;
    if (q == "p") {
      k = 1;
    } else if (q.rfind("p^", 0) == 0) {
      k = parse_int(q.substr(2), "'" + spec + "'");
    } else {
      const mpz_class v = parse_int(q, "'" + spec + "'");
      k = valuation(v, ring.p);
      if (v <= 1 || v != prime_power(ring.p, k))
        throw InputError("'" + body + "' is not a cyclic group of prime-power order for p = " + std::to_string(ring.p));
    }
    if (k < 1) throw InputError("'" + body + "' needs a positive exponent");
    m = cyclic_p_group(ring, k, 0);
  } else {
    throw InputError("unrecognized module '" + spec + "'");
  }
  return shift ? suspend(m, shift) : m;
}

}  // namespace

GradedModulePresentation builtin_module(const std::string& spec, const GradedRing& ring) {
  std::optional<GradedModulePresentation> out;
  for (const auto& part : split_top_level(spec, '+')) {
    GradedModulePresentation m = builtin_summand(part, ring);
    out = out ? direct_sum(*out, m) : m;
  }
  return *out;
}

Json family_to_json(const LocallyFiniteFamily& f) {
  Json j = header("family");
  j["ring"] = ring_to_json(f.ring);
  Json summands = Json::array();
  for (const auto& s : f.summands) {
    Json e;
    Json m = presentation_to_json(s.module);
    m.erase("schema_version");
    m.erase("ring");
    e["module"] = std::move(m);
    e["offset"] = s.offset;
    summands.push_back(std::move(e));
  }
  j["summands"] = std::move(summands);
  return j;
}

LocallyFiniteFamily family_from_json(const Json& j, const std::optional<GradedRing>& ring_override) {
  check_kind(j, "family");
  LocallyFiniteFamily f;
  if (ring_override)
    f.ring = *ring_override;
  else
    f.ring = ring_from_json(field(j, "ring"));
  for (const auto& s : field(j, "summands")) {
    const Json& mj = field(s, "module");
    const GradedModulePresentation m =
        mj.is_string() ? builtin_module(mj.get<std::string>(), f.ring) : presentation_from_json(mj, f.ring);
    if (s.contains("offsets")) {
      const Json& o = s.at("offsets");
      const int start = get<int>(o, "start"), step = get<int>(o, "step"), count = get<int>(o, "count");
      if (count < 0) throw InputError("offsets.count must be nonnegative");
      for (int i = 0; i < count; ++i) f.summands.push_back({m, start + i * step});
    } else {
      f.summands.push_back({m, s.contains("offset") ? get<int>(s, "offset") : 0});
    }
  }
  return f;
}

Json chart_to_json(const Chart& c) {
  Json j = header("chart");
  j["name"] = c.name;
  j["orientation"] = to_string(c.orientation);
  Json dots = Json::array();
  for (const auto& d : c.dots) {
    Json e;
    e["id"] = d.id;
    e["degree"] = d.degree;
    e["filtration"] = d.filtration;
    dots.push_back(std::move(e));
  }
  j["dots"] = std::move(dots);
  Json edges = Json::array();
  for (const auto& e : c.edges) {
    Json x;
    x["kind"] = to_string(e.kind);
    x["from"] = e.from;
    x["to"] = e.to;
    x["exotic"] = e.exotic;
    edges.push_back(std::move(x));
  }
  j["edges"] = std::move(edges);
  return j;
}

Chart chart_from_json(const Json& j) {
  check_kind(j, "chart");
  Chart c;
  if (j.contains("name")) c.name = get<std::string>(j, "name");
  const std::string orientation = j.contains("orientation") ? get<std::string>(j, "orientation") : "homological";
  if (orientation == "homological")
    c.orientation = Orientation::homological;
  else if (orientation == "cohomological")
    c.orientation = Orientation::cohomological;
  else
    throw InputError("orientation must be homological or cohomological");
  for (const auto& d : field(j, "dots"))
    c.dots.push_back({get<std::string>(d, "id"), get<int>(d, "degree"), get<int>(d, "filtration")});
  if (j.contains("edges"))
    for (const auto& e : j.at("edges")) {
      const auto kind = get<std::string>(e, "kind");
      ChartEdge edge;
      if (kind == "two")
        edge.kind = EdgeKind::two;
      else if (kind == "v1")
        edge.kind = EdgeKind::v1;
      else
        throw ChartError({{"malformed-edge", "unknown edge kind '" + kind + "'"}});
      edge.from = get<std::string>(e, "from");
      edge.to = get<std::string>(e, "to");
      edge.exotic = e.contains("exotic") && get<bool>(e, "exotic");
      c.edges.push_back(std::move(edge));
    }
  require_valid(c);
  return c;
}

Json ext_table_to_json(const ExtTable& t) {
  Json j = header("ext_table");
  j["ring"] = ring_to_json(t.ring);
  j["window"] = window_to_json(t.window);
  j["valid_up_to"] = t.valid_up_to == INT_MAX ? Json(nullptr) : Json(t.valid_up_to);
  Json entries = Json::array();
  for (const auto& [key, e] : t.entries) {
    Json x;
    x["s"] = key.first;
    x["t"] = key.second;
    x["exponents"] = e.exponents;
    x["free_rank"] = e.free_rank;
    x["valid"] = t.is_valid(key.second);
    entries.push_back(std::move(x));
  }
  j["entries"] = std::move(entries);
  Json actions = Json::array();
  for (const auto& [key, m] : t.actions) {
    const auto [var, s, tt] = key;
    Json x;
    x["variable"] = var + 1;
    x["s"] = s;
    x["t"] = tt;
    x["target_t"] = tt - t.ring.degrees[var];
    x["rows"] = m.rows;
    x["cols"] = m.cols;
    x["matrix"] = residue_matrix_to_json(m);
    actions.push_back(std::move(x));
  }
  j["actions"] = std::move(actions);
  return j;
}

ExtTable ext_table_from_json(const Json& j) {
  check_kind(j, "ext_table");
  ExtTable t;
  t.ring = ring_from_json(field(j, "ring"));
  const Json& w = field(j, "window");
  t.window = ExtWindow{get<std::size_t>(w, "s_max"), get<int>(w, "t_lo"), get<int>(w, "t_hi")};
  if (j.contains("valid_up_to") && !j.at("valid_up_to").is_null()) t.valid_up_to = get<int>(j, "valid_up_to");
  for (const auto& e : field(j, "entries"))
    t.entries[{get<std::size_t>(e, "s"), get<int>(e, "t")}] =
        ExtEntry{get<std::vector<int>>(e, "exponents"), get<std::size_t>(e, "free_rank")};
  if (j.contains("actions"))
    for (const auto& a : j.at("actions")) {
      const auto var = get<std::size_t>(a, "variable");
      if (var < 1 || var > t.ring.num_vars()) throw InputError("action names a variable outside the ring");
      t.actions[{var - 1, get<std::size_t>(a, "s"), get<int>(a, "t")}] =
          residue_matrix_from_json(field(a, "matrix"), get<std::size_t>(a, "rows"), get<std::size_t>(a, "cols"));
    }
  return t;
}

Json finiteness_to_json(const FinitenessReport& r) {
  Json j;
  j["verdict"] = to_string(r.verdict);
  j["bottom"] = r.bottom ? Json(*r.bottom) : Json(nullptr);
  j["top"] = r.top ? Json(*r.top) : Json(nullptr);
  Json ranks = Json::array();
  for (const auto& [t, rank] : r.ranks_mod_p) ranks.push_back(Json::array({t, rank}));
  j["ranks_mod_p"] = std::move(ranks);
  j["detail"] = r.detail;
  return j;
}

Json duality_report_to_json(const DualityReport& r) {
  Json j = header("duality_report");
  j["ring"] = ring_to_json(r.table.ring);
  j["window"] = window_to_json(r.window);
  j["support"] = finiteness_to_json(r.support);
  j["passed"] = r.passed();
  Json clauses;
  clauses["vanishing"] = clause_to_json(r.vanishing);
  clauses["orders"] = clause_to_json(r.orders);
  clauses["yoneda"] = clause_to_json(r.yoneda);
  j["clauses"] = std::move(clauses);
  Json table = ext_table_to_json(r.table);
  table.erase("schema_version");
  j["ext_table"] = std::move(table);
  return j;
}

Json resolution_to_json(const Resolution& res, const ExactnessReport& exactness) {
  Json j = header("resolution");
  j["ring"] = ring_to_json(res.module.ring);
  j["minimal"] = res.minimal;
  j["s_max"] = res.s_max;
  j["t_max"] = res.t_max;
  Json stages = Json::array();
  for (std::size_t s = 0; s < res.complex.modules.size(); ++s) {
    Json x;
    x["s"] = s;
    x["rank"] = res.complex.modules[s].rank();
    x["degrees"] = res.complex.modules[s].degrees;
    stages.push_back(std::move(x));
  }
  j["stages"] = std::move(stages);
  Json diffs = Json::array();
  for (std::size_t k = 0; k < res.complex.maps.size(); ++k) {
    const GradedMap& d = res.complex.maps[k];
    Json entries = Json::array();
    for (std::size_t r = 0; r < d.target.rank(); ++r)
      for (std::size_t c = 0; c < d.source.rank(); ++c)
        if (!d.at(r, c).is_zero()) {
          Json e;
          e["row"] = r;
          e["col"] = c;
          e["terms"] = poly_to_json(d.at(r, c));
          entries.push_back(std::move(e));
        }
    Json x;
    x["s"] = k + 1;
    x["entries"] = std::move(entries);
    diffs.push_back(std::move(x));
  }
  j["differentials"] = std::move(diffs);
  Json ex;
  ex["ok"] = exactness.ok();
  ex["d_squared_zero"] = exactness.d_squared_zero;
  Json dd = Json::array();
  for (const auto& [s, t] : exactness.d_squared_failures) dd.push_back(Json::array({s, t}));
  ex["d_squared_failures"] = std::move(dd);
  Json fails = Json::array();
  for (const auto& [s, t] : exactness.failures) fails.push_back(Json::array({s, t}));
  ex["failures"] = std::move(fails);
  j["exactness"] = std::move(ex);
  return j;
}

Json profinite_to_json(const GradedRing& ring, const ProfiniteReport& r) {
  Json j = header("profinite");
  j["ring"] = ring_to_json(ring);
  j["s"] = ring.num_vars() + 1;
  j["t"] = ring.top_degree();
  j["certified"] = r.certified;
  Json stages = Json::array();
  for (const auto& s : r.stages) {
    Json x;
    x["k"] = s.k;
    x["group"] = s.group;
    if (s.k > 1) {
      x["transition"] = residue_matrix_to_json(s.transition);
      x["surjective"] = s.surjective;
      x["kernel_log_order"] = s.kernel_log_order;
    }
    stages.push_back(std::move(x));
  }
  j["stages"] = std::move(stages);
  return j;
}

Json comparison_to_json(const ChartComparison& c) {
  Json j = header("chart_comparison");
  j["isomorphic"] = c.isomorphic();
  j["first_difference"] = c.modules.first_difference ? Json(*c.modules.first_difference) : Json(nullptr);
  j["mismatches"] = c.modules.mismatches;
  j["edge_diff"] = c.edge_diff;
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace extdual
