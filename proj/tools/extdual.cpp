// extdual: command-line front end for the engine.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <thread>

#include "extdual/io.hpp"
#include "extdual/random_modules.hpp"

using namespace extdual;

namespace {

enum Exit { kOk = 0, kVerificationFailure = 1, kInputError = 2, kBoundExceeded = 3 };

struct Options {
  std::string ring;
  std::string module;
  std::string family;
  std::string out;
  std::string format = "json";
  std::optional<std::size_t> s_max;
  std::optional<int> t_lo;
  std::optional<int> t_hi;
  std::optional<int> t_max;
  std::optional<int> probe;
  std::string koszul;
  int k_max = 6;
  int k = 8;
  bool no_actions = false;
  // suite
  std::vector<std::string> rings{"bp:2,1", "bp:3,1"};
  int count = 100;
  std::uint64_t seed = 1;
  RandomModuleOptions caps;
  // chart
  std::string chart_in;
  std::string left;
  std::string right;
  int shift = 0;
};

void emit(const Options& o, const std::string& text) {
  if (o.out.empty() || o.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw InputError("cannot write '" + o.out + "'");
  f << text;
}

std::optional<GradedRing> ring_option(const Options& o) {
  if (o.ring.empty()) return std::nullopt;
  return parse_ring_spec(o.ring);
}

GradedModulePresentation load_module(const Options& o) {
  if (o.module.empty()) throw InputError("--module is required");
  const auto ring = ring_option(o);
  if (std::filesystem::exists(o.module)) return presentation_from_json(read_json_file(o.module), ring);
  if (!ring) throw InputError("'" + o.module + "' is not a file; a built-in module needs --ring");
  return builtin_module(o.module, *ring);
}

ExtWindow window_for(const Options& o, const GradedModulePresentation& m, const FinitenessReport& support) {
  ExtWindow w = default_window(m.ring, support);
  if (o.s_max) w.s_max = *o.s_max;
  if (o.t_lo) w.t_lo = *o.t_lo;
  if (o.t_hi) w.t_hi = *o.t_hi;
  if (w.t_lo > w.t_hi) throw InputError("empty degree window");
  return w;
}

FinitenessReport support_of(const Options& o, const GradedModulePresentation& m) {
  if (!o.probe) return require_finite(m);
  auto r = check_local_finiteness(m, *o.probe);
  if (r.verdict != Finiteness::finite)
    throw NotLocallyFinite("module is not locally finite (" + to_string(r.verdict) + "): " + r.detail);
  return r;
}

std::string group_text(const std::vector<int>& exps, long p, std::size_t free_rank) {
  std::string s;
  for (int e : exps) s += (s.empty() ? "" : " + ") + std::string("Z/") + std::to_string(p) + (e > 1 ? "^" + std::to_string(e) : "");
  for (std::size_t i = 0; i < free_rank; ++i) s += (s.empty() ? "" : " + ") + std::string("Z_(") + std::to_string(p) + ")";
  return s.empty() ? "0" : s;
}

std::string table_text(const ExtTable& t) {
  std::ostringstream out;
  out << "Ext^{s,t} for s <= " << t.window.s_max << ", " << t.window.t_lo << " <= t <= " << t.window.t_hi << "\n";
  if (t.entries.empty()) out << "  all zero\n";
  for (const auto& [key, e] : t.entries)
    out << "  (" << key.first << "," << key.second << ") " << group_text(e.exponents, t.ring.p, e.free_rank)
        << (t.is_valid(key.second) ? "" : "  [indeterminate]") << "\n";
  return out.str();
}

int run_ext(const Options& o) {
  const auto m = load_module(o);
  const auto support = support_of(o, m);
  const ExtWindow w = window_for(o, m, support);
  const auto ext = ext_computation(m, w, support);
  const ExtTable t = ext_table(ext, w, !o.no_actions);
  emit(o, o.format == "text" ? table_text(t) : dump(ext_table_to_json(t)));
  return kOk;
}

int run_resolve(const Options& o) {
  Resolution res;
  int t_lo = 0;
  if (!o.koszul.empty()) {
    const auto ring = ring_option(o);
    if (!ring) throw InputError("--koszul needs --ring");
    const auto m = builtin_module("R/(" + o.koszul + ")", *ring);
    std::vector<PolyElement> elements;
    for (std::size_t r = 0; r < m.num_relations(); ++r) elements.push_back(m.relations.at(0, r));
    try {
      res = koszul_resolution(*ring, elements);
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  } else {
    const auto m = load_module(o);
    const int maxvar = m.ring.max_var_degree();
    int hi = 0;
    for (int d : m.generators.degrees) hi = std::max(hi, d);
    for (int d : m.relations.source.degrees) hi = std::max(hi, d);
    const auto support = check_local_finiteness(m, o.probe.value_or(default_probe_bound(m)));
    if (support.verdict == Finiteness::finite) hi = std::max(hi, *support.top);
    t_lo = bottom_degree(m).value_or(0) - maxvar;
    res = minimal_free_resolution(m, o.s_max.value_or(m.ring.num_vars() + 1),
                                  o.t_max.value_or(hi + m.ring.top_degree() + maxvar));
  }
  const ExactnessReport ex = verify_exactness(res, t_lo);
  if (o.format == "text") {
    std::ostringstream out;
    out << (res.minimal ? "minimal" : "koszul") << " resolution, ranks";
    for (auto r : res.ranks()) out << " " << r;
    out << "\nexact: " << (ex.ok() ? "yes" : "no") << "\n";
    for (const auto& [s, t] : ex.d_squared_failures) out << "  d^2 nonzero at (s,t)=(" << s << "," << t << ")\n";
    for (const auto& [s, t] : ex.failures) out << "  homology wrong at (s,t)=(" << s << "," << t << ")\n";
    emit(o, out.str());
  } else {
    emit(o, dump(resolution_to_json(res, ex)));
  }
  return ex.ok() ? kOk : kVerificationFailure;
}

std::string clause_text(const char* name, const ClauseResult& c) {
  std::string s = std::string("  ") + name + ": " + (c.passed ? "pass" : "FAIL") + "\n";
  for (const auto& f : c.failures) s += "    " + f + "\n";
  return s;
}

int run_verify(const Options& o) {
  const auto m = load_module(o);
  std::optional<ExtWindow> w;
  if (o.s_max || o.t_lo || o.t_hi || o.probe) w = window_for(o, m, support_of(o, m));
  const DualityReport r = verify_duality(m, w);
  if (o.format == "text") {
    std::string s = table_text(r.table);
    s += clause_text("vanishing", r.vanishing) + clause_text("orders", r.orders) + clause_text("yoneda", r.yoneda);
    s += std::string("duality: ") + (r.passed() ? "verified" : "FAILED") + "\n";
    emit(o, s);
  } else {
    emit(o, dump(duality_report_to_json(r)));
  }
  return r.passed() ? kOk : kVerificationFailure;
}

int run_profinite(const Options& o) {
  const GradedRing ring = o.ring.empty() ? bp_ring(2, 1) : parse_ring_spec(o.ring);
  if (o.k_max < 1) throw InputError("--kmax must be positive");
  const ProfiniteReport r = ext_profinite(ring, o.k_max);
  if (o.format == "text") {
    std::ostringstream out;
    const auto s = ring.num_vars() + 1;
    for (const auto& st : r.stages) {
      out << "k=" << st.k << "  Ext^{" << s << "," << ring.top_degree() << "} = " << group_text(st.group, ring.p, 0);
      if (st.k > 1)
        out << "  transition " << (st.surjective ? "onto" : "NOT onto") << ", kernel order " << ring.p << "^"
            << st.kernel_log_order;
      out << "\n";
    }
    out << (r.certified ? "certified\n" : "NOT certified\n");
    emit(o, out.str());
  } else {
    emit(o, dump(profinite_to_json(ring, r)));
  }
  return r.certified ? kOk : kVerificationFailure;
}

int run_truncate(const Options& o) {
  if (o.family.empty()) throw InputError("--family is required");
  const auto f = family_from_json(read_json_file(o.family), ring_option(o));
  const ExtTable t = ext_via_truncation(f, o.k, o.s_max.value_or(f.ring.num_vars() + 2));
  emit(o, o.format == "text" ? table_text(t) : dump(ext_table_to_json(t)));
  return kOk;
}

unsigned worker_count() {
  if (const char* env = std::getenv("EXTDUAL_WORKERS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
    throw InputError(std::string("EXTDUAL_WORKERS must be a positive integer, found '") + env + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int run_suite(const Options& o) {
  if (o.count < 0) throw InputError("--count must be nonnegative");
  std::vector<GradedRing> rings;
  for (const auto& r : o.rings) rings.push_back(parse_ring_spec(r));
  if (rings.empty()) throw InputError("--rings is empty");

  struct Case {
    std::string ring;
    GradedModulePresentation module;
    bool passed = false;
    std::vector<std::string> failures;
  };
  std::vector<Case> cases(static_cast<std::size_t>(o.count));
  for (std::size_t i = 0; i < cases.size(); ++i) {
    std::seed_seq seq{o.seed, static_cast<std::uint64_t>(i)};
    std::mt19937_64 rng(seq);
    const auto& ring = rings[i % rings.size()];
    cases[i].ring = o.rings[i % rings.size()];
    cases[i].module = random_finite_module(ring, rng, o.caps);
  }

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < cases.size();) {
      try {
        const DualityReport r = verify_duality(cases[i].module);
        cases[i].passed = r.passed();
        for (const auto* c : {&r.vanishing, &r.orders, &r.yoneda})
          cases[i].failures.insert(cases[i].failures.end(), c->failures.begin(), c->failures.end());
      } catch (const std::exception& e) {
        cases[i].failures.push_back(e.what());
      }
    }
  };
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::thread> pool;
  const unsigned workers = std::min<unsigned>(worker_count(), std::max<std::size_t>(1, cases.size()));
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::size_t passed = 0;
  Json list = Json::array();
  for (std::size_t i = 0; i < cases.size(); ++i) {
    passed += cases[i].passed;
    Json c;
    c["index"] = i;
    c["ring"] = cases[i].ring;
    c["passed"] = cases[i].passed;
    c["failures"] = cases[i].failures;
    Json m = presentation_to_json(cases[i].module);
    m.erase("schema_version");
    c["module"] = std::move(m);
    list.push_back(std::move(c));
  }
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "suite";
  j["seed"] = o.seed;
  j["count"] = cases.size();
  j["passed"] = passed;
  j["cases"] = std::move(list);
  emit(o, dump(j));
  std::cerr << passed << "/" << cases.size() << " modules verified in " << secs << " s on " << workers << (workers == 1 ? " worker\n" : " workers\n");
  return passed == cases.size() ? kOk : kVerificationFailure;
}

Chart load_chart(const std::string& path) {
  if (path.empty()) throw InputError("chart path is required");
  return chart_from_json(read_json_file(path));
}

int run_chart_dual(const Options& o) {
  emit(o, dump(chart_to_json(dualize_chart(load_chart(o.chart_in), o.shift))));
  return kOk;
}

int run_chart_render(const Options& o) {
  RenderFormat f;
  if (o.format == "svg")
    f = RenderFormat::svg;
  else if (o.format == "ascii")
    f = RenderFormat::ascii;
  else
    throw InputError("--format must be svg or ascii");
  emit(o, render_chart(load_chart(o.chart_in), f));
  return kOk;
}

int run_chart_compare(const Options& o) {
  const Chart a = load_chart(o.left), b = load_chart(o.right);
  if (a.orientation != b.orientation) throw InputError("charts have different orientations");
  const ChartComparison c = compare_charts(a, b);
  if (o.format == "text") {
    std::string s = c.isomorphic() ? "isomorphic\n" : "NOT isomorphic\n";
    for (const auto& m : c.modules.mismatches) s += "  " + m + "\n";
    for (const auto& e : c.edge_diff) s += "  edge " + e + "\n";
    emit(o, s);
  } else {
    emit(o, dump(comparison_to_json(c)));
  }
  return c.isomorphic() ? kOk : kVerificationFailure;
}

void module_flags(CLI::App* c, Options& o) {
  c->add_option("--ring", o.ring, "bp:p,n or ring:p:d1,d2,...; overrides the file's ring");
  c->add_option("--module", o.module, "module file or built-in (Z/p, Z/p^k, R/(p,x1^2), Z/p+Z/p@4, ...)");
  c->add_option("--probe", o.probe, "degree bound for the local finiteness probe")->check(CLI::PositiveNumber);
}

void window_flags(CLI::App* c, Options& o) {
  c->add_option("--smax", o.s_max, "highest homological degree")->check(CLI::PositiveNumber);
  c->add_option("--tlo", o.t_lo, "lowest internal degree");
  c->add_option("--thi", o.t_hi, "highest internal degree");
}

void output_flags(CLI::App* c, Options& o, std::vector<std::string> formats) {
  c->add_option("--out,-o", o.out, "output path (default stdout)");
  c->add_option("--format", o.format, "output format")->check(CLI::IsMember(formats));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Ext and duality for graded modules over Z_(p)[x_1..x_n]"};
  app.require_subcommand(1);
  Options o;
  std::function<int()> action;

  auto* ext = app.add_subcommand("ext", "tabulate Ext^{s,t}(M, R)");
  module_flags(ext, o);
  window_flags(ext, o);
  output_flags(ext, o, {"json", "text"});
  ext->add_flag("--no-actions", o.no_actions, "omit the x_i-action matrices");
  ext->callback([&] { action = [&] { return run_ext(o); }; });

  auto* resolve = app.add_subcommand("resolve", "minimal (or Koszul) free resolution with an exactness check");
  module_flags(resolve, o);
  output_flags(resolve, o, {"json", "text"});
  resolve->add_option("--smax", o.s_max, "last stage")->check(CLI::PositiveNumber);
  resolve->add_option("--tmax", o.t_max, "highest generator degree");
  resolve->add_option("--koszul", o.koszul, "resolve R/(e1,...) by its Koszul complex, e.g. \"p^2,x1^3\"");
  resolve->callback([&] { action = [&] { return run_resolve(o); }; });

  auto* verify = app.add_subcommand("verify", "verify Ext^{n+1}(M, R) = Σ^D M^∨ with its Yoneda map");
  module_flags(verify, o);
  window_flags(verify, o);
  output_flags(verify, o, {"json", "text"});
  verify->callback([&] { action = [&] { return run_verify(o); }; });

  auto* profinite = app.add_subcommand("profinite", "the pro-system k -> Ext^{n+1,D}(Z/p^k, R)");
  profinite->add_option("--ring", o.ring, "ring (default bp:2,1)");
  profinite->add_option("--kmax", o.k_max, "largest k")->check(CLI::PositiveNumber);
  output_flags(profinite, o, {"json", "text"});
  profinite->callback([&] { action = [&] { return run_profinite(o); }; });

  auto* truncate = app.add_subcommand("truncate", "Ext of a locally finite family through its truncation Q_k");
  truncate->add_option("--family", o.family, "family file")->required();
  truncate->add_option("--ring", o.ring, "overrides the file's ring");
  truncate->add_option("--k", o.k, "truncation degree");
  truncate->add_option("--smax", o.s_max, "highest homological degree")->check(CLI::PositiveNumber);
  output_flags(truncate, o, {"json", "text"});
  truncate->callback([&] { action = [&] { return run_truncate(o); }; });

  auto* suite = app.add_subcommand("suite", "verify duality on random finite modules");
  suite->add_option("--rings", o.rings, "rings to draw from, round robin");
  suite->add_option("--count", o.count, "number of modules");
  suite->add_option("--seed", o.seed, "random seed");
  suite->add_option("--max-gens", o.caps.max_generators, "generators per module")->check(CLI::PositiveNumber);
  suite->add_option("--max-degree", o.caps.max_degree, "highest generator degree")->check(CLI::NonNegativeNumber);
  suite->add_option("--max-exponent", o.caps.max_exponent, "largest p-exponent")->check(CLI::PositiveNumber);
  suite->add_option("--out,-o", o.out, "report path (default stdout)");
  suite->callback([&] { action = [&] { return run_suite(o); }; });

  auto* chart = app.add_subcommand("chart", "v1-charts over Z_(2)[v1]");
  chart->require_subcommand(1);
  auto* dual = chart->add_subcommand("dual", "Pontryagin dual chart");
  dual->add_option("--in", o.chart_in, "chart file")->required();
  dual->add_option("--shift", o.shift, "degree shift d -> d + shift");
  dual->add_option("--out,-o", o.out, "output path (default stdout)");
  dual->callback([&] { action = [&] { return run_chart_dual(o); }; });
  auto* render = chart->add_subcommand("render", "draw a chart");
  render->add_option("--in", o.chart_in, "chart file")->required();
  o.format = "json";
  render->add_option("--out,-o", o.out, "output path (default stdout)");
  render->add_option("--format", o.format, "svg or ascii")->check(CLI::IsMember({"svg", "ascii"}));
  render->callback([&] {
    if (o.format == "json") o.format = "svg";
    action = [&] { return run_chart_render(o); };
  });
  auto* compare = chart->add_subcommand("compare", "compare the modules of two charts");
  compare->add_option("--left", o.left, "chart file")->required();
  compare->add_option("--right", o.right, "chart file")->required();
  output_flags(compare, o, {"json", "text"});
  compare->callback([&] { action = [&] { return run_chart_compare(o); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    return action();
  } catch (const BoundExceeded& e) {
    std::cerr << "extdual: bound exceeded: " << e.what() << "\n";
    return kBoundExceeded;
  } catch (const ChartError& e) {
    std::cerr << "extdual: invalid chart\n";
    for (const auto& d : e.diagnostics()) std::cerr << "  " << d.kind << ": " << d.message << "\n";
    return kInputError;
  } catch (const LiftingFailure& e) {
    std::cerr << "extdual: " << e.what() << "\n";
    return kVerificationFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "extdual: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "extdual: " << e.what() << "\n";
    return kVerificationFailure;
  }
}
