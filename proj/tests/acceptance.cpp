// One PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "extdual/io.hpp"
#include "extdual/random_modules.hpp"

using namespace extdual;

namespace {

const std::string kData = EXTDUAL_DATA_DIR;

struct Outcome {
  bool passed = true;
  std::string detail;
};

Outcome ext_of_zmod_p() {
  Outcome o;
  std::ostringstream d;
  for (auto [p, n, D] : std::vector<std::tuple<long, int, int>>{{2, 1, 2}, {2, 2, 8}, {3, 1, 4}}) {
    const GradedRing r = bp_ring(p, n);
    const int w = r.max_var_degree();
    const ExtWindow win{static_cast<std::size_t>(n + 2), -2 * w, D + 2 * w};
    const ExtTable t = ext_table(cyclic_p_group(r, 1), win, false);
    bool ok = r.top_degree() == D && t.entries.size() == 1 &&
              t.at(static_cast<std::size_t>(n + 1), D) == ExtEntry{{1}, 0};
    d << "bp(" << p << "," << n << "): " << t.entries.size() << " nonzero, Z/p at (" << n + 1 << "," << D << ") "
      << (ok ? "yes" : "no") << "; ";
    o.passed = o.passed && ok;
  }
  o.detail = d.str();
  return o;
}

Outcome profinite() {
  const ProfiniteReport r = ext_profinite(bp_ring(2, 1), 6);
  Outcome o;
  o.passed = r.certified && r.stages.size() == 6;
  for (const auto& s : r.stages) {
    o.passed = o.passed && s.group == std::vector<int>{s.k};
    if (s.k > 1) o.passed = o.passed && s.surjective && s.kernel_log_order == 1;
  }
  o.detail = std::to_string(r.stages.size()) + " stages, " + (r.certified ? "certified" : "not certified");
  return o;
}

Outcome random_suite() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2024);
  const RandomModuleOptions caps{4, 12, 3, 3};
  int passed = 0, total = 0;
  std::string first_failure;
  for (int i = 0; i < 100; ++i) {
    const GradedRing r = i % 2 ? bp_ring(3, 1) : bp_ring(2, 1);
    const auto m = random_finite_module(r, rng, caps);
    ++total;
    try {
      const DualityReport rep = verify_duality(m);
      if (rep.passed())
        ++passed;
      else if (first_failure.empty())
        first_failure = "module " + std::to_string(i);
    } catch (const std::exception& e) {
      if (first_failure.empty()) first_failure = "module " + std::to_string(i) + ": " + e.what();
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Outcome o;
  o.passed = passed == total && total >= 100 && secs < 900;
  std::ostringstream d;
  d << passed << "/" << total << " modules in " << secs << " s";
  if (!first_failure.empty()) d << ", first failure " << first_failure;
  o.detail = d.str();
  return o;
}

Outcome truncation() {
  LocallyFiniteFamily f;
  f.ring = bp_ring(2, 1);
  for (int j = 0; j <= 20; ++j) f.summands.push_back({cyclic_p_group(f.ring, 1), 4 * j});
  const ExtTable a = ext_via_truncation(f, 8, 3), b = ext_via_truncation(f, 12, 3);
  Outcome o;
  for (std::size_t s = 0; s <= 3; ++s)
    for (int t = a.window.t_lo; t <= 8; ++t) o.passed = o.passed && a.at(s, t) == b.at(s, t);
  for (int t : {2, 6, 10}) o.passed = o.passed && b.is_valid(t) && b.at(2, t) == ExtEntry{{1}, 0};
  for (const auto& [k, e] : b.entries)
    if (b.is_valid(k.second)) o.passed = o.passed && k.first == 2 && (k.second == 2 || k.second == 6 || k.second == 10);
  o.detail = "k=8 and k=12 agree for t <= 8; Z/2 at t = 2, 6, 10";
  return o;
}

Outcome charts() {
  const Chart f1 = chart_from_json(read_json_file(kData + "/charts/fig1.chart"));
  const Chart f2 = chart_from_json(read_json_file(kData + "/charts/fig2.chart"));
  const bool verified = verify_duality(chart_to_module(f2)).passed();
  const Chart d = dualize_chart(f2, 4);
  const bool iso = compare_charts(d, f1).isomorphic();
  const ChartDot* top = d.find("30.7*");
  const bool moved = top && top->degree == 34 && top->filtration == 0;
  Outcome o;
  o.passed = verified && iso && moved && f1.dots.size() == 17 && f2.dots.size() == 17;
  o.detail = std::string("verify ") + (verified ? "ok" : "failed") + ", dual " + (iso ? "isomorphic" : "differs") +
             ", (30,7) -> " + (top ? "(" + std::to_string(top->degree) + "," + std::to_string(top->filtration) + ")" : "missing") +
             ", dots " + std::to_string(f2.dots.size()) + "/" + std::to_string(f1.dots.size());
  return o;
}

Outcome koszul_vs_minimal() {
  const GradedRing r = bp_ring(2, 1);
  Outcome o;
  int cases = 0;
  for (int a : {1, 2})
    for (int b : {1, 2, 3}) {
      const std::vector<PolyElement> seq{PolyElement::constant(PLocalScalar(prime_power(2, a)), 1),
                                         PolyElement::monomial(1, {b})};
      const Resolution k = koszul_resolution(r, seq);
      const Resolution m = minimal_free_resolution(k.module, 2, 2 * b + 4);
      bool same = k.ranks() == m.ranks();
      for (std::size_t s = 0; same && s < k.complex.modules.size(); ++s) {
        auto x = k.complex.modules[s].degrees, y = m.complex.modules[s].degrees;
        std::sort(x.begin(), x.end());
        std::sort(y.begin(), y.end());
        same = x == y;
      }
      o.passed = o.passed && same && verify_exactness(k, -2).ok() && verify_exactness(m, -2).ok();
      ++cases;
    }
  o.detail = std::to_string(cases) + " quotients R/(p^a, x^b)";
  return o;
}

Outcome universal_coefficients() {
  std::mt19937_64 rng(7);
  Outcome o;
  int count = 0;
  for (int i = 0; i < 25; ++i) {
    const GradedRing r = bp_ring(i % 2 ? 3 : 2, 0);
    const auto m = random_finite_module(r, rng, {4, 12, 3, 3});
    const DualityReport rep = verify_duality(m);
    for (int t = rep.window.t_lo; t <= rep.window.t_hi; ++t) o.passed = o.passed && rep.table.at(0, t).is_zero();
    o.passed = o.passed && rep.passed();
    ++count;
  }
  o.detail = std::to_string(count) + " random p-groups";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"Ext of Z/p concentrated at (n+1, D)", ext_of_zmod_p},
      {"pro-system Ext^{2,2}(Z/2^k) = Z/2^k", profinite},
      {"random finite modules satisfy duality", random_suite},
      {"truncations agree below k", truncation},
      {"Figure 2 dualizes to Figure 1", charts},
      {"minimal and Koszul resolutions agree", koszul_vs_minimal},
      {"n = 0 universal coefficients", universal_coefficients},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.passed;
    std::cout << "criterion " << i + 1 << ": " << (o.passed ? "PASS" : "FAIL") << "  " << criteria[i].first << " ("
              << o.detail << ")" << std::endl;
  }
  return all ? 0 : 1;
}
