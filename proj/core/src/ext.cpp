#include "extdual/ext.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace extdual {

namespace {

std::string exponents_string(const std::vector<int>& e) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
  os << ']';
  return os.str();
}

std::string at_string(std::size_t s, int t) {
  return "(s,t)=(" + std::to_string(s) + "," + std::to_string(t) + ")";
}

int action_width(const GradedRing& ring) { return std::max(1, ring.max_var_degree()); }

}  // namespace

std::string to_string(Finiteness f) {
  switch (f) {
    case Finiteness::finite:
      return "finite";
    case Finiteness::infinite:
      return "infinite";
    case Finiteness::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

int default_probe_bound(const GradedModulePresentation& m) {
  int hi = 0;
  for (int d : m.generators.degrees) hi = std::max(hi, d);
  for (int d : m.relations.source.degrees) hi = std::max(hi, d);
  return hi + 64 * action_width(m.ring);
}

FinitenessReport check_local_finiteness(const GradedModulePresentation& m, int probe_bound) {
  FinitenessReport report;
  if (m.generators.rank() == 0) {
    report.verdict = Finiteness::finite;
    report.detail = "no generators";
    return report;
  }
  const auto& degs = m.generators.degrees;
  const int lo = *std::min_element(degs.begin(), degs.end());
  const int hi = *std::max_element(degs.begin(), degs.end());
  const int w = action_width(m.ring);
  int period = 1;
  for (int d : m.ring.degrees) period = std::lcm(period, d);

  std::map<int, int> orders;
  int zeros = 0;
  for (int t = lo; t <= probe_bound; ++t) {
    ModuleSlice s = module_slice(m, t);
    if (s.group.free_rank() > 0) {
      report.verdict = Finiteness::infinite;
      report.detail = "M_" + std::to_string(t) + " has free rank " + std::to_string(s.group.free_rank());
      return report;
    }
    const std::size_t rank = s.group.exponents().size();
    orders[t] = s.group.log_order();
    if (rank > 0) {
      report.ranks_mod_p[t] = rank;
      if (!report.bottom) report.bottom = t;
      report.top = t;
      zeros = 0;
    } else {
      ++zeros;
    }
    if (t >= hi + w && zeros >= w) {
      report.verdict = Finiteness::finite;
      report.detail = "M_t = 0 for " + std::to_string(t - w + 1) + " <= t <= " + std::to_string(t) +
                      ", above every generator";
      return report;
    }
  }
  report.bottom.reset();
  report.top.reset();
  int presented = hi;
  for (int d : m.relations.source.degrees) presented = std::max(presented, d);
  const int start = probe_bound - 2 * period + 1;
  if (start > presented) {
    bool repeats = true, nonzero = false;
    for (int t = start; t < start + period; ++t) {
      if (orders[t] != orders[t + period]) repeats = false;
      if (orders[t] != 0) nonzero = true;
    }
    if (repeats && nonzero) {
      report.verdict = Finiteness::infinite;
      report.detail = "slice orders repeat with period " + std::to_string(period) + " up to degree " +
                      std::to_string(probe_bound);
      return report;
    }
  }
  report.verdict = Finiteness::inconclusive;
  report.detail = "slices do not vanish up to degree " + std::to_string(probe_bound);
  return report;
}

FinitenessReport require_finite(const GradedModulePresentation& m) {
  FinitenessReport r = check_local_finiteness(m, default_probe_bound(m));
  if (r.verdict != Finiteness::finite) throw NotLocallyFinite("module is not locally finite (" + to_string(r.verdict) + "): " + r.detail);
  return r;
}

ExtWindow default_window(const GradedRing& ring, const FinitenessReport& support) {
  const int w = ring.max_var_degree();
  ExtWindow win;
  win.s_max = ring.num_vars() + 2;
  win.t_lo = support.bottom.value_or(0) - w;
  win.t_hi = support.top.value_or(0) + ring.top_degree() + w;
  return win;
}

ExtEntry ExtTable::at(std::size_t s, int t) const {
  auto it = entries.find({s, t});
  return it == entries.end() ? ExtEntry{} : it->second;
}

ExtTable ext_table(const ExtComputation& ext, const ExtWindow& window, bool with_actions) {
  ExtTable table;
  table.ring = ext.ring();
  table.window = window;
  for (std::size_t s = 0; s <= window.s_max; ++s)
    for (int t = window.t_lo; t <= window.t_hi; ++t) {
      const SubquotientGroup& g = ext.group(s, t);
      if (g.is_zero()) continue;
      table.entries[{s, t}] = ExtEntry{g.exponents(), g.free_rank()};
      if (!with_actions) continue;
      for (std::size_t var = 0; var < table.ring.num_vars(); ++var) {
        ResidueMatrix a = ext.action(var, s, t);
        if (!a.is_zero()) table.actions[{var, s, t}] = std::move(a);
      }
    }
  return table;
}

ExtComputation ext_computation(const GradedModulePresentation& m, const ExtWindow& window,
                               const FinitenessReport& support) {
  const GradedRing& ring = m.ring;
  const int t_res = std::max(window.t_hi, support.top.value_or(0) + ring.top_degree()) + ring.max_var_degree();
  const std::size_t s_res = std::max(window.s_max, ring.num_vars() + 1);
  return ExtComputation(minimal_free_resolution(m, s_res, t_res));
}

ExtTable ext_table(const GradedModulePresentation& m, const ExtWindow& window, bool with_actions) {
  FinitenessReport support = require_finite(m);
  return ext_table(ext_computation(m, window, support), window, with_actions);
}

YonedaMap yoneda_duality_map(const ExtComputation& ext, const DegreewiseModule& module, int exponent) {
  const GradedRing& ring = ext.ring();
  const long p = ring.p;
  const std::size_t n = ring.num_vars();
  const Resolution& res = ext.resolution();
  YonedaMap y;
  if (module.exponents.empty()) return y;

  int max_exp = 1;
  for (const auto& [t, e] : module.exponents)
    for (int k : e) max_exp = std::max(max_exp, k);
  const int N = exponent == 0 ? max_exp : exponent;
  if (N < max_exp) throw std::invalid_argument("yoneda_duality_map: p^" + std::to_string(N) + " does not annihilate M");
  y.exponent = N;

  const int bottom = module.exponents.begin()->first;
  const int top = module.exponents.rbegin()->first;
  std::vector<PolyElement> elements{PolyElement::constant(PLocalScalar(prime_power(p, N)), n)};
  int socle = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const int b = (top - bottom) / ring.degrees[i] + 1;
    y.powers.push_back(b);
    socle += (b - 1) * ring.degrees[i];
    Monomial m(n, 0);
    m[i] = b;
    elements.push_back(PolyElement::monomial(1, m));
  }
  const ChainComplex koszul = koszul_resolution(ring, elements).complex;
  const int alpha_degree = koszul.modules[n + 1].degrees[0];
  const PLocalVector alpha{PLocalScalar(1)};
  const GradedFreeModule& c0 = res.complex.modules[0];
  const mpz_class modulus = prime_power(p, N);

  for (const auto& [u, orders] : module.exponents) {
    const ModuleSlice slice = module_slice(res.module, u);
    const SubquotientGroup& target = ext.group(n + 1, u + ring.top_degree());
    ResidueMatrix ym(target.exponents().size(), orders.size());
    const int sigma = socle - u;
    for (std::size_t k = 0; k < orders.size(); ++k) {
      GradedMap phi0(c0, koszul.modules[0], sigma);
      for (std::size_t j = 0; j < c0.rank(); ++j) {
        PolyElement image;
        for (const Monomial& c : monomials_of_degree(ring, u - c0.degrees[j])) {
          bool in_range = true;
          for (std::size_t i = 0; i < n; ++i) in_range = in_range && c[i] < y.powers[i];
          if (!in_range) continue;
          PLocalVector unit(slice.basis.size());
          unit[slice.basis.index_of({c, j})] = 1;
          mpz_class value = slice.group.coordinates(unit)[k] * prime_power(p, N - orders[k]);
          value %= modulus;
          if (value < 0) value += modulus;
          if (value == 0) continue;
          Monomial dual(n);
          for (std::size_t i = 0; i < n; ++i) dual[i] = y.powers[i] - 1 - c[i];
          image.add_term(dual, PLocalScalar(value));
        }
        phi0.at(0, j) = image;
      }
      const ChainMap phi = lift_chain_map(res.complex, koszul, phi0, n + 1, ring);
      const PLocalVector cocycle = slice_map(dual_map(phi.components[n + 1]), alpha_degree, ring) * alpha;
      const auto coords = target.coordinates(cocycle);
      for (std::size_t i = 0; i < coords.size(); ++i) ym(i, k) = coords[i];
    }
    y.components.emplace(u, std::move(ym));
  }
  return y;
}

DualityReport verify_duality(const GradedModulePresentation& m, std::optional<ExtWindow> window) {
  DualityReport report;
  report.support = require_finite(m);
  const GradedRing& ring = m.ring;
  const std::size_t n = ring.num_vars();
  const int D = ring.top_degree();
  report.window = window.value_or(default_window(ring, report.support));
  const ExtWindow& w = report.window;

  const ExtComputation ext = ext_computation(m, w, report.support);
  report.table = ext_table(ext, w, true);

  for (const auto& [key, entry] : report.table.entries) {
    const auto [s, t] = key;
    if (s != n + 1)
      report.vanishing.fail("Ext nonzero at " + at_string(s, t) + ": " + exponents_string(entry.exponents) +
                            (entry.free_rank ? " free rank " + std::to_string(entry.free_rank) : ""));
  }

  const int lo = std::min(w.t_lo - D, report.support.bottom.value_or(w.t_lo - D));
  const int hi = std::max(w.t_hi - D, report.support.top.value_or(w.t_hi - D));
  const DegreewiseModule module = degreewise_module(ext.resolution().module, lo, hi);
  for (int t = w.t_lo; t <= w.t_hi; ++t) {
    const ExtEntry e = report.table.at(n + 1, t);
    const std::vector<int> expected = module.group(t - D);
    if (e.exponents != expected || e.free_rank != 0)
      report.orders.fail("Ext at " + at_string(n + 1, t) + " is " + exponents_string(e.exponents) +
                         (e.free_rank ? " + free rank " + std::to_string(e.free_rank) : "") + ", (Σ^D M^∨)_t is " +
                         exponents_string(expected));
  }

  YonedaMap y;
  try {
    y = yoneda_duality_map(ext, module);
  } catch (const LiftingFailure& e) {
    report.yoneda.fail(e.what());
    return report;
  }
  const DegreewiseModule dual = pontryagin_dual(module);
  auto component = [&](int u) {
    auto it = y.components.find(u);
    if (it != y.components.end()) return it->second;
    return ResidueMatrix(ext.group(n + 1, u + D).exponents().size(), module.group(u).size());
  };
  for (const auto& [u, ym] : y.components) {
    const std::vector<int>& target = ext.group(n + 1, u + D).exponents();
    if (!is_isomorphism(ym, module.group(u), target, ring.p))
      report.yoneda.fail("Yoneda map (M^∨)_" + std::to_string(u) + " -> Ext at " + at_string(n + 1, u + D) +
                         " is not an isomorphism");
    for (std::size_t var = 0; var < n; ++var) {
      const int v = u - ring.degrees[var];
      const std::vector<int>& lower = ext.group(n + 1, v + D).exponents();
      const ResidueMatrix lhs = compose(component(v), dual.action(var, u), lower, ring.p);
      const ResidueMatrix rhs = compose(ext.action(var, n + 1, u + D), ym, lower, ring.p);
      if (!(lhs == rhs))
        report.yoneda.fail("Yoneda map does not commute with x_" + std::to_string(var + 1) + " out of " +
                           at_string(n + 1, u + D));
    }
  }
  return report;
}

GradedModulePresentation truncate_family(const LocallyFiniteFamily& family, int k) {
  const GradedRing& ring = family.ring;
  const int w = action_width(ring);
  GradedFreeModule gens;
  std::vector<std::vector<PolyElement>> rels;
  std::size_t index = 0;
  for (const auto& summand : family.summands) {
    ++index;
    const GradedModulePresentation& m = summand.module;
    if (!(m.ring == ring)) throw std::invalid_argument("truncate_family: summand over a different ring");
    const std::size_t base = gens.rank();
    bool meets = false;
    for (int d : m.generators.degrees) meets = meets || d + summand.offset <= k;
    if (!meets) continue;
    for (std::size_t j = 0; j < m.generators.rank(); ++j)
      gens.add_generator("s" + std::to_string(index - 1) + "." + m.generators.labels[j],
                         m.generators.degrees[j] + summand.offset);
    auto column = [&](std::size_t j, const PolyElement& e) {
      std::vector<PolyElement> c;
      c.resize(base + m.generators.rank());
      c[base + j] = e;
      return c;
    };
    for (std::size_t j = 0; j < m.num_relations(); ++j) {
      std::vector<PolyElement> c(base);
      const auto col = m.relations.column(j);
      c.insert(c.end(), col.begin(), col.end());
      rels.push_back(std::move(c));
    }
    for (std::size_t j = 0; j < m.generators.rank(); ++j) {
      const int e = m.generators.degrees[j] + summand.offset;
      if (e > k) {
        rels.push_back(column(j, PolyElement::constant(1, ring.num_vars())));
        continue;
      }
      for (int t = k + 1; t <= k + w; ++t)
        for (const Monomial& a : monomials_of_degree(ring, t - e)) rels.push_back(column(j, PolyElement::monomial(1, a)));
    }
  }
  for (auto& c : rels) c.resize(gens.rank());
  return make_presentation(ring, gens, rels);
}

ExtTable ext_via_truncation(const LocallyFiniteFamily& family, int k, std::size_t s_max) {
  const GradedModulePresentation q = truncate_family(family, k);
  const FinitenessReport support = require_finite(q);
  const GradedRing& ring = family.ring;
  ExtWindow window;
  window.s_max = s_max;
  window.t_lo = support.bottom.value_or(0) - ring.max_var_degree();
  window.t_hi = k + ring.top_degree() + ring.max_var_degree();
  ExtTable table = ext_table(ext_computation(q, window, support), window, true);
  table.valid_up_to = k;
  return table;
}

}  // namespace extdual
