#include "extdual/resolution.hpp"

#include <algorithm>
#include <memory>
#include <set>

#include "extdual/snf.hpp"

namespace extdual {

using Column = std::vector<PolyElement>;

std::vector<std::size_t> Resolution::ranks() const {
  std::vector<std::size_t> r;
  for (const auto& m : complex.modules) r.push_back(m.rank());
  return r;
}

Resolution koszul_resolution(const GradedRing& ring, const std::vector<PolyElement>& elements) {
  const long p = ring.p;
  bool seen_p = false;
  std::set<std::size_t> seen_vars;
  for (const auto& e : elements) {
    if (e.terms().size() != 1) throw std::invalid_argument("koszul_resolution: element " + e.to_string() + " is not a single term");
    const auto& [mono, coeff] = *e.terms().begin();
    if (mono.size() != ring.num_vars()) throw std::invalid_argument("koszul_resolution: exponent vector has the wrong length");
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < mono.size(); ++i)
      if (mono[i] != 0) support.push_back(i);
    if (!coeff.is_p_local(p)) throw std::invalid_argument("koszul_resolution: coefficient is not p-local");
    if (support.empty()) {
      if (coeff.valuation(p) < 1) throw std::invalid_argument("koszul_resolution: constant element must be divisible by p");
      if (seen_p) throw std::invalid_argument("koszul_resolution: at most one power of p");
      seen_p = true;
    } else {
      if (support.size() != 1 || !coeff.is_unit(p))
        throw std::invalid_argument("koszul_resolution: element " + e.to_string() + " is not a unit times x_i^b");
      if (!seen_vars.insert(support[0]).second)
        throw std::invalid_argument("koszul_resolution: variable used twice");
    }
  }

  ChainComplex c = unit_complex(0);
  for (std::size_t i = 0; i < elements.size(); ++i)
    c = tensor_complexes(c, two_term_complex(elements[i], ring, "g" + std::to_string(i), "1"));
  Resolution res;
  res.module = cyclic_module(ring, elements, 0, "1");
  res.complex = std::move(c);
  res.s_max = elements.size();
  res.t_max = 0;
  for (const auto& m : res.complex.modules)
    for (int d : m.degrees) res.t_max = std::max(res.t_max, d);
  res.minimal = false;
  return res;
}

namespace {

// Vectors of K (as ambient columns) whose classes form a basis of K / (L + pK),
// where L lies inside the span of K.
std::vector<PLocalVector> nakayama_complement(const PLocalMatrix& k, const PLocalMatrix& l, long p) {
  const std::size_t r = k.cols();
  PLocalMatrix coords(r, l.cols());
  if (l.cols() > 0) {
    PreimageSolver solver(k, p);
    for (std::size_t j = 0; j < l.cols(); ++j) {
      auto x = solver.solve(l.column(j));
      if (!x) throw std::logic_error("minimal_free_resolution: image escapes the kernel");
      coords.set_column(j, *x);
    }
  }
  PLocalMatrix basis_change = PLocalMatrix::identity(r);
  std::size_t units = 0;
  if (l.cols() > 0) {
    SnfResult f = snf(coords, p);
    basis_change = f.left_inverse;
    while (units < f.rank && f.exponents[units] == 0) ++units;
  }
  std::vector<PLocalVector> out;
  for (std::size_t i = units; i < r; ++i) out.push_back(k * basis_change.column(i));
  return out;
}

}  // namespace

Resolution minimal_free_resolution(const GradedModulePresentation& m, std::size_t s_max, int t_max) {
  const GradedModulePresentation pres = prune(m).presentation;
  const GradedRing& ring = pres.ring;
  Resolution res;
  res.module = pres;
  res.s_max = s_max;
  res.t_max = t_max;
  res.minimal = true;
  res.complex.modules.push_back(pres.generators);

  for (std::size_t s = 1; s <= s_max + 1; ++s) {
    const GradedFreeModule prev = res.complex.modules[s - 1];
    if (prev.rank() == 0) break;
    const int t_lo = *std::min_element(prev.degrees.begin(), prev.degrees.end());
    GradedFreeModule cur;
    std::vector<Column> cols;
    for (int t = t_lo; t <= t_max; ++t) {
      const SliceBasis ambient = degree_slice(prev, t, ring);
      if (ambient.empty()) continue;
      const PLocalMatrix kernel = s == 1 ? column_span_basis(slice_map(pres.relations, t, ring), ring.p)
                                         : kernel_basis(slice_map(res.complex.maps[s - 2], t, ring), ring.p);
      if (kernel.cols() == 0) continue;
      PLocalMatrix image(ambient.size(), 0);
      if (cur.rank() > 0) {
        GradedMap partial(cur, prev);
        for (std::size_t j = 0; j < cols.size(); ++j) partial.set_column(j, cols[j]);
        image = slice_map(partial, t, ring);
      }
      for (const auto& v : nakayama_complement(kernel, image, ring.p)) {
        if (s == s_max + 1)
          throw BoundExceeded("resolution does not terminate by stage " + std::to_string(s_max) + " (new generator at s=" +
                              std::to_string(s) + ", t=" + std::to_string(t) + ")");
        cur.add_generator("c" + std::to_string(s) + "_" + std::to_string(cur.rank()), t);
        cols.push_back(from_slice_vector(v, ambient, prev.rank()));
      }
    }
    if (cur.rank() == 0) break;
    GradedMap d(cur, prev);
    for (std::size_t j = 0; j < cols.size(); ++j) d.set_column(j, cols[j]);
    res.complex.modules.push_back(cur);
    res.complex.maps.push_back(std::move(d));
  }
  return res;
}

ExactnessReport verify_exactness(const Resolution& res, int t_lo) {
  ExactnessReport report;
  const GradedRing& ring = res.module.ring;
  const ChainComplex& c = res.complex;
  report.d_squared_zero = d_squared_vanishes(c);
  std::set<int> broken;
  for (std::size_t s = 2; s < c.modules.size(); ++s)
    for (int t = t_lo; t <= res.t_max; ++t) {
      const PLocalMatrix upper = slice_map(c.maps[s - 1], t, ring);
      const PLocalMatrix lower = slice_map(c.maps[s - 2], t, ring);
      if (upper.empty() || lower.empty() || (lower * upper).is_zero()) continue;
      report.d_squared_failures.emplace_back(s, t);
      broken.insert(t);
    }
  for (std::size_t s = 0; s < c.modules.size(); ++s)
    for (int t = t_lo; t <= res.t_max; ++t) {
      if (broken.count(t)) continue;
      HomologyAt h = homology_at(c, s, t, ring);
      bool good;
      if (s == 0) {
        ModuleSlice m = module_slice(res.module, t);
        good = h.exponents == m.group.exponents() && h.free_rank == m.group.free_rank();
      } else {
        good = h.is_zero();
      }
      if (!good) report.failures.emplace_back(s, t);
    }
  return report;
}

ChainMap lift_chain_map(const ChainComplex& source, const ChainComplex& target, const GradedMap& base,
                        std::size_t top, const GradedRing& ring) {
  ChainMap out;
  out.shift = base.shift;
  out.components.push_back(base);
  auto module_at = [](const ChainComplex& c, std::size_t s) {
    return s < c.modules.size() ? c.modules[s] : GradedFreeModule{};
  };
  struct DegreeSolver {
    SliceBasis lower;
    SliceBasis upper;
    PreimageSolver solver;
  };
  for (std::size_t s = 1; s <= top; ++s) {
    const GradedFreeModule src = module_at(source, s);
    const GradedFreeModule tgt = module_at(target, s);
    GradedMap phi(src, tgt, out.shift);
    if (src.rank() > 0) {
      const GradedMap rhs = compose(out.components[s - 1], source.maps[s - 1]);
      std::map<int, std::unique_ptr<DegreeSolver>> solvers;
      for (std::size_t j = 0; j < src.rank(); ++j) {
        const Column col = rhs.column(j);
        if (std::all_of(col.begin(), col.end(), [](const PolyElement& e) { return e.is_zero(); })) continue;
        const int deg = src.degrees[j] + out.shift;
        if (tgt.rank() == 0)
          throw LiftingFailure("lift_chain_map: no target at stage " + std::to_string(s) + ", degree " + std::to_string(deg));
        auto& entry = solvers[deg];
        if (!entry)
          entry = std::make_unique<DegreeSolver>(DegreeSolver{degree_slice(target.modules[s - 1], deg, ring),
                                                              degree_slice(tgt, deg, ring),
                                                              PreimageSolver(slice_map(target.maps[s - 1], deg, ring), ring.p)});
        auto x = entry->solver.solve(to_slice_vector(col, entry->lower));
        if (!x)
          throw LiftingFailure("lift_chain_map: no preimage at stage " + std::to_string(s) + ", degree " + std::to_string(deg));
        phi.set_column(j, from_slice_vector(*x, entry->upper, tgt.rank()));
      }
    }
    out.components.push_back(std::move(phi));
  }
  return out;
}

ExtComputation::ExtComputation(Resolution res) : res_(std::move(res)), cochain_(dual_complex(res_.complex)) {}

const SubquotientGroup& ExtComputation::group(std::size_t s, int t) const {
  auto key = std::make_pair(s, t);
  auto it = cache_.find(key);
  if (it == cache_.end()) it = cache_.emplace(key, homology_group(cochain_, s, t, ring())).first;
  return it->second;
}

std::vector<mpz_class> ExtComputation::coordinates(std::size_t s, int t, const PLocalVector& cocycle) const {
  return group(s, t).coordinates(cocycle);
}

ResidueMatrix ExtComputation::action(std::size_t var, std::size_t s, int t) const {
  const int target_t = t - ring().degrees[var];
  const SubquotientGroup& src = group(s, t);
  const SubquotientGroup& tgt = group(s, target_t);
  ResidueMatrix r(tgt.exponents().size(), src.exponents().size());
  if (r.rows == 0 || r.cols == 0) return r;
  Monomial xm(ring().num_vars(), 0);
  xm[var] = 1;
  const PLocalMatrix mat =
      slice_map(multiplication_map(cochain_.modules[s], PolyElement::monomial(1, xm), ring()), t, ring());
  for (std::size_t k = 0; k < r.cols; ++k) {
    auto coords = tgt.coordinates(mat * src.generator(k));
    for (std::size_t i = 0; i < r.rows; ++i) r(i, k) = coords[i];
  }
  return r;
}

ResidueMatrix pullback(const ChainMap& phi, const ExtComputation& target_ext, const ExtComputation& source_ext,
                       std::size_t s, int t) {
  const int source_t = t - phi.shift;
  const SubquotientGroup& src = target_ext.group(s, t);
  const SubquotientGroup& tgt = source_ext.group(s, source_t);
  ResidueMatrix r(tgt.exponents().size(), src.exponents().size());
  if (r.rows == 0 || r.cols == 0 || s >= phi.components.size()) return r;
  const PLocalMatrix mat = slice_map(dual_map(phi.components[s]), t, target_ext.ring());
  for (std::size_t k = 0; k < r.cols; ++k) {
    auto coords = tgt.coordinates(mat * src.generator(k));
    for (std::size_t i = 0; i < r.rows; ++i) r(i, k) = coords[i];
  }
  return r;
}

ProfiniteReport ext_profinite(const GradedRing& ring, int k_max) {
  if (k_max < 1) throw std::invalid_argument("ext_profinite: k_max must be at least 1");
  const std::size_t top = ring.num_vars() + 1;
  const int d = ring.top_degree();
  auto koszul_for = [&](int k) {
    std::vector<PolyElement> elements{PolyElement::constant(PLocalScalar(prime_power(ring.p, k)), ring.num_vars())};
    for (std::size_t i = 0; i < ring.num_vars(); ++i) {
      Monomial m(ring.num_vars(), 0);
      m[i] = 1;
      elements.push_back(PolyElement::monomial(1, m));
    }
    return koszul_resolution(ring, elements);
  };

  ProfiniteReport report;
  report.certified = true;
  std::unique_ptr<ExtComputation> prev;
  for (int k = 1; k <= k_max; ++k) {
    auto cur = std::make_unique<ExtComputation>(koszul_for(k));
    ProfiniteStage stage;
    stage.k = k;
    const SubquotientGroup& g = cur->group(top, d);
    stage.group = g.exponents();
    if (g.free_rank() != 0 || stage.group != std::vector<int>{k}) report.certified = false;
    if (prev) {
      const auto& src_complex = prev->resolution().complex;
      const auto& tgt_complex = cur->resolution().complex;
      GradedMap base(src_complex.modules[0], tgt_complex.modules[0], 0);
      base.at(0, 0) = PolyElement::constant(PLocalScalar(ring.p), ring.num_vars());
      ChainMap phi = lift_chain_map(src_complex, tgt_complex, base, top, ring);
      stage.transition = pullback(phi, *cur, *prev, top, d);
      const std::vector<int>& lower = prev->group(top, d).exponents();
      const std::vector<int> coker = cokernel_exponents(stage.transition, lower, ring.p);
      stage.surjective = coker.empty();
      stage.kernel_log_order =
          total_log_order(stage.group) - (total_log_order(lower) - total_log_order(coker));
      if (!stage.surjective || stage.kernel_log_order != 1) report.certified = false;
    }
    report.stages.push_back(std::move(stage));
    prev = std::move(cur);
  }
  return report;
}

}  // namespace extdual
