#include "extdual/presentation.hpp"

#include <algorithm>
#include <stdexcept>

namespace extdual {

namespace {

using Column = std::vector<PolyElement>;

std::optional<int> column_degree(const GradedRing& ring, const GradedFreeModule& gens, const Column& col) {
  std::optional<int> deg;
  for (std::size_t i = 0; i < col.size(); ++i) {
    if (col[i].is_zero()) continue;
    auto d = col[i].homogeneous_degree(ring);
    if (!d) throw std::invalid_argument("relation is not homogeneous (generator " + gens.labels[i] + ")");
    int total = *d + gens.degrees[i];
    if (deg && *deg != total) throw std::invalid_argument("relation mixes internal degrees");
    deg = total;
  }
  return deg;
}

}  // namespace

GradedModulePresentation make_presentation(const GradedRing& ring, const GradedFreeModule& generators,
                                           const std::vector<std::vector<PolyElement>>& relations) {
  GradedFreeModule rel_module;
  std::vector<const Column*> kept;
  for (const auto& col : relations) {
    if (col.size() != generators.rank()) throw std::invalid_argument("relation length differs from generator count");
    for (const auto& e : col)
      for (const auto& [m, c] : e.terms()) {
        if (m.size() != ring.num_vars()) throw std::invalid_argument("exponent vector has the wrong length");
        if (!c.is_p_local(ring.p)) throw std::invalid_argument("coefficient " + c.to_string() + " is not p-local");
      }
    auto deg = column_degree(ring, generators, col);
    if (!deg) continue;
    rel_module.add_generator("r" + std::to_string(kept.size()), *deg);
    kept.push_back(&col);
  }
  GradedModulePresentation m{ring, generators, GradedMap(rel_module, generators)};
  for (std::size_t j = 0; j < kept.size(); ++j) m.relations.set_column(j, *kept[j]);
  return m;
}

GradedModulePresentation cyclic_module(const GradedRing& ring, const std::vector<PolyElement>& elements, int degree,
                                       const std::string& label) {
  GradedFreeModule gens;
  gens.add_generator(label, degree);
  std::vector<Column> rels;
  for (const auto& e : elements) rels.push_back({e});
  return make_presentation(ring, gens, rels);
}

GradedModulePresentation cyclic_p_group(const GradedRing& ring, int k, int degree) {
  std::vector<PolyElement> elements;
  elements.push_back(PolyElement::constant(PLocalScalar(prime_power(ring.p, k)), ring.num_vars()));
  for (std::size_t i = 0; i < ring.num_vars(); ++i) {
    Monomial m(ring.num_vars(), 0);
    m[i] = 1;
    elements.push_back(PolyElement::monomial(1, m));
  }
  return cyclic_module(ring, elements, degree);
}

GradedModulePresentation direct_sum(const GradedModulePresentation& a, const GradedModulePresentation& b) {
  if (!(a.ring == b.ring)) throw std::invalid_argument("direct_sum: rings differ");
  GradedFreeModule gens = a.generators;
  for (std::size_t i = 0; i < b.generators.rank(); ++i)
    gens.add_generator(b.generators.labels[i] + "'", b.generators.degrees[i]);
  std::vector<Column> rels;
  const std::size_t ra = a.generators.rank();
  for (std::size_t j = 0; j < a.num_relations(); ++j) {
    Column c(gens.rank());
    for (std::size_t i = 0; i < ra; ++i) c[i] = a.relations.at(i, j);
    rels.push_back(std::move(c));
  }
  for (std::size_t j = 0; j < b.num_relations(); ++j) {
    Column c(gens.rank());
    for (std::size_t i = 0; i < b.generators.rank(); ++i) c[ra + i] = b.relations.at(i, j);
    rels.push_back(std::move(c));
  }
  return make_presentation(a.ring, gens, rels);
}

GradedModulePresentation suspend(const GradedModulePresentation& m, int shift) {
  GradedModulePresentation out = m;
  for (auto& d : out.generators.degrees) d += shift;
  for (auto& d : out.relations.source.degrees) d += shift;
  out.relations.target = out.generators;
  return out;
}

GradedModulePresentation with_relations(const GradedModulePresentation& m,
                                        const std::vector<std::vector<PolyElement>>& extra) {
  std::vector<Column> rels;
  for (std::size_t j = 0; j < m.num_relations(); ++j) rels.push_back(m.relations.column(j));
  rels.insert(rels.end(), extra.begin(), extra.end());
  return make_presentation(m.ring, m.generators, rels);
}

PrunedPresentation prune(const GradedModulePresentation& m) {
  const GradedRing& ring = m.ring;
  const long p = ring.p;
  GradedFreeModule gens = m.generators;
  std::vector<Column> rels;
  for (std::size_t j = 0; j < m.num_relations(); ++j) rels.push_back(m.relations.column(j));
  std::vector<Column> images(gens.rank(), Column(gens.rank()));
  for (std::size_t j = 0; j < gens.rank(); ++j) images[j][j] = PolyElement::constant(1, ring.num_vars());

  const Monomial one(ring.num_vars(), 0);
  for (;;) {
    std::optional<std::pair<std::size_t, std::size_t>> pivot;  // (relation, generator)
    for (std::size_t j = 0; j < rels.size() && !pivot; ++j)
      for (std::size_t i = 0; i < gens.rank(); ++i) {
        const PolyElement& e = rels[j][i];
        if (e.terms().size() == 1 && e.terms().begin()->first == one && e.terms().begin()->second.is_unit(p)) {
          pivot = {j, i};
          break;
        }
      }
    if (!pivot) break;
    const auto [pj, pi] = *pivot;
    const Column pivot_col = rels[pj];
    const PLocalScalar inv_u = PLocalScalar::from_rational(1 / pivot_col[pi].coefficient(one).rational());

    auto eliminate = [&](Column& v) {
      if (v[pi].is_zero()) return;
      const PolyElement factor = inv_u * v[pi];
      for (std::size_t k = 0; k < v.size(); ++k)
        if (!pivot_col[k].is_zero()) v[k] -= factor * pivot_col[k];
    };
    for (std::size_t j = 0; j < rels.size(); ++j)
      if (j != pj) eliminate(rels[j]);
    for (auto& img : images) eliminate(img);

    rels.erase(rels.begin() + static_cast<std::ptrdiff_t>(pj));
    auto drop_row = [pi = pi](Column& v) { v.erase(v.begin() + static_cast<std::ptrdiff_t>(pi)); };
    for (auto& c : rels) drop_row(c);
    for (auto& img : images) drop_row(img);
    gens.labels.erase(gens.labels.begin() + static_cast<std::ptrdiff_t>(pi));
    gens.degrees.erase(gens.degrees.begin() + static_cast<std::ptrdiff_t>(pi));
  }
  return PrunedPresentation{make_presentation(ring, gens, rels), std::move(images)};
}

ModuleSlice module_slice(const GradedModulePresentation& m, int t) {
  SliceBasis basis = degree_slice(m.generators, t, m.ring);
  PLocalMatrix rel = slice_map(m.relations, t, m.ring);
  SubquotientGroup group(rel, basis.size(), 0, m.ring.p);
  return ModuleSlice{std::move(basis), std::move(group)};
}

std::vector<int> DegreewiseModule::group(int t) const {
  auto it = exponents.find(t);
  return it == exponents.end() ? std::vector<int>{} : it->second;
}

ResidueMatrix DegreewiseModule::action(std::size_t var, int t) const {
  auto it = actions.find({var, t});
  if (it != actions.end()) return it->second;
  return ResidueMatrix(group(action_target(var, t)).size(), group(t).size());
}

DegreewiseModule degreewise_module(const GradedModulePresentation& m, int t_lo, int t_hi) {
  DegreewiseModule out;
  out.ring = m.ring;
  out.action_sign = 1;
  out.t_lo = t_lo;
  out.t_hi = t_hi;
  std::map<int, ModuleSlice> slices;
  for (int t = t_lo; t <= t_hi; ++t) {
    ModuleSlice s = module_slice(m, t);
    if (s.group.free_rank() > 0)
      throw std::invalid_argument("module is not finite in degree " + std::to_string(t));
    if (!s.group.exponents().empty()) {
      out.exponents[t] = s.group.exponents();
      slices.emplace(t, std::move(s));
    }
  }
  for (std::size_t var = 0; var < m.ring.num_vars(); ++var) {
    Monomial xm(m.ring.num_vars(), 0);
    xm[var] = 1;
    GradedMap mult = multiplication_map(m.generators, PolyElement::monomial(1, xm), m.ring);
    for (const auto& [t, src] : slices) {
      auto tgt = slices.find(t + m.ring.degrees[var]);
      if (tgt == slices.end()) continue;
      PLocalMatrix mat = slice_map(mult, t, m.ring);
      ResidueMatrix r(tgt->second.group.exponents().size(), src.group.exponents().size());
      for (std::size_t k = 0; k < src.group.exponents().size(); ++k) {
        auto coords = tgt->second.group.coordinates(mat * src.group.generator(k));
        for (std::size_t i = 0; i < coords.size(); ++i) r(i, k) = coords[i];
      }
      if (!r.is_zero()) out.actions[{var, t}] = std::move(r);
    }
  }
  return out;
}

DegreewiseModule pontryagin_dual(const DegreewiseModule& m) {
  DegreewiseModule d;
  d.ring = m.ring;
  d.action_sign = -m.action_sign;
  d.t_lo = m.t_lo;
  d.t_hi = m.t_hi;
  d.exponents = m.exponents;
  const long p = m.ring.p;
  for (const auto& [key, a] : m.actions) {
    const auto [var, u] = key;
    const int v = m.action_target(var, u);
    const std::vector<int> src = m.group(u);  // orders l_j
    const std::vector<int> tgt = m.group(v);  // orders k_i
    // (x f)(m) = f(x m): entry (j, i) = A_ij * p^{l_j - k_i} mod p^{l_j}.
    ResidueMatrix t(src.size(), tgt.size());
    for (std::size_t i = 0; i < tgt.size(); ++i)
      for (std::size_t j = 0; j < src.size(); ++j) {
        mpz_class val = a(i, j);
        const int diff = src[j] - tgt[i];
        if (diff >= 0) {
          val *= prime_power(p, diff);
        } else {
          mpz_class q = prime_power(p, -diff);
          if (!mpz_divisible_p(val.get_mpz_t(), q.get_mpz_t()))
            throw std::logic_error("pontryagin_dual: action matrix is not a well-defined homomorphism");
          mpz_divexact(val.get_mpz_t(), val.get_mpz_t(), q.get_mpz_t());
        }
        t(j, i) = val;
      }
    reduce_rows(t, src, p);
    if (!t.is_zero()) d.actions[{var, v}] = std::move(t);
  }
  return d;
}

DegreewiseModule shift_degrees(const DegreewiseModule& m, int shift) {
  DegreewiseModule out = m;
  out.t_lo += shift;
  out.t_hi += shift;
  out.exponents.clear();
  out.actions.clear();
  for (const auto& [t, e] : m.exponents) out.exponents[t + shift] = e;
  for (const auto& [key, a] : m.actions) out.actions[{key.first, key.second + shift}] = a;
  return out;
}

DegreewiseModule reflect_degrees(const DegreewiseModule& m) {
  DegreewiseModule out = m;
  out.action_sign = -m.action_sign;
  out.t_lo = -m.t_hi;
  out.t_hi = -m.t_lo;
  out.exponents.clear();
  out.actions.clear();
  for (const auto& [t, e] : m.exponents) out.exponents[-t] = e;
  for (const auto& [key, a] : m.actions) out.actions[{key.first, -key.second}] = a;
  return out;
}

std::optional<int> bottom_degree(const GradedModulePresentation& m) {
  if (m.generators.rank() == 0) return std::nullopt;
  return *std::min_element(m.generators.degrees.begin(), m.generators.degrees.end());
}

}  // namespace extdual
