#include "extdual/graded.hpp"

#include <stdexcept>

namespace extdual {

SliceBasis::SliceBasis(std::vector<SliceElement> elements) : elements_(std::move(elements)) {
  for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i], i);
}

std::size_t SliceBasis::index_of(const SliceElement& e) const {
  auto it = index_.find(e);
  return it == index_.end() ? elements_.size() : it->second;
}

namespace {

int monomial_degree_for(const GradedFreeModule& f, std::size_t j, int t) {
  return f.variance == Variance::covariant ? t - f.degrees[j] : f.degrees[j] - t;
}

}  // namespace

SliceBasis degree_slice(const GradedFreeModule& f, int t, const GradedRing& ring) {
  std::vector<SliceElement> elements;
  for (std::size_t j = 0; j < f.rank(); ++j)
    for (auto& m : monomials_of_degree(ring, monomial_degree_for(f, j, t))) elements.push_back({std::move(m), j});
  return SliceBasis(std::move(elements));
}

GradedMap::GradedMap(GradedFreeModule src, GradedFreeModule tgt, int shift_by)
    : source(std::move(src)), target(std::move(tgt)), shift(shift_by), entries(source.rank() * target.rank()) {}

std::vector<PolyElement> GradedMap::column(std::size_t j) const {
  std::vector<PolyElement> v(target.rank());
  for (std::size_t i = 0; i < target.rank(); ++i) v[i] = at(i, j);
  return v;
}

void GradedMap::set_column(std::size_t j, const std::vector<PolyElement>& v) {
  for (std::size_t i = 0; i < target.rank(); ++i) at(i, j) = v[i];
}

bool GradedMap::is_zero() const {
  for (const auto& e : entries)
    if (!e.is_zero()) return false;
  return true;
}

int expected_entry_degree(const GradedMap& f, std::size_t i, std::size_t j) {
  if (f.source.variance == Variance::covariant) return f.source.degrees[j] + f.shift - f.target.degrees[i];
  return f.target.degrees[i] - f.source.degrees[j] - f.shift;
}

bool is_homogeneous(const GradedMap& f, const GradedRing& ring) {
  if (f.source.variance != f.target.variance) return false;
  for (std::size_t i = 0; i < f.target.rank(); ++i)
    for (std::size_t j = 0; j < f.source.rank(); ++j) {
      const PolyElement& e = f.at(i, j);
      if (e.is_zero()) continue;
      auto d = e.homogeneous_degree(ring);
      if (!d || *d != expected_entry_degree(f, i, j)) return false;
    }
  return true;
}

PLocalMatrix slice_map(const GradedMap& f, int t, const GradedRing& ring) {
  SliceBasis src = degree_slice(f.source, t, ring);
  SliceBasis tgt = degree_slice(f.target, t + f.shift, ring);
  PLocalMatrix m(tgt.size(), src.size());
  for (std::size_t c = 0; c < src.size(); ++c) {
    const auto& [mono, j] = src[c];
    for (std::size_t i = 0; i < f.target.rank(); ++i) {
      const PolyElement& e = f.at(i, j);
      for (const auto& [em, coeff] : e.terms()) {
        Monomial prod(mono.size());
        for (std::size_t k = 0; k < prod.size(); ++k) prod[k] = mono[k] + em[k];
        std::size_t r = tgt.index_of({prod, i});
        if (r == tgt.size()) throw std::logic_error("slice_map: entry is not homogeneous of the expected degree");
        m(r, c) += coeff;
      }
    }
  }
  return m;
}

GradedMap compose(const GradedMap& f, const GradedMap& g) {
  if (!(g.target == f.source)) throw std::invalid_argument("compose: modules do not match");
  GradedMap h(g.source, f.target, f.shift + g.shift);
  for (std::size_t i = 0; i < f.target.rank(); ++i)
    for (std::size_t k = 0; k < f.source.rank(); ++k) {
      const PolyElement& fik = f.at(i, k);
      if (fik.is_zero()) continue;
      for (std::size_t j = 0; j < g.source.rank(); ++j) {
        const PolyElement& gkj = g.at(k, j);
        if (!gkj.is_zero()) h.at(i, j) += fik * gkj;
      }
    }
  return h;
}

PLocalVector to_slice_vector(const std::vector<PolyElement>& v, const SliceBasis& basis) {
  PLocalVector out(basis.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (const auto& [m, c] : v[i].terms()) {
      std::size_t r = basis.index_of({m, i});
      if (r == basis.size()) throw std::logic_error("to_slice_vector: term outside the slice");
      out[r] += c;
    }
  return out;
}

std::vector<PolyElement> from_slice_vector(const PLocalVector& v, const SliceBasis& basis, std::size_t rank) {
  std::vector<PolyElement> out(rank);
  for (std::size_t r = 0; r < basis.size(); ++r) out[basis[r].generator].add_term(basis[r].monomial, v[r]);
  return out;
}

GradedMap multiplication_map(const GradedFreeModule& f, const PolyElement& element, const GradedRing& ring) {
  auto d = element.homogeneous_degree(ring);
  if (!d) throw std::invalid_argument("multiplication_map: element must be nonzero and homogeneous");
  GradedMap m(f, f, f.variance == Variance::covariant ? *d : -*d);
  for (std::size_t j = 0; j < f.rank(); ++j) m.at(j, j) = element;
  return m;
}

GradedFreeModule dual_module(const GradedFreeModule& f) {
  GradedFreeModule d = f;
  d.variance = f.variance == Variance::covariant ? Variance::contravariant : Variance::covariant;
  return d;
}

GradedMap dual_map(const GradedMap& f) {
  GradedMap t(dual_module(f.target), dual_module(f.source), -f.shift);
  for (std::size_t i = 0; i < f.target.rank(); ++i)
    for (std::size_t j = 0; j < f.source.rank(); ++j) t.at(j, i) = f.at(i, j);
  return t;
}

}  // namespace extdual
