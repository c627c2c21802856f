#include "extdual/complex.hpp"

#include <algorithm>
#include <stdexcept>

#include "extdual/snf.hpp"

namespace extdual {

const GradedMap* ChainComplex::outgoing(std::size_t s) const {
  if (direction == Direction::chain) return (s >= 1 && s - 1 < maps.size()) ? &maps[s - 1] : nullptr;
  return s < maps.size() ? &maps[s] : nullptr;
}

const GradedMap* ChainComplex::incoming(std::size_t s) const {
  if (direction == Direction::chain) return s < maps.size() ? &maps[s] : nullptr;
  return (s >= 1 && s - 1 < maps.size()) ? &maps[s - 1] : nullptr;
}

ChainComplex two_term_complex(const PolyElement& element, const GradedRing& ring, const std::string& gen_label,
                              const std::string& base_label) {
  auto d = element.homogeneous_degree(ring);
  if (!d) throw std::invalid_argument("two_term_complex: element must be nonzero and homogeneous");
  ChainComplex c;
  GradedFreeModule base, top;
  base.add_generator(base_label, 0);
  top.add_generator(gen_label, *d);
  GradedMap m(top, base);
  m.at(0, 0) = element;
  c.modules = {base, top};
  c.maps = {m};
  return c;
}

ChainComplex unit_complex(int degree) {
  ChainComplex c;
  GradedFreeModule f;
  f.add_generator("1", degree);
  c.modules = {f};
  return c;
}

namespace {

// Position of generator (ga of A_i, gb of B_j) inside (A⊗B)_{i+j}.
struct TensorIndex {
  std::vector<std::vector<std::size_t>> offset;  // offset[i][j] into (A⊗B)_{i+j}
};

std::string tensor_label(const std::string& a, const std::string& b) {
  if (a == "1") return b;
  if (b == "1") return a;
  return a + "*" + b;
}

}  // namespace

ChainComplex tensor_complexes(const ChainComplex& a, const ChainComplex& b) {
  if (a.direction != Direction::chain || b.direction != Direction::chain)
    throw std::invalid_argument("tensor_complexes: chain complexes required");
  const std::size_t la = a.modules.size(), lb = b.modules.size();
  ChainComplex c;
  if (la == 0 || lb == 0) return c;
  const std::size_t lc = la + lb - 1;
  c.modules.resize(lc);
  TensorIndex idx{std::vector<std::vector<std::size_t>>(la, std::vector<std::size_t>(lb, 0))};
  for (std::size_t s = 0; s < lc; ++s)
    for (std::size_t i = std::min(s, la - 1) + 1; i-- > 0;) {
      if (s - i >= lb) continue;
      const std::size_t j = s - i;
      idx.offset[i][j] = c.modules[s].rank();
      for (std::size_t x = 0; x < a.modules[i].rank(); ++x)
        for (std::size_t y = 0; y < b.modules[j].rank(); ++y)
          c.modules[s].add_generator(tensor_label(a.modules[i].labels[x], b.modules[j].labels[y]),
                                     a.modules[i].degrees[x] + b.modules[j].degrees[y]);
    }

  for (std::size_t s = 1; s < lc; ++s) {
    GradedMap d(c.modules[s], c.modules[s - 1]);
    for (std::size_t i = 0; i < la && i <= s; ++i) {
      const std::size_t j = s - i;
      if (j >= lb) continue;
      const std::size_t rb = b.modules[j].rank();
      // da ⊗ b
      if (i >= 1) {
        const GradedMap& da = a.maps[i - 1];
        for (std::size_t x = 0; x < a.modules[i].rank(); ++x)
          for (std::size_t xt = 0; xt < a.modules[i - 1].rank(); ++xt) {
            const PolyElement& e = da.at(xt, x);
            if (e.is_zero()) continue;
            for (std::size_t y = 0; y < rb; ++y)
              d.at(idx.offset[i - 1][j] + xt * rb + y, idx.offset[i][j] + x * rb + y) += e;
          }
      }
      // (-1)^i a ⊗ db
      if (j >= 1) {
        const GradedMap& db = b.maps[j - 1];
        const PLocalScalar sign = (i % 2 == 0) ? 1 : -1;
        const std::size_t rbt = b.modules[j - 1].rank();
        for (std::size_t x = 0; x < a.modules[i].rank(); ++x)
          for (std::size_t y = 0; y < rb; ++y)
            for (std::size_t yt = 0; yt < rbt; ++yt) {
              const PolyElement& e = db.at(yt, y);
              if (e.is_zero()) continue;
              d.at(idx.offset[i][j - 1] + x * rbt + yt, idx.offset[i][j] + x * rb + y) += sign * e;
            }
      }
    }
    c.maps.push_back(std::move(d));
  }
  return c;
}

ChainComplex dual_complex(const ChainComplex& c) {
  ChainComplex d;
  d.direction = c.direction == Direction::chain ? Direction::cochain : Direction::chain;
  for (const auto& m : c.modules) d.modules.push_back(dual_module(m));
  for (const auto& f : c.maps) d.maps.push_back(dual_map(f));
  return d;
}

bool d_squared_vanishes(const ChainComplex& c) {
  for (std::size_t k = 0; k + 1 < c.maps.size(); ++k) {
    GradedMap dd = c.direction == Direction::chain ? compose(c.maps[k], c.maps[k + 1]) : compose(c.maps[k + 1], c.maps[k]);
    if (!dd.is_zero()) return false;
  }
  return true;
}

bool d_squared_vanishes_at(const ChainComplex& c, int t, const GradedRing& ring) {
  for (std::size_t k = 0; k + 1 < c.maps.size(); ++k) {
    PLocalMatrix first, second;
    if (c.direction == Direction::chain) {
      first = slice_map(c.maps[k + 1], t, ring);
      second = slice_map(c.maps[k], t, ring);
    } else {
      first = slice_map(c.maps[k], t, ring);
      second = slice_map(c.maps[k + 1], t, ring);
    }
    if (first.rows() != second.cols()) return false;
    if (!(second * first).is_zero()) return false;
  }
  return true;
}

SubquotientGroup homology_group(const ChainComplex& c, std::size_t s, int t, const GradedRing& ring) {
  if (s >= c.modules.size()) return SubquotientGroup(PLocalMatrix(0, 0), 0, 0, ring.p);
  const std::size_t dim = degree_slice(c.modules[s], t, ring).size();
  std::size_t out_rank = 0;
  if (const GradedMap* out = c.outgoing(s)) {
    PLocalMatrix a = slice_map(*out, t, ring);
    if (!a.empty()) out_rank = snf(a, ring.p).rank;
  }
  PLocalMatrix in(dim, 0);
  if (const GradedMap* inc = c.incoming(s)) in = slice_map(*inc, t, ring);
  return SubquotientGroup(in, dim, out_rank, ring.p);
}

HomologyAt homology_at(const ChainComplex& c, std::size_t s, int t, const GradedRing& ring) {
  SubquotientGroup g = homology_group(c, s, t, ring);
  return HomologyAt{g.exponents(), g.free_rank()};
}

DegreeSpan slice_support(const GradedFreeModule& f) {
  DegreeSpan span;
  if (f.rank() == 0) return span;
  auto [lo, hi] = std::minmax_element(f.degrees.begin(), f.degrees.end());
  if (f.variance == Variance::covariant)
    span.lo = *lo;
  else
    span.hi = *hi;
  return span;
}

}  // namespace extdual
