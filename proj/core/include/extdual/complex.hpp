#pragma once

#include <optional>
#include <vector>

#include "extdual/abelian.hpp"
#include "extdual/graded.hpp"

namespace extdual {

enum class Direction { chain, cochain };

/// Finite sequence of graded free modules indexed by s = 0, 1, 2, ...
///
/// maps[k] joins modules[k] and modules[k+1]: for a chain complex it is
/// d_{k+1} : modules[k+1] -> modules[k]; for a cochain complex it is
/// δ^k : modules[k] -> modules[k+1].
struct ChainComplex {
  Direction direction = Direction::chain;
  std::vector<GradedFreeModule> modules;
  std::vector<GradedMap> maps;

  std::size_t length() const { return modules.empty() ? 0 : modules.size() - 1; }
  /// Map leaving position s, if any.
  const GradedMap* outgoing(std::size_t s) const;
  /// Map arriving at position s, if any.
  const GradedMap* incoming(std::size_t s) const;
};

/// Two-term complex R·g -> R·ι with d(g) = element; deg g = deg element.
ChainComplex two_term_complex(const PolyElement& element, const GradedRing& ring, const std::string& gen_label,
                              const std::string& base_label);

/// Length-0 complex with one free generator in the given degree.
ChainComplex unit_complex(int degree);

/// (A ⊗ B)_s = ⊕_{i+j=s} A_i ⊗ B_j with d(a⊗b) = da⊗b + (-1)^i a⊗db.
/// Summands are ordered by decreasing i.
ChainComplex tensor_complexes(const ChainComplex& a, const ChainComplex& b);

/// Hom_R(C, R): contravariant modules with transposed differentials.
/// Applied to a cochain complex of duals it returns the original chain complex.
ChainComplex dual_complex(const ChainComplex& c);

/// d∘d = 0 as polynomial matrices.
bool d_squared_vanishes(const ChainComplex& c);
/// d∘d = 0 on the slice at t.
bool d_squared_vanishes_at(const ChainComplex& c, int t, const GradedRing& ring);

struct HomologyAt {
  std::vector<int> exponents;
  std::size_t free_rank = 0;
  bool is_zero() const { return exponents.empty() && free_rank == 0; }
  friend bool operator==(const HomologyAt&, const HomologyAt&) = default;
};

/// (Co)homology at position s, internal degree t, with coordinates.
SubquotientGroup homology_group(const ChainComplex& c, std::size_t s, int t, const GradedRing& ring);
HomologyAt homology_at(const ChainComplex& c, std::size_t s, int t, const GradedRing& ring);

/// Range of internal degrees in which the slice at position s can be
/// nonzero, as [lo, hi]; either end may be unbounded for duals/covariant.
struct DegreeSpan {
  std::optional<int> lo;
  std::optional<int> hi;
};
DegreeSpan slice_support(const GradedFreeModule& f);

}  // namespace extdual
