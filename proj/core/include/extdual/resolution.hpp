#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "extdual/abelian.hpp"
#include "extdual/complex.hpp"
#include "extdual/presentation.hpp"

namespace extdual {

/// The module was not resolved within the requested (s, t) bounds.
class BoundExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A chain map could not be extended; the target is not exact where needed.
class LiftingFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Free resolution C -> M. complex.modules[0] carries the generators of
/// `module` and complex.maps[0] its relations (up to the choices made by the
/// construction). Generators are known exactly up to degree t_max.
struct Resolution {
  GradedModulePresentation module;
  ChainComplex complex;
  std::size_t s_max = 0;
  int t_max = 0;
  bool minimal = false;

  std::size_t length() const { return complex.length(); }
  std::vector<std::size_t> ranks() const;
};

/// Tensor product of two-term complexes R g -> R, d(g) = element, one per
/// element, in the given order. Each element must be a single term: a unit
/// times p^a (at most one such), or a unit times x_i^b with distinct i.
/// Throws std::invalid_argument on any other shape.
Resolution koszul_resolution(const GradedRing& ring, const std::vector<PolyElement>& elements);

/// Degreewise Nakayama construction of a minimal resolution of the pruned
/// presentation of m, stages 1..s_max, generator degrees up to t_max.
/// Throws BoundExceeded when stage s_max + 1 would still be nonzero.
Resolution minimal_free_resolution(const GradedModulePresentation& m, std::size_t s_max, int t_max);

struct ExactnessReport {
  bool d_squared_zero = true;
  /// (s, t) with d_{s-1} ∘ d_s nonzero on the slice at t.
  std::vector<std::pair<std::size_t, int>> d_squared_failures;
  /// (s, t) where homology is wrong: nonzero for s >= 1, or differs from M_t at s = 0.
  /// Degrees with a d^2 failure are not tested.
  std::vector<std::pair<std::size_t, int>> failures;
  bool ok() const { return d_squared_zero && d_squared_failures.empty() && failures.empty(); }
};

/// Checks d∘d = 0 symbolically and homology in degrees [t_lo, res.t_max].
ExactnessReport verify_exactness(const Resolution& res, int t_lo);

/// Components phi_s : source_s -> target_s sharing one degree shift.
struct ChainMap {
  int shift = 0;
  std::vector<GradedMap> components;
};

/// Extends `base` : source_0 -> target_0 to stages 1..top by solving
/// target_d ∘ phi_s = phi_{s-1} ∘ source_d degree by degree.
/// Throws LiftingFailure when a preimage does not exist.
ChainMap lift_chain_map(const ChainComplex& source, const ChainComplex& target, const GradedMap& base,
                        std::size_t top, const GradedRing& ring);

/// Cohomology of Hom_R(C, R) with cached groups and the x_i-actions.
class ExtComputation {
 public:
  explicit ExtComputation(Resolution res);

  const Resolution& resolution() const { return res_; }
  const ChainComplex& cochain() const { return cochain_; }
  const GradedRing& ring() const { return res_.module.ring; }

  const SubquotientGroup& group(std::size_t s, int t) const;
  /// Coordinates of a cocycle (dual slice vector at (s, t)) in Ext^{s,t}.
  std::vector<mpz_class> coordinates(std::size_t s, int t, const PLocalVector& cocycle) const;
  /// x_var : Ext^{s,t} -> Ext^{s,t-|x_var|}.
  ResidueMatrix action(std::size_t var, std::size_t s, int t) const;

 private:
  Resolution res_;
  ChainComplex cochain_;
  mutable std::map<std::pair<std::size_t, int>, SubquotientGroup> cache_;
};

/// Map Ext^{s,t}(target complex) -> Ext^{s,t-shift}(source complex) induced
/// by phi : source -> target.
ResidueMatrix pullback(const ChainMap& phi, const ExtComputation& target_ext, const ExtComputation& source_ext,
                       std::size_t s, int t);

/// One stage of the pro-system k -> Ext^{n+1,D}(Z/p^k, R).
struct ProfiniteStage {
  int k = 0;
  std::vector<int> group;
  /// Transition Ext(Z/p^k) -> Ext(Z/p^{k-1}) induced by Z/p^{k-1} -> Z/p^k, 1 -> p (absent for k = 1).
  ResidueMatrix transition;
  bool surjective = false;
  int kernel_log_order = 0;
};

struct ProfiniteReport {
  std::vector<ProfiniteStage> stages;
  /// Every stage cyclic of order p^k and every transition onto with kernel of order p.
  bool certified = false;
};

ProfiniteReport ext_profinite(const GradedRing& ring, int k_max);

}  // namespace extdual
