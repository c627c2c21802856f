#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "extdual/abelian.hpp"
#include "extdual/graded.hpp"

namespace extdual {

/// A graded module given as the cokernel of relations : F_1 -> F_0.
/// F_1 has one generator per relation, in the relation's degree.
struct GradedModulePresentation {
  GradedRing ring;
  GradedFreeModule generators;
  GradedMap relations;

  std::size_t num_relations() const { return relations.source.rank(); }
  friend bool operator==(const GradedModulePresentation&, const GradedModulePresentation&) = default;
};

/// Builds a presentation from relation columns (polynomial coefficient per
/// generator). Zero relations are dropped. Throws std::invalid_argument on an
/// inhomogeneous relation.
GradedModulePresentation make_presentation(const GradedRing& ring, const GradedFreeModule& generators,
                                           const std::vector<std::vector<PolyElement>>& relations);

/// R/(elements) with its generator in degree `degree`.
GradedModulePresentation cyclic_module(const GradedRing& ring, const std::vector<PolyElement>& elements,
                                       int degree = 0, const std::string& label = "g");

/// Z/p^k concentrated in one degree (all variables act by zero).
GradedModulePresentation cyclic_p_group(const GradedRing& ring, int k, int degree = 0);

GradedModulePresentation direct_sum(const GradedModulePresentation& a, const GradedModulePresentation& b);
GradedModulePresentation suspend(const GradedModulePresentation& m, int shift);

/// Adds relations (columns over the existing generators).
GradedModulePresentation with_relations(const GradedModulePresentation& m,
                                        const std::vector<std::vector<PolyElement>>& extra);

/// Presentation with no constant unit entry in the relation matrix, so that
/// the generators are minimal. `images[j]` expresses original generator j in
/// the surviving generators.
struct PrunedPresentation {
  GradedModulePresentation presentation;
  std::vector<std::vector<PolyElement>> images;
};
PrunedPresentation prune(const GradedModulePresentation& m);

/// M_t as a finite-rank Z_(p)-module: F_0 slice modulo the relation slice.
struct ModuleSlice {
  SliceBasis basis;
  SubquotientGroup group;
};
ModuleSlice module_slice(const GradedModulePresentation& m, int t);

/// Degreewise groups of a graded module together with the action of each
/// variable, restricted to a window of degrees.
///
/// With action_sign = +1 variable i sends degree t to t + |x_i|; with -1 it
/// sends t to t - |x_i| (the convention of Pontryagin duals and Ext).
struct DegreewiseModule {
  GradedRing ring;
  int action_sign = 1;
  int t_lo = 0;
  int t_hi = -1;
  std::map<int, std::vector<int>> exponents;
  std::map<std::pair<std::size_t, int>, ResidueMatrix> actions;

  std::vector<int> group(int t) const;
  int log_order(int t) const { return total_log_order(group(t)); }
  int action_target(std::size_t var, int t) const { return t + action_sign * ring.degrees[var]; }
  /// Matrix of variable `var` out of degree t; zero matrix when absent.
  ResidueMatrix action(std::size_t var, int t) const;
  friend bool operator==(const DegreewiseModule&, const DegreewiseModule&) = default;
};

/// Requires every slice in the window to be finite.
DegreewiseModule degreewise_module(const GradedModulePresentation& m, int t_lo, int t_hi);

/// Pontryagin dual with dual bases: same exponents, transposed action with
/// the opposite action_sign.
DegreewiseModule pontryagin_dual(const DegreewiseModule& m);

/// t -> t + shift.
DegreewiseModule shift_degrees(const DegreewiseModule& m, int shift);
/// t -> -t, flipping action_sign.
DegreewiseModule reflect_degrees(const DegreewiseModule& m);

/// Smallest generator degree, if any.
std::optional<int> bottom_degree(const GradedModulePresentation& m);

}  // namespace extdual
