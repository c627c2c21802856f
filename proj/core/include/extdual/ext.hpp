#pragma once

#include <climits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "extdual/presentation.hpp"
#include "extdual/resolution.hpp"

namespace extdual {

/// Raised when a finite module is required and the input is not one.
class NotLocallyFinite : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Finiteness { finite, infinite, inconclusive };

std::string to_string(Finiteness f);

struct FinitenessReport {
  Finiteness verdict = Finiteness::inconclusive;
  /// Lowest and highest nonzero degree (finite verdict only).
  std::optional<int> bottom;
  std::optional<int> top;
  /// dim over Z/p of M_t / p M_t for each probed degree with nonzero value.
  std::map<int, std::size_t> ranks_mod_p;
  std::string detail;
};

/// Probes M_t for t up to probe_bound. Finite when the slices vanish on a
/// run of max|x_i| consecutive degrees above every generator; infinite when
/// some slice has free rank or the slice orders repeat with period
/// lcm(|x_i|) over the last two periods, both above every generator and
/// relation; inconclusive otherwise.
FinitenessReport check_local_finiteness(const GradedModulePresentation& m, int probe_bound);

/// Default probe bound: highest generator or relation degree + 64 max|x_i|.
int default_probe_bound(const GradedModulePresentation& m);

/// Support of a module known to be finite; throws NotLocallyFinite otherwise.
FinitenessReport require_finite(const GradedModulePresentation& m);

struct ExtWindow {
  std::size_t s_max = 0;
  int t_lo = 0;
  int t_hi = 0;
  friend bool operator==(const ExtWindow&, const ExtWindow&) = default;
};

/// s_max = n + 2, t from bottom - max|x_i| to top + D + max|x_i|.
ExtWindow default_window(const GradedRing& ring, const FinitenessReport& support);

struct ExtEntry {
  std::vector<int> exponents;
  std::size_t free_rank = 0;
  bool is_zero() const { return exponents.empty() && free_rank == 0; }
  friend bool operator==(const ExtEntry&, const ExtEntry&) = default;
};

/// Ext^{s,t} over a window. Entries and actions are stored only when nonzero.
struct ExtTable {
  GradedRing ring;
  ExtWindow window;
  /// Entries with t above this bound are indeterminate.
  int valid_up_to = INT_MAX;
  std::map<std::pair<std::size_t, int>, ExtEntry> entries;
  /// (var, s, t) -> x_var : Ext^{s,t} -> Ext^{s,t-|x_var|}.
  std::map<std::tuple<std::size_t, std::size_t, int>, ResidueMatrix> actions;

  ExtEntry at(std::size_t s, int t) const;
  bool is_valid(int t) const { return t <= valid_up_to; }
  friend bool operator==(const ExtTable&, const ExtTable&) = default;
};

ExtTable ext_table(const ExtComputation& ext, const ExtWindow& window, bool with_actions);

/// Resolves m (which must be finite) far enough for the window and tabulates Ext.
ExtComputation ext_computation(const GradedModulePresentation& m, const ExtWindow& window,
                               const FinitenessReport& support);
ExtTable ext_table(const GradedModulePresentation& m, const ExtWindow& window, bool with_actions = true);

/// The map f -> [alpha ∘ Phi_{n+1}(f)] from (M^∨)_u to Ext^{n+1,u+D}(M, R), in
/// the dual basis of M_u and the Ext coordinates of `ext`.
///
/// Each functional f on M_u becomes an R-linear map M -> R/(p^N, x^b) of
/// degree T - u (T the socle degree of the quotient), lifted to the Koszul
/// resolution of the quotient; alpha is the dual of its top generator.
struct YonedaMap {
  int exponent = 0;
  std::vector<int> powers;
  std::map<int, ResidueMatrix> components;
};

/// exponent = 0 picks the exponent of M. Throws std::invalid_argument when
/// p^exponent does not annihilate M, LiftingFailure on a non-exact resolution.
YonedaMap yoneda_duality_map(const ExtComputation& ext, const DegreewiseModule& module, int exponent = 0);

struct ClauseResult {
  bool passed = true;
  std::vector<std::string> failures;
  void fail(std::string message) {
    passed = false;
    failures.push_back(std::move(message));
  }
};

struct DualityReport {
  ExtWindow window;
  FinitenessReport support;
  ExtTable table;
  /// Ext^{s,t} = 0 for s != n + 1.
  ClauseResult vanishing;
  /// Ext^{n+1,t} has the invariants of (Σ^D M^∨)_t.
  ClauseResult orders;
  /// The Yoneda map is an isomorphism in every degree and commutes with every x_i.
  ClauseResult yoneda;
  bool passed() const { return vanishing.passed && orders.passed && yoneda.passed; }
};

/// Throws NotLocallyFinite unless m is finite.
DualityReport verify_duality(const GradedModulePresentation& m, std::optional<ExtWindow> window = std::nullopt);

/// Finite summands with degree offsets; only finitely many meet any degree.
struct FamilySummand {
  GradedModulePresentation module;
  int offset = 0;
};

struct LocallyFiniteFamily {
  GradedRing ring;
  std::vector<FamilySummand> summands;
};

/// Q_k: the family modulo everything in degrees > k.
GradedModulePresentation truncate_family(const LocallyFiniteFamily& family, int k);

/// Ext of Q_k for s <= s_max; entries with t > k are marked indeterminate.
ExtTable ext_via_truncation(const LocallyFiniteFamily& family, int k, std::size_t s_max);

}  // namespace extdual
