#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "extdual/presentation.hpp"

namespace extdual {

enum class Orientation { homological, cohomological };
enum class EdgeKind { two, v1 };

std::string to_string(Orientation o);
std::string to_string(EdgeKind k);

struct ChartDot {
  std::string id;
  int degree = 0;
  int filtration = 0;
  friend bool operator==(const ChartDot&, const ChartDot&) = default;
};

struct ChartEdge {
  EdgeKind kind = EdgeKind::two;
  std::string from;
  std::string to;
  bool exotic = false;
  friend bool operator==(const ChartEdge&, const ChartEdge&) = default;
};

/// Adams-style chart of a Z_(2)[v_1]-module, |v_1| = 2. In homological
/// orientation v_1 raises degree by 2; in cohomological orientation it
/// lowers degree by 2. Both raise filtration by 1.
struct Chart {
  std::string name;
  Orientation orientation = Orientation::homological;
  std::vector<ChartDot> dots;
  std::vector<ChartEdge> edges;

  const ChartDot* find(const std::string& id) const;
  friend bool operator==(const Chart&, const Chart&) = default;
};

struct ChartDiagnostic {
  std::string kind;  // malformed-edge, dangling-id, duplicate-id, duplicate-edge, commutation-failure
  std::string message;
};

std::vector<ChartDiagnostic> validate_chart(const Chart& c);

/// Thrown for an invalid chart; carries every diagnostic.
class ChartError : public std::invalid_argument {
 public:
  explicit ChartError(std::vector<ChartDiagnostic> diagnostics);
  const std::vector<ChartDiagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<ChartDiagnostic> diagnostics_;
};

/// Throws ChartError listing the diagnostics when the chart is invalid.
void require_valid(const Chart& c);

/// One generator per dot over bp(2,1): 2·g = g(two-target) or 0, and
/// v_1·g = g(v1-target) or 0. Exotic flags are ignored. For cohomological
/// charts the presentation is graded by minus the chart degree.
GradedModulePresentation chart_to_module(const Chart& c);

/// The module in chart degrees, with action_sign -1 for cohomological charts.
DegreewiseModule chart_module(const Chart& c);

/// Pontryagin dual with degree d -> d + shift and the opposite orientation.
/// Dots keep ids with a trailing '*'; edges are reversed; filtrations are the
/// least ones compatible with the reversed edges, and a reversed 2-edge is
/// exotic when it jumps more than one filtration.
Chart dualize_chart(const Chart& c, int shift);

struct ModuleComparison {
  bool isomorphic = true;
  std::optional<int> first_difference;
  std::vector<std::string> mismatches;
};

/// Invariant comparison: degreewise groups, and for every degree d, every
/// variable x, every b with x^b defined inside the window and every a, the
/// cokernel and kernel order of p^a x^b out of degree d.
ModuleComparison compare_modules(const DegreewiseModule& a, const DegreewiseModule& b);

struct ChartComparison {
  ModuleComparison modules;
  /// Edges (by endpoint coordinates) whose exotic flag differs or that occur on one side only.
  std::vector<std::string> edge_diff;
  bool isomorphic() const { return modules.isomorphic; }
};

/// Throws std::invalid_argument when orientations differ.
ChartComparison compare_charts(const Chart& a, const Chart& b);

enum class RenderFormat { svg, ascii };

std::string render_chart(const Chart& c, RenderFormat format);

}  // namespace extdual
