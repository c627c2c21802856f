#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <stdexcept>
#include <string>

#include "extdual/charts.hpp"
#include "extdual/ext.hpp"
#include "extdual/presentation.hpp"
#include "extdual/resolution.hpp"

namespace extdual {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Malformed input document or ring/module string.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// "bp:p,n" or "ring:p:d1,d2,..." (an empty degree list gives Z_(p)).
GradedRing parse_ring_spec(const std::string& spec);

Json ring_to_json(const GradedRing& ring);
/// Accepts an object {"p", "degrees"} or a spec string.
GradedRing ring_from_json(const Json& j);

Json poly_to_json(const PolyElement& e);
PolyElement poly_from_json(const Json& j, std::size_t num_vars);

Json presentation_to_json(const GradedModulePresentation& m);
/// `ring` overrides (or supplies) the document's ring.
GradedModulePresentation presentation_from_json(const Json& j, const std::optional<GradedRing>& ring = std::nullopt);

/// Built-in modules, summed with '+', each optionally suspended with "@d":
/// "Z/p", "Z/p^k", "Z/<p-power>", "R", "R/(e1,...,ek)" where every e is a
/// product of factors p, p^a, an integer, x<i>, x<i>^b (v<i> is a synonym).
GradedModulePresentation builtin_module(const std::string& spec, const GradedRing& ring);

Json family_to_json(const LocallyFiniteFamily& f);
/// Summands carry "module" (object or built-in string) and either "offset"
/// or "offsets": {"start", "step", "count"}.
LocallyFiniteFamily family_from_json(const Json& j, const std::optional<GradedRing>& ring = std::nullopt);

Json chart_to_json(const Chart& c);
/// Parses and validates; throws ChartError with diagnostics.
Chart chart_from_json(const Json& j);

Json ext_table_to_json(const ExtTable& t);
ExtTable ext_table_from_json(const Json& j);

Json finiteness_to_json(const FinitenessReport& r);
Json duality_report_to_json(const DualityReport& r);
Json resolution_to_json(const Resolution& res, const ExactnessReport& exactness);
Json profinite_to_json(const GradedRing& ring, const ProfiniteReport& r);
Json comparison_to_json(const ChartComparison& c);

Json read_json_file(const std::string& path);
/// Two-space indentation and a trailing newline.
std::string dump(const Json& j);

}  // namespace extdual
