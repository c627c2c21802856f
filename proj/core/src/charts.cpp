#include "extdual/charts.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace extdual {

namespace {

constexpr int kV1Degree = 2;

std::string coords(const ChartDot& d) {
  return "(" + std::to_string(d.degree) + "," + std::to_string(d.filtration) + ")";
}

int v1_step(Orientation o) { return o == Orientation::homological ? kV1Degree : -kV1Degree; }

// Outgoing edge of each kind per dot id.
struct EdgeIndex {
  std::map<std::string, const ChartEdge*> two;
  std::map<std::string, const ChartEdge*> v1;

  explicit EdgeIndex(const Chart& c) {
    for (const auto& e : c.edges) (e.kind == EdgeKind::two ? two : v1).emplace(e.from, &e);
  }
  std::optional<std::string> target(EdgeKind k, const std::string& id) const {
    const auto& m = k == EdgeKind::two ? two : v1;
    auto it = m.find(id);
    if (it == m.end()) return std::nullopt;
    return it->second->to;
  }
};

}  // namespace

std::string to_string(Orientation o) { return o == Orientation::homological ? "homological" : "cohomological"; }
std::string to_string(EdgeKind k) { return k == EdgeKind::two ? "two" : "v1"; }

const ChartDot* Chart::find(const std::string& id) const {
  for (const auto& d : dots)
    if (d.id == id) return &d;
  return nullptr;
}

ChartError::ChartError(std::vector<ChartDiagnostic> diagnostics)
    : std::invalid_argument([&] {
        std::string msg = "invalid chart";
        for (const auto& d : diagnostics) msg += "\n  " + d.kind + ": " + d.message;
        return msg;
      }()),
      diagnostics_(std::move(diagnostics)) {}

std::vector<ChartDiagnostic> validate_chart(const Chart& c) {
  std::vector<ChartDiagnostic> out;
  std::map<std::string, const ChartDot*> by_id;
  for (const auto& d : c.dots)
    if (!by_id.emplace(d.id, &d).second) out.push_back({"duplicate-id", "dot id '" + d.id + "' used twice"});

  std::set<std::pair<int, std::string>> outgoing;
  for (const auto& e : c.edges) {
    auto from = by_id.find(e.from);
    auto to = by_id.find(e.to);
    if (from == by_id.end() || to == by_id.end()) {
      out.push_back({"dangling-id", to_string(e.kind) + " edge '" + e.from + "' -> '" + e.to + "' names a missing dot"});
      continue;
    }
    const ChartDot& a = *from->second;
    const ChartDot& b = *to->second;
    const std::string where = to_string(e.kind) + " edge " + coords(a) + " -> " + coords(b);
    if (e.kind == EdgeKind::two) {
      if (a.degree != b.degree || b.filtration <= a.filtration)
        out.push_back({"malformed-edge", where + " must keep the degree and raise the filtration"});
    } else if (b.degree != a.degree + v1_step(c.orientation) || b.filtration != a.filtration + 1) {
      out.push_back({"malformed-edge", where + " must move by (" + std::to_string(v1_step(c.orientation)) + ",1)"});
    }
    if (!outgoing.emplace(static_cast<int>(e.kind), e.from).second)
      out.push_back({"duplicate-edge", "dot " + coords(a) + " has two outgoing " + to_string(e.kind) + " edges"});
  }
  if (!out.empty()) return out;

  EdgeIndex idx(c);
  for (const auto& d : c.dots) {
    auto two = idx.target(EdgeKind::two, d.id);
    auto v1 = idx.target(EdgeKind::v1, d.id);
    if (!two || !v1) continue;
    auto a = idx.target(EdgeKind::v1, *two);
    auto b = idx.target(EdgeKind::two, *v1);
    if (a && b && *a != *b)
      out.push_back({"commutation-failure", "2·v1 and v1·2 differ out of dot " + coords(d) + ": " +
                                                coords(*by_id[*a]) + " vs " + coords(*by_id[*b])});
  }
  return out;
}

void require_valid(const Chart& c) {
  auto diagnostics = validate_chart(c);
  if (!diagnostics.empty()) throw ChartError(std::move(diagnostics));
}

GradedModulePresentation chart_to_module(const Chart& c) {
  require_valid(c);
  const GradedRing ring = bp_ring(2, 1);
  const int sign = c.orientation == Orientation::homological ? 1 : -1;
  GradedFreeModule gens;
  std::map<std::string, std::size_t> index;
  for (const auto& d : c.dots) {
    index[d.id] = gens.rank();
    gens.add_generator(d.id, sign * d.degree);
  }
  EdgeIndex idx(c);
  std::vector<std::vector<PolyElement>> rels;
  for (const auto& d : c.dots) {
    for (EdgeKind k : {EdgeKind::two, EdgeKind::v1}) {
      std::vector<PolyElement> col(gens.rank());
      col[index[d.id]] = k == EdgeKind::two ? PolyElement::constant(2, 1) : PolyElement::monomial(1, {1});
      if (auto t = idx.target(k, d.id)) col[index[*t]] -= PolyElement::constant(1, 1);
      rels.push_back(std::move(col));
    }
  }
  return make_presentation(ring, gens, rels);
}

DegreewiseModule chart_module(const Chart& c) {
  GradedModulePresentation m = chart_to_module(c);
  if (c.dots.empty()) {
    DegreewiseModule empty;
    empty.ring = m.ring;
    empty.action_sign = c.orientation == Orientation::homological ? 1 : -1;
    return empty;
  }
  const auto [lo, hi] = std::minmax_element(m.generators.degrees.begin(), m.generators.degrees.end());
  DegreewiseModule d = degreewise_module(m, *lo, *hi);
  return c.orientation == Orientation::homological ? d : reflect_degrees(d);
}

Chart dualize_chart(const Chart& c, int shift) {
  require_valid(c);
  Chart d;
  d.name = c.name.empty() ? "" : "dual of " + c.name;
  d.orientation = c.orientation == Orientation::homological ? Orientation::cohomological : Orientation::homological;
  std::map<std::string, std::size_t> index;
  for (const auto& dot : c.dots) {
    index[dot.id + "*"] = d.dots.size();
    d.dots.push_back({dot.id + "*", dot.degree + shift, 0});
  }
  for (const auto& e : c.edges) d.edges.push_back({e.kind, e.to + "*", e.from + "*", false});

  // Least filtrations: v1 edges raise by exactly one, 2-edges by at least one.
  const std::size_t limit = (d.dots.size() + 1) * (d.dots.size() + 1);
  for (std::size_t round = 0;; ++round) {
    if (round > limit) throw std::logic_error("dualize_chart: filtration constraints are inconsistent");
    bool changed = false;
    for (const auto& e : d.edges) {
      ChartDot& a = d.dots[index[e.from]];
      ChartDot& b = d.dots[index[e.to]];
      if (b.filtration < a.filtration + 1) {
        b.filtration = a.filtration + 1;
        changed = true;
      }
      if (e.kind == EdgeKind::v1 && a.filtration < b.filtration - 1) {
        a.filtration = b.filtration - 1;
        changed = true;
      }
    }
    if (!changed) break;
  }
  for (auto& e : d.edges)
    if (e.kind == EdgeKind::two) e.exotic = d.dots[index[e.to]].filtration > d.dots[index[e.from]].filtration + 1;
  require_valid(d);
  return d;
}

namespace {

ResidueMatrix scaled(ResidueMatrix m, long p, int a, const std::vector<int>& target) {
  const mpz_class f = prime_power(p, a);
  for (auto& x : m.data) x *= f;
  reduce_rows(m, target, p);
  return m;
}

std::string group_string(const std::vector<int>& e) {
  std::string s = "[";
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
  return s + "]";
}

}  // namespace

ModuleComparison compare_modules(const DegreewiseModule& a, const DegreewiseModule& b) {
  ModuleComparison out;
  auto note = [&](int degree, std::string message) {
    out.isomorphic = false;
    if (!out.first_difference || degree < *out.first_difference) out.first_difference = degree;
    out.mismatches.push_back(std::move(message));
  };
  if (!(a.ring == b.ring) || a.action_sign != b.action_sign) {
    note(0, "modules live over different rings or action directions");
    return out;
  }
  std::set<int> degrees;
  for (const auto& [t, e] : a.exponents) degrees.insert(t);
  for (const auto& [t, e] : b.exponents) degrees.insert(t);
  for (int t : degrees)
    if (a.group(t) != b.group(t))
      note(t, "degree " + std::to_string(t) + ": " + group_string(a.group(t)) + " vs " + group_string(b.group(t)));
  if (!out.isomorphic || degrees.empty()) return out;

  const long p = a.ring.p;
  const int lo = *degrees.begin();
  const int hi = *degrees.rbegin();
  for (int t : degrees) {
    const std::vector<int> source = a.group(t);
    const int max_exp = *std::max_element(source.begin(), source.end());
    for (std::size_t var = 0; var < a.ring.num_vars(); ++var) {
      ResidueMatrix pa = ResidueMatrix(source.size(), source.size()), pb = pa;
      for (std::size_t i = 0; i < source.size(); ++i) pa(i, i) = pb(i, i) = 1;
      int u = t;
      for (int power = 0;; ++power) {
        const std::vector<int> target = a.group(u);
        if (target.empty()) break;
        for (int e = 0; e <= max_exp; ++e) {
          const ResidueMatrix ma = scaled(pa, p, e, target), mb = scaled(pb, p, e, target);
          const auto ca = cokernel_exponents(ma, target, p), cb = cokernel_exponents(mb, target, p);
          if (ca != cb)
            note(t, "p^" + std::to_string(e) + " x_" + std::to_string(var + 1) + "^" + std::to_string(power) +
                        " out of degree " + std::to_string(t) + ": cokernel " + group_string(ca) + " vs " +
                        group_string(cb));
        }
        const int next = a.action_target(var, u);
        if (next < lo || next > hi) break;
        const std::vector<int> next_group = a.group(next);
        pa = compose(a.action(var, u), pa, next_group, p);
        pb = compose(b.action(var, u), pb, next_group, p);
        u = next;
      }
    }
  }
  return out;
}

ChartComparison compare_charts(const Chart& a, const Chart& b) {
  if (a.orientation != b.orientation) throw std::invalid_argument("compare_charts: orientations differ");
  ChartComparison out;
  out.modules = compare_modules(chart_module(a), chart_module(b));

  auto edge_key = [](const Chart& c, const ChartEdge& e) {
    return to_string(e.kind) + " " + coords(*c.find(e.from)) + " -> " + coords(*c.find(e.to));
  };
  std::map<std::string, bool> ea, eb;
  for (const auto& e : a.edges) ea[edge_key(a, e)] = e.exotic;
  for (const auto& e : b.edges) eb[edge_key(b, e)] = e.exotic;
  for (const auto& [k, x] : ea) {
    auto it = eb.find(k);
    if (it == eb.end())
      out.edge_diff.push_back("only left: " + k + (x ? " (exotic)" : ""));
    else if (it->second != x)
      out.edge_diff.push_back("exotic flag differs: " + k + (x ? " (left exotic)" : " (right exotic)"));
  }
  for (const auto& [k, x] : eb)
    if (!ea.count(k)) out.edge_diff.push_back("only right: " + k + (x ? " (exotic)" : ""));
  return out;
}

namespace {

struct Frame {
  int lo = 0, hi = 0, fmax = 0;
  bool reversed = false;
  int column(int degree) const { return reversed ? hi - degree : degree - lo; }
};

Frame frame_of(const Chart& c) {
  Frame f;
  f.reversed = c.orientation == Orientation::cohomological;
  if (c.dots.empty()) return f;
  f.lo = f.hi = c.dots.front().degree;
  for (const auto& d : c.dots) {
    f.lo = std::min(f.lo, d.degree);
    f.hi = std::max(f.hi, d.degree);
    f.fmax = std::max(f.fmax, d.filtration);
  }
  return f;
}

std::string render_svg(const Chart& c) {
  constexpr int unit = 12, row = 24, margin = 40;
  const Frame f = frame_of(c);
  const int width = 2 * margin + (f.hi - f.lo) * unit;
  const int height = 2 * margin + f.fmax * row + 20;
  auto x = [&](int degree) { return margin + f.column(degree) * unit; };
  auto y = [&](int filtration) { return margin + (f.fmax - filtration) * row; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\" viewBox=\"0 0 "
     << width << ' ' << height << "\">\n";
  if (!c.name.empty()) os << "  <title>" << c.name << "</title>\n";
  os << "  <line x1=\"" << margin - unit << "\" y1=\"" << y(0) << "\" x2=\"" << width - margin + unit << "\" y2=\""
     << y(0) << "\" stroke=\"gray\" stroke-width=\"1\"/>\n";
  const int first_label = f.lo + ((4 - f.lo % 4) % 4);
  for (int d = first_label; d <= f.hi; d += 4)
    os << "  <text x=\"" << x(d) << "\" y=\"" << y(0) + 20 << "\" font-size=\"12\" text-anchor=\"middle\">" << d
       << "</text>\n";
  for (const auto& e : c.edges) {
    const ChartDot& a = *c.find(e.from);
    const ChartDot& b = *c.find(e.to);
    os << "  <line x1=\"" << x(a.degree) << "\" y1=\"" << y(a.filtration) << "\" x2=\"" << x(b.degree) << "\" y2=\""
       << y(b.filtration) << "\" stroke=\"" << (e.exotic ? "red" : "black") << "\" stroke-width=\"2\"/>\n";
  }
  for (const auto& d : c.dots)
    os << "  <circle cx=\"" << x(d.degree) << "\" cy=\"" << y(d.filtration) << "\" r=\"4\" fill=\"black\"/>\n";
  os << "</svg>\n";
  return os.str();
}

std::string render_ascii(const Chart& c) {
  const Frame f = frame_of(c);
  const int cols = f.hi - f.lo + 1;
  std::vector<std::string> grid(static_cast<std::size_t>(f.fmax + 1), std::string(static_cast<std::size_t>(cols), ' '));
  for (const auto& d : c.dots) {
    char& cell = grid[static_cast<std::size_t>(f.fmax - d.filtration)][static_cast<std::size_t>(f.column(d.degree))];
    cell = cell == ' ' ? 'o' : (cell == 'o' ? '2' : static_cast<char>(std::min<int>(cell + 1, '9')));
  }
  std::ostringstream os;
  os << (c.name.empty() ? "chart" : c.name) << " (" << to_string(c.orientation) << ")\n";
  for (int i = 0; i <= f.fmax; ++i) {
    std::string line = grid[static_cast<std::size_t>(i)];
    line.erase(line.find_last_not_of(' ') + 1);
    os << (f.fmax - i < 10 ? " " : "") << f.fmax - i << " |" << line << "\n";
  }
  os << "   +" << std::string(static_cast<std::size_t>(cols), '-') << "\n";
  std::string labels(static_cast<std::size_t>(cols) + 4, ' ');
  for (int d = f.lo; d <= f.hi; ++d) {
    if (d % 4 != 0) continue;
    const std::string s = std::to_string(d);
    const std::size_t pos = static_cast<std::size_t>(f.column(d));
    for (std::size_t k = 0; k < s.size() && pos + k < labels.size(); ++k) labels[pos + k] = s[k];
  }
  labels.erase(labels.find_last_not_of(' ') + 1);
  os << "    " << labels << "\n";
  for (const auto& e : c.edges)
    os << to_string(e.kind) << ' ' << coords(*c.find(e.from)) << " -> " << coords(*c.find(e.to))
       << (e.exotic ? " exotic" : "") << "\n";
  return os.str();
}

}  // namespace

std::string render_chart(const Chart& c, RenderFormat format) {
  require_valid(c);
  return format == RenderFormat::svg ? render_svg(c) : render_ascii(c);
}

}  // namespace extdual
