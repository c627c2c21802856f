#include "extdual/ring.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace extdual {

int GradedRing::top_degree() const { return std::accumulate(degrees.begin(), degrees.end(), 0); }

int GradedRing::max_var_degree() const {
  return degrees.empty() ? 0 : *std::max_element(degrees.begin(), degrees.end());
}

GradedRing make_ring(long p, std::vector<int> degrees) {
  if (!is_prime(p)) throw std::invalid_argument("ring: p = " + std::to_string(p) + " is not prime");
  for (int d : degrees)
    if (d <= 0) throw std::invalid_argument("ring: generator degrees must be positive");
  return GradedRing{p, std::move(degrees)};
}

GradedRing bp_ring(long p, int n) {
  if (n < 0) throw std::invalid_argument("bp ring: n must be nonnegative");
  std::vector<int> degrees;
  long pi = 1;
  for (int i = 1; i <= n; ++i) {
    pi *= p;
    degrees.push_back(static_cast<int>(2 * (pi - 1)));
  }
  return make_ring(p, std::move(degrees));
}

int monomial_degree(const GradedRing& ring, const Monomial& m) {
  int d = 0;
  for (std::size_t i = 0; i < m.size(); ++i) d += m[i] * ring.degrees[i];
  return d;
}

namespace {

void enumerate(const GradedRing& ring, std::size_t var, int remaining, Monomial& current, std::vector<Monomial>& out) {
  if (var == ring.num_vars()) {
    if (remaining == 0) out.push_back(current);
    return;
  }
  const int d = ring.degrees[var];
  for (int e = remaining / d; e >= 0; --e) {
    current[var] = e;
    enumerate(ring, var + 1, remaining - e * d, current, out);
  }
  current[var] = 0;
}

}  // namespace

std::vector<Monomial> monomials_of_degree(const GradedRing& ring, int degree) {
  std::vector<Monomial> out;
  if (degree < 0) return out;
  Monomial current(ring.num_vars(), 0);
  enumerate(ring, 0, degree, current, out);
  return out;
}

PolyElement PolyElement::constant(const PLocalScalar& c, std::size_t num_vars) {
  return monomial(c, Monomial(num_vars, 0));
}

PolyElement PolyElement::monomial(const PLocalScalar& c, Monomial m) {
  PolyElement e;
  e.add_term(m, c);
  return e;
}

void PolyElement::add_term(const Monomial& m, const PLocalScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

PLocalScalar PolyElement::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? PLocalScalar() : it->second;
}

std::optional<int> PolyElement::homogeneous_degree(const GradedRing& ring) const {
  std::optional<int> deg;
  for (const auto& [m, c] : terms_) {
    int d = monomial_degree(ring, m);
    if (deg && *deg != d) return std::nullopt;
    deg = d;
  }
  return deg;
}

PolyElement& PolyElement::operator+=(const PolyElement& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

PolyElement& PolyElement::operator-=(const PolyElement& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

PolyElement operator*(const PolyElement& a, const PolyElement& b) {
  PolyElement r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m(ma.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      r.add_term(m, ca * cb);
    }
  return r;
}

PolyElement operator*(const PLocalScalar& c, const PolyElement& a) {
  PolyElement r;
  if (c.is_zero()) return r;
  for (const auto& [m, x] : a.terms_) r.terms_.emplace(m, c * x);
  return r;
}

std::string PolyElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << it->second.to_string();
    for (std::size_t i = 0; i < it->first.size(); ++i)
      if (it->first[i] > 0) {
        os << "*x" << (i + 1);
        if (it->first[i] > 1) os << "^" << it->first[i];
      }
  }
  return os.str();
}

}  // namespace extdual
