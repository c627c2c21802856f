#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "extdual/plocal.hpp"

namespace extdual {

/// Z_(p)[x_1, ..., x_n] with positive generator degrees.
struct GradedRing {
  long p = 2;
  std::vector<int> degrees;

  std::size_t num_vars() const { return degrees.size(); }
  /// Sum of the generator degrees.
  int top_degree() const;
  int max_var_degree() const;
  friend bool operator==(const GradedRing&, const GradedRing&) = default;
};

GradedRing make_ring(long p, std::vector<int> degrees);

/// Coefficient ring of BP<n> at p: |v_i| = 2(p^i - 1).
GradedRing bp_ring(long p, int n);

using Monomial = std::vector<int>;

int monomial_degree(const GradedRing& ring, const Monomial& m);

/// All monomials of the given degree, ordered by descending exponent
/// vector (x_1^3 before x_2 when |x_1| = 2, |x_2| = 6).
std::vector<Monomial> monomials_of_degree(const GradedRing& ring, int degree);

/// Homogeneous or inhomogeneous polynomial with Z_(p) coefficients.
class PolyElement {
 public:
  PolyElement() = default;
  static PolyElement constant(const PLocalScalar& c, std::size_t num_vars);
  static PolyElement monomial(const PLocalScalar& c, Monomial m);

  const std::map<Monomial, PLocalScalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(const Monomial& m, const PLocalScalar& c);
  PLocalScalar coefficient(const Monomial& m) const;

  /// Degree shared by every term, nullopt if zero or inhomogeneous.
  std::optional<int> homogeneous_degree(const GradedRing& ring) const;

  PolyElement& operator+=(const PolyElement& o);
  PolyElement& operator-=(const PolyElement& o);
  friend PolyElement operator+(PolyElement a, const PolyElement& b) { return a += b; }
  friend PolyElement operator-(PolyElement a, const PolyElement& b) { return a -= b; }
  friend PolyElement operator*(const PolyElement& a, const PolyElement& b);
  friend PolyElement operator*(const PLocalScalar& c, const PolyElement& a);
  friend bool operator==(const PolyElement&, const PolyElement&) = default;

  std::string to_string() const;

 private:
  std::map<Monomial, PLocalScalar> terms_;
};

}  // namespace extdual
