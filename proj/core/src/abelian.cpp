#include "extdual/abelian.hpp"

#include <algorithm>
#include <numeric>

namespace extdual {

bool ResidueMatrix::is_zero() const {
  return std::all_of(data.begin(), data.end(), [](const mpz_class& x) { return x == 0; });
}

SubquotientGroup::SubquotientGroup(const PLocalMatrix& incoming, std::size_t ambient_dim, std::size_t outgoing_rank,
                                   long p)
    : p_(p), ambient_(ambient_dim) {
  if (incoming.rows() != ambient_dim) throw std::invalid_argument("SubquotientGroup: incoming has wrong row count");
  SnfResult f = snf(incoming, p);
  if (outgoing_rank + f.rank > ambient_dim) throw std::logic_error("SubquotientGroup: ranks exceed ambient dimension");
  free_rank_ = ambient_dim - outgoing_rank - f.rank;
  for (std::size_t i = 0; i < f.rank; ++i)
    if (f.exponents[i] > 0) {
      exponents_.push_back(f.exponents[i]);
      torsion_rows_.push_back(i);
    }
  left_ = std::move(f.left);
  left_inverse_ = std::move(f.left_inverse);
}

int SubquotientGroup::log_order() const { return total_log_order(exponents_); }

PLocalVector SubquotientGroup::generator(std::size_t i) const { return left_inverse_.column(torsion_rows_.at(i)); }

std::vector<mpz_class> SubquotientGroup::coordinates(const PLocalVector& z) const {
  if (z.size() != ambient_) throw std::invalid_argument("coordinates: wrong ambient dimension");
  std::vector<mpz_class> out(exponents_.size());
  for (std::size_t k = 0; k < exponents_.size(); ++k) {
    PLocalScalar acc;
    const std::size_t row = torsion_rows_[k];
    for (std::size_t j = 0; j < ambient_; ++j)
      if (!z[j].is_zero() && !left_(row, j).is_zero()) acc += left_(row, j) * z[j];
    out[k] = acc.residue(p_, exponents_[k]);
  }
  return out;
}

int total_log_order(const std::vector<int>& exponents) { return std::accumulate(exponents.begin(), exponents.end(), 0); }

void reduce_rows(ResidueMatrix& m, const std::vector<int>& target, long p) {
  for (std::size_t i = 0; i < m.rows; ++i) {
    mpz_class mod = prime_power(p, target[i]);
    for (std::size_t j = 0; j < m.cols; ++j) mpz_fdiv_r(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), mod.get_mpz_t());
  }
}

bool is_well_defined(const ResidueMatrix& m, const std::vector<int>& source, const std::vector<int>& target, long p) {
  if (m.rows != target.size() || m.cols != source.size()) return false;
  for (std::size_t j = 0; j < m.cols; ++j)
    for (std::size_t i = 0; i < m.rows; ++i) {
      mpz_class v = m(i, j) * prime_power(p, source[j]);
      if (!mpz_divisible_p(v.get_mpz_t(), prime_power(p, target[i]).get_mpz_t())) return false;
    }
  return true;
}

namespace {

PLocalMatrix presentation_matrix(const ResidueMatrix& m, const std::vector<int>& target, long p) {
  PLocalMatrix a(m.rows, m.cols + target.size());
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) a(i, j) = PLocalScalar(m(i, j));
    a(i, m.cols + i) = PLocalScalar(prime_power(p, target[i]));
  }
  return a;
}

}  // namespace

std::vector<int> cokernel_exponents(const ResidueMatrix& m, const std::vector<int>& target, long p) {
  SnfResult f = snf(presentation_matrix(m, target, p), p);
  std::vector<int> out;
  for (int e : f.exponents)
    if (e > 0) out.push_back(e);
  return out;
}

bool is_isomorphism(const ResidueMatrix& m, const std::vector<int>& source, const std::vector<int>& target, long p) {
  if (total_log_order(source) != total_log_order(target)) return false;
  if (!is_well_defined(m, source, target, p)) return false;
  return cokernel_exponents(m, target, p).empty();
}

ResidueMatrix compose(const ResidueMatrix& b, const ResidueMatrix& a, const std::vector<int>& target, long p) {
  if (b.cols != a.rows) throw std::invalid_argument("compose: dimension mismatch");
  ResidueMatrix c(b.rows, a.cols);
  for (std::size_t i = 0; i < b.rows; ++i)
    for (std::size_t k = 0; k < b.cols; ++k) {
      if (b(i, k) == 0) continue;
      for (std::size_t j = 0; j < a.cols; ++j) c(i, j) += b(i, k) * a(k, j);
    }
  reduce_rows(c, target, p);
  return c;
}

}  // namespace extdual
