#include "extdual/plocal.hpp"

#include <algorithm>

namespace extdual {

PLocalScalar::PLocalScalar(const mpz_class& numerator, const mpz_class& denominator) {
  if (denominator == 0) throw std::invalid_argument("PLocalScalar: zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

PLocalScalar PLocalScalar::from_rational(mpq_class q) {
  PLocalScalar s;
  q.canonicalize();
  s.value_ = std::move(q);
  return s;
}

PLocalScalar PLocalScalar::parse(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return PLocalScalar(mpz_class(text));
    return PLocalScalar(mpz_class(text.substr(0, slash)), mpz_class(text.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("not a rational number: '" + text + "'");
  }
}

bool PLocalScalar::is_p_local(long p) const {
  return extdual::valuation(value_.get_den(), p) == 0;
}

int PLocalScalar::valuation(long p) const {
  if (is_zero()) return kInfiniteValuation;
  return extdual::valuation(value_.get_num(), p);
}

mpz_class PLocalScalar::residue(long p, int k) const {
  mpz_class modulus = prime_power(p, k);
  if (modulus == 1) return 0;
  mpz_class inv;
  mpz_class den = value_.get_den();
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t()) == 0)
    throw std::domain_error("residue of a non p-local scalar");
  mpz_class r = value_.get_num() * inv;
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

std::string PLocalScalar::to_string() const { return value_.get_str(); }

PLocalScalar& PLocalScalar::operator+=(const PLocalScalar& o) {
  value_ += o.value_;
  return *this;
}
PLocalScalar& PLocalScalar::operator-=(const PLocalScalar& o) {
  value_ -= o.value_;
  return *this;
}
PLocalScalar& PLocalScalar::operator*=(const PLocalScalar& o) {
  value_ *= o.value_;
  return *this;
}

PLocalScalar divide_exact(const PLocalScalar& a, const PLocalScalar& b, long p) {
  if (b.is_zero()) throw std::domain_error("divide_exact: division by zero");
  if (a.valuation(p) < b.valuation(p)) throw std::domain_error("divide_exact: not divisible in Z_(p)");
  return PLocalScalar::from_rational(a.rational() / b.rational());
}

PLocalScalar unit_part(const PLocalScalar& a, long p) {
  int v = a.valuation(p);
  return PLocalScalar::from_rational(a.rational() / mpq_class(prime_power(p, v)));
}

mpz_class prime_power(long p, int k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
  return r;
}

int valuation(const mpz_class& n, long p) {
  if (n == 0) return kInfiniteValuation;
  mpz_class q = n;
  int v = 0;
  while (mpz_divisible_ui_p(q.get_mpz_t(), static_cast<unsigned long>(p))) {
    mpz_divexact_ui(q.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(p));
    ++v;
  }
  return v;
}

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

PLocalMatrix PLocalMatrix::identity(std::size_t n) {
  PLocalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

PLocalMatrix PLocalMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  std::size_t r = rows.size();
  std::size_t c = r ? rows[0].size() : 0;
  PLocalMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("from_rows: ragged rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

PLocalMatrix PLocalMatrix::diagonal(const std::vector<PLocalScalar>& d) {
  PLocalMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

std::vector<PLocalScalar> PLocalMatrix::column(std::size_t j) const {
  std::vector<PLocalScalar> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void PLocalMatrix::set_column(std::size_t j, const std::vector<PLocalScalar>& v) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

PLocalMatrix PLocalMatrix::transpose() const {
  PLocalMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

PLocalMatrix PLocalMatrix::hconcat(const PLocalMatrix& other) const {
  if (rows_ != other.rows_) throw std::invalid_argument("hconcat: row mismatch");
  PLocalMatrix m(rows_, cols_ + other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < other.cols_; ++j) m(i, cols_ + j) = other(i, j);
  }
  return m;
}

PLocalMatrix PLocalMatrix::select_columns(const std::vector<std::size_t>& idx) const {
  PLocalMatrix m(rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < idx.size(); ++k) m(i, k) = (*this)(i, idx[k]);
  return m;
}

bool PLocalMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const PLocalScalar& s) { return s.is_zero(); });
}

void PLocalMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void PLocalMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

PLocalMatrix operator*(const PLocalMatrix& a, const PLocalMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
  PLocalMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const PLocalScalar& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
    }
  return c;
}

std::vector<PLocalScalar> operator*(const PLocalMatrix& a, const std::vector<PLocalScalar>& v) {
  if (a.cols_ != v.size()) throw std::invalid_argument("matrix-vector product: dimension mismatch");
  std::vector<PLocalScalar> r(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k)
      if (!v[k].is_zero() && !a(i, k).is_zero()) r[i] += a(i, k) * v[k];
  return r;
}

bool is_zero(const PLocalVector& v) {
  return std::all_of(v.begin(), v.end(), [](const PLocalScalar& s) { return s.is_zero(); });
}

}  // namespace extdual
