#pragma once

#include <gmpxx.h>

#include <climits>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace extdual {

/// Valuation reported for the zero element.
inline constexpr int kInfiniteValuation = INT_MAX;

/// Exact element of the local ring Z_(p), stored as a reduced fraction.
///
/// The prime is not part of the value; operations that depend on it take
/// `p` explicitly. A scalar is p-local for a given p when its denominator is
/// prime to p, which is the only case the rest of the engine produces.
class PLocalScalar {
 public:
  PLocalScalar() = default;
  PLocalScalar(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  explicit PLocalScalar(mpz_class value) : value_(std::move(value)) {}
  PLocalScalar(const mpz_class& numerator, const mpz_class& denominator);

  static PLocalScalar from_rational(mpq_class q);
  /// Parses "a" or "a/b".
  static PLocalScalar parse(const std::string& text);

  const mpq_class& rational() const { return value_; }
  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_p_local(long p) const;
  int valuation(long p) const;
  bool is_unit(long p) const { return !is_zero() && valuation(p) == 0; }

  /// Residue in [0, p^k) of this scalar modulo p^k.
  mpz_class residue(long p, int k) const;

  std::string to_string() const;

  PLocalScalar operator-() const { return from_rational(-value_); }
  PLocalScalar& operator+=(const PLocalScalar& o);
  PLocalScalar& operator-=(const PLocalScalar& o);
  PLocalScalar& operator*=(const PLocalScalar& o);

  friend PLocalScalar operator+(PLocalScalar a, const PLocalScalar& b) { return a += b; }
  friend PLocalScalar operator-(PLocalScalar a, const PLocalScalar& b) { return a -= b; }
  friend PLocalScalar operator*(PLocalScalar a, const PLocalScalar& b) { return a *= b; }
  friend bool operator==(const PLocalScalar& a, const PLocalScalar& b) { return a.value_ == b.value_; }
  friend bool operator!=(const PLocalScalar& a, const PLocalScalar& b) { return !(a == b); }

 private:
  mpq_class value_{0};
};

/// a / b in Z_(p). Requires v_p(a) >= v_p(b) and b != 0.
PLocalScalar divide_exact(const PLocalScalar& a, const PLocalScalar& b, long p);

/// Splits a nonzero scalar as p^v * u with u a unit; returns u.
PLocalScalar unit_part(const PLocalScalar& a, long p);

mpz_class prime_power(long p, int k);
int valuation(const mpz_class& n, long p);
bool is_prime(long p);

/// Dense row-major matrix over Z_(p).
class PLocalMatrix {
 public:
  PLocalMatrix() = default;
  PLocalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static PLocalMatrix identity(std::size_t n);
  static PLocalMatrix from_rows(const std::vector<std::vector<long>>& rows);
  static PLocalMatrix diagonal(const std::vector<PLocalScalar>& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  PLocalScalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const PLocalScalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<PLocalScalar> column(std::size_t j) const;
  void set_column(std::size_t j, const std::vector<PLocalScalar>& v);
  PLocalMatrix transpose() const;
  /// Columns of `this` followed by the columns of `other`.
  PLocalMatrix hconcat(const PLocalMatrix& other) const;
  PLocalMatrix select_columns(const std::vector<std::size_t>& idx) const;
  bool is_zero() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);

  friend PLocalMatrix operator*(const PLocalMatrix& a, const PLocalMatrix& b);
  friend std::vector<PLocalScalar> operator*(const PLocalMatrix& a, const std::vector<PLocalScalar>& v);
  friend bool operator==(const PLocalMatrix& a, const PLocalMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<PLocalScalar> data_;
};

using PLocalVector = std::vector<PLocalScalar>;

bool is_zero(const PLocalVector& v);

}  // namespace extdual
