#pragma once

#include <vector>

#include "extdual/plocal.hpp"
#include "extdual/snf.hpp"

namespace extdual {

/// Matrix of residues describing a homomorphism between finite abelian
/// p-groups written as sums of cyclic groups Z/p^k. Entry (i, j) is the
/// i-th coordinate of the image of the j-th source generator, reduced
/// modulo the order of the i-th target generator.
struct ResidueMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<mpz_class> data;

  ResidueMatrix() = default;
  ResidueMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
  mpz_class& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const mpz_class& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  bool is_zero() const;
  friend bool operator==(const ResidueMatrix&, const ResidueMatrix&) = default;
};

/// The group ker(out) / im(in) inside a free Z_(p)-module of finite rank.
///
/// Torsion coordinates of a cycle z are (L z)_i mod p^{k_i}, where L is the
/// left transform of the Smith form of `in`. Generators are the matching
/// columns of L^{-1}. Only the torsion part carries coordinates.
class SubquotientGroup {
 public:
  SubquotientGroup() = default;
  /// `incoming` is ambient x l. `outgoing_rank` is the rank of the map out
  /// of the ambient module (0 when there is none).
  SubquotientGroup(const PLocalMatrix& incoming, std::size_t ambient_dim, std::size_t outgoing_rank, long p);

  const std::vector<int>& exponents() const { return exponents_; }
  std::size_t free_rank() const { return free_rank_; }
  bool is_zero() const { return exponents_.empty() && free_rank_ == 0; }
  std::size_t ambient_dim() const { return ambient_; }
  /// log_p of the order of the torsion part.
  int log_order() const;

  /// Ambient vector representing the i-th torsion generator.
  PLocalVector generator(std::size_t i) const;
  /// Torsion coordinates of an ambient cycle.
  std::vector<mpz_class> coordinates(const PLocalVector& z) const;

 private:
  long p_ = 2;
  std::size_t ambient_ = 0;
  std::size_t free_rank_ = 0;
  std::vector<int> exponents_;
  std::vector<std::size_t> torsion_rows_;
  PLocalMatrix left_;
  PLocalMatrix left_inverse_;
};

/// log_p of the order of ⊕ Z/p^{k_i}.
int total_log_order(const std::vector<int>& exponents);

/// Checks that every column has order dividing the order of its source generator.
bool is_well_defined(const ResidueMatrix& m, const std::vector<int>& source, const std::vector<int>& target, long p);

/// Exponents of the cokernel of m : source -> target.
std::vector<int> cokernel_exponents(const ResidueMatrix& m, const std::vector<int>& target, long p);

/// Bijectivity of a well-defined homomorphism between finite p-groups.
bool is_isomorphism(const ResidueMatrix& m, const std::vector<int>& source, const std::vector<int>& target, long p);

/// b * a with entries reduced modulo the final target orders.
ResidueMatrix compose(const ResidueMatrix& b, const ResidueMatrix& a, const std::vector<int>& target, long p);

/// Reduces every entry modulo its row's order.
void reduce_rows(ResidueMatrix& m, const std::vector<int>& target, long p);

}  // namespace extdual
