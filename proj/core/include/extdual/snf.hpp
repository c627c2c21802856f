#pragma once

#include <optional>
#include <vector>

#include "extdual/plocal.hpp"

namespace extdual {

/// Smith normal form over Z_(p).
///
/// `left * A * right` is exactly the diagonal matrix with entries
/// p^exponents[0], ..., p^exponents[rank-1] followed by zeros. All three
/// transforms are invertible over Z_(p); `left_inverse` is kept alongside
/// `left` because callers need generators of cokernels.
struct SnfResult {
  std::vector<int> exponents;
  PLocalMatrix left;
  PLocalMatrix left_inverse;
  PLocalMatrix right;
  std::size_t rank = 0;
};

/// Pivots on the entry of least p-valuation, ties broken by smallest
/// (row, col), so exponents come out nondecreasing and output is
/// deterministic.
SnfResult snf(const PLocalMatrix& a, long p);

/// Columns form a Z_(p)-basis of ker(A).
PLocalMatrix kernel_basis(const PLocalMatrix& a, long p);

/// Some x with A x = b, or nullopt when b is not in the Z_(p)-span of A's columns.
std::optional<PLocalVector> solve_preimage(const PLocalMatrix& a, const PLocalVector& b, long p);

/// Reusable solver for many right-hand sides against one matrix.
class PreimageSolver {
 public:
  PreimageSolver(const PLocalMatrix& a, long p);
  std::optional<PLocalVector> solve(const PLocalVector& b) const;
  const SnfResult& form() const { return form_; }

 private:
  long p_;
  std::size_t rows_;
  SnfResult form_;
};

/// Columns form a Z_(p)-basis of the column span of A.
PLocalMatrix column_span_basis(const PLocalMatrix& a, long p);

}  // namespace extdual
