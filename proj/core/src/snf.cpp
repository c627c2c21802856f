#include "extdual/snf.hpp"

namespace extdual {

SnfResult snf(const PLocalMatrix& a, long p) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  PLocalMatrix w = a;
  SnfResult out;
  out.left = PLocalMatrix::identity(m);
  out.left_inverse = PLocalMatrix::identity(m);
  out.right = PLocalMatrix::identity(n);

  const std::size_t steps = std::min(m, n);
  for (std::size_t k = 0; k < steps; ++k) {
    int best = kInfiniteValuation;
    std::size_t pr = 0, pc = 0;
    for (std::size_t i = k; i < m && best > 0; ++i)
      for (std::size_t j = k; j < n; ++j) {
        int v = w(i, j).valuation(p);
        if (v < best) {
          best = v;
          pr = i;
          pc = j;
          if (v == 0) break;
        }
      }
    if (best == kInfiniteValuation) break;

    w.swap_rows(k, pr);
    out.left.swap_rows(k, pr);
    out.left_inverse.swap_cols(k, pr);
    w.swap_cols(k, pc);
    out.right.swap_cols(k, pc);

    // Normalize the pivot to p^best.
    const PLocalScalar u = unit_part(w(k, k), p);
    const PLocalScalar u_inv = PLocalScalar::from_rational(1 / u.rational());
    for (std::size_t j = k; j < n; ++j) w(k, j) *= u_inv;
    for (std::size_t j = 0; j < m; ++j) out.left(k, j) *= u_inv;
    for (std::size_t i = 0; i < m; ++i) out.left_inverse(i, k) *= u;

    const PLocalScalar pivot = w(k, k);
    for (std::size_t i = k + 1; i < m; ++i) {
      if (w(i, k).is_zero()) continue;
      const PLocalScalar f = divide_exact(w(i, k), pivot, p);
      for (std::size_t j = k; j < n; ++j)
        if (!w(k, j).is_zero()) w(i, j) -= f * w(k, j);
      for (std::size_t j = 0; j < m; ++j)
        if (!out.left(k, j).is_zero()) out.left(i, j) -= f * out.left(k, j);
      for (std::size_t r = 0; r < m; ++r)
        if (!out.left_inverse(r, i).is_zero()) out.left_inverse(r, k) += f * out.left_inverse(r, i);
    }
    for (std::size_t j = k + 1; j < n; ++j) {
      if (w(k, j).is_zero()) continue;
      const PLocalScalar g = divide_exact(w(k, j), pivot, p);
      w(k, j) = 0;
      for (std::size_t r = 0; r < n; ++r)
        if (!out.right(r, k).is_zero()) out.right(r, j) -= g * out.right(r, k);
    }
    out.exponents.push_back(best);
    ++out.rank;
  }
  return out;
}

PLocalMatrix kernel_basis(const PLocalMatrix& a, long p) {
  SnfResult f = snf(a, p);
  std::vector<std::size_t> idx;
  for (std::size_t j = f.rank; j < a.cols(); ++j) idx.push_back(j);
  return f.right.select_columns(idx);
}

PreimageSolver::PreimageSolver(const PLocalMatrix& a, long p) : p_(p), rows_(a.rows()), form_(snf(a, p)) {}

std::optional<PLocalVector> PreimageSolver::solve(const PLocalVector& b) const {
  if (b.size() != rows_) throw std::invalid_argument("solve_preimage: dimension mismatch");
  PLocalVector lb = form_.left * b;
  PLocalVector y(form_.right.rows());
  for (std::size_t i = 0; i < lb.size(); ++i) {
    if (i < form_.rank) {
      if (lb[i].valuation(p_) < form_.exponents[i]) return std::nullopt;
      y[i] = divide_exact(lb[i], PLocalScalar(prime_power(p_, form_.exponents[i])), p_);
    } else if (!lb[i].is_zero()) {
      return std::nullopt;
    }
  }
  return form_.right * y;
}

std::optional<PLocalVector> solve_preimage(const PLocalMatrix& a, const PLocalVector& b, long p) {
  return PreimageSolver(a, p).solve(b);
}

PLocalMatrix column_span_basis(const PLocalMatrix& a, long p) {
  SnfResult f = snf(a, p);
  PLocalMatrix basis(a.rows(), f.rank);
  for (std::size_t k = 0; k < f.rank; ++k) {
    PLocalScalar scale(prime_power(p, f.exponents[k]));
    for (std::size_t i = 0; i < a.rows(); ++i) basis(i, k) = f.left_inverse(i, k) * scale;
  }
  return basis;
}

}  // namespace extdual
