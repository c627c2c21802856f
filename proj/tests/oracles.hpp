#pragma once

// Independent reference computations. Nothing here calls into the engine
// except for plain data types.

#include <gmpxx.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

namespace oracle {

using IntMatrix = std::vector<std::vector<long>>;

inline int valuation(mpz_class n, long p) {
  if (n == 0) return -1;
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

/// Determinant by cofactor expansion.
inline mpz_class determinant(const std::vector<std::vector<mpz_class>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  mpz_class det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c] == 0) continue;
    std::vector<std::vector<mpz_class>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<mpz_class> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(std::move(row));
    }
    det += (c % 2 ? -1 : 1) * m[0][c] * determinant(minor);
  }
  return det;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    const std::function<void(const std::vector<std::size_t>&)>& f) {
  if (cur.size() == k) {
    f(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, f);
    cur.pop_back();
  }
}

/// d_k = gcd of all k x k minors.
inline std::vector<mpz_class> determinantal_divisors(const IntMatrix& a) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::vector<mpz_class> d;
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    mpz_class g = 0;
    std::vector<std::size_t> rs, cs;
    subsets(rows, k, 0, rs, [&](const std::vector<std::size_t>& ri) {
      subsets(cols, k, 0, cs, [&](const std::vector<std::size_t>& ci) {
        std::vector<std::vector<mpz_class>> m(k, std::vector<mpz_class>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) m[i][j] = a[ri[i]][ci[j]];
        mpz_class det = determinant(m);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), det.get_mpz_t());
      });
    });
    if (g == 0) break;
    d.push_back(g);
  }
  return d;
}

/// p-adic valuations of the integer invariant factors d_k / d_{k-1}.
inline std::vector<int> snf_exponents(const IntMatrix& a, long p) {
  const auto d = determinantal_divisors(a);
  std::vector<int> out;
  mpz_class prev = 1;
  for (const auto& dk : d) {
    out.push_back(valuation(dk / prev, p));
    prev = dk;
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Number of exponent vectors c with sum c_i deg_i = u and c_i < bound_i.
inline int monomial_count(const std::vector<int>& degrees, const std::vector<int>& bounds, int u) {
  std::function<int(std::size_t, int)> go = [&](std::size_t i, int rest) -> int {
    if (i == degrees.size()) return rest == 0 ? 1 : 0;
    int total = 0;
    for (int c = 0; c < bounds[i] && c * degrees[i] <= rest; ++c) total += go(i + 1, rest - c * degrees[i]);
    return total;
  };
  return u < 0 ? 0 : go(0, u);
}

/// (R/(p^a, x_1^{b_1}, ...))_u as exponents: one Z/p^a per monomial.
inline std::vector<int> quotient_slice(const std::vector<int>& degrees, int a, const std::vector<int>& bounds, int u) {
  return std::vector<int>(static_cast<std::size_t>(monomial_count(degrees, bounds, u)), a);
}

inline long ipow(long p, int e) {
  long r = 1;
  for (int i = 0; i < e; ++i) r *= p;
  return r;
}

/// Elements of ⊕ Z/p^{e_i}, enumerated.
inline std::vector<std::vector<mpz_class>> elements(const std::vector<int>& exps, long p) {
  std::vector<std::vector<mpz_class>> out{{}};
  for (int e : exps) {
    std::vector<std::vector<mpz_class>> next;
    const long order = ipow(p, e);
    for (const auto& v : out)
      for (long x = 0; x < order; ++x) {
        auto w = v;
        w.push_back(x);
        next.push_back(std::move(w));
      }
    out = std::move(next);
  }
  return out;
}

/// Size of the image of a residue matrix, by enumerating the source.
inline std::size_t image_size(const std::vector<std::vector<long>>& m, const std::vector<int>& source,
                              const std::vector<int>& target, long p) {
  std::vector<std::vector<long>> seen;
  for (const auto& x : elements(source, p)) {
    std::vector<long> y(target.size());
    for (std::size_t i = 0; i < target.size(); ++i) {
      const long order = ipow(p, target[i]);
      long acc = 0;
      for (std::size_t j = 0; j < source.size(); ++j) acc = (acc + m[i][j] * x[j].get_si()) % order;
      y[i] = (acc + order) % order;
    }
    seen.push_back(std::move(y));
  }
  std::sort(seen.begin(), seen.end());
  return static_cast<std::size_t>(std::unique(seen.begin(), seen.end()) - seen.begin());
}

inline std::size_t group_order(const std::vector<int>& exps, long p) {
  std::size_t n = 1;
  for (int e : exps) n *= static_cast<std::size_t>(ipow(p, e));
  return n;
}

}  // namespace oracle
