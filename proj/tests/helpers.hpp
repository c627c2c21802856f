#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "extdual/graded.hpp"
#include "extdual/ring.hpp"

namespace testing_helpers {

inline extdual::PolyElement x(const extdual::GradedRing& r, std::size_t i, int power = 1, long c = 1) {
  extdual::Monomial m(r.num_vars(), 0);
  m[i] = power;
  return extdual::PolyElement::monomial(c, m);
}

inline extdual::PolyElement constant(const extdual::GradedRing& r, long c) {
  return extdual::PolyElement::constant(c, r.num_vars());
}

inline extdual::PolyElement p_power(const extdual::GradedRing& r, int k) {
  return extdual::PolyElement::constant(extdual::PLocalScalar(extdual::prime_power(r.p, k)), r.num_vars());
}

inline extdual::GradedFreeModule free_module(const std::vector<int>& degrees) {
  extdual::GradedFreeModule f;
  for (std::size_t i = 0; i < degrees.size(); ++i) f.add_generator("g" + std::to_string(i), degrees[i]);
  return f;
}

inline std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace testing_helpers
