#include "extdual/random_modules.hpp"

#include <algorithm>

namespace extdual {

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

}  // namespace

GradedModulePresentation random_finite_module(const GradedRing& ring, std::mt19937_64& rng,
                                              const RandomModuleOptions& options) {
  const std::size_t n = ring.num_vars();
  const int count = uniform(rng, 1, options.max_generators);
  GradedFreeModule gens;
  for (int j = 0; j < count; ++j) gens.add_generator("g" + std::to_string(j), uniform(rng, 0, options.max_degree));

  std::vector<std::vector<PolyElement>> rels;
  auto single = [&](std::size_t j, const PolyElement& e) {
    std::vector<PolyElement> c(gens.rank());
    c[j] = e;
    return c;
  };
  for (std::size_t j = 0; j < gens.rank(); ++j) {
    const int e = uniform(rng, 1, options.max_exponent);
    rels.push_back(single(j, PolyElement::constant(PLocalScalar(prime_power(ring.p, e)), n)));
    for (std::size_t i = 0; i < n; ++i) {
      Monomial m(n, 0);
      m[i] = uniform(rng, 1, std::max(1, options.max_degree / ring.degrees[i]) + 1);
      rels.push_back(single(j, PolyElement::monomial(1, m)));
    }
  }

  const int bound = static_cast<int>(prime_power(ring.p, 2).get_si());
  const int extra = uniform(rng, 0, options.max_extra_relations);
  const int hi = *std::max_element(gens.degrees.begin(), gens.degrees.end());
  for (int r = 0; r < extra; ++r) {
    const int t = uniform(rng, 0, hi + ring.max_var_degree());
    std::vector<PolyElement> c(gens.rank());
    bool nonzero = false;
    for (std::size_t j = 0; j < gens.rank(); ++j) {
      const auto monomials = monomials_of_degree(ring, t - gens.degrees[j]);
      if (monomials.empty()) continue;
      const int coeff = uniform(rng, -bound, bound);
      if (coeff == 0) continue;
      const auto& m = monomials[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(monomials.size()) - 1))];
      c[j] = PolyElement::monomial(coeff, m);
      nonzero = true;
    }
    if (nonzero) rels.push_back(std::move(c));
  }
  return make_presentation(ring, gens, rels);
}

}  // namespace extdual
