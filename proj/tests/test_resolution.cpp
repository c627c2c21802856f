#include <doctest.h>

#include <random>

#include "extdual/presentation.hpp"
#include "extdual/random_modules.hpp"
#include "extdual/resolution.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace extdual;
using namespace testing_helpers;

namespace {

std::vector<std::vector<int>> stage_degrees(const Resolution& r) {
  std::vector<std::vector<int>> out;
  for (const auto& m : r.complex.modules) out.push_back(sorted(m.degrees));
  return out;
}

int binomial(int n, int k) {
  int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

bool minimal_entries(const Resolution& r) {
  const Monomial one(r.module.ring.num_vars(), 0);
  for (const auto& d : r.complex.maps)
    for (const auto& e : d.entries)
      if (e.coefficient(one).is_unit(r.module.ring.p)) return false;
  return true;
}

}  // namespace

TEST_SUITE("presentation") {
  TEST_CASE("zero relations are dropped and inhomogeneous ones rejected") {
    const GradedRing r = bp_ring(2, 1);
    const auto m = make_presentation(r, free_module({0}), {{PolyElement{}}, {constant(r, 2)}});
    CHECK(m.num_relations() == 1);
    CHECK_THROWS_AS(make_presentation(r, free_module({0}), {{constant(r, 2) + x(r, 0)}}), std::invalid_argument);
  }

  TEST_CASE("slices of R/(p^2, x^3) match the monomial count") {
    const GradedRing r = bp_ring(2, 1);
    const auto m = cyclic_module(r, {p_power(r, 2), x(r, 0, 3)});
    for (int u = -2; u <= 10; ++u)
      CHECK(module_slice(m, u).group.exponents() == oracle::quotient_slice(r.degrees, 2, {3}, u));
  }

  TEST_CASE("slices of a two-variable quotient") {
    const GradedRing r = bp_ring(2, 2);
    const auto m = cyclic_module(r, {p_power(r, 1), x(r, 0, 4), x(r, 1, 2)});
    for (int u = 0; u <= 20; ++u)
      CHECK(module_slice(m, u).group.exponents() == oracle::quotient_slice(r.degrees, 1, {4, 2}, u));
  }

  TEST_CASE("pruning removes unit relations") {
    const GradedRing r = bp_ring(2, 1);
    // g1 = x g0 is redundant
    const auto m = make_presentation(r, free_module({0, 2}),
                                     {{x(r, 0), constant(r, -1)}, {constant(r, 4), PolyElement{}}, {PolyElement{}, x(r, 0)}});
    const PrunedPresentation pr = prune(m);
    CHECK(pr.presentation.generators.rank() == 1);
    for (int t = 0; t <= 8; t += 2)
      CHECK(module_slice(pr.presentation, t).group.exponents() == module_slice(m, t).group.exponents());
  }

  TEST_CASE("direct sums and suspensions") {
    const GradedRing r = bp_ring(3, 1);
    const auto a = cyclic_p_group(r, 2, 0);
    const auto b = suspend(cyclic_p_group(r, 1, 0), 4);
    const auto s = direct_sum(a, b);
    CHECK(module_slice(s, 0).group.exponents() == std::vector<int>{2});
    CHECK(module_slice(s, 4).group.exponents() == std::vector<int>{1});
    CHECK(s.generators.labels[0] != s.generators.labels[1]);
  }

  TEST_CASE("Pontryagin duality is an involution on degreewise modules") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 20; ++trial) {
      const GradedRing r = trial % 2 ? bp_ring(2, 1) : bp_ring(3, 1);
      const auto m = random_finite_module(r, rng);
      const DegreewiseModule d = degreewise_module(m, -4, 30);
      const DegreewiseModule dd = pontryagin_dual(pontryagin_dual(d));
      CHECK(dd == d);
      CHECK(pontryagin_dual(d).action_sign == -1);
      CHECK(reflect_degrees(reflect_degrees(d)) == d);
      CHECK(shift_degrees(shift_degrees(d, 4), -4) == d);
    }
  }

  TEST_CASE("dual of a cyclic tower") {
    // Z/16 generated in degree 16 with x acting by zero
    const GradedRing r = bp_ring(2, 1);
    const DegreewiseModule d = pontryagin_dual(degreewise_module(suspend(cyclic_p_group(r, 4), 16), 10, 20));
    CHECK(d.group(16) == std::vector<int>{4});
    CHECK(d.group(18).empty());
  }

  TEST_CASE("free slices are rejected by degreewise_module") {
    const GradedRing r = bp_ring(2, 1);
    CHECK_THROWS(degreewise_module(cyclic_module(r, {x(r, 0)}), 0, 2));
  }
}

TEST_SUITE("resolution") {
  TEST_CASE("Koszul resolution of (p, x)") {
    const GradedRing r = bp_ring(2, 1);
    const Resolution k = koszul_resolution(r, {constant(r, 2), x(r, 0)});
    CHECK(k.ranks() == std::vector<std::size_t>{1, 2, 1});
    CHECK(stage_degrees(k) == std::vector<std::vector<int>>{{0}, {0, 2}, {2}});
    CHECK(verify_exactness(k, -2).ok());
  }

  TEST_CASE("Koszul resolution of (p^2, x^3)") {
    const GradedRing r = bp_ring(2, 1);
    const Resolution k = koszul_resolution(r, {p_power(r, 2), x(r, 0, 3)});
    CHECK(k.complex.modules[2].degrees == std::vector<int>{6});
    for (int u : {0, 2, 4}) CHECK(module_slice(k.module, u).group.exponents() == std::vector<int>{2});
    CHECK(module_slice(k.module, 6).group.is_zero());
    CHECK(verify_exactness(k, 0).ok());
  }

  TEST_CASE("single element gives a two-term complex") {
    const GradedRing r = bp_ring(2, 1);
    const Resolution k = koszul_resolution(r, {constant(r, 2)});
    CHECK(k.ranks() == std::vector<std::size_t>{1, 1});
  }

  TEST_CASE("Koszul rejects sequences of the wrong shape") {
    const GradedRing r = bp_ring(2, 2);
    CHECK_THROWS(koszul_resolution(r, {constant(r, 2) + x(r, 0)}));
    CHECK_THROWS(koszul_resolution(r, {constant(r, 2), constant(r, 4)}));
    CHECK_THROWS(koszul_resolution(r, {x(r, 0), x(r, 0, 2)}));
    CHECK_THROWS(koszul_resolution(r, {x(r, 0) * x(r, 1)}));
  }

  TEST_CASE("minimal resolution of Z/p has binomial ranks and matches Koszul") {
    for (int n : {1, 2}) {
      const GradedRing r = bp_ring(2, n);
      std::vector<PolyElement> seq{constant(r, 2)};
      for (int i = 0; i < n; ++i) seq.push_back(x(r, static_cast<std::size_t>(i)));
      const Resolution k = koszul_resolution(r, seq);
      const Resolution m = minimal_free_resolution(cyclic_p_group(r, 1), static_cast<std::size_t>(n + 1), 20);
      REQUIRE(m.ranks().size() == static_cast<std::size_t>(n + 2));
      for (int s = 0; s <= n + 1; ++s) CHECK(m.ranks()[static_cast<std::size_t>(s)] == static_cast<std::size_t>(binomial(n + 1, s)));
      CHECK(stage_degrees(m) == stage_degrees(k));
      CHECK(minimal_entries(m));
    }
  }

  TEST_CASE("free module resolves in length 0") {
    const GradedRing r = bp_ring(2, 1);
    const Resolution m = minimal_free_resolution(make_presentation(r, free_module({0, 4}), {}), 2, 10);
    CHECK(m.ranks() == std::vector<std::size_t>{2});
  }

  TEST_CASE("Z/4 has differential entries 4 and x") {
    const GradedRing r = bp_ring(2, 1);
    const Resolution m = minimal_free_resolution(cyclic_p_group(r, 2), 2, 10);
    CHECK(m.ranks() == std::vector<std::size_t>{1, 2, 1});
    std::vector<PolyElement> d1 = m.complex.maps[0].entries;
    auto has = [&](const PolyElement& e) {
      return std::any_of(d1.begin(), d1.end(), [&](const PolyElement& f) {
        // up to a unit
        return !f.is_zero() && f.terms().size() == 1 && f.terms().begin()->first == e.terms().begin()->first &&
               f.terms().begin()->second.valuation(2) == e.terms().begin()->second.valuation(2);
      });
    };
    CHECK(has(constant(r, 4)));
    CHECK(has(x(r, 0)));
  }

  TEST_CASE("minimal and Koszul resolutions of R/(p^a, x^b) agree") {
    const GradedRing r = bp_ring(2, 1);
    for (int a : {1, 2})
      for (int b : {1, 2, 3}) {
        CAPTURE(a);
        CAPTURE(b);
        const Resolution k = koszul_resolution(r, {p_power(r, a), x(r, 0, b)});
        const Resolution m = minimal_free_resolution(k.module, 2, 2 * b + 4);
        CHECK(stage_degrees(m) == stage_degrees(k));
        CHECK(verify_exactness(m, -2).ok());
        CHECK(verify_exactness(k, -2).ok());
      }
  }

  TEST_CASE("BoundExceeded when the stage bound is too small") {
    const GradedRing r = bp_ring(2, 2);
    CHECK_THROWS_AS(minimal_free_resolution(cyclic_p_group(r, 1), 1, 20), BoundExceeded);
  }

  TEST_CASE("a corrupted sign is located") {
    const GradedRing r = bp_ring(2, 1);
    Resolution k = koszul_resolution(r, {constant(r, 2), x(r, 0)});
    GradedMap& d2 = k.complex.maps[1];
    for (auto& e : d2.entries)
      if (!e.is_zero()) {
        e = PLocalScalar(-1) * e;
        break;
      }
    const ExactnessReport rep = verify_exactness(k, 0);
    CHECK_FALSE(rep.ok());
    CHECK_FALSE(rep.d_squared_zero);
    REQUIRE_FALSE(rep.d_squared_failures.empty());
    CHECK(rep.d_squared_failures.front() == std::pair<std::size_t, int>{2, 2});
  }

  TEST_CASE("property: random finite modules resolve minimally and exactly within n + 1 stages") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
      const GradedRing r = trial % 3 == 0 ? bp_ring(3, 1) : (trial % 3 == 1 ? bp_ring(2, 1) : bp_ring(2, 2));
      const auto m = random_finite_module(r, rng, {3, 8, 2, 2});
      const std::size_t n = r.num_vars();
      Resolution res;
      REQUIRE_NOTHROW(res = minimal_free_resolution(m, n + 1, 8 + 2 * r.top_degree() + r.max_var_degree()));
      CHECK(minimal_entries(res));
      CHECK(verify_exactness(res, -r.max_var_degree()).ok());
    }
  }
}

TEST_SUITE("chain maps") {
  TEST_CASE("identity lifts to the identity") {
    const GradedRing r = bp_ring(2, 1);
    const Resolution k = koszul_resolution(r, {constant(r, 2), x(r, 0)});
    GradedMap id(k.complex.modules[0], k.complex.modules[0], 0);
    id.at(0, 0) = constant(r, 1);
    const ChainMap phi = lift_chain_map(k.complex, k.complex, id, 2, r);
    for (std::size_t s = 1; s <= 2; ++s)
      CHECK(compose(k.complex.maps[s - 1], phi.components[s]) == compose(phi.components[s - 1], k.complex.maps[s - 1]));
  }

  TEST_CASE("a map that does not exist cannot be lifted") {
    // 1 -> 1 from R/(2) to R/(4) is not a module map
    const GradedRing r = bp_ring(2, 1);
    const Resolution a = koszul_resolution(r, {constant(r, 2)});
    const Resolution b = koszul_resolution(r, {constant(r, 4)});
    GradedMap base(a.complex.modules[0], b.complex.modules[0], 0);
    base.at(0, 0) = constant(r, 1);
    CHECK_THROWS_AS(lift_chain_map(a.complex, b.complex, base, 1, r), LiftingFailure);
  }

  TEST_CASE("Ext of the Koszul complex") {
    const GradedRing r = bp_ring(2, 1);
    const ExtComputation e(koszul_resolution(r, {p_power(r, 3), x(r, 0)}));
    CHECK(e.group(2, 2).exponents() == std::vector<int>{3});
    CHECK(e.group(1, 2).is_zero());
    CHECK(e.group(0, 0).is_zero());
  }
}

TEST_SUITE("profinite") {
  TEST_CASE("k_max = 1 has one stage and no transitions") {
    for (const GradedRing& r : {bp_ring(2, 1), bp_ring(3, 1), bp_ring(2, 0)}) {
      const ProfiniteReport rep = ext_profinite(r, 1);
      REQUIRE(rep.stages.size() == 1);
      CHECK(rep.stages[0].group == std::vector<int>{1});
      CHECK(rep.certified);
    }
  }

  TEST_CASE("k = 3 over bp(2,1)") {
    const ProfiniteReport rep = ext_profinite(bp_ring(2, 1), 3);
    REQUIRE(rep.stages.size() == 3);
    for (int k = 1; k <= 3; ++k) CHECK(rep.stages[static_cast<std::size_t>(k - 1)].group == std::vector<int>{k});
    for (std::size_t i = 1; i < 3; ++i) {
      CHECK(rep.stages[i].surjective);
      CHECK(rep.stages[i].kernel_log_order == 1);
    }
    CHECK(rep.certified);
  }

  TEST_CASE("two variables") {
    const ProfiniteReport rep = ext_profinite(bp_ring(2, 2), 3);
    CHECK(rep.certified);
  }
}
