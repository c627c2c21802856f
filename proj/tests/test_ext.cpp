#include <doctest.h>

#include <random>

#include "extdual/ext.hpp"
#include "extdual/random_modules.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace extdual;
using namespace testing_helpers;

namespace {

std::map<std::pair<std::size_t, int>, std::vector<int>> nonzero(const ExtTable& t) {
  std::map<std::pair<std::size_t, int>, std::vector<int>> out;
  for (const auto& [k, e] : t.entries) {
    CHECK(e.free_rank == 0);
    out[k] = e.exponents;
  }
  return out;
}

// Sums of suspended cyclic quotients R/(p^a, x^b), with optional mixing
// relations x^c g_0 - p g_1. No relation has a unit constant term.
GradedModulePresentation random_untwisted(const GradedRing& r, std::mt19937_64& rng) {
  const std::size_t count = 1 + rng() % 3;
  const int xd = r.degrees[0];
  GradedFreeModule gens;
  std::vector<std::vector<PolyElement>> rels;
  for (std::size_t j = 0; j < count; ++j) gens.add_generator("g" + std::to_string(j), xd * static_cast<int>(rng() % 4));
  for (std::size_t j = 0; j < count; ++j) {
    std::vector<PolyElement> c(count), d(count);
    c[j] = p_power(r, 1 + static_cast<int>(rng() % 3));
    d[j] = x(r, 0, 1 + static_cast<int>(rng() % 3));
    rels.push_back(c);
    rels.push_back(d);
  }
  if (count > 1 && gens.degrees[1] > gens.degrees[0]) {
    std::vector<PolyElement> c(count);
    c[0] = x(r, 0, (gens.degrees[1] - gens.degrees[0]) / xd);
    c[1] = constant(r, -static_cast<long>(r.p));
    rels.push_back(c);
  }
  return make_presentation(r, gens, rels);
}

// π^∨ : Q^∨_u -> M^∨_u for the quotient π : M -> Q on shared generators.
ResidueMatrix dual_of_quotient(const GradedModulePresentation& m, const GradedModulePresentation& q, int u, long p) {
  const ModuleSlice sm = module_slice(m, u), sq = module_slice(q, u);
  const auto& l = sm.group.exponents();
  const auto& k = sq.group.exponents();
  ResidueMatrix out(l.size(), k.size());
  for (std::size_t j = 0; j < l.size(); ++j) {
    const auto coords = sq.group.coordinates(sm.group.generator(j));
    for (std::size_t i = 0; i < k.size(); ++i) {
      mpz_class v = coords[i];
      if (l[j] >= k[i])
        v *= prime_power(p, l[j] - k[i]);
      else
        v /= prime_power(p, k[i] - l[j]);
      v %= prime_power(p, l[j]);
      if (v < 0) v += prime_power(p, l[j]);
      out(j, i) = v;
    }
  }
  return out;
}

}  // namespace

TEST_SUITE("finiteness") {
  TEST_CASE("verdicts") {
    const GradedRing r = bp_ring(2, 1);
    const auto zp = check_local_finiteness(cyclic_p_group(r, 1), 64);
    CHECK(zp.verdict == Finiteness::finite);
    CHECK(zp.bottom == 0);
    CHECK(zp.top == 0);

    const auto rp = check_local_finiteness(cyclic_module(r, {constant(r, 2)}), 64);
    CHECK(rp.verdict == Finiteness::infinite);
    for (int t = 0; t <= 60; t += 2) CHECK(rp.ranks_mod_p.at(t) == 1);

    const auto q = check_local_finiteness(cyclic_module(r, {p_power(r, 2), x(r, 0, 3)}), 64);
    CHECK(q.verdict == Finiteness::finite);
    CHECK(q.top == 4);

    CHECK(check_local_finiteness(cyclic_module(r, {}), 16).verdict == Finiteness::infinite);
  }

  TEST_CASE("a probe below the relations is inconclusive") {
    const GradedRing r = bp_ring(2, 1);
    const auto m = cyclic_module(r, {constant(r, 2), x(r, 0, 40)});
    CHECK(check_local_finiteness(m, 20).verdict == Finiteness::inconclusive);
    CHECK(check_local_finiteness(m, default_probe_bound(m)).verdict == Finiteness::finite);
  }

  TEST_CASE("verify rejects modules that are not locally finite") {
    const GradedRing r = bp_ring(2, 1);
    CHECK_THROWS_AS(verify_duality(cyclic_module(r, {constant(r, 2)})), NotLocallyFinite);
  }
}

TEST_SUITE("ext") {
  TEST_CASE("Z/p is concentrated at (n+1, D)") {
    for (const GradedRing& r : {bp_ring(2, 1), bp_ring(2, 2), bp_ring(3, 1), bp_ring(3, 0)}) {
      const auto m = cyclic_p_group(r, 1);
      const ExtWindow w{r.num_vars() + 2, -r.max_var_degree(), r.top_degree() + 2 * std::max(1, r.max_var_degree())};
      const auto t = nonzero(ext_table(m, w));
      CHECK(t == std::map<std::pair<std::size_t, int>, std::vector<int>>{{{r.num_vars() + 1, r.top_degree()}, {1}}});
    }
  }

  TEST_CASE("suspension shifts the internal degree") {
    const GradedRing r = bp_ring(2, 1);
    const auto m = suspend(cyclic_p_group(r, 1), 5);
    const auto t = nonzero(ext_table(m, default_window(r, require_finite(m))));
    CHECK(t == std::map<std::pair<std::size_t, int>, std::vector<int>>{{{2, 7}, {1}}});
  }

  TEST_CASE("Z/4 + Σ^2 Z/2 over bp(2,1)") {
    const GradedRing r = bp_ring(2, 1);
    const auto m = direct_sum(cyclic_p_group(r, 2), suspend(cyclic_p_group(r, 1), 2));
    const auto t = nonzero(ext_table(m, default_window(r, require_finite(m))));
    CHECK(t == std::map<std::pair<std::size_t, int>, std::vector<int>>{{{2, 2}, {2}}, {{2, 4}, {1}}});
  }

  TEST_CASE("cyclic quotients match the monomial-count oracle") {
    for (const GradedRing& r : {bp_ring(2, 1), bp_ring(3, 1), bp_ring(2, 2)}) {
      for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 3; ++b) {
          std::vector<PolyElement> seq{p_power(r, a)};
          std::vector<int> bounds;
          for (std::size_t i = 0; i < r.num_vars(); ++i) {
            const int bi = b + static_cast<int>(i);
            seq.push_back(x(r, i, bi));
            bounds.push_back(bi);
          }
          const auto m = cyclic_module(r, seq);
          const ExtTable t = ext_table(m, default_window(r, require_finite(m)));
          for (int tt = t.window.t_lo; tt <= t.window.t_hi; ++tt) {
            CAPTURE(tt);
            // Ext^{n+1,t} = Hom(M_{t-D}, Q/Z)
            CHECK(t.at(r.num_vars() + 1, tt).exponents ==
                  oracle::quotient_slice(r.degrees, a, bounds, tt - r.top_degree()));
          }
        }
    }
  }

  TEST_CASE("x acts on Ext of R/(p, x^3)") {
    const GradedRing r = bp_ring(2, 1);
    const auto m = cyclic_module(r, {constant(r, 2), x(r, 0, 3)});
    const ExtTable t = ext_table(m, default_window(r, require_finite(m)));
    // Ext^{2,t} = Z/2 at t = 2, 4, 6; x lowers t by 2 and is nonzero between them
    for (int tt : {4, 6}) {
      REQUIRE(t.actions.count({0, 2, tt}));
      CHECK(t.actions.at({0, 2, tt})(0, 0) == 1);
    }
    CHECK_FALSE(t.actions.count({0, 2, 2}));
  }

  TEST_CASE("n = 0 reduces to the universal coefficient theorem") {
    const GradedRing r = bp_ring(3, 0);
    const auto m = direct_sum(cyclic_p_group(r, 2), suspend(cyclic_p_group(r, 1), 3));
    const auto t = nonzero(ext_table(m, default_window(r, require_finite(m))));
    CHECK(t == std::map<std::pair<std::size_t, int>, std::vector<int>>{{{1, 0}, {2}}, {{1, 3}, {1}}});
  }

  TEST_CASE("property: additivity") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 15; ++trial) {
      const GradedRing r = trial % 2 ? bp_ring(2, 1) : bp_ring(3, 1);
      const auto a = random_finite_module(r, rng, {2, 8, 2, 2});
      const auto b = random_finite_module(r, rng, {2, 8, 2, 2});
      const auto s = direct_sum(a, b);
      const ExtWindow w = default_window(r, require_finite(s));
      const ExtTable ta = ext_table(a, w, false), tb = ext_table(b, w, false), ts = ext_table(s, w, false);
      for (std::size_t ss = 0; ss <= w.s_max; ++ss)
        for (int t = w.t_lo; t <= w.t_hi; ++t) {
          std::vector<int> both = ta.at(ss, t).exponents;
          const auto& e = tb.at(ss, t).exponents;
          both.insert(both.end(), e.begin(), e.end());
          CHECK(sorted(both) == sorted(ts.at(ss, t).exponents));
        }
    }
  }
}

TEST_SUITE("duality") {
  TEST_CASE("Yoneda sends the canonical generator of (Z/p)^∨ to a generator") {
    for (const GradedRing& r : {bp_ring(2, 1), bp_ring(2, 2), bp_ring(3, 1)}) {
      const auto m = cyclic_p_group(r, 1);
      const auto support = require_finite(m);
      const ExtWindow w = default_window(r, support);
      const ExtComputation e = ext_computation(m, w, support);
      const YonedaMap y = yoneda_duality_map(e, degreewise_module(e.resolution().module, 0, 0));
      REQUIRE(y.components.count(0));
      const ResidueMatrix& c = y.components.at(0);
      REQUIRE(c.rows == 1);
      CHECK(c(0, 0) % r.p != 0);
    }
  }

  TEST_CASE("Yoneda on Z/p^2 sends an order-p functional to the order-p subgroup") {
    const GradedRing r = bp_ring(2, 1);
    const auto m = cyclic_p_group(r, 2);
    const auto support = require_finite(m);
    const ExtComputation e = ext_computation(m, default_window(r, support), support);
    const YonedaMap y = yoneda_duality_map(e, degreewise_module(e.resolution().module, 0, 0));
    const mpz_class image = y.components.at(0)(0, 0);
    // Ext^{2,2}(Z/4) = Z/4; the generator maps to a unit, so p times it has order p
    CHECK(e.group(2, 2).exponents() == std::vector<int>{2});
    CHECK(image % 2 != 0);
    CHECK((2 * image) % 4 != 0);
    CHECK((4 * image) % 4 == 0);
  }

  TEST_CASE("an exponent below the module exponent is rejected") {
    const GradedRing r = bp_ring(2, 1);
    const auto m = cyclic_p_group(r, 2);
    const auto support = require_finite(m);
    const ExtComputation e = ext_computation(m, default_window(r, support), support);
    CHECK_THROWS_AS(yoneda_duality_map(e, degreewise_module(e.resolution().module, 0, 0), 1), std::invalid_argument);
  }

  TEST_CASE("property: independence of the exponent") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 15; ++trial) {
      const GradedRing r = trial % 2 ? bp_ring(2, 1) : bp_ring(3, 1);
      const auto m = random_finite_module(r, rng, {3, 10, 2, 2});
      const auto support = require_finite(m);
      const ExtComputation e = ext_computation(m, default_window(r, support), support);
      const DegreewiseModule d = degreewise_module(e.resolution().module, *support.bottom, *support.top);
      const YonedaMap y0 = yoneda_duality_map(e, d);
      const YonedaMap y1 = yoneda_duality_map(e, d, y0.exponent + 1);
      CHECK(y0.components == y1.components);
    }
  }

  TEST_CASE("property: Yoneda is natural for quotient maps") {
    std::mt19937_64 rng(43);
    int checked = 0;
    for (int trial = 0; trial < 25; ++trial) {
      const GradedRing r = trial % 2 ? bp_ring(2, 1) : bp_ring(3, 1);
      const auto m = random_untwisted(r, rng);
      std::vector<std::vector<PolyElement>> extra;
      for (std::size_t j = 0; j < m.generators.rank(); ++j) {
        std::vector<PolyElement> c(m.generators.rank());
        c[j] = rng() % 2 ? constant(r, r.p) : x(r, 0);
        extra.push_back(c);
      }
      const auto q = with_relations(m, extra);
      const std::size_t n = r.num_vars();
      const int D = r.top_degree();

      const auto sm = require_finite(m), sq = require_finite(q);
      const ExtWindow w = default_window(r, sm);
      const ExtComputation em = ext_computation(m, w, sm), eq = ext_computation(q, w, sm);
      REQUIRE(em.resolution().module.generators == m.generators);
      REQUIRE(eq.resolution().module.generators == q.generators);

      GradedMap base(em.resolution().complex.modules[0], eq.resolution().complex.modules[0], 0);
      for (std::size_t j = 0; j < m.generators.rank(); ++j) base.at(j, j) = constant(r, 1);
      const ChainMap phi = lift_chain_map(em.resolution().complex, eq.resolution().complex, base, n + 1, r);

      const DegreewiseModule dm = degreewise_module(m, *sm.bottom, *sm.top);
      const DegreewiseModule dq = degreewise_module(q, *sm.bottom, *sm.top);
      const YonedaMap ym = yoneda_duality_map(em, dm);
      const YonedaMap yq = yoneda_duality_map(eq, dq, ym.exponent);
      for (const auto& [u, yqu] : yq.components) {
        const auto& target = em.group(n + 1, u + D).exponents();
        const ResidueMatrix pb = pullback(phi, eq, em, n + 1, u + D);
        const ResidueMatrix lhs = compose(pb, yqu, target, r.p);
        const ResidueMatrix rhs = compose(ym.components.at(u), dual_of_quotient(m, q, u, r.p), target, r.p);
        CAPTURE(u);
        CHECK(lhs == rhs);
        ++checked;
      }
    }
    CHECK(checked > 10);
  }

  TEST_CASE("property: random finite modules satisfy all three clauses") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 30; ++trial) {
      const GradedRing r = trial % 3 == 0 ? bp_ring(2, 2) : (trial % 3 == 1 ? bp_ring(2, 1) : bp_ring(3, 1));
      const auto m = random_finite_module(r, rng);
      const DualityReport rep = verify_duality(m);
      CHECK(rep.vanishing.passed);
      CHECK(rep.orders.passed);
      CHECK(rep.yoneda.passed);
    }
  }

  TEST_CASE("an order mismatch names the offending degree") {
    const GradedRing r = bp_ring(2, 1);
    const auto zp = cyclic_p_group(r, 1);
    const DualityReport good = verify_duality(zp);
    CHECK(good.passed());
    const DualityReport rep = verify_duality(zp, ExtWindow{1, 0, 4});
    // s_max = 1 leaves out s = n + 1, so the order clause sees zero
    CHECK_FALSE(rep.orders.passed);
    REQUIRE_FALSE(rep.orders.failures.empty());
    CHECK(rep.orders.failures.front().find("(s,t)=(2,2)") != std::string::npos);
  }
}

TEST_SUITE("truncation") {
  LocallyFiniteFamily sigma4j(int count) {
    LocallyFiniteFamily f;
    f.ring = bp_ring(2, 1);
    for (int j = 0; j < count; ++j) f.summands.push_back({cyclic_p_group(f.ring, 1), 4 * j});
    return f;
  }

  TEST_CASE("truncations at 8 and 12 agree up to 8") {
    const auto f = sigma4j(21);
    const ExtTable a = ext_via_truncation(f, 8, 3), b = ext_via_truncation(f, 12, 3);
    for (std::size_t s = 0; s <= 3; ++s)
      for (int t = -2; t <= 8; ++t) {
        CHECK(a.is_valid(t));
        CHECK(a.at(s, t) == b.at(s, t));
      }
    for (int t : {2, 6, 10}) CHECK(b.at(2, t).exponents == std::vector<int>{1});
    CHECK(b.is_valid(10));
    CHECK_FALSE(a.is_valid(10));
  }

  TEST_CASE("content above k gives a zero table") {
    LocallyFiniteFamily f;
    f.ring = bp_ring(2, 1);
    for (int j = 0; j < 5; ++j) f.summands.push_back({cyclic_p_group(f.ring, 2), 20 + 2 * j});
    const ExtTable t = ext_via_truncation(f, 10, 3);
    for (const auto& [k, e] : t.entries) CHECK_FALSE(t.is_valid(k.second));
  }

  TEST_CASE("truncation kills everything above k") {
    const auto f = sigma4j(6);
    const auto q = truncate_family(f, 9);
    for (int t = 0; t <= 30; ++t)
      CHECK(module_slice(q, t).group.exponents() == (t <= 9 && t % 4 == 0 ? std::vector<int>{1} : std::vector<int>{}));
  }
}
