#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "abconvex/fitzpatrick.hpp"
#include "abconvex/monotonicity.hpp"
#include "abconvex/transform.hpp"
#include "example_line.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace abconvex;
using namespace abconvex::testing;

namespace {

template <typename F>
std::string code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "none";
}

MultiMapping abs_subdifferential(const Coupling& c) {
  return c_subdifferential(on_line(c, [](double x) { return std::abs(x); }), c).mapping;
}

}  // namespace

TEST_CASE("product coupling layout") {
  const Coupling c(GroundSet({"p", "q"}), GroundSet({"a", "b", "c"}), {1, 2, 3, 4, 5, 6});
  const ProductCoupling pc(c);
  const Coupling& big = pc.lifted();
  CHECK(big.domain().size() == 6);
  CHECK(big.domain().label(pc.pair_index(1, 2)) == R"(["q","c"])");
  CHECK(big.codomain().label(pc.reversed_index(2, 1)) == R"(["c","q"])");
  CHECK(pc.unpair(pc.pair_index(1, 2)) == GraphPair{1, 2});
  // C((x, y), (t, s)) = c(x, t) + c(s, y).
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 3; ++y)
      for (std::size_t t = 0; t < 3; ++t)
        for (std::size_t s = 0; s < 2; ++s) CHECK(big(pc.pair_index(x, y), pc.reversed_index(t, s)) == c(x, t) + c(s, y));

  std::vector<double> g(6);
  for (std::size_t i = 0; i < 6; ++i) g[i] = static_cast<double>(i);
  const ExtFunction pulled = pc.pull_back_swap(ExtFunction(big.codomain(), g));
  CHECK(pulled[pc.pair_index(1, 2)] == ExtReal(static_cast<double>(pc.reversed_index(2, 1))));
}

TEST_CASE("lifted mapping and anchor") {
  const Coupling c = line_coupling();
  const ProductCoupling pc(c);
  const MultiMapping m = line_mapping(c);
  const MultiMapping delta = delta_mapping(m, pc);
  CHECK(delta.size() == 3);
  CHECK(delta.contains(pc.pair_index(3, 0), pc.reversed_index(0, 3)));
  const ExtFunction anchor = lifted_anchor(m, pc);
  CHECK(anchor[pc.pair_index(4, 0)] == ExtReal(2.0));
  CHECK(anchor[pc.pair_index(4, 1)].is_plus_infinity());
  CHECK(anchor.domain().size() == 3);
}

TEST_CASE("Fitzpatrick function of M on the line") {
  const Coupling c = line_coupling();
  const ProductCoupling pc(c);
  const MultiMapping m = line_mapping(c);
  const ExtFunction f = fitzpatrick(m, c);
  for (int x = 0; x < 5; ++x) {
    CHECK(f[pc.pair_index(x, 0)] == ExtReal(x - 2.0));
    CHECK(f[pc.pair_index(x, 1)] == ExtReal(x - 2.0));
  }
  CHECK(fitzpatrick_via_conjugate(m, pc) == f);
  CHECK_FALSE(fitzpatrick_family_member(f, m, c));
}

TEST_CASE("random Fitzpatrick functions against brute force and the conjugate route") {
  Rng rng(61);
  for (int k = 0; k < 60; ++k) {
    const Coupling c = random_coupling(rng, uniform_size(rng, 1, 5), uniform_size(rng, 1, 5), k % 2 == 0);
    const MultiMapping t = random_submapping(rng, MultiMapping(c.domain(), c.codomain(), all_pairs(c.domain(), c.codomain())), 5);
    const ExtFunction f = fitzpatrick(t, c);
    CHECK(oracle::sup_distance(f.to_doubles(), oracle::fitzpatrick(t, c)) <= 1e-12);
    CHECK(max_abs_difference(fitzpatrick_via_conjugate(t, ProductCoupling(c)), f) <= 1e-9);
  }
}

TEST_CASE("equivalence reports on fixture mappings") {
  const Coupling c = line_coupling();
  const Theorem6AReport bad = verify_theorem6A(MultiMapping(c.domain(), c.codomain(), {{1, 0}, {3, 1}}), c);
  CHECK_FALSE(bad.t_monotone);
  CHECK(bad.agree());
  CHECK(bad.maximal_agree());
  REQUIRE(bad.witness.has_value());
  CHECK(bad.witness_value == -8);

  const Theorem6AReport good = verify_theorem6A(line_mapping(c), c);
  CHECK(good.t_monotone);
  CHECK(good.lifted_antiderivative);
  CHECK(good.agree());
  CHECK_FALSE(good.t_maximal);
  CHECK(good.extension.has_value());
  CHECK(good.maximal_agree());

  const Theorem6AReport full = verify_theorem6A(abs_subdifferential(c), c);
  CHECK(full.t_maximal);
  CHECK(full.delta_maximal_monotone);
  CHECK(full.delta_maximal_cyclic);
  CHECK(full.maximal_antiderivative_set);
}

TEST_CASE("equivalence reports agree on random mappings") {
  Rng rng(62);
  for (int k = 0; k < 60; ++k) {
    const Coupling c = random_coupling(rng, uniform_size(rng, 1, 3), uniform_size(rng, 1, 3));
    std::vector<GraphPair> graph;
    for (const GraphPair& p : all_pairs(c.domain(), c.codomain()))
      if (coin(rng, 0.4)) graph.push_back(p);
    if (graph.empty()) graph.push_back({0, 0});
    const MultiMapping t(c.domain(), c.codomain(), graph);
    const Theorem6AReport r = verify_theorem6A(t, c);
    CHECK(r.agree());
    CHECK(r.maximal_agree());
    CHECK(r.t_monotone == !oracle::has_negative_two_cycle(t, c, 1e-9));
    if (r.t_maximal) CHECK(fitzpatrick_family_member(fitzpatrick(t, c), t, c));
  }
}

TEST_CASE("the lifted lower envelope is F") {
  const Coupling c = line_coupling();
  const Theorem6BReport r = verify_theorem6B(line_mapping(c), c);
  CHECK(r.alpha_gap == 0.0);
  CHECK(r.alpha_equals_fitzpatrick);
  CHECK_FALSE(r.t_maximal);
  CHECK(r.members_sampled == 0);

  const Theorem6BReport full = verify_theorem6B(abs_subdifferential(c), c, 3, 6);
  CHECK(full.alpha_equals_fitzpatrick);
  CHECK(full.t_maximal);
  CHECK(full.members_sampled == 6);
  CHECK_FALSE(full.inclusion_falsified);

  CHECK(code_of([&] { (void)verify_theorem6B(MultiMapping(c.domain(), c.codomain(), {{1, 0}, {3, 1}}), c); }) ==
        "not_monotone");
}

TEST_CASE("lifted size guard") {
  const Coupling c(GroundSet::range(101), GroundSet::range(100), std::vector<double>(10100, 0.0));
  CHECK(code_of([&] { ProductCoupling pc(c); }) == "lifted_size_exceeded");
}

TEST_CASE("metric identity and inequality chain") {
  const MetricInstance d(GroundSet({"0", "1", "3"}), {0, 1, 3, 1, 0, 2, 3, 2, 0});
  const Coupling c = as_coupling(d);
  const MultiMapping id = MultiMapping::identity(d.points());
  const ExtFunction f = fitzpatrick(id, c);
  for (std::size_t x = 0; x < 3; ++x)
    for (std::size_t y = 0; y < 3; ++y) CHECK(f[x * 3 + y] == ExtReal(-d(x, y)));

  const ExtFunction h(d.points(), {0, 1, 3});
  const MultiMapping t = c_subdifferential(h, c).mapping;
  const InequalityChainReport r = verify_inequality_chain(t, d, h, 5, 4);
  CHECK(r.hypothesis == "subdifferential");
  CHECK(r.chain_holds);
  CHECK(r.transform_is_neg_swap);
  CHECK(r.members_sampled == 4);
  CHECK(r.inclusions_hold_on_samples);

  const MultiMapping bad(d.points(), d.points(), {{0, 2}, {2, 0}});
  CHECK(code_of([&] { (void)verify_inequality_chain(bad, d); }) == "hypothesis_unverifiable");
}

TEST_CASE("inequality chain on random subdifferentials") {
  Rng rng(63);
  for (int k = 0; k < 20; ++k) {
    const MetricInstance d = random_graph_metric(rng, uniform_size(rng, 1, 5));
    const ExtFunction h = random_lipschitz(rng, d);
    const MultiMapping t = c_subdifferential(h, as_coupling(d)).mapping;
    const InequalityChainReport r = verify_inequality_chain(t, d, h, rng(), 3);
    CHECK(r.hypothesis == "subdifferential");
    CHECK(r.chain_holds);
    CHECK(r.inclusions_hold_on_samples);
  }
}
