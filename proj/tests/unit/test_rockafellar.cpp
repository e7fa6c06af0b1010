#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "abconvex/rockafellar.hpp"
#include "abconvex/transform.hpp"
#include "example_line.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace abconvex;
using namespace abconvex::testing;

TEST_CASE("R anchored at 0 on the line is x") {
  const Coupling c = line_coupling();
  const MultiMapping m = line_mapping(c);
  CHECK(rockafellar(m, c, 2).to_doubles() == std::vector<double>{-2, -1, 0, 1, 2});
  const std::size_t anchors[] = {2, 3, 4};
  const std::vector<ExtFunction> family = rockafellar_family(m, c, anchors);
  REQUIRE(family.size() == 3);
  CHECK(family[1].to_doubles() == std::vector<double>{-3, -2, -1, 0, 1});
  CHECK(family[2].to_doubles() == std::vector<double>{-4, -3, -2, -1, 0});
  CHECK(rockafellar_oracle(m, c, 3, 4).to_doubles() == family[1].to_doubles());
}

TEST_CASE("argument errors") {
  const Coupling c = line_coupling();
  const MultiMapping m = line_mapping(c);
  CHECK_THROWS_WITH_AS(rockafellar(m, c, 0), doctest::Contains("dom(M)"), InputError);
  CHECK_THROWS_AS(rockafellar_oracle(m, c, 0, 3), InputError);
  CHECK_THROWS_AS(rockafellar_oracle(m, c, 2, 0), InputError);
  try {
    (void)rockafellar_oracle(m, c, 2, 12, 1000);
    FAIL("budget not enforced");
  } catch (const DomainError& e) {
    CHECK(e.code() == "budget_exceeded");
  }
}

TEST_CASE("positive cycles are reported with a witness") {
  const Coupling c = line_coupling();
  const MultiMapping bad(c.domain(), c.codomain(), {{1, 0}, {3, 1}});
  try {
    (void)rockafellar(bad, c, 1);
    FAIL("expected NotCyclicallyMonotone");
  } catch (const NotCyclicallyMonotone& e) {
    CHECK(e.code() == "not_cyclically_monotone");
    CHECK(e.witness().cyclic_sum == -4);
    CHECK(cyclic_sum(e.witness().pairs, c) == -4);
  }
  // The cycle need not pass through the anchor.
  const MultiMapping joined = bad.with_pair({4, 0});
  CHECK_THROWS_AS(rockafellar(joined, c, 4), NotCyclicallyMonotone);
}

TEST_CASE("DP matches chain enumeration on random instances") {
  Rng rng(31);
  int compared = 0;
  while (compared < 80) {
    const MonotoneInstance inst = random_monotone_instance(rng, uniform_size(rng, 1, 5), uniform_size(rng, 1, 5), 4);
    if (inst.m.size() > 6) continue;
    const std::size_t len = inst.m.domain().size() + 1;
    for (std::size_t s : inst.m.domain()) {
      const ExtFunction r = rockafellar(inst.m, inst.c, s);
      CHECK(oracle::sup_distance(r.to_doubles(), oracle::chain_supremum(inst.m, inst.c, s, len)) <= 1e-9);
      CHECK(r[s] == ExtReal(0.0));
      CHECK(is_c_convex(r, inst.c));
      CHECK(is_antiderivative(r, inst.m, inst.c));
      // Concatenating chains: R_s(x) >= R_s(t) + R_t(x).
      for (std::size_t t : inst.m.domain()) {
        const ExtFunction rt = rockafellar(inst.m, inst.c, t);
        CHECK(pointwise_le(rt + r[t].value(), r));
      }
    }
    ++compared;
  }
}

TEST_CASE("real-valued couplings") {
  Rng rng(32);
  for (int k = 0; k < 40; ++k) {
    const MonotoneInstance inst =
        random_monotone_instance(rng, uniform_size(rng, 1, 5), uniform_size(rng, 1, 5), 4, false);
    if (inst.m.size() > 6) continue;
    const std::size_t s = inst.m.domain().front();
    const ExtFunction r = rockafellar(inst.m, inst.c, s);
    const ExtFunction o = rockafellar_oracle(inst.m, inst.c, s, inst.m.domain().size() + 2);
    CHECK(max_abs_difference(r, o) <= 1e-9);
  }
}
