#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>

#include "abconvex/transform.hpp"
#include "example_line.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace abconvex;
using namespace abconvex::testing;

namespace {

const double inf = std::numeric_limits<double>::infinity();

}  // namespace

TEST_CASE("transform of x restricted to the nonnegative points") {
  const Coupling c = line_coupling();
  const ExtFunction f(c.domain(), {inf, inf, 0, 1, 2});
  CHECK(c_transform(f, c).to_doubles() == std::vector<double>{0, 0});
}

TEST_CASE("infinite inputs") {
  const Coupling c = line_coupling();
  const ExtFunction top = ExtFunction::constant(c.domain(), ExtReal::plus_infinity());
  CHECK(c_transform(top, c).to_doubles() == std::vector<double>{-inf, -inf});
  ExtFunction bottom = ExtFunction::constant(c.domain(), 0.0);
  bottom[1] = ExtReal::minus_infinity();
  CHECK(c_transform(bottom, c).to_doubles() == std::vector<double>{inf, inf});
  CHECK_THROWS_AS(c_convexify(top, c), DomainError);
  CHECK_THROWS_AS(is_c_convex(bottom, c), DomainError);
}

TEST_CASE("transform back and index checks") {
  const Coupling c = line_coupling();
  const ExtFunction g(c.codomain(), {0, 0});
  CHECK(c_transform_back(g, c).to_doubles() == std::vector<double>{2, 1, 0, 1, 2});
  CHECK_THROWS_AS(c_transform(g, c), InputError);
}

TEST_CASE("convexification of the hinge") {
  const Coupling c = line_coupling();
  const ExtFunction half(c.domain(), {0, 0, 0, 1, 2});
  CHECK(c_convexify(half, c).to_doubles() == std::vector<double>{0, -1, 0, 1, 2});
  CHECK_FALSE(is_c_convex(half, c));
  CHECK(is_c_convex(on_line(c, [](double x) { return std::abs(x); }), c));
  CHECK(is_c_convex(on_line(c, [](double x) { return x + 1; }), c));
}

TEST_CASE("subdifferential of |x|") {
  const Coupling c = line_coupling();
  const MultiMapping d = c_subdifferential(on_line(c, [](double x) { return std::abs(x); }), c).mapping;
  const std::vector<GraphPair> expected = {{0, 1}, {1, 1}, {2, 0}, {2, 1}, {3, 0}, {4, 0}};
  CHECK(d.graph() == expected);
}

TEST_CASE("antiderivatives of M") {
  const Coupling c = line_coupling();
  const MultiMapping m = line_mapping(c);
  CHECK(is_antiderivative(on_line(c, [](double x) { return x; }), m, c));
  CHECK(is_antiderivative(on_line(c, [](double x) { return std::abs(x); }), m, c));
  CHECK_FALSE(is_antiderivative(on_line(c, [](double x) { return -x; }), m, c));
  CHECK_THROWS_AS(is_antiderivative(on_line(c, [](double x) { return x; }), MultiMapping(c.domain(), c.codomain(), {}), c),
                  DomainError);
}

TEST_CASE("random transforms match brute force") {
  Rng rng(11);
  for (int k = 0; k < 100; ++k) {
    const Coupling c = random_coupling(rng, uniform_size(rng, 1, 7), uniform_size(rng, 1, 7), false);
    const ExtFunction f = random_proper_function(rng, c.domain(), 0.3, false);
    const std::vector<double> fc = oracle::transform(f.to_doubles(), c);
    CHECK(oracle::sup_distance(c_transform(f, c).to_doubles(), fc) <= 1e-12);
    const std::vector<double> fcc = oracle::transform_back(fc, c);
    CHECK(oracle::sup_distance(c_convexify(f, c).to_doubles(), fcc) <= 1e-12);
    // f^{cc} <= f and f^{cc} is a fixed point.
    CHECK(pointwise_le(c_convexify(f, c), f));
    CHECK(is_c_convex(c_convexify(f, c), c));
  }
}

TEST_CASE("subdifferential pairs satisfy Fenchel-Young with equality") {
  Rng rng(12);
  for (int k = 0; k < 50; ++k) {
    const Coupling c = random_coupling(rng, uniform_size(rng, 1, 6), uniform_size(rng, 1, 6));
    const ExtFunction h = random_c_convex(rng, c);
    const std::vector<double> hv = h.to_doubles();
    const std::vector<double> hc = oracle::transform(hv, c);
    const MultiMapping d = c_subdifferential(h, c).mapping;
    for (std::size_t x = 0; x < c.domain().size(); ++x) {
      for (std::size_t y = 0; y < c.codomain().size(); ++y) {
        CHECK(d.contains(x, y) == (hv[x] + hc[y] == c(x, y)));
      }
    }
    // A c-convex function on a finite set with a finite coupling is finite
    // everywhere, so every point has a subgradient.
    CHECK(d.domain().size() == c.domain().size());
    CHECK(is_antiderivative(h, d, c));
  }
}
