#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>

#include "abconvex/envelopes.hpp"
#include "abconvex/transform.hpp"
#include "example_line.hpp"
#include "generators.hpp"

using namespace abconvex;
using namespace abconvex::testing;

namespace {

const double inf = std::numeric_limits<double>::infinity();

ConstraintProblem line_problem() {
  const Coupling c = line_coupling();
  return ConstraintProblem(c, line_mapping(c), on_line(c, [](double x) { return x; }), line_sites(c));
}

template <typename F>
std::string code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "none";
}

}  // namespace

TEST_CASE("envelopes on the line") {
  const ConstraintProblem p = line_problem();
  CHECK(p.sites_cover_domain());
  CHECK(alpha(p).to_doubles() == std::vector<double>{-2, -1, 0, 1, 2});
  CHECK(gamma(p).to_doubles() == std::vector<double>{2, 1, 0, 1, 2});
  CHECK(alpha_full_domain(p).to_doubles() == std::vector<double>{-2, -1, 0, 1, 2});
  CHECK(gamma_full_domain(p).to_doubles() == std::vector<double>{2, 1, 0, 1, 2});
  REQUIRE(p.site_antiderivatives().size() == 3);
  CHECK(p.site_antiderivatives()[0].to_doubles() == std::vector<double>{-2, -1, 0, 1, 2});
}

TEST_CASE("the dual problem") {
  const ConstraintProblem q = line_problem().dual();
  CHECK(q.coupling().domain().labels() == std::vector<std::string>{"a", "b"});
  CHECK(q.mapping().graph() == std::vector<GraphPair>{{0, 2}, {0, 3}, {0, 4}});
  CHECK(q.anchor().to_doubles() == std::vector<double>{0, 4});
  CHECK(q.sites().members() == std::vector<std::size_t>{0});
  CHECK(alpha(q).to_doubles() == std::vector<double>{0, 0});
}

TEST_CASE("membership on the line") {
  const ConstraintProblem p = line_problem();
  const Coupling& c = p.coupling();
  const ExtFunction x = on_line(c, [](double v) { return v; });
  const ExtFunction abs = on_line(c, [](double v) { return std::abs(v); });
  CHECK(is_member(x, p));
  CHECK(is_member(abs, p));
  CHECK(sandwich_check(abs, p));
  CHECK_FALSE(is_member(x + 1.0, p));
  CHECK_FALSE(sandwich_check(x + 1.0, p));
  // 0.3 x + 0.7 |x| agrees with f on S but is not c-convex.
  const ExtFunction mix = convex_combination(x, abs, 0.3);
  CHECK_FALSE(is_member(mix, p));
  CHECK(code_of([&] { (void)sandwich_check(mix, p); }) == "not_c_convex");
  // |x - 1/2| - 1/2 leaves M's graph intact only where x >= 1/2.
  CHECK_FALSE(is_member(on_line(c, [](double v) { return std::abs(v - 0.5) - 0.5; }), p));
}

TEST_CASE("construction errors") {
  const Coupling c = line_coupling();
  const MultiMapping m = line_mapping(c);
  const ExtFunction f = on_line(c, [](double x) { return x; });
  CHECK(code_of([&] { ConstraintProblem(c, m, f, IndexSubset(c.domain(), {1})); }) == "site_outside_domain");
  CHECK(code_of([&] { ConstraintProblem(c, m, ExtFunction(c.domain(), {0, 0, inf, 1, 2}), line_sites(c)); }) ==
        "anchor_not_finite_on_sites");
  CHECK(code_of([&] { ConstraintProblem(c, m, on_line(c, [](double x) { return -x; }), line_sites(c)); }) ==
        "not_antiderivative");
  CHECK(code_of([&] { ConstraintProblem(c, MultiMapping(c.domain(), c.codomain(), {}), f, line_sites(c)); }) ==
        "improper_mapping");
  const MultiMapping bad(c.domain(), c.codomain(), {{1, 0}, {3, 1}});
  CHECK(code_of([&] {
          ConstraintProblem(c, bad, on_line(c, [](double x) { return std::abs(x); }), IndexSubset(c.domain(), {3}));
        }) != "none");

  const ConstraintProblem partial(c, m, f, IndexSubset(c.domain(), {2}));
  CHECK_FALSE(partial.sites_cover_domain());
  CHECK(code_of([&] { (void)alpha_full_domain(partial); }) == "sites_not_full_domain");
  CHECK(code_of([&] { (void)gamma_full_domain(partial); }) == "sites_not_full_domain");
  CHECK(code_of([&] { (void)sandwich_check(f, partial); }) == "sites_not_full_domain");
  CHECK(code_of([&] { (void)sample_member(partial, 1); }) == "sites_not_full_domain");
}

TEST_CASE("envelopes are members and bracket each other") {
  Rng rng(41);
  for (int k = 0; k < 80; ++k) {
    const ConstraintProblem p = random_problem(rng, k % 2 == 0);
    const ExtFunction lo = alpha(p), hi = gamma(p);
    CHECK(is_member(lo, p));
    CHECK(is_member(hi, p));
    CHECK(pointwise_le(lo, hi));
    CHECK(is_member(p.anchor(), p));
    CHECK(pointwise_le(lo, p.anchor()));
    CHECK(pointwise_le(p.anchor(), hi));
    if (p.sites_cover_domain()) {
      for (int j = 0; j < 5; ++j) {
        const ExtFunction h = sample_member(p, rng());
        CHECK(is_member(h, p));
        CHECK(sandwich_check(h, p));
      }
    }
  }
}

TEST_CASE("sampling is reproducible") {
  const ConstraintProblem p = line_problem();
  CHECK(sample_member(p, 7) == sample_member(p, 7));
}

TEST_CASE("more sites shrink the family") {
  Rng rng(42);
  for (int k = 0; k < 40; ++k) {
    const ConstraintProblem full = random_problem(rng, true);
    const std::vector<std::size_t> dom = full.mapping().domain();
    const ConstraintProblem fewer(full.coupling(), full.mapping(), full.anchor(),
                                  IndexSubset(full.coupling().domain(), random_subset(rng, dom, dom.size())));
    CHECK(pointwise_le(alpha(fewer), alpha(full)));
    CHECK(pointwise_le(gamma(full), gamma(fewer)));
  }
}
