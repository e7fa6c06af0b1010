#include "abconvex/transform.hpp"

#include <string>

namespace abconvex {

void require_proper(const ExtFunction& f, std::string_view what) {
  if (!f.is_proper()) throw DomainError("improper_function", std::string(what) + ": function is not proper");
}

void require_proper(const MultiMapping& m, std::string_view what) {
  if (!m.is_proper()) throw DomainError("improper_mapping", std::string(what) + ": mapping has an empty graph");
}

namespace {

// result(j) = max_i at(i, j) - f(i), with i ranging over f's index.
template <typename CouplingAt>
ExtFunction transform_kernel(const ExtFunction& f, const GroundSet& out_index, CouplingAt at) {
  const std::size_t n_in = f.size(), n_out = out_index.size();
  bool has_minus_inf = false;
  for (std::size_t i = 0; i < n_in; ++i) has_minus_inf = has_minus_inf || f[i].is_minus_infinity();
  if (has_minus_inf) return ExtFunction::constant(out_index, ExtReal::plus_infinity());

  std::vector<ExtReal> out(n_out, ExtReal::minus_infinity());
  for (std::size_t j = 0; j < n_out; ++j) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n_in; ++i) {
      if (!f[i].is_finite()) continue;
      const double v = at(i, j) - f[i].value();
      if (v > best) best = v;
    }
    out[j] = best;
  }
  return ExtFunction(out_index, std::move(out));
}

}  // namespace

ExtFunction c_transform(const ExtFunction& f, const Coupling& c) {
  require_same_index(f.index(), c.domain(), "c_transform expects a function on the coupling domain");
  return transform_kernel(f, c.codomain(), [&](std::size_t x, std::size_t y) { return c(x, y); });
}

ExtFunction c_transform_back(const ExtFunction& g, const Coupling& c) {
  require_same_index(g.index(), c.codomain(), "c_transform_back expects a function on the coupling codomain");
  return transform_kernel(g, c.domain(), [&](std::size_t y, std::size_t x) { return c(x, y); });
}

ExtFunction c_convexify(const ExtFunction& f, const Coupling& c) {
  require_proper(f, "c_convexify");
  return c_transform_back(c_transform(f, c), c);
}

bool is_c_convex(const ExtFunction& f, const Coupling& c, double eps) {
  require_proper(f, "is_c_convex");
  return approx_equal(f, c_convexify(f, c), eps);
}

SubdiffGraph c_subdifferential(const ExtFunction& f, const Coupling& c, double eps) {
  require_proper(f, "c_subdifferential");
  const ExtFunction fc = c_transform(f, c);
  std::vector<GraphPair> graph;
  for (std::size_t x = 0; x < f.size(); ++x) {
    if (!f[x].is_finite()) continue;
    for (std::size_t y = 0; y < fc.size(); ++y) {
      // fc(y) >= c(x, y) - f(x) is finite here.
      if (f[x].value() + fc[y].value() - c(x, y) <= eps) graph.push_back({x, y});
    }
  }
  return {MultiMapping(c.domain(), c.codomain(), std::move(graph))};
}

bool is_antiderivative(const ExtFunction& f, const MultiMapping& m, const Coupling& c, double eps) {
  require_proper(f, "is_antiderivative");
  require_proper(m, "is_antiderivative");
  require_same_index(m.source(), c.domain(), "mapping source vs coupling domain");
  require_same_index(m.target(), c.codomain(), "mapping target vs coupling codomain");
  const ExtFunction fc = c_transform(f, c);
  for (const GraphPair& p : m.graph()) {
    if (!f[p.source].is_finite()) return false;
    if (f[p.source].value() + fc[p.target].value() - c(p.source, p.target) > eps) return false;
  }
  return true;
}

}  // namespace abconvex
