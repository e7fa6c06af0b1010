#include "abconvex/fitzpatrick.hpp"

#include <algorithm>
#include <limits>

#include <json.hpp>

#include "abconvex/monotonicity.hpp"
#include "abconvex/transform.hpp"

namespace abconvex {

namespace {

// Lifted cyclic sums are twice the base sums, so lifted checks use 2 eps.
constexpr double kLiftScale = 2.0;

Coupling build_lifted(const Coupling& c) {
  const std::size_t nx = c.domain().size(), ny = c.codomain().size();
  const std::size_t side = nx * ny;
  if (side > kMaxLiftedSide) {
    throw InputError("lifted_size_exceeded", "|X| * |Y| = " + std::to_string(side) + " exceeds the lifted limit of " +
                                                 std::to_string(kMaxLiftedSide));
  }
  std::vector<double> values(side * side);
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y)
      for (std::size_t t = 0; t < ny; ++t)
        for (std::size_t s = 0; s < nx; ++s) values[(x * ny + y) * side + t * nx + s] = c(x, t) + c(s, y);
  return Coupling(product_ground_set(c.domain(), c.codomain()), product_ground_set(c.codomain(), c.domain()),
                  std::move(values));
}

}  // namespace

GroundSet product_ground_set(const GroundSet& a, const GroundSet& b) {
  std::vector<std::string> labels;
  labels.reserve(a.size() * b.size());
  for (const auto& la : a.labels())
    for (const auto& lb : b.labels()) labels.push_back(nlohmann::json::array({la, lb}).dump());
  return GroundSet(std::move(labels));
}

ProductCoupling::ProductCoupling(Coupling base) : base_(std::move(base)), lifted_(build_lifted(base_)) {}

ExtFunction ProductCoupling::pull_back_swap(const ExtFunction& g) const {
  require_same_index(g.index(), lifted_.codomain(), "function on Y x X");
  const std::size_t nx = base_.domain().size(), ny = base_.codomain().size();
  std::vector<ExtReal> out(nx * ny);
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y) out[pair_index(x, y)] = g[reversed_index(y, x)];
  return ExtFunction(lifted_.domain(), std::move(out));
}

MultiMapping delta_mapping(const MultiMapping& t, const ProductCoupling& pc) {
  require_same_index(t.source(), pc.base().domain(), "mapping source vs coupling domain");
  require_same_index(t.target(), pc.base().codomain(), "mapping target vs coupling codomain");
  std::vector<GraphPair> graph;
  graph.reserve(t.size());
  for (const GraphPair& p : t.graph()) {
    graph.push_back({pc.pair_index(p.source, p.target), pc.reversed_index(p.target, p.source)});
  }
  return MultiMapping(pc.lifted().domain(), pc.lifted().codomain(), std::move(graph));
}

ExtFunction lifted_anchor(const MultiMapping& t, const ProductCoupling& pc) {
  std::vector<ExtReal> values(pc.lifted().domain().size(), ExtReal::plus_infinity());
  for (const GraphPair& p : t.graph()) values[pc.pair_index(p.source, p.target)] = pc.base()(p.source, p.target);
  return ExtFunction(pc.lifted().domain(), std::move(values));
}

ExtFunction fitzpatrick(const MultiMapping& t, const Coupling& c) {
  require_proper(t, "fitzpatrick");
  require_same_index(t.source(), c.domain(), "mapping source vs coupling domain");
  require_same_index(t.target(), c.codomain(), "mapping target vs coupling codomain");
  const std::size_t nx = c.domain().size(), ny = c.codomain().size();
  std::vector<double> out(nx * ny, -std::numeric_limits<double>::infinity());
  for (const GraphPair& st : t.graph()) {
    const double cst = c(st.source, st.target);
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t y = 0; y < ny; ++y) {
        out[x * ny + y] = std::max(out[x * ny + y], c(x, st.target) + c(st.source, y) - cst);
      }
  }
  return ExtFunction(product_ground_set(c.domain(), c.codomain()), out);
}

ExtFunction fitzpatrick_via_conjugate(const MultiMapping& t, const ProductCoupling& pc) {
  require_proper(t, "fitzpatrick_via_conjugate");
  return pc.pull_back_swap(c_transform(lifted_anchor(t, pc), pc.lifted()));
}

bool fitzpatrick_family_member(const ExtFunction& h, const MultiMapping& t, const Coupling& c, double eps) {
  require_proper(h, "fitzpatrick_family_member");
  const ProductCoupling pc(c);
  require_same_index(h.index(), pc.lifted().domain(), "candidate vs X x Y");
  for (std::size_t x = 0; x < c.domain().size(); ++x)
    for (std::size_t y = 0; y < c.codomain().size(); ++y) {
      if (h[pc.pair_index(x, y)] < ExtReal(c(x, y) - eps)) return false;
    }
  for (const GraphPair& p : t.graph()) {
    if (!approx_equal(h[pc.pair_index(p.source, p.target)], ExtReal(c(p.source, p.target)), eps)) return false;
  }
  return is_c_convex(h, pc.lifted(), eps);
}

Theorem6AReport verify_theorem6A(const MultiMapping& t, const Coupling& c, double eps) {
  require_proper(t, "verify_theorem6A");
  const ProductCoupling pc(c);
  const Coupling& big = pc.lifted();
  const double lifted_eps = kLiftScale * eps;

  auto delta_monotone = [&](const MultiMapping& m) { return is_n_monotone(delta_mapping(m, pc), big, 2, lifted_eps).holds; };
  auto delta_cyclic = [&](const MultiMapping& m) {
    return is_cyclically_monotone(delta_mapping(m, pc), big, lifted_eps).holds;
  };
  auto antiderivative = [&](const MultiMapping& m) {
    return is_antiderivative(lifted_anchor(m, pc), delta_mapping(m, pc), big, eps);
  };

  Theorem6AReport r;
  const MonotonicityVerdict base = is_n_monotone(t, c, 2, eps);
  r.t_monotone = base.holds;
  if (base.violation) {
    const auto& pairs = base.violation->pairs;
    r.witness = std::make_pair(pairs[0], pairs[1]);
    r.witness_value = kLiftScale * base.violation->cyclic_sum;
  }
  r.delta_monotone = delta_monotone(t);
  r.delta_cyclically_monotone = delta_cyclic(t);
  r.lifted_antiderivative = antiderivative(t);

  const std::vector<GraphPair> candidates = all_pairs(c.domain(), c.codomain());
  auto maximal_under = [&](bool holds, auto&& property) {
    if (!holds) return false;
    return check_maximality(t, candidates, property).maximal;
  };
  const MaximalityVerdict tm = check_maximality(
      t, candidates, [&](const MultiMapping& m) { return is_n_monotone(m, c, 2, eps).holds; });
  r.t_maximal = r.t_monotone && tm.maximal;
  if (r.t_monotone && !tm.maximal) r.extension = tm.extension;
  r.delta_maximal_monotone = maximal_under(r.delta_monotone, delta_monotone);
  r.delta_maximal_cyclic = maximal_under(r.delta_cyclically_monotone, delta_cyclic);
  r.maximal_antiderivative_set = maximal_under(r.lifted_antiderivative, antiderivative);
  return r;
}

Theorem6BReport verify_theorem6B(const MultiMapping& t, const Coupling& c, std::uint64_t seed, std::size_t samples,
                                 double eps) {
  require_proper(t, "verify_theorem6B");
  if (!is_n_monotone(t, c, 2, eps).holds) throw DomainError("not_monotone", "T is not c-monotone");
  const ProductCoupling pc(c);
  const MultiMapping delta = delta_mapping(t, pc);
  const ConstraintProblem problem(pc.lifted(), delta, lifted_anchor(t, pc),
                                  IndexSubset(pc.lifted().domain(), delta.domain()), eps);

  Theorem6BReport r;
  r.alpha_gap = max_abs_difference(alpha(problem), fitzpatrick(t, c));
  r.alpha_equals_fitzpatrick = r.alpha_gap <= eps;
  r.t_maximal = is_maximal_n_monotone(t, c, 2, eps).maximal;
  if (r.t_maximal) {
    for (std::size_t k = 0; k < samples; ++k) {
      const ExtFunction h = sample_member(problem, seed + k);
      ++r.members_sampled;
      if (fitzpatrick_family_member(h, t, c, eps)) ++r.members_in_family;
    }
    r.inclusion_falsified = r.members_in_family < r.members_sampled;
  }
  return r;
}

InequalityChainReport verify_inequality_chain(const MultiMapping& t, const MetricInstance& metric,
                                              const std::optional<ExtFunction>& potential, std::uint64_t seed,
                                              std::size_t samples, double eps) {
  const Coupling c = as_coupling(metric);
  require_proper(t, "verify_inequality_chain");
  InequalityChainReport r;
  if (!is_n_monotone(t, c, 2, eps).holds) {
    throw DomainError("hypothesis_unverifiable", "T is not -d-monotone");
  }
  if (potential && potential->is_proper() && is_c_convex(*potential, c, eps) &&
      c_subdifferential(*potential, c, eps).mapping == t) {
    r.hypothesis = "subdifferential";
  } else if (is_maximal_n_monotone(t, c, 2, eps).maximal) {
    r.hypothesis = "maximal";
  } else {
    throw DomainError("hypothesis_unverifiable",
                      "T is neither finitely maximal -d-monotone nor the -d-subdifferential of the potential");
  }

  const ProductCoupling pc(c);
  const std::size_t n = metric.size();
  const ExtFunction f = fitzpatrick(t, c);
  const ExtFunction fc_swapped = pc.pull_back_swap(c_transform(f, pc.lifted()));

  r.chain_holds = true;
  r.transform_is_neg_swap = true;
  for (std::size_t x = 0; x < n && r.chain_holds; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const double fxy = f[pc.pair_index(x, y)].value();
      const double fyx = f[pc.pair_index(y, x)].value();
      const ExtReal conj = fc_swapped[pc.pair_index(x, y)];
      const bool neg = approx_equal(conj, ExtReal(-fyx), eps);
      r.transform_is_neg_swap = r.transform_is_neg_swap && neg;
      const bool ok = -metric(x, y) <= fxy + eps && ExtReal(fxy) <= conj + ExtReal(eps) && neg &&
                      -fyx <= metric(y, x) + eps;
      if (!ok) {
        r.chain_holds = false;
        r.violation = GraphPair{x, y};
        break;
      }
    }

  const MultiMapping delta_t = delta_mapping(t, pc);
  const ConstraintProblem family_t(pc.lifted(), delta_t, lifted_anchor(t, pc),
                                   IndexSubset(pc.lifted().domain(), delta_t.domain()), eps);
  const MultiMapping id = MultiMapping::identity(metric.points());
  const MultiMapping delta_id = delta_mapping(id, pc);
  const ConstraintProblem family_id(pc.lifted(), delta_id, lifted_anchor(id, pc),
                                    IndexSubset(pc.lifted().domain(), delta_id.domain()), eps);

  r.inclusions_hold_on_samples = fitzpatrick_family_member(f, t, c, eps) && is_member(f, family_id, eps);
  for (std::size_t k = 0; k < samples; ++k) {
    const ExtFunction h = sample_member(family_t, seed + k);
    ++r.members_sampled;
    r.inclusions_hold_on_samples =
        r.inclusions_hold_on_samples && fitzpatrick_family_member(h, t, c, eps) && is_member(h, family_id, eps);
  }
  return r;
}

}  // namespace abconvex
