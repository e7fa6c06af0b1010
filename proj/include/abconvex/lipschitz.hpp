#pragma once

#include <optional>
#include <vector>

#include "abconvex/envelopes.hpp"
#include "abconvex/instance.hpp"

namespace abconvex {

/// A finite (pseudo)metric space, validated on construction: zero diagonal,
/// symmetry and the triangle inequality within eps, nonnegative entries, and
/// d(x, y) > 0 for x != y unless the pseudometric flag is set.
class MetricInstance {
 public:
  MetricInstance(GroundSet points, std::vector<double> row_major, bool pseudometric = false,
                 double eps = kDefaultEpsilon);

  const GroundSet& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  double operator()(std::size_t x, std::size_t y) const { return dist_[x * points_.size() + y]; }
  const std::vector<double>& distances() const { return dist_; }
  bool is_pseudometric() const { return pseudometric_; }

  /// K * d^a for K > 0 and 0 < a <= 1.
  MetricInstance rescaled(double k, double a) const;

 private:
  GroundSet points_;
  std::vector<double> dist_;
  bool pseudometric_;
};

struct WeightedEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  double weight = 0.0;
};

/// Shortest-path metric of a connected undirected graph with nonnegative
/// weights. Zero-weight edges between distinct points give a pseudometric.
MetricInstance shortest_path_metric(GroundSet points, const std::vector<WeightedEdge>& edges);

/// c = -d on points x points.
Coupling as_coupling(const MetricInstance& metric);

/// The four equivalent descriptions of 1-Lipschitz functions, each computed
/// on its own.
struct LipschitzReport {
  bool is_lipschitz_1 = false;
  bool is_md_convex = false;
  bool transform_is_neg = false;
  bool is_identity_antiderivative = false;
  /// A pair with |f(x) - f(y)| > d(x, y) + eps, when one exists.
  std::optional<GraphPair> violation;

  bool unanimous() const {
    return is_lipschitz_1 == is_md_convex && is_md_convex == transform_is_neg &&
           transform_is_neg == is_identity_antiderivative;
  }
};

/// Requires f finite everywhere.
LipschitzReport lipschitz_characterize(const ExtFunction& f, const MetricInstance& metric,
                                       double eps = kDefaultEpsilon);

/// Constrained 1-Lipschitz extension data. Values matter only on dom(M);
/// they must be finite there and satisfy
///   f(x) - f(x') <= d(x', y) - d(x, y)  for (x, y) in G(M), x' in dom(M).
class ExtensionProblem {
 public:
  ExtensionProblem(MetricInstance metric, MultiMapping mapping, const ExtFunction& values, IndexSubset sites,
                   double eps = kDefaultEpsilon);

  const MetricInstance& metric() const { return metric_; }
  const MultiMapping& mapping() const { return problem_.mapping(); }
  const IndexSubset& sites() const { return problem_.sites(); }
  /// f on dom(M), +inf elsewhere.
  const ExtFunction& values() const { return problem_.anchor(); }
  /// The same data as a general problem under c = -d.
  const ConstraintProblem& constraint_problem() const { return problem_; }

 private:
  MetricInstance metric_;
  ConstraintProblem problem_;
};

/// Minimal and maximal constrained extensions, through the general envelopes.
ExtFunction extend_min(const ExtensionProblem& p);
ExtFunction extend_max(const ExtensionProblem& p);

/// The same extensions evaluated from their distance chain formulas with the
/// longest-walk DP.
ExtFunction extend_min_chain(const ExtensionProblem& p);
ExtFunction extend_max_chain(const ExtensionProblem& p);

/// Closed forms for S = dom(M):
///   max over (s, t) in G(M) of f(s) + d(s, t) - d(x, t), and
///   min over s in dom(M) of f(s) + d(x, s).
ExtFunction extend_min_full_domain(const ExtensionProblem& p);
ExtFunction extend_max_full_domain(const ExtensionProblem& p);

/// McShane and Whitney: max_s f(s) - d(x, s) and min_s f(s) + d(x, s) over s in S.
ExtFunction mcshane_whitney_min(const ExtFunction& f, const IndexSubset& sites, const MetricInstance& metric);
ExtFunction mcshane_whitney_max(const ExtFunction& f, const IndexSubset& sites, const MetricInstance& metric);

/// h is finite, 1-Lipschitz, equals f on S and satisfies
/// h(x) - h(x') <= d(x', y) - d(x, y) for (x, y) in G(M) and every x'.
bool is_valid_extension(const ExtFunction& h, const ExtensionProblem& p, double eps = kDefaultEpsilon);

}  // namespace abconvex
