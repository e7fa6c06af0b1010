#include "abconvex/lipschitz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "abconvex/monotonicity.hpp"
#include "abconvex/transform.hpp"

namespace abconvex {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string triple(const GroundSet& g, std::size_t x, std::size_t y, std::size_t z) {
  return "(" + g.label(x) + ", " + g.label(y) + ", " + g.label(z) + ")";
}

ExtFunction anchor_on_domain(const ExtFunction& values, const MultiMapping& m) {
  std::vector<ExtReal> out(values.size(), ExtReal::plus_infinity());
  for (std::size_t x : m.domain()) {
    if (!values[x].is_finite()) {
      throw InputError("extension_value_not_finite", "value at " + values.index().label(x) + " must be finite");
    }
    out[x] = values[x];
  }
  return ExtFunction(values.index(), std::move(out));
}

// gain_d(u, v) = max over y in M(u) of d(u, y) - d(v, y), for u, v in dom(M).
std::vector<double> distance_hop_weights(const MultiMapping& m, const MetricInstance& d,
                                         const std::vector<std::size_t>& nodes) {
  const std::size_t n = nodes.size();
  std::vector<double> w(n * n, -kInf);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t y : m.at(nodes[u])) {
      for (std::size_t v = 0; v < n; ++v) w[u * n + v] = std::max(w[u * n + v], d(nodes[u], y) - d(nodes[v], y));
    }
  }
  return w;
}

void require_full_domain(const ExtensionProblem& p, std::string_view what) {
  if (!p.constraint_problem().sites_cover_domain()) {
    throw DomainError("sites_not_full_domain", std::string(what) + " requires the sites to equal dom(M)");
  }
}

}  // namespace

MetricInstance::MetricInstance(GroundSet points, std::vector<double> row_major, bool pseudometric, double eps)
    : points_(std::move(points)), dist_(std::move(row_major)), pseudometric_(pseudometric) {
  const std::size_t n = points_.size();
  if (dist_.size() != n * n) throw InputError("dimension_mismatch", "distance matrix must be |X| x |X|");
  for (double v : dist_) {
    if (!std::isfinite(v)) throw InputError("nonfinite_distance", "distances must be finite");
  }
  const auto& g = points_;
  for (std::size_t x = 0; x < n; ++x) {
    if (std::abs((*this)(x, x)) > eps) throw InputError("metric_nonzero_diagonal", "d(" + g.label(x) + ", " + g.label(x) + ") != 0");
    for (std::size_t y = 0; y < n; ++y) {
      if ((*this)(x, y) < -eps) {
        throw InputError("metric_negative", "negative distance between " + g.label(x) + " and " + g.label(y));
      }
      if (std::abs((*this)(x, y) - (*this)(y, x)) > eps) {
        throw InputError("metric_asymmetric", "d(" + g.label(x) + ", " + g.label(y) + ") != d(" + g.label(y) + ", " +
                                                   g.label(x) + ")");
      }
      if (!pseudometric_ && x != y && (*this)(x, y) <= eps) {
        throw InputError("metric_not_separating",
                         "distinct points " + g.label(x) + " and " + g.label(y) + " at distance 0");
      }
    }
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        if ((*this)(x, z) > (*this)(x, y) + (*this)(y, z) + eps) {
          throw InputError("metric_triangle", "triangle inequality fails on " + triple(g, x, y, z));
        }
      }
}

MetricInstance MetricInstance::rescaled(double k, double a) const {
  if (!(k > 0.0) || !std::isfinite(k) || !(a > 0.0) || a > 1.0) {
    throw InputError("invalid_rescale", "rescaling K * d^a needs K > 0 and 0 < a <= 1");
  }
  std::vector<double> out(dist_.size());
  for (std::size_t i = 0; i < dist_.size(); ++i) out[i] = k * std::pow(dist_[i], a);
  return MetricInstance(points_, std::move(out), pseudometric_);
}

MetricInstance shortest_path_metric(GroundSet points, const std::vector<WeightedEdge>& edges) {
  const std::size_t n = points.size();
  std::vector<double> d(n * n, kInf);
  for (std::size_t x = 0; x < n; ++x) d[x * n + x] = 0.0;
  bool pseudo = false;
  for (const WeightedEdge& e : edges) {
    if (e.u >= n || e.v >= n) throw InputError("index_out_of_range", "edge endpoint outside the point set");
    if (!(e.weight >= 0.0) || !std::isfinite(e.weight)) {
      throw InputError("invalid_edge_weight", "edge weights must be finite and nonnegative");
    }
    if (e.u == e.v) continue;
    pseudo = pseudo || e.weight == 0.0;
    d[e.u * n + e.v] = std::min(d[e.u * n + e.v], e.weight);
    d[e.v * n + e.u] = d[e.u * n + e.v];
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::min(d[i * n + j], d[i * n + k] + d[k * n + j]);
  for (double v : d) {
    if (v == kInf) throw InputError("disconnected_graph", "shortest-path metric needs a connected graph");
  }
  return MetricInstance(std::move(points), std::move(d), pseudo);
}

Coupling as_coupling(const MetricInstance& metric) {
  std::vector<double> values(metric.distances().size());
  std::transform(metric.distances().begin(), metric.distances().end(), values.begin(), [](double v) { return -v; });
  return Coupling(metric.points(), metric.points(), std::move(values));
}

LipschitzReport lipschitz_characterize(const ExtFunction& f, const MetricInstance& metric, double eps) {
  require_same_index(f.index(), metric.points(), "function vs metric points");
  if (!f.is_finite_everywhere()) throw InputError("function_not_finite", "f must be finite everywhere");
  const Coupling c = as_coupling(metric);
  LipschitzReport report;

  report.is_lipschitz_1 = true;
  for (std::size_t x = 0; x < f.size() && report.is_lipschitz_1; ++x)
    for (std::size_t y = 0; y < f.size(); ++y) {
      if (f[x].value() - f[y].value() > metric(x, y) + eps) {
        report.is_lipschitz_1 = false;
        report.violation = GraphPair{x, y};
        break;
      }
    }

  report.is_md_convex = is_c_convex(f, c, eps);

  const ExtFunction fc = c_transform(f, c);
  report.transform_is_neg = true;
  for (std::size_t x = 0; x < f.size(); ++x) {
    report.transform_is_neg = report.transform_is_neg && approx_equal(fc[x], -f[x], eps);
  }

  report.is_identity_antiderivative = is_antiderivative(f, MultiMapping::identity(metric.points()), c, eps);
  return report;
}

ExtensionProblem::ExtensionProblem(MetricInstance metric, MultiMapping mapping, const ExtFunction& values,
                                   IndexSubset sites, double eps)
    : metric_(std::move(metric)),
      problem_(as_coupling(metric_), mapping, anchor_on_domain(values, mapping), std::move(sites), eps) {}

ExtFunction extend_min(const ExtensionProblem& p) { return alpha(p.constraint_problem()); }

ExtFunction extend_max(const ExtensionProblem& p) { return gamma(p.constraint_problem()); }

ExtFunction extend_min_chain(const ExtensionProblem& p) {
  const MetricInstance& d = p.metric();
  const std::vector<std::size_t> nodes = p.mapping().domain();
  const std::size_t m = nodes.size(), n = d.size();
  const std::vector<double> w = distance_hop_weights(p.mapping(), d, nodes);
  // Final hop from node u to any x: max over y in M(u) of d(u, y) - d(x, y).
  std::vector<double> last(m * n, -kInf);
  for (std::size_t u = 0; u < m; ++u)
    for (std::size_t y : p.mapping().at(nodes[u]))
      for (std::size_t x = 0; x < n; ++x) last[u * n + x] = std::max(last[u * n + x], d(nodes[u], y) - d(x, y));

  std::vector<double> out(n, -kInf);
  for (std::size_t s : p.sites().members()) {
    const std::size_t pos = static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), s) - nodes.begin());
    const std::vector<double> walk = longest_walks_from(w, m, pos, m);
    const double fs = p.values()[s].value();
    for (std::size_t u = 0; u < m; ++u) {
      if (walk[u] == -kInf) continue;
      for (std::size_t x = 0; x < n; ++x) out[x] = std::max(out[x], fs + walk[u] + last[u * n + x]);
    }
  }
  return ExtFunction(d.points(), out);
}

ExtFunction extend_max_chain(const ExtensionProblem& p) {
  const MetricInstance& d = p.metric();
  const std::vector<std::size_t> nodes = p.mapping().domain();
  const std::size_t m = nodes.size(), n = d.size();
  const std::vector<double> w = distance_hop_weights(p.mapping(), d, nodes);

  std::vector<double> out(n, kInf);
  for (std::size_t s : p.sites().members()) {
    const std::size_t pos = static_cast<std::size_t>(std::lower_bound(nodes.begin(), nodes.end(), s) - nodes.begin());
    // Walks s = x_1 -> ... -> x_n cost the reverse gain-graph walk x_n -> ... -> s.
    const std::vector<double> into = longest_walks_into(w, m, pos, m);
    const double fs = p.values()[s].value();
    for (std::size_t u = 0; u < m; ++u) {
      if (into[u] == -kInf) continue;
      for (std::size_t x = 0; x < n; ++x) out[x] = std::min(out[x], fs - into[u] + d(nodes[u], x));
    }
  }
  return ExtFunction(d.points(), out);
}

ExtFunction extend_min_full_domain(const ExtensionProblem& p) {
  require_full_domain(p, "extend_min_full_domain");
  const MetricInstance& d = p.metric();
  std::vector<double> out(d.size(), -kInf);
  for (const GraphPair& st : p.mapping().graph()) {
    const double base = p.values()[st.source].value() + d(st.source, st.target);
    for (std::size_t x = 0; x < d.size(); ++x) out[x] = std::max(out[x], base - d(x, st.target));
  }
  return ExtFunction(d.points(), out);
}

ExtFunction extend_max_full_domain(const ExtensionProblem& p) {
  require_full_domain(p, "extend_max_full_domain");
  const MetricInstance& d = p.metric();
  std::vector<double> out(d.size(), kInf);
  for (std::size_t s : p.mapping().domain()) {
    for (std::size_t x = 0; x < d.size(); ++x) out[x] = std::min(out[x], p.values()[s].value() + d(x, s));
  }
  return ExtFunction(d.points(), out);
}

ExtFunction mcshane_whitney_min(const ExtFunction& f, const IndexSubset& sites, const MetricInstance& metric) {
  require_same_index(f.index(), metric.points(), "function vs metric points");
  std::vector<double> out(metric.size(), -kInf);
  for (std::size_t s : sites.members()) {
    if (!f[s].is_finite()) throw InputError("extension_value_not_finite", "site values must be finite");
    for (std::size_t x = 0; x < metric.size(); ++x) out[x] = std::max(out[x], f[s].value() - metric(x, s));
  }
  return ExtFunction(metric.points(), out);
}

ExtFunction mcshane_whitney_max(const ExtFunction& f, const IndexSubset& sites, const MetricInstance& metric) {
  require_same_index(f.index(), metric.points(), "function vs metric points");
  std::vector<double> out(metric.size(), kInf);
  for (std::size_t s : sites.members()) {
    if (!f[s].is_finite()) throw InputError("extension_value_not_finite", "site values must be finite");
    for (std::size_t x = 0; x < metric.size(); ++x) out[x] = std::min(out[x], f[s].value() + metric(x, s));
  }
  return ExtFunction(metric.points(), out);
}

bool is_valid_extension(const ExtFunction& h, const ExtensionProblem& p, double eps) {
  require_same_index(h.index(), p.metric().points(), "candidate vs metric points");
  if (!h.is_finite_everywhere()) return false;
  const MetricInstance& d = p.metric();
  const std::size_t n = d.size();
  for (std::size_t s : p.sites().members()) {
    if (std::abs(h[s].value() - p.values()[s].value()) > eps) return false;
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (h[x].value() - h[y].value() > d(x, y) + eps) return false;
    }
  for (const GraphPair& xy : p.mapping().graph())
    for (std::size_t x2 = 0; x2 < n; ++x2) {
      if (h[xy.source].value() - h[x2].value() > d(x2, xy.target) - d(xy.source, xy.target) + eps) return false;
    }
  return true;
}

}  // namespace abconvex
