#include "abconvex/monotonicity.hpp"

#include <algorithm>
#include <limits>

#include "abconvex/transform.hpp"

namespace abconvex {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr long kCarried = -2;  // value inherited from the previous layer
constexpr long kNoPred = -1;

Chain chain_from_walk(const GainGraph& graph, const std::vector<std::size_t>& walk, const Coupling& c) {
  Chain chain;
  for (std::size_t i = 0; i < walk.size(); ++i) {
    const std::size_t u = walk[i];
    const std::size_t next_point = graph.nodes()[walk[(i + 1) % walk.size()]];
    chain.pairs.push_back({graph.nodes()[u], graph.witness(u, next_point)});
  }
  chain.cyclic_sum = cyclic_sum(chain.pairs, c);
  return chain;
}

// Closed walk of exactly n edges through the best start, if its weight > eps.
std::optional<std::vector<std::size_t>> best_closed_walk_of_length(std::span<const double> w, std::size_t m,
                                                                   std::size_t n, double eps) {
  std::vector<std::vector<double>> val(n, std::vector<double>(m));
  std::vector<std::vector<long>> pred(n, std::vector<long>(m));
  for (std::size_t s = 0; s < m; ++s) {
    std::fill(val[0].begin(), val[0].end(), kNegInf);
    std::fill(pred[0].begin(), pred[0].end(), kNoPred);
    val[0][s] = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
      for (std::size_t v = 0; v < m; ++v) {
        double best = kNegInf;
        long arg = kNoPred;
        for (std::size_t u = 0; u < m; ++u) {
          if (val[k - 1][u] == kNegInf) continue;
          const double cand = val[k - 1][u] + w[u * m + v];
          if (cand > best) best = cand, arg = static_cast<long>(u);
        }
        val[k][v] = best;
        pred[k][v] = arg;
      }
    }
    double best = kNegInf;
    long last = kNoPred;
    for (std::size_t u = 0; u < m; ++u) {
      if (val[n - 1][u] == kNegInf) continue;
      const double cand = val[n - 1][u] + w[u * m + s];
      if (cand > best) best = cand, last = static_cast<long>(u);
    }
    if (best > eps) {
      std::vector<std::size_t> walk(n);
      long v = last;
      for (std::size_t k = n - 1;; --k) {
        walk[k] = static_cast<std::size_t>(v);
        if (k == 0) break;
        v = pred[k][static_cast<std::size_t>(v)];
      }
      return walk;
    }
  }
  return std::nullopt;
}

MonotonicityVerdict enumerate_n_monotone(const MultiMapping& m, const Coupling& c, std::size_t n, double eps) {
  const auto& g = m.graph();
  std::vector<std::size_t> idx(n, 0);
  std::vector<GraphPair> tuple(n);
  while (true) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const GraphPair& p = g[idx[i]];
      const GraphPair& q = g[idx[(i + 1) % n]];
      sum += c(p.source, p.target) - c(q.source, p.target);
    }
    if (sum < -eps) {
      for (std::size_t i = 0; i < n; ++i) tuple[i] = g[idx[i]];
      return {false, Chain{tuple, cyclic_sum(tuple, c)}};
    }
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < g.size()) break;
      idx[pos] = 0;
      if (pos == 0) return {true, std::nullopt};
    }
  }
}

}  // namespace

double cyclic_sum(std::span<const GraphPair> pairs, const Coupling& c) {
  double sum = 0.0;
  const std::size_t n = pairs.size();
  for (std::size_t i = 0; i < n; ++i) {
    const GraphPair& p = pairs[i];
    sum += c(p.source, p.target) - c(pairs[(i + 1) % n].source, p.target);
  }
  return sum;
}

GainGraph::GainGraph(std::vector<std::size_t> nodes, std::size_t point_count, std::vector<double> gain,
                     std::vector<std::size_t> witness)
    : nodes_(std::move(nodes)),
      position_(point_count),
      point_count_(point_count),
      gain_(std::move(gain)),
      witness_(std::move(witness)) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) position_.at(nodes_[i]) = i;
}

std::optional<std::size_t> GainGraph::position_of(std::size_t x) const {
  return x < position_.size() ? position_[x] : std::nullopt;
}

std::vector<double> GainGraph::node_weights() const {
  const std::size_t m = nodes_.size();
  std::vector<double> w(m * m);
  for (std::size_t u = 0; u < m; ++u)
    for (std::size_t v = 0; v < m; ++v) w[u * m + v] = gain(u, nodes_[v]);
  return w;
}

GainGraph build_gain_graph(const MultiMapping& m, const Coupling& c) {
  require_proper(m, "build_gain_graph");
  require_same_index(m.source(), c.domain(), "mapping source vs coupling domain");
  require_same_index(m.target(), c.codomain(), "mapping target vs coupling codomain");
  std::vector<std::size_t> nodes = m.domain();
  const std::size_t nx = c.domain().size();
  std::vector<double> gain(nodes.size() * nx, kNegInf);
  std::vector<std::size_t> witness(nodes.size() * nx, 0);
  for (std::size_t u = 0; u < nodes.size(); ++u) {
    const std::vector<std::size_t> ys = m.at(nodes[u]);
    for (std::size_t v = 0; v < nx; ++v) {
      for (std::size_t y : ys) {  // ascending, so strict > keeps the smallest y on ties
        const double g = c(v, y) - c(nodes[u], y);
        if (g > gain[u * nx + v]) {
          gain[u * nx + v] = g;
          witness[u * nx + v] = y;
        }
      }
    }
  }
  return GainGraph(std::move(nodes), nx, std::move(gain), std::move(witness));
}

std::vector<double> longest_walks_from(std::span<const double> w, std::size_t m, std::size_t source,
                                       std::size_t rounds) {
  std::vector<double> dist(m, kNegInf), next;
  dist.at(source) = 0.0;
  for (std::size_t r = 0; r < rounds; ++r) {
    next = dist;
    bool changed = false;
    for (std::size_t u = 0; u < m; ++u) {
      if (dist[u] == kNegInf) continue;
      for (std::size_t v = 0; v < m; ++v) {
        const double cand = dist[u] + w[u * m + v];
        if (cand > next[v]) next[v] = cand, changed = true;
      }
    }
    dist.swap(next);
    if (!changed) break;
  }
  return dist;
}

std::vector<double> longest_walks_into(std::span<const double> w, std::size_t m, std::size_t target,
                                       std::size_t rounds) {
  std::vector<double> transposed(m * m);
  for (std::size_t u = 0; u < m; ++u)
    for (std::size_t v = 0; v < m; ++v) transposed[v * m + u] = w[u * m + v];
  return longest_walks_from(transposed, m, target, rounds);
}

std::optional<std::vector<std::size_t>> find_positive_cycle(std::span<const double> w, std::size_t m, double eps) {
  const std::size_t layers = m + 1;
  std::vector<std::vector<double>> val(layers, std::vector<double>(m));
  std::vector<std::vector<long>> pred(layers, std::vector<long>(m));
  for (std::size_t s = 0; s < m; ++s) {
    std::fill(val[0].begin(), val[0].end(), kNegInf);
    std::fill(pred[0].begin(), pred[0].end(), kNoPred);
    val[0][s] = 0.0;
    for (std::size_t k = 1; k < layers; ++k) {
      val[k] = val[k - 1];
      std::fill(pred[k].begin(), pred[k].end(), kCarried);
      for (std::size_t u = 0; u < m; ++u) {
        if (val[k - 1][u] == kNegInf) continue;
        for (std::size_t v = 0; v < m; ++v) {
          const double cand = val[k - 1][u] + w[u * m + v];
          if (cand > val[k][v]) val[k][v] = cand, pred[k][v] = static_cast<long>(u);
        }
      }
    }
    double best = kNegInf;
    long last = kNoPred;
    for (std::size_t u = 0; u < m; ++u) {
      if (val[m][u] == kNegInf) continue;
      const double cand = val[m][u] + w[u * m + s];
      if (cand > best) best = cand, last = static_cast<long>(u);
    }
    if (best > eps) {
      std::vector<std::size_t> reversed;
      std::size_t v = static_cast<std::size_t>(last);
      for (std::size_t k = m; k > 0; --k) {
        if (pred[k][v] == kCarried) continue;
        reversed.push_back(v);
        v = static_cast<std::size_t>(pred[k][v]);
      }
      // v is now the source; the walk is s -> ... -> last -> s.
      std::vector<std::size_t> walk{v};
      walk.insert(walk.end(), reversed.rbegin(), reversed.rend());
      return walk;
    }
  }
  return std::nullopt;
}

MonotonicityVerdict is_n_monotone(const MultiMapping& m, const Coupling& c, std::size_t n, double eps,
                                  std::size_t budget) {
  require_proper(m, "is_n_monotone");
  if (n == 0) throw InputError("invalid_order", "monotonicity order must be at least 1");
  require_same_index(m.source(), c.domain(), "mapping source vs coupling domain");
  require_same_index(m.target(), c.codomain(), "mapping target vs coupling codomain");

  std::size_t tuples = 1;
  bool within_budget = true;
  for (std::size_t i = 0; i < n && within_budget; ++i) {
    if (tuples > budget / m.size()) within_budget = false;
    tuples *= m.size();
  }
  if (within_budget && tuples <= budget) return enumerate_n_monotone(m, c, n, eps);

  const GainGraph graph = build_gain_graph(m, c);
  const std::vector<double> w = graph.node_weights();
  if (auto walk = best_closed_walk_of_length(w, graph.node_count(), n, eps)) {
    return {false, chain_from_walk(graph, *walk, c)};
  }
  return {true, std::nullopt};
}

MonotonicityVerdict is_cyclically_monotone(const MultiMapping& m, const Coupling& c, double eps) {
  const GainGraph graph = build_gain_graph(m, c);
  const std::vector<double> w = graph.node_weights();
  if (auto walk = find_positive_cycle(w, graph.node_count(), eps)) {
    return {false, chain_from_walk(graph, *walk, c)};
  }
  return {true, std::nullopt};
}

std::vector<GraphPair> all_pairs(const GroundSet& source, const GroundSet& target) {
  std::vector<GraphPair> out;
  out.reserve(source.size() * target.size());
  for (std::size_t x = 0; x < source.size(); ++x)
    for (std::size_t y = 0; y < target.size(); ++y) out.push_back({x, y});
  return out;
}

MaximalityVerdict check_maximality(const MultiMapping& m, std::span<const GraphPair> candidates,
                                   const std::function<bool(const MultiMapping&)>& keeps_property) {
  for (const GraphPair& p : candidates) {
    if (m.contains(p.source, p.target)) continue;
    if (keeps_property(m.with_pair(p))) return {false, p};
  }
  return {true, std::nullopt};
}

MaximalityVerdict is_maximal_n_monotone(const MultiMapping& m, const Coupling& c, std::size_t n, double eps) {
  const auto candidates = all_pairs(m.source(), m.target());
  return check_maximality(m, candidates,
                          [&](const MultiMapping& ext) { return is_n_monotone(ext, c, n, eps).holds; });
}

MaximalityVerdict is_maximal_cyclically_monotone(const MultiMapping& m, const Coupling& c, double eps) {
  const auto candidates = all_pairs(m.source(), m.target());
  return check_maximality(m, candidates,
                          [&](const MultiMapping& ext) { return is_cyclically_monotone(ext, c, eps).holds; });
}

}  // namespace abconvex
