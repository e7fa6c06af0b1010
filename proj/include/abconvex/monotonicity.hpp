#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "abconvex/instance.hpp"

namespace abconvex {

/// Exhaustive n-monotonicity enumeration stops at this many ordered tuples;
/// beyond it the gain-graph route runs instead.
inline constexpr std::size_t kEnumerationBudget = 1'000'000;

/// A closed selection of pairs from G(M) (x_{n+1} = x_1).
struct Chain {
  std::vector<GraphPair> pairs;
  /// sum_i c(x_i, y_i) - c(x_{i+1}, y_i); negative exactly when the chain
  /// violates monotonicity.
  double cyclic_sum = 0.0;
};

double cyclic_sum(std::span<const GraphPair> pairs, const Coupling& c);

struct MonotonicityVerdict {
  bool holds = true;
  /// Present whenever holds is false.
  std::optional<Chain> violation;
};

/// Weighted digraph on dom(M): gain(u, v) = max_{y in M(u)} c(v, y) - c(u, y)
/// for u in dom(M) and every v in X. The witness is the maximizing y, ties
/// broken towards the smallest index.
class GainGraph {
 public:
  GainGraph(std::vector<std::size_t> nodes, std::size_t point_count, std::vector<double> gain,
            std::vector<std::size_t> witness);

  /// dom(M), sorted.
  const std::vector<std::size_t>& nodes() const { return nodes_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t point_count() const { return point_count_; }
  std::optional<std::size_t> position_of(std::size_t x) const;

  /// gain(nodes()[u], x).
  double gain(std::size_t u, std::size_t x) const { return gain_[u * point_count_ + x]; }
  std::size_t witness(std::size_t u, std::size_t x) const { return witness_[u * point_count_ + x]; }

  /// Square matrix of gains between nodes (by position), row-major.
  std::vector<double> node_weights() const;

 private:
  std::vector<std::size_t> nodes_;
  std::vector<std::optional<std::size_t>> position_;
  std::size_t point_count_;
  std::vector<double> gain_;
  std::vector<std::size_t> witness_;
};

GainGraph build_gain_graph(const MultiMapping& m, const Coupling& c);

/// Max-plus Bellman-Ford on an m x m weight matrix: the best total weight of
/// a walk with at most `rounds` edges from `source` to every node. The empty
/// walk contributes 0 at the source.
std::vector<double> longest_walks_from(std::span<const double> weights, std::size_t m, std::size_t source,
                                       std::size_t rounds);
/// Same, for walks ending at `target`.
std::vector<double> longest_walks_into(std::span<const double> weights, std::size_t m, std::size_t target,
                                       std::size_t rounds);

/// A closed walk (node positions, first node not repeated at the end) whose
/// total weight exceeds eps, if any closed walk of at most m + 1 edges does.
std::optional<std::vector<std::size_t>> find_positive_cycle(std::span<const double> weights, std::size_t m,
                                                            double eps);

/// Every selection of n pairs (with repetition) satisfies the cyclic
/// inequality. Exhaustive up to `budget` tuples, gain-graph walks beyond.
MonotonicityVerdict is_n_monotone(const MultiMapping& m, const Coupling& c, std::size_t n,
                                  double eps = kDefaultEpsilon, std::size_t budget = kEnumerationBudget);

/// No closed chain of any length has positive gain beyond eps.
MonotonicityVerdict is_cyclically_monotone(const MultiMapping& m, const Coupling& c, double eps = kDefaultEpsilon);

/// Single-point-extension maximality over a finite candidate set: maximal iff
/// no candidate outside G(M) keeps `keeps_property` true.
struct MaximalityVerdict {
  bool maximal = true;
  /// A pair whose addition keeps the property, when not maximal.
  std::optional<GraphPair> extension;
};

MaximalityVerdict check_maximality(const MultiMapping& m, std::span<const GraphPair> candidates,
                                   const std::function<bool(const MultiMapping&)>& keeps_property);

/// All of X x Y, x-major.
std::vector<GraphPair> all_pairs(const GroundSet& source, const GroundSet& target);

MaximalityVerdict is_maximal_n_monotone(const MultiMapping& m, const Coupling& c, std::size_t n,
                                        double eps = kDefaultEpsilon);
MaximalityVerdict is_maximal_cyclically_monotone(const MultiMapping& m, const Coupling& c,
                                                 double eps = kDefaultEpsilon);

}  // namespace abconvex
