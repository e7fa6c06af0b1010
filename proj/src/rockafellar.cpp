#include "abconvex/rockafellar.hpp"

#include <algorithm>
#include <limits>

#include "abconvex/transform.hpp"

namespace abconvex {

namespace {

std::string describe(const Chain& chain) {
  std::string out = "positive closed chain of length " + std::to_string(chain.pairs.size()) +
                    " (cyclic sum " + ExtReal(chain.cyclic_sum).to_string() + ")";
  return out;
}

}  // namespace

NotCyclicallyMonotone::NotCyclicallyMonotone(Chain witness)
    : DomainError("not_cyclically_monotone", "improper: not c-cyclically monotone; " + describe(witness)),
      witness_(std::move(witness)) {}

std::vector<ExtFunction> rockafellar_family(const MultiMapping& m, const Coupling& c,
                                            std::span<const std::size_t> anchors, double eps) {
  const GainGraph graph = build_gain_graph(m, c);
  const std::size_t nodes = graph.node_count();
  const std::vector<double> w = graph.node_weights();
  if (auto walk = find_positive_cycle(w, nodes, eps)) {
    Chain chain;
    for (std::size_t i = 0; i < walk->size(); ++i) {
      const std::size_t u = (*walk)[i];
      const std::size_t next = graph.nodes()[(*walk)[(i + 1) % walk->size()]];
      chain.pairs.push_back({graph.nodes()[u], graph.witness(u, next)});
    }
    chain.cyclic_sum = cyclic_sum(chain.pairs, c);
    throw NotCyclicallyMonotone(std::move(chain));
  }

  std::vector<ExtFunction> out;
  out.reserve(anchors.size());
  const std::size_t nx = graph.point_count();
  for (std::size_t s : anchors) {
    const auto pos = graph.position_of(s);
    if (!pos) throw InputError("anchor_not_in_domain", "Rockafellar anchor must lie in dom(M)");
    const std::vector<double> longest = longest_walks_from(w, nodes, *pos, nodes);
    std::vector<ExtReal> values(nx);
    for (std::size_t x = 0; x < nx; ++x) {
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t u = 0; u < nodes; ++u) best = std::max(best, longest[u] + graph.gain(u, x));
      values[x] = best;
    }
    values[s] = 0.0;
    out.emplace_back(c.domain(), std::move(values));
  }
  return out;
}

ExtFunction rockafellar(const MultiMapping& m, const Coupling& c, std::size_t s, double eps) {
  const std::size_t anchors[] = {s};
  return std::move(rockafellar_family(m, c, anchors, eps).front());
}

ExtFunction rockafellar_oracle(const MultiMapping& m, const Coupling& c, std::size_t s, std::size_t max_len,
                               std::size_t budget) {
  require_proper(m, "rockafellar_oracle");
  require_same_index(m.source(), c.domain(), "mapping source vs coupling domain");
  require_same_index(m.target(), c.codomain(), "mapping target vs coupling codomain");
  const std::vector<std::size_t> first = m.at(s);
  if (first.empty()) throw InputError("anchor_not_in_domain", "Rockafellar anchor must lie in dom(M)");
  if (max_len == 0) throw InputError("invalid_length", "chain length bound must be at least 1");

  // |M(s)| * (1 + g + ... + g^(max_len - 1)) chains in total.
  const double g = static_cast<double>(m.size());
  double count = 0.0, layer = static_cast<double>(first.size());
  for (std::size_t k = 0; k < max_len; ++k, layer *= g) count += layer;
  if (count > static_cast<double>(budget)) {
    throw DomainError("budget_exceeded", "chain enumeration exceeds budget of " + std::to_string(budget));
  }

  const std::size_t nx = c.domain().size();
  std::vector<double> best(nx, -std::numeric_limits<double>::infinity());
  const auto& graph = m.graph();

  // partial = sum over completed hops; (x_n, y_n) is the last pair.
  auto visit = [&](auto& self, double partial, GraphPair last, std::size_t length) -> void {
    for (std::size_t x = 0; x < nx; ++x) {
      best[x] = std::max(best[x], partial + c(x, last.target) - c(last.source, last.target));
    }
    if (length == max_len) return;
    for (const GraphPair& next : graph) {
      self(self, partial + c(next.source, last.target) - c(last.source, last.target), next, length + 1);
    }
  };
  for (std::size_t y : first) visit(visit, 0.0, GraphPair{s, y}, 1);

  return ExtFunction(c.domain(), best);
}

}  // namespace abconvex
