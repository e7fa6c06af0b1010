#pragma once

#include <span>
#include <vector>

#include "abconvex/instance.hpp"
#include "abconvex/monotonicity.hpp"

namespace abconvex {

/// Raised when a Rockafellar chain supremum would be +inf because the mapping
/// admits a closed chain with positive gain.
class NotCyclicallyMonotone : public DomainError {
 public:
  explicit NotCyclicallyMonotone(Chain witness);
  const Chain& witness() const { return witness_; }

 private:
  Chain witness_;
};

/// Rockafellar's antiderivative anchored at s in dom(M):
///
///   R(x) = sup over chains s = x_1, (x_i, y_i) in G(M), x_{n+1} = x of
///          sum_i c(x_{i+1}, y_i) - c(x_i, y_i).
///
/// Computed as the longest walk from s in the gain graph followed by one
/// final hop to x. R(s) is exactly 0. Throws NotCyclicallyMonotone if any
/// closed chain in G(M) has gain above eps, anchored at s or not.
ExtFunction rockafellar(const MultiMapping& m, const Coupling& c, std::size_t s, double eps = kDefaultEpsilon);

/// rockafellar() for several anchors, sharing one gain graph and one cycle check.
std::vector<ExtFunction> rockafellar_family(const MultiMapping& m, const Coupling& c,
                                            std::span<const std::size_t> anchors, double eps = kDefaultEpsilon);

/// Exhaustive maximum over chains of length 1..max_len. Throws
/// DomainError("budget_exceeded") when the chain count exceeds budget.
ExtFunction rockafellar_oracle(const MultiMapping& m, const Coupling& c, std::size_t s, std::size_t max_len,
                               std::size_t budget = kEnumerationBudget);

}  // namespace abconvex
