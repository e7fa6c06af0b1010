#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "abconvex/envelopes.hpp"
#include "abconvex/instance.hpp"
#include "abconvex/lipschitz.hpp"

namespace abconvex {

/// Lifted products larger than this many cells per side are refused.
inline constexpr std::size_t kMaxLiftedSide = 10'000;

/// C((x, y), (t, s)) = c(x, t) + c(s, y) on (X x Y) x (Y x X).
///
/// X x Y is ordered x-major, (x, y) -> x |Y| + y; Y x X is ordered y-major,
/// (y, x) -> y |X| + x. Lifted labels are JSON arrays of the two labels.
class ProductCoupling {
 public:
  explicit ProductCoupling(Coupling base);

  const Coupling& base() const { return base_; }
  const Coupling& lifted() const { return lifted_; }

  std::size_t pair_index(std::size_t x, std::size_t y) const { return x * base_.codomain().size() + y; }
  std::size_t reversed_index(std::size_t y, std::size_t x) const { return y * base_.domain().size() + x; }
  GraphPair unpair(std::size_t i) const { return {i / base_.codomain().size(), i % base_.codomain().size()}; }

  /// (g o swap)(x, y) = g(y, x) for g on Y x X.
  ExtFunction pull_back_swap(const ExtFunction& g) const;

 private:
  Coupling base_;
  Coupling lifted_;
};

/// Ground set A x B with JSON-array labels, first factor major.
GroundSet product_ground_set(const GroundSet& a, const GroundSet& b);

/// Delta_T: (x, y) => (y, x) for (x, y) in G(T).
MultiMapping delta_mapping(const MultiMapping& t, const ProductCoupling& pc);

/// c + iota_G(T) on X x Y.
ExtFunction lifted_anchor(const MultiMapping& t, const ProductCoupling& pc);

/// F(x, y) = max over (s, t) in G(T) of c(x, t) + c(s, y) - c(s, t), on X x Y.
ExtFunction fitzpatrick(const MultiMapping& t, const Coupling& c);

/// The same function as (c + iota_G(T))^C evaluated at (y, x).
ExtFunction fitzpatrick_via_conjugate(const MultiMapping& t, const ProductCoupling& pc);

/// h is C-convex, h >= c everywhere and h = c on G(T), all within eps.
bool fitzpatrick_family_member(const ExtFunction& h, const MultiMapping& t, const Coupling& c,
                               double eps = kDefaultEpsilon);

struct Theorem6AReport {
  bool t_monotone = false;
  bool delta_monotone = false;
  bool delta_cyclically_monotone = false;
  bool lifted_antiderivative = false;
  /// Pairs (x, y), (s, t) of G(T) breaking c-monotonicity, and the value
  /// 2(c(x,y) - c(x,t) - c(s,y) + c(s,t)) they give.
  std::optional<std::pair<GraphPair, GraphPair>> witness;
  double witness_value = 0.0;

  bool t_maximal = false;
  bool delta_maximal_monotone = false;
  bool delta_maximal_cyclic = false;
  bool maximal_antiderivative_set = false;
  /// A pair that can be added to G(T) keeping c-monotonicity, when T is not maximal.
  std::optional<GraphPair> extension;

  bool agree() const {
    return t_monotone == delta_monotone && delta_monotone == delta_cyclically_monotone &&
           delta_cyclically_monotone == lifted_antiderivative;
  }
  bool maximal_agree() const {
    return t_maximal == delta_maximal_monotone && delta_maximal_monotone == delta_maximal_cyclic &&
           delta_maximal_cyclic == maximal_antiderivative_set;
  }
};

Theorem6AReport verify_theorem6A(const MultiMapping& t, const Coupling& c, double eps = kDefaultEpsilon);

struct Theorem6BReport {
  /// Sup-norm distance between the lifted lower envelope and F.
  double alpha_gap = 0.0;
  bool alpha_equals_fitzpatrick = false;
  bool t_maximal = false;
  /// Sampling runs only when T is maximal. It can falsify the inclusion of
  /// the antiderivative family in the Fitzpatrick family but never prove it.
  std::size_t members_sampled = 0;
  std::size_t members_in_family = 0;
  bool inclusion_falsified = false;
};

/// Requires T c-monotone (DomainError "not_monotone" otherwise).
Theorem6BReport verify_theorem6B(const MultiMapping& t, const Coupling& c, std::uint64_t seed = 0,
                                 std::size_t samples = 16, double eps = kDefaultEpsilon);

struct InequalityChainReport {
  /// "maximal" or "subdifferential".
  std::string hypothesis;
  bool chain_holds = false;
  /// First (x, y) where the chain fails.
  std::optional<GraphPair> violation;
  /// F^C(y, x) = -F(y, x) everywhere.
  bool transform_is_neg_swap = false;
  std::size_t members_sampled = 0;
  bool inclusions_hold_on_samples = false;
};

/// Checks -d(x,y) <= F(x,y) <= F^C(y,x) = -F(y,x) <= d(y,x) for T on a metric
/// space, with c = -d. T must be -d-monotone and either finitely maximal or
/// the -d-subdifferential of the supplied -d-convex potential; otherwise
/// DomainError("hypothesis_unverifiable").
InequalityChainReport verify_inequality_chain(const MultiMapping& t, const MetricInstance& metric,
                                              const std::optional<ExtFunction>& potential = std::nullopt,
                                              std::uint64_t seed = 0, std::size_t samples = 8,
                                              double eps = kDefaultEpsilon);

}  // namespace abconvex
