#pragma once

#include <cstdint>
#include <vector>

#include "abconvex/instance.hpp"

namespace abconvex {

/// Problem data for the family A[c, f|S, M]: c-convex h with
/// G(M) ⊆ G(∂_c h) and h = f on S.
///
/// Construction validates everything: M proper and c-cyclically monotone,
/// f proper, a c-antiderivative of M and finite on S, S ⊆ dom(M), and no two
/// sites forcing contradictory values through chains of M (beyond eps times
/// |dom(M)|).
class ConstraintProblem {
 public:
  ConstraintProblem(Coupling coupling, MultiMapping mapping, ExtFunction anchor, IndexSubset sites,
                    double eps = kDefaultEpsilon);

  const Coupling& coupling() const { return coupling_; }
  const MultiMapping& mapping() const { return mapping_; }
  const ExtFunction& anchor() const { return anchor_; }
  const IndexSubset& sites() const { return sites_; }
  double epsilon() const { return eps_; }
  bool sites_cover_domain() const { return sites_.members() == mapping_.domain(); }

  /// R[c, M, s] for each site, in site order.
  const std::vector<ExtFunction>& site_antiderivatives() const { return rockafellar_; }

  /// (c reversed, M^-1, f^c, M(S)), a problem over Y.
  ConstraintProblem dual() const;

 private:
  Coupling coupling_;
  MultiMapping mapping_;
  ExtFunction anchor_;
  IndexSubset sites_;
  double eps_;
  std::vector<ExtFunction> rockafellar_;
};

/// h is c-convex, a c-antiderivative of M, and equals f on S within eps.
bool is_member(const ExtFunction& h, const ConstraintProblem& p, double eps = kDefaultEpsilon);

/// Lower envelope: max over s in S of f(s) + R[c, M, s](x).
ExtFunction alpha(const ConstraintProblem& p);

/// max over (s, t) in G(M) of f(s) + c(x, t) - c(s, t). Requires S = dom(M).
ExtFunction alpha_full_domain(const ConstraintProblem& p);

/// Upper envelope, as the c-transform of the dual problem's lower envelope.
ExtFunction gamma(const ConstraintProblem& p);

/// (f + iota_dom(M))^{cc}. Requires S = dom(M).
ExtFunction gamma_full_domain(const ConstraintProblem& p);

/// alpha <= h <= gamma within eps. Requires S = dom(M) and h c-convex.
bool sandwich_check(const ExtFunction& h, const ConstraintProblem& p, double eps = kDefaultEpsilon);

/// A random member for S = dom(M): pointwise random values between the
/// envelopes, then c-convexified.
ExtFunction sample_member(const ConstraintProblem& p, std::uint64_t seed);

}  // namespace abconvex
