#include "abconvex/envelopes.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "abconvex/rockafellar.hpp"
#include "abconvex/transform.hpp"

namespace abconvex {

namespace {

void require_full_domain(const ConstraintProblem& p, std::string_view what) {
  if (!p.sites_cover_domain()) {
    throw DomainError("sites_not_full_domain", std::string(what) + " requires the sites to equal dom(M)");
  }
}

}  // namespace

ConstraintProblem::ConstraintProblem(Coupling coupling, MultiMapping mapping, ExtFunction anchor, IndexSubset sites,
                                     double eps)
    : coupling_(std::move(coupling)),
      mapping_(std::move(mapping)),
      anchor_(std::move(anchor)),
      sites_(std::move(sites)),
      eps_(eps) {
  require_proper(mapping_, "ConstraintProblem");
  require_proper(anchor_, "ConstraintProblem");
  require_same_index(mapping_.source(), coupling_.domain(), "mapping source vs coupling domain");
  require_same_index(mapping_.target(), coupling_.codomain(), "mapping target vs coupling codomain");
  require_same_index(anchor_.index(), coupling_.domain(), "anchor vs coupling domain");
  require_same_index(sites_.parent(), coupling_.domain(), "sites vs coupling domain");

  const std::vector<std::size_t> dom = mapping_.domain();
  for (std::size_t s : sites_.members()) {
    if (!std::binary_search(dom.begin(), dom.end(), s)) {
      throw InputError("site_outside_domain", "site " + coupling_.domain().label(s) + " is not in dom(M)");
    }
    if (!anchor_[s].is_finite()) {
      throw DomainError("anchor_not_finite_on_sites", "anchor is not finite at site " + coupling_.domain().label(s));
    }
  }
  if (!is_antiderivative(anchor_, mapping_, coupling_, eps_)) {
    throw DomainError("not_antiderivative", "anchor is not a c-antiderivative of the mapping");
  }

  rockafellar_ = rockafellar_family(mapping_, coupling_, sites_.members(), eps_);

  // f(s) + R_s(s') <= f(s') for all sites; each chain hop may lose eps.
  const double slack = eps_ * static_cast<double>(dom.size());
  for (std::size_t i = 0; i < sites_.size(); ++i) {
    const std::size_t s = sites_.members()[i];
    for (std::size_t t : sites_.members()) {
      const double forced = anchor_[s].value() + rockafellar_[i][t].value();
      if (forced > anchor_[t].value() + slack) {
        throw DomainError("inconsistent_sites", "chains from site " + coupling_.domain().label(s) +
                                                    " force a value above the anchor at site " +
                                                    coupling_.domain().label(t));
      }
    }
  }
}

ConstraintProblem ConstraintProblem::dual() const {
  ExtFunction fc = c_transform(anchor_, coupling_);
  IndexSubset image(coupling_.codomain(), mapping_.image_of(sites_));
  return ConstraintProblem(coupling_.transposed(), mapping_.inverse(), std::move(fc), std::move(image), eps_);
}

bool is_member(const ExtFunction& h, const ConstraintProblem& p, double eps) {
  require_proper(h, "is_member");
  require_same_index(h.index(), p.coupling().domain(), "candidate vs coupling domain");
  for (std::size_t s : p.sites().members()) {
    if (!h[s].is_finite() || std::abs(h[s].value() - p.anchor()[s].value()) > eps) return false;
  }
  return is_antiderivative(h, p.mapping(), p.coupling(), eps) && is_c_convex(h, p.coupling(), eps);
}

ExtFunction alpha(const ConstraintProblem& p) {
  const std::size_t n = p.coupling().domain().size();
  std::vector<ExtReal> out(n, ExtReal::minus_infinity());
  const auto& sites = p.sites().members();
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const double fs = p.anchor()[sites[i]].value();
    const ExtFunction& r = p.site_antiderivatives()[i];
    for (std::size_t x = 0; x < n; ++x) out[x] = max(out[x], fs + r[x]);
  }
  return ExtFunction(p.coupling().domain(), std::move(out));
}

ExtFunction alpha_full_domain(const ConstraintProblem& p) {
  require_full_domain(p, "alpha_full_domain");
  const Coupling& c = p.coupling();
  const std::size_t n = c.domain().size();
  std::vector<ExtReal> out(n, ExtReal::minus_infinity());
  for (const GraphPair& st : p.mapping().graph()) {
    const double base = p.anchor()[st.source].value() - c(st.source, st.target);
    for (std::size_t x = 0; x < n; ++x) out[x] = max(out[x], ExtReal(base + c(x, st.target)));
  }
  return ExtFunction(c.domain(), std::move(out));
}

ExtFunction gamma(const ConstraintProblem& p) {
  return c_transform_back(alpha(p.dual()), p.coupling());
}

ExtFunction gamma_full_domain(const ConstraintProblem& p) {
  require_full_domain(p, "gamma_full_domain");
  IndexSubset dom(p.coupling().domain(), p.mapping().domain());
  return c_convexify(restrict_sum(p.anchor(), dom), p.coupling());
}

bool sandwich_check(const ExtFunction& h, const ConstraintProblem& p, double eps) {
  require_full_domain(p, "sandwich_check");
  if (!is_c_convex(h, p.coupling(), eps)) throw DomainError("not_c_convex", "sandwich_check expects a c-convex h");
  return pointwise_le(alpha(p), h, eps) && pointwise_le(h, gamma(p), eps);
}

ExtFunction sample_member(const ConstraintProblem& p, std::uint64_t seed) {
  require_full_domain(p, "sample_member");
  const ExtFunction lo = alpha(p), hi = gamma(p);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<ExtReal> g(lo.size());
  for (std::size_t x = 0; x < lo.size(); ++x) {
    const double t = unit(rng);
    g[x] = lo[x].value() + t * (hi[x].value() - lo[x].value());
  }
  return c_convexify(ExtFunction(lo.index(), std::move(g)), p.coupling());
}

}  // namespace abconvex
