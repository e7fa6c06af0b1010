#include "abconvex/commands.hpp"

#include <algorithm>
#include <functional>

#include "abconvex/envelopes.hpp"
#include "abconvex/fitzpatrick.hpp"
#include "abconvex/lipschitz.hpp"
#include "abconvex/monotonicity.hpp"
#include "abconvex/rockafellar.hpp"
#include "abconvex/transform.hpp"
#include "json_text.hpp"

namespace abconvex {

namespace {

using Json = OrderedJson;

// Lifted checks inside `verify` are skipped above this many cells per side.
constexpr std::size_t kVerifyLiftedSide = 256;
constexpr std::size_t kVerifySamples = 8;

// Error that carries a witness document into the error result.
class WitnessedError : public DomainError {
 public:
  WitnessedError(const DomainError& e, Json witness) : DomainError(e.code(), e.what()), witness_(std::move(witness)) {}
  const Json& witness() const { return witness_; }

 private:
  Json witness_;
};

const std::string& need(const std::optional<std::string>& v, const char* flag) {
  if (!v) throw InputError("missing_argument", std::string("this command needs ") + flag);
  return *v;
}

Json pair_json(const MultiMapping& m, const GraphPair& p) {
  return Json::array({m.source().label(p.source), m.target().label(p.target)});
}

Json pairs_json(const MultiMapping& m) {
  Json out = Json::array();
  for (const GraphPair& p : m.graph()) out.push_back(pair_json(m, p));
  return out;
}

Json chain_json(const MultiMapping& m, const std::optional<Chain>& chain) {
  if (!chain) return nullptr;
  Json pairs = Json::array();
  for (const GraphPair& p : chain->pairs) pairs.push_back(pair_json(m, p));
  return Json{{"pairs", std::move(pairs)}, {"cyclic_sum", chain->cyclic_sum}};
}

struct Context {
  const CommandOptions& opt;
  const InstanceDocument& doc;

  const CouplingBlock& coupling() const { return doc.require_coupling(); }
  const Coupling& c() const { return coupling().coupling; }

  const NamedFunction& named_function(const std::optional<std::string>& name, const char* flag) const {
    return doc.function(need(name, flag));
  }

  const NamedMapping& named_mapping() const {
    const NamedMapping& m = doc.mapping(need(opt.mapping, "--mapping"));
    require_same_index(m.mapping.source(), c().domain(), "mapping source vs coupling domain");
    require_same_index(m.mapping.target(), c().codomain(), "mapping target vs coupling codomain");
    return m;
  }

  // --subset, or dom(M) when absent.
  IndexSubset sites_or_domain(const MultiMapping& m) const {
    if (opt.subset) {
      const IndexSubset& s = doc.subset(*opt.subset).subset;
      require_same_index(s.parent(), m.source(), "subset vs mapping source");
      return s;
    }
    require_proper(m, "sites");
    return IndexSubset(m.source(), m.domain());
  }

  const ExtFunction& anchor() const {
    return doc.function(opt.site_function ? *opt.site_function : need(opt.function, "--site-function or --function"))
        .values;
  }

  ConstraintProblem problem() const {
    const NamedMapping& m = named_mapping();
    return ConstraintProblem(c(), m.mapping, anchor(), sites_or_domain(m.mapping), opt.epsilon);
  }

  // True when f lives on the codomain side of the coupling (and not the domain).
  bool on_codomain(const NamedFunction& f) const {
    if (f.over == coupling().domain) return false;
    if (f.over == coupling().codomain) return true;
    throw InputError("index_mismatch", "function \"" + f.name + "\" is over neither side of the coupling");
  }
};

Json cmd_transform(const Context& ctx) {
  const NamedFunction& f = ctx.named_function(ctx.opt.function, "--function");
  require_proper(f.values, "transform");
  const bool back = ctx.on_codomain(f);
  const ExtFunction out = back ? c_transform_back(f.values, ctx.c()) : c_transform(f.values, ctx.c());
  return Json{{"function", f.name},
              {"over", back ? ctx.coupling().domain : ctx.coupling().codomain},
              {"values", function_json(out)}};
}

Json cmd_convexify(const Context& ctx) {
  const NamedFunction& f = ctx.named_function(ctx.opt.function, "--function");
  const Coupling c = ctx.on_codomain(f) ? ctx.c().transposed() : ctx.c();
  const ExtFunction out = c_convexify(f.values, c);
  return Json{{"function", f.name},
              {"over", f.over},
              {"values", function_json(out)},
              {"is_c_convex", approx_equal(out, f.values, ctx.opt.epsilon)}};
}

Json cmd_subdiff(const Context& ctx) {
  const NamedFunction& f = ctx.named_function(ctx.opt.function, "--function");
  if (ctx.on_codomain(f)) {
    const MultiMapping m = c_subdifferential(f.values, ctx.c().transposed(), ctx.opt.epsilon).mapping;
    return Json{{"function", f.name}, {"source", ctx.coupling().codomain}, {"target", ctx.coupling().domain},
                {"pairs", pairs_json(m)}};
  }
  const MultiMapping m = c_subdifferential(f.values, ctx.c(), ctx.opt.epsilon).mapping;
  return Json{{"function", f.name}, {"source", ctx.coupling().domain}, {"target", ctx.coupling().codomain},
              {"pairs", pairs_json(m)}};
}

Json cmd_check_monotone(const Context& ctx) {
  const NamedMapping& m = ctx.named_mapping();
  const MonotonicityVerdict two = is_n_monotone(m.mapping, ctx.c(), 2, ctx.opt.epsilon);
  const MonotonicityVerdict cyc = is_cyclically_monotone(m.mapping, ctx.c(), ctx.opt.epsilon);
  return Json{{"mapping", m.name},
              {"monotone", two.holds},
              {"monotone_witness", chain_json(m.mapping, two.violation)},
              {"cyclically_monotone", cyc.holds},
              {"witness", chain_json(m.mapping, cyc.violation)}};
}

std::vector<ExtFunction> rockafellar_with_witness(const MultiMapping& m, const Coupling& c,
                                                  std::span<const std::size_t> sites, double eps) {
  try {
    return rockafellar_family(m, c, sites, eps);
  } catch (const NotCyclicallyMonotone& e) {
    throw WitnessedError(e, chain_json(m, e.witness()));
  }
}

Json cmd_rockafellar(const Context& ctx) {
  const NamedMapping& m = ctx.named_mapping();
  const IndexSubset sites = ctx.sites_or_domain(m.mapping);
  const auto family = rockafellar_with_witness(m.mapping, ctx.c(), sites.members(), ctx.opt.epsilon);
  Json list = Json::array();
  for (std::size_t i = 0; i < family.size(); ++i) {
    list.push_back(Json{{"site", m.mapping.source().label(sites.members()[i])}, {"values", function_json(family[i])}});
  }
  return Json{{"mapping", m.name}, {"over", ctx.coupling().domain}, {"antiderivatives", std::move(list)}};
}

ConstraintProblem problem_with_witness(const Context& ctx) {
  try {
    return ctx.problem();
  } catch (const NotCyclicallyMonotone& e) {
    throw WitnessedError(e, chain_json(ctx.named_mapping().mapping, e.witness()));
  }
}

Json cmd_envelope(const Context& ctx, bool upper) {
  const ConstraintProblem p = problem_with_witness(ctx);
  const ExtFunction out = upper ? gamma(p) : alpha(p);
  return Json{{"over", ctx.coupling().domain}, {"values", function_json(out)}};
}

Json cmd_member(const Context& ctx) {
  const NamedFunction& h = ctx.named_function(ctx.opt.function, "--function");
  need(ctx.opt.site_function, "--site-function");
  const ConstraintProblem p = problem_with_witness(ctx);
  const double eps = ctx.opt.epsilon;
  require_proper(h.values, "member");
  require_same_index(h.values.index(), ctx.c().domain(), "candidate vs coupling domain");
  const MultiMapping& m = p.mapping();
  const GroundSet& x = ctx.c().domain();

  Json witness = nullptr;
  bool matches = true;
  for (std::size_t s : p.sites().members()) {
    if (!approx_equal(h.values[s], p.anchor()[s], eps)) {
      matches = false;
      witness = Json{{"reason", "site_mismatch"}, {"point", x.label(s)}, {"value", ext_real_json(h.values[s])},
                     {"required", ext_real_json(p.anchor()[s])}};
      break;
    }
  }
  const bool anti = is_antiderivative(h.values, m, ctx.c(), eps);
  if (!anti && witness.is_null()) {
    const ExtFunction hc = c_transform(h.values, ctx.c());
    for (const GraphPair& q : m.graph()) {
      if (!h.values[q.source].is_finite() ||
          h.values[q.source].value() + hc[q.target].value() - ctx.c()(q.source, q.target) > eps) {
        witness = Json{{"reason", "not_antiderivative"}, {"pair", pair_json(m, q)}};
        break;
      }
    }
  }
  const ExtFunction hcc = c_convexify(h.values, ctx.c());
  const bool convex = approx_equal(hcc, h.values, eps);
  if (!convex && witness.is_null()) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!approx_equal(hcc[i], h.values[i], eps)) {
        witness = Json{{"reason", "not_c_convex"}, {"point", x.label(i)}, {"value", ext_real_json(h.values[i])},
                       {"convexified", ext_real_json(hcc[i])}};
        break;
      }
    }
  }
  Json out{{"function", h.name},
           {"member", matches && anti && convex},
           {"matches_sites", matches},
           {"antiderivative", anti},
           {"c_convex", convex},
           {"witness", std::move(witness)}};
  if (p.sites_cover_domain() && convex) out["sandwich"] = sandwich_check(h.values, p, eps);
  return out;
}

Json cmd_lip_extend(const Context& ctx) {
  const CouplingBlock& cb = ctx.coupling();
  if (!cb.metric_instance || !cb.metric->negate) {
    throw InputError("metric_required", "lip-extend needs a metric coupling with c = -d");
  }
  const NamedFunction& f = ctx.named_function(ctx.opt.function, "--function");
  std::optional<MultiMapping> m;
  std::optional<IndexSubset> sites;
  if (ctx.opt.mapping) {
    m = ctx.named_mapping().mapping;
    sites = ctx.sites_or_domain(*m);
  } else {
    if (ctx.opt.subset) {
      sites = ctx.doc.subset(*ctx.opt.subset).subset;
    } else {
      sites = IndexSubset(f.values.index(), f.values.domain());
    }
    m = MultiMapping::identity_on(*sites);
  }
  const ExtensionProblem p(*cb.metric_instance, *m, f.values, *sites, ctx.opt.epsilon);
  Json out{{"function", f.name}, {"over", cb.domain}};
  if (!ctx.opt.only_max) out["min"] = function_json(extend_min(p));
  if (!ctx.opt.only_min) out["max"] = function_json(extend_max(p));
  return out;
}

Json cmd_fitzpatrick(const Context& ctx) {
  const NamedMapping& t = ctx.named_mapping();
  const ExtFunction f = fitzpatrick(t.mapping, ctx.c());
  const std::size_t ny = ctx.c().codomain().size();
  Json rows = Json::array();
  for (std::size_t x = 0; x < ctx.c().domain().size(); ++x) {
    Json row = Json::array();
    for (std::size_t y = 0; y < ny; ++y) row.push_back(ext_real_json(f[x * ny + y]));
    rows.push_back(std::move(row));
  }
  return Json{{"mapping", t.name}, {"rows", ctx.coupling().domain}, {"columns", ctx.coupling().codomain},
              {"values", std::move(rows)}};
}

// Each check reports pass, fail or skipped with a short detail.
class Checks {
 public:
  void add(const std::string& name, const std::function<Json()>& run) {
    Json entry{{"name", name}};
    try {
      Json detail = run();
      if (detail.contains("skipped")) {
        entry["status"] = "skipped";
        entry["detail"] = detail["skipped"];
      } else {
        const bool ok = detail.value("passed", false);
        failed_ = failed_ || !ok;
        entry["status"] = ok ? "pass" : "fail";
        detail.erase("passed");
        entry["detail"] = std::move(detail);
      }
    } catch (const Error& e) {
      entry["status"] = "skipped";
      entry["detail"] = e.code() + ": " + e.what();
    }
    list_.push_back(std::move(entry));
  }
  bool failed() const { return failed_; }
  Json take() { return std::move(list_); }

 private:
  Json list_ = Json::array();
  bool failed_ = false;
};

Json skipped(const std::string& why) { return Json{{"skipped", why}}; }

Json cmd_verify(const Context& ctx, bool& failed) {
  const double eps = ctx.opt.epsilon;
  const Coupling& c = ctx.c();
  Checks checks;

  const NamedFunction* f = ctx.opt.function ? &ctx.doc.function(*ctx.opt.function) : nullptr;
  if (f) {
    checks.add("triple_transform", [&] {
      const Coupling side = ctx.on_codomain(*f) ? c.transposed() : c;
      require_proper(f->values, "triple_transform");
      const ExtFunction fc = c_transform(f->values, side);
      const ExtFunction fccc = c_transform(c_transform_back(fc, side), side);
      const double gap = max_abs_difference(fccc, fc);
      return Json{{"passed", gap <= eps}, {"gap", ext_real_json(gap)}};
    });
    checks.add("convexification_below", [&] {
      const Coupling side = ctx.on_codomain(*f) ? c.transposed() : c;
      const ExtFunction fcc = c_convexify(f->values, side);
      return Json{{"passed", pointwise_le(fcc, f->values, eps) && is_c_convex(fcc, side, eps)}};
    });
    if (ctx.coupling().metric_instance && ctx.coupling().metric->negate) {
      checks.add("lipschitz_four_way", [&] {
        if (!f->values.is_finite_everywhere()) return skipped("function not finite everywhere");
        const LipschitzReport r = lipschitz_characterize(f->values, *ctx.coupling().metric_instance, eps);
        return Json{{"passed", r.unanimous()}, {"lipschitz", r.is_lipschitz_1}};
      });
    }
  }

  if (ctx.opt.mapping) {
    const NamedMapping& m = ctx.named_mapping();
    const bool cyclic = is_cyclically_monotone(m.mapping, c, eps).holds;
    checks.add("rockafellar_self_membership", [&] {
      if (!cyclic) return skipped("mapping is not cyclically monotone");
      const std::vector<std::size_t> dom = m.mapping.domain();
      const auto family = rockafellar_family(m.mapping, c, dom, eps);
      bool ok = true;
      for (std::size_t i = 0; i < dom.size(); ++i) {
        ok = ok && family[i][dom[i]] == ExtReal(0.0) && is_c_convex(family[i], c, eps) &&
             is_antiderivative(family[i], m.mapping, c, eps);
      }
      return Json{{"passed", ok}, {"sites", dom.size()}};
    });
    checks.add("rockafellar_oracle", [&] {
      if (!cyclic) return skipped("mapping is not cyclically monotone");
      const std::size_t s = m.mapping.domain().front();
      const ExtFunction dp = rockafellar(m.mapping, c, s, eps);
      const ExtFunction oracle = rockafellar_oracle(m.mapping, c, s, m.mapping.domain().size() + 2);
      const double gap = max_abs_difference(dp, oracle);
      return Json{{"passed", gap <= eps}, {"gap", ext_real_json(gap)}};
    });

    const bool lifted_fits = c.domain().size() * c.codomain().size() <= kVerifyLiftedSide;
    checks.add("fitzpatrick_equivalences", [&] {
      if (!lifted_fits) return skipped("lifted instance too large for verify");
      const Theorem6AReport r = verify_theorem6A(m.mapping, c, eps);
      return Json{{"passed", r.agree() && r.maximal_agree()}, {"monotone", r.t_monotone}, {"maximal", r.t_maximal}};
    });
    checks.add("fitzpatrick_minimality", [&] {
      if (!lifted_fits) return skipped("lifted instance too large for verify");
      if (!is_n_monotone(m.mapping, c, 2, eps).holds) return skipped("mapping is not c-monotone");
      const Theorem6BReport r = verify_theorem6B(m.mapping, c, ctx.opt.seed, kVerifySamples, eps);
      return Json{{"passed", r.alpha_equals_fitzpatrick && !r.inclusion_falsified},
                  {"alpha_gap", r.alpha_gap},
                  {"members_sampled", r.members_sampled}};
    });

    if (ctx.opt.site_function || f) {
      checks.add("envelopes", [&] {
        if (!cyclic) return skipped("mapping is not cyclically monotone");
        const ConstraintProblem p = ctx.problem();
        const ExtFunction a = alpha(p), g = gamma(p);
        const ConstraintProblem d = p.dual();
        const double involution = std::max(max_abs_difference(c_transform(a, c), gamma(d)),
                                           max_abs_difference(c_transform(g, c), alpha(d)));
        bool ok = is_member(a, p, eps) && is_member(g, p, eps) && pointwise_le(a, g, eps) && involution <= eps;
        Json detail{{"involution_gap", ext_real_json(involution)}};
        if (p.sites_cover_domain()) {
          const double closed = std::max(max_abs_difference(a, alpha_full_domain(p)),
                                         max_abs_difference(g, gamma_full_domain(p)));
          ok = ok && closed <= eps;
          detail["closed_form_gap"] = ext_real_json(closed);
          std::size_t agreeing = 0;
          for (std::size_t k = 0; k < kVerifySamples; ++k) {
            const ExtFunction h = sample_member(p, ctx.opt.seed + k);
            if (is_member(h, p, eps) == sandwich_check(h, p, eps)) ++agreeing;
          }
          ok = ok && agreeing == kVerifySamples;
          detail["sandwich_samples"] = kVerifySamples;
        }
        detail["passed"] = ok;
        return detail;
      });
    }
  }

  failed = checks.failed();
  return Json{{"checks", checks.take()}, {"all_passed", !failed}};
}

Json error_json(const std::string& command, const Error& e, const Json& witness) {
  Json err{{"kind", e.kind() == ErrorKind::kInput ? "input" : "domain"}, {"code", e.code()}, {"message", e.what()}};
  if (!witness.is_null()) err["witness"] = witness;
  return Json{{"command", command}, {"error", std::move(err)}};
}

}  // namespace

CommandResult run_command(const CommandOptions& options, const InstanceDocument& doc) {
  const Context ctx{options, doc};
  const std::string& cmd = options.command;
  try {
    if (std::find(kCommands.begin(), kCommands.end(), cmd) == kCommands.end()) {
      throw InputError("unknown_command", "unknown command \"" + cmd + "\"");
    }
    if (options.only_min && options.only_max) throw InputError("conflicting_flags", "--min and --max exclude each other");
    if (!(options.epsilon >= 0.0)) throw InputError("invalid_epsilon", "--epsilon must be nonnegative");
    Json result;
    bool verify_failed = false;
    if (cmd == "transform") result = cmd_transform(ctx);
    else if (cmd == "convexify") result = cmd_convexify(ctx);
    else if (cmd == "subdiff") result = cmd_subdiff(ctx);
    else if (cmd == "check-monotone") result = cmd_check_monotone(ctx);
    else if (cmd == "rockafellar") result = cmd_rockafellar(ctx);
    else if (cmd == "alpha") result = cmd_envelope(ctx, false);
    else if (cmd == "gamma") result = cmd_envelope(ctx, true);
    else if (cmd == "member") result = cmd_member(ctx);
    else if (cmd == "lip-extend") result = cmd_lip_extend(ctx);
    else if (cmd == "fitzpatrick") result = cmd_fitzpatrick(ctx);
    else result = cmd_verify(ctx, verify_failed);
    Json out{{"command", cmd}, {"result", std::move(result)}};
    return {to_json_text(out), verify_failed ? kExitDomainError : kExitSuccess};
  } catch (const WitnessedError& e) {
    return {to_json_text(error_json(cmd, e, e.witness())), kExitDomainError};
  } catch (const Error& e) {
    return {to_json_text(error_json(cmd, e, nullptr)), e.kind() == ErrorKind::kInput ? kExitInputError : kExitDomainError};
  }
}

CommandResult run_command(const CommandOptions& options) {
  try {
    return run_command(options, load_instance(options.instance));
  } catch (const Error& e) {
    return {to_json_text(error_json(options.command, e, nullptr)),
            e.kind() == ErrorKind::kInput ? kExitInputError : kExitDomainError};
  }
}

}  // namespace abconvex
