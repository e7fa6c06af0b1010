#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "abconvex/commands.hpp"
#include "abconvex/envelopes.hpp"
#include "abconvex/fitzpatrick.hpp"
#include "abconvex/lipschitz.hpp"
#include "abconvex/monotonicity.hpp"
#include "abconvex/rockafellar.hpp"
#include "abconvex/transform.hpp"

namespace py = pybind11;
using namespace abconvex;

namespace {

using Matrix = std::vector<std::vector<double>>;
using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;

std::vector<double> flatten(const Matrix& rows, std::size_t& cols) {
  if (rows.empty()) throw InputError("empty_ground_set", "matrix has no rows");
  cols = rows.front().size();
  std::vector<double> flat;
  for (const auto& r : rows) {
    if (r.size() != cols) throw InputError("dimension_mismatch", "matrix rows differ in length");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return flat;
}

Coupling coupling_of(const Matrix& rows) {
  std::size_t cols = 0;
  std::vector<double> flat = flatten(rows, cols);
  return Coupling(GroundSet::range(rows.size()), GroundSet::range(cols), std::move(flat));
}

MetricInstance metric_of(const Matrix& rows, bool pseudometric) {
  std::size_t cols = 0;
  std::vector<double> flat = flatten(rows, cols);
  return MetricInstance(GroundSet::range(rows.size()), std::move(flat), pseudometric);
}

ExtFunction function_of(const GroundSet& g, const std::vector<double>& values) {
  if (values.size() != g.size()) throw InputError("dimension_mismatch", "function length does not match the set");
  return ExtFunction(g, values);
}

MultiMapping mapping_of(const GroundSet& x, const GroundSet& y, const Pairs& pairs) {
  std::vector<GraphPair> graph;
  for (const auto& [a, b] : pairs) graph.push_back({a, b});
  return MultiMapping(x, y, std::move(graph));
}

IndexSubset subset_of(const GroundSet& g, const std::vector<std::size_t>& members) { return IndexSubset(g, members); }

Pairs pairs_of(const std::vector<GraphPair>& graph) {
  Pairs out;
  for (const GraphPair& p : graph) out.emplace_back(p.source, p.target);
  return out;
}

std::optional<Pairs> witness_of(const MonotonicityVerdict& v) {
  if (!v.violation) return std::nullopt;
  return pairs_of(v.violation->pairs);
}

ConstraintProblem problem_of(const Matrix& c, const Pairs& pairs, const std::vector<double>& f,
                             const std::optional<std::vector<std::size_t>>& sites, double eps) {
  const Coupling cp = coupling_of(c);
  const MultiMapping m = mapping_of(cp.domain(), cp.codomain(), pairs);
  IndexSubset s = sites ? subset_of(cp.domain(), *sites) : IndexSubset(cp.domain(), m.domain());
  return ConstraintProblem(cp, m, function_of(cp.domain(), f), std::move(s), eps);
}

ExtensionProblem extension_of(const Matrix& dist, const std::optional<Pairs>& pairs, const std::vector<double>& f,
                              const std::vector<std::size_t>& sites, double eps) {
  MetricInstance metric = metric_of(dist, false);
  const IndexSubset s = subset_of(metric.points(), sites);
  MultiMapping m = pairs ? mapping_of(metric.points(), metric.points(), *pairs) : MultiMapping::identity_on(s);
  ExtFunction values = function_of(metric.points(), f);
  return ExtensionProblem(std::move(metric), std::move(m), values, s, eps);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Finite abstract convexity: c-transforms, antiderivatives, envelopes and Lipschitz extensions";
  m.attr("DEFAULT_EPSILON") = kDefaultEpsilon;

  static py::exception<Error> error(m, "AbconvexError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, (e.code() + ": " + e.what()).c_str());
    }
  });

  m.def("c_transform", [](const std::vector<double>& f, const Matrix& c) {
    const Coupling cp = coupling_of(c);
    return c_transform(function_of(cp.domain(), f), cp).to_doubles();
  }, py::arg("f"), py::arg("c"), "f^c(y) = max_x c[x][y] - f[x]; use float('inf') for +inf.");

  m.def("c_transform_back", [](const std::vector<double>& g, const Matrix& c) {
    const Coupling cp = coupling_of(c);
    return c_transform_back(function_of(cp.codomain(), g), cp).to_doubles();
  }, py::arg("g"), py::arg("c"));

  m.def("c_convexify", [](const std::vector<double>& f, const Matrix& c) {
    const Coupling cp = coupling_of(c);
    return c_convexify(function_of(cp.domain(), f), cp).to_doubles();
  }, py::arg("f"), py::arg("c"));

  m.def("is_c_convex", [](const std::vector<double>& f, const Matrix& c, double eps) {
    const Coupling cp = coupling_of(c);
    return is_c_convex(function_of(cp.domain(), f), cp, eps);
  }, py::arg("f"), py::arg("c"), py::arg("eps") = kDefaultEpsilon);

  m.def("c_subdifferential", [](const std::vector<double>& f, const Matrix& c, double eps) {
    const Coupling cp = coupling_of(c);
    return pairs_of(c_subdifferential(function_of(cp.domain(), f), cp, eps).mapping.graph());
  }, py::arg("f"), py::arg("c"), py::arg("eps") = kDefaultEpsilon);

  m.def("is_n_monotone", [](const Pairs& pairs, const Matrix& c, std::size_t n, double eps) {
    const Coupling cp = coupling_of(c);
    const MonotonicityVerdict v = is_n_monotone(mapping_of(cp.domain(), cp.codomain(), pairs), cp, n, eps);
    return std::make_pair(v.holds, witness_of(v));
  }, py::arg("pairs"), py::arg("c"), py::arg("n"), py::arg("eps") = kDefaultEpsilon,
        "Returns (holds, violating pairs or None).");

  m.def("is_cyclically_monotone", [](const Pairs& pairs, const Matrix& c, double eps) {
    const Coupling cp = coupling_of(c);
    const MonotonicityVerdict v = is_cyclically_monotone(mapping_of(cp.domain(), cp.codomain(), pairs), cp, eps);
    return std::make_pair(v.holds, witness_of(v));
  }, py::arg("pairs"), py::arg("c"), py::arg("eps") = kDefaultEpsilon);

  m.def("rockafellar", [](const Pairs& pairs, const Matrix& c, std::size_t s, double eps) {
    const Coupling cp = coupling_of(c);
    return rockafellar(mapping_of(cp.domain(), cp.codomain(), pairs), cp, s, eps).to_doubles();
  }, py::arg("pairs"), py::arg("c"), py::arg("s"), py::arg("eps") = kDefaultEpsilon);

  m.def("alpha", [](const Matrix& c, const Pairs& pairs, const std::vector<double>& f,
                    const std::optional<std::vector<std::size_t>>& sites, double eps) {
    return alpha(problem_of(c, pairs, f, sites, eps)).to_doubles();
  }, py::arg("c"), py::arg("pairs"), py::arg("f"), py::arg("sites") = py::none(), py::arg("eps") = kDefaultEpsilon,
        "Lower envelope; sites default to dom(M).");

  m.def("gamma", [](const Matrix& c, const Pairs& pairs, const std::vector<double>& f,
                    const std::optional<std::vector<std::size_t>>& sites, double eps) {
    return gamma(problem_of(c, pairs, f, sites, eps)).to_doubles();
  }, py::arg("c"), py::arg("pairs"), py::arg("f"), py::arg("sites") = py::none(), py::arg("eps") = kDefaultEpsilon);

  m.def("fitzpatrick", [](const Pairs& pairs, const Matrix& c) {
    const Coupling cp = coupling_of(c);
    const std::vector<double> flat = fitzpatrick(mapping_of(cp.domain(), cp.codomain(), pairs), cp).to_doubles();
    const std::size_t ny = cp.codomain().size();
    Matrix rows;
    for (std::size_t x = 0; x < cp.domain().size(); ++x) rows.emplace_back(flat.begin() + x * ny, flat.begin() + (x + 1) * ny);
    return rows;
  }, py::arg("pairs"), py::arg("c"), "F[x][y] = max over (s, t) in G(T) of c[x][t] + c[s][y] - c[s][t].");

  m.def("lipschitz_characterize", [](const std::vector<double>& f, const Matrix& dist, double eps) {
    const MetricInstance metric = metric_of(dist, true);
    const LipschitzReport r = lipschitz_characterize(function_of(metric.points(), f), metric, eps);
    py::dict out;
    out["is_lipschitz_1"] = r.is_lipschitz_1;
    out["is_md_convex"] = r.is_md_convex;
    out["transform_is_neg"] = r.transform_is_neg;
    out["is_identity_antiderivative"] = r.is_identity_antiderivative;
    return out;
  }, py::arg("f"), py::arg("dist"), py::arg("eps") = kDefaultEpsilon);

  m.def("extend_min", [](const Matrix& dist, const std::vector<double>& f, const std::vector<std::size_t>& sites,
                         const std::optional<Pairs>& pairs, double eps) {
    return extend_min(extension_of(dist, pairs, f, sites, eps)).to_doubles();
  }, py::arg("dist"), py::arg("f"), py::arg("sites"), py::arg("pairs") = py::none(), py::arg("eps") = kDefaultEpsilon,
        "Minimal constrained 1-Lipschitz extension; the mapping defaults to the identity on the sites.");

  m.def("extend_max", [](const Matrix& dist, const std::vector<double>& f, const std::vector<std::size_t>& sites,
                         const std::optional<Pairs>& pairs, double eps) {
    return extend_max(extension_of(dist, pairs, f, sites, eps)).to_doubles();
  }, py::arg("dist"), py::arg("f"), py::arg("sites"), py::arg("pairs") = py::none(), py::arg("eps") = kDefaultEpsilon);

  m.def("run", [](const std::string& command, const std::string& instance, std::optional<std::string> function,
                  std::optional<std::string> mapping, std::optional<std::string> subset,
                  std::optional<std::string> site_function, bool only_min, bool only_max, double epsilon,
                  std::uint64_t seed) {
    CommandOptions opt;
    opt.command = command;
    opt.instance = instance;
    opt.function = std::move(function);
    opt.mapping = std::move(mapping);
    opt.subset = std::move(subset);
    opt.site_function = std::move(site_function);
    opt.only_min = only_min;
    opt.only_max = only_max;
    opt.epsilon = epsilon;
    opt.seed = seed;
    const CommandResult r = run_command(opt);
    return std::make_pair(r.json, r.exit_code);
  }, py::arg("command"), py::arg("instance"), py::arg("function") = py::none(), py::arg("mapping") = py::none(),
        py::arg("subset") = py::none(), py::arg("site_function") = py::none(), py::arg("only_min") = false,
        py::arg("only_max") = false, py::arg("epsilon") = kDefaultEpsilon, py::arg("seed") = 0,
        "Runs a CLI command in-process and returns (json_text, exit_code).");
}
