#include "abconvex/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "json_text.hpp"

namespace abconvex {

namespace {

using Json = OrderedJson;

[[noreturn]] void fail(const std::string& code, const std::string& path, const std::string& message) {
  throw InputError(code, path + ": " + message);
}

// Re-raise errors from model constructors with the document location.
template <typename F>
auto at_path(const std::string& path, F&& build) -> decltype(build()) {
  try {
    return build();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kInput) throw InputError(e.code(), path + ": " + e.what());
    throw DomainError(e.code(), path + ": " + e.what());
  }
}

const Json& require(const Json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) fail("missing_field", path, std::string("missing field \"") + key + "\"");
  return *it;
}

const Json& require_object(const Json& v, const std::string& path) {
  if (!v.is_object()) fail("type_error", path, "expected an object");
  return v;
}

const Json& require_array(const Json& v, const std::string& path) {
  if (!v.is_array()) fail("type_error", path, "expected an array");
  return v;
}

std::string require_string(const Json& v, const std::string& path) {
  if (!v.is_string()) fail("type_error", path, "expected a string");
  return v.get<std::string>();
}

double require_number(const Json& v, const std::string& path) {
  if (!v.is_number()) fail("type_error", path, "expected a number");
  return v.get<double>();
}

bool optional_bool(const Json& obj, const char* key, bool fallback, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_boolean()) fail("type_error", path + "." + key, "expected a boolean");
  return it->get<bool>();
}

double optional_number(const Json& obj, const char* key, double fallback, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  return require_number(*it, path + "." + key);
}

std::size_t resolve(const GroundSet& g, const Json& v, const std::string& path) {
  const std::string label = require_string(v, path);
  auto idx = g.find(label);
  if (!idx) fail("unknown_label", path, "label \"" + label + "\" is not in the ground set");
  return *idx;
}

std::vector<double> matrix_rows(const Json& v, std::size_t rows, std::size_t cols, const std::string& path) {
  require_array(v, path);
  if (v.size() != rows) {
    fail("dimension_mismatch", path, "expected " + std::to_string(rows) + " rows, found " + std::to_string(v.size()));
  }
  std::vector<double> out;
  out.reserve(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string row_path = path + "[" + std::to_string(r) + "]";
    const Json& row = require_array(v[r], row_path);
    if (row.size() != cols) {
      fail("dimension_mismatch", row_path,
           "expected " + std::to_string(cols) + " entries, found " + std::to_string(row.size()));
    }
    for (std::size_t k = 0; k < cols; ++k) out.push_back(require_number(row[k], row_path + "[" + std::to_string(k) + "]"));
  }
  return out;
}

Json rows_json(std::span<const double> values, std::size_t rows, std::size_t cols) {
  Json out = Json::array();
  for (std::size_t r = 0; r < rows; ++r) {
    Json row = Json::array();
    for (std::size_t k = 0; k < cols; ++k) row.push_back(values[r * cols + k]);
    out.push_back(std::move(row));
  }
  return out;
}

CouplingBlock parse_coupling(const Json& v, const InstanceDocument& doc, const std::string& path) {
  require_object(v, path);
  if (v.contains("metric")) {
    const std::string mpath = path + ".metric";
    const Json& m = require_object(v["metric"], mpath);
    MetricBlock block;
    block.points = require_string(require(m, "points", mpath), mpath + ".points");
    const GroundSet& points = at_path(mpath + ".points", [&]() -> const GroundSet& { return doc.ground_set(block.points); });
    block.distances = matrix_rows(require(m, "distances", mpath), points.size(), points.size(), mpath + ".distances");
    block.pseudometric = optional_bool(m, "pseudometric", false, mpath);
    block.scale = optional_number(m, "scale", 1.0, mpath);
    block.exponent = optional_number(m, "exponent", 1.0, mpath);
    block.negate = optional_bool(v, "negate", true, path);
    MetricInstance metric = at_path(mpath + ".distances", [&] {
      MetricInstance raw(points, block.distances, block.pseudometric);
      return block.scale == 1.0 && block.exponent == 1.0 ? raw : raw.rescaled(block.scale, block.exponent);
    });
    Coupling coupling = as_coupling(metric);
    if (!block.negate) coupling = Coupling(points, points, metric.distances());
    return CouplingBlock{block.points, block.points, block, std::move(metric), std::move(coupling)};
  }
  const std::string domain = require_string(require(v, "domain", path), path + ".domain");
  const std::string codomain = require_string(require(v, "codomain", path), path + ".codomain");
  const GroundSet& x = at_path(path + ".domain", [&]() -> const GroundSet& { return doc.ground_set(domain); });
  const GroundSet& y = at_path(path + ".codomain", [&]() -> const GroundSet& { return doc.ground_set(codomain); });
  std::vector<double> values = matrix_rows(require(v, "values", path), x.size(), y.size(), path + ".values");
  Coupling c = at_path(path + ".values", [&] { return Coupling(x, y, std::move(values)); });
  return CouplingBlock{domain, codomain, std::nullopt, std::nullopt, std::move(c)};
}

}  // namespace

const GroundSet& InstanceDocument::ground_set(std::string_view name) const {
  for (const auto& [n, g] : ground_sets)
    if (n == name) return g;
  throw InputError("unknown_ground_set", "no ground set named \"" + std::string(name) + "\"");
}

const CouplingBlock& InstanceDocument::require_coupling() const {
  if (!coupling) throw InputError("missing_coupling", "the instance has no coupling");
  return *coupling;
}

const NamedFunction& InstanceDocument::function(std::string_view name) const {
  for (const auto& f : functions)
    if (f.name == name) return f;
  throw InputError("unknown_function", "no function named \"" + std::string(name) + "\"");
}

const NamedMapping& InstanceDocument::mapping(std::string_view name) const {
  for (const auto& m : mappings)
    if (m.name == name) return m;
  throw InputError("unknown_mapping", "no mapping named \"" + std::string(name) + "\"");
}

const NamedSubset& InstanceDocument::subset(std::string_view name) const {
  for (const auto& s : subsets)
    if (s.name == name) return s;
  throw InputError("unknown_subset", "no subset named \"" + std::string(name) + "\"");
}

InstanceDocument parse_instance(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("malformed_json", std::string("$: ") + e.what());
  }
  require_object(root, "$");
  InstanceDocument doc;
  doc.schema_version = require_string(require(root, "schema_version", "$"), "$.schema_version");
  if (doc.schema_version != kSchemaVersion) {
    fail("unsupported_schema_version", "$.schema_version", "expected \"" + std::string(kSchemaVersion) + "\"");
  }

  const Json& sets = require_object(require(root, "ground_sets", "$"), "$.ground_sets");
  for (const auto& [name, labels] : sets.items()) {
    const std::string path = "$.ground_sets." + name;
    require_array(labels, path);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      names.push_back(require_string(labels[i], path + "[" + std::to_string(i) + "]"));
    }
    doc.ground_sets.emplace_back(name, at_path(path, [&] { return GroundSet(std::move(names)); }));
  }

  if (root.contains("coupling")) doc.coupling = parse_coupling(root["coupling"], doc, "$.coupling");

  if (root.contains("functions")) {
    for (const auto& [name, body] : require_object(root["functions"], "$.functions").items()) {
      const std::string path = "$.functions." + name;
      require_object(body, path);
      const std::string over = require_string(require(body, "over", path), path + ".over");
      const GroundSet& g = at_path(path + ".over", [&]() -> const GroundSet& { return doc.ground_set(over); });
      const Json& values = require_array(require(body, "values", path), path + ".values");
      if (values.size() != g.size()) {
        fail("dimension_mismatch", path + ".values",
             "expected " + std::to_string(g.size()) + " values, found " + std::to_string(values.size()));
      }
      std::vector<ExtReal> out;
      for (std::size_t i = 0; i < values.size(); ++i) {
        const std::string vpath = path + ".values[" + std::to_string(i) + "]";
        if (values[i].is_string()) {
          const std::string s = values[i].get<std::string>();
          if (s == "inf") {
            out.push_back(ExtReal::plus_infinity());
            continue;
          }
          if (s == "-inf") fail("minus_infinity_not_allowed", vpath, "-inf is not accepted in documents");
          fail("type_error", vpath, "expected a number or \"inf\"");
        }
        const double x = require_number(values[i], vpath);
        out.push_back(x);
      }
      doc.functions.push_back({name, over, ExtFunction(g, std::move(out))});
    }
  }

  if (root.contains("mappings")) {
    for (const auto& [name, body] : require_object(root["mappings"], "$.mappings").items()) {
      const std::string path = "$.mappings." + name;
      require_object(body, path);
      const std::string source = require_string(require(body, "source", path), path + ".source");
      const std::string target = require_string(require(body, "target", path), path + ".target");
      const GroundSet& x = at_path(path + ".source", [&]() -> const GroundSet& { return doc.ground_set(source); });
      const GroundSet& y = at_path(path + ".target", [&]() -> const GroundSet& { return doc.ground_set(target); });
      const Json& pairs = require_array(require(body, "pairs", path), path + ".pairs");
      std::vector<GraphPair> graph;
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        const std::string ppath = path + ".pairs[" + std::to_string(i) + "]";
        const Json& p = require_array(pairs[i], ppath);
        if (p.size() != 2) fail("type_error", ppath, "expected a [source, target] pair");
        graph.push_back({resolve(x, p[0], ppath + "[0]"), resolve(y, p[1], ppath + "[1]")});
      }
      doc.mappings.push_back({name, source, target, MultiMapping(x, y, std::move(graph))});
    }
  }

  if (root.contains("subsets")) {
    for (const auto& [name, body] : require_object(root["subsets"], "$.subsets").items()) {
      const std::string path = "$.subsets." + name;
      require_object(body, path);
      const std::string of = require_string(require(body, "of", path), path + ".of");
      const GroundSet& g = at_path(path + ".of", [&]() -> const GroundSet& { return doc.ground_set(of); });
      const Json& members = require_array(require(body, "members", path), path + ".members");
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < members.size(); ++i) {
        idx.push_back(resolve(g, members[i], path + ".members[" + std::to_string(i) + "]"));
      }
      doc.subsets.push_back({name, of, at_path(path + ".members", [&] { return IndexSubset(g, std::move(idx)); })});
    }
  }
  return doc;
}

InstanceDocument load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("unreadable_instance", "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string emit_instance(const InstanceDocument& doc) {
  Json root = Json::object();
  root["schema_version"] = doc.schema_version;
  Json sets = Json::object();
  for (const auto& [name, g] : doc.ground_sets) sets[name] = g.labels();
  root["ground_sets"] = std::move(sets);

  if (doc.coupling) {
    const CouplingBlock& cb = *doc.coupling;
    Json c = Json::object();
    if (cb.metric) {
      const MetricBlock& m = *cb.metric;
      const std::size_t n = doc.ground_set(m.points).size();
      Json metric = Json::object();
      metric["points"] = m.points;
      metric["distances"] = rows_json(m.distances, n, n);
      metric["pseudometric"] = m.pseudometric;
      metric["scale"] = m.scale;
      metric["exponent"] = m.exponent;
      c["metric"] = std::move(metric);
      c["negate"] = m.negate;
    } else {
      c["domain"] = cb.domain;
      c["codomain"] = cb.codomain;
      c["values"] = rows_json(cb.coupling.values(), cb.coupling.domain().size(), cb.coupling.codomain().size());
    }
    root["coupling"] = std::move(c);
  }

  Json functions = Json::object();
  for (const auto& f : doc.functions) {
    functions[f.name] = Json{{"over", f.over}, {"values", function_json(f.values)}};
  }
  root["functions"] = std::move(functions);

  Json mappings = Json::object();
  for (const auto& m : doc.mappings) {
    Json pairs = Json::array();
    for (const GraphPair& p : m.mapping.graph()) {
      pairs.push_back(Json::array({m.mapping.source().label(p.source), m.mapping.target().label(p.target)}));
    }
    mappings[m.name] = Json{{"source", m.source}, {"target", m.target}, {"pairs", std::move(pairs)}};
  }
  root["mappings"] = std::move(mappings);

  Json subsets = Json::object();
  for (const auto& s : doc.subsets) {
    Json members = Json::array();
    for (std::size_t i : s.subset.members()) members.push_back(s.subset.parent().label(i));
    subsets[s.name] = Json{{"of", s.of}, {"members", std::move(members)}};
  }
  root["subsets"] = std::move(subsets);
  return to_json_text(root);
}

}  // namespace abconvex
