#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "abconvex/instance.hpp"
#include "abconvex/lipschitz.hpp"

namespace abconvex {

inline constexpr std::string_view kSchemaVersion = "1";

/// Coupling given as c = -d (or c = d with negate false) for a metric block.
struct MetricBlock {
  std::string points;
  std::vector<double> distances;  // as written, before rescaling
  bool pseudometric = false;
  double scale = 1.0;
  double exponent = 1.0;
  bool negate = true;
};

struct CouplingBlock {
  std::string domain;
  std::string codomain;
  std::optional<MetricBlock> metric;
  std::optional<MetricInstance> metric_instance;  // rescaled metric
  Coupling coupling;
};

struct NamedFunction {
  std::string name;
  std::string over;
  ExtFunction values;
};

struct NamedMapping {
  std::string name;
  std::string source;
  std::string target;
  MultiMapping mapping;
};

struct NamedSubset {
  std::string name;
  std::string of;
  IndexSubset subset;
};

/// A validated instance document. Every container keeps document order.
struct InstanceDocument {
  std::string schema_version{kSchemaVersion};
  std::vector<std::pair<std::string, GroundSet>> ground_sets;
  std::optional<CouplingBlock> coupling;
  std::vector<NamedFunction> functions;
  std::vector<NamedMapping> mappings;
  std::vector<NamedSubset> subsets;

  const GroundSet& ground_set(std::string_view name) const;
  /// The coupling; InputError("missing_coupling") when absent.
  const CouplingBlock& require_coupling() const;
  /// InputError("unknown_function" / "unknown_mapping" / "unknown_subset").
  const NamedFunction& function(std::string_view name) const;
  const NamedMapping& mapping(std::string_view name) const;
  const NamedSubset& subset(std::string_view name) const;
};

/// Parses and validates. Errors are InputErrors whose message starts with
/// the JSON path of the offending node, e.g. "$.functions.f.values[3]: ...".
InstanceDocument parse_instance(std::string_view text);
InstanceDocument load_instance(const std::filesystem::path& path);

/// Canonical JSON text of the document.
std::string emit_instance(const InstanceDocument& doc);

}  // namespace abconvex
