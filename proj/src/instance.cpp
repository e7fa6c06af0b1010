#include "abconvex/instance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

namespace abconvex {

std::string ExtReal::to_string() const {
  if (is_plus_infinity()) return "inf";
  if (is_minus_infinity()) return "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v_);
  return buf;
}

GroundSet::GroundSet(std::vector<std::string> labels) {
  if (labels.empty()) throw InputError("empty_ground_set", "ground sets must be nonempty");
  auto impl = std::make_shared<Impl>();
  impl->index.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!impl->index.emplace(labels[i], i).second) {
      throw InputError("duplicate_label", "duplicate label '" + labels[i] + "'");
    }
  }
  impl->labels = std::move(labels);
  impl_ = std::move(impl);
}

GroundSet GroundSet::range(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return GroundSet(std::move(labels));
}

std::optional<std::size_t> GroundSet::find(std::string_view label) const {
  auto it = impl_->index.find(std::string(label));
  if (it == impl_->index.end()) return std::nullopt;
  return it->second;
}

std::size_t GroundSet::index_of(std::string_view label) const {
  if (auto i = find(label)) return *i;
  throw InputError("unknown_label", "unknown label '" + std::string(label) + "'");
}

void require_same_index(const GroundSet& a, const GroundSet& b, std::string_view what) {
  if (!(a == b)) throw InputError("index_mismatch", "index mismatch: " + std::string(what));
}

// IndexSubset

IndexSubset::IndexSubset(GroundSet parent, std::vector<std::size_t> members)
    : parent_(std::move(parent)), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (members_.empty()) throw InputError("empty_subset", "subsets must be nonempty");
  if (members_.back() >= parent_.size()) throw InputError("index_out_of_range", "subset member out of range");
}

IndexSubset IndexSubset::all(GroundSet parent) {
  std::vector<std::size_t> members(parent.size());
  for (std::size_t i = 0; i < members.size(); ++i) members[i] = i;
  return IndexSubset(std::move(parent), std::move(members));
}

bool IndexSubset::contains(std::size_t i) const {
  return std::binary_search(members_.begin(), members_.end(), i);
}

// Coupling

Coupling::Coupling(GroundSet domain, GroundSet codomain, std::vector<double> row_major)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), values_(std::move(row_major)) {
  if (values_.size() != domain_.size() * codomain_.size()) {
    throw InputError("dimension_mismatch", "coupling matrix has " + std::to_string(values_.size()) +
                                               " entries, expected " +
                                               std::to_string(domain_.size() * codomain_.size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw InputError("nonfinite_coupling", "coupling entries must be finite");
  }
}

Coupling Coupling::transposed() const {
  const std::size_t nx = domain_.size(), ny = codomain_.size();
  std::vector<double> t(values_.size());
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y) t[y * nx + x] = values_[x * ny + y];
  return Coupling(codomain_, domain_, std::move(t));
}

// ExtFunction

ExtFunction::ExtFunction(GroundSet index, std::vector<ExtReal> values)
    : index_(std::move(index)), values_(std::move(values)) {
  if (values_.size() != index_.size()) {
    throw InputError("dimension_mismatch", "function has " + std::to_string(values_.size()) +
                                               " values for a ground set of size " +
                                               std::to_string(index_.size()));
  }
}

ExtFunction::ExtFunction(GroundSet index, const std::vector<double>& values)
    : ExtFunction(std::move(index), std::vector<ExtReal>(values.begin(), values.end())) {}

ExtFunction ExtFunction::constant(GroundSet index, ExtReal value) {
  std::vector<ExtReal> values(index.size(), value);
  return ExtFunction(std::move(index), std::move(values));
}

bool ExtFunction::is_proper() const {
  bool any_finite = false;
  for (ExtReal v : values_) {
    if (v.is_minus_infinity()) return false;
    any_finite = any_finite || v.is_finite();
  }
  return any_finite;
}

bool ExtFunction::is_finite_everywhere() const {
  return std::all_of(values_.begin(), values_.end(), [](ExtReal v) { return v.is_finite(); });
}

std::vector<std::size_t> ExtFunction::domain() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (values_[i].is_finite()) out.push_back(i);
  return out;
}

std::vector<double> ExtFunction::to_doubles() const {
  std::vector<double> out(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) out[i] = values_[i].value();
  return out;
}

ExtFunction operator+(const ExtFunction& f, double shift) {
  std::vector<ExtReal> out(f.values_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.values_[i] + ExtReal(shift);
  return ExtFunction(f.index_, std::move(out));
}

double max_abs_difference(const ExtFunction& f, const ExtFunction& g) {
  require_same_index(f.index(), g.index(), "max_abs_difference");
  double worst = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!f[i].is_finite() || !g[i].is_finite()) {
      if (!(f[i] == g[i])) return std::numeric_limits<double>::infinity();
      continue;
    }
    worst = std::max(worst, std::abs(f[i].value() - g[i].value()));
  }
  return worst;
}

bool approx_equal(const ExtFunction& f, const ExtFunction& g, double eps) {
  return max_abs_difference(f, g) <= eps;
}

bool pointwise_le(const ExtFunction& f, const ExtFunction& g, double eps) {
  require_same_index(f.index(), g.index(), "pointwise_le");
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i].is_finite() && g[i].is_finite()) {
      if (f[i].value() > g[i].value() + eps) return false;
    } else if (f[i] > g[i]) {
      return false;
    }
  }
  return true;
}

ExtFunction pointwise_max(const ExtFunction& f, const ExtFunction& g) {
  require_same_index(f.index(), g.index(), "pointwise_max");
  std::vector<ExtReal> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = max(f[i], g[i]);
  return ExtFunction(f.index(), std::move(out));
}

ExtFunction pointwise_min(const ExtFunction& f, const ExtFunction& g) {
  require_same_index(f.index(), g.index(), "pointwise_min");
  std::vector<ExtReal> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = min(f[i], g[i]);
  return ExtFunction(f.index(), std::move(out));
}

// MultiMapping

MultiMapping::MultiMapping(GroundSet source, GroundSet target, std::vector<GraphPair> graph)
    : source_(std::move(source)), target_(std::move(target)), graph_(std::move(graph)) {
  for (const GraphPair& p : graph_) {
    if (p.source >= source_.size() || p.target >= target_.size()) {
      throw InputError("index_out_of_range", "mapping pair out of range");
    }
  }
  std::sort(graph_.begin(), graph_.end());
  graph_.erase(std::unique(graph_.begin(), graph_.end()), graph_.end());
}

MultiMapping MultiMapping::identity(GroundSet points) {
  return identity_on(IndexSubset::all(std::move(points)));
}

MultiMapping MultiMapping::identity_on(const IndexSubset& subset) {
  std::vector<GraphPair> graph;
  for (std::size_t s : subset.members()) graph.push_back({s, s});
  return MultiMapping(subset.parent(), subset.parent(), std::move(graph));
}

bool MultiMapping::contains(std::size_t x, std::size_t y) const {
  return std::binary_search(graph_.begin(), graph_.end(), GraphPair{x, y});
}

std::vector<std::size_t> MultiMapping::domain() const {
  std::vector<std::size_t> out;
  for (const GraphPair& p : graph_)
    if (out.empty() || out.back() != p.source) out.push_back(p.source);
  return out;
}

std::vector<std::size_t> MultiMapping::image() const {
  std::set<std::size_t> seen;
  for (const GraphPair& p : graph_) seen.insert(p.target);
  return {seen.begin(), seen.end()};
}

std::vector<std::size_t> MultiMapping::at(std::size_t x) const {
  std::vector<std::size_t> out;
  auto it = std::lower_bound(graph_.begin(), graph_.end(), GraphPair{x, 0});
  for (; it != graph_.end() && it->source == x; ++it) out.push_back(it->target);
  return out;
}

std::vector<std::size_t> MultiMapping::image_of(const IndexSubset& subset) const {
  require_same_index(subset.parent(), source_, "image_of");
  std::set<std::size_t> seen;
  for (const GraphPair& p : graph_)
    if (subset.contains(p.source)) seen.insert(p.target);
  return {seen.begin(), seen.end()};
}

MultiMapping MultiMapping::inverse() const {
  std::vector<GraphPair> reversed;
  reversed.reserve(graph_.size());
  for (const GraphPair& p : graph_) reversed.push_back({p.target, p.source});
  return MultiMapping(target_, source_, std::move(reversed));
}

MultiMapping MultiMapping::with_pair(GraphPair pair) const {
  std::vector<GraphPair> graph = graph_;
  graph.push_back(pair);
  return MultiMapping(source_, target_, std::move(graph));
}

bool MultiMapping::is_subset_of(const MultiMapping& other) const {
  require_same_index(source_, other.source_, "mapping source");
  require_same_index(target_, other.target_, "mapping target");
  return std::includes(other.graph_.begin(), other.graph_.end(), graph_.begin(), graph_.end());
}

// Operations

ExtFunction indicator(const IndexSubset& subset) {
  std::vector<ExtReal> values(subset.parent().size(), ExtReal::plus_infinity());
  for (std::size_t s : subset.members()) values[s] = 0.0;
  return ExtFunction(subset.parent(), std::move(values));
}

ExtFunction restrict_sum(const ExtFunction& f, const IndexSubset& subset) {
  require_same_index(f.index(), subset.parent(), "restrict_sum");
  std::vector<ExtReal> values(f.size(), ExtReal::plus_infinity());
  for (std::size_t s : subset.members()) values[s] = f[s];
  return ExtFunction(f.index(), std::move(values));
}

ExtFunction convex_combination(const ExtFunction& g, const ExtFunction& h, double lambda) {
  require_same_index(g.index(), h.index(), "convex_combination");
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw InputError("invalid_lambda", "convex combination weight must lie strictly inside (0, 1)");
  }
  std::vector<ExtReal> values(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) values[i] = lambda * g[i] + (1.0 - lambda) * h[i];
  return ExtFunction(g.index(), std::move(values));
}

}  // namespace abconvex
