#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "abconvex/errors.hpp"
#include "abconvex/ext_real.hpp"

namespace abconvex {

// Absolute tolerance for equality tests on finite reals. Order comparisons
// elsewhere are exact.
inline constexpr double kDefaultEpsilon = 1e-9;

/// A finite, explicitly enumerated ground set. Copies share the label table,
/// so passing a GroundSet by value is cheap.
class GroundSet {
 public:
  explicit GroundSet(std::vector<std::string> labels);

  /// Labels "0", "1", ..., "n-1".
  static GroundSet range(std::size_t n);

  std::size_t size() const { return impl_->labels.size(); }
  const std::string& label(std::size_t i) const { return impl_->labels.at(i); }
  const std::vector<std::string>& labels() const { return impl_->labels; }

  std::optional<std::size_t> find(std::string_view label) const;
  /// Throws InputError("unknown_label") when absent.
  std::size_t index_of(std::string_view label) const;

  friend bool operator==(const GroundSet& a, const GroundSet& b) {
    return a.impl_ == b.impl_ || a.impl_->labels == b.impl_->labels;
  }

 private:
  struct Impl {
    std::vector<std::string> labels;
    std::unordered_map<std::string, std::size_t> index;
  };
  std::shared_ptr<const Impl> impl_;
};

/// Subset S of a ground set; nonempty, members sorted and distinct.
class IndexSubset {
 public:
  IndexSubset(GroundSet parent, std::vector<std::size_t> members);
  static IndexSubset all(GroundSet parent);

  const GroundSet& parent() const { return parent_; }
  const std::vector<std::size_t>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool contains(std::size_t i) const;

  friend bool operator==(const IndexSubset&, const IndexSubset&) = default;

 private:
  GroundSet parent_;
  std::vector<std::size_t> members_;
};

/// The coupling c : X x Y -> R as a dense row-major matrix of finite reals.
class Coupling {
 public:
  Coupling(GroundSet domain, GroundSet codomain, std::vector<double> row_major);

  const GroundSet& domain() const { return domain_; }
  const GroundSet& codomain() const { return codomain_; }
  double operator()(std::size_t x, std::size_t y) const { return values_[x * codomain_.size() + y]; }
  std::span<const double> values() const { return values_; }

  /// c'(y, x) = c(x, y), a coupling on Y x X.
  Coupling transposed() const;

 private:
  GroundSet domain_;
  GroundSet codomain_;
  std::vector<double> values_;
};

/// A function from a ground set into [-inf, +inf].
class ExtFunction {
 public:
  ExtFunction(GroundSet index, std::vector<ExtReal> values);
  ExtFunction(GroundSet index, const std::vector<double>& values);
  ExtFunction(GroundSet index, std::initializer_list<double> values)
      : ExtFunction(std::move(index), std::vector<double>(values)) {}
  static ExtFunction constant(GroundSet index, ExtReal value);

  const GroundSet& index() const { return index_; }
  std::size_t size() const { return values_.size(); }
  ExtReal operator[](std::size_t i) const { return values_[i]; }
  ExtReal& operator[](std::size_t i) { return values_[i]; }
  const std::vector<ExtReal>& values() const { return values_; }

  /// No value is -inf and at least one value is finite.
  bool is_proper() const;
  bool is_finite_everywhere() const;
  /// Indices with a finite value.
  std::vector<std::size_t> domain() const;
  /// Raw doubles (IEEE infinities for infinite entries).
  std::vector<double> to_doubles() const;

  friend ExtFunction operator+(const ExtFunction& f, double shift);
  friend bool operator==(const ExtFunction&, const ExtFunction&) = default;

 private:
  GroundSet index_;
  std::vector<ExtReal> values_;
};

/// Sup-norm distance over points where both values are finite; +inf when the
/// two functions disagree on which points are infinite.
double max_abs_difference(const ExtFunction& f, const ExtFunction& g);
bool approx_equal(const ExtFunction& f, const ExtFunction& g, double eps = kDefaultEpsilon);
/// f <= g + eps pointwise.
bool pointwise_le(const ExtFunction& f, const ExtFunction& g, double eps = kDefaultEpsilon);
ExtFunction pointwise_max(const ExtFunction& f, const ExtFunction& g);
ExtFunction pointwise_min(const ExtFunction& f, const ExtFunction& g);

struct GraphPair {
  std::size_t source = 0;
  std::size_t target = 0;
  friend auto operator<=>(const GraphPair&, const GraphPair&) = default;
};

/// A multivalued mapping M : source => target stored as its graph.
class MultiMapping {
 public:
  MultiMapping(GroundSet source, GroundSet target, std::vector<GraphPair> graph);
  static MultiMapping identity(GroundSet points);
  static MultiMapping identity_on(const IndexSubset& subset);

  const GroundSet& source() const { return source_; }
  const GroundSet& target() const { return target_; }
  const std::vector<GraphPair>& graph() const { return graph_; }
  std::size_t size() const { return graph_.size(); }

  bool is_proper() const { return !graph_.empty(); }
  bool contains(std::size_t x, std::size_t y) const;
  std::vector<std::size_t> domain() const;
  std::vector<std::size_t> image() const;
  /// M(x), sorted.
  std::vector<std::size_t> at(std::size_t x) const;
  /// M(S) for S a subset of the source set.
  std::vector<std::size_t> image_of(const IndexSubset& subset) const;
  /// Graph with pairs reversed.
  MultiMapping inverse() const;
  MultiMapping with_pair(GraphPair pair) const;
  bool is_subset_of(const MultiMapping& other) const;

  friend bool operator==(const MultiMapping&, const MultiMapping&) = default;

 private:
  GroundSet source_;
  GroundSet target_;
  std::vector<GraphPair> graph_;
};

/// iota_S: 0 on S, +inf elsewhere.
ExtFunction indicator(const IndexSubset& subset);
/// f + iota_S.
ExtFunction restrict_sum(const ExtFunction& f, const IndexSubset& subset);
/// lambda * g + (1 - lambda) * h with lambda strictly inside (0, 1).
ExtFunction convex_combination(const ExtFunction& g, const ExtFunction& h, double lambda);

/// Throws InputError("index_mismatch") unless the two ground sets agree.
void require_same_index(const GroundSet& a, const GroundSet& b, std::string_view what);

}  // namespace abconvex
