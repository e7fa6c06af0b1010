#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <string>

#include "abconvex/errors.hpp"

namespace abconvex {

// A value in [-inf, +inf]. NaN is never representable and the sum
// (+inf) + (-inf) raises instead of producing one.
class ExtReal {
 public:
  constexpr ExtReal() = default;
  ExtReal(double v) : v_(v) {  // NOLINT(google-explicit-constructor)
    if (std::isnan(v)) throw InputError("nan_value", "ExtReal cannot hold NaN");
  }

  static ExtReal plus_infinity() { return ExtReal(std::numeric_limits<double>::infinity()); }
  static ExtReal minus_infinity() { return ExtReal(-std::numeric_limits<double>::infinity()); }

  bool is_finite() const { return std::isfinite(v_); }
  bool is_plus_infinity() const { return v_ == std::numeric_limits<double>::infinity(); }
  bool is_minus_infinity() const { return v_ == -std::numeric_limits<double>::infinity(); }

  // Raw value; infinities map to IEEE infinities.
  double value() const { return v_; }

  friend ExtReal operator+(ExtReal a, ExtReal b) {
    if ((a.is_plus_infinity() && b.is_minus_infinity()) ||
        (a.is_minus_infinity() && b.is_plus_infinity())) {
      throw DomainError("undefined_sum", "undefined extended-real sum (+inf) + (-inf)");
    }
    return ExtReal(a.v_ + b.v_);
  }
  friend ExtReal operator-(ExtReal a) { return ExtReal(-a.v_); }
  friend ExtReal operator-(ExtReal a, ExtReal b) { return a + (-b); }
  // Scaling by a strictly positive real keeps infinities infinite.
  friend ExtReal operator*(double lambda, ExtReal a) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
      throw InputError("invalid_scale", "extended reals may only be scaled by a positive finite real");
    }
    return ExtReal(lambda * a.v_);
  }

  friend bool operator==(ExtReal a, ExtReal b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(ExtReal a, ExtReal b) {
    if (a.v_ < b.v_) return std::strong_ordering::less;
    if (a.v_ > b.v_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::string to_string() const;

 private:
  double v_ = 0.0;
};

inline ExtReal max(ExtReal a, ExtReal b) { return a < b ? b : a; }
inline ExtReal min(ExtReal a, ExtReal b) { return b < a ? b : a; }

// Equality used throughout the engine: infinities must match exactly,
// finite values may differ by at most eps.
inline bool approx_equal(ExtReal a, ExtReal b, double eps) {
  if (!a.is_finite() || !b.is_finite()) return a == b;
  return std::abs(a.value() - b.value()) <= eps;
}

}  // namespace abconvex
