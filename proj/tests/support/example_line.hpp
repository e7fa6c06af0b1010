#pragma once

#include <cmath>
#include <vector>

#include "abconvex/instance.hpp"

namespace abconvex::testing {

// X = {-2, ..., 2}, Y = {a, b}, c(x, a) = x, c(x, b) = -x.
inline Coupling line_coupling() {
  std::vector<double> v;
  for (int x = -2; x <= 2; ++x) {
    v.push_back(x);
    v.push_back(-x);
  }
  return Coupling(GroundSet({"-2", "-1", "0", "1", "2"}), GroundSet({"a", "b"}), v);
}

template <typename F>
ExtFunction on_line(const Coupling& c, F f) {
  std::vector<double> v;
  for (int x = -2; x <= 2; ++x) v.push_back(f(static_cast<double>(x)));
  return ExtFunction(c.domain(), v);
}

// M = {(0, a), (1, a), (2, a)}.
inline MultiMapping line_mapping(const Coupling& c) { return MultiMapping(c.domain(), c.codomain(), {{2, 0}, {3, 0}, {4, 0}}); }

inline IndexSubset line_sites(const Coupling& c) { return IndexSubset(c.domain(), {2, 3, 4}); }

}  // namespace abconvex::testing
