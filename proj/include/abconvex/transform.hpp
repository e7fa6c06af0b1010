#pragma once

#include "abconvex/instance.hpp"

namespace abconvex {

/// f^c(y) = max_x c(x, y) - f(x) for f indexed by c.domain().
///
/// Points where f = +inf are skipped; if every point is skipped the result is
/// -inf everywhere. A -inf value of f makes the result +inf.
ExtFunction c_transform(const ExtFunction& f, const Coupling& c);

/// g^c(x) = max_y c(x, y) - g(y) for g indexed by c.codomain().
ExtFunction c_transform_back(const ExtFunction& g, const Coupling& c);

/// f^{cc}, the largest c-convex function below f. Requires f proper.
ExtFunction c_convexify(const ExtFunction& f, const Coupling& c);

/// f^{cc} = f up to eps (infinite entries must match exactly). Requires f proper.
bool is_c_convex(const ExtFunction& f, const Coupling& c, double eps = kDefaultEpsilon);

/// The c-subdifferential as a mapping X => Y.
struct SubdiffGraph {
  MultiMapping mapping;
};

/// All (x, y) with f(x) + f^c(y) = c(x, y) within eps. Requires f proper.
SubdiffGraph c_subdifferential(const ExtFunction& f, const Coupling& c, double eps = kDefaultEpsilon);

/// G(M) is contained in the c-subdifferential of f. Requires f and M proper.
bool is_antiderivative(const ExtFunction& f, const MultiMapping& m, const Coupling& c,
                       double eps = kDefaultEpsilon);

/// Throws DomainError("improper_function") unless f is proper.
void require_proper(const ExtFunction& f, std::string_view what);
/// Throws DomainError("improper_mapping") unless M is proper.
void require_proper(const MultiMapping& m, std::string_view what);

}  // namespace abconvex
