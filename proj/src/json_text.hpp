#pragma once

#include <string>

#include <json.hpp>

#include "abconvex/instance.hpp"

namespace abconvex {

using OrderedJson = nlohmann::ordered_json;

/// Deterministic pretty printer: two-space indent, arrays of scalars on one
/// line, floating-point numbers with 17 significant digits.
std::string to_json_text(const OrderedJson& value);

/// Finite values as numbers, +inf as "inf". A -inf value raises
/// DomainError("minus_infinity_output").
OrderedJson ext_real_json(ExtReal v);
OrderedJson function_json(const ExtFunction& f);

}  // namespace abconvex
