#include "json_text.hpp"

#include <cstdio>

namespace abconvex {

namespace {

bool is_scalar(const OrderedJson& v) { return !v.is_array() && !v.is_object(); }

void write_scalar(const OrderedJson& v, std::string& out) {
  if (v.is_number_float()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
    out += buf;
  } else {
    out += v.dump();
  }
}

void write(const OrderedJson& v, int depth, std::string& out) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close_pad(2 * depth, ' ');
  if (v.is_object()) {
    if (v.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (const auto& [key, item] : v.items()) {
      if (!first) out += ",\n";
      first = false;
      out += pad + OrderedJson(key).dump() + ": ";
      write(item, depth + 1, out);
    }
    out += "\n" + close_pad + "}";
  } else if (v.is_array()) {
    bool flat = true;
    for (const auto& item : v) flat = flat && is_scalar(item);
    if (flat) {
      out += "[";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) out += ", ";
        write_scalar(v[i], out);
      }
      out += "]";
      return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i > 0) out += ",\n";
      out += pad;
      write(v[i], depth + 1, out);
    }
    out += "\n" + close_pad + "]";
  } else {
    write_scalar(v, out);
  }
}

}  // namespace

std::string to_json_text(const OrderedJson& value) {
  std::string out;
  write(value, 0, out);
  out += "\n";
  return out;
}

OrderedJson ext_real_json(ExtReal v) {
  if (v.is_minus_infinity()) throw DomainError("minus_infinity_output", "-inf cannot be emitted");
  if (v.is_plus_infinity()) return "inf";
  return v.value();
}

OrderedJson function_json(const ExtFunction& f) {
  OrderedJson arr = OrderedJson::array();
  for (std::size_t i = 0; i < f.size(); ++i) arr.push_back(ext_real_json(f[i]));
  return arr;
}

}  // namespace abconvex
