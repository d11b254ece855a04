// Copyright 2026 The RoboGest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ROBOGEST_CANONICAL_JSON_HPP_
#define ROBOGEST_CANONICAL_JSON_HPP_

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "robogest/errors.hpp"

// Canonical JSON rendering: the byte form all on-disk documents are written
// in. Keys sorted ascending, real numbers quantized to 9 decimal places with
// trailing zeros trimmed (at least one fractional digit kept), counts as
// plain integers, two-space indentation with scalar arrays inlined, single
// trailing newline. serialize(parse(serialize(x))) is byte-identical to
// serialize(x).

namespace robogest {

// Quantized decimal rendering of a real value. "15.0", "0.066666667",
// "-0.03". Negative zero normalizes to "0.0". Parsing the result and
// re-rendering reproduces the same string.
inline std::string canonical_number(double value) {
  if (!std::isfinite(value)) {
    throw SchemaError("nonfinite_value",
                      "cannot serialize a non-finite number");
  }
  if (value == 0.0) value = 0.0;  // collapse -0.0
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.9f", value);
  std::string s(buf);
  const auto dot = s.find('.');
  auto last = s.find_last_not_of('0');
  if (last == dot) ++last;  // keep one fractional digit
  s.erase(last + 1);
  if (s == "-0.0") s = "0.0";  // negative values inside the quantum
  return s;
}

namespace detail {

inline void escape_string(const std::string& in, std::string& out) {
  out += '"';
  for (const char c : in) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

inline bool is_scalar(const nlohmann::json& v) {
  return !v.is_object() && !v.is_array();
}

inline void write_canonical(const nlohmann::json& v, std::string& out,
                            int indent) {
  const std::string pad(indent, ' ');
  const std::string pad_in(indent + 2, ' ');
  switch (v.type()) {
    case nlohmann::json::value_t::null:
      out += "null";
      break;
    case nlohmann::json::value_t::boolean:
      out += v.get<bool>() ? "true" : "false";
      break;
    case nlohmann::json::value_t::number_integer:
      out += std::to_string(v.get<std::int64_t>());
      break;
    case nlohmann::json::value_t::number_unsigned:
      out += std::to_string(v.get<std::uint64_t>());
      break;
    case nlohmann::json::value_t::number_float:
      out += canonical_number(v.get<double>());
      break;
    case nlohmann::json::value_t::string:
      escape_string(v.get<std::string>(), out);
      break;
    case nlohmann::json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        break;
      }
      bool all_scalar = true;
      for (const auto& e : v) all_scalar = all_scalar && is_scalar(e);
      if (all_scalar) {
        out += '[';
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i) out += ", ";
          write_canonical(v[i], out, 0);
        }
        out += ']';
      } else {
        out += "[\n";
        for (std::size_t i = 0; i < v.size(); ++i) {
          out += pad_in;
          write_canonical(v[i], out, indent + 2);
          if (i + 1 < v.size()) out += ',';
          out += '\n';
        }
        out += pad + ']';
      }
      break;
    }
    case nlohmann::json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        break;
      }
      out += "{\n";
      std::size_t i = 0;
      // nlohmann objects iterate in ascending key order.
      for (auto it = v.begin(); it != v.end(); ++it, ++i) {
        out += pad_in;
        escape_string(it.key(), out);
        out += ": ";
        write_canonical(it.value(), out, indent + 2);
        if (i + 1 < v.size()) out += ',';
        out += '\n';
      }
      out += pad + '}';
      break;
    }
    default:
      throw SchemaError("bad_type", "unsupported JSON value type");
  }
}

}  // namespace detail

// Renders a document in canonical form, newline-terminated.
inline std::string canonical_json(const nlohmann::json& v) {
  std::string out;
  detail::write_canonical(v, out, 0);
  out += '\n';
  return out;
}

}  // namespace robogest

#endif  // ROBOGEST_CANONICAL_JSON_HPP_
