#pragma once

// Strict-profile JSON field helpers shared by the document and report
// codecs: integers only, unknown fields rejected, errors carry field paths.

#include <algorithm>
#include <limits>
#include <string>

#include "gradering/errors.hpp"
#include "gradering/numeric.hpp"
#include "json.hpp"

namespace gradering::jsonu {

using json = nlohmann::ordered_json;

[[noreturn]] inline void bad(const std::string& path, const std::string& what) {
  throw SpecError(path, what);
}

inline std::string idx(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

inline const json& member(const json& obj, const char* key,
                          const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) bad(path, std::string("missing field '") + key + "'");
  return *it;
}

inline const json* opt_member(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

inline void require_object(const json& v, const std::string& path) {
  if (!v.is_object()) bad(path, "expected an object");
}

inline void require_array(const json& v, const std::string& path) {
  if (!v.is_array()) bad(path, "expected an array");
}

inline void check_keys(const json& obj, const std::string& path,
                       std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* k : allowed) known = known || item.key() == k;
    if (!known) bad(path + "." + item.key(), "unknown field");
  }
}

inline u64 as_u64(const json& v, const std::string& path, u64 lo, u64 hi) {
  if (!v.is_number_integer() || v.is_number_float())
    bad(path, "expected an integer");
  if (v.is_number_unsigned()) {
    u64 x = v.get<u64>();
    if (x < lo || x > hi)
      bad(path, "value " + std::to_string(x) + " out of range [" +
                    std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return x;
  }
  i64 x = v.get<i64>();
  if (x < 0 || static_cast<u64>(x) < lo || static_cast<u64>(x) > hi)
    bad(path, "value " + std::to_string(x) + " out of range [" +
                  std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<u64>(x);
}

inline i64 as_i64(const json& v, const std::string& path) {
  if (!v.is_number_integer() || v.is_number_float())
    bad(path, "expected an integer");
  return v.get<i64>();
}

inline bool as_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) bad(path, "expected a boolean");
  return v.get<bool>();
}

inline std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) bad(path, "expected a string");
  return v.get<std::string>();
}

/// json::parse with the error translated to ParseError line/column.
inline json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    std::size_t byte = err.byte > 0 ? err.byte - 1 : 0;
    byte = std::min(byte, text.size());
    u32 line = 1, column = 1;
    for (std::size_t i = 0; i < byte; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(line, column, "malformed JSON document");
  }
}

} // namespace gradering::jsonu
