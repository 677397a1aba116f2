#pragma once

#include "itp/errors.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>

// Field access with error messages that name the offending path, shared by
// every JSON document parser in the library.
namespace itp::jsonu {

[[noreturn]] inline void fail(const std::string& where, const std::string& what) {
  throw InputError("parse_error", where + ": " + what);
}

inline const nlohmann::json& require(const nlohmann::json& obj, const char* key,
                                     const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

inline std::string require_string(const nlohmann::json& obj, const char* key,
                                  const std::string& where) {
  const nlohmann::json& value = require(obj, key, where);
  if (!value.is_string()) fail(where, std::string("field '") + key + "' must be a string");
  return value.get<std::string>();
}

inline bool require_bool(const nlohmann::json& obj, const char* key, const std::string& where) {
  const nlohmann::json& value = require(obj, key, where);
  if (!value.is_boolean()) fail(where, std::string("field '") + key + "' must be a boolean");
  return value.get<bool>();
}

inline int64_t require_int(const nlohmann::json& obj, const char* key, const std::string& where) {
  const nlohmann::json& value = require(obj, key, where);
  if (!value.is_number_integer()) fail(where, std::string("field '") + key + "' must be an integer");
  return value.get<int64_t>();
}

inline double require_double(const nlohmann::json& obj, const char* key, const std::string& where) {
  const nlohmann::json& value = require(obj, key, where);
  if (!value.is_number()) fail(where, std::string("field '") + key + "' must be a number");
  return value.get<double>();
}

} // namespace itp::jsonu
