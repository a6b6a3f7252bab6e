#pragma once

#include "nck/fg_ab_group.hpp"

#include <json.hpp>

#include <limits>
#include <stdexcept>
#include <string>

namespace nck {

using Json = nlohmann::json;  // std::map-backed, so dumps have sorted keys

/// Input validation failure; `field` is a JSON-pointer-like path to the offending value.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(const std::string& field, const std::string& message)
      : std::invalid_argument(field.empty() ? message : field + ": " + message), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

inline Json integer_to_json(const Integer& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return Json(static_cast<long long>(x));
  return Json(x.str());
}

inline Integer integer_from_json(const Json& j, const std::string& field) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  if (j.is_number_unsigned()) return Integer(j.get<unsigned long long>());
  if (j.is_string()) {
    try {
      return parse_integer(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ValidationError(field, e.what());
    }
  }
  throw ValidationError(field, "expected an integer, got " + std::string(j.type_name()));
}

inline long long small_int_from_json(const Json& j, const std::string& field, long long lo = 0,
                                     long long hi = std::numeric_limits<int>::max()) {
  if (!j.is_number_integer()) throw ValidationError(field, "expected an integer, got " + std::string(j.type_name()));
  long long v = j.get<long long>();
  if (v < lo || v > hi)
    throw ValidationError(field, "value " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                                     std::to_string(hi) + "]");
  return v;
}

inline const Json& require(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw ValidationError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(path + "." + key, "missing");
  return *it;
}

inline std::string require_string(const Json& obj, const char* key, const std::string& path) {
  const Json& v = require(obj, key, path);
  if (!v.is_string()) throw ValidationError(path + "." + key, "expected a string");
  return v.get<std::string>();
}

inline Coords coords_from_json(const Json& j, const std::string& field) {
  if (!j.is_array()) throw ValidationError(field, "expected an array of integers");
  Coords v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(integer_from_json(j[i], field + "[" + std::to_string(i) + "]"));
  return v;
}

inline Json coords_to_json(const Coords& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(integer_to_json(x));
  return a;
}

inline Json group_to_json(const FgAbGroup& g) {
  Json j;
  j["free_rank"] = g.free_rank();
  j["torsion"] = coords_to_json(g.torsion());
  return j;
}

inline FgAbGroup group_from_json(const Json& j, const std::string& path) {
  auto rank = small_int_from_json(require(j, "free_rank", path), path + ".free_rank");
  Coords torsion;
  if (j.contains("torsion")) torsion = coords_from_json(j["torsion"], path + ".torsion");
  try {
    return FgAbGroup(static_cast<std::size_t>(rank), torsion);
  } catch (const std::invalid_argument& e) {
    std::string msg = e.what();
    auto colon = msg.find(": ");
    if (colon == std::string::npos) throw ValidationError(path, msg);
    throw ValidationError(path + "." + msg.substr(0, colon), msg.substr(colon + 2));
  }
}

/// Row-major matrix as a flat array with explicit shape, or as an array of rows.
inline IntMatrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols, const std::string& field) {
  if (!j.is_array()) throw ValidationError(field, "expected an array");
  Coords flat;
  if (!j.empty() && j[0].is_array()) {
    for (std::size_t r = 0; r < j.size(); ++r) {
      Coords row = coords_from_json(j[r], field + "[" + std::to_string(r) + "]");
      if (row.size() != cols)
        throw ValidationError(field + "[" + std::to_string(r) + "]",
                              "row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(cols));
      flat.insert(flat.end(), row.begin(), row.end());
    }
    if (j.size() != rows)
      throw ValidationError(field, std::to_string(j.size()) + " rows, expected " + std::to_string(rows));
  } else {
    flat = coords_from_json(j, field);
    if (flat.size() != rows * cols)
      throw ValidationError(field, std::to_string(flat.size()) + " entries, expected " + std::to_string(rows) + "x" +
                                       std::to_string(cols) + " = " + std::to_string(rows * cols));
  }
  return IntMatrix(rows, cols, flat);
}

inline Json matrix_to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(integer_to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace nck
