#pragma once

#include "nck/fg_ab_group.hpp"
#include "nck/json_io.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace nck {

/// f1(x) = A x and f2(x) = B x + t on T^n = R^n / Z^n.
struct TorusInstance {
  IntMatrix A;
  IntMatrix B;
  std::vector<Rational> translation;

  std::size_t n() const { return A.rows(); }

  void validate() const {
    if (A.rows() != A.cols()) throw ValidationError("A", "must be square, got " + A.shape());
    if (B.rows() != A.rows() || B.cols() != A.cols())
      throw ValidationError("B", "must have the shape of A (" + A.shape() + "), got " + B.shape());
    if (!translation.empty() && translation.size() != n())
      throw ValidationError("t", "expected " + std::to_string(n()) + " coordinates, got " + std::to_string(translation.size()));
  }

  IntMatrix difference() const { return A - B; }
};

using TorusPoint = std::vector<Rational>;

inline Rational frac(const Rational& x) {
  Integer num = boost::multiprecision::numerator(x), den = boost::multiprecision::denominator(x);
  return Rational(mod_floor(num, den), den);
}

inline std::string rational_str(const Rational& x) {
  Integer den = boost::multiprecision::denominator(x);
  if (den == 1) return boost::multiprecision::numerator(x).str();
  return boost::multiprecision::numerator(x).str() + "/" + den.str();
}

inline Rational parse_rational(const std::string& text, const std::string& field) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(parse_integer(text));
    Integer num = parse_integer(text.substr(0, slash)), den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw ValidationError(field, "zero denominator");
    return Rational(num, den);
  } catch (const ValidationError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ValidationError(field, e.what());
  }
}

struct CoincidenceSet {
  bool degenerate = false;
  std::vector<TorusPoint> points;  // sorted, coordinates in [0, 1)
};

/// Solves (A - B) x = t mod Z^n. With U D V = S, y = V^{-1} x satisfies s_i y_i = (U t)_i mod 1.
inline CoincidenceSet coincidence_set(const TorusInstance& inst) {
  inst.validate();
  const std::size_t n = inst.n();
  IntMatrix d = inst.difference();
  CoincidenceSet out;
  if (d.determinant() == 0) {
    out.degenerate = true;
    return out;
  }
  SmithForm f = smith_normal_form(d);
  std::vector<Rational> t = inst.translation;
  t.resize(n, Rational(0));
  std::vector<Rational> ut(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) ut[i] += Rational(f.U(i, j)) * t[j];
  std::vector<Integer> s = f.diagonal();
  std::vector<Integer> r(n, 0);
  for (;;) {
    std::vector<Rational> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = (ut[i] + Rational(r[i])) / Rational(s[i]);
    TorusPoint x(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) x[i] += Rational(f.V(i, j)) * y[j];
      x[i] = frac(x[i]);
    }
    out.points.push_back(std::move(x));
    std::size_t i = 0;
    while (i < n && ++r[i] == s[i]) r[i++] = 0;
    if (i == n) break;
  }
  std::sort(out.points.begin(), out.points.end());
  return out;
}

struct NielsenData {
  Integer class_count;
  std::vector<int> indices;  // one per class
  Integer nielsen_number;
};

/// Every coincidence point is its own class (Reidemeister set Z^n / (A - B) Z^n) with index sign det(A - B).
inline std::optional<NielsenData> nielsen_data(const TorusInstance& inst) {
  inst.validate();
  IntMatrix d = inst.difference();
  Integer det = d.determinant();
  if (det == 0) return std::nullopt;
  NielsenData nd;
  Cardinal order = cokernel(d).order();
  nd.class_count = order.value();
  nd.indices.assign(static_cast<std::size_t>(nd.class_count), det > 0 ? 1 : -1);
  nd.nielsen_number = nd.class_count;
  return nd;
}

inline Json torus_report_json(const TorusInstance& inst) {
  CoincidenceSet cs = coincidence_set(inst);
  Json j;
  j["n"] = inst.n();
  j["determinant"] = integer_to_json(inst.difference().determinant());
  if (cs.degenerate) {
    j["status"] = "degenerate";
    return j;
  }
  j["status"] = "nondegenerate";
  Json pts = Json::array();
  for (const auto& p : cs.points) {
    Json row = Json::array();
    for (const auto& x : p) row.push_back(rational_str(x));
    pts.push_back(row);
  }
  j["points"] = pts;
  j["point_count"] = cs.points.size();
  NielsenData nd = *nielsen_data(inst);
  j["class_count"] = integer_to_json(nd.class_count);
  j["indices"] = nd.indices;
  j["nielsen_number"] = integer_to_json(nd.nielsen_number);
  return j;
}

}  // namespace nck
