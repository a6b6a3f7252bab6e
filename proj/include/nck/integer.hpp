#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nck {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer abs_value(const Integer& x) { return x < 0 ? Integer(-x) : x; }

inline Integer gcd(Integer a, Integer b) {
  a = abs_value(a);
  b = abs_value(b);
  while (b != 0) {
    Integer r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Floor division remainder in [0, |m|).
inline Integer mod_floor(const Integer& x, const Integer& m) {
  Integer am = abs_value(m);
  Integer r = x % am;
  if (r < 0) r += am;
  return r;
}

inline std::string to_string(const Integer& x) { return x.str(); }

inline Integer parse_integer(std::string_view text) {
  std::string s(text);
  std::size_t i = (s.size() > 0 && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i == s.size()) throw std::invalid_argument("not an integer: '" + s + "'");
  for (std::size_t j = i; j < s.size(); ++j)
    if (s[j] < '0' || s[j] > '9')
      throw std::invalid_argument("not an integer: '" + s + "'");
  if (s[0] == '+') s.erase(0, 1);
  return Integer(s);
}

/// A cardinality that is either a finite nonnegative integer or infinite.
class Cardinal {
 public:
  Cardinal() = default;
  Cardinal(Integer k) : value_(std::move(k)) {}  // NOLINT(google-explicit-constructor)
  Cardinal(int k) : value_(k) {}                 // NOLINT(google-explicit-constructor)
  static Cardinal infinite() {
    Cardinal c;
    c.infinite_ = true;
    return c;
  }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  const Integer& value() const {
    if (infinite_) throw std::logic_error("Cardinal::value on infinite cardinal");
    return value_;
  }

  friend bool operator==(const Cardinal& a, const Cardinal& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Cardinal& a, const Cardinal& b) {
    if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
    if (a.infinite_) return std::strong_ordering::greater;
    if (b.infinite_) return std::strong_ordering::less;
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// Sum; infinite absorbs.
  friend Cardinal operator+(const Cardinal& a, const Cardinal& b) {
    if (a.infinite_ || b.infinite_) return infinite();
    return Cardinal(a.value_ + b.value_);
  }
  /// Product with the convention infinity * 0 = 0.
  friend Cardinal operator*(const Cardinal& a, const Cardinal& b) {
    if ((a.is_finite() && a.value_ == 0) || (b.is_finite() && b.value_ == 0)) return Cardinal(0);
    if (a.infinite_ || b.infinite_) return infinite();
    return Cardinal(a.value_ * b.value_);
  }

  std::string str() const { return infinite_ ? "inf" : value_.str(); }
  friend std::ostream& operator<<(std::ostream& os, const Cardinal& c) { return os << c.str(); }

 private:
  Integer value_{0};
  bool infinite_ = false;
};

}  // namespace nck
