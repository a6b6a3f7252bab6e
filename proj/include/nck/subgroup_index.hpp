#pragma once

#include "nck/finite_group.hpp"

#include <string>
#include <variant>
#include <vector>

namespace nck {

inline FgAbGroup abelianization(const FpGroup& g) { return cokernel(g.exponent_matrix()); }

/// Index of the image of <h> in the abelianization of g.
inline Cardinal abelianized_index(const FpGroup& g, const std::vector<Word>& h) {
  std::vector<Coords> cols;
  for (const auto& w : h) cols.push_back(g.exponent_vector(w));
  IntMatrix gens = IntMatrix::from_columns(g.generator_count(), cols);
  return image_index(IntMatrix::hstack(g.exponent_matrix(), gens));
}

/// Finite(k) | Infinite | Unknown.
class IndexResult {
 public:
  enum class Kind { finite, infinite, unknown };

  static IndexResult finite(Integer k) { return IndexResult(Kind::finite, std::move(k), {}); }
  static IndexResult infinite() { return IndexResult(Kind::infinite, 0, {}); }
  static IndexResult unknown(std::string reason) { return IndexResult(Kind::unknown, 0, std::move(reason)); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::finite; }
  bool is_infinite() const { return kind_ == Kind::infinite; }
  bool is_unknown() const { return kind_ == Kind::unknown; }
  const Integer& value() const { return value_; }
  const std::string& reason() const { return reason_; }

  std::optional<Cardinal> cardinal() const {
    if (kind_ == Kind::finite) return Cardinal(value_);
    if (kind_ == Kind::infinite) return Cardinal::infinite();
    return std::nullopt;
  }

  std::string str() const {
    switch (kind_) {
      case Kind::finite: return value_.str();
      case Kind::infinite: return "infinite";
      default: return "unknown (" + reason_ + ")";
    }
  }

 private:
  IndexResult(Kind k, Integer v, std::string r) : kind_(k), value_(std::move(v)), reason_(std::move(r)) {}
  Kind kind_;
  Integer value_;
  std::string reason_;
};

/// [g : <h>]. An infinite abelianized index certifies an infinite index; otherwise coset
/// enumeration decides, and an exhausted budget yields Unknown.
inline IndexResult subgroup_index(const FpGroup& g, const std::vector<Word>& h,
                                  std::size_t max_cosets = default_max_cosets) {
  if (abelianized_index(g, h).is_infinite()) return IndexResult::infinite();
  CosetTable t = todd_coxeter(g, h, max_cosets);
  if (t.complete()) return IndexResult::finite(Integer(t.cosets()));
  return IndexResult::unknown("coset enumeration budget of " + std::to_string(max_cosets) + " cosets exhausted");
}

}  // namespace nck
