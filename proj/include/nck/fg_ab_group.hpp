#pragma once

#include "nck/smith.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace nck {

using Coords = std::vector<Integer>;

/// Z^free_rank + Z/d_1 + ... + Z/d_k with d_i >= 2 and d_i | d_{i+1}.
class FgAbGroup {
 public:
  FgAbGroup() = default;
  FgAbGroup(std::size_t free_rank, std::vector<Integer> torsion)
      : free_rank_(free_rank), torsion_(std::move(torsion)) {
    for (std::size_t i = 0; i < torsion_.size(); ++i) {
      if (torsion_[i] < 2)
        throw std::invalid_argument("torsion[" + std::to_string(i) + "]: value " + torsion_[i].str() +
                                    " must be >= 2");
      if (i > 0 && torsion_[i] % torsion_[i - 1] != 0)
        throw std::invalid_argument("torsion[" + std::to_string(i) + "]: divisibility chain broken (" +
                                    torsion_[i - 1].str() + " does not divide " + torsion_[i].str() + ")");
    }
  }

  static FgAbGroup trivial() { return {}; }
  static FgAbGroup integers() { return FgAbGroup(1, {}); }
  static FgAbGroup cyclic(const Integer& d) {
    if (d == 0) return integers();
    if (abs_value(d) == 1) return trivial();
    return FgAbGroup(0, {abs_value(d)});
  }

  std::size_t free_rank() const { return free_rank_; }
  const std::vector<Integer>& torsion() const { return torsion_; }
  /// Number of coordinates of an element: free part first, then torsion.
  std::size_t coordinate_count() const { return free_rank_ + torsion_.size(); }

  bool is_trivial() const { return free_rank_ == 0 && torsion_.empty(); }

  Cardinal order() const {
    if (free_rank_ > 0) return Cardinal::infinite();
    Integer p = 1;
    for (const auto& d : torsion_) p *= d;
    return Cardinal(p);
  }

  /// Diagonal relation matrix: column i kills coordinate free_rank + i by d_i.
  IntMatrix relation_matrix() const {
    IntMatrix r(coordinate_count(), torsion_.size());
    for (std::size_t i = 0; i < torsion_.size(); ++i) r(free_rank_ + i, i) = torsion_[i];
    return r;
  }

  /// Canonical representative: torsion coordinates reduced into [0, d_i).
  Coords reduce(const Coords& v) const {
    check_coords(v);
    Coords out = v;
    for (std::size_t i = 0; i < torsion_.size(); ++i)
      out[free_rank_ + i] = mod_floor(out[free_rank_ + i], torsion_[i]);
    return out;
  }

  bool is_zero(const Coords& v) const {
    Coords r = reduce(v);
    for (const auto& x : r)
      if (x != 0) return false;
    return true;
  }

  void check_coords(const Coords& v) const {
    if (v.size() != coordinate_count())
      throw std::invalid_argument("coordinate vector of length " + std::to_string(v.size()) + " for group " +
                                  str() + " (expected " + std::to_string(coordinate_count()) + ")");
  }

  friend bool operator==(const FgAbGroup& a, const FgAbGroup& b) {
    return a.free_rank_ == b.free_rank_ && a.torsion_ == b.torsion_;
  }

  std::string str() const {
    if (is_trivial()) return "0";
    std::string s;
    for (std::size_t i = 0; i < free_rank_; ++i) s += (s.empty() ? "" : " + ") + std::string("Z");
    for (const auto& d : torsion_) s += (s.empty() ? "" : " + ") + ("Z/" + d.str());
    return s;
  }

 private:
  std::size_t free_rank_ = 0;
  std::vector<Integer> torsion_;
};

/// Subgroup of `ambient` generated by coordinate vectors.
class SubgroupDesc {
 public:
  SubgroupDesc() = default;
  SubgroupDesc(FgAbGroup ambient, std::vector<Coords> generators) : ambient_(std::move(ambient)) {
    generators_.reserve(generators.size());
    for (const auto& g : generators) generators_.push_back(ambient_.reduce(g));
  }
  static SubgroupDesc trivial_in(FgAbGroup ambient) { return SubgroupDesc(std::move(ambient), {}); }
  static SubgroupDesc whole(FgAbGroup ambient) {
    std::vector<Coords> gens;
    for (std::size_t i = 0; i < ambient.coordinate_count(); ++i) {
      Coords e(ambient.coordinate_count());
      e[i] = 1;
      gens.push_back(std::move(e));
    }
    return SubgroupDesc(std::move(ambient), std::move(gens));
  }

  const FgAbGroup& ambient() const { return ambient_; }
  const std::vector<Coords>& generators() const { return generators_; }

  /// Generators as columns next to the ambient relations.
  IntMatrix spanning_matrix() const {
    IntMatrix gens = IntMatrix::from_columns(ambient_.coordinate_count(), generators_);
    return IntMatrix::hstack(gens, ambient_.relation_matrix());
  }

 private:
  FgAbGroup ambient_;
  std::vector<Coords> generators_;
};

/// [Z^rows : im A]; infinite when A does not have full row rank.
inline Cardinal image_index(const IntMatrix& a) {
  SmithForm f = smith_normal_form(a);
  if (f.rank() < a.rows()) return Cardinal::infinite();
  Integer p = 1;
  for (std::size_t i = 0; i < f.rank(); ++i) p *= f.S(i, i);
  return Cardinal(p);
}

/// Z^rows / im A in invariant-factor form.
inline FgAbGroup cokernel(const IntMatrix& a) {
  SmithForm f = smith_normal_form(a);
  const std::size_t r = f.rank();
  std::vector<Integer> torsion;
  for (std::size_t i = 0; i < r; ++i)
    if (f.S(i, i) > 1) torsion.push_back(f.S(i, i));
  return FgAbGroup(a.rows() - r, std::move(torsion));
}

inline bool in_subgroup(const Coords& v, const SubgroupDesc& h) {
  h.ambient().check_coords(v);
  return solve_integer(h.spanning_matrix(), v).has_value();
}

/// Index of a subgroup in its ambient group (infinite when the quotient is).
inline Cardinal subgroup_index_in(const SubgroupDesc& h) { return image_index(h.spanning_matrix()); }

/// A homomorphism between finitely generated abelian groups given on coordinate generators.
struct AbelianHom {
  FgAbGroup source;
  FgAbGroup target;
  IntMatrix matrix;  // target.coordinate_count() x source.coordinate_count()

  void validate() const {
    if (matrix.rows() != target.coordinate_count() || matrix.cols() != source.coordinate_count())
      throw std::invalid_argument("hom matrix is " + matrix.shape() + ", expected " +
                                  std::to_string(target.coordinate_count()) + "x" +
                                  std::to_string(source.coordinate_count()));
    // Every source relation must land in the target relations.
    IntMatrix rel = source.relation_matrix();
    for (std::size_t c = 0; c < rel.cols(); ++c) {
      Coords img = matrix.apply(rel.column(c));
      if (!target.is_zero(img))
        throw std::invalid_argument("hom matrix does not respect source torsion relation " + std::to_string(c));
    }
  }

  Coords operator()(const Coords& v) const { return target.reduce(matrix.apply(source.reduce(v))); }

  SubgroupDesc image() const {
    std::vector<Coords> cols;
    for (std::size_t c = 0; c < matrix.cols(); ++c) cols.push_back(matrix.column(c));
    return SubgroupDesc(target, std::move(cols));
  }

  SubgroupDesc image_of(const SubgroupDesc& h) const {
    std::vector<Coords> gens;
    for (const auto& g : h.generators()) gens.push_back(matrix.apply(g));
    return SubgroupDesc(target, std::move(gens));
  }

  bool is_surjective() const { return subgroup_index_in(image()) == Cardinal(1); }

  bool is_injective() const {
    // x maps to zero iff (x, y) solves [M | R_target] (x, y) = 0 for some y.
    IntMatrix stacked = IntMatrix::hstack(matrix, target.relation_matrix());
    for (const auto& k : kernel_basis(stacked)) {
      Coords x(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(source.coordinate_count()));
      if (!source.is_zero(x)) return false;
    }
    return true;
  }
};

}  // namespace nck
