#pragma once

#include "nck/todd_coxeter.hpp"

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace nck {

/// Cayley table of a finite group; elements are 0..order-1.
class FiniteGroupTable {
 public:
  using Element = std::uint32_t;

  FiniteGroupTable(std::size_t order, std::vector<Element> mult, Element identity)
      : order_(order), mult_(std::move(mult)), identity_(identity) {
    if (mult_.size() != order_ * order_) throw std::invalid_argument("FiniteGroupTable: table size mismatch");
    inverse_.assign(order_, 0);
    for (Element a = 0; a < order_; ++a) {
      bool found = false;
      for (Element b = 0; b < order_; ++b)
        if (mul(a, b) == identity_) {
          inverse_[a] = b;
          found = true;
          break;
        }
      if (!found) throw std::invalid_argument("FiniteGroupTable: element " + std::to_string(a) + " has no inverse");
    }
  }

  std::size_t order() const { return order_; }
  Element identity() const { return identity_; }
  Element mul(Element a, Element b) const { return mult_[a * order_ + b]; }
  Element inv(Element a) const { return inverse_[a]; }

  /// Exhaustive check of the group axioms; O(order^3).
  void validate() const {
    for (Element a = 0; a < order_; ++a) {
      if (mul(identity_, a) != a || mul(a, identity_) != a)
        throw std::invalid_argument("identity law fails at " + std::to_string(a));
      if (mul(a, inv(a)) != identity_ || mul(inv(a), a) != identity_)
        throw std::invalid_argument("inverse law fails at " + std::to_string(a));
      for (Element b = 0; b < order_; ++b)
        for (Element c = 0; c < order_; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c)))
            throw std::invalid_argument("associativity fails at (" + std::to_string(a) + "," + std::to_string(b) +
                                        "," + std::to_string(c) + ")");
    }
  }

  bool is_abelian() const {
    for (Element a = 0; a < order_; ++a)
      for (Element b = a + 1; b < order_; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

 private:
  std::size_t order_;
  std::vector<Element> mult_;
  Element identity_;
  std::vector<Element> inverse_;
};

/// A finite group realized from a presentation: Cayley table plus a word for every element.
struct RealizedGroup {
  FpGroup presentation;
  FiniteGroupTable table;
  std::vector<Word> element_words;      // element_words[e] evaluates to e
  std::vector<FiniteGroupTable::Element> generator_elements;  // image of x_i

  FiniteGroupTable::Element evaluate(const Word& w) const {
    presentation.check_word(w);
    FiniteGroupTable::Element e = table.identity();
    for (int x : w) {
      auto g = generator_elements[static_cast<std::size_t>(std::abs(x) - 1)];
      e = table.mul(e, x > 0 ? g : table.inv(g));
    }
    return e;
  }
};

struct Unknown {
  std::string reason;
};

/// Regular representation from the coset table of the trivial subgroup.
inline std::variant<RealizedGroup, Unknown> realize_finite(const FpGroup& g,
                                                           std::size_t max_cosets = default_max_cosets) {
  CosetTable t = todd_coxeter(g, {}, max_cosets);
  if (!t.complete())
    return Unknown{"coset enumeration of the trivial subgroup exceeded " + std::to_string(max_cosets) + " cosets"};
  const std::size_t n = t.cosets();
  // Spanning tree words from coset 0.
  std::vector<Word> words(n);
  std::vector<bool> seen(n, false);
  std::vector<std::uint32_t> queue{0};
  seen[0] = true;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    std::uint32_t c = queue[qi];
    for (std::size_t gi = 1; gi <= g.generator_count(); ++gi)
      for (int letter : {static_cast<int>(gi), -static_cast<int>(gi)}) {
        std::uint32_t d = t.act(c, letter);
        if (!seen[d]) {
          seen[d] = true;
          words[d] = words[c];
          words[d].push_back(letter);
          queue.push_back(d);
        }
      }
  }
  // Cosets of the trivial subgroup are elements; a * b = a acted on by a word for b.
  std::vector<FiniteGroupTable::Element> mult(n * n);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) mult[a * n + b] = t.act(a, words[b]);
  FiniteGroupTable table(n, std::move(mult), 0);
  std::vector<FiniteGroupTable::Element> gens;
  for (std::size_t gi = 1; gi <= g.generator_count(); ++gi) gens.push_back(t.act(0, static_cast<int>(gi)));
  return RealizedGroup{g, std::move(table), std::move(words), std::move(gens)};
}

class HomomorphismError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using ElementMap = std::vector<FiniteGroupTable::Element>;

inline void validate_endomorphism(const FiniteGroupTable& g, const ElementMap& phi, const std::string& name) {
  if (phi.size() != g.order())
    throw HomomorphismError(name + " has " + std::to_string(phi.size()) + " entries, group order is " +
                            std::to_string(g.order()));
  for (std::size_t a = 0; a < phi.size(); ++a)
    if (phi[a] >= g.order())
      throw HomomorphismError(name + "[" + std::to_string(a) + "] = " + std::to_string(phi[a]) + " is out of range");
  for (FiniteGroupTable::Element a = 0; a < g.order(); ++a)
    for (FiniteGroupTable::Element b = 0; b < g.order(); ++b)
      if (phi[g.mul(a, b)] != g.mul(phi[a], phi[b]))
        throw HomomorphismError(name + " is not a homomorphism at the pair (" + std::to_string(a) + ", " +
                                std::to_string(b) + "): " + name + "(ab) != " + name + "(a) " + name + "(b)");
}

/// Orbits of alpha -> phi1(gamma) alpha phi2(gamma)^-1, i.e. twisted conjugacy classes.
inline std::size_t reidemeister_count(const FiniteGroupTable& g, const ElementMap& phi1, const ElementMap& phi2) {
  validate_endomorphism(g, phi1, "phi1");
  validate_endomorphism(g, phi2, "phi2");
  const std::size_t n = g.order();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t classes = n;
  for (FiniteGroupTable::Element gamma = 0; gamma < n; ++gamma)
    for (FiniteGroupTable::Element alpha = 0; alpha < n; ++alpha) {
      auto beta = g.mul(g.mul(phi1[gamma], alpha), g.inv(phi2[gamma]));
      std::size_t ra = find(alpha), rb = find(beta);
      if (ra != rb) {
        parent[std::max(ra, rb)] = std::min(ra, rb);
        --classes;
      }
    }
  return classes;
}

/// Extends generator images to an element map; nullopt when a relator is not sent to the identity.
inline std::optional<ElementMap> hom_from_generator_images(const RealizedGroup& g,
                                                           const std::vector<FiniteGroupTable::Element>& images) {
  if (images.size() != g.presentation.generator_count())
    throw HomomorphismError("expected " + std::to_string(g.presentation.generator_count()) +
                            " generator images, got " + std::to_string(images.size()));
  auto eval = [&](const Word& w) {
    FiniteGroupTable::Element e = g.table.identity();
    for (int x : w) {
      auto img = images[static_cast<std::size_t>(std::abs(x) - 1)];
      e = g.table.mul(e, x > 0 ? img : g.table.inv(img));
    }
    return e;
  };
  for (const auto& r : g.presentation.relators())
    if (eval(r) != g.table.identity()) return std::nullopt;
  ElementMap phi(g.table.order());
  for (std::size_t e = 0; e < phi.size(); ++e) phi[e] = eval(g.element_words[e]);
  return phi;
}

inline ElementMap identity_map(const FiniteGroupTable& g) {
  ElementMap m(g.order());
  std::iota(m.begin(), m.end(), 0);
  return m;
}

inline ElementMap trivial_map(const FiniteGroupTable& g) { return ElementMap(g.order(), g.identity()); }

/// Every endomorphism, enumerated through generator images.
inline std::vector<ElementMap> all_endomorphisms(const RealizedGroup& g) {
  std::vector<ElementMap> out;
  const std::size_t k = g.presentation.generator_count();
  const std::size_t n = g.table.order();
  std::vector<FiniteGroupTable::Element> images(k, 0);
  for (;;) {
    if (auto phi = hom_from_generator_images(g, images)) out.push_back(std::move(*phi));
    std::size_t i = 0;
    while (i < k && ++images[i] == n) images[i++] = 0;
    if (i == k) break;
  }
  return out;
}

}  // namespace nck
