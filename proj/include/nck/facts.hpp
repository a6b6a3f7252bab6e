#pragma once

#include "nck/json_io.hpp"

#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace nck {

enum Inv : int { inv_N = 0, inv_NS = 1, inv_MCC = 2, inv_MC = 3 };
inline constexpr std::array<Inv, 4> all_invariants{inv_N, inv_NS, inv_MCC, inv_MC};

inline const char* inv_name(int i) {
  static const char* names[] = {"N", "N#", "MCC", "MC"};
  return names[i];
}

/// Rules and user assertions a derived bound rests on.
struct Support {
  std::set<std::string> rules;
  std::set<std::string> assumptions;

  static Support rule(std::string id, std::set<std::string> assumptions = {}) {
    Support s;
    s.rules.insert(std::move(id));
    s.assumptions = std::move(assumptions);
    return s;
  }
  Support with(const Support& o) const {
    Support s = *this;
    s.rules.insert(o.rules.begin(), o.rules.end());
    s.assumptions.insert(o.assumptions.begin(), o.assumptions.end());
    return s;
  }
  Support with_rule(const std::string& id) const {
    Support s = *this;
    s.rules.insert(id);
    return s;
  }
  bool conditional() const { return !assumptions.empty(); }

  // Strict preference used when two derivations reach the same value.
  bool better_than(const Support& o) const {
    if (assumptions.size() != o.assumptions.size()) return assumptions.size() < o.assumptions.size();
    if (rules.size() != o.rules.size()) return rules.size() < o.rules.size();
    if (assumptions != o.assumptions) return assumptions < o.assumptions;
    return rules < o.rules;
  }

  std::string describe() const {
    std::string s;
    for (const auto& r : rules) s += (s.empty() ? "" : ", ") + r;
    if (!assumptions.empty()) {
      s += "; assuming";
      for (const auto& a : assumptions) s += " " + a;
    }
    return s;
  }

  friend bool operator==(const Support&, const Support&) = default;
};

/// Conflicting facts where a user assertion is involved: the assertions are inconsistent.
class ContradictionError : public ValidationError {
 public:
  explicit ContradictionError(const std::string& message) : ValidationError("assert", "contradiction: " + message) {}
};

/// Conflicting unconditional facts or a violated post-hoc invariant: a bug signal.
class ConsistencyError : public std::logic_error {
 public:
  explicit ConsistencyError(const std::string& message) : std::logic_error("internal consistency: " + message) {}
};

struct Bound {
  Cardinal value;
  Support support;
  bool set = false;
};

/// Interval [lo, hi] in {0, 1, ..., inf} per invariant, plus the side constraints the rules install.
class FactStore {
 public:
  FactStore() {
    for (int i = 0; i < 4; ++i) {
      lo_[i].value = 0;
      hi_[i].value = Cardinal::infinite();
    }
  }

  const Bound& lo(int i) const { return lo_[i]; }
  const Bound& hi(int i) const { return hi_[i]; }
  bool known(int i) const { return lo_[i].value == hi_[i].value; }
  const Cardinal& value(int i) const { return lo_[i].value; }

  bool changed() const { return changed_; }
  void reset_changed() { changed_ = false; }

  void at_least(int i, const Cardinal& v, const Support& s) {
    if (v == Cardinal(0)) return;
    if (update(lo_[i], v, s, v > lo_[i].value)) check(i);
  }
  void at_most(int i, const Cardinal& v, const Support& s) {
    if (v.is_infinite()) return;
    if (update(hi_[i], v, s, v < hi_[i].value)) check(i);
  }
  void exactly(int i, const Cardinal& v, const Support& s) {
    at_least(i, v, s);
    at_most(i, v, s);
  }
  void all_zero(const Support& s) {
    for (int i : all_invariants) at_most(i, 0, s);
  }

  /// Every member equals every other one.
  void add_equality(const std::vector<int>& members, const Support& s) {
    for (auto& e : equalities_)
      if (e.first == members) {
        if (s.better_than(e.second)) {
          e.second = s;
          changed_ = true;
        }
        return;
      }
    equalities_.emplace_back(members, s);
    changed_ = true;
  }

  void mark_mc_finite(const Support& s) {
    if (!mc_finite_flag_ || s.better_than(*mc_finite_flag_)) {
      mc_finite_flag_ = s;
      changed_ = true;
    }
    check(inv_MC);
  }
  /// Support for "MC is finite", if any.
  std::optional<Support> mc_finite() const {
    if (hi_[inv_MC].value.is_finite()) return hi_[inv_MC].support;
    return mc_finite_flag_;
  }

  void mark_mc_zero_or_infinite(const Support& s) {
    if (!zero_or_inf_ || s.better_than(*zero_or_inf_)) {
      zero_or_inf_ = s;
      changed_ = true;
    }
  }

  /// The values 0 and b only (b finite).
  void add_dichotomy(int i, const Cardinal& b, const Support& s) {
    for (const auto& d : dichotomies_)
      if (d.inv == i && d.b == b) return;
    dichotomies_.push_back({i, b, s});
    changed_ = true;
  }

  void note(int i, const std::string& text) {
    auto& v = notes_[i];
    for (const auto& t : v)
      if (t == text) return;
    v.push_back(text);
  }
  void note_all(const std::string& text) {
    for (int i : all_invariants) note(i, text);
  }
  const std::vector<std::string>& notes(int i) const { return notes_[i]; }

  /// One pass of the structural constraints.
  void propagate() {
    for (int i = 0; i + 1 < 4; ++i) {
      at_least(i + 1, lo_[i].value, lo_[i].support.with_rule("chain"));
      at_most(i, hi_[i + 1].value, hi_[i + 1].support.with_rule("chain"));
    }
    for (const auto& [members, s] : equalities_)
      for (int a : members)
        for (int b : members) {
          if (a == b) continue;
          at_least(b, lo_[a].value, lo_[a].support.with(s));
          at_most(b, hi_[a].value, hi_[a].support.with(s));
        }
    if (zero_or_inf_) {
      if (hi_[inv_MC].value.is_finite()) at_most(inv_MC, 0, hi_[inv_MC].support.with(*zero_or_inf_));
      if (mc_finite_flag_) at_most(inv_MC, 0, mc_finite_flag_->with(*zero_or_inf_));
      if (lo_[inv_MC].value >= Cardinal(1)) at_least(inv_MC, Cardinal::infinite(), lo_[inv_MC].support.with(*zero_or_inf_));
    }
    for (const auto& d : dichotomies_) {
      if (lo_[d.inv].value >= Cardinal(1)) at_least(d.inv, d.b, lo_[d.inv].support.with(d.support));
      if (hi_[d.inv].value < d.b) at_most(d.inv, 0, hi_[d.inv].support.with(d.support));
    }
  }

 private:
  struct Dichotomy {
    int inv;
    Cardinal b;
    Support support;
  };

  bool update(Bound& b, const Cardinal& v, const Support& s, bool tighter) {
    if (tighter || (v == b.value && (!b.set || s.better_than(b.support)))) {
      b.value = v;
      b.support = s;
      b.set = true;
      changed_ = true;
      return true;
    }
    return false;
  }

  [[noreturn]] static void conflict(const std::string& what, const Support& a, const Support& b) {
    std::string msg = what + " [" + a.describe() + "] vs [" + b.describe() + "]";
    if (a.conditional() || b.conditional()) throw ContradictionError(msg);
    throw ConsistencyError(msg);
  }

  void check(int i) {
    const Bound& l = lo_[i];
    const Bound& h = hi_[i];
    if (l.value > h.value)
      conflict(std::string(inv_name(i)) + " >= " + l.value.str() + " but <= " + h.value.str(), l.support, h.support);
    if (l.value.is_infinite() && i != inv_MC)
      conflict(std::string(inv_name(i)) + " would be infinite but is always finite", l.support, Support::rule("finiteness"));
    if (i == inv_MC && l.value.is_infinite() && mc_finite_flag_)
      conflict("MC infinite but asserted finite", l.support, *mc_finite_flag_);
  }

  std::array<Bound, 4> lo_, hi_;
  std::vector<std::pair<std::vector<int>, Support>> equalities_;
  std::optional<Support> mc_finite_flag_, zero_or_inf_;
  std::vector<Dichotomy> dichotomies_;
  std::array<std::vector<std::string>, 4> notes_;
  bool changed_ = false;
};

}  // namespace nck
