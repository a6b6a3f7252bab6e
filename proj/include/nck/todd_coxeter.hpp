#pragma once

#include "nck/fp_group.hpp"

#include <cstdint>
#include <deque>
#include <limits>
#include <vector>

namespace nck {

enum class EnumerationStatus { complete, overflow };

/// Right action of a group on the cosets of a subgroup. Coset 0 is the subgroup itself.
class CosetTable {
 public:
  static constexpr std::uint32_t undefined = std::numeric_limits<std::uint32_t>::max();

  CosetTable() = default;
  CosetTable(std::size_t generators, std::vector<std::vector<std::uint32_t>> action, EnumerationStatus status)
      : generators_(generators), action_(std::move(action)), status_(status) {}

  EnumerationStatus status() const { return status_; }
  bool complete() const { return status_ == EnumerationStatus::complete; }
  std::size_t cosets() const { return action_.size(); }
  std::size_t generator_count() const { return generators_; }

  /// Column of a signed letter: x_i -> 2(i-1), x_i^-1 -> 2(i-1)+1.
  static std::size_t column(int letter) {
    return letter > 0 ? 2 * static_cast<std::size_t>(letter - 1) : 2 * static_cast<std::size_t>(-letter - 1) + 1;
  }

  std::uint32_t act(std::uint32_t coset, int letter) const { return action_[coset][column(letter)]; }

  std::uint32_t act(std::uint32_t coset, const Word& w) const {
    for (int x : w) coset = act(coset, x);
    return coset;
  }

  const std::vector<std::vector<std::uint32_t>>& rows() const { return action_; }

 private:
  std::size_t generators_ = 0;
  std::vector<std::vector<std::uint32_t>> action_;
  EnumerationStatus status_ = EnumerationStatus::overflow;
};

inline constexpr std::size_t default_max_cosets = 1'000'000;

namespace detail {

// HLT enumeration with coincidence processing through a union-find forwarding array.
class CosetEnumerator {
 public:
  CosetEnumerator(const FpGroup& g, std::size_t max_cosets)
      : cols_(2 * g.generator_count()), max_live_(max_cosets) {
    for (const auto& r : g.relators()) relators_.push_back(to_columns(r));
    new_coset();
  }

  CosetTable run(const FpGroup& g, const std::vector<Word>& subgroup) {
    for (const auto& w : subgroup) {
      g.check_word(w);
      scan_and_fill(0, to_columns(free_reduce(w)));
      if (overflow_) return finish(false);
    }
    for (std::uint32_t alpha = 0; alpha < table_.size(); ++alpha) {
      if (!live(alpha)) continue;
      for (const auto& r : relators_) {
        scan_and_fill(alpha, r);
        if (overflow_) return finish(false);
        if (!live(alpha)) break;
      }
      if (!live(alpha)) continue;
      for (std::size_t x = 0; x < cols_; ++x) {
        if (table_[alpha][x] == CosetTable::undefined) {
          define(alpha, x);
          if (overflow_) return finish(false);
        }
      }
      if (table_.size() >= compact_threshold()) alpha = compact(alpha);
    }
    return finish(true);
  }

 private:
  std::vector<std::size_t> to_columns(const Word& w) const {
    std::vector<std::size_t> out;
    out.reserve(w.size());
    for (int x : w) out.push_back(CosetTable::column(x));
    return out;
  }
  static std::size_t inv(std::size_t col) { return col ^ 1U; }

  bool live(std::uint32_t c) const { return forward_[c] == c; }

  std::size_t compact_threshold() const { return std::max<std::size_t>(4 * live_count_, 1024); }

  std::uint32_t new_coset() {
    table_.emplace_back(cols_, CosetTable::undefined);
    const auto id = static_cast<std::uint32_t>(table_.size() - 1);
    forward_.push_back(id);
    ++live_count_;
    return id;
  }

  void define(std::uint32_t c, std::size_t x) {
    if (live_count_ >= max_live_) {
      overflow_ = true;
      return;
    }
    std::uint32_t d = new_coset();
    table_[c][x] = d;
    table_[d][inv(x)] = c;
  }

  std::uint32_t find(std::uint32_t c) {
    std::uint32_t root = c;
    while (forward_[root] != root) root = forward_[root];
    while (forward_[c] != root) {
      std::uint32_t next = forward_[c];
      forward_[c] = root;
      c = next;
    }
    return root;
  }

  void merge(std::uint32_t a, std::uint32_t b, std::deque<std::uint32_t>& queue) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    forward_[b] = a;
    --live_count_;
    queue.push_back(b);
  }

  void coincidence(std::uint32_t a, std::uint32_t b) {
    std::deque<std::uint32_t> queue;
    merge(a, b, queue);
    while (!queue.empty()) {
      std::uint32_t gamma = queue.front();
      queue.pop_front();
      for (std::size_t x = 0; x < cols_; ++x) {
        std::uint32_t delta = table_[gamma][x];
        if (delta == CosetTable::undefined) continue;
        table_[delta][inv(x)] = CosetTable::undefined;
        std::uint32_t mu = find(gamma);
        std::uint32_t nu = find(delta);
        if (table_[mu][x] != CosetTable::undefined) {
          merge(nu, table_[mu][x], queue);
        } else if (table_[nu][inv(x)] != CosetTable::undefined) {
          merge(mu, table_[nu][inv(x)], queue);
        } else {
          table_[mu][x] = nu;
          table_[nu][inv(x)] = mu;
        }
      }
    }
  }

  void scan_and_fill(std::uint32_t alpha, const std::vector<std::size_t>& w) {
    if (w.empty()) return;
    std::uint32_t f = alpha, b = alpha;
    std::size_t i = 0;
    std::size_t j = w.size();  // backward cursor is w[j-1]
    for (;;) {
      while (i < j && table_[f][w[i]] != CosetTable::undefined) f = table_[f][w[i++]];
      if (i == j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j > i && table_[b][inv(w[j - 1])] != CosetTable::undefined) b = table_[b][inv(w[--j])];
      if (j == i) {
        coincidence(f, b);
        return;
      }
      if (j == i + 1) {
        table_[f][w[i]] = b;
        table_[b][inv(w[i])] = f;
        return;
      }
      define(f, w[i]);
      if (overflow_) return;
    }
  }

  // Renumber live cosets in order; returns the new index of `alpha`.
  std::uint32_t compact(std::uint32_t alpha) {
    std::vector<std::uint32_t> renumber(table_.size(), CosetTable::undefined);
    std::uint32_t next = 0;
    for (std::uint32_t c = 0; c < table_.size(); ++c)
      if (live(c)) renumber[c] = next++;
    std::vector<std::vector<std::uint32_t>> packed;
    packed.reserve(next);
    for (std::uint32_t c = 0; c < table_.size(); ++c) {
      if (!live(c)) continue;
      auto row = std::move(table_[c]);
      for (auto& e : row)
        if (e != CosetTable::undefined) e = renumber[e];
      packed.push_back(std::move(row));
    }
    std::uint32_t new_alpha = renumber[alpha];
    table_ = std::move(packed);
    forward_.resize(table_.size());
    for (std::uint32_t c = 0; c < table_.size(); ++c) forward_[c] = c;
    return new_alpha;
  }

  CosetTable finish(bool ok) {
    if (!ok) return CosetTable(cols_ / 2, {}, EnumerationStatus::overflow);
    compact(0);
    return CosetTable(cols_ / 2, std::move(table_), EnumerationStatus::complete);
  }

  std::size_t cols_;
  std::size_t max_live_;
  std::vector<std::vector<std::size_t>> relators_;
  std::vector<std::vector<std::uint32_t>> table_;
  std::vector<std::uint32_t> forward_;
  std::size_t live_count_ = 0;
  bool overflow_ = false;
};

}  // namespace detail

/// Enumerates the cosets of <subgroup> in g. Overflow is reported when more than
/// `max_cosets` live cosets would be needed.
inline CosetTable todd_coxeter(const FpGroup& g, const std::vector<Word>& subgroup,
                               std::size_t max_cosets = default_max_cosets) {
  if (max_cosets < 1) throw std::invalid_argument("todd_coxeter: max_cosets must be >= 1");
  detail::CosetEnumerator e(g, max_cosets);
  return e.run(g, subgroup);
}

}  // namespace nck
