#pragma once

#include "nck/fg_ab_group.hpp"

#include <cctype>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nck {

/// Letters are signed 1-based generator indices: +i is x_i, -i is x_i^-1.
using Word = std::vector<int>;

inline Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (int x : w) {
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

inline Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& x : out) x = -x;
  return out;
}

inline Word concat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return free_reduce(out);
}

class PresentationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Finite presentation <generators | relators>.
class FpGroup {
 public:
  FpGroup() = default;
  FpGroup(std::vector<std::string> generators, std::vector<Word> relators)
      : generators_(std::move(generators)) {
    for (std::size_t i = 0; i < generators_.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (generators_[i] == generators_[j]) throw PresentationError("duplicate generator '" + generators_[i] + "'");
    for (auto& r : relators) {
      check_word(r);
      Word red = free_reduce(r);
      if (!red.empty()) relators_.push_back(std::move(red));
    }
  }

  /// "gens: a, b; rels: a^4, a^2 b^-2, b^-1 a b a"
  static FpGroup parse(std::string_view text);

  const std::vector<std::string>& generators() const { return generators_; }
  const std::vector<Word>& relators() const { return relators_; }
  std::size_t generator_count() const { return generators_.size(); }

  std::optional<int> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < generators_.size(); ++i)
      if (generators_[i] == name) return static_cast<int>(i) + 1;
    return std::nullopt;
  }

  void check_word(const Word& w) const {
    for (int x : w)
      if (x == 0 || static_cast<std::size_t>(std::abs(x)) > generators_.size())
        throw PresentationError("word references undeclared generator index " + std::to_string(x));
  }

  /// Words separated by whitespace or '*', each token name or name^k.
  Word parse_word(std::string_view text) const;
  std::vector<Word> parse_word_list(std::string_view text) const;

  std::string format_word(const Word& w) const {
    if (w.empty()) return "1";
    std::string s;
    std::size_t i = 0;
    while (i < w.size()) {
      std::size_t j = i;
      while (j < w.size() && w[j] == w[i]) ++j;
      long run = static_cast<long>(j - i);
      if (!s.empty()) s += " ";
      s += generators_[static_cast<std::size_t>(std::abs(w[i]) - 1)];
      long e = w[i] > 0 ? run : -run;
      if (e != 1) s += "^" + std::to_string(e);
      i = j;
    }
    return s;
  }

  std::string str() const {
    std::string s = "gens: ";
    for (std::size_t i = 0; i < generators_.size(); ++i) s += (i ? ", " : "") + generators_[i];
    s += "; rels: ";
    for (std::size_t i = 0; i < relators_.size(); ++i) s += (i ? ", " : "") + format_word(relators_[i]);
    return s;
  }

  /// Exponent-sum vector of a word (abelianized image).
  Coords exponent_vector(const Word& w) const {
    Coords v(generators_.size());
    for (int x : w) v[static_cast<std::size_t>(std::abs(x) - 1)] += (x > 0 ? 1 : -1);
    return v;
  }

  /// Relator exponent sums as columns (generators x relators).
  IntMatrix exponent_matrix() const {
    std::vector<Coords> cols;
    for (const auto& r : relators_) cols.push_back(exponent_vector(r));
    return IntMatrix::from_columns(generators_.size(), cols);
  }

 private:
  std::vector<std::string> generators_;
  std::vector<Word> relators_;
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

inline bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

}  // namespace detail

inline Word FpGroup::parse_word(std::string_view text) const {
  Word w;
  std::size_t i = 0;
  const std::string s(text);
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '*' || c == '.') {
      ++i;
      continue;
    }
    if (c == '1' && (i + 1 == s.size() || !std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
      ++i;  // identity
      continue;
    }
    if (!detail::is_ident_start(c))
      throw PresentationError("unexpected character '" + std::string(1, c) + "' in word '" + s + "'");
    std::size_t j = i;
    while (j < s.size() && detail::is_ident_char(s[j])) ++j;
    std::string name = s.substr(i, j - i);
    auto idx = index_of(name);
    if (!idx) throw PresentationError("unknown generator '" + name + "' in word '" + s + "'");
    long exponent = 1;
    i = j;
    if (i < s.size() && s[i] == '^') {
      ++i;
      std::size_t k = i;
      if (k < s.size() && (s[k] == '-' || s[k] == '+')) ++k;
      std::size_t digits = k;
      while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
      if (k == digits) throw PresentationError("missing exponent after '^' in word '" + s + "'");
      exponent = std::stol(s.substr(i, k - i));
      i = k;
    }
    int letter = exponent >= 0 ? *idx : -*idx;
    for (long e = 0; e < std::labs(exponent); ++e) w.push_back(letter);
  }
  return free_reduce(w);
}

inline std::vector<Word> FpGroup::parse_word_list(std::string_view text) const {
  std::vector<Word> out;
  if (detail::trim(text).empty()) return out;
  for (const auto& piece : detail::split(text, ',')) {
    std::string t = detail::trim(piece);
    if (t.empty()) throw PresentationError("empty word in list '" + std::string(text) + "'");
    out.push_back(parse_word(t));
  }
  return out;
}

inline FpGroup FpGroup::parse(std::string_view text) {
  std::optional<std::vector<std::string>> gens;
  std::string rels_text;
  bool have_rels = false;
  for (const auto& section : detail::split(text, ';')) {
    std::string sec = detail::trim(section);
    if (sec.empty()) continue;
    auto colon = sec.find(':');
    if (colon == std::string::npos) throw PresentationError("section without ':' in presentation: '" + sec + "'");
    std::string key = detail::trim(std::string_view(sec).substr(0, colon));
    std::string body = detail::trim(std::string_view(sec).substr(colon + 1));
    if (key == "gens" || key == "generators") {
      if (gens) throw PresentationError("duplicate 'gens' section");
      gens.emplace();
      if (!body.empty())
        for (const auto& g : detail::split(body, ',')) {
          std::string name = detail::trim(g);
          if (name.empty() || !detail::is_ident_start(name[0]))
            throw PresentationError("bad generator name '" + name + "'");
          for (char ch : name)
            if (!detail::is_ident_char(ch)) throw PresentationError("bad generator name '" + name + "'");
          gens->push_back(name);
        }
    } else if (key == "rels" || key == "relators") {
      if (have_rels) throw PresentationError("duplicate 'rels' section");
      have_rels = true;
      rels_text = body;
    } else {
      throw PresentationError("unknown presentation section '" + key + "'");
    }
  }
  if (!gens) throw PresentationError("presentation lacks a 'gens:' section");
  FpGroup shell(*gens, {});
  return FpGroup(*gens, shell.parse_word_list(rels_text));
}

}  // namespace nck
