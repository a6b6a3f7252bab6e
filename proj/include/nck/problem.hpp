#pragma once

#include "nck/json_io.hpp"
#include "nck/subgroup_index.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace nck {

enum class TargetKind { circle, sphere, space_form, projective, torus, product, generic };
enum class DomainKind { sphere, torus, product_with_sphere, generic };
enum class PairKind { general, root, self };

inline const char* to_string(TargetKind k) {
  switch (k) {
    case TargetKind::circle: return "circle";
    case TargetKind::sphere: return "sphere";
    case TargetKind::space_form: return "space_form";
    case TargetKind::projective: return "projective";
    case TargetKind::torus: return "torus";
    case TargetKind::product: return "product";
    default: return "generic";
  }
}

inline const char* to_string(PairKind k) {
  switch (k) {
    case PairKind::root: return "root";
    case PairKind::self: return "self";
    default: return "general";
  }
}

struct Target {
  TargetKind kind = TargetKind::generic;
  int n = 0;
  // space_form: group order and/or presentation
  std::optional<Integer> group_order;
  std::optional<FpGroup> group;
  // projective: field R, C or H and projective dimension
  char field = 'R';
  int proj_dim = 0;
  std::vector<Target> factors;
  // generic
  std::optional<FpGroup> pi1;
  bool compact = true;
  std::optional<Integer> euler;
  std::set<std::string> fibration_facts;
  std::string family;  // "", "stiefel", "grassmann", "oriented_grassmann"
  int family_r = 0, family_k = 0;
  Json source;  // as given, for structural comparison
};

struct Problem;

struct Covering {
  Cardinal degree;
  std::shared_ptr<Problem> lifted;
};

struct MapData {
  std::optional<std::pair<Integer, Integer>> degrees;
  std::optional<Coords> h1_difference;
  std::optional<std::vector<Word>> pi1_image;
  std::optional<Coords> difference_class;
  std::optional<std::vector<Coords>> index_vector;
  bool projection = false;
  std::optional<std::pair<IntMatrix, IntMatrix>> torus_matrices;
  std::optional<Covering> covering;
  std::map<std::string, Cardinal> supplied;
  std::optional<bool> f1_homotopic_f2, f1_homotopic_af2, class_is_zero;
};

struct Assertions {
  std::optional<bool> omega_sharp_nonzero, omega_tilde_nonzero, x_m_vanishes, mc_finite;
  std::optional<bool> ncp_f1, ncp_f2;  // "not coincidence producing"
};

struct Domain {
  DomainKind kind = DomainKind::sphere;
  int m = 1;
  std::shared_ptr<Target> base;  // product_with_sphere
  std::optional<FgAbGroup> h1;
  std::optional<FpGroup> pi1;
};

struct Problem {
  Domain domain;
  Target target;
  PairKind pair = PairKind::general;
  MapData map;
  Assertions asserted;
};

// ---------------------------------------------------------------- derived facts

inline FpGroup free_abelian_presentation(int rank) {
  std::vector<std::string> gens;
  std::vector<Word> rels;
  for (int i = 1; i <= rank; ++i) {
    gens.push_back("x" + std::to_string(i));
    for (int j = 1; j < i; ++j) rels.push_back({j, i, -j, -i});
  }
  return FpGroup(gens, rels);
}

inline FpGroup direct_product(const std::vector<FpGroup>& parts) {
  std::vector<std::string> gens;
  std::vector<Word> rels;
  std::vector<std::pair<int, int>> ranges;
  int offset = 0;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    for (const auto& g : parts[p].generators()) gens.push_back("f" + std::to_string(p + 1) + "_" + g);
    for (const auto& r : parts[p].relators()) {
      Word w;
      for (int x : r) w.push_back(x > 0 ? x + offset : x - offset);
      rels.push_back(w);
    }
    int count = static_cast<int>(parts[p].generator_count());
    ranges.emplace_back(offset + 1, offset + count);
    offset += count;
  }
  for (std::size_t p = 0; p < ranges.size(); ++p)
    for (std::size_t q = p + 1; q < ranges.size(); ++q)
      for (int a = ranges[p].first; a <= ranges[p].second; ++a)
        for (int b = ranges[q].first; b <= ranges[q].second; ++b) rels.push_back({a, b, -a, -b});
  return FpGroup(gens, rels);
}

/// Radon-Hurwitz number: S^{r-1} carries rho(r) - 1 independent vector fields.
inline int radon_hurwitz(int r) {
  int c = 0;
  while (r % 2 == 0) {
    r /= 2;
    ++c;
  }
  int a = c / 4, b = c % 4;
  return (1 << b) + 8 * a;
}

/// Everything the rules need to know about a target, derived once.
struct TargetFacts {
  int n = 0;
  bool compact = true;
  std::optional<Integer> euler;
  std::optional<FpGroup> pi1;
  std::optional<Cardinal> pi1_order;  // nullopt: undecided
  std::string pi1_order_reason;
  bool is_circle = false, is_sphere = false, is_projective = false, is_space_form = false, is_torus = false;
  bool is_product = false;  // of two positive-dimensional manifolds
  bool nontrivial_cover_total_space = false;
  std::set<std::string> fibration_facts;
  std::string family;
  int family_r = 0, family_k = 0;

  bool euler_zero() const { return euler && *euler == 0; }
  /// N admits a fixed point free selfmap, so no map into N is coincidence producing.
  bool never_coincidence_producing() const {
    return !compact || euler_zero() || is_sphere || is_circle || nontrivial_cover_total_space;
  }
};

inline TargetFacts derive_facts(const Target& t, std::size_t budget = default_max_cosets) {
  TargetFacts f;
  f.n = t.n;
  f.compact = t.compact;
  f.fibration_facts = t.fibration_facts;
  f.family = t.family;
  f.family_r = t.family_r;
  f.family_k = t.family_k;
  switch (t.kind) {
    case TargetKind::circle:
      f.is_circle = true;
      f.euler = 0;
      f.pi1 = FpGroup::parse("gens: a; rels:");
      f.nontrivial_cover_total_space = true;
      break;
    case TargetKind::sphere:
      f.is_sphere = true;
      f.euler = (t.n % 2 == 0) ? 2 : 0;
      f.pi1 = FpGroup();
      f.nontrivial_cover_total_space = true;
      break;
    case TargetKind::space_form:
      f.is_space_form = true;
      f.euler = (t.n % 2 == 1) ? Integer(0) : Integer(2) / (t.group_order ? *t.group_order : Integer(1));
      if (t.n % 2 == 0 && !t.group_order) f.euler.reset();
      if (t.group) f.pi1 = t.group;
      if (t.group_order) f.pi1_order = Cardinal(*t.group_order);
      break;
    case TargetKind::projective: {
      f.is_projective = true;
      int k = t.proj_dim;
      if (t.field == 'R') {
        f.euler = (k % 2 == 0) ? 1 : 0;
        f.pi1 = k >= 2 ? FpGroup::parse("gens: a; rels: a^2") : FpGroup::parse("gens: a; rels:");
      } else {
        f.euler = k + 1;
        f.pi1 = FpGroup();
      }
      break;
    }
    case TargetKind::torus:
      f.is_torus = true;
      f.euler = 0;
      f.pi1 = free_abelian_presentation(t.n);
      f.nontrivial_cover_total_space = true;
      f.is_product = t.n >= 2;
      break;
    case TargetKind::product: {
      std::vector<FpGroup> parts;
      bool all_pi1 = true;
      Integer chi = 1;
      bool chi_known = true;
      int positive = 0;
      for (const auto& factor : t.factors) {
        TargetFacts ff = derive_facts(factor, budget);
        f.compact = f.compact && ff.compact;
        if (ff.pi1) {
          parts.push_back(*ff.pi1);
        } else {
          all_pi1 = false;
        }
        if (ff.euler) {
          chi *= *ff.euler;
        } else {
          chi_known = false;
        }
        if (factor.n > 0) ++positive;
      }
      if (all_pi1) f.pi1 = direct_product(parts);
      if (chi_known) f.euler = chi;
      f.is_product = positive >= 2;
      break;
    }
    case TargetKind::generic:
      f.pi1 = t.pi1;
      f.euler = t.euler;
      // no map into an oriented Grassmannian is coincidence producing
      f.nontrivial_cover_total_space = t.family == "oriented_grassmann";
      break;
  }
  if (!f.pi1_order && f.pi1) {
    IndexResult r = subgroup_index(*f.pi1, {}, budget);
    if (!r.is_unknown()) {
      f.pi1_order = *r.cardinal();
    } else {
      f.pi1_order_reason = "order of pi_1(N): " + r.reason();
    }
  } else if (!f.pi1_order) {
    f.pi1_order_reason = "no presentation of pi_1(N) was given";
  }
  return f;
}

inline FgAbGroup h1_of_target(const TargetFacts& f) {
  if (!f.pi1) throw ValidationError("domain.base", "H_1 of the base needs a pi1 presentation");
  return abelianization(*f.pi1);
}

/// H_1(M; Z) when derivable from the domain description.
inline std::optional<FgAbGroup> domain_h1(const Domain& d) {
  if (d.h1) return d.h1;
  switch (d.kind) {
    case DomainKind::sphere: return d.m == 1 ? FgAbGroup::integers() : FgAbGroup::trivial();
    case DomainKind::torus: return FgAbGroup(static_cast<std::size_t>(d.m), {});
    case DomainKind::product_with_sphere: {
      TargetFacts bf = derive_facts(*d.base);
      if (!bf.pi1) return std::nullopt;
      FgAbGroup h = abelianization(*bf.pi1);
      if (d.m - d.base->n == 1) h = FgAbGroup(h.free_rank() + 1, h.torsion());
      return h;
    }
    default: return std::nullopt;
  }
}

// ---------------------------------------------------------------- JSON parsing

namespace detail {

inline void reject_unknown_keys(const Json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) throw ValidationError(path + "." + it.key(), "unknown field");
  }
}

inline std::optional<bool> opt_bool(const Json& obj, const char* key, const std::string& path) {
  if (!obj.contains(key) || obj[key].is_null()) return std::nullopt;
  if (!obj[key].is_boolean()) throw ValidationError(path + "." + key, "expected true, false or null");
  return obj[key].get<bool>();
}

inline FpGroup presentation_from_json(const Json& j, const std::string& field) {
  if (!j.is_string()) throw ValidationError(field, "expected a presentation string like \"gens: a; rels: a^5\"");
  try {
    return FpGroup::parse(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ValidationError(field, e.what());
  }
}

inline int dimension(const Json& obj, const char* key, const std::string& path, int lo) {
  return static_cast<int>(small_int_from_json(require(obj, key, path), path + "." + key, lo, 10'000));
}

}  // namespace detail

inline Target target_from_json(const Json& j, const std::string& path) {
  Target t;
  std::string kind = require_string(j, "kind", path);
  if (kind == "circle") {
    detail::reject_unknown_keys(j, path, {"kind", "n"});
    t.kind = TargetKind::circle;
    t.n = 1;
    if (j.contains("n") && j["n"] != 1) throw ValidationError(path + ".n", "a circle has dimension 1");
  } else if (kind == "sphere") {
    detail::reject_unknown_keys(j, path, {"kind", "n"});
    t.kind = TargetKind::sphere;
    t.n = detail::dimension(j, "n", path, 1);
    if (t.n == 1) t.kind = TargetKind::circle;
  } else if (kind == "space_form") {
    detail::reject_unknown_keys(j, path, {"kind", "n", "group_order", "group"});
    t.kind = TargetKind::space_form;
    t.n = detail::dimension(j, "n", path, 1);
    if (j.contains("group")) t.group = detail::presentation_from_json(j["group"], path + ".group");
    if (j.contains("group_order")) {
      Integer k = integer_from_json(j["group_order"], path + ".group_order");
      if (k < 1) throw ValidationError(path + ".group_order", "must be >= 1");
      t.group_order = k;
    }
    if (!t.group && !t.group_order) throw ValidationError(path, "space_form needs group_order or group");
    if (t.group) {
      IndexResult r = subgroup_index(*t.group, {});
      if (r.is_infinite()) throw ValidationError(path + ".group", "the group of a space form must be finite");
      if (r.is_finite() && t.group_order && r.value() != *t.group_order)
        throw ValidationError(path + ".group_order", "presentation has order " + r.value().str() + ", not " +
                                                         t.group_order->str());
      if (r.is_finite()) t.group_order = r.value();
    }
    if (t.n % 2 == 0 && t.group_order && *t.group_order > 2)
      throw ValidationError(path + ".group_order", "only groups of order <= 2 act freely on even-dimensional spheres");
    if (t.n == 1) {
      // S^1 / G is again a circle.
      t = Target{};
      t.kind = TargetKind::circle;
      t.n = 1;
    }
  } else if (kind == "projective") {
    detail::reject_unknown_keys(j, path, {"kind", "field", "dim"});
    t.kind = TargetKind::projective;
    std::string field = require_string(j, "field", path);
    if (field != "R" && field != "C" && field != "H") throw ValidationError(path + ".field", "expected R, C or H");
    t.field = field[0];
    t.proj_dim = detail::dimension(j, "dim", path, 1);
    t.n = t.proj_dim * (field == "R" ? 1 : field == "C" ? 2 : 4);
    if (t.field == 'R' && t.proj_dim == 1) {
      t.kind = TargetKind::circle;
      t.n = 1;
    }
  } else if (kind == "torus") {
    detail::reject_unknown_keys(j, path, {"kind", "n"});
    t.kind = TargetKind::torus;
    t.n = detail::dimension(j, "n", path, 1);
    if (t.n == 1) t.kind = TargetKind::circle;
  } else if (kind == "product") {
    detail::reject_unknown_keys(j, path, {"kind", "factors"});
    t.kind = TargetKind::product;
    const Json& fs = require(j, "factors", path);
    if (!fs.is_array() || fs.size() < 2) throw ValidationError(path + ".factors", "expected at least two factors");
    for (std::size_t i = 0; i < fs.size(); ++i) {
      t.factors.push_back(target_from_json(fs[i], path + ".factors[" + std::to_string(i) + "]"));
      t.n += t.factors.back().n;
      t.compact = t.compact && t.factors.back().compact;
    }
  } else if (kind == "generic") {
    detail::reject_unknown_keys(j, path, {"kind", "n", "pi1", "compact", "euler", "fibration_facts", "family"});
    t.kind = TargetKind::generic;
    t.n = detail::dimension(j, "n", path, 1);
    if (j.contains("pi1")) t.pi1 = detail::presentation_from_json(j["pi1"], path + ".pi1");
    if (auto c = detail::opt_bool(j, "compact", path)) t.compact = *c;
    if (j.contains("euler") && !j["euler"].is_null()) t.euler = integer_from_json(j["euler"], path + ".euler");
    if (j.contains("fibration_facts")) {
      const Json& ff = j["fibration_facts"];
      if (!ff.is_array()) throw ValidationError(path + ".fibration_facts", "expected an array of strings");
      for (std::size_t i = 0; i < ff.size(); ++i) {
        std::string fact = ff[i].is_string() ? ff[i].get<std::string>() : "";
        if (fact != "serre_section" && fact != "fibers_over_infinite_pi1" && fact != "fibers_over_loose_base")
          throw ValidationError(path + ".fibration_facts[" + std::to_string(i) + "]",
                                "expected serre_section, fibers_over_infinite_pi1 or fibers_over_loose_base");
        t.fibration_facts.insert(fact);
      }
    }
    if (j.contains("family")) {
      const Json& fam = j["family"];
      std::string fpath = path + ".family";
      detail::reject_unknown_keys(fam, fpath, {"name", "r", "k"});
      t.family = require_string(fam, "name", fpath);
      if (t.family != "stiefel" && t.family != "grassmann" && t.family != "oriented_grassmann")
        throw ValidationError(fpath + ".name", "expected stiefel, grassmann or oriented_grassmann");
      t.family_r = detail::dimension(fam, "r", fpath, 2);
      t.family_k = detail::dimension(fam, "k", fpath, 1);
      if (t.family_k >= t.family_r) throw ValidationError(fpath + ".k", "need 1 <= k < r");
      int r = t.family_r, k = t.family_k;
      int expected = t.family == "stiefel" ? r * k - k * (k + 1) / 2 : k * (r - k);
      if (t.n != expected)
        throw ValidationError(path + ".n", t.family + " manifold with r = " + std::to_string(r) + ", k = " +
                                               std::to_string(k) + " has dimension " + std::to_string(expected));
    }
  } else {
    throw ValidationError(path + ".kind", "unknown target kind '" + kind + "'");
  }
  t.source = j;
  return t;
}

Problem problem_from_json(const Json& j, const std::string& path = "$");

inline Domain domain_from_json(const Json& j, const std::string& path) {
  Domain d;
  std::string kind = require_string(j, "kind", path);
  if (kind == "sphere" || kind == "torus") {
    detail::reject_unknown_keys(j, path, {"kind", "m"});
    d.kind = kind == "sphere" ? DomainKind::sphere : DomainKind::torus;
    d.m = detail::dimension(j, "m", path, 1);
  } else if (kind == "product_with_sphere") {
    detail::reject_unknown_keys(j, path, {"kind", "m", "base"});
    d.kind = DomainKind::product_with_sphere;
    d.base = std::make_shared<Target>(target_from_json(require(j, "base", path), path + ".base"));
    d.m = detail::dimension(j, "m", path, 1);
    if (d.m <= d.base->n) throw ValidationError(path + ".m", "must exceed the base dimension " + std::to_string(d.base->n));
  } else if (kind == "generic") {
    detail::reject_unknown_keys(j, path, {"kind", "m", "h1", "pi1"});
    d.kind = DomainKind::generic;
    d.m = detail::dimension(j, "m", path, 1);
    if (j.contains("h1")) d.h1 = group_from_json(j["h1"], path + ".h1");
    if (j.contains("pi1")) d.pi1 = detail::presentation_from_json(j["pi1"], path + ".pi1");
  } else {
    throw ValidationError(path + ".kind", "unknown domain kind '" + kind + "'");
  }
  return d;
}

inline std::string target_pi1_hint(const Target& t) {
  return std::string("target kind ") + to_string(t.kind);
}

inline MapData map_data_from_json(const Json& j, const Problem& p, const std::string& path) {
  MapData md;
  if (j.is_null()) return md;
  detail::reject_unknown_keys(j, path,
                              {"degrees", "h1_difference", "h1", "pi1_image", "difference_class", "index_vector",
                               "projection", "torus_matrices", "covering", "supplied", "f1_homotopic_f2",
                               "f1_homotopic_af2", "class_is_zero"});
  if (j.contains("degrees")) {
    Coords d = coords_from_json(j["degrees"], path + ".degrees");
    if (d.size() != 2) throw ValidationError(path + ".degrees", "expected [d1, d2]");
    md.degrees = std::make_pair(d[0], d[1]);
  }
  if (j.contains("h1_difference")) md.h1_difference = coords_from_json(j["h1_difference"], path + ".h1_difference");
  if (j.contains("h1")) {
    if (md.h1_difference) throw ValidationError(path + ".h1", "give either h1 or h1_difference, not both");
    const Json& h = j["h1"];
    detail::reject_unknown_keys(h, path + ".h1", {"f1", "f2"});
    Coords a = coords_from_json(require(h, "f1", path + ".h1"), path + ".h1.f1");
    Coords b = coords_from_json(require(h, "f2", path + ".h1"), path + ".h1.f2");
    if (a.size() != b.size()) throw ValidationError(path + ".h1.f2", "length differs from h1.f1");
    Coords diff(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
    md.h1_difference = diff;
  }
  if (j.contains("pi1_image")) {
    TargetFacts tf = derive_facts(p.target);
    if (!tf.pi1) throw ValidationError(path + ".pi1_image", "needs a pi1 presentation for the " + target_pi1_hint(p.target));
    const Json& arr = j["pi1_image"];
    if (!arr.is_array()) throw ValidationError(path + ".pi1_image", "expected an array of words");
    std::vector<Word> words;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      std::string field = path + ".pi1_image[" + std::to_string(i) + "]";
      if (!arr[i].is_string()) throw ValidationError(field, "expected a word string");
      try {
        words.push_back(tf.pi1->parse_word(arr[i].get<std::string>()));
      } catch (const std::invalid_argument& e) {
        throw ValidationError(field, e.what());
      }
    }
    md.pi1_image = words;
  }
  if (j.contains("difference_class")) md.difference_class = coords_from_json(j["difference_class"], path + ".difference_class");
  if (j.contains("index_vector")) {
    const Json& arr = j["index_vector"];
    if (!arr.is_array()) throw ValidationError(path + ".index_vector", "expected an array of coordinate lists");
    std::vector<Coords> v;
    for (std::size_t i = 0; i < arr.size(); ++i)
      v.push_back(coords_from_json(arr[i], path + ".index_vector[" + std::to_string(i) + "]"));
    md.index_vector = v;
  }
  if (auto b = detail::opt_bool(j, "projection", path)) md.projection = *b;
  if (j.contains("torus_matrices")) {
    const Json& tm = j["torus_matrices"];
    std::string tpath = path + ".torus_matrices";
    detail::reject_unknown_keys(tm, tpath, {"A", "B"});
    auto mat = [&](const char* key) {
      const Json& v = require(tm, key, tpath);
      try {
        if (v.is_string()) return IntMatrix::parse(v.get<std::string>());
        if (!v.is_array()) throw ValidationError(tpath + "." + key, "expected \"a b; c d\" or an array of rows");
        std::size_t rows = v.size();
        std::size_t cols = rows ? v[0].size() : 0;
        return matrix_from_json(v, rows, cols, tpath + "." + key);
      } catch (const ValidationError&) {
        throw;
      } catch (const std::invalid_argument& e) {
        throw ValidationError(tpath + "." + key, e.what());
      }
    };
    md.torus_matrices = std::make_pair(mat("A"), mat("B"));
  }
  if (j.contains("covering")) {
    const Json& c = j["covering"];
    std::string cpath = path + ".covering";
    detail::reject_unknown_keys(c, cpath, {"degree", "lifted"});
    const Json& deg = require(c, "degree", cpath);
    Covering cov;
    if (deg.is_string() && deg.get<std::string>() == "infinite") {
      cov.degree = Cardinal::infinite();
    } else {
      Integer d = integer_from_json(deg, cpath + ".degree");
      if (d < 1) throw ValidationError(cpath + ".degree", "must be >= 1 or \"infinite\"");
      cov.degree = d;
    }
    cov.lifted = std::make_shared<Problem>(problem_from_json(require(c, "lifted", cpath), cpath + ".lifted"));
    if (cov.lifted->pair != p.pair)
      throw ValidationError(cpath + ".lifted.pair", "the lifted problem must have the same pair kind");
    md.covering = cov;
  }
  if (j.contains("supplied")) {
    const Json& s = j["supplied"];
    std::string spath = path + ".supplied";
    detail::reject_unknown_keys(s, spath, {"N", "N_sharp", "MCC", "MC"});
    for (auto it = s.begin(); it != s.end(); ++it) {
      if (it->is_string() && it->get<std::string>() == "infinite") {
        md.supplied[it.key()] = Cardinal::infinite();
      } else {
        Integer v = integer_from_json(*it, spath + "." + it.key());
        if (v < 0) throw ValidationError(spath + "." + it.key(), "must be >= 0");
        md.supplied[it.key()] = v;
      }
    }
  }
  md.f1_homotopic_f2 = detail::opt_bool(j, "f1_homotopic_f2", path);
  md.f1_homotopic_af2 = detail::opt_bool(j, "f1_homotopic_af2", path);
  md.class_is_zero = detail::opt_bool(j, "class_is_zero", path);
  return md;
}

inline Assertions assertions_from_json(const Json& j, const std::string& path) {
  Assertions a;
  if (j.is_null()) return a;
  detail::reject_unknown_keys(j, path,
                              {"omega_sharp_nonzero", "omega_tilde_nonzero", "x_m_vanishes", "mc_finite",
                               "not_coincidence_producing"});
  a.omega_sharp_nonzero = detail::opt_bool(j, "omega_sharp_nonzero", path);
  a.omega_tilde_nonzero = detail::opt_bool(j, "omega_tilde_nonzero", path);
  a.x_m_vanishes = detail::opt_bool(j, "x_m_vanishes", path);
  a.mc_finite = detail::opt_bool(j, "mc_finite", path);
  if (a.x_m_vanishes == false)
    throw ValidationError(path + ".x_m_vanishes", "only a vanishing assertion (true) is meaningful");
  if (a.mc_finite == false) throw ValidationError(path + ".mc_finite", "only a finiteness assertion (true) is meaningful");
  if (j.contains("not_coincidence_producing")) {
    const Json& n = j["not_coincidence_producing"];
    std::string npath = path + ".not_coincidence_producing";
    detail::reject_unknown_keys(n, npath, {"f1", "f2"});
    a.ncp_f1 = detail::opt_bool(n, "f1", npath);
    a.ncp_f2 = detail::opt_bool(n, "f2", npath);
  }
  return a;
}

/// Cross-field checks that need the whole problem.
inline void validate_problem(const Problem& p, const std::string& path) {
  const std::string md = path + ".map_data";
  const int m = p.domain.m, n = p.target.n;
  if (p.map.f1_homotopic_af2 && p.target.kind != TargetKind::sphere)
    throw ValidationError(md + ".f1_homotopic_af2", "only meaningful for sphere targets (a is the antipodal map)");
  if (p.pair == PairKind::self) {
    if (p.map.f1_homotopic_f2 == false) throw ValidationError(md + ".f1_homotopic_f2", "a self-coincidence pair has f1 = f2");
    if (p.map.difference_class || p.map.degrees || p.map.h1_difference)
      throw ValidationError(md, "difference data is not used for self-coincidence pairs");
  }
  if (p.map.difference_class) {
    if (p.domain.kind != DomainKind::sphere)
      throw ValidationError(md + ".difference_class", "classes in pi_m(S^n) need a sphere domain");
    if (p.target.kind != TargetKind::sphere && p.target.kind != TargetKind::space_form)
      throw ValidationError(md + ".difference_class", "needs a sphere or space form target");
  }
  if (p.map.degrees && m != n)
    throw ValidationError(md + ".degrees", "degrees need m = n (got m = " + std::to_string(m) + ", n = " + std::to_string(n) + ")");
  if (p.map.projection) {
    if (p.domain.kind != DomainKind::product_with_sphere || p.pair != PairKind::self)
      throw ValidationError(md + ".projection", "needs a product_with_sphere domain and a self pair");
    if (p.domain.base->source != p.target.source)
      throw ValidationError(md + ".projection", "the domain base must be the target manifold");
  }
  if (p.target.kind == TargetKind::sphere && m < n) {
    if (p.map.f1_homotopic_af2 == false || p.map.f1_homotopic_f2 == false || p.map.class_is_zero == false)
      throw ValidationError(md, "every map S^m -> S^n is null-homotopic when m < n");
  }
  if (p.map.index_vector && p.domain.kind != DomainKind::sphere)
    throw ValidationError(md + ".index_vector", "index vectors need a sphere domain");
  if (p.map.torus_matrices) {
    const auto& [a, b] = *p.map.torus_matrices;
    if (p.domain.kind != DomainKind::torus || p.target.kind != TargetKind::torus || m != n)
      throw ValidationError(md + ".torus_matrices", "needs torus domain and target of equal dimension");
    if (a.rows() != static_cast<std::size_t>(n) || a.cols() != static_cast<std::size_t>(n))
      throw ValidationError(md + ".torus_matrices.A", "expected " + std::to_string(n) + "x" + std::to_string(n) + ", got " + a.shape());
    if (b.rows() != static_cast<std::size_t>(n) || b.cols() != static_cast<std::size_t>(n))
      throw ValidationError(md + ".torus_matrices.B", "expected " + std::to_string(n) + "x" + std::to_string(n) + ", got " + b.shape());
  }
  if (p.map.pi1_image && p.pair != PairKind::root)
    throw ValidationError(md + ".pi1_image", "the image of pi_1 is used in the root case only");
  if (p.pair == PairKind::root && p.map.f1_homotopic_f2 && p.map.class_is_zero &&
      *p.map.f1_homotopic_f2 != *p.map.class_is_zero)
    throw ValidationError(md + ".class_is_zero", "contradicts f1_homotopic_f2 (f2 is constant)");
}

inline Problem problem_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ValidationError(path, "a problem must be a JSON object");
  detail::reject_unknown_keys(j, path, {"domain", "target", "pair", "map_data", "assert", "name"});
  Problem p;
  p.domain = domain_from_json(require(j, "domain", path), path + ".domain");
  p.target = target_from_json(require(j, "target", path), path + ".target");
  std::string pair = j.contains("pair") ? require_string(j, "pair", path) : "general";
  if (pair == "root") {
    p.pair = PairKind::root;
  } else if (pair == "self") {
    p.pair = PairKind::self;
  } else if (pair != "general") {
    throw ValidationError(path + ".pair", "expected root, self or general");
  }
  p.map = map_data_from_json(j.contains("map_data") ? j["map_data"] : Json(), p, path + ".map_data");
  p.asserted = assertions_from_json(j.contains("assert") ? j["assert"] : Json(), path + ".assert");
  validate_problem(p, path);
  return p;
}

}  // namespace nck
