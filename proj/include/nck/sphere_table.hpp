#pragma once

#include "nck/finite_group.hpp"
#include "nck/json_io.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#ifndef NCK_DATA_DIR
#define NCK_DATA_DIR "data"
#endif

namespace nck {

template <class T>
using Maybe = std::variant<T, Unknown>;

template <class T>
bool known(const Maybe<T>& x) {
  return std::holds_alternative<T>(x);
}

struct SphereGroupEntry {
  int m = 0, n = 0;
  FgAbGroup group;
  std::vector<std::string> generator_labels;
  std::string provenance;
};

/// E : pi_m(S^n) -> pi_{m+1}(S^{n+1}). `hom` is absent when only range facts are known.
struct SuspensionEntry {
  int m = 0, n = 0;
  std::optional<AbelianHom> hom;
  std::optional<bool> injective, surjective;
  std::string source;  // "table", "trivial group", "range"
};

enum class KernelDerivation { explicit_entry, double_suspension, trivial_group };

inline const char* to_string(KernelDerivation d) {
  switch (d) {
    case KernelDerivation::explicit_entry: return "explicit";
    case KernelDerivation::double_suspension: return "double-suspension";
    default: return "trivial-group";
  }
}

/// ker h as a subgroup of pi_{m-1}(S^{n-1}).
struct HopfKernelEntry {
  int m = 0, n = 0;
  SubgroupDesc kernel{FgAbGroup::trivial(), {}};
  KernelDerivation derivation = KernelDerivation::explicit_entry;
  std::string provenance;
};

enum class ImageRestriction { all, ker_h };

inline bool same_subgroup(const SubgroupDesc& a, const SubgroupDesc& b) {
  for (const auto& g : a.generators())
    if (!in_subgroup(g, b)) return false;
  for (const auto& g : b.generators())
    if (!in_subgroup(g, a)) return false;
  return true;
}

inline bool is_trivial_subgroup(const SubgroupDesc& h) {
  for (const auto& g : h.generators())
    if (!h.ambient().is_zero(g)) return false;
  return true;
}

inline std::string pi_name(int m, int n) { return "pi_" + std::to_string(m) + "(S^" + std::to_string(n) + ")"; }

class SphereTable {
 public:
  static SphereTable from_json(const Json& j) {
    SphereTable t;
    if (!j.is_object()) throw ValidationError("", "table file must be a JSON object");
    auto schema = small_int_from_json(require(j, "schema", "$"), "schema", 0, 1000);
    if (schema != 1) throw ValidationError("schema", "unsupported schema " + std::to_string(schema) + ", expected 1");
    t.version_ = require_string(j, "version", "$");
    t.load_groups(require(j, "groups", "$"));
    if (j.contains("suspensions")) t.load_suspensions(j["suspensions"]);
    if (j.contains("hopf_kernels")) t.load_kernels(j["hopf_kernels"]);
    return t;
  }

  static SphereTable load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("", "cannot open sphere table '" + path + "'");
    Json j;
    try {
      j = Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw ValidationError("", "sphere table '" + path + "' is not valid JSON: " + e.what());
    }
    return from_json(j);
  }

  static std::string default_path() {
    if (const char* env = std::getenv("NCK_TABLES"); env && *env) return env;
    return std::string(NCK_DATA_DIR) + "/sphere_tables.json";
  }

  const std::string& version() const { return version_; }
  const std::map<std::pair<int, int>, SphereGroupEntry>& groups() const { return groups_; }

  std::optional<SphereGroupEntry> entry(int m, int n) const {
    auto it = groups_.find({m, n});
    if (it == groups_.end()) return std::nullopt;
    return it->second;
  }

  Maybe<FgAbGroup> pi(int m, int n) const {
    if (m < 0 || n < 0) throw std::invalid_argument("pi(m, n) needs m, n >= 0");
    if (m < n || (n == 0 && m >= 1) || (n == 1 && m >= 2)) return FgAbGroup::trivial();
    if (m == n && n >= 1) return FgAbGroup::integers();
    auto it = groups_.find({m, n});
    if (it == groups_.end()) return Unknown{pi_name(m, n) + " is outside the table (version " + version_ + ")"};
    return it->second.group;
  }

  Maybe<SuspensionEntry> suspension(int m, int n) const {
    if (auto it = suspensions_.find({m, n}); it != suspensions_.end()) return it->second;
    auto src = pi(m, n);
    auto dst = pi(m + 1, n + 1);
    if (!known(src) || !known(dst))
      return Unknown{"suspension " + pi_name(m, n) + " -> " + pi_name(m + 1, n + 1) + " needs groups outside the table"};
    const auto& a = std::get<FgAbGroup>(src);
    const auto& b = std::get<FgAbGroup>(dst);
    SuspensionEntry e{m, n, std::nullopt, std::nullopt, std::nullopt, ""};
    if (a.is_trivial() || b.is_trivial()) {
      e.hom = AbelianHom{a, b, IntMatrix(b.coordinate_count(), a.coordinate_count())};
      e.source = "trivial group";
    } else if (m == n && n >= 1) {
      e.hom = AbelianHom{a, b, IntMatrix{{1}}};
      e.source = "degree";
    } else {
      e.source = "range";
      if (m < 2 * n - 1) e.injective = true;
      if (m <= 2 * n - 1) e.surjective = true;
      return e;
    }
    e.injective = e.hom->is_injective();
    e.surjective = e.hom->is_surjective();
    return e;
  }

  Maybe<HopfKernelEntry> ker_h(int m, int n) const {
    if (n < 2 || m < 1) return Unknown{"ker h is only defined for n >= 2"};
    auto amb = pi(m - 1, n - 1);
    if (!known(amb)) return std::get<Unknown>(amb);
    const auto& ambient = std::get<FgAbGroup>(amb);
    if (ambient.is_trivial())
      return HopfKernelEntry{m, n, SubgroupDesc::trivial_in(ambient), KernelDerivation::trivial_group,
                             pi_name(m - 1, n - 1) + " = 0"};
    if (auto it = kernels_.find({m, n}); it != kernels_.end()) return it->second;
    if (n >= 3 && m <= 3 * n - 6) {
      auto k = double_suspension_kernel(m, n);
      if (k) return HopfKernelEntry{m, n, *k, KernelDerivation::double_suspension, "image of E on " + pi_name(m - 2, n - 2)};
      return Unknown{"ker h at (" + std::to_string(m) + ", " + std::to_string(n) + ") needs the suspension of " +
                     pi_name(m - 2, n - 2) + ", which is not in the table"};
    }
    return Unknown{"ker h at (" + std::to_string(m) + ", " + std::to_string(n) +
                   ") is outside m <= 3n - 6 and has no explicit table entry"};
  }

  /// Is v in E(pi_{m-1}(S^{n-1})) (or in E(ker h)) inside pi_m(S^n)?
  Maybe<bool> class_in_image_of_E(const Coords& v, int m, int n, ImageRestriction restrict) const {
    auto g = pi(m, n);
    if (!known(g)) return std::get<Unknown>(g);
    const auto& group = std::get<FgAbGroup>(g);
    if (v.size() != group.coordinate_count())
      throw std::invalid_argument("class has " + std::to_string(v.size()) + " coordinates but " + pi_name(m, n) +
                                  " = " + group.str() + " has " + std::to_string(group.coordinate_count()));
    if (group.is_zero(v)) return true;
    if (m < 1 || n < 1) return Unknown{"no suspension into " + pi_name(m, n)};
    auto s = suspension(m - 1, n - 1);
    if (!known(s)) return std::get<Unknown>(s);
    const auto& e = std::get<SuspensionEntry>(s);
    if (restrict == ImageRestriction::all) {
      if (e.hom) return in_subgroup(v, e.hom->image());
      if (e.surjective == true) return true;
      return Unknown{"suspension into " + pi_name(m, n) + " is known only through range facts"};
    }
    auto k = ker_h(m, n);
    if (!known(k)) return std::get<Unknown>(k);
    const auto& kernel = std::get<HopfKernelEntry>(k).kernel;
    if (is_trivial_subgroup(kernel)) return false;
    if (e.hom) return in_subgroup(v, e.hom->image_of(kernel));
    return Unknown{"suspension into " + pi_name(m, n) + " has no matrix in the table"};
  }

  Json group_json(int m, int n) const {
    Json j;
    j["m"] = m;
    j["n"] = n;
    auto g = pi(m, n);
    if (!known(g)) {
      j["unknown"] = std::get<Unknown>(g).reason;
      return j;
    }
    j["group"] = group_to_json(std::get<FgAbGroup>(g));
    j["name"] = std::get<FgAbGroup>(g).str();
    if (auto e = entry(m, n)) {
      j["generator_labels"] = e->generator_labels;
      j["provenance"] = e->provenance;
    } else {
      j["provenance"] = "dimension rule (no table lookup)";
    }
    return j;
  }

  Json suspension_json(int m, int n) const {
    Json j;
    j["m"] = m;
    j["n"] = n;
    auto s = suspension(m, n);
    if (!known(s)) {
      j["unknown"] = std::get<Unknown>(s).reason;
      return j;
    }
    const auto& e = std::get<SuspensionEntry>(s);
    if (e.hom) {
      j["source_group"] = e.hom->source.str();
      j["target_group"] = e.hom->target.str();
      j["matrix"] = matrix_to_json(e.hom->matrix);
    }
    auto flag = [](const std::optional<bool>& f) { return f ? Json(*f) : Json("unknown"); };
    j["injective"] = flag(e.injective);
    j["surjective"] = flag(e.surjective);
    j["derived_from"] = e.source;
    return j;
  }

  Json kernel_json(int m, int n) const {
    Json j;
    j["m"] = m;
    j["n"] = n;
    auto k = ker_h(m, n);
    if (!known(k)) {
      j["unknown"] = std::get<Unknown>(k).reason;
      return j;
    }
    const auto& e = std::get<HopfKernelEntry>(k);
    j["ambient"] = e.kernel.ambient().str();
    Json gens = Json::array();
    for (const auto& g : e.kernel.generators()) gens.push_back(coords_to_json(g));
    j["generators"] = gens;
    j["derivation"] = to_string(e.derivation);
    j["provenance"] = e.provenance;
    return j;
  }

 private:
  std::optional<SubgroupDesc> double_suspension_kernel(int m, int n) const {
    auto s = suspension(m - 2, n - 2);
    if (!known(s)) return std::nullopt;
    const auto& e = std::get<SuspensionEntry>(s);
    if (e.hom) return e.hom->image();
    if (e.surjective == true) {
      auto amb = pi(m - 1, n - 1);
      return SubgroupDesc::whole(std::get<FgAbGroup>(amb));
    }
    return std::nullopt;
  }

  void load_groups(const Json& arr) {
    if (!arr.is_array()) throw ValidationError("groups", "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string path = "groups[" + std::to_string(i) + "]";
      const Json& g = arr[i];
      SphereGroupEntry e;
      e.m = static_cast<int>(small_int_from_json(require(g, "m", path), path + ".m"));
      e.n = static_cast<int>(small_int_from_json(require(g, "n", path), path + ".n", 1));
      e.group = group_from_json(g, path);
      e.provenance = require_string(g, "provenance", path);
      if (g.contains("generator_labels")) {
        const Json& labels = g["generator_labels"];
        if (!labels.is_array()) throw ValidationError(path + ".generator_labels", "expected an array of strings");
        for (const auto& l : labels) {
          if (!l.is_string()) throw ValidationError(path + ".generator_labels", "expected an array of strings");
          e.generator_labels.push_back(l.get<std::string>());
        }
        if (e.generator_labels.size() != e.group.coordinate_count())
          throw ValidationError(path + ".generator_labels",
                                std::to_string(e.generator_labels.size()) + " labels for " +
                                    std::to_string(e.group.coordinate_count()) + " generators");
      }
      const std::string where = " (" + pi_name(e.m, e.n) + ")";
      if (e.m < e.n && !e.group.is_trivial())
        throw ValidationError(path, "group must be trivial below the dimension" + where);
      if (e.m == e.n && !(e.group == FgAbGroup::integers()))
        throw ValidationError(path, "pi_n(S^n) must be Z" + where + ", got " + e.group.str());
      if (e.n == 1 && e.m >= 2 && !e.group.is_trivial())
        throw ValidationError(path, "higher homotopy of S^1 must vanish" + where);
      if (!groups_.emplace(std::make_pair(e.m, e.n), e).second)
        throw ValidationError(path, "duplicate entry" + where);
    }
  }

  void load_suspensions(const Json& arr) {
    if (!arr.is_array()) throw ValidationError("suspensions", "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string path = "suspensions[" + std::to_string(i) + "]";
      const Json& s = arr[i];
      int m = static_cast<int>(small_int_from_json(require(s, "m", path), path + ".m"));
      int n = static_cast<int>(small_int_from_json(require(s, "n", path), path + ".n", 1));
      auto src = groups_.find({m, n});
      auto dst = groups_.find({m + 1, n + 1});
      if (src == groups_.end()) throw ValidationError(path, "source group " + pi_name(m, n) + " is not in groups");
      if (dst == groups_.end())
        throw ValidationError(path, "target group " + pi_name(m + 1, n + 1) + " is not in groups");
      const FgAbGroup& a = src->second.group;
      const FgAbGroup& b = dst->second.group;
      std::size_t rows = b.coordinate_count(), cols = a.coordinate_count();
      if (s.contains("rows") && small_int_from_json(s["rows"], path + ".rows") != static_cast<long long>(rows))
        throw ValidationError(path + ".rows", "declared " + s["rows"].dump() + " rows but " + pi_name(m + 1, n + 1) +
                                                  " = " + b.str() + " has " + std::to_string(rows) + " coordinates");
      if (s.contains("cols") && small_int_from_json(s["cols"], path + ".cols") != static_cast<long long>(cols))
        throw ValidationError(path + ".cols", "declared " + s["cols"].dump() + " columns but " + pi_name(m, n) +
                                                  " = " + a.str() + " has " + std::to_string(cols) + " coordinates");
      IntMatrix mat = matrix_from_json(require(s, "matrix", path), rows, cols, path + ".matrix");
      AbelianHom hom{a, b, mat};
      try {
        hom.validate();
      } catch (const std::invalid_argument& e) {
        throw ValidationError(path + ".matrix", e.what());
      }
      SuspensionEntry e{m, n, hom, hom.is_injective(), hom.is_surjective(), "table"};
      for (const char* key : {"injective", "surjective"}) {
        if (!s.contains(key)) continue;
        if (!s[key].is_boolean()) throw ValidationError(path + "." + key, "expected a boolean");
        bool computed = std::string(key) == "injective" ? *e.injective : *e.surjective;
        if (s[key].get<bool>() != computed)
          throw ValidationError(path + "." + key, std::string("flag says ") + (computed ? "false" : "true") +
                                                      " but the matrix gives " + (computed ? "true" : "false"));
      }
      if (m < 2 * n - 1 && !*e.injective)
        throw ValidationError(path + ".matrix", "not injective although m < 2n - 1 (suspension isomorphism range)");
      if (m <= 2 * n - 1 && !*e.surjective)
        throw ValidationError(path + ".matrix", "not surjective although m <= 2n - 1 (suspension epimorphism range)");
      if (!suspensions_.emplace(std::make_pair(m, n), e).second) throw ValidationError(path, "duplicate entry");
    }
  }

  void load_kernels(const Json& arr) {
    if (!arr.is_array()) throw ValidationError("hopf_kernels", "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string path = "hopf_kernels[" + std::to_string(i) + "]";
      const Json& k = arr[i];
      int m = static_cast<int>(small_int_from_json(require(k, "m", path), path + ".m"));
      int n = static_cast<int>(small_int_from_json(require(k, "n", path), path + ".n", 2));
      std::string derivation = require_string(k, "derivation", path);
      auto amb = groups_.find({m - 1, n - 1});
      if (amb == groups_.end()) throw ValidationError(path, "ambient group " + pi_name(m - 1, n - 1) + " is not in groups");
      const FgAbGroup& ambient = amb->second.group;
      const Json& gens_json = require(k, "generators", path);
      if (!gens_json.is_array()) throw ValidationError(path + ".generators", "expected an array of coordinate lists");
      std::vector<Coords> gens;
      for (std::size_t g = 0; g < gens_json.size(); ++g) {
        std::string field = path + ".generators[" + std::to_string(g) + "]";
        Coords v = coords_from_json(gens_json[g], field);
        if (v.size() != ambient.coordinate_count())
          throw ValidationError(field, std::to_string(v.size()) + " coordinates, but " + pi_name(m - 1, n - 1) + " = " +
                                           ambient.str() + " has " + std::to_string(ambient.coordinate_count()));
        gens.push_back(v);
      }
      HopfKernelEntry e{m, n, SubgroupDesc(ambient, gens), KernelDerivation::explicit_entry,
                        k.contains("provenance") ? require_string(k, "provenance", path) : std::string("table")};
      if (derivation == "double-suspension") {
        if (n < 3 || m > 3 * n - 6)
          throw ValidationError(path + ".derivation", "double-suspension derivation needs n >= 3 and m <= 3n - 6, got m = " +
                                                          std::to_string(m) + ", n = " + std::to_string(n));
        auto image = double_suspension_kernel(m, n);
        if (!image) throw ValidationError(path + ".derivation", "suspension of " + pi_name(m - 2, n - 2) + " is not available");
        if (!same_subgroup(*image, e.kernel))
          throw ValidationError(path + ".generators", "do not span the image of E on " + pi_name(m - 2, n - 2));
        e.derivation = KernelDerivation::double_suspension;
      } else if (derivation != "explicit") {
        throw ValidationError(path + ".derivation", "expected 'explicit' or 'double-suspension', got '" + derivation + "'");
      }
      if (!kernels_.emplace(std::make_pair(m, n), e).second) throw ValidationError(path, "duplicate entry");
    }
  }

  std::string version_;
  std::map<std::pair<int, int>, SphereGroupEntry> groups_;
  std::map<std::pair<int, int>, SuspensionEntry> suspensions_;
  std::map<std::pair<int, int>, HopfKernelEntry> kernels_;
};

/// The bundled (or NCK_TABLES-selected) table, loaded once.
inline const SphereTable& default_sphere_table() {
  static const SphereTable table = SphereTable::load(SphereTable::default_path());
  return table;
}

}  // namespace nck
