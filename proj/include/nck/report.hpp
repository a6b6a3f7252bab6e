#pragma once

#include "nck/json_io.hpp"

#include <string>
#include <vector>

namespace nck {

/// Finite(k) | Infinite | Unknown(reason).
class Verdict {
 public:
  enum class Kind { finite, infinite, unknown };

  Verdict() : kind_(Kind::unknown), reason_("not evaluated") {}
  static Verdict finite(Integer k) { return Verdict(Kind::finite, std::move(k), {}); }
  static Verdict infinite() { return Verdict(Kind::infinite, 0, {}); }
  static Verdict unknown(std::string reason) { return Verdict(Kind::unknown, 0, std::move(reason)); }
  static Verdict of(const Cardinal& c) { return c.is_infinite() ? infinite() : finite(c.value()); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::finite; }
  bool is_infinite() const { return kind_ == Kind::infinite; }
  bool is_unknown() const { return kind_ == Kind::unknown; }
  bool is_known() const { return kind_ != Kind::unknown; }
  const Integer& value() const { return value_; }
  const std::string& reason() const { return reason_; }
  Cardinal cardinal() const { return is_infinite() ? Cardinal::infinite() : Cardinal(value_); }

  friend bool operator==(const Verdict& a, const Verdict& b) {
    return a.kind_ == b.kind_ && a.value_ == b.value_ && a.reason_ == b.reason_;
  }

  std::string str() const {
    switch (kind_) {
      case Kind::finite: return value_.str();
      case Kind::infinite: return "infinite";
      default: return "unknown (" + reason_ + ")";
    }
  }

  Json to_json() const {
    switch (kind_) {
      case Kind::finite: return Json{{"finite", integer_to_json(value_)}};
      case Kind::infinite: return "infinite";
      default: return Json{{"unknown", reason_}};
    }
  }

  static Verdict from_json(const Json& j, const std::string& field) {
    if (j.is_string() && j.get<std::string>() == "infinite") return infinite();
    if (j.is_object() && j.size() == 1) {
      if (j.contains("finite")) {
        Integer k = integer_from_json(j["finite"], field + ".finite");
        if (k < 0) throw ValidationError(field + ".finite", "must be >= 0");
        return finite(k);
      }
      if (j.contains("unknown") && j["unknown"].is_string()) return unknown(j["unknown"].get<std::string>());
    }
    throw ValidationError(field, "expected {\"finite\": k}, \"infinite\" or {\"unknown\": reason}");
  }

 private:
  Verdict(Kind k, Integer v, std::string r) : kind_(k), value_(std::move(v)), reason_(std::move(r)) {}
  Kind kind_;
  Integer value_;
  std::string reason_;
};

struct ProvenanceItem {
  std::string rule;
  std::string paper_ref;
  friend bool operator==(const ProvenanceItem&, const ProvenanceItem&) = default;
};

struct InvariantReport {
  Verdict N, N_sharp, MCC, MC, reidemeister;
  std::vector<ProvenanceItem> provenance;
  std::vector<std::string> conditional_on;
  std::string table_version;

  friend bool operator==(const InvariantReport&, const InvariantReport&) = default;

  Json to_json() const {
    Json j;
    j["N"] = N.to_json();
    j["N_sharp"] = N_sharp.to_json();
    j["MCC"] = MCC.to_json();
    j["MC"] = MC.to_json();
    j["reidemeister"] = reidemeister.to_json();
    Json prov = Json::array();
    for (const auto& p : provenance) prov.push_back(Json{{"rule", p.rule}, {"paper_ref", p.paper_ref}});
    j["provenance"] = prov;
    j["conditional_on"] = conditional_on;
    j["table_version"] = table_version;
    return j;
  }

  static InvariantReport from_json(const Json& j, const std::string& path = "$") {
    InvariantReport r;
    r.N = Verdict::from_json(require(j, "N", path), path + ".N");
    r.N_sharp = Verdict::from_json(require(j, "N_sharp", path), path + ".N_sharp");
    r.MCC = Verdict::from_json(require(j, "MCC", path), path + ".MCC");
    r.MC = Verdict::from_json(require(j, "MC", path), path + ".MC");
    r.reidemeister = Verdict::from_json(require(j, "reidemeister", path), path + ".reidemeister");
    const Json& prov = require(j, "provenance", path);
    if (!prov.is_array()) throw ValidationError(path + ".provenance", "expected an array");
    for (std::size_t i = 0; i < prov.size(); ++i) {
      std::string p = path + ".provenance[" + std::to_string(i) + "]";
      r.provenance.push_back({require_string(prov[i], "rule", p), require_string(prov[i], "paper_ref", p)});
    }
    const Json& cond = require(j, "conditional_on", path);
    if (!cond.is_array()) throw ValidationError(path + ".conditional_on", "expected an array");
    for (std::size_t i = 0; i < cond.size(); ++i) {
      if (!cond[i].is_string()) throw ValidationError(path + ".conditional_on[" + std::to_string(i) + "]", "expected a string");
      r.conditional_on.push_back(cond[i].get<std::string>());
    }
    r.table_version = require_string(j, "table_version", path);
    return r;
  }

  std::string text() const {
    std::string s;
    s += "N       = " + N.str() + "\n";
    s += "N#      = " + N_sharp.str() + "\n";
    s += "MCC     = " + MCC.str() + "\n";
    s += "MC      = " + MC.str() + "\n";
    s += "#pi0(E) = " + reidemeister.str() + "\n";
    for (const auto& p : provenance) s += "  by " + p.rule + ": " + p.paper_ref + "\n";
    if (!conditional_on.empty()) {
      s += "conditional on:";
      for (const auto& c : conditional_on) s += " " + c;
      s += "\n";
    }
    s += "tables " + table_version + "\n";
    return s;
  }
};

}  // namespace nck
