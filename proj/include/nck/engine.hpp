#pragma once

#include "nck/facts.hpp"
#include "nck/finite_group.hpp"
#include "nck/problem.hpp"
#include "nck/report.hpp"
#include "nck/sphere_table.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace nck {

struct EngineOptions {
  std::size_t max_cosets = 200'000;
  int max_covering_depth = 4;
};

namespace engine {

struct RuleInfo {
  const char* id;
  const char* paper_ref;
};

// Provenance is listed in this order.
inline const std::vector<RuleInfo>& rule_catalog() {
  static const std::vector<RuleInfo> rules = {
      {"reidemeister_trivial_pi1", "pi_1(N) = 0: the path space E(f1, f2) is connected"},
      {"reidemeister_circle", "circle target: #pi_0 E(f1, f2) is the index of (f1* - f2*)(H_1(M)) in Z"},
      {"reidemeister_abelian", "free abelian pi_1: alpha ~ alpha + (f1* - f2*)(gamma), so #pi_0 E = |coker(A - B)|"},
      {"reidemeister_simply_connected_domain", "pi_1(M) = 0: #pi_0 E(f1, f2) = #pi_1(N)"},
      {"reidemeister_root", "root case: #pi_0 E(f, *) is the index of f_*(pi_1(M)) in pi_1(N)"},
      {"reidemeister_self", "self-coincidence: pi_0 E(f, f) is pi_1(N) modulo conjugation by f_*(pi_1(M))"},
      {"dimension_gap", "m < n: a generic pair has empty coincidence set"},
      {"one_dimensional", "m = 1 or n = 1 with target other than the circle: all invariants vanish"},
      {"circle_target", "circle target: N = N# = MCC = index of (f1* - f2*)(H_1(M)); MC = N if m = 1, infinite if m >= 2; all 0 when f1 ~ f2"},
      {"sphere_target", "sphere target: MCC = N# = 0 if f1 ~ a f2 (a antipodal), #pi_0 E(f1, f2) otherwise"},
      {"sphere_target_finiteness", "sphere target: MC <= 1 if [f1] - [a f2] lies in E(pi_{m-1}(S^{n-1})), MC infinite otherwise"},
      {"space_form_nielsen", "odd-dimensional space form S^n/G: MCC = N# = 0 if f1 ~ f2 or m < n, #G if f1 !~ f2 and m > 1"},
      {"space_form_finiteness", "space form S^n/G, n >= 3: MC is finite (then #G) iff the lifted class lies in E(ker h) for #G >= 3, in E(pi_{m-1}(S^{n-1})) for #G <= 2"},
      {"root_loose", "root case: infinite index of f_*(pi_1(M)) or noncompact N makes (f, *) loose"},
      {"root_nielsen", "root case: omega# != 0 gives N# = b(f, *), equal to MCC for n != 2 and to MC whenever MC is finite"},
      {"self_loose", "self-coincidence: a nowhere vanishing vector field on N (chi(N) = 0 or N open) makes (f, f) loose"},
      {"self_connected", "self-coincidence: C(f, f) = M is connected, so MCC <= 1"},
      {"self_nielsen", "self-coincidence: omega#(f, f) != 0 gives N# = 1, equal to MCC for n != 2 and to MC whenever MC is finite"},
      {"projection_self", "projection N x S^(m-n) -> N with chi(N) != 0 and abelian nontrivial pi_1: N = N# = MCC = 1, MC infinite"},
      {"nielsen_dichotomy", "root and self-coincidence cases: N and N# take only the values 0 and b"},
      {"not_coincidence_producing", "no map into N is coincidence producing if N is open, chi(N) = 0, a sphere, or a nontrivial covering total space"},
      {"sphere_domain_omega", "S^m domain, maps not both coincidence producing, omega# != 0: N# = [pi_1(N) : (f1* - f2*)(pi_1(S^m))], equal to MCC for n != 2 and to MC whenever finite"},
      {"omega_tilde", "omega~ != 0 in the root, self or S^m-domain setting: N = N#"},
      {"omega_not_loose", "omega# vanishes for loose pairs, so omega# != 0 forces MCC >= 1"},
      {"loose_target", "S^m domain: pairs are loose if N != S^1 has infinite pi_1, N is open, N is a product of positive-dimensional manifolds, or N fibers over a base with onto i_*"},
      {"x_m_vanishing", "X_m(N) = 0 if m <= 2n - 3, n <= 2 or m <= 3, N open, N a sphere or projective space, N covered finitely by S^n, N fibered with a section or over a base with infinite pi_1, or a Stiefel/Grassmann manifold with enough vector fields"},
      {"x_m_loose", "S^m domain with X_m(N) = 0: the pair is loose iff omega# = 0 and one map is not coincidence producing"},
      {"wecken", "m = n != 2: N = N# = MCC = MC"},
      {"trivial_suspension_group", "pi_{m-1}(S^{n-1}) = 0: a finite MC vanishes"},
      {"finite_mc_reidemeister", "finite MC and n != 2: MC <= #pi_0 E(f1, f2)"},
      {"finite_mc_injective_E", "S^m domain, finite MC, (m, n) != (2, 2), E injective: N# = MCC = MC <= #pi_1(N)"},
      {"index_vector", "S^m domain with E injective: MC = N# = #{A in pi_1(N) : ind_A(f1, f2) != 0}"},
      {"covering_transfer", "d-fold covering: N#(f, *) = d N#(f~, *~) and N#(f, f) = N#(f~, f~), likewise N; MC(f, *) >= d MC(f~, *~), MC(f, f) >= MC(f~, f~)"},
      {"supplied", "value supplied with the problem (for example by the torus oracle)"},
      {"chain", "0 <= N <= N# <= MCC <= MC"},
      {"finiteness", "N, N# and MCC are finite"},
  };
  return rules;
}

inline std::size_t rule_rank(const std::string& id) {
  const auto& c = rule_catalog();
  for (std::size_t i = 0; i < c.size(); ++i)
    if (id == c[i].id) return i;
  return c.size();
}

inline std::string paper_ref(const std::string& id) {
  for (const auto& r : rule_catalog())
    if (id == r.id) return r.paper_ref;
  return "";
}

namespace assumption {
inline const std::string omega_sharp = "omega_sharp_nonzero";
inline const std::string omega_sharp_zero = "omega_sharp_zero";
inline const std::string omega_tilde = "omega_tilde_nonzero";
inline const std::string mc_finite = "mc_finite";
inline const std::string x_m = "x_m_vanishes";
inline const std::string ncp_f1 = "not_coincidence_producing(f1)";
inline const std::string ncp_f2 = "not_coincidence_producing(f2)";
}  // namespace assumption

struct Reidemeister {
  std::optional<Cardinal> value;
  Support support;
  std::string reason = "no rule computes #pi_0 E(f1, f2) for this input";
};

struct Context {
  const Problem& p;
  const SphereTable& table;
  EngineOptions options;
  int depth = 0;
  TargetFacts t;
  int m = 0, n = 0;
  FactStore s;
  Reidemeister R;

  std::optional<bool> homotopic;  // f1 ~ f2
  std::optional<bool> antipodal;  // f1 ~ a f2 (sphere targets)
  std::optional<Coords> cls;      // difference class in pi_m(S^n), reduced
  std::optional<std::string> cls_unknown;
  std::optional<Coords> h1_free_diff;  // (f1* - f2*) on the free part of H_1(M), circle targets
  std::optional<InvariantReport> lifted;

  Context(const Problem& problem, const SphereTable& tab, EngineOptions o, int d)
      : p(problem), table(tab), options(o), depth(d), t(derive_facts(problem.target, o.max_cosets)),
        m(problem.domain.m), n(problem.target.n) {}

  bool sphere_domain() const { return p.domain.kind == DomainKind::sphere; }
};

// ---------------------------------------------------------------- input interpretation

inline void merge_flag(std::optional<bool>& slot, std::optional<bool> v, const std::string& field, const char* what) {
  if (!v) return;
  if (slot && *slot != *v) throw ValidationError(field, std::string("contradicts the supplied class data (") + what + ")");
  slot = v;
}

inline void interpret_map_data(Context& c) {
  const Problem& p = c.p;
  const MapData& md = p.map;
  const std::string base = "$.map_data";
  const int m = c.m, n = c.n;

  if (p.pair == PairKind::self) c.homotopic = true;

  // Difference class in pi_m(S^n).
  if (md.difference_class || (md.degrees && (c.t.is_sphere || c.t.is_space_form))) {
    Coords v;
    if (md.difference_class) {
      v = *md.difference_class;
    } else {
      const auto& [d1, d2] = *md.degrees;
      Integer sign = (c.t.is_sphere && n % 2 == 0) ? Integer(-1) : Integer(1);  // deg a = (-1)^(n+1)
      v = {d1 - sign * d2};
    }
    auto g = c.table.pi(m, n);
    if (!known(g)) {
      c.cls_unknown = std::get<Unknown>(g).reason;
    } else {
      const auto& grp = std::get<FgAbGroup>(g);
      if (v.size() != grp.coordinate_count())
        throw ValidationError(base + ".difference_class", "expected " + std::to_string(grp.coordinate_count()) +
                                                              " coordinates for " + pi_name(m, n) + " = " + grp.str());
      c.cls = grp.reduce(v);
      bool zero = grp.is_zero(*c.cls);
      if (c.t.is_sphere) {
        c.antipodal = zero;
      } else {
        c.homotopic = zero;
      }
    }
  }
  if (md.degrees && c.t.is_sphere) {
    const auto& [d1, d2] = *md.degrees;
    merge_flag(c.homotopic, d1 == d2, base + ".degrees", "degrees");
  }

  // Difference on H_1 for circle targets.
  if (c.t.is_circle) {
    std::optional<FgAbGroup> h1 = domain_h1(p.domain);
    std::optional<Coords> diff;
    if (p.pair == PairKind::self) {
      if (h1) diff = Coords(h1->coordinate_count(), 0);
    } else if (md.h1_difference) {
      diff = md.h1_difference;
    } else if (md.degrees) {
      diff = Coords{md.degrees->first - md.degrees->second};
    } else if (h1 && h1->coordinate_count() == 0) {
      diff = Coords{};
    }
    if (diff) {
      if (!h1) throw ValidationError("$.domain.h1", "H_1(M) is needed to interpret the H_1 difference");
      if (diff->size() != h1->coordinate_count())
        throw ValidationError(base + ".h1_difference", "expected " + std::to_string(h1->coordinate_count()) +
                                                           " entries for H_1(M) = " + h1->str() + ", got " +
                                                           std::to_string(diff->size()));
      for (std::size_t i = h1->free_rank(); i < diff->size(); ++i)
        if ((*diff)[i] != 0)
          throw ValidationError(base + ".h1_difference[" + std::to_string(i) + "]",
                                "a homomorphism H_1(M) -> Z vanishes on torsion");
      c.h1_free_diff = Coords(diff->begin(), diff->begin() + static_cast<std::ptrdiff_t>(h1->free_rank()));
      bool zero = std::all_of(c.h1_free_diff->begin(), c.h1_free_diff->end(), [](const Integer& x) { return x == 0; });
      merge_flag(c.homotopic, zero, base + ".h1_difference", "H_1 difference");
    }
  }

  merge_flag(c.homotopic, md.f1_homotopic_f2, base + ".f1_homotopic_f2", "f1 ~ f2");
  if (p.pair == PairKind::root) merge_flag(c.homotopic, md.class_is_zero, base + ".class_is_zero", "[f] = 0");
  if (c.t.is_sphere) merge_flag(c.antipodal, md.f1_homotopic_af2, base + ".f1_homotopic_af2", "f1 ~ a f2");
  if (c.t.is_sphere && p.pair == PairKind::root && c.antipodal && !c.homotopic) c.homotopic = c.antipodal;
  if (c.t.is_sphere && p.pair == PairKind::root && c.homotopic && !c.antipodal) c.antipodal = c.homotopic;
  if (c.t.is_sphere && p.pair == PairKind::root && c.homotopic && c.antipodal && *c.homotopic != *c.antipodal)
    throw ValidationError(base, "with f2 constant, f1 ~ f2 and f1 ~ a f2 coincide");

  // A group with a single nonzero element pins the class down from "not homotopic".
  bool nonzero = (c.t.is_sphere && c.antipodal == false) || (c.t.is_space_form && c.homotopic == false);
  if (!c.cls && !md.difference_class && nonzero && c.m >= 1) {
    auto g = c.table.pi(m, n);
    if (known(g) && std::get<FgAbGroup>(g).order() == Cardinal(2)) c.cls = Coords{1};
  }

  if (md.covering) {
    if (c.depth >= c.options.max_covering_depth) throw ValidationError(base + ".covering", "coverings nested too deeply");
  }
}

inline std::optional<Cardinal> index_of_difference(const Coords& free_diff) {
  if (free_diff.empty()) return Cardinal::infinite();
  IntMatrix row(1, free_diff.size(), free_diff);
  return image_index(row);
}

inline void compute_reidemeister(Context& c) {
  Reidemeister& R = c.R;
  const Problem& p = c.p;
  auto set = [&](Cardinal v, const char* rule) {
    R.value = v;
    R.support = Support::rule(rule);
  };
  if (c.t.pi1_order && *c.t.pi1_order == Cardinal(1)) return set(1, "reidemeister_trivial_pi1");
  if (c.t.is_circle) {
    if (c.h1_free_diff) return set(*index_of_difference(*c.h1_free_diff), "reidemeister_circle");
    R.reason = "the difference (f1* - f2*) on H_1(M) is not given";
    return;
  }
  if (p.map.torus_matrices) {
    const auto& [a, b] = *p.map.torus_matrices;
    return set(cokernel(a - b).order(), "reidemeister_abelian");
  }
  if (c.sphere_domain() && c.m >= 2) {
    if (c.t.pi1_order) return set(*c.t.pi1_order, "reidemeister_simply_connected_domain");
    R.reason = c.t.pi1_order_reason;
    return;
  }
  if (p.pair == PairKind::root && p.map.pi1_image && c.t.pi1) {
    IndexResult r = subgroup_index(*c.t.pi1, *p.map.pi1_image, c.options.max_cosets);
    if (r.is_unknown()) {
      R.reason = "index of f_*(pi_1(M)) in pi_1(N): " + r.reason();
      return;
    }
    return set(*r.cardinal(), "reidemeister_root");
  }
  if (p.pair == PairKind::self && c.t.pi1) {
    if (abelianization(*c.t.pi1).order().is_infinite()) return set(Cardinal::infinite(), "reidemeister_self");
    if (c.t.pi1_order && c.t.pi1_order->is_finite()) {
      auto rg = realize_finite(*c.t.pi1, c.options.max_cosets);
      if (auto* g = std::get_if<RealizedGroup>(&rg)) {
        if (g->table.is_abelian()) return set(*c.t.pi1_order, "reidemeister_self");
        bool onto = p.map.projection && c.m - p.domain.base->n >= 2;
        if (onto) {
          ElementMap id = identity_map(g->table);
          return set(Cardinal(Integer(reidemeister_count(g->table, id, id))), "reidemeister_self");
        }
        R.reason = "conjugation orbits in a nonabelian pi_1(N) depend on f_*(pi_1(M)), which is not given";
        return;
      }
      R.reason = std::get<Unknown>(rg).reason;
      return;
    }
    R.reason = c.t.pi1_order_reason;
    return;
  }
  if (p.pair == PairKind::root && !p.map.pi1_image) R.reason = "the image f_*(pi_1(M)) is not given";
}

/// Support for "f1 or f2 is not coincidence producing".
inline std::optional<Support> not_coincidence_producing(const Context& c) {
  if (c.t.never_coincidence_producing()) return Support::rule("not_coincidence_producing");
  std::set<std::string> a;
  if (c.p.asserted.ncp_f1 == true) a.insert(assumption::ncp_f1);
  else if (c.p.asserted.ncp_f2 == true) a.insert(assumption::ncp_f2);
  if (a.empty()) return std::nullopt;
  Support s;
  s.assumptions = a;
  return s;
}

/// The first clause of the X_m(N) = 0 checklist that applies, if any.
inline std::optional<std::string> x_m_clause(const Context& c) {
  const int m = c.m, n = c.n;
  const TargetFacts& t = c.t;
  if (m <= 2 * n - 3) return "m <= 2n - 3";
  if (n <= 2 || m <= 3) return "n <= 2 or m <= 3";
  if (!t.compact) return "N is not compact";
  if (t.is_sphere || t.is_projective || t.is_circle) return "N is a sphere or a projective space";
  if (t.is_space_form) return "N is finitely covered by S^n";
  if (t.fibration_facts.count("serre_section")) return "N is a fibration with a section";
  if (t.fibration_facts.count("fibers_over_infinite_pi1")) return "N fibers over a manifold with infinite pi_1";
  if (!t.family.empty()) {
    int r = t.family_r, k = t.family_k;
    if (t.family != "stiefel") k = std::min(k, r - k);
    if (k == 1 && t.family == "stiefel") return "N = V_{r,1} is a sphere";
    if (k <= radon_hurwitz(r)) return "S^{r-1} admits k - 1 independent vector fields";
  }
  return std::nullopt;
}

inline std::optional<Support> x_m_vanishes(const Context& c) {
  if (x_m_clause(c)) return Support::rule("x_m_vanishing");
  if (c.p.asserted.x_m_vanishes == true) return Support::rule("x_m_vanishing", {assumption::x_m});
  return std::nullopt;
}

inline std::optional<Support> omega_sharp_nonzero(const Context& c) {
  if (c.p.asserted.omega_sharp_nonzero == true) return Support{{}, {assumption::omega_sharp}};
  if (c.p.asserted.omega_tilde_nonzero == true) return Support{{}, {assumption::omega_tilde}};
  return std::nullopt;
}

// ---------------------------------------------------------------- rules

using RuleFn = std::function<void(Context&)>;

inline Support by(const char* rule, const std::optional<Support>& extra = std::nullopt) {
  Support s = Support::rule(rule);
  return extra ? s.with(*extra) : s;
}

inline void rule_dimension_gap(Context& c) {
  if (c.m < c.n) c.s.all_zero(by("dimension_gap"));
}

inline void rule_one_dimensional(Context& c) {
  if (c.t.is_circle) return;
  if ((c.m == 1 && c.n >= 2) || (c.n == 1 && !c.t.compact)) c.s.all_zero(by("one_dimensional"));
}

inline void rule_circle_target(Context& c) {
  if (!c.t.is_circle) return;
  if (!c.h1_free_diff) {
    c.s.note_all("circle target: the difference (f1* - f2*) on H_1(M) is not given");
    return;
  }
  Cardinal k = *index_of_difference(*c.h1_free_diff);
  Support s = by("circle_target");
  if (k.is_infinite()) {
    c.s.all_zero(s);
    return;
  }
  for (int i : {inv_N, inv_NS, inv_MCC}) c.s.exactly(i, k, s);
  c.s.exactly(inv_MC, c.m == 1 ? k : Cardinal::infinite(), s);
}

inline void rule_sphere_target(Context& c) {
  if (!c.t.is_sphere || !c.sphere_domain() || c.p.pair == PairKind::self) return;
  if (!c.antipodal) {
    c.s.note_all("sphere target: whether f1 ~ a f2 is not determined by the input");
    return;
  }
  if (*c.antipodal) {
    c.s.all_zero(by("sphere_target"));
    return;
  }
  c.s.exactly(inv_NS, 1, by("sphere_target"));
  c.s.exactly(inv_MCC, 1, by("sphere_target"));
  if (!c.cls) {
    c.s.note(inv_MC, c.cls_unknown ? *c.cls_unknown : "the class [f1] - [a f2] is not given");
    return;
  }
  auto in = c.table.class_in_image_of_E(*c.cls, c.m, c.n, ImageRestriction::all);
  if (!known(in)) {
    c.s.note(inv_MC, std::get<Unknown>(in).reason);
    return;
  }
  if (std::get<bool>(in)) {
    c.s.at_most(inv_MC, 1, by("sphere_target_finiteness"));
  } else {
    c.s.exactly(inv_MC, Cardinal::infinite(), by("sphere_target_finiteness"));
  }
}

inline void rule_space_form(Context& c) {
  if (!c.t.is_space_form || !c.sphere_domain()) return;
  if (c.n % 2 == 0) {
    c.s.note_all("even-dimensional space form targets are not resolved (the case table covers odd n only)");
    return;
  }
  if (c.m < c.n || c.homotopic == true) {
    c.s.all_zero(by("space_form_nielsen"));
    return;
  }
  if (!c.homotopic) {
    c.s.note_all("space form target: whether f1 ~ f2 is not determined by the input");
    return;
  }
  if (c.m <= 1 || !c.t.pi1_order) return;
  const Cardinal order = *c.t.pi1_order;
  c.s.exactly(inv_NS, order, by("space_form_nielsen"));
  c.s.exactly(inv_MCC, order, by("space_form_nielsen"));
  if (c.n < 3) return;
  if (!c.cls) {
    c.s.note(inv_MC, c.cls_unknown ? *c.cls_unknown : "the lifted class [f1] - [f2] in pi_m(S^n) is not given");
    return;
  }
  auto restrict = order <= Cardinal(2) ? ImageRestriction::all : ImageRestriction::ker_h;
  auto in = c.table.class_in_image_of_E(*c.cls, c.m, c.n, restrict);
  if (!known(in)) {
    c.s.note(inv_MC, std::get<Unknown>(in).reason);
    return;
  }
  if (std::get<bool>(in)) {
    c.s.exactly(inv_MC, order, by("space_form_finiteness"));
  } else {
    c.s.exactly(inv_MC, Cardinal::infinite(), by("space_form_finiteness"));
  }
}

inline void rule_root(Context& c) {
  if (c.p.pair != PairKind::root) return;
  if (!c.t.compact) {
    c.s.all_zero(by("root_loose"));
    return;
  }
  if (!c.R.value) {
    c.s.note_all("b(f, *): " + c.R.reason);
    return;
  }
  const Cardinal b = *c.R.value;
  if (b.is_infinite()) {
    c.s.all_zero(by("root_loose", c.R.support));
    return;
  }
  Support dich = by("nielsen_dichotomy", c.R.support);
  c.s.add_dichotomy(inv_NS, b, dich);
  c.s.add_dichotomy(inv_N, b, dich);
  auto omega = omega_sharp_nonzero(c);
  if (!omega) return;
  Support s = by("root_nielsen", c.R.support.with(*omega));
  c.s.exactly(inv_NS, b, s);
  if (c.n != 2) {
    c.s.exactly(inv_MCC, b, s);
    if (auto fin = c.s.mc_finite()) c.s.exactly(inv_MC, b, s.with(*fin));
  }
}

inline void rule_self(Context& c) {
  if (c.p.pair != PairKind::self) return;
  c.s.at_most(inv_MCC, 1, by("self_connected"));
  if (!c.t.compact || c.t.euler_zero()) {
    c.s.all_zero(by("self_loose"));
    return;
  }
  Support dich = by("nielsen_dichotomy");
  c.s.add_dichotomy(inv_NS, 1, dich);
  c.s.add_dichotomy(inv_N, 1, dich);
  if (auto omega = omega_sharp_nonzero(c)) {
    Support s = by("self_nielsen", *omega);
    c.s.exactly(inv_NS, 1, s);
    if (c.n != 2) {
      c.s.exactly(inv_MCC, 1, s);
      if (auto fin = c.s.mc_finite()) c.s.exactly(inv_MC, 1, s.with(*fin));
    }
  }
}

inline void rule_projection_self(Context& c) {
  if (!c.p.map.projection || c.p.pair != PairKind::self) return;
  const TargetFacts& t = c.t;
  if (!t.compact || !t.euler || *t.euler == 0 || !t.pi1 || !t.pi1_order || !t.pi1_order->is_finite() ||
      *t.pi1_order == Cardinal(1)) {
    c.s.note_all("projection N x S^(m-n) -> N: needs N closed with chi(N) != 0 and finite nontrivial pi_1");
    return;
  }
  auto rg = realize_finite(*t.pi1, c.options.max_cosets);
  auto* g = std::get_if<RealizedGroup>(&rg);
  if (!g || !g->table.is_abelian()) {
    c.s.note_all("projection N x S^(m-n) -> N: pi_1(N) is not abelian");
    return;
  }
  Support s = by("projection_self");
  for (int i : {inv_N, inv_NS, inv_MCC}) c.s.exactly(i, 1, s);
  c.s.exactly(inv_MC, Cardinal::infinite(), s);
}

inline void rule_sphere_domain_omega(Context& c) {
  if (!c.sphere_domain() || c.p.pair != PairKind::general) return;
  auto omega = omega_sharp_nonzero(c);
  auto ncp = not_coincidence_producing(c);
  if (!omega || !ncp || !c.R.value) return;
  Support s = by("sphere_domain_omega", c.R.support.with(*omega).with(*ncp));
  c.s.exactly(inv_NS, *c.R.value, s);
  if (c.n != 2) {
    c.s.exactly(inv_MCC, *c.R.value, s);
    if (auto fin = c.s.mc_finite()) c.s.exactly(inv_MC, *c.R.value, s.with(*fin));
  }
}

inline void rule_omega_tilde(Context& c) {
  if (c.p.asserted.omega_tilde_nonzero != true) return;
  bool applies = c.p.pair != PairKind::general || (c.sphere_domain() && not_coincidence_producing(c));
  if (!applies) return;
  Support s = by("omega_tilde", Support{{}, {assumption::omega_tilde}});
  if (c.p.pair == PairKind::general) s = s.with(*not_coincidence_producing(c));
  c.s.add_equality({inv_N, inv_NS}, s);
}

inline void rule_omega_not_loose(Context& c) {
  if (auto omega = omega_sharp_nonzero(c)) c.s.at_least(inv_MCC, 1, by("omega_not_loose", *omega));
}

inline void rule_loose_target(Context& c) {
  if (!c.sphere_domain()) return;
  const TargetFacts& t = c.t;
  bool infinite_pi1 = t.pi1_order && t.pi1_order->is_infinite() && !t.is_circle;
  if (infinite_pi1 || !t.compact || t.is_product || t.fibration_facts.count("fibers_over_loose_base"))
    c.s.all_zero(by("loose_target"));
}

inline void rule_x_m_loose(Context& c) {
  if (!c.sphere_domain() || c.p.asserted.omega_sharp_nonzero != false) return;
  auto xm = x_m_vanishes(c);
  auto ncp = not_coincidence_producing(c);
  if (!xm || !ncp) return;
  c.s.all_zero(by("x_m_loose", xm->with(*ncp)).with(Support{{}, {assumption::omega_sharp_zero}}));
}

inline void rule_wecken(Context& c) {
  if (c.m == c.n && c.n != 2) c.s.add_equality({inv_N, inv_NS, inv_MCC, inv_MC}, by("wecken"));
}

inline void rule_trivial_suspension_group(Context& c) {
  if (c.m < 1 || c.n < 1 || (c.m == 1 && c.n == 1)) return;
  auto g = c.table.pi(c.m - 1, c.n - 1);
  if (known(g) && std::get<FgAbGroup>(g).is_trivial()) c.s.mark_mc_zero_or_infinite(by("trivial_suspension_group"));
}

inline void rule_asserted_finite(Context& c) {
  if (c.p.asserted.mc_finite == true) c.s.mark_mc_finite(Support{{}, {assumption::mc_finite}});
}

inline void rule_finite_mc_reidemeister(Context& c) {
  if (c.n == 2 || !c.R.value) return;
  if (auto fin = c.s.mc_finite()) c.s.at_most(inv_MC, *c.R.value, by("finite_mc_reidemeister", fin->with(c.R.support)));
}

inline std::optional<Support> suspension_injective(const Context& c) {
  if (c.m < 2 || c.n < 2) return std::nullopt;
  if (c.n == 2 || c.m < 2 * c.n - 2) return Support{};
  auto e = c.table.suspension(c.m - 1, c.n - 1);
  if (known(e) && std::get<SuspensionEntry>(e).injective == true) return Support{};
  return std::nullopt;
}

inline void rule_finite_mc_injective_E(Context& c) {
  if (!c.sphere_domain() || (c.m == 2 && c.n == 2)) return;
  auto fin = c.s.mc_finite();
  auto inj = suspension_injective(c);
  if (!fin || !inj) return;
  Support s = by("finite_mc_injective_E", *fin);
  c.s.add_equality({inv_NS, inv_MCC, inv_MC}, s);
  if (c.t.pi1_order) c.s.at_most(inv_MC, *c.t.pi1_order, s);
}

inline void rule_index_vector(Context& c) {
  if (!c.p.map.index_vector || !c.sphere_domain()) return;
  const auto& vec = *c.p.map.index_vector;
  const std::string field = "$.map_data.index_vector";
  if (c.t.pi1_order && c.t.pi1_order->is_finite() && Cardinal(Integer(vec.size())) != *c.t.pi1_order)
    throw ValidationError(field, "expected one entry per element of pi_1(N) (" + c.t.pi1_order->str() + "), got " +
                                     std::to_string(vec.size()));
  auto g = c.table.pi(c.m - 1, c.n - 1);
  if (!known(g)) {
    c.s.note_all("index vector: " + std::get<Unknown>(g).reason);
    return;
  }
  const auto& grp = std::get<FgAbGroup>(g);
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < vec.size(); ++i) {
    if (vec[i].size() != grp.coordinate_count())
      throw ValidationError(field + "[" + std::to_string(i) + "]", "expected " + std::to_string(grp.coordinate_count()) +
                                                                       " coordinates in " + pi_name(c.m - 1, c.n - 1) +
                                                                       " = " + grp.str());
    if (!grp.is_zero(vec[i])) ++nonzero;
  }
  if (!suspension_injective(c)) {
    c.s.note_all("index vector: injectivity of E into " + pi_name(c.m, c.n) + " is not established");
    return;
  }
  Support s = by("index_vector");
  for (int i : {inv_NS, inv_MCC, inv_MC}) c.s.exactly(i, Integer(nonzero), s);
}

inline void rule_covering_transfer(Context& c) {
  if (!c.lifted) return;
  const InvariantReport& L = *c.lifted;
  const Cardinal d = c.p.map.covering->degree;
  Support s = by("covering_transfer");
  for (const auto& a : L.conditional_on) s.assumptions.insert(a);
  const bool root = c.p.pair == PairKind::root;
  auto scaled = [&](const Verdict& v) { return root ? d * v.cardinal() : v.cardinal(); };
  if (L.N_sharp.is_known()) c.s.exactly(inv_NS, scaled(L.N_sharp), s);
  if (L.N.is_known()) c.s.exactly(inv_N, scaled(L.N), s);
  if (L.MC.is_known()) c.s.at_least(inv_MC, scaled(L.MC), s);
  auto omega = omega_sharp_nonzero(c);
  if (omega && c.n != 2 && L.MCC.is_known()) c.s.exactly(inv_MCC, scaled(L.MCC), s.with(*omega));
}

inline void rule_supplied(Context& c) {
  static const std::map<std::string, int> slot = {{"N", inv_N}, {"N_sharp", inv_NS}, {"MCC", inv_MCC}, {"MC", inv_MC}};
  for (const auto& [k, v] : c.p.map.supplied) c.s.exactly(slot.at(k), v, by("supplied", Support{{}, {"supplied." + k}}));
}

inline const std::vector<RuleFn>& rules() {
  static const std::vector<RuleFn> all = {
      rule_dimension_gap,     rule_one_dimensional,      rule_circle_target,     rule_sphere_target,
      rule_space_form,        rule_root,                 rule_self,              rule_projection_self,
      rule_sphere_domain_omega, rule_omega_tilde,        rule_omega_not_loose,   rule_loose_target,
      rule_x_m_loose,         rule_wecken,               rule_trivial_suspension_group, rule_asserted_finite,
      rule_finite_mc_reidemeister, rule_finite_mc_injective_E, rule_index_vector, rule_covering_transfer,
      rule_supplied,
  };
  return all;
}

// ---------------------------------------------------------------- report

inline std::string bounds_text(const FactStore& s, int i) {
  std::string lo = s.lo(i).value.str(), hi = s.hi(i).value.str();
  if (hi == "inf" && i != inv_MC) hi = "finite";
  return "known bounds " + lo + " <= " + inv_name(i) + " <= " + hi;
}

inline void post_checks(const Context& c, const InvariantReport& r) {
  const Verdict* v[4] = {&r.N, &r.N_sharp, &r.MCC, &r.MC};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (v[i]->is_known() && v[j]->is_known() && v[i]->cardinal() > v[j]->cardinal())
        throw ConsistencyError(std::string("chain violated: ") + inv_name(i) + " = " + v[i]->str() + " > " +
                               inv_name(j) + " = " + v[j]->str());
  if (c.n != 2 && r.MCC.is_known() && r.reidemeister.is_known() && r.MCC.cardinal() > r.reidemeister.cardinal())
    throw ConsistencyError("MCC = " + r.MCC.str() + " exceeds #pi_0 E = " + r.reidemeister.str());
  std::optional<Cardinal> b;
  if (c.p.pair == PairKind::self) b = Cardinal(1);
  if (c.p.pair == PairKind::root && r.reidemeister.is_known()) b = r.reidemeister.cardinal();
  if (b)
    for (const Verdict* x : {&r.N, &r.N_sharp})
      if (x->is_known() && x->cardinal() != Cardinal(0) && x->cardinal() != *b)
        throw ConsistencyError("Nielsen number " + x->str() + " is neither 0 nor b = " + b->str());
}

inline InvariantReport build_report(const Context& c) {
  InvariantReport r;
  Verdict* slots[4] = {&r.N, &r.N_sharp, &r.MCC, &r.MC};
  std::set<std::string> rules, assumptions;
  auto absorb = [&](const Support& s) {
    rules.insert(s.rules.begin(), s.rules.end());
    assumptions.insert(s.assumptions.begin(), s.assumptions.end());
  };
  for (int i : all_invariants) {
    if (c.s.known(i)) {
      *slots[i] = Verdict::of(c.s.value(i));
    } else {
      std::string reason;
      for (const auto& note : c.s.notes(i)) reason += note + "; ";
      if (reason.empty()) reason = "no rule determines " + std::string(inv_name(i)) + " for this input; ";
      *slots[i] = Verdict::unknown(reason + bounds_text(c.s, i));
    }
    if (c.s.lo(i).set) absorb(c.s.lo(i).support);
    if (c.s.hi(i).set) absorb(c.s.hi(i).support);
  }
  if (c.R.value) {
    r.reidemeister = Verdict::of(*c.R.value);
    absorb(c.R.support);
  } else {
    r.reidemeister = Verdict::unknown(c.R.reason);
  }
  std::vector<std::string> ordered(rules.begin(), rules.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const std::string& a, const std::string& b) { return rule_rank(a) < rule_rank(b); });
  for (const auto& id : ordered) r.provenance.push_back({id, paper_ref(id)});
  r.conditional_on.assign(assumptions.begin(), assumptions.end());
  r.table_version = c.table.version();
  return r;
}

inline InvariantReport solve(const Problem& p, const SphereTable& table, EngineOptions options, int depth) {
  Context c(p, table, options, depth);
  interpret_map_data(c);
  compute_reidemeister(c);
  if (p.map.covering) c.lifted = solve(*p.map.covering->lifted, table, options, depth + 1);
  for (int round = 0;; ++round) {
    if (round > 64) throw ConsistencyError("rule evaluation did not reach a fixed point");
    c.s.reset_changed();
    for (const auto& rule : rules()) rule(c);
    c.s.propagate();
    if (!c.s.changed()) break;
  }
  InvariantReport r = build_report(c);
  post_checks(c, r);
  return r;
}

}  // namespace engine

inline InvariantReport solve(const Problem& p, const SphereTable& table = default_sphere_table(),
                             EngineOptions options = {}) {
  return engine::solve(p, table, options, 0);
}

inline InvariantReport solve_json(const Json& j, const SphereTable& table = default_sphere_table(),
                                  EngineOptions options = {}) {
  return solve(problem_from_json(j), table, options);
}

}  // namespace nck
