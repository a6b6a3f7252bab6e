#include "nck/engine.hpp"

#include <gtest/gtest.h>

namespace nck {
namespace {

InvariantReport run(const std::string& text) { return solve_json(Json::parse(text)); }

Verdict fin(long long k) { return Verdict::finite(k); }
const Verdict inf = Verdict::infinite();

bool cites(const InvariantReport& r, const std::string& rule) {
  for (const auto& p : r.provenance)
    if (p.rule == rule) return true;
  return false;
}

std::string error_of(const std::string& text) {
  try {
    run(text);
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

TEST(Engine, LensSpaceRootNonzeroClass) {
  auto r = run(R"({"domain": {"kind": "sphere", "m": 4},
                   "target": {"kind": "space_form", "n": 3, "group_order": 5},
                   "pair": "root", "map_data": {"class_is_zero": false}})");
  EXPECT_EQ(r.N_sharp, fin(5));
  EXPECT_EQ(r.MCC, fin(5));
  EXPECT_EQ(r.MC, inf);
  EXPECT_TRUE(r.N.is_unknown());
  EXPECT_EQ(r.reidemeister, fin(5));
  EXPECT_TRUE(cites(r, "space_form_finiteness"));
  EXPECT_TRUE(r.conditional_on.empty());
}

TEST(Engine, SphereTargetAntipodalIsLoose) {
  for (int m : {3, 4, 7}) {
    auto r = run(R"({"domain": {"kind": "sphere", "m": )" + std::to_string(m) +
                 R"(}, "target": {"kind": "sphere", "n": 3}, "map_data": {"f1_homotopic_af2": true}})");
    for (const Verdict* v : {&r.N, &r.N_sharp, &r.MCC, &r.MC}) EXPECT_EQ(*v, fin(0)) << m;
  }
}

TEST(Engine, CircleTargetHigherDimensionalDomain) {
  auto r = run(R"({"domain": {"kind": "generic", "m": 3, "h1": {"free_rank": 2, "torsion": []}},
                   "target": {"kind": "circle"}, "map_data": {"h1_difference": [2, 0]}})");
  EXPECT_EQ(r.N, fin(2));
  EXPECT_EQ(r.N_sharp, fin(2));
  EXPECT_EQ(r.MCC, fin(2));
  EXPECT_EQ(r.MC, inf);
}

TEST(Engine, CircleTargetExamples) {
  auto deg = run(R"({"domain": {"kind": "sphere", "m": 1}, "target": {"kind": "circle"},
                     "map_data": {"degrees": [5, 2]}})");
  for (const Verdict* v : {&deg.N, &deg.N_sharp, &deg.MCC, &deg.MC}) EXPECT_EQ(*v, fin(3));

  auto zero = run(R"({"domain": {"kind": "torus", "m": 2}, "target": {"kind": "circle"},
                      "map_data": {"h1_difference": [0, 0]}})");
  for (const Verdict* v : {&zero.N, &zero.N_sharp, &zero.MCC, &zero.MC}) EXPECT_EQ(*v, fin(0));
  EXPECT_EQ(zero.reidemeister, inf);

  auto t2 = run(R"({"domain": {"kind": "torus", "m": 2}, "target": {"kind": "circle"},
                    "map_data": {"h1_difference": [6, 4]}})");
  EXPECT_EQ(t2.N_sharp, fin(2));
  EXPECT_EQ(t2.MCC, fin(2));
  EXPECT_EQ(t2.MC, inf);
}

TEST(Engine, ProjectionSelfCoincidence) {
  // RP^2 has chi = 1 and pi_1 = Z/2.
  auto r = run(R"({"domain": {"kind": "product_with_sphere", "m": 5, "base": {"kind": "projective", "field": "R", "dim": 2}},
                   "target": {"kind": "projective", "field": "R", "dim": 2},
                   "pair": "self", "map_data": {"projection": true}})");
  EXPECT_EQ(r.N, fin(1));
  EXPECT_EQ(r.N_sharp, fin(1));
  EXPECT_EQ(r.MCC, fin(1));
  EXPECT_EQ(r.MC, inf);
  EXPECT_EQ(r.reidemeister, fin(2));
}

TEST(Engine, SelfCoincidenceVectorField) {
  for (const char* target : {R"({"kind": "space_form", "n": 3, "group_order": 4})", R"({"kind": "torus", "n": 3})",
                             R"({"kind": "generic", "n": 4, "compact": false})", R"({"kind": "sphere", "n": 5})"}) {
    auto r = run(R"({"domain": {"kind": "sphere", "m": 6}, "target": )" + std::string(target) + R"(, "pair": "self"})");
    for (const Verdict* v : {&r.N, &r.N_sharp, &r.MCC, &r.MC}) EXPECT_EQ(*v, fin(0)) << target;
  }
}

TEST(Engine, RootWithCosetEnumeration) {
  auto r = run(R"({"domain": {"kind": "generic", "m": 5, "pi1": "gens: x; rels:"},
                   "target": {"kind": "generic", "n": 4, "pi1": "gens: a; rels: a^6", "euler": 2},
                   "pair": "root", "map_data": {"pi1_image": ["a^2"]},
                   "assert": {"omega_sharp_nonzero": true}})");
  EXPECT_EQ(r.reidemeister, fin(2));
  EXPECT_EQ(r.N_sharp, fin(2));
  EXPECT_EQ(r.MCC, fin(2));
  EXPECT_TRUE(r.MC.is_unknown());
  EXPECT_EQ(r.conditional_on, std::vector<std::string>{"omega_sharp_nonzero"});
}

TEST(Engine, RootInfiniteIndexOrOpenTargetIsLoose) {
  auto free2 = run(R"({"domain": {"kind": "generic", "m": 5},
                       "target": {"kind": "generic", "n": 4, "pi1": "gens: a, b; rels:"},
                       "pair": "root", "map_data": {"pi1_image": ["a"]}})");
  EXPECT_EQ(free2.reidemeister, inf);
  for (const Verdict* v : {&free2.N, &free2.N_sharp, &free2.MCC, &free2.MC}) EXPECT_EQ(*v, fin(0));
  auto open = run(R"({"domain": {"kind": "generic", "m": 5}, "target": {"kind": "generic", "n": 4, "compact": false},
                      "pair": "root"})");
  for (const Verdict* v : {&open.N, &open.N_sharp, &open.MCC, &open.MC}) EXPECT_EQ(*v, fin(0));
  EXPECT_TRUE(cites(open, "root_loose"));
}

TEST(Engine, RootBudgetExhaustionIsUnknown) {
  auto r = solve(problem_from_json(Json::parse(R"({"domain": {"kind": "generic", "m": 5},
      "target": {"kind": "generic", "n": 4, "pi1": "gens: a, b; rels: a^2, b^3, a b a b a b a b a b a b a b"},
      "pair": "root", "map_data": {"pi1_image": []}})")),
                 default_sphere_table(), EngineOptions{2000, 4});
  EXPECT_TRUE(r.reidemeister.is_unknown());
  EXPECT_NE(r.reidemeister.reason().find("coset enumeration budget"), std::string::npos) << r.reidemeister.reason();
  EXPECT_TRUE(r.N_sharp.is_unknown());
}

TEST(Engine, SpaceFormTable) {
  auto sf = [](int order, const std::string& cls, int m = 4) {
    return run(R"({"domain": {"kind": "sphere", "m": )" + std::to_string(m) +
               R"(}, "target": {"kind": "space_form", "n": 3, "group_order": )" + std::to_string(order) +
               R"(}, "pair": "root", "map_data": {"difference_class": )" + cls + "}}");
  };
  auto two = sf(2, "[1]");
  EXPECT_EQ(two.MCC, fin(2));
  EXPECT_EQ(two.N_sharp, fin(2));
  EXPECT_EQ(two.MC, fin(2));
  EXPECT_EQ(sf(3, "[1]").MC, inf);
  auto zero = sf(3, "[0]");
  for (const Verdict* v : {&zero.N, &zero.N_sharp, &zero.MCC, &zero.MC}) EXPECT_EQ(*v, fin(0));
}

TEST(Engine, EvenSpaceFormIsUnknownWithReason) {
  auto r = run(R"({"domain": {"kind": "sphere", "m": 5}, "target": {"kind": "space_form", "n": 4, "group_order": 2},
                   "map_data": {"difference_class": [1]}})");
  EXPECT_TRUE(r.N_sharp.is_unknown());
  EXPECT_NE(r.N_sharp.reason().find("even-dimensional"), std::string::npos) << r.N_sharp.reason();
}

TEST(Engine, SphereTargetExamples) {
  auto circle = run(R"({"domain": {"kind": "sphere", "m": 1}, "target": {"kind": "sphere", "n": 1},
                        "map_data": {"degrees": [4, 1]}})");
  EXPECT_EQ(circle.MCC, fin(3));
  EXPECT_EQ(circle.N_sharp, fin(3));
  auto r = run(R"({"domain": {"kind": "sphere", "m": 4}, "target": {"kind": "sphere", "n": 3},
                   "map_data": {"difference_class": [1]}})");
  EXPECT_EQ(r.MCC, fin(1));
  EXPECT_EQ(r.N_sharp, fin(1));
  EXPECT_EQ(r.MC, fin(1));
  EXPECT_TRUE(cites(r, "sphere_target_finiteness"));
  // pi_5(S^2) = Z/2 is not hit by E from pi_4(S^1) = 0.
  auto s2 = run(R"({"domain": {"kind": "sphere", "m": 5}, "target": {"kind": "sphere", "n": 2},
                    "map_data": {"difference_class": [1]}})");
  EXPECT_EQ(s2.MC, inf);
}

TEST(Engine, WeckenEquation) {
  auto r = run(R"({"domain": {"kind": "torus", "m": 3}, "target": {"kind": "torus", "n": 3},
                   "map_data": {"supplied": {"N": 3}}})");
  for (const Verdict* v : {&r.N, &r.N_sharp, &r.MCC, &r.MC}) EXPECT_EQ(*v, fin(3));
  EXPECT_TRUE(cites(r, "wecken"));
  auto two = run(R"({"domain": {"kind": "torus", "m": 2}, "target": {"kind": "torus", "n": 2},
                     "map_data": {"supplied": {"N": 3}}})");
  EXPECT_TRUE(two.MC.is_unknown());
  EXPECT_FALSE(cites(two, "wecken"));
}

TEST(Engine, TorusReidemeisterFromMatrices) {
  auto r = run(R"({"domain": {"kind": "torus", "m": 2}, "target": {"kind": "torus", "n": 2},
                   "map_data": {"torus_matrices": {"A": "1 1; 0 1", "B": "-1 0; -1 -1"}}})");
  EXPECT_EQ(r.reidemeister, fin(3));
}

TEST(Engine, TrivialSuspensionGroupNeedsFiniteness) {
  // MC in {0, inf}; asserting finiteness forces 0.
  auto r = run(R"({"domain": {"kind": "generic", "m": 5}, "target": {"kind": "generic", "n": 2, "pi1": "gens: a; rels: a^3"},
                   "assert": {"mc_finite": true}})");
  for (const Verdict* v : {&r.N, &r.N_sharp, &r.MCC, &r.MC}) EXPECT_EQ(*v, fin(0));
  EXPECT_TRUE(cites(r, "trivial_suspension_group"));
  EXPECT_EQ(r.conditional_on, std::vector<std::string>{"mc_finite"});
  auto gap = run(R"({"domain": {"kind": "sphere", "m": 4}, "target": {"kind": "sphere", "n": 6}})");
  EXPECT_EQ(gap.MC, fin(0));
}

TEST(Engine, LooseTargets) {
  for (const char* target : {R"({"kind": "generic", "n": 3, "pi1": "gens: a, b; rels: a b a^-1 b^-1"})",
                             R"({"kind": "product", "factors": [{"kind": "sphere", "n": 2}, {"kind": "sphere", "n": 2}]})",
                             R"({"kind": "generic", "n": 3, "compact": false})"}) {
    auto r = run(R"({"domain": {"kind": "sphere", "m": 5}, "target": )" + std::string(target) + "}");
    for (const Verdict* v : {&r.N, &r.N_sharp, &r.MCC, &r.MC}) EXPECT_EQ(*v, fin(0)) << target;
    EXPECT_TRUE(cites(r, "loose_target")) << target;
  }
}

TEST(Engine, IndexVector) {
  auto one = run(R"({"domain": {"kind": "sphere", "m": 3}, "target": {"kind": "space_form", "n": 3, "group_order": 2},
                     "map_data": {"index_vector": [[1], [0]]}})");
  EXPECT_EQ(one.MC, fin(1));
  EXPECT_EQ(one.N_sharp, fin(1));
  auto zero = run(R"({"domain": {"kind": "sphere", "m": 3}, "target": {"kind": "space_form", "n": 3, "group_order": 2},
                      "map_data": {"index_vector": [[0], [0]]}})");
  EXPECT_EQ(zero.MC, fin(0));
  auto two = run(R"({"domain": {"kind": "sphere", "m": 3}, "target": {"kind": "space_form", "n": 3, "group_order": 3},
                     "map_data": {"index_vector": [[2], [0], [-1]]}})");
  EXPECT_EQ(two.MC, fin(2));
  EXPECT_EQ(two.MCC, fin(2));
  EXPECT_NE(error_of(R"({"domain": {"kind": "sphere", "m": 3}, "target": {"kind": "space_form", "n": 3, "group_order": 3},
                         "map_data": {"index_vector": [[1], [0]]}})")
                .find("index_vector"),
            std::string::npos);
}

TEST(Engine, CoveringTransfer) {
  auto root = run(R"({"domain": {"kind": "sphere", "m": 4}, "target": {"kind": "space_form", "n": 3, "group_order": 5},
                      "pair": "root", "map_data": {"class_is_zero": false, "covering": {"degree": 5, "lifted":
                      {"domain": {"kind": "sphere", "m": 4}, "target": {"kind": "sphere", "n": 3}, "pair": "root",
                       "map_data": {"difference_class": [1]}}}}})");
  EXPECT_EQ(root.N_sharp, fin(5));
  EXPECT_TRUE(cites(root, "covering_transfer"));
  auto infinite_zero = run(R"({"domain": {"kind": "generic", "m": 5}, "target": {"kind": "generic", "n": 3, "pi1": "gens: a; rels:"},
                       "pair": "root", "map_data": {"covering": {"degree": "infinite", "lifted":
                       {"domain": {"kind": "generic", "m": 5}, "target": {"kind": "generic", "n": 3, "compact": false},
                        "pair": "root"}}}})");
  EXPECT_EQ(infinite_zero.N_sharp, fin(0));
  auto self = run(R"({"domain": {"kind": "sphere", "m": 6}, "target": {"kind": "projective", "field": "R", "dim": 4},
                      "pair": "self", "assert": {"omega_sharp_nonzero": true},
                      "map_data": {"covering": {"degree": 2, "lifted":
                      {"domain": {"kind": "sphere", "m": 6}, "target": {"kind": "sphere", "n": 4}, "pair": "self",
                       "assert": {"omega_sharp_nonzero": true}}}}})");
  EXPECT_EQ(self.N_sharp, fin(1));
}

TEST(Engine, XmLooseness) {
  auto r = run(R"({"domain": {"kind": "sphere", "m": 6}, "target": {"kind": "projective", "field": "C", "dim": 2},
                   "assert": {"omega_sharp_nonzero": false, "not_coincidence_producing": {"f1": true}}})");
  for (const Verdict* v : {&r.N, &r.N_sharp, &r.MCC, &r.MC}) EXPECT_EQ(*v, fin(0));
  EXPECT_TRUE(cites(r, "x_m_loose"));
  EXPECT_TRUE(cites(r, "x_m_vanishing"));
  EXPECT_EQ(r.conditional_on,
            (std::vector<std::string>{"not_coincidence_producing(f1)", "omega_sharp_zero"}));
  // m = 2n on a generic closed target: no checklist clause.
  auto none = run(R"({"domain": {"kind": "sphere", "m": 8}, "target": {"kind": "generic", "n": 4, "pi1": "gens: ; rels:"},
                      "assert": {"omega_sharp_nonzero": false, "not_coincidence_producing": {"f1": true}}})");
  EXPECT_TRUE(none.MC.is_unknown());
}

TEST(Engine, SphereDomainOmega) {
  auto r = run(R"({"domain": {"kind": "sphere", "m": 6}, "target": {"kind": "generic", "n": 4, "pi1": "gens: a; rels: a^3", "euler": 0},
                   "assert": {"omega_sharp_nonzero": true, "omega_tilde_nonzero": true}})");
  EXPECT_EQ(r.N_sharp, fin(3));
  EXPECT_EQ(r.MCC, fin(3));
  EXPECT_EQ(r.N, fin(3));
}

TEST(Engine, ContradictoryAssertions) {
  std::string err = error_of(R"({"domain": {"kind": "sphere", "m": 4},
      "target": {"kind": "space_form", "n": 3, "group_order": 5}, "pair": "root",
      "map_data": {"f1_homotopic_f2": true}, "assert": {"omega_sharp_nonzero": true}})");
  EXPECT_NE(err.find("contradiction"), std::string::npos) << err;
  EXPECT_THROW(run(R"({"domain": {"kind": "sphere", "m": 4}, "target": {"kind": "space_form", "n": 3, "group_order": 5},
                       "pair": "root", "map_data": {"f1_homotopic_f2": true}, "assert": {"omega_sharp_nonzero": true}})"),
               ContradictionError);
}

TEST(Engine, FieldPreciseValidation) {
  EXPECT_NE(error_of(R"({"domain": {"kind": "sphere", "m": 4}, "target": {"kind": "space_form", "n": 3, "group_order": 5},
                         "map_data": {"difference_class": [1, 2]}})")
                .find("$.map_data.difference_class"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"domain": {"kind": "sphere", "m": 4}, "target": {"kind": "space_form", "n": 3, "group_order": 5},
                         "map_data": {"difference_class": [1], "f1_homotopic_f2": true}})")
                .find("$.map_data.f1_homotopic_f2"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"domain": {"kind": "sphere", "m": 4}, "target": {"kind": "sphere", "n": 3}, "extra": 1})")
                .find("$.extra"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"domain": {"kind": "sphere", "m": 2}, "target": {"kind": "sphere", "n": 3},
                         "map_data": {"f1_homotopic_af2": false}})")
                .find("null-homotopic"),
            std::string::npos);
  EXPECT_NE(error_of(R"({"domain": {"kind": "torus", "m": 2}, "target": {"kind": "circle"},
                         "map_data": {"h1_difference": [1, 2, 3]}})")
                .find("h1_difference"),
            std::string::npos);
}

TEST(Engine, SymmetryOfNielsenNumbers) {
  for (int cls = 0; cls < 2; ++cls)
    for (int order : {1, 2, 3, 6}) {
      auto mk = [&](int sign) {
        return run(R"({"domain": {"kind": "sphere", "m": 4}, "target": {"kind": "space_form", "n": 3, "group_order": )" +
                   std::to_string(order) + R"(}, "map_data": {"difference_class": [)" + std::to_string(sign * cls) + "]}}");
      };
      auto a = mk(1), b = mk(-1);
      EXPECT_EQ(a.N, b.N);
      EXPECT_EQ(a.N_sharp, b.N_sharp);
    }
  for (int d1 = -3; d1 <= 3; ++d1)
    for (int d2 = -3; d2 <= 3; ++d2) {
      auto mk = [](int x, int y) {
        return run(R"({"domain": {"kind": "sphere", "m": 1}, "target": {"kind": "circle"}, "map_data": {"degrees": [)" +
                   std::to_string(x) + ", " + std::to_string(y) + "]}}");
      };
      auto a = mk(d1, d2), b = mk(d2, d1);
      EXPECT_EQ(a.N, b.N);
      EXPECT_EQ(a.N_sharp, b.N_sharp);
    }
}

TEST(Engine, ReportRoundTrip) {
  auto r = run(R"({"domain": {"kind": "sphere", "m": 4}, "target": {"kind": "space_form", "n": 3, "group_order": 5},
                   "pair": "root", "map_data": {"class_is_zero": false}})");
  Json j = r.to_json();
  EXPECT_EQ(InvariantReport::from_json(Json::parse(j.dump())), r);
  EXPECT_EQ(j["MC"], "infinite");
  EXPECT_EQ(j["N_sharp"]["finite"], 5);
  EXPECT_TRUE(j["N"].contains("unknown"));
}

TEST(Engine, RootReidemeisterMatchesTwistedCount) {
  // Root case: index of f_*(pi_1 M) equals the Reidemeister count of (f_*, trivial) on the realized group.
  FpGroup s3 = FpGroup::parse("gens: a, b; rels: a^2, b^3, a b a b");
  auto g = std::get<RealizedGroup>(realize_finite(s3));
  for (const auto& phi : all_endomorphisms(g)) {
    std::vector<Word> image;
    for (auto e : g.generator_elements) image.push_back(g.element_words[phi[e]]);
    Json words = Json::array();
    for (const auto& w : image) words.push_back(w.empty() ? std::string("a^2") : s3.format_word(w));
    Json prob = {{"domain", {{"kind", "generic"}, {"m", 5}, {"pi1", "gens: a, b; rels: a^2, b^3, a b a b"}}},
                 {"target", {{"kind", "generic"}, {"n", 4}, {"pi1", "gens: a, b; rels: a^2, b^3, a b a b"}}},
                 {"pair", "root"},
                 {"map_data", {{"pi1_image", words}}}};
    auto r = solve_json(prob);
    ASSERT_TRUE(r.reidemeister.is_finite());
    EXPECT_EQ(r.reidemeister.value(), Integer(reidemeister_count(g.table, phi, trivial_map(g.table))));
  }
}

}  // namespace
}  // namespace nck
