#include "nck/fg_ab_group.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

namespace nck {
namespace {

void expect_valid_smith(const IntMatrix& a) {
  SmithForm f = smith_normal_form(a);
  EXPECT_EQ(f.U * a * f.V, f.S) << a.str();
  EXPECT_EQ(abs_value(f.U.determinant()), 1);
  EXPECT_EQ(abs_value(f.V.determinant()), 1);
  for (std::size_t r = 0; r < f.S.rows(); ++r)
    for (std::size_t c = 0; c < f.S.cols(); ++c)
      if (r != c) {
        EXPECT_EQ(f.S(r, c), 0) << a.str();
      }
  auto d = f.diagonal();
  for (std::size_t i = 0; i < d.size(); ++i) {
    EXPECT_GE(d[i], 0);
    if (i + 1 == d.size()) continue;
    if (d[i] != 0) {
      EXPECT_EQ(d[i + 1] % d[i], 0) << a.str();
    } else {
      EXPECT_EQ(d[i + 1], 0) << a.str();
    }
  }
}

TEST(SmithNormalForm, DiagTwoThree) {
  IntMatrix a{{2, 0}, {0, 3}};
  SmithForm f = smith_normal_form(a);
  EXPECT_EQ(f.S, (IntMatrix{{1, 0}, {0, 6}}));
  expect_valid_smith(a);
  // |det| is preserved: 2*3 = 1*6.
  EXPECT_EQ(abs_value(a.determinant()), abs_value(f.S.determinant()));
}

TEST(SmithNormalForm, IdentityAndZero) {
  EXPECT_EQ(smith_normal_form(IntMatrix::identity(3)).S, IntMatrix::identity(3));
  EXPECT_EQ(smith_normal_form(IntMatrix{{0}}).S, (IntMatrix{{0}}));
  expect_valid_smith(IntMatrix(0, 3));
  expect_valid_smith(IntMatrix(2, 0));
}

TEST(SmithNormalForm, RandomMatricesSatisfyContract) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> dim(1, 5), val(-9, 9);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t r = static_cast<std::size_t>(dim(rng)), c = static_cast<std::size_t>(dim(rng));
    IntMatrix a(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) a(i, j) = val(rng);
    expect_valid_smith(a);
  }
}

TEST(SmithNormalForm, LargeEntriesDoNotOverflow) {
  IntMatrix a{{1'000'000'007LL, 0}, {0, 998'244'353LL}};
  a(0, 0) *= Integer("1000000000000000000000");
  expect_valid_smith(a);
  EXPECT_EQ(image_index(a).value(), Integer("1000000000000000000000") * 1'000'000'007LL * 998'244'353LL);
}

TEST(ImageIndex, SpecExamplesAgainstResidueEnumeration) {
  oracle::Mat a{{2, 1}, {0, 2}};
  EXPECT_EQ(oracle::residue_index(a, 2, 2), 4);
  EXPECT_EQ(image_index(IntMatrix{{2, 1}, {0, 2}}), Cardinal(4));
  EXPECT_EQ(image_index(IntMatrix::identity(3)), Cardinal(1));
  oracle::Mat row{{2, 0}};
  EXPECT_EQ(oracle::residue_index(row, 1, 2), 2);
  EXPECT_EQ(image_index(IntMatrix{{2, 0}}), Cardinal(2));
  EXPECT_TRUE(image_index(IntMatrix{{1, 2}, {2, 4}}).is_infinite());
  EXPECT_TRUE(image_index(IntMatrix(2, 0)).is_infinite());
  EXPECT_EQ(image_index(IntMatrix(0, 0)), Cardinal(1));
}

TEST(ImageIndex, MatchesResidueEnumerationProperty) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> rows_d(1, 3), extra(0, 2), val(-6, 6);
  int finite_checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    std::size_t r = static_cast<std::size_t>(rows_d(rng));
    std::size_t c = r + static_cast<std::size_t>(extra(rng)) - (trial % 5 == 0 ? 1 : 0);
    oracle::Mat a(r, std::vector<long long>(c));
    for (auto& row : a)
      for (auto& x : row) x = val(rng);
    auto k = oracle::lattice_exponent(a, r, c);
    if (k) {
      long long bound = 1;
      for (std::size_t i = 0; i < r; ++i) bound *= *k;
      if (bound > 10'000) continue;
    }
    auto expected = oracle::residue_index(a, r, c);
    Cardinal got = image_index(oracle::to_int_matrix(a, r, c));
    if (!expected) {
      EXPECT_TRUE(got.is_infinite());
    } else {
      EXPECT_EQ(got, Cardinal(*expected));
      ++finite_checked;
    }
    EXPECT_EQ(cokernel(oracle::to_int_matrix(a, r, c)).order(), got);
  }
  EXPECT_GT(finite_checked, 100);
}

TEST(Cokernel, SpecExamples) {
  FgAbGroup c = cokernel(IntMatrix{{2, 0}, {0, 3}});
  EXPECT_EQ(c, FgAbGroup(0, {6}));
  // Enumeration: order 6 with an element of order 6, hence cyclic.
  oracle::Mat a{{2, 0}, {0, 3}};
  EXPECT_EQ(oracle::residue_index(a, 2, 2), 6);
  EXPECT_EQ(oracle::residue_exponent(a, 2, 2), 6);

  EXPECT_EQ(cokernel(IntMatrix(2, 2)), FgAbGroup(2, {}));
  EXPECT_TRUE(cokernel(IntMatrix{{1}}).is_trivial());
  EXPECT_EQ(cokernel(IntMatrix{{2, 0}, {0, 4}}), FgAbGroup(0, {2, 4}));
}

TEST(FgAbGroup, RejectsBrokenInvariants) {
  EXPECT_THROW(FgAbGroup(0, {4, 6}), std::invalid_argument);
  EXPECT_THROW(FgAbGroup(0, {1}), std::invalid_argument);
  EXPECT_NO_THROW(FgAbGroup(1, {2, 4}));
  EXPECT_TRUE(FgAbGroup(1, {2}).order().is_infinite());
  EXPECT_EQ(FgAbGroup(0, {2, 6}).order(), Cardinal(12));
  EXPECT_EQ(FgAbGroup(0, {240}).reduce({Integer(-1)}), (Coords{239}));
}

TEST(InSubgroup, SpecExamples) {
  SubgroupDesc even(FgAbGroup::integers(), {{2}});
  EXPECT_TRUE(in_subgroup({6}, even));
  EXPECT_FALSE(in_subgroup({3}, even));
  SubgroupDesc h(FgAbGroup(0, {240}), {{24}});
  EXPECT_TRUE(in_subgroup({120}, h));
  EXPECT_TRUE(oracle::enumerate_membership({240}, {{24}}, {120}));
  EXPECT_FALSE(in_subgroup({12}, h));
  EXPECT_THROW(in_subgroup({1, 2}, even), std::invalid_argument);
}

TEST(InSubgroup, AgreesWithEnumerationOnSmallGroups) {
  std::mt19937 rng(5);
  const std::vector<std::vector<long long>> ambients = {
      {2}, {6}, {12}, {240}, {2, 2}, {2, 4}, {3, 6}, {2, 2, 2}, {4, 12}, {5, 10}, {2, 6, 12}};
  for (const auto& tors : ambients) {
    std::vector<Integer> t(tors.begin(), tors.end());
    FgAbGroup g(0, t);
    for (int trial = 0; trial < 60; ++trial) {
      std::vector<oracle::Vec> gens(static_cast<std::size_t>(rng() % 3));
      for (auto& v : gens) {
        v.resize(tors.size());
        for (std::size_t i = 0; i < tors.size(); ++i) v[i] = static_cast<long long>(rng() % 50) - 25;
      }
      oracle::Vec x(tors.size());
      for (auto& xi : x) xi = static_cast<long long>(rng() % 50) - 25;
      std::vector<Coords> cg;
      for (const auto& v : gens) cg.emplace_back(v.begin(), v.end());
      SubgroupDesc h(g, cg);
      EXPECT_EQ(in_subgroup(Coords(x.begin(), x.end()), h), oracle::enumerate_membership(tors, gens, x));
    }
  }
}

TEST(AbelianHom, InjectiveSurjectiveFlags) {
  // Z -> Z/2 reduction: onto, not injective.
  AbelianHom red{FgAbGroup::integers(), FgAbGroup(0, {2}), IntMatrix{{1}}};
  EXPECT_TRUE(red.is_surjective());
  EXPECT_FALSE(red.is_injective());
  // Z/2 -> Z/12 by 6: injective, not onto.
  AbelianHom six{FgAbGroup(0, {2}), FgAbGroup(0, {12}), IntMatrix{{6}}};
  EXPECT_NO_THROW(six.validate());
  EXPECT_TRUE(six.is_injective());
  EXPECT_FALSE(six.is_surjective());
  // Z + Z/12 -> Z/24 by (1, 2): onto, not injective.
  AbelianHom nu{FgAbGroup(1, {12}), FgAbGroup(0, {24}), IntMatrix{{1, 2}}};
  EXPECT_NO_THROW(nu.validate());
  EXPECT_TRUE(nu.is_surjective());
  EXPECT_FALSE(nu.is_injective());
  // Z/2 -> Z/12 by 1 does not respect relations.
  AbelianHom bad{FgAbGroup(0, {2}), FgAbGroup(0, {12}), IntMatrix{{1}}};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(IntMatrix, ParseInlineSyntax) {
  EXPECT_EQ(IntMatrix::parse("1 1; 0 1"), (IntMatrix{{1, 1}, {0, 1}}));
  EXPECT_EQ(IntMatrix::parse("-1,0;-1,-1"), (IntMatrix{{-1, 0}, {-1, -1}}));
  EXPECT_THROW(IntMatrix::parse("1 2; 3"), std::invalid_argument);
  EXPECT_THROW(IntMatrix::parse("1 x"), std::invalid_argument);
}

}  // namespace
}  // namespace nck
