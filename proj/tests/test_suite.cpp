#include "ssgm/suite.hpp"
#include "test_problems.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace ssgm::suite {
namespace {

TEST(Instantiate, ExtendedRosenbrock) {
  const auto p = instantiate(21, 4);
  EXPECT_EQ(p.n, 4);
  EXPECT_EQ(p.m, 4);
  EXPECT_EQ(p.x0, (Vector{{-1.2, 1.0, -1.2, 1.0}}));
  EXPECT_EQ(half_squared_norm(p.residual(Vector::Ones(4))), 0.0);
}

TEST(Instantiate, TrigonometricLogarithmic) {
  const auto p = instantiate(39, 3);
  const Vector F = p.residual(p.x0);
  for (Index i = 0; i < 3; ++i) EXPECT_NEAR(F[i], std::log(2.0) - std::sin(1.0) / 3.0, 1e-15);
}

TEST(Instantiate, StartingPointWithoutResidual) {
  const Vector x0 = starting_point(11, 5);
  for (Index i = 0; i < 5; ++i) EXPECT_DOUBLE_EQ(x0[i], 0.2);
  EXPECT_THROW(instantiate(11, 5), std::invalid_argument);
}

TEST(Instantiate, Errors) {
  EXPECT_THROW(instantiate(21, 999), std::invalid_argument);
  EXPECT_THROW(instantiate(20, 6), std::invalid_argument);
  EXPECT_THROW(instantiate(3, 5), std::invalid_argument);
  EXPECT_THROW(instantiate(99), std::out_of_range);
  EXPECT_THROW(find("no-such-problem"), std::out_of_range);
  EXPECT_THROW(starting_point(1), std::invalid_argument);
}

TEST(Catalog, ListShape) {
  const auto& all = list();
  ASSERT_EQ(all.size(), 40u);
  for (std::size_t i = 0; i < all.size(); ++i) EXPECT_EQ(all[i].id, static_cast<int>(i + 1));
  EXPECT_EQ(find(39).residual_class, ResidualClass::zero);
  EXPECT_EQ(find(2).n, 4);
  EXPECT_EQ(find(2).m, 20);
  EXPECT_FALSE(find(2).scalable);
  EXPECT_TRUE(find(21).scalable);
  EXPECT_EQ(find("extended-rosenbrock").id, 21);
  EXPECT_EQ(find("21").id, 21);
  EXPECT_EQ(find("Beale").id, 3);
  EXPECT_EQ(core_set().size(), 12u);
  for (int id : core_set()) EXPECT_TRUE(find(id).implemented) << id;
}

TEST(Catalog, ResidualClassesFrozen) {
  const std::string expected = "LLZSZLLSZSZZZZZZZZZZZZZZZSLZZZZZZZLLZZZZ";
  std::string got;
  for (const auto& s : list()) {
    got += s.residual_class == ResidualClass::zero ? 'Z' : s.residual_class == ResidualClass::small ? 'S' : 'L';
  }
  EXPECT_EQ(got, expected);
}

TEST(Catalog, ResidualCounts) {
  EXPECT_EQ(find(26).residual_count(10), 11);
  EXPECT_EQ(find(29).residual_count(10), 11);
  EXPECT_EQ(find(40).residual_count(10), 12);
  EXPECT_EQ(find(21).residual_count(10), 10);
  for (int id : implemented_ids()) {
    const auto& s = find(id);
    const Index n = s.scalable ? 12 : s.n;
    const auto p = instantiate(id, n);
    EXPECT_EQ(p.m, s.residual_count(n)) << s.name;
    EXPECT_EQ(p.x0.size(), n) << s.name;
    EXPECT_EQ(p.residual_class, s.residual_class);
  }
}

TEST(Validation, SmallDimension) {
  const auto v = validate_suite(1e-6, 12);
  EXPECT_TRUE(v.passed);
  for (const auto& c : v.checks) {
    EXPECT_TRUE(c.ok) << c.name << ' ' << c.error;
    EXPECT_LE(c.max_rel_error, 1e-5) << c.name;
  }
  EXPECT_EQ(v.checks.size(), implemented_ids().size());
}

TEST(Validation, DefaultDimension) {
  const auto v = validate_suite(1e-6);
  for (const auto& c : v.checks) {
    EXPECT_TRUE(c.ok) << c.name << ' ' << c.error;
    EXPECT_LE(c.max_rel_error, 1e-5) << c.name;
  }
}

TEST(Validation, PlantedSignErrorIsCaught) {
  const auto flipped = testing::scaled_jtv(instantiate(21, 10), -1.0);
  const auto v = validate_problems({flipped}, 1e-6, 1e-4, {21});
  EXPECT_FALSE(v.passed);
  ASSERT_EQ(v.checks.size(), 1u);
  EXPECT_NEAR(v.checks[0].max_rel_error, 2.0, 1e-3);
}

TEST(Solutions, KnownZeroResiduals) {
  EXPECT_EQ(half_squared_norm(instantiate(21, 10).residual(Vector::Ones(10))), 0.0);
  EXPECT_EQ(half_squared_norm(instantiate(12, 10).residual(Vector::Ones(10))), 0.0);
  EXPECT_EQ(half_squared_norm(instantiate(28, 10).residual(Vector::Zero(10))), 0.0);
  EXPECT_EQ(half_squared_norm(instantiate(39, 10).residual(Vector::Zero(10))), 0.0);
  EXPECT_EQ(half_squared_norm(instantiate(40, 10).residual(Vector::Ones(10))), 0.0);
  EXPECT_EQ(half_squared_norm(instantiate(20, 8).residual(Vector::Zero(8))), 0.0);
  EXPECT_EQ(half_squared_norm(instantiate(35, 10).residual(Vector::Zero(10))), 0.0);
  EXPECT_EQ(half_squared_norm(instantiate(3).residual(Vector{{3.0, 0.5}})), 0.0);
  EXPECT_EQ(half_squared_norm(instantiate(5).residual(Vector{{1e6, 2e-6}})), 0.0);
  // linear full rank: f* = (m - n) / 2 at x = -1
  EXPECT_NEAR(half_squared_norm(instantiate(26, 10).residual(Vector::Constant(10, -1.0))), 0.5, 1e-12);
  EXPECT_NEAR(half_squared_norm(instantiate(6).residual(Vector{{11.41, -0.8968}})), 24.4921, 1e-2);
}

TEST(Scaling, FiniteAtStartForLargeDimensions) {
  for (Index n = 1000; n <= 10000; n += 3000) {
    for (int id : implemented_ids()) {
      const auto& s = find(id);
      if (!s.scalable || !s.allows(n)) continue;
      const auto p = instantiate(id, n);
      Evaluator eval(p);
      Vector F;
      const double f = eval.objective(p.x0, F);
      EXPECT_TRUE(std::isfinite(f)) << s.name << " n=" << n;
      EXPECT_TRUE(eval.apply_jt(p.x0, F).allFinite()) << s.name << " n=" << n;
    }
  }
}

}  // namespace
}  // namespace ssgm::suite
