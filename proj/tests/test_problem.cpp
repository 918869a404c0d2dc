#include "ssgm/problem.hpp"
#include "ssgm/suite.hpp"
#include "test_problems.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

namespace ssgm {
namespace {

using testing::identity_problem;

ResidualProblem rosenbrock2() { return suite::instantiate(21, 2); }

TEST(EvalObjective, IdentityResidual) {
  auto p = identity_problem(2);
  Evaluator eval(p);
  EXPECT_DOUBLE_EQ(eval.objective(Vector{{3.0, 4.0}}), 12.5);
  EXPECT_EQ(eval.counters().n_residual, 1);
  EXPECT_EQ(eval.counters().n_jtv, 0);
}

TEST(EvalObjective, ZeroResidual) {
  auto p = testing::zero_problem(3);
  Evaluator eval(p);
  EXPECT_EQ(eval.objective(Vector{{-7.0, 2.0, 1e3}}), 0.0);
}

TEST(EvalObjective, RosenbrockHandValue) {
  auto p = rosenbrock2();
  Evaluator eval(p);
  Vector F;
  EXPECT_NEAR(eval.objective(Vector{{-1.2, 1.0}}, F), 12.1, 1e-12);
  EXPECT_NEAR(F[0], -4.4, 1e-12);
  EXPECT_NEAR(F[1], 2.2, 1e-12);
}

TEST(EvalObjective, NonFiniteComponentReportsIndex) {
  auto p = identity_problem(3);
  p.residual = [](const Vector& x) {
    Vector r = x;
    r[1] = std::numeric_limits<double>::quiet_NaN();
    return r;
  };
  Evaluator eval(p);
  try {
    eval.objective(Vector::Ones(3));
    FAIL() << "expected EvaluationError";
  } catch (const EvaluationError& e) {
    EXPECT_EQ(e.index(), 1);
  }
  EXPECT_EQ(eval.counters().n_residual, 1);
}

TEST(EvalObjective, WrongLengthIsContractViolation) {
  auto p = identity_problem(2);
  Evaluator eval(p);
  EXPECT_THROW(eval.objective(Vector::Ones(3)), std::invalid_argument);
}

TEST(EvalGradient, Examples) {
  auto p = identity_problem(2);
  Evaluator eval(p);
  const Vector g = eval.gradient(Vector{{3.0, 4.0}});
  EXPECT_EQ(g, (Vector{{3.0, 4.0}}));
  EXPECT_EQ(eval.counters().n_residual, 1);
  EXPECT_EQ(eval.counters().n_jtv, 1);

  auto r = rosenbrock2();
  Evaluator er(r);
  const Vector gr = er.gradient(Vector{{-1.2, 1.0}});
  EXPECT_NEAR(gr[0], -107.8, 1e-10);
  EXPECT_NEAR(gr[1], -44.0, 1e-10);

  // zero-residual point
  Evaluator e2(r);
  EXPECT_EQ(e2.gradient(Vector::Ones(2)).norm(), 0.0);
}

TEST(EvalCrossGradient, Examples) {
  auto r = rosenbrock2();
  Evaluator eval(r);
  const Vector x{{0.3, -0.7}};
  EXPECT_EQ(eval.cross_gradient(x, x), eval.gradient(x));

  auto id = identity_problem(2);
  Evaluator e_id(id);
  EXPECT_EQ(e_id.cross_gradient(Vector{{1.0, 1.0}}, Vector{{0.0, 0.0}}), Vector::Zero(2));

  auto sq = testing::square_first_problem();
  Evaluator e_sq(sq);
  const Vector c = e_sq.cross_gradient(Vector{{1.0, 0.0}}, Vector{{2.0, 3.0}});
  EXPECT_EQ(c, (Vector{{8.0, 3.0}}));
  EXPECT_EQ(e_sq.counters().n_residual, 1);
  EXPECT_EQ(e_sq.counters().n_jtv, 1);

  const Vector F = sq.residual(Vector{{2.0, 3.0}});
  EXPECT_EQ(e_sq.cross_gradient_cached(Vector{{1.0, 0.0}}, F), c);
  EXPECT_EQ(e_sq.counters().n_residual, 1);
  EXPECT_EQ(e_sq.counters().n_jtv, 2);
}

TEST(FdGradient, Examples) {
  auto id = identity_problem(2);
  const Vector g = fd_gradient(id, Vector{{3.0, 4.0}}, 1e-6);
  EXPECT_NEAR(g[0], 3.0, 1e-6);
  EXPECT_NEAR(g[1], 4.0, 1e-6);

  auto c = testing::constant_problem(4, 2.5);
  EXPECT_LT(fd_gradient(c, Vector::Ones(4)).lpNorm<Eigen::Infinity>(), 1e-9);

  const Vector gr = fd_gradient(rosenbrock2(), Vector{{-1.2, 1.0}}, 1e-6);
  EXPECT_NEAR(gr[0], -107.8, 1e-3 * 107.8);
  EXPECT_NEAR(gr[1], -44.0, 1e-3 * 44.0);

  EXPECT_THROW(fd_gradient(id, Vector::Ones(2), 0.0), std::invalid_argument);
}

TEST(CheckGradient, ConsistentAndPlantedBug) {
  EXPECT_LE(check_gradient(rosenbrock2(), Vector{{-1.2, 1.0}}, 1e-6), 1e-5);

  const auto doubled = testing::scaled_jtv(identity_problem(2), 2.0);
  EXPECT_NEAR(check_gradient(doubled, Vector{{3.0, 4.0}}, 1e-6), 1.0, 1e-6);

  EXPECT_LE(check_gradient(rosenbrock2(), Vector::Ones(2), 1e-6), 1e-5);
}

// jtv(x, a u + b w) = a jtv(x, u) + b jtv(x, w) on every implemented problem.
TEST(ProblemInvariants, JtvIsLinear) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int id : suite::implemented_ids()) {
    const auto& spec = suite::find(id);
    const auto p = suite::instantiate(id, spec.scalable ? 12 : 0);
    for (int rep = 0; rep < 5; ++rep) {
      Vector x = p.x0;
      for (Index i = 0; i < x.size(); ++i) x[i] += 0.1 * unit(rng);
      const Vector u = testing::random_vector(rng, p.m);
      const Vector w = testing::random_vector(rng, p.m);
      const double a = unit(rng), b = unit(rng);
      const Vector ju = p.jtv(x, u);
      const Vector jw = p.jtv(x, w);
      const Vector lhs = p.jtv(x, a * u + b * w);
      EXPECT_LE((lhs - a * ju - b * jw).norm(), 1e-10 * (1.0 + ju.norm() + jw.norm())) << spec.name;
      EXPECT_EQ(ju.size(), p.n);
      EXPECT_EQ(p.residual(x).size(), p.m);
    }
  }
}

TEST(ProblemInvariants, CounterDiscipline) {
  std::mt19937_64 rng(11);
  auto p = suite::instantiate(13, 8);
  Evaluator eval(p);
  std::int64_t objectives = 0, gradients = 0, crosses = 0, cached = 0;
  std::int64_t last_res = 0, last_jtv = 0;
  for (int step = 0; step < 200; ++step) {
    const Vector x = p.x0 + 0.1 * testing::random_vector(rng, p.n);
    switch (rng() % 4) {
      case 0: eval.objective(x); ++objectives; break;
      case 1: eval.gradient(x); ++gradients; break;
      case 2: eval.cross_gradient(x, p.x0); ++crosses; break;
      default: eval.cross_gradient_cached(x, p.residual(p.x0)); ++cached; break;
    }
    EXPECT_GE(eval.counters().n_residual, last_res);
    EXPECT_GE(eval.counters().n_jtv, last_jtv);
    last_res = eval.counters().n_residual;
    last_jtv = eval.counters().n_jtv;
  }
  EXPECT_EQ(eval.counters().n_residual, objectives + gradients + crosses);
  EXPECT_EQ(eval.counters().n_jtv, gradients + crosses + cached);
}

TEST(ProblemInvariants, FdOracleUsesSeparateCounters) {
  auto p = rosenbrock2();
  Evaluator eval(p);
  eval.objective(p.x0);
  (void)check_gradient(p, p.x0);
  EXPECT_EQ(eval.counters().n_residual, 1);
}

}  // namespace
}  // namespace ssgm
