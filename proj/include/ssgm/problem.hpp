#pragma once

// Matrix-free residual problems: F: R^n -> R^m is only ever touched through
// evaluation and Jacobian-transpose-vector products.

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace ssgm {

using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

enum class ResidualClass { zero, small, large };

std::string to_string(ResidualClass c);

/// Raised when F or J^T v produces a non-finite component. Carries the
/// offending component index so the caller can report it.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, Index index)
      : std::runtime_error(what), index_(index) {}
  Index index() const { return index_; }

 private:
  Index index_;
};

struct ResidualProblem {
  std::string name;
  Index n = 0;
  Index m = 0;
  /// x (length n) -> F(x) (length m).
  std::function<Vector(const Vector&)> residual;
  /// (x, v) with v of length m -> J(x)^T v (length n).
  std::function<Vector(const Vector&, const Vector&)> jtv;
  Vector x0;
  ResidualClass residual_class = ResidualClass::zero;
};

struct EvalCounters {
  std::int64_t n_residual = 0;
  std::int64_t n_jtv = 0;
};

/// Counted access to a ResidualProblem. One Evaluator per solver run; the
/// problem itself is never mutated, so several Evaluators may share it across
/// threads.
class Evaluator {
 public:
  explicit Evaluator(const ResidualProblem& problem) : problem_(&problem) {}

  const ResidualProblem& problem() const { return *problem_; }
  const EvalCounters& counters() const { return counters_; }

  /// F(x). One residual evaluation.
  Vector residual(const Vector& x);

  /// f(x) = 1/2 |F(x)|^2. One residual evaluation.
  double objective(const Vector& x);
  /// Same, and hands back F(x) for reuse by later Jacobian products.
  double objective(const Vector& x, Vector& residual_out);

  /// J(x)^T v. One jtv product, no residual evaluation.
  Vector apply_jt(const Vector& x, const Vector& v);

  /// J(x)^T F(x): one residual evaluation and one jtv product.
  Vector gradient(const Vector& x);

  /// J(x_jac)^T F(x_res): one residual evaluation and one jtv product.
  Vector cross_gradient(const Vector& x_jac, const Vector& x_res);
  /// As above with F(x_res) already known: one jtv product only.
  Vector cross_gradient_cached(const Vector& x_jac, const Vector& residual_at_res);

 private:
  void check_point(const Vector& x) const;

  const ResidualProblem* problem_;
  EvalCounters counters_;
};

/// 1/2 |F|^2 for an already evaluated residual.
double half_squared_norm(const Vector& residual);

/// Central-difference gradient of f with component step h * max(1, |x_i|).
/// Runs in its own counter scope.
Vector fd_gradient(const ResidualProblem& problem, const Vector& x, double h = 1e-6);

/// max_i |g_i - g_fd_i| / max(1, |g_fd_i|), analytic gradient via J^T F.
double check_gradient(const ResidualProblem& problem, const Vector& x, double h = 1e-6);

}  // namespace ssgm
