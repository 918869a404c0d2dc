#include "ssgm/problem.hpp"

#include <algorithm>
#include <cmath>

namespace ssgm {

std::string to_string(ResidualClass c) {
  switch (c) {
    case ResidualClass::zero: return "zero";
    case ResidualClass::small: return "small";
    case ResidualClass::large: return "large";
  }
  return "unknown";
}

namespace {

void require_finite(const Vector& v, const char* what) {
  for (Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw EvaluationError(std::string(what) + ": non-finite component " + std::to_string(i),
                            i);
    }
  }
}

}  // namespace

double half_squared_norm(const Vector& residual) { return 0.5 * residual.squaredNorm(); }

void Evaluator::check_point(const Vector& x) const {
  if (x.size() != problem_->n) {
    throw std::invalid_argument(problem_->name + ": point has length " +
                                std::to_string(x.size()) + ", expected " +
                                std::to_string(problem_->n));
  }
}

Vector Evaluator::residual(const Vector& x) {
  check_point(x);
  ++counters_.n_residual;
  Vector r = problem_->residual(x);
  if (r.size() != problem_->m) {
    throw std::logic_error(problem_->name + ": residual has length " + std::to_string(r.size()) +
                           ", expected " + std::to_string(problem_->m));
  }
  require_finite(r, "residual");
  return r;
}

double Evaluator::objective(const Vector& x) {
  Vector r;
  return objective(x, r);
}

double Evaluator::objective(const Vector& x, Vector& residual_out) {
  residual_out = residual(x);
  double f = half_squared_norm(residual_out);
  if (!std::isfinite(f)) {
    // |F|^2 can overflow even when every component is finite.
    throw EvaluationError("objective overflow", -1);
  }
  return f;
}

Vector Evaluator::apply_jt(const Vector& x, const Vector& v) {
  check_point(x);
  if (v.size() != problem_->m) {
    throw std::invalid_argument(problem_->name + ": jtv vector has length " +
                                std::to_string(v.size()) + ", expected " +
                                std::to_string(problem_->m));
  }
  ++counters_.n_jtv;
  Vector out = problem_->jtv(x, v);
  if (out.size() != problem_->n) {
    throw std::logic_error(problem_->name + ": jtv has length " + std::to_string(out.size()) +
                           ", expected " + std::to_string(problem_->n));
  }
  require_finite(out, "jtv");
  return out;
}

Vector Evaluator::gradient(const Vector& x) {
  Vector r = residual(x);
  return apply_jt(x, r);
}

Vector Evaluator::cross_gradient(const Vector& x_jac, const Vector& x_res) {
  check_point(x_jac);
  Vector r = residual(x_res);
  return apply_jt(x_jac, r);
}

Vector Evaluator::cross_gradient_cached(const Vector& x_jac, const Vector& residual_at_res) {
  return apply_jt(x_jac, residual_at_res);
}

Vector fd_gradient(const ResidualProblem& problem, const Vector& x, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("fd_gradient: step must be positive");
  Evaluator eval(problem);
  Vector g(x.size());
  Vector xp = x;
  for (Index i = 0; i < x.size(); ++i) {
    // a power of two keeps x +- hi exact whenever x sits on a coarser grid
    const double hi = std::exp2(std::floor(std::log2(h * std::max(1.0, std::abs(x[i])))));
    const double up = x[i] + hi;
    const double down = x[i] - hi;
    xp[i] = up;
    const Vector Fp = eval.residual(xp);
    xp[i] = down;
    const Vector Fm = eval.residual(xp);
    xp[i] = x[i];
    // f(up) - f(down) summed term by term as (F+ - F-)(F+ + F-) / 2, so a
    // large unchanged component cannot swamp the difference
    const double df = 0.5 * (Fp - Fm).dot(Fp + Fm);
    // the representable step, not the requested one
    g[i] = df / (up - down);
  }
  return g;
}

double check_gradient(const ResidualProblem& problem, const Vector& x, double h) {
  Evaluator eval(problem);
  const Vector g = eval.gradient(x);
  const Vector g_fd = fd_gradient(problem, x, h);
  double worst = 0.0;
  for (Index i = 0; i < g.size(); ++i) {
    worst = std::max(worst, std::abs(g[i] - g_fd[i]) / std::max(1.0, std::abs(g_fd[i])));
  }
  return worst;
}

}  // namespace ssgm
