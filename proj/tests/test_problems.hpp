#pragma once

// Small residual problems with hand-checkable Jacobians, plus independent
// oracles used to cross-check library results.

#include "ssgm/problem.hpp"

#include <Eigen/Dense>

#include <random>

namespace ssgm::testing {

using Matrix = Eigen::MatrixXd;

inline ResidualProblem identity_problem(Index n, Vector x0 = {}) {
  ResidualProblem p;
  p.name = "identity";
  p.n = n;
  p.m = n;
  p.residual = [](const Vector& x) { return x; };
  p.jtv = [](const Vector&, const Vector& v) { return v; };
  p.x0 = x0.size() == n ? x0 : Vector::Ones(n);
  return p;
}

/// F(x) = x - x.
inline ResidualProblem zero_problem(Index n) {
  ResidualProblem p = identity_problem(n);
  p.name = "zero";
  p.residual = [](const Vector& x) { Vector r = x - x; return r; };
  p.jtv = [](const Vector& x, const Vector&) { return Vector::Zero(x.size()).eval(); };
  return p;
}

inline ResidualProblem constant_problem(Index n, double c) {
  ResidualProblem p = identity_problem(n);
  p.name = "constant";
  p.residual = [c](const Vector& x) { return Vector::Constant(x.size(), c).eval(); };
  p.jtv = [](const Vector& x, const Vector&) { return Vector::Zero(x.size()).eval(); };
  return p;
}

/// F(x) = (x1^2, x2).
inline ResidualProblem square_first_problem() {
  ResidualProblem p;
  p.name = "square-first";
  p.n = 2;
  p.m = 2;
  p.residual = [](const Vector& x) { return Vector{{x[0] * x[0], x[1]}}; };
  p.jtv = [](const Vector& x, const Vector& v) { return Vector{{2.0 * x[0] * v[0], v[1]}}; };
  p.x0 = Vector{{1.0, 1.0}};
  return p;
}

/// F(x) = A x - b.
inline ResidualProblem linear_problem(const Matrix& A, const Vector& b, Vector x0 = {}) {
  ResidualProblem p;
  p.name = "linear";
  p.n = A.cols();
  p.m = A.rows();
  p.residual = [A, b](const Vector& x) { return (A * x - b).eval(); };
  p.jtv = [A](const Vector&, const Vector& v) { return (A.transpose() * v).eval(); };
  p.x0 = x0.size() == p.n ? x0 : Vector::Ones(p.n);
  return p;
}

/// F(x) = A x + b + c .* (B x)^2 + e .* sin(D x), with explicit Jacobian.
struct RandomSmoothProblem {
  Matrix A, B, D;
  Vector b, c, e;

  Vector residual(const Vector& x) const {
    const Vector bx = B * x;
    const Vector dx = D * x;
    return (A * x + b + (c.array() * bx.array().square()).matrix() + (e.array() * dx.array().sin()).matrix())
        .eval();
  }
  Matrix jacobian(const Vector& x) const {
    const Vector bx = B * x;
    const Vector dx = D * x;
    return A + (2.0 * c.array() * bx.array()).matrix().asDiagonal() * B +
           (e.array() * dx.array().cos()).matrix().asDiagonal() * D;
  }
  Vector jtv(const Vector& x, const Vector& v) const {
    const Vector bx = B * x;
    const Vector dx = D * x;
    return (A.transpose() * v + B.transpose() * (2.0 * c.array() * bx.array() * v.array()).matrix() +
            D.transpose() * (e.array() * dx.array().cos() * v.array()).matrix())
        .eval();
  }

  ResidualProblem problem(const Vector& x0) const {
    ResidualProblem p;
    p.name = "random-smooth";
    p.n = A.cols();
    p.m = A.rows();
    auto self = *this;
    p.residual = [self](const Vector& x) { return self.residual(x); };
    p.jtv = [self](const Vector& x, const Vector& v) { return self.jtv(x, v); };
    p.x0 = x0;
    return p;
  }
};

inline Matrix random_matrix(std::mt19937_64& rng, Index rows, Index cols) {
  std::normal_distribution<double> normal;
  Matrix M(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) M(i, j) = normal(rng);
  return M;
}

inline Vector random_vector(std::mt19937_64& rng, Index n) {
  std::normal_distribution<double> normal;
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = normal(rng);
  return v;
}

inline RandomSmoothProblem random_smooth(std::mt19937_64& rng, Index n, Index m) {
  RandomSmoothProblem r;
  r.A = random_matrix(rng, m, n);
  r.B = random_matrix(rng, m, n);
  r.D = random_matrix(rng, m, n);
  r.b = random_vector(rng, m);
  r.c = 0.5 * random_vector(rng, m);
  r.e = random_vector(rng, m);
  return r;
}

/// Replaces J^T v by factor * J^T v.
inline ResidualProblem scaled_jtv(ResidualProblem p, double factor) {
  auto inner = p.jtv;
  p.jtv = [inner, factor](const Vector& x, const Vector& v) { return (factor * inner(x, v)).eval(); };
  return p;
}

/// J_k^T (F_k - F_{k-1}) + (J_k - J_{k-1})^T F_k from four separate products.
inline Vector structured_vector_expanded(const ResidualProblem& p, const Vector& x_prev, const Vector& x_cur) {
  const Vector F_prev = p.residual(x_prev);
  const Vector F_cur = p.residual(x_cur);
  return p.jtv(x_cur, F_cur) - p.jtv(x_cur, F_prev) + p.jtv(x_cur, F_cur) - p.jtv(x_prev, F_cur);
}

}  // namespace ssgm::testing
