#include "ssgm/linesearch.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ssgm {

EtaSchedule::EtaSchedule(Kind kind, double lo, double hi, std::function<double(std::int64_t)> rule)
    : kind_(kind), eta_min_(lo), eta_max_(hi), rule_(std::move(rule)) {
  if (!(0.0 <= lo && lo <= hi && hi <= 1.0)) {
    throw std::invalid_argument("eta bounds must satisfy 0 <= eta_min <= eta_max <= 1");
  }
}

EtaSchedule EtaSchedule::constant(double eta) {
  return EtaSchedule(Kind::constant, eta, eta, [eta](std::int64_t) { return eta; });
}

EtaSchedule EtaSchedule::santos_silva() {
  return EtaSchedule(Kind::santos_silva, 0.1, 0.85, [](std::int64_t k) {
    const double r = static_cast<double>(k) / 45.0;
    return 0.75 * std::exp(-r * r) + 0.1;
  });
}

EtaSchedule EtaSchedule::custom(double eta_min, double eta_max,
                                std::function<double(std::int64_t)> rule) {
  if (!rule) throw std::invalid_argument("custom eta schedule needs a rule");
  return EtaSchedule(Kind::custom, eta_min, eta_max, std::move(rule));
}

double EtaSchedule::value(std::int64_t k) const {
  if (k < 0) throw std::invalid_argument("eta schedule: negative iteration index");
  const double v = rule_(k);
  if (std::isnan(v)) return eta_min_;
  return std::clamp(v, eta_min_, eta_max_);
}

bool accept_test(double f_trial, const NonmonotoneMemory& memory, double gamma, double t,
                 double g_dot_d) {
  if (!(g_dot_d < 0.0)) {
    throw std::invalid_argument("accept_test: direction is not a descent direction");
  }
  return f_trial <= memory.C + gamma * t * g_dot_d;
}

double quadratic_backtrack(double f0, double g_dot_d, double t, double f_t) {
  const double half = 0.5 * t;
  if (!std::isfinite(f_t)) return half;
  const double curvature = f_t - f0 - t * g_dot_d;
  if (!(curvature > 0.0)) return half;
  const double t_q = -g_dot_d * t * t / (2.0 * curvature);
  if (!std::isfinite(t_q)) return half;
  return std::min(std::max(t_q, 0.1 * t), half);
}

NonmonotoneMemory update_memory(const NonmonotoneMemory& memory, double f_new, double eta_k) {
  if (!(eta_k >= 0.0 && eta_k <= 1.0)) throw std::invalid_argument("update_memory: eta outside [0, 1]");
  NonmonotoneMemory next;
  const double weight = eta_k * memory.Q;
  next.Q = weight + 1.0;
  next.C = (weight * memory.C + f_new) / next.Q;
  next.k = memory.k + 1;
  return next;
}

LineSearchOutcome line_search(Evaluator& eval, const Vector& x, const Vector& d, double f_x,
                              double g_dot_d, const NonmonotoneMemory& memory,
                              const LineSearchOptions& options) {
  if (!(g_dot_d < 0.0)) throw std::invalid_argument("line_search: uphill direction");

  LineSearchOutcome out;
  double t = 1.0;
  for (int trial = 0;; ++trial) {
    if (eval.counters().n_residual >= options.max_residual_evals) {
      out.status = LineSearchStatus::failed_budget;
      out.n_backtracks = trial;
      return out;
    }
    Vector x_trial = x + t * d;
    Vector residual;
    double f_t = std::numeric_limits<double>::infinity();
    bool finite = true;
    try {
      f_t = eval.objective(x_trial, residual);
    } catch (const EvaluationError&) {
      finite = false;
    }
    if (finite && accept_test(f_t, memory, options.gamma, t, g_dot_d)) {
      out.status = LineSearchStatus::accepted;
      out.t = t;
      out.f_new = f_t;
      out.n_backtracks = trial;
      out.x_new = std::move(x_trial);
      out.residual_new = std::move(residual);
      return out;
    }
    if (trial >= options.max_backtracks) {
      out.status = LineSearchStatus::failed_backtracks;
      out.n_backtracks = trial + 1;
      return out;
    }
    t = quadratic_backtrack(f_x, g_dot_d, t, finite ? f_t : std::numeric_limits<double>::infinity());
  }
}

}  // namespace ssgm
