#pragma once

// Zhang-Hager nonmonotone line search. The reference value C_k is a weighted
// average of past objective values:
//   Q_{k+1} = eta_k Q_k + 1,   C_{k+1} = (eta_k Q_k C_k + f_{k+1}) / Q_{k+1}
// and a trial steplength t is accepted when f(x + t d) <= C_k + gamma t g^T d.

#include "ssgm/problem.hpp"

#include <cstdint>
#include <functional>
#include <limits>

namespace ssgm {

struct NonmonotoneMemory {
  double C = 0.0;
  double Q = 1.0;
  std::int64_t k = 0;

  /// C_0 = f(x_0), Q_0 = 1.
  static NonmonotoneMemory start(double f0) { return {f0, 1.0, 0}; }
};

class EtaSchedule {
 public:
  enum class Kind { constant, santos_silva, custom };

  static EtaSchedule constant(double eta);
  /// 0.75 exp(-(k/45)^2) + 0.1, within [0.1, 0.85].
  static EtaSchedule santos_silva();
  /// `rule` output is clipped into [eta_min, eta_max] ⊆ [0, 1].
  static EtaSchedule custom(double eta_min, double eta_max, std::function<double(std::int64_t)> rule);

  Kind kind() const { return kind_; }
  double eta_min() const { return eta_min_; }
  double eta_max() const { return eta_max_; }
  double value(std::int64_t k) const;

 private:
  EtaSchedule(Kind kind, double lo, double hi, std::function<double(std::int64_t)> rule);

  Kind kind_;
  double eta_min_;
  double eta_max_;
  std::function<double(std::int64_t)> rule_;
};

inline double eta_value(const EtaSchedule& schedule, std::int64_t k) { return schedule.value(k); }

/// f_trial <= C + gamma t g^T d. Throws std::invalid_argument unless g^T d < 0.
bool accept_test(double f_trial, const NonmonotoneMemory& memory, double gamma, double t,
                 double g_dot_d);

/// Minimizer of the quadratic through (0, f0) with slope g_dot_d and (t, f_t),
/// kept inside [0.1 t, 0.5 t]. Falls back to t/2 when f_t is not finite or the
/// fitted quadratic is not convex.
double quadratic_backtrack(double f0, double g_dot_d, double t, double f_t);

NonmonotoneMemory update_memory(const NonmonotoneMemory& memory, double f_new, double eta_k);

struct LineSearchOptions {
  double gamma = 1e-4;
  int max_backtracks = 50;
  /// Trials are refused once the evaluator has spent this many residual evaluations.
  std::int64_t max_residual_evals = std::numeric_limits<std::int64_t>::max();
};

enum class LineSearchStatus { accepted, failed_budget, failed_backtracks };

struct LineSearchOutcome {
  LineSearchStatus status = LineSearchStatus::failed_budget;
  double t = 0.0;
  double f_new = std::numeric_limits<double>::quiet_NaN();
  int n_backtracks = 0;
  Vector x_new;
  Vector residual_new;  // F(x_new), kept for the gradient and secant products
};

/// Backtracking from t = 1 along d until the nonmonotone test passes. Each
/// trial costs one residual evaluation; trials where F is not finite are
/// rejected and halved.
LineSearchOutcome line_search(Evaluator& eval, const Vector& x, const Vector& d, double f_x,
                              double g_dot_d, const NonmonotoneMemory& memory,
                              const LineSearchOptions& options);

}  // namespace ssgm
