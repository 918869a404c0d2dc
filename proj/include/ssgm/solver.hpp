#pragma once

#include "ssgm/linesearch.hpp"
#include "ssgm/problem.hpp"
#include "ssgm/stepsize.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ssgm {

enum class GradNorm { infinity, euclidean };

struct SolverConfig {
  StepsizeRule rule = StepsizeRule::ssgm2;
  SafeguardStrategy strategy = StructuredTau{1e3};
  double gamma = 1e-4;
  double lambda_min = 1e-30;
  double lambda_max = 1e30;
  double epsilon = 1e-4;
  GradNorm grad_norm = GradNorm::infinity;
  std::int64_t max_iterations = 1000;
  std::int64_t max_residual_evals = 2000;
  int max_backtracks = 50;
  EtaSchedule eta_schedule = EtaSchedule::santos_silva();
  /// 0 keeps every iteration record; otherwise only the most recent ones
  /// (the first record is always kept).
  std::size_t trace_limit = 0;

  /// Throws std::invalid_argument when a parameter is out of range.
  void validate() const;
};

/// State at iterate x_k plus the step taken from it. The outgoing fields are
/// empty on the record where the run stopped.
struct IterationRecord {
  std::int64_t k = 0;
  double f = 0.0;
  double grad_norm = 0.0;  // in the configured norm
  double lambda = 0.0;     // spectral stepsize used for d_k = -lambda g_k
  double C = 0.0;
  double Q = 1.0;
  /// s^T z of the step that produced lambda (k >= 1).
  std::optional<double> s_dot_z;
  /// |z| / |s| of that step.
  std::optional<double> z_over_s;
  bool safeguard_fired = false;
  std::int64_t n_residual = 0;
  std::int64_t n_jtv = 0;

  std::optional<double> g_dot_d;  // g_k^T d_k
  std::optional<double> t;        // accepted steplength
  std::optional<double> eta;      // eta_k used to form C_{k+1}
  int n_backtracks = 0;
};

enum class SolveStatus { converged, max_iterations, max_evals, line_search_failure, evaluation_error };

std::string to_string(SolveStatus s);
SolveStatus parse_status(const std::string& text);

struct SolveReport {
  SolveStatus status = SolveStatus::evaluation_error;
  Vector x;
  double f = 0.0;
  double grad_norm = 0.0;
  std::int64_t iterations = 0;
  std::vector<IterationRecord> trace;
  EvalCounters counters;
  std::string message;  // detail for non-converged runs
};

double norm_of(const Vector& g, GradNorm norm);

/// |g| <= epsilon in the chosen norm.
bool converged(const Vector& g, double epsilon, GradNorm norm);

/// -lambda g.
Vector direction(double lambda, const Vector& g);

/// Structured two-point stepsize gradient method with nonmonotone line search.
SolveReport solve(const ResidualProblem& problem, const SolverConfig& config);

/// JSON text for a report; the trace is an array of records.
std::string report_to_json(const SolveReport& report, const std::string& problem_name,
                           const SolverConfig& config, int indent = 2);

}  // namespace ssgm
