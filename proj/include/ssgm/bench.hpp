#pragma once

// Benchmark harness: run a problem x dimension x solver matrix, store the
// results as CSV, and turn them into Dolan-More performance profiles.

#include "ssgm/solver.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ssgm::bench {

struct RunRecord {
  int problem_id = 0;
  Index n = 0;
  std::string rule;      // "ssgm1", ...
  std::string strategy;  // "classical", "retard", "tau"
  SolveStatus status = SolveStatus::evaluation_error;
  std::int64_t iterations = 0;
  std::int64_t n_residual = 0;
  std::int64_t n_jtv = 0;
  double wall_time = 0.0;  // seconds
  double final_f = 0.0;
  double final_grad_norm = 0.0;
  /// Iterations on which the negative-curvature safeguard supplied the stepsize.
  std::int64_t n_safeguard = 0;

  bool failed() const { return status != SolveStatus::converged; }
  /// "SSGM2C" style label.
  std::string label() const;

  bool operator==(const RunRecord&) const = default;
};

struct Instance {
  int problem_id = 0;
  Index n = 0;  // 0 = default dimension
};

/// Scalable core problems at each of `dims`, fixed-size core problems at
/// their own dimension.
std::vector<Instance> default_instances(const std::vector<int>& ids, const std::vector<Index>& dims);

RunRecord run_one(const Instance& instance, const SolverConfig& config);

/// One record per (instance, config), ordered instance-major. Runs are
/// spread over `workers` threads (0 = hardware concurrency).
std::vector<RunRecord> run_matrix(const std::vector<Instance>& instances,
                                  const std::vector<SolverConfig>& configs, unsigned workers = 1);

enum class Metric { iterations, n_residual, time };
Metric parse_metric(const std::string& text);
std::string to_string(Metric m);
double metric_value(const RunRecord& r, Metric m);

enum class FailurePolicy {
  drop_problem,  // remove every problem on which any solver failed
  ceiling,       // keep them; a failed run never reaches any tau
};

class EmptyProfileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// ratio[p][s] = metric(p, s) / min over solvers; +inf for failed runs.
struct RatioTable {
  std::vector<std::string> labels;
  std::vector<std::pair<int, Index>> problems;
  std::vector<std::vector<double>> ratio;
};

RatioTable performance_ratios(const std::vector<RunRecord>& records, Metric metric,
                              FailurePolicy policy = FailurePolicy::drop_problem);

struct ProfileCurve {
  std::string label;
  std::vector<double> tau;  // strictly increasing, >= 1
  std::vector<double> rho;  // non-decreasing, in [0, 1]
  std::size_t n_problems = 0;

  /// Fraction of problems with ratio <= t.
  double rho_at(double t) const;
};

std::vector<ProfileCurve> profile_from_ratios(const RatioTable& table);

/// Throws EmptyProfileError when no problem survives the failure policy.
std::vector<ProfileCurve> performance_profile(const std::vector<RunRecord>& records, Metric metric,
                                              FailurePolicy policy = FailurePolicy::drop_problem);

// CSV and SVG output. I/O failures surface as std::runtime_error carrying the
// system message.
void write_records_csv(const std::vector<RunRecord>& records, const std::string& path);
std::string records_to_csv(const std::vector<RunRecord>& records);
std::vector<RunRecord> parse_records_csv(const std::string& text);
std::vector<RunRecord> read_records_csv(const std::string& path);

void write_curves_csv(const std::vector<ProfileCurve>& curves, const std::string& path);
std::string curves_to_csv(const std::vector<ProfileCurve>& curves);

std::string profile_svg(const std::vector<ProfileCurve>& curves, const std::string& title = "");
void write_profile_svg(const std::vector<ProfileCurve>& curves, const std::string& path,
                       const std::string& title = "");

}  // namespace ssgm::bench
