#include "ssgm/solver.hpp"

#include <json.hpp>

#include <cmath>
#include <stdexcept>

namespace ssgm {

void SolverConfig::validate() const {
  if (!(lambda_min > 0.0 && lambda_min <= lambda_max)) {
    throw std::invalid_argument("need 0 < lambda_min <= lambda_max");
  }
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must lie in (0, 1)");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (max_iterations < 0) throw std::invalid_argument("max_iterations must be non-negative");
  if (max_residual_evals < 1) throw std::invalid_argument("max_residual_evals must be positive");
  if (max_backtracks < 0) throw std::invalid_argument("max_backtracks must be non-negative");
  if (const auto* r = std::get_if<Retard>(&strategy); r && !(r->delta > 0.0)) {
    throw std::invalid_argument("retard factor must be positive");
  }
  if (const auto* t = std::get_if<StructuredTau>(&strategy); t && !(t->beta > 0.0)) {
    throw std::invalid_argument("tau factor must be positive");
  }
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::max_iterations: return "max_iterations";
    case SolveStatus::max_evals: return "max_evals";
    case SolveStatus::line_search_failure: return "line_search_failure";
    case SolveStatus::evaluation_error: return "evaluation_error";
  }
  return "unknown";
}

SolveStatus parse_status(const std::string& text) {
  for (auto s : {SolveStatus::converged, SolveStatus::max_iterations, SolveStatus::max_evals,
                 SolveStatus::line_search_failure, SolveStatus::evaluation_error}) {
    if (to_string(s) == text) return s;
  }
  throw std::invalid_argument("unknown solve status '" + text + "'");
}

double norm_of(const Vector& g, GradNorm norm) {
  if (g.size() == 0) return 0.0;
  return norm == GradNorm::infinity ? g.lpNorm<Eigen::Infinity>() : g.norm();
}

bool converged(const Vector& g, double epsilon, GradNorm norm) { return norm_of(g, norm) <= epsilon; }

Vector direction(double lambda, const Vector& g) { return -lambda * g; }

namespace {

class TraceSink {
 public:
  TraceSink(std::vector<IterationRecord>& trace, std::size_t limit) : trace_(trace), limit_(limit) {}

  void push(IterationRecord rec) {
    if (limit_ > 0 && trace_.size() >= limit_ && trace_.size() > 1) {
      trace_.erase(trace_.begin() + 1);
    }
    trace_.push_back(std::move(rec));
  }

 private:
  std::vector<IterationRecord>& trace_;
  std::size_t limit_;
};

}  // namespace

SolveReport solve(const ResidualProblem& problem, const SolverConfig& config) {
  config.validate();
  if (problem.x0.size() != problem.n) throw std::invalid_argument(problem.name + ": x0 has wrong length");

  SolveReport report;
  TraceSink sink(report.trace, config.trace_limit);
  Evaluator eval(problem);

  Vector x = problem.x0;
  Vector residual;
  Vector g;
  double f = 0.0;
  try {
    f = eval.objective(x, residual);
    g = eval.apply_jt(x, residual);
  } catch (const EvaluationError& e) {
    report.status = SolveStatus::evaluation_error;
    report.message = std::string("at starting point: ") + e.what();
    report.x = x;
    report.f = std::numeric_limits<double>::quiet_NaN();
    report.grad_norm = std::numeric_limits<double>::quiet_NaN();
    report.counters = eval.counters();
    return report;
  }

  LineSearchOptions ls_options;
  ls_options.gamma = config.gamma;
  ls_options.max_backtracks = config.max_backtracks;
  ls_options.max_residual_evals = config.max_residual_evals;

  NonmonotoneMemory memory = NonmonotoneMemory::start(f);
  double lambda = 1.0;
  int stagnations = 0;

  IterationRecord rec;
  rec.k = 0;
  rec.f = f;
  rec.lambda = lambda;
  rec.C = memory.C;
  rec.Q = memory.Q;

  auto finish = [&](SolveStatus status, std::string message) {
    rec.n_residual = eval.counters().n_residual;
    rec.n_jtv = eval.counters().n_jtv;
    sink.push(rec);
    report.status = status;
    report.message = std::move(message);
    report.x = x;
    report.f = f;
    report.grad_norm = norm_of(g, config.grad_norm);
    report.iterations = rec.k;
    report.counters = eval.counters();
  };

  for (;;) {
    rec.grad_norm = norm_of(g, config.grad_norm);
    if (converged(g, config.epsilon, config.grad_norm)) {
      finish(SolveStatus::converged, "");
      break;
    }
    if (stagnations >= 2) {
      finish(SolveStatus::line_search_failure, "no displacement on two consecutive steps");
      break;
    }
    if (rec.k >= config.max_iterations) {
      finish(SolveStatus::max_iterations, "");
      break;
    }

    const Vector d = direction(lambda, g);
    const double g_dot_d = g.dot(d);
    if (!(g_dot_d < 0.0) || !std::isfinite(g_dot_d)) {
      finish(SolveStatus::line_search_failure, "direction is not a finite descent direction");
      break;
    }
    rec.g_dot_d = g_dot_d;

    LineSearchOutcome ls = line_search(eval, x, d, f, g_dot_d, memory, ls_options);
    rec.n_backtracks = ls.n_backtracks;
    if (ls.status == LineSearchStatus::failed_budget) {
      finish(SolveStatus::max_evals, "residual evaluation budget exhausted in line search");
      break;
    }
    if (ls.status == LineSearchStatus::failed_backtracks) {
      finish(SolveStatus::line_search_failure, "backtracking limit reached");
      break;
    }
    rec.t = ls.t;

    // Step 4: gradient at the new point and the secant pair of this step.
    Vector g_new;
    Vector z;
    try {
      g_new = eval.apply_jt(ls.x_new, ls.residual_new);
      if (is_structured(config.rule)) {
        const Vector r_k = eval.cross_gradient_cached(ls.x_new, residual);  // J_{k+1}^T F_k
        const Vector r_km1 = eval.cross_gradient_cached(x, ls.residual_new);  // J_k^T F_{k+1}
        z = build_structured_vector(g_new, r_k, r_km1);
      } else {
        z = g_new - g;
      }
    } catch (const EvaluationError& e) {
      finish(SolveStatus::evaluation_error, std::string("after accepted step: ") + e.what());
      break;
    }
    const StepPair pair = make_step_pair(ls.x_new - x, std::move(z));
    const StepsizeResult step =
        compute_stepsize(config.rule, config.strategy, pair, lambda, config.lambda_max);

    double lambda_next = lambda;
    if (step.status == StepsizeStatus::ok) {
      lambda_next = clamp_lambda(step.alpha, config.lambda_min, config.lambda_max);
      stagnations = 0;
    } else if (step.status == StepsizeStatus::stagnation) {
      ++stagnations;
    } else {
      stagnations = 0;
    }

    // Step 5.
    const double eta = eta_value(config.eta_schedule, rec.k);
    rec.eta = eta;
    memory = update_memory(memory, ls.f_new, eta);

    rec.n_residual = eval.counters().n_residual;
    rec.n_jtv = eval.counters().n_jtv;
    const std::int64_t k_next = rec.k + 1;
    sink.push(std::move(rec));

    x = std::move(ls.x_new);
    residual = std::move(ls.residual_new);
    g = std::move(g_new);
    f = ls.f_new;
    lambda = lambda_next;

    rec = IterationRecord{};
    rec.k = k_next;
    rec.f = f;
    rec.lambda = lambda;
    rec.C = memory.C;
    rec.Q = memory.Q;
    rec.s_dot_z = pair.s_dot_z;
    if (pair.s_norm > 0.0) rec.z_over_s = pair.z_norm / pair.s_norm;
    rec.safeguard_fired = step.safeguard_fired;
  }
  return report;
}

namespace {

nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

std::string report_to_json(const SolveReport& report, const std::string& problem_name,
                           const SolverConfig& config, int indent) {
  using nlohmann::json;
  json trace = json::array();
  for (const auto& r : report.trace) {
    trace.push_back({{"k", r.k},
                     {"f_k", r.f},
                     {"grad_norm", r.grad_norm},
                     {"lambda_k", r.lambda},
                     {"t_k", optional_json(r.t)},
                     {"C_k", r.C},
                     {"Q_k", r.Q},
                     {"eta_k", optional_json(r.eta)},
                     {"s_dot_z", optional_json(r.s_dot_z)},
                     {"safeguard_fired", r.safeguard_fired},
                     {"g_dot_d", optional_json(r.g_dot_d)},
                     {"n_backtracks", r.n_backtracks},
                     {"n_residual", r.n_residual},
                     {"n_jtv", r.n_jtv}});
  }
  json doc = {
      {"problem", problem_name},
      {"rule", to_string(config.rule)},
      {"strategy", to_string(config.strategy)},
      {"status", to_string(report.status)},
      {"message", report.message},
      {"iterations", report.iterations},
      {"final_f", report.f},
      {"final_grad_norm", report.grad_norm},
      {"grad_norm_kind", config.grad_norm == GradNorm::infinity ? "infinity" : "euclidean"},
      {"counters", {{"n_residual", report.counters.n_residual}, {"n_jtv", report.counters.n_jtv}}},
      {"final_point", std::vector<double>(report.x.data(), report.x.data() + report.x.size())},
      {"trace", std::move(trace)},
  };
  return doc.dump(indent);
}

}  // namespace ssgm
