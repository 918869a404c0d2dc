// ssgm: solve, gradient-check and benchmark nonlinear least-squares problems
// with structured spectral gradient methods.

#include "ssgm/bench.hpp"
#include "ssgm/solver.hpp"
#include "ssgm/suite.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace ssgm;

struct SolverFlags {
  std::string rule = "ssgm2";
  std::string safeguard = "tau";
  double eps = 1e-4;
  std::int64_t max_iter = 1000;
  std::int64_t max_fev = 2000;
  std::string eta = "santos-silva";
  std::string norm = "inf";
  double delta = 0.5;
  double beta = 1e3;
  std::uint64_t seed = 0;  // reserved: every solver path is deterministic

  void attach(CLI::App* app, bool lists) {
    if (!lists) {
      app->add_option("--rule", rule, "ssgm1 | ssgm2 | bb1 | bb2")->capture_default_str();
      app->add_option("--safeguard", safeguard, "classical | retard | tau")->capture_default_str();
    }
    app->add_option("--eps", eps, "gradient tolerance")->capture_default_str();
    app->add_option("--max-iter", max_iter, "iteration limit")->capture_default_str();
    app->add_option("--max-fev", max_fev, "residual evaluation limit")->capture_default_str();
    app->add_option("--eta", eta, "const:<value> | santos-silva")->capture_default_str();
    app->add_option("--norm", norm, "stopping norm: inf | 2")->capture_default_str();
    app->add_option("--delta", delta, "retard factor")->capture_default_str();
    app->add_option("--beta", beta, "tau safeguard factor")->capture_default_str();
    app->add_option("--seed", seed, "reserved");
  }

  SolverConfig config(const std::string& rule_text, const std::string& safeguard_text) const {
    SolverConfig c;
    c.rule = parse_rule(rule_text);
    c.strategy = parse_safeguard(safeguard_text, delta, beta);
    c.epsilon = eps;
    c.max_iterations = max_iter;
    c.max_residual_evals = max_fev;
    if (norm == "inf") {
      c.grad_norm = GradNorm::infinity;
    } else if (norm == "2") {
      c.grad_norm = GradNorm::euclidean;
    } else {
      throw std::invalid_argument("unknown norm '" + norm + "'");
    }
    if (eta == "santos-silva") {
      c.eta_schedule = EtaSchedule::santos_silva();
    } else if (eta.rfind("const:", 0) == 0) {
      c.eta_schedule = EtaSchedule::constant(std::stod(eta.substr(6)));
    } else {
      throw std::invalid_argument("unknown eta schedule '" + eta + "'");
    }
    c.validate();
    return c;
  }
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<int> parse_problem_list(const std::string& text) {
  if (text == "core") return suite::core_set();
  if (text == "all") return suite::implemented_ids();
  std::vector<int> ids;
  for (const auto& item : split_list(text)) ids.push_back(suite::find(item).id);
  return ids;
}

int run_solve(const std::string& selector, Index n, const SolverFlags& flags, const std::string& out) {
  const auto& spec = suite::find(selector);
  const ResidualProblem problem = suite::instantiate(spec.id, n);
  const SolverConfig config = flags.config(flags.rule, flags.safeguard);
  const SolveReport report = solve(problem, config);
  const std::string json = report_to_json(report, problem.name, config);
  if (out.empty()) {
    std::cout << json << '\n';
  } else {
    std::ofstream file(out);
    if (!file) throw std::runtime_error("cannot write " + out);
    file << json << '\n';
  }
  std::fprintf(stderr, "%s n=%lld %s: %s after %lld iterations, f=%.6e |g|=%.3e, %lld residual / %lld jtv\n",
               problem.name.c_str(), static_cast<long long>(problem.n),
               solver_label(config.rule, config.strategy).c_str(), to_string(report.status).c_str(),
               static_cast<long long>(report.iterations), report.f, report.grad_norm,
               static_cast<long long>(report.counters.n_residual), static_cast<long long>(report.counters.n_jtv));
  return 0;
}

int run_check_grad(const std::string& selector, Index n, double h) {
  suite::SuiteValidation v;
  if (selector.empty()) {
    v = suite::validate_suite(h, n);
  } else {
    const auto& spec = suite::find(selector);
    v = suite::validate_problems({suite::instantiate(spec.id, spec.scalable ? n : 0)}, h, 1e-4, {spec.id});
  }
  for (const auto& c : v.checks) {
    if (c.error.empty()) {
      std::printf("%3d  %-40s n=%-6lld max rel err %.3e  %s\n", c.id, c.name.c_str(),
                  static_cast<long long>(c.n), c.max_rel_error, c.ok ? "ok" : "FAIL");
    } else {
      std::printf("%3d  %-40s n=%-6lld evaluation error: %s\n", c.id, c.name.c_str(),
                  static_cast<long long>(c.n), c.error.c_str());
    }
  }
  std::printf("%s (threshold %.0e)\n", v.passed ? "all problems pass" : "gradient check FAILED", v.threshold);
  return v.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structured spectral gradient solver for nonlinear least squares"};
  app.require_subcommand(1);

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Solve one problem and print the JSON report");
  std::string problem;
  Index n = 0;
  std::string out;
  SolverFlags solve_flags;
  solve_cmd->add_option("--problem,-p", problem, "problem id, slug or name")->required();
  solve_cmd->add_option("--n", n, "dimension (scalable problems; default 1000)");
  solve_cmd->add_option("--out,-o", out, "write the JSON report here instead of stdout");
  solve_flags.attach(solve_cmd, false);

  // check-grad
  auto* check_cmd = app.add_subcommand("check-grad", "Finite-difference check of J^T F at x0");
  std::string check_problem;
  Index check_n = suite::kDefaultScalableN;
  double h = 1e-6;
  check_cmd->add_option("--problem,-p", check_problem, "single problem (default: every implemented one)");
  check_cmd->add_option("--n", check_n, "dimension for scalable problems")->capture_default_str();
  check_cmd->add_option("--step", h, "relative difference step")->capture_default_str();

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Run the problem x dimension x solver matrix");
  std::string problems = "core";
  std::string dims_text = "1000";
  bool full = false;
  std::string rules = "ssgm1,ssgm2";
  std::string safeguards = "classical,retard,tau";
  unsigned workers = 0;
  std::string bench_out = "records.csv";
  SolverFlags bench_flags;
  bench_cmd->add_option("--problems", problems, "core | all | comma list of ids/slugs")->capture_default_str();
  bench_cmd->add_option("--dims,--n", dims_text, "comma list of dimensions for scalable problems")
      ->capture_default_str();
  bench_cmd->add_flag("--full", full, "dimensions 1000, 2000, ..., 10000");
  bench_cmd->add_option("--rule,--rules", rules, "comma list of rules")->capture_default_str();
  bench_cmd->add_option("--safeguard,--safeguards", safeguards, "comma list of safeguards")
      ->capture_default_str();
  bench_cmd->add_option("--workers", workers, "worker threads (0 = all cores)")->capture_default_str();
  bench_cmd->add_option("--out,-o", bench_out, "records CSV path")->capture_default_str();
  bench_flags.attach(bench_cmd, true);

  // profile
  auto* profile_cmd = app.add_subcommand("profile", "Performance profiles from a records CSV");
  std::string records_path;
  std::string metric = "iterations";
  std::string failures = "drop";
  std::string solvers;
  std::string profile_out = "profile";
  profile_cmd->add_option("--records,-r", records_path, "records CSV written by bench")->required();
  profile_cmd->add_option("--metric", metric, "iterations | n_residual | time")->capture_default_str();
  profile_cmd->add_option("--failures", failures, "drop | ceiling")->capture_default_str();
  profile_cmd->add_option("--solvers", solvers, "comma list of labels to compare (default: all)");
  profile_cmd->add_option("--out,-o", profile_out, "output prefix: <prefix>.csv and <prefix>.svg")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve_cmd) return run_solve(problem, n, solve_flags, out);
    if (*check_cmd) return run_check_grad(check_problem, check_n, h);

    if (*bench_cmd) {
      std::vector<Index> dims;
      if (full) {
        for (Index d = 1000; d <= 10000; d += 1000) dims.push_back(d);
      } else {
        for (const auto& d : split_list(dims_text)) dims.push_back(std::stoll(d));
      }
      std::vector<SolverConfig> configs;
      for (const auto& r : split_list(rules)) {
        for (const auto& s : split_list(safeguards)) configs.push_back(bench_flags.config(r, s));
      }
      const auto instances = bench::default_instances(parse_problem_list(problems), dims);
      const auto records = bench::run_matrix(instances, configs, workers);
      bench::write_records_csv(records, bench_out);
      std::size_t ok = 0;
      for (const auto& r : records) ok += r.failed() ? 0 : 1;
      std::printf("%zu runs, %zu converged, records in %s\n", records.size(), ok, bench_out.c_str());
      return 0;
    }

    if (*profile_cmd) {
      auto records = bench::read_records_csv(records_path);
      if (!solvers.empty()) {
        const auto keep = split_list(solvers);
        std::erase_if(records, [&](const bench::RunRecord& r) {
          return std::find(keep.begin(), keep.end(), r.label()) == keep.end();
        });
      }
      const auto policy = failures == "ceiling" ? bench::FailurePolicy::ceiling : bench::FailurePolicy::drop_problem;
      if (failures != "ceiling" && failures != "drop") throw std::invalid_argument("unknown failure policy");
      const auto m = bench::parse_metric(metric);
      const auto curves = bench::performance_profile(records, m, policy);
      bench::write_curves_csv(curves, profile_out + ".csv");
      bench::write_profile_svg(curves, profile_out + ".svg", "Performance profile: " + bench::to_string(m));
      for (const auto& c : curves) {
        std::printf("%-8s rho(1)=%.3f  rho(max)=%.3f  over %zu problems\n", c.label.c_str(), c.rho_at(1.0),
                    c.rho.empty() ? 0.0 : c.rho.back(), c.n_problems);
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
