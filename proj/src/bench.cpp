#include "ssgm/bench.hpp"

#include "ssgm/suite.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cerrno>
#include <charconv>
#include <chrono>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <locale>
#include <sstream>
#include <thread>

namespace ssgm::bench {

std::string RunRecord::label() const {
  std::string base = rule;
  std::transform(base.begin(), base.end(), base.begin(), [](unsigned char c) { return std::toupper(c); });
  char letter = '?';
  if (strategy == "classical") letter = 'A';
  if (strategy == "retard") letter = 'B';
  if (strategy == "tau") letter = 'C';
  return base + letter;
}

std::vector<Instance> default_instances(const std::vector<int>& ids, const std::vector<Index>& dims) {
  std::vector<Instance> out;
  for (int id : ids) {
    const auto& spec = suite::find(id);
    if (!spec.scalable) {
      out.push_back({id, spec.n});
      continue;
    }
    for (Index n : dims) out.push_back({id, n});
  }
  return out;
}

RunRecord run_one(const Instance& instance, const SolverConfig& config) {
  RunRecord rec;
  rec.problem_id = instance.problem_id;
  rec.n = instance.n;
  rec.rule = to_string(config.rule);
  rec.strategy = to_string(config.strategy);

  const auto start = std::chrono::steady_clock::now();
  try {
    const ResidualProblem problem = suite::instantiate(instance.problem_id, instance.n);
    rec.n = problem.n;
    const SolveReport report = solve(problem, config);
    rec.status = report.status;
    rec.iterations = report.iterations;
    rec.n_residual = report.counters.n_residual;
    rec.n_jtv = report.counters.n_jtv;
    rec.final_f = report.f;
    rec.final_grad_norm = report.grad_norm;
    rec.n_safeguard = std::count_if(report.trace.begin(), report.trace.end(),
                                    [](const IterationRecord& r) { return r.safeguard_fired; });
  } catch (const std::exception&) {
    // instantiation or configuration failure: a failed run, not a crash
    rec.status = SolveStatus::evaluation_error;
    rec.final_f = std::numeric_limits<double>::quiet_NaN();
    rec.final_grad_norm = std::numeric_limits<double>::quiet_NaN();
  }
  rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

std::vector<RunRecord> run_matrix(const std::vector<Instance>& instances,
                                  const std::vector<SolverConfig>& configs, unsigned workers) {
  const std::size_t total = instances.size() * configs.size();
  std::vector<RunRecord> records(total);
  if (total == 0) return records;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      records[i] = run_one(instances[i / configs.size()], configs[i % configs.size()]);
    }
  };
  if (workers == 1) {
    work();
    return records;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  return records;
}

// ---------------------------------------------------------------------------
// Records CSV.

namespace {

const char* const kRecordHeader =
    "problem_id,n,rule,strategy,status,iterations,n_residual,n_jtv,wall_time,final_f,final_grad_norm,"
    "n_safeguard";

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

template <typename T>
T parse_number(const std::string& text, const char* what) {
  T value{};
  if (text == "nan" || text == "-nan") {
    if constexpr (std::is_floating_point_v<T>) return std::numeric_limits<T>::quiet_NaN();
  }
  if (text == "inf") {
    if constexpr (std::is_floating_point_v<T>) return std::numeric_limits<T>::infinity();
  }
  const auto* first = text.data();
  const auto* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw std::invalid_argument(std::string("bad ") + what + " field '" + text + "'");
  }
  return value;
}

std::string format_double(double v) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << std::setprecision(17) << v;
  return out.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": " + std::strerror(errno));
  out << text;
  out.flush();
  if (!out) throw std::runtime_error(path + ": " + std::strerror(errno));
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": " + std::strerror(errno));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

std::string records_to_csv(const std::vector<RunRecord>& records) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << kRecordHeader << '\n';
  for (const auto& r : records) {
    out << r.problem_id << ',' << r.n << ',' << r.rule << ',' << r.strategy << ',' << to_string(r.status)
        << ',' << r.iterations << ',' << r.n_residual << ',' << r.n_jtv << ',' << format_double(r.wall_time)
        << ',' << format_double(r.final_f) << ',' << format_double(r.final_grad_norm) << ','
        << r.n_safeguard << '\n';
  }
  return out.str();
}

std::vector<RunRecord> parse_records_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("records csv: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kRecordHeader) throw std::invalid_argument("records csv: unexpected header '" + line + "'");

  std::vector<RunRecord> records;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 12) throw std::invalid_argument("records csv: expected 12 fields in '" + line + "'");
    RunRecord r;
    r.problem_id = parse_number<int>(f[0], "problem_id");
    r.n = parse_number<Index>(f[1], "n");
    r.rule = f[2];
    r.strategy = f[3];
    r.status = parse_status(f[4]);
    r.iterations = parse_number<std::int64_t>(f[5], "iterations");
    r.n_residual = parse_number<std::int64_t>(f[6], "n_residual");
    r.n_jtv = parse_number<std::int64_t>(f[7], "n_jtv");
    r.wall_time = parse_number<double>(f[8], "wall_time");
    r.final_f = parse_number<double>(f[9], "final_f");
    r.final_grad_norm = parse_number<double>(f[10], "final_grad_norm");
    r.n_safeguard = parse_number<std::int64_t>(f[11], "n_safeguard");
    records.push_back(std::move(r));
  }
  return records;
}

void write_records_csv(const std::vector<RunRecord>& records, const std::string& path) {
  write_text(path, records_to_csv(records));
}

std::vector<RunRecord> read_records_csv(const std::string& path) { return parse_records_csv(read_text(path)); }

void write_curves_csv(const std::vector<ProfileCurve>& curves, const std::string& path) {
  write_text(path, curves_to_csv(curves));
}

void write_profile_svg(const std::vector<ProfileCurve>& curves, const std::string& path,
                       const std::string& title) {
  write_text(path, profile_svg(curves, title));
}

std::string curves_to_csv(const std::vector<ProfileCurve>& curves) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << "solver,tau,rho\n";
  for (const auto& c : curves) {
    for (std::size_t i = 0; i < c.tau.size(); ++i) {
      out << c.label << ',' << format_double(c.tau[i]) << ',' << format_double(c.rho[i]) << '\n';
    }
  }
  return out.str();
}

}  // namespace ssgm::bench
