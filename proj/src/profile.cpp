#include "ssgm/bench.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <locale>
#include <map>
#include <sstream>

namespace ssgm::bench {

Metric parse_metric(const std::string& text) {
  if (text == "iterations") return Metric::iterations;
  if (text == "n_residual" || text == "fev") return Metric::n_residual;
  if (text == "time") return Metric::time;
  throw std::invalid_argument("unknown metric '" + text + "'");
}

std::string to_string(Metric m) {
  switch (m) {
    case Metric::iterations: return "iterations";
    case Metric::n_residual: return "n_residual";
    case Metric::time: return "time";
  }
  return "unknown";
}

double metric_value(const RunRecord& r, Metric m) {
  switch (m) {
    case Metric::iterations: return static_cast<double>(r.iterations);
    case Metric::n_residual: return static_cast<double>(r.n_residual);
    case Metric::time: return r.wall_time;
  }
  return 0.0;
}

RatioTable performance_ratios(const std::vector<RunRecord>& records, Metric metric, FailurePolicy policy) {
  RatioTable table;
  for (const auto& r : records) {
    const std::string label = r.label();
    if (std::find(table.labels.begin(), table.labels.end(), label) == table.labels.end()) {
      table.labels.push_back(label);
    }
  }

  using Key = std::pair<int, Index>;
  std::map<Key, std::map<std::string, const RunRecord*>> by_problem;
  for (const auto& r : records) {
    auto& slot = by_problem[{r.problem_id, r.n}][r.label()];
    if (slot != nullptr) {
      throw std::invalid_argument("duplicate record for problem " + std::to_string(r.problem_id) +
                                  " n=" + std::to_string(r.n) + " solver " + r.label());
    }
    slot = &r;
  }

  const double inf = std::numeric_limits<double>::infinity();
  for (const auto& [key, runs] : by_problem) {
    if (runs.size() != table.labels.size()) continue;  // not common to every solver
    const bool any_failed = std::any_of(runs.begin(), runs.end(), [](const auto& kv) { return kv.second->failed(); });
    if (any_failed && policy == FailurePolicy::drop_problem) continue;

    double best = inf;
    for (const auto& [label, rec] : runs) {
      if (!rec->failed()) best = std::min(best, metric_value(*rec, metric));
    }
    std::vector<double> row;
    row.reserve(table.labels.size());
    for (const auto& label : table.labels) {
      const RunRecord& rec = *runs.at(label);
      if (rec.failed()) {
        row.push_back(inf);
        continue;
      }
      const double v = metric_value(rec, metric);
      if (v == best) {
        row.push_back(1.0);
      } else {
        row.push_back(best > 0.0 ? v / best : inf);
      }
    }
    table.problems.push_back(key);
    table.ratio.push_back(std::move(row));
  }
  if (table.problems.empty()) {
    throw EmptyProfileError("no problem is common to every solver after removing failures");
  }
  return table;
}

double ProfileCurve::rho_at(double t) const {
  auto it = std::upper_bound(tau.begin(), tau.end(), t);
  if (it == tau.begin()) return 0.0;
  return rho[static_cast<std::size_t>(std::distance(tau.begin(), it)) - 1];
}

std::vector<ProfileCurve> profile_from_ratios(const RatioTable& table) {
  std::vector<ProfileCurve> curves;
  const std::size_t n_problems = table.problems.size();
  for (std::size_t s = 0; s < table.labels.size(); ++s) {
    std::vector<double> ratios;
    for (const auto& row : table.ratio) {
      if (std::isfinite(row[s])) ratios.push_back(row[s]);
    }
    std::sort(ratios.begin(), ratios.end());
    ProfileCurve c;
    c.label = table.labels[s];
    c.n_problems = n_problems;
    for (std::size_t i = 0; i < ratios.size(); ++i) {
      if (i + 1 < ratios.size() && ratios[i + 1] == ratios[i]) continue;
      c.tau.push_back(ratios[i]);
      c.rho.push_back(static_cast<double>(i + 1) / static_cast<double>(n_problems));
    }
    curves.push_back(std::move(c));
  }
  return curves;
}

std::vector<ProfileCurve> performance_profile(const std::vector<RunRecord>& records, Metric metric,
                                              FailurePolicy policy) {
  return profile_from_ratios(performance_ratios(records, metric, policy));
}

// ---------------------------------------------------------------------------
// SVG rendering: tau on a log2 axis, one step polyline per solver.

std::string profile_svg(const std::vector<ProfileCurve>& curves, const std::string& title) {
  if (curves.empty()) throw std::invalid_argument("profile_svg: no curves");

  constexpr double kWidth = 640, kHeight = 420;
  constexpr double kLeft = 60, kRight = 150, kTop = 40, kBottom = 50;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  double log_max = 1.0;
  for (const auto& c : curves) {
    if (!c.tau.empty()) log_max = std::max(log_max, std::ceil(std::log2(c.tau.back()) * 1.05 + 1e-12));
  }
  auto px = [&](double tau) { return kLeft + plot_w * std::log2(tau) / log_max; };
  auto py = [&](double rho) { return kTop + plot_h * (1.0 - rho); };

  static const char* const palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                        "#9467bd", "#8c564b", "#e377c2", "#17becf"};

  std::ostringstream svg;
  svg.imbue(std::locale::classic());
  svg << std::fixed << std::setprecision(2);
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) {
    svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"15\">" << title << "</text>\n";
  }

  // axes, grid and ticks
  svg << "<g stroke=\"#888\" stroke-width=\"1\" fill=\"none\">\n"
      << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\"" << plot_h
      << "\"/>\n";
  const int tick_step = std::max(1, static_cast<int>(log_max) / 8);
  for (int k = tick_step; k < static_cast<int>(log_max); k += tick_step) {
    const double x = kLeft + plot_w * k / log_max;
    svg << "<line x1=\"" << x << "\" y1=\"" << kTop << "\" x2=\"" << x << "\" y2=\"" << kTop + plot_h
        << "\" stroke=\"#ddd\"/>\n";
  }
  for (int q = 1; q < 4; ++q) {
    const double y = py(q / 4.0);
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << y << "\" x2=\"" << kLeft + plot_w << "\" y2=\"" << y
        << "\" stroke=\"#ddd\"/>\n";
  }
  svg << "</g>\n<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
  for (int k = 0; k <= static_cast<int>(log_max); k += tick_step) {
    const double x = kLeft + plot_w * k / log_max;
    svg << "<text x=\"" << x << "\" y=\"" << kTop + plot_h + 16 << "\" text-anchor=\"middle\">"
        << static_cast<long long>(std::llround(std::exp2(k))) << "</text>\n";
  }
  for (int q = 0; q <= 4; ++q) {
    svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << py(q / 4.0) + 4 << "\" text-anchor=\"end\">" << q / 4.0
        << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\">&#964; (log2 scale)</text>\n"
      << "<text x=\"16\" y=\"" << kTop + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << kTop + plot_h / 2 << ")\">&#961;(&#964;)</text>\n</g>\n";

  for (std::size_t s = 0; s < curves.size(); ++s) {
    const auto& c = curves[s];
    const char* color = palette[s % (sizeof(palette) / sizeof(palette[0]))];
    svg << "<g class=\"curve\" data-label=\"" << c.label << "\">\n<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"2\" points=\"";
    double prev = 0.0;
    svg << px(1.0) << ',' << py(prev);
    for (std::size_t i = 0; i < c.tau.size(); ++i) {
      svg << ' ' << px(c.tau[i]) << ',' << py(prev) << ' ' << px(c.tau[i]) << ',' << py(c.rho[i]);
      prev = c.rho[i];
    }
    svg << ' ' << kLeft + plot_w << ',' << py(prev) << "\"/>\n";
    svg << std::setprecision(17);
    for (std::size_t i = 0; i < c.tau.size(); ++i) {
      svg << "<circle cx=\"" << std::setprecision(2) << px(c.tau[i]) << "\" cy=\"" << py(c.rho[i])
          << "\" r=\"2.5\" fill=\"" << color << "\" data-tau=\"" << std::defaultfloat << std::setprecision(17)
          << c.tau[i] << "\" data-rho=\"" << c.rho[i] << "\"/>\n"
          << std::fixed;
    }
    svg << std::setprecision(2);
    const double ly = kTop + 14 + 20.0 * static_cast<double>(s);
    const double lx = kLeft + plot_w + 12;
    svg << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 24 << "\" y2=\"" << ly << "\" stroke=\""
        << color << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << lx + 30 << "\" y=\"" << ly + 4 << "\" font-family=\"sans-serif\" font-size=\"12\">"
        << c.label << "</text>\n</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace ssgm::bench
