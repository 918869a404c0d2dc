#include "ssgm/stepsize.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace ssgm {

StepPair make_step_pair(Vector s, Vector z) {
  if (s.size() != z.size()) throw std::invalid_argument("make_step_pair: length mismatch");
  StepPair p;
  p.s_dot_z = s.dot(z);
  p.s_norm = s.norm();
  p.z_norm = z.norm();
  p.s = std::move(s);
  p.z = std::move(z);
  return p;
}

std::string to_string(StepsizeRule r) {
  switch (r) {
    case StepsizeRule::ssgm1: return "ssgm1";
    case StepsizeRule::ssgm2: return "ssgm2";
    case StepsizeRule::bb1: return "bb1";
    case StepsizeRule::bb2: return "bb2";
  }
  return "unknown";
}

std::string to_string(const SafeguardStrategy& s) {
  if (std::holds_alternative<ClassicalMax>(s)) return "classical";
  if (std::holds_alternative<Retard>(s)) return "retard";
  return "tau";
}

char safeguard_letter(const SafeguardStrategy& s) {
  if (std::holds_alternative<ClassicalMax>(s)) return 'A';
  if (std::holds_alternative<Retard>(s)) return 'B';
  return 'C';
}

std::string solver_label(StepsizeRule r, const SafeguardStrategy& s) {
  std::string base = to_string(r);
  std::transform(base.begin(), base.end(), base.begin(), [](unsigned char c) { return std::toupper(c); });
  return base + safeguard_letter(s);
}

StepsizeRule parse_rule(const std::string& text) {
  if (text == "ssgm1") return StepsizeRule::ssgm1;
  if (text == "ssgm2") return StepsizeRule::ssgm2;
  if (text == "bb1") return StepsizeRule::bb1;
  if (text == "bb2") return StepsizeRule::bb2;
  throw std::invalid_argument("unknown stepsize rule '" + text + "'");
}

SafeguardStrategy parse_safeguard(const std::string& text, double delta, double beta) {
  if (text == "classical" || text == "A") return ClassicalMax{};
  if (text == "retard" || text == "B") {
    if (!(delta > 0.0)) throw std::invalid_argument("retard factor must be positive");
    return Retard{delta};
  }
  if (text == "tau" || text == "C") {
    if (!(beta > 0.0)) throw std::invalid_argument("tau factor must be positive");
    return StructuredTau{beta};
  }
  throw std::invalid_argument("unknown safeguard '" + text + "'");
}

Vector build_structured_vector(const Vector& g_k, const Vector& r_k, const Vector& r_km1) {
  if (g_k.size() != r_k.size() || g_k.size() != r_km1.size()) {
    throw std::invalid_argument("build_structured_vector: length mismatch");
  }
  return 2.0 * g_k - r_k - r_km1;
}

std::optional<double> raw_stepsize(StepsizeRule rule, const StepPair& pair) {
  if (is_first_kind(rule)) {
    if (pair.s_dot_z == 0.0) return std::nullopt;
    return pair.s_norm * pair.s_norm / pair.s_dot_z;
  }
  if (pair.z_norm == 0.0) return std::nullopt;
  return pair.s_dot_z / (pair.z_norm * pair.z_norm);
}

double safeguard_tau(const StepPair& pair, double alpha_prev, double beta) {
  return std::max(beta * alpha_prev, pair.s_dot_z + pair.s_norm * pair.z_norm);
}

StepsizeResult compute_stepsize(StepsizeRule rule, const SafeguardStrategy& strategy,
                                const StepPair& pair, double alpha_prev, double lambda_max) {
  if (!(alpha_prev > 0.0)) throw std::invalid_argument("compute_stepsize: alpha_prev must be positive");
  StepsizeResult out;
  if (pair.s_norm == 0.0) {
    out.status = StepsizeStatus::stagnation;
    return out;
  }
  if (pair.s_dot_z > 0.0) {
    // Positive curvature: the quotient is positive (possibly over/underflowed,
    // which the clamp absorbs).
    out.alpha = *raw_stepsize(rule, pair);
    return out;
  }

  out.safeguard_fired = true;
  if (std::holds_alternative<ClassicalMax>(strategy)) {
    out.alpha = lambda_max;
  } else if (const auto* retard = std::get_if<Retard>(&strategy)) {
    out.alpha = retard->delta * alpha_prev;
  } else {
    const double tau = safeguard_tau(pair, alpha_prev, std::get<StructuredTau>(strategy).beta);
    if (is_first_kind(rule)) {
      out.alpha = pair.s_norm * pair.s_norm / tau;
    } else {
      if (pair.z_norm == 0.0) {
        out.status = StepsizeStatus::degenerate_secant;
        return out;
      }
      out.alpha = tau / (pair.z_norm * pair.z_norm);
    }
  }
  return out;
}

double clamp_lambda(double alpha, double lambda_min, double lambda_max) {
  if (std::isnan(alpha)) return lambda_min;
  return std::min(std::max(alpha, lambda_min), lambda_max);
}

}  // namespace ssgm
