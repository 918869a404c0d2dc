#pragma once

// Spectral stepsizes built from the structured secant vector
//   z = 2 g_k - J_k^T F_{k-1} - J_{k-1}^T F_k
// together with the safeguards used when s^T z <= 0.

#include "ssgm/problem.hpp"

#include <optional>
#include <string>
#include <variant>

namespace ssgm {

/// Displacement s and secant vector z (or y for the classical rules) with the
/// scalars every stepsize formula needs.
struct StepPair {
  Vector s;
  Vector z;
  double s_dot_z = 0.0;
  double s_norm = 0.0;
  double z_norm = 0.0;
};

StepPair make_step_pair(Vector s, Vector z);

enum class StepsizeRule { ssgm1, ssgm2, bb1, bb2 };

/// Rules 1 divide |s|^2 by s^T z; rules 2 divide s^T z by |z|^2.
inline bool is_first_kind(StepsizeRule r) {
  return r == StepsizeRule::ssgm1 || r == StepsizeRule::bb1;
}
inline bool is_structured(StepsizeRule r) {
  return r == StepsizeRule::ssgm1 || r == StepsizeRule::ssgm2;
}

struct ClassicalMax {};
struct Retard {
  double delta = 0.5;
};
struct StructuredTau {
  double beta = 1e3;
};
using SafeguardStrategy = std::variant<ClassicalMax, Retard, StructuredTau>;

std::string to_string(StepsizeRule r);
std::string to_string(const SafeguardStrategy& s);
/// Single-letter tag: A classical, B retard, C structured tau.
char safeguard_letter(const SafeguardStrategy& s);
/// e.g. "SSGM2C", "BB1A".
std::string solver_label(StepsizeRule r, const SafeguardStrategy& s);

StepsizeRule parse_rule(const std::string& text);
SafeguardStrategy parse_safeguard(const std::string& text, double delta = 0.5, double beta = 1e3);

/// 2 g_k - r_k - r_km1. Throws std::invalid_argument on length mismatch.
Vector build_structured_vector(const Vector& g_k, const Vector& r_k, const Vector& r_km1);

/// Unsafeguarded quotient, or nullopt when its denominator vanishes.
std::optional<double> raw_stepsize(StepsizeRule rule, const StepPair& pair);

/// max(beta * alpha_prev, s^T z + |s| |z|): a positive stand-in for s^T z.
double safeguard_tau(const StepPair& pair, double alpha_prev, double beta);

enum class StepsizeStatus {
  ok,
  stagnation,         // s = 0
  degenerate_secant,  // z = 0 with no usable replacement
};

struct StepsizeResult {
  StepsizeStatus status = StepsizeStatus::ok;
  double alpha = 0.0;  // meaningful only when status == ok
  bool safeguard_fired = false;
};

/// Stepsize before clamping. The raw quotient is used whenever s^T z > 0;
/// otherwise the safeguard strategy supplies the value. `lambda_max` is what
/// the classical safeguard returns.
StepsizeResult compute_stepsize(StepsizeRule rule, const SafeguardStrategy& strategy,
                                const StepPair& pair, double alpha_prev,
                                double lambda_max = 1e30);

/// min(max(alpha, lambda_min), lambda_max); NaN and -inf go to lambda_min.
double clamp_lambda(double alpha, double lambda_min, double lambda_max);

}  // namespace ssgm
