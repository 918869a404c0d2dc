#pragma once

// Catalog of nonlinear least-squares test problems: 10 fixed-size problems
// and 30 scalable ones, each with its starting point and residual size.
// Residual formulas follow More-Garbow-Hillstrom, La Cruz-Martinez-Raydan and
// Luksan-Vlcek; rows without an implementation stay in the catalog so that ids
// and starting points are still available.

#include "ssgm/problem.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ssgm::suite {

inline constexpr Index kDefaultScalableN = 1000;

struct ProblemSpec {
  int id = 0;
  std::string name;
  std::string slug;  // CLI selector, e.g. "extended-rosenbrock"
  bool scalable = false;
  Index n = 0;  // fixed problems only
  Index m = 0;  // fixed problems only
  /// Scalable problems require n to be a multiple of this.
  Index n_multiple = 1;
  /// Starting point for a given n; empty when the source notation is ambiguous.
  std::function<Vector(Index)> x0_rule;
  ResidualClass residual_class = ResidualClass::zero;
  std::string source;
  bool implemented = false;

  /// Residual count for a given n.
  Index residual_count(Index n_value) const;
  bool allows(Index n_value) const;
  Index default_n() const { return scalable ? kDefaultScalableN : n; }
};

/// Every catalog entry in id order.
const std::vector<ProblemSpec>& list();

/// Throws std::out_of_range for an unknown id.
const ProblemSpec& find(int id);
/// Accepts a numeric id, the slug, or the display name.
const ProblemSpec& find(const std::string& selector);

/// Entries with a residual implementation.
std::vector<int> implemented_ids();
/// The twelve problems every benchmark run covers by default.
const std::vector<int>& core_set();

/// x0 for the given id and n (n = 0 picks the default dimension).
Vector starting_point(int id, Index n = 0);

/// Throws std::out_of_range for unknown ids and std::invalid_argument when
/// n is not allowed or the entry has no residual implementation.
ResidualProblem instantiate(int id, Index n = 0);

struct GradientCheck {
  int id = 0;
  std::string name;
  Index n = 0;
  double max_rel_error = 0.0;
  std::string error;  // non-empty when evaluation failed
  bool ok = false;
};

struct SuiteValidation {
  std::vector<GradientCheck> checks;
  double threshold = 1e-4;
  bool passed = false;
};

/// Finite-difference check of J^T F at x0 for the given problems.
SuiteValidation validate_problems(const std::vector<ResidualProblem>& problems, double h,
                                  double threshold = 1e-4, const std::vector<int>& ids = {});

/// validate_problems over every implemented entry; scalable entries at n_scalable.
SuiteValidation validate_suite(double h, Index n_scalable = kDefaultScalableN);

}  // namespace ssgm::suite
