#include "ssgm/suite.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <stdexcept>

namespace ssgm::suite {

namespace {

using ResidualFn = std::function<Vector(const Vector&)>;
using JtvFn = std::function<Vector(const Vector&, const Vector&)>;

struct Implementation {
  std::function<Index(Index)> m_of_n;
  std::function<ResidualFn(Index)> residual;
  std::function<JtvFn(Index)> jtv;
};

Vector constant(Index n, double v) { return Vector::Constant(n, v); }

Vector alternating(Index n, double odd, double even) {
  Vector x(n);
  for (Index i = 0; i < n; ++i) x[i] = (i % 2 == 0) ? odd : even;
  return x;
}

void require_log_domain(const Vector& x) {
  for (Index i = 0; i < x.size(); ++i) {
    if (!(x[i] > -1.0)) {
      throw EvaluationError("ln(x_i + 1) undefined at component " + std::to_string(i), i);
    }
  }
}

// ---------------------------------------------------------------------------
// Fixed-size problems.

Implementation brown_dennis() {
  static constexpr Index kM = 20;
  auto terms = [](const Vector& x, Index i, double& u, double& w, double& t) {
    t = static_cast<double>(i + 1) / 5.0;
    u = x[0] + t * x[1] - std::exp(t);
    w = x[2] + x[3] * std::sin(t) - std::cos(t);
  };
  return {[](Index) { return kM; },
          [terms](Index) -> ResidualFn {
            return [terms](const Vector& x) {
              Vector F(kM);
              for (Index i = 0; i < kM; ++i) {
                double u, w, t;
                terms(x, i, u, w, t);
                F[i] = u * u + w * w;
              }
              return F;
            };
          },
          [terms](Index) -> JtvFn {
            return [terms](const Vector& x, const Vector& v) {
              Vector out = Vector::Zero(4);
              for (Index i = 0; i < kM; ++i) {
                double u, w, t;
                terms(x, i, u, w, t);
                out[0] += 2.0 * u * v[i];
                out[1] += 2.0 * u * t * v[i];
                out[2] += 2.0 * w * v[i];
                out[3] += 2.0 * w * std::sin(t) * v[i];
              }
              return out;
            };
          }};
}

Implementation beale() {
  static constexpr double y[3] = {1.5, 2.25, 2.625};
  return {[](Index) { return Index{3}; },
          [](Index) -> ResidualFn {
            return [](const Vector& x) {
              Vector F(3);
              for (int i = 0; i < 3; ++i) F[i] = y[i] - x[0] * (1.0 - std::pow(x[1], i + 1));
              return F;
            };
          },
          [](Index) -> JtvFn {
            return [](const Vector& x, const Vector& v) {
              Vector out = Vector::Zero(2);
              for (int i = 0; i < 3; ++i) {
                out[0] += -(1.0 - std::pow(x[1], i + 1)) * v[i];
                out[1] += x[0] * (i + 1) * std::pow(x[1], i) * v[i];
              }
              return out;
            };
          }};
}

Implementation brown_badly_scaled() {
  return {[](Index) { return Index{3}; },
          [](Index) -> ResidualFn {
            return [](const Vector& x) {
              Vector F(3);
              F << x[0] - 1e6, x[1] - 2e-6, x[0] * x[1] - 2.0;
              return F;
            };
          },
          [](Index) -> JtvFn {
            return [](const Vector& x, const Vector& v) {
              Vector out(2);
              out << v[0] + x[1] * v[2], v[1] + x[0] * v[2];
              return out;
            };
          }};
}

// Shared by the 2x2 problem and its extended version.
double freudenstein_roth_1(double a, double b) { return -13.0 + a + ((5.0 - b) * b - 2.0) * b; }
double freudenstein_roth_2(double a, double b) { return -29.0 + a + ((b + 1.0) * b - 14.0) * b; }
double freudenstein_roth_1_db(double b) { return 10.0 * b - 3.0 * b * b - 2.0; }
double freudenstein_roth_2_db(double b) { return 3.0 * b * b + 2.0 * b - 14.0; }

Implementation extended_freudenstein_roth() {
  return {[](Index n) { return n; },
          [](Index n) -> ResidualFn {
            return [n](const Vector& x) {
              Vector F(n);
              for (Index i = 0; i + 1 < n; i += 2) {
                F[i] = freudenstein_roth_1(x[i], x[i + 1]);
                F[i + 1] = freudenstein_roth_2(x[i], x[i + 1]);
              }
              return F;
            };
          },
          [](Index n) -> JtvFn {
            return [n](const Vector& x, const Vector& v) {
              Vector out(n);
              for (Index i = 0; i + 1 < n; i += 2) {
                const double b = x[i + 1];
                out[i] = v[i] + v[i + 1];
                out[i + 1] = freudenstein_roth_1_db(b) * v[i] + freudenstein_roth_2_db(b) * v[i + 1];
              }
              return out;
            };
          }};
}

Implementation jennrich_sampson() {
  static constexpr Index kM = 10;
  return {[](Index) { return kM; },
          [](Index) -> ResidualFn {
            return [](const Vector& x) {
              Vector F(kM);
              for (Index i = 0; i < kM; ++i) {
                const double c = static_cast<double>(i + 1);
                F[i] = 2.0 + 2.0 * c - (std::exp(c * x[0]) + std::exp(c * x[1]));
              }
              return F;
            };
          },
          [](Index) -> JtvFn {
            return [](const Vector& x, const Vector& v) {
              Vector out = Vector::Zero(2);
              for (Index i = 0; i < kM; ++i) {
                const double c = static_cast<double>(i + 1);
                out[0] -= c * std::exp(c * x[0]) * v[i];
                out[1] -= c * std::exp(c * x[1]) * v[i];
              }
              return out;
            };
          }};
}

// F_1 = F_m = -1, F_i = (i-1) sum_{j=2}^{n-1} j x_j - 1 otherwise (1-based).
Implementation linear_rank1_zero_cols_rows() {
  return {[](Index n) { return n; },
          [](Index n) -> ResidualFn {
            return [n](const Vector& x) {
              double s = 0.0;
              for (Index j = 1; j + 1 < n; ++j) s += static_cast<double>(j + 1) * x[j];
              Vector F(n);
              for (Index i = 0; i < n; ++i) {
                F[i] = (i == 0 || i == n - 1) ? -1.0 : static_cast<double>(i) * s - 1.0;
              }
              return F;
            };
          },
          [](Index n) -> JtvFn {
            return [n](const Vector&, const Vector& v) {
              double w = 0.0;
              for (Index i = 1; i + 1 < n; ++i) w += static_cast<double>(i) * v[i];
              Vector out = Vector::Zero(n);
              for (Index j = 1; j + 1 < n; ++j) out[j] = static_cast<double>(j + 1) * w;
              return out;
            };
          }};
}

// ---------------------------------------------------------------------------
// Scalable problems.

// F_i = x_i + sum(x) - (n+1), i < n;  F_n = prod(x) - 1.
Implementation brown_almost_linear() {
  return {[](Index n) { return n; },
          [](Index n) -> ResidualFn {
            return [n](const Vector& x) {
              const double sum = x.sum();
              Vector F(n);
              for (Index i = 0; i + 1 < n; ++i) F[i] = x[i] + sum - static_cast<double>(n + 1);
              F[n - 1] = x.prod() - 1.0;
              return F;
            };
          },
          [](Index n) -> JtvFn {
            return [n](const Vector& x, const Vector& v) {
              const double head = v.head(n - 1).sum();
              // prod_{i != j} x_i from prefix and suffix products, exact when some x_i = 0
              Vector prefix(n), suffix(n);
              double acc = 1.0;
              for (Index j = 0; j < n; ++j) {
                prefix[j] = acc;
                acc *= x[j];
              }
              acc = 1.0;
              for (Index j = n - 1; j >= 0; --j) {
                suffix[j] = acc;
                acc *= x[j];
              }
              Vector out(n);
              for (Index j = 0; j < n; ++j) {
                out[j] = head + (j + 1 < n ? v[j] : 0.0) + prefix[j] * suffix[j] * v[n - 1];
              }
              return out;
            };
          }};
}

// F_i = (3 - 2 x_i) x_i - x_{i-1} - 2 x_{i+1} + 1, x_0 = x_{n+1} = 0.
Implementation broyden_tridiagonal() {
  return {[](Index n) { return n; },
          [](Index n) -> ResidualFn {
            return [n](const Vector& x) {
              Vector F(n);
              for (Index i = 0; i < n; ++i) {
                const double left = i > 0 ? x[i - 1] : 0.0;
                const double right = i + 1 < n ? x[i + 1] : 0.0;
                F[i] = (3.0 - 2.0 * x[i]) * x[i] - left - 2.0 * right + 1.0;
              }
              return F;
            };
          },
          [](Index n) -> JtvFn {
            return [n](const Vector& x, const Vector& v) {
              Vector out(n);
              for (Index j = 0; j < n; ++j) {
                out[j] = (3.0 - 4.0 * x[j]) * v[j];
                if (j + 1 < n) out[j] -= v[j + 1];
                if (j > 0) out[j] -= 2.0 * v[j - 1];
              }
              return out;
            };
          }};
}

Implementation extended_powell_singular() {
  const double r5 = std::sqrt(5.0);
  const double r10 = std::sqrt(10.0);
  return {[](Index n) { return n; },
          [r5, r10](Index n) -> ResidualFn {
            return [n, r5, r10](const Vector& x) {
              Vector F(n);
              for (Index i = 0; i + 3 < n; i += 4) {
                F[i] = x[i] + 10.0 * x[i + 1];
                F[i + 1] = r5 * (x[i + 2] - x[i + 3]);
                const double p = x[i + 1] - 2.0 * x[i + 2];
                const double q = x[i] - x[i + 3];
                F[i + 2] = p * p;
                F[i + 3] = r10 * q * q;
              }
              return F;
            };
          },
          [r5, r10](Index n) -> JtvFn {
            return [n, r5, r10](const Vector& x, const Vector& v) {
              Vector out(n);
              for (Index i = 0; i + 3 < n; i += 4) {
                const double p2 = 2.0 * (x[i + 1] - 2.0 * x[i + 2]) * v[i + 2];
                const double q2 = 2.0 * r10 * (x[i] - x[i + 3]) * v[i + 3];
                out[i] = v[i] + q2;
                out[i + 1] = 10.0 * v[i] + p2;
                out[i + 2] = r5 * v[i + 1] - 2.0 * p2;
                out[i + 3] = -r5 * v[i + 1] - q2;
              }
              return out;
            };
          }};
}

Implementation extended_rosenbrock() {
  return {[](Index n) { return n; },
          [](Index n) -> ResidualFn {
            return [n](const Vector& x) {
              Vector F(n);
              for (Index i = 0; i + 1 < n; i += 2) {
                F[i] = 10.0 * (x[i + 1] - x[i] * x[i]);
                F[i + 1] = 1.0 - x[i];
              }
              return F;
            };
          },
          [](Index n) -> JtvFn {
            return [n](const Vector& x, const Vector& v) {
              Vector out(n);
              for (Index i = 0; i + 1 < n; i += 2) {
                out[i] = -20.0 * x[i] * v[i] - v[i + 1];
                out[i + 1] = 10.0 * v[i];
              }
              return out;
            };
          }};
}

// m = n + 1: F_i = x_i - (2/m) sum(x) - 1 for i <= n, F_{n+1} = -(2/m) sum(x) - 1.
Implementation linear_full_rank() {
  return {[](Index n) { return n + 1; },
          [](Index n) -> ResidualFn {
            return [n](const Vector& x) {
              const Index m = n + 1;
              const double shift = 2.0 / static_cast<double>(m) * x.sum() + 1.0;
              Vector F(m);
              F.head(n) = x.array() - shift;
              F[n] = -shift;
              return F;
            };
          },
          [](Index n) -> JtvFn {
            return [n](const Vector&, const Vector& v) {
              const double c = 2.0 / static_cast<double>(n + 1) * v.sum();
              Vector out = v.head(n).array() - c;
              return out;
            };
          }};
}

// F_i = i * sum_j j x_j - 1.
Implementation linear_rank1() {
  return {[](Index n) { return n; },
          [](Index n) -> ResidualFn {
            return [n](const Vector& x) {
              double s = 0.0;
              for (Index j = 0; j < n; ++j) s += static_cast<double>(j + 1) * x[j];
              Vector F(n);
              for (Index i = 0; i < n; ++i) F[i] = static_cast<double>(i + 1) * s - 1.0;
              return F;
            };
          },
          [](Index n) -> JtvFn {
            return [n](const Vector&, const Vector& v) {
              double w = 0.0;
              for (Index i = 0; i < n; ++i) w += static_cast<double>(i + 1) * v[i];
              Vector out(n);
              for (Index j = 0; j < n; ++j) out[j] = static_cast<double>(j + 1) * w;
              return out;
            };
          }};
}

// F_i = ln(x_i + 1) - x_i / n.
Implementation logarithmic() {
  return {[](Index n) { return n; },
          [](Index n) -> ResidualFn {
            return [n](const Vector& x) {
              require_log_domain(x);
              const double inv_n = 1.0 / static_cast<double>(n);
              Vector F(n);
              for (Index i = 0; i < n; ++i) F[i] = std::log1p(x[i]) - x[i] * inv_n;
              return F;
            };
          },
          [](Index n) -> JtvFn {
            return [n](const Vector& x, const Vector& v) {
              require_log_domain(x);
              const double inv_n = 1.0 / static_cast<double>(n);
              Vector out(n);
              for (Index i = 0; i < n; ++i) out[i] = (1.0 / (1.0 + x[i]) - inv_n) * v[i];
              return out;
            };
          }};
}

// m = n + 1: F_i = sqrt(1e-5) (x_i - 1), F_{n+1} = |x|^2 - 1/4.
Implementation penalty_one() {
  const double ra = std::sqrt(1e-5);
  return {[](Index n) { return n + 1; },
          [ra](Index n) -> ResidualFn {
            return [n, ra](const Vector& x) {
              Vector F(n + 1);
              F.head(n) = ra * (x.array() - 1.0);
              F[n] = x.squaredNorm() - 0.25;
              return F;
            };
          },
          [ra](Index n) -> JtvFn {
            return [n, ra](const Vector& x, const Vector& v) {
              Vector out = ra * v.head(n) + 2.0 * v[n] * x;
              return out;
            };
          }};
}

// F_i = e^{x_i} - 1.
Implementation strictly_convex_one() {
  return {[](Index n) { return n; },
          [](Index) -> ResidualFn {
            return [](const Vector& x) {
              Vector F = x.array().exp() - 1.0;
              return F;
            };
          },
          [](Index) -> JtvFn {
            return [](const Vector& x, const Vector& v) {
              Vector out = x.array().exp() * v.array();
              return out;
            };
          }};
}

// F_i = n - sum_j cos x_j + i (1 - cos x_i) - sin x_i.
Implementation trigonometric() {
  return {[](Index n) { return n; },
          [](Index n) -> ResidualFn {
            return [n](const Vector& x) {
              const double base = static_cast<double>(n) - x.array().cos().sum();
              Vector F(n);
              for (Index i = 0; i < n; ++i) {
                F[i] = base + static_cast<double>(i + 1) * (1.0 - std::cos(x[i])) - std::sin(x[i]);
              }
              return F;
            };
          },
          [](Index n) -> JtvFn {
            return [n](const Vector& x, const Vector& v) {
              const double vsum = v.sum();
              Vector out(n);
              for (Index j = 0; j < n; ++j) {
                const double sj = std::sin(x[j]);
                out[j] = sj * vsum + (static_cast<double>(j + 1) * sj - std::cos(x[j])) * v[j];
              }
              return out;
            };
          }};
}

// F_i = ln(x_i + 1) - sin(x_i) / n.
Implementation trigonometric_logarithmic() {
  return {[](Index n) { return n; },
          [](Index n) -> ResidualFn {
            return [n](const Vector& x) {
              require_log_domain(x);
              const double inv_n = 1.0 / static_cast<double>(n);
              Vector F(n);
              for (Index i = 0; i < n; ++i) F[i] = std::log1p(x[i]) - std::sin(x[i]) * inv_n;
              return F;
            };
          },
          [](Index n) -> JtvFn {
            return [n](const Vector& x, const Vector& v) {
              require_log_domain(x);
              const double inv_n = 1.0 / static_cast<double>(n);
              Vector out(n);
              for (Index i = 0; i < n; ++i) {
                out[i] = (1.0 / (1.0 + x[i]) - std::cos(x[i]) * inv_n) * v[i];
              }
              return out;
            };
          }};
}

// m = n + 2: F_i = x_i - 1, F_{n+1} = sum_j j (x_j - 1), F_{n+2} = F_{n+1}^2.
Implementation variably_dimensioned() {
  auto weighted = [](const Vector& x) {
    double s = 0.0;
    for (Index j = 0; j < x.size(); ++j) s += static_cast<double>(j + 1) * (x[j] - 1.0);
    return s;
  };
  return {[](Index n) { return n + 2; },
          [weighted](Index n) -> ResidualFn {
            return [n, weighted](const Vector& x) {
              const double s = weighted(x);
              Vector F(n + 2);
              F.head(n) = x.array() - 1.0;
              F[n] = s;
              F[n + 1] = s * s;
              return F;
            };
          },
          [weighted](Index n) -> JtvFn {
            return [n, weighted](const Vector& x, const Vector& v) {
              const double c = v[n] + 2.0 * weighted(x) * v[n + 1];
              Vector out(n);
              for (Index j = 0; j < n; ++j) out[j] = v[j] + static_cast<double>(j + 1) * c;
              return out;
            };
          }};
}

// ---------------------------------------------------------------------------
// Catalog.

struct Entry {
  ProblemSpec spec;
  std::optional<Implementation> impl;
};

ProblemSpec fixed(int id, std::string name, std::string slug, Index n, Index m,
                  std::function<Vector(Index)> x0, ResidualClass rc, std::string source) {
  ProblemSpec p;
  p.id = id;
  p.name = std::move(name);
  p.slug = std::move(slug);
  p.scalable = false;
  p.n = n;
  p.m = m;
  p.x0_rule = std::move(x0);
  p.residual_class = rc;
  p.source = std::move(source);
  return p;
}

ProblemSpec scalable(int id, std::string name, std::string slug, Index multiple,
                     std::function<Vector(Index)> x0, ResidualClass rc, std::string source) {
  ProblemSpec p;
  p.id = id;
  p.name = std::move(name);
  p.slug = std::move(slug);
  p.scalable = true;
  p.n_multiple = multiple;
  p.x0_rule = std::move(x0);
  p.residual_class = rc;
  p.source = std::move(source);
  return p;
}

std::function<Vector(Index)> fixed_point(std::vector<double> values) {
  return [values](Index) { return Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size())); };
}

std::function<Vector(Index)> filled(double v) {
  return [v](Index n) { return constant(n, v); };
}

constexpr auto Z = ResidualClass::zero;
constexpr auto S = ResidualClass::small;
constexpr auto L = ResidualClass::large;

const char* const kMGH = "More-Garbow-Hillstrom";
const char* const kLaCruz = "La Cruz-Martinez-Raydan";
const char* const kLuksan = "Luksan-Vlcek";

std::vector<Entry> build_catalog() {
  std::vector<Entry> c;
  auto add = [&c](ProblemSpec spec, std::optional<Implementation> impl = std::nullopt) {
    spec.implemented = impl.has_value();
    c.push_back({std::move(spec), std::move(impl)});
  };
  auto inv_n = [](Index n) { return 1.0 / static_cast<double>(n); };

  // Bard: the starting point notation is ambiguous, so no rule is recorded.
  add(fixed(1, "Bard", "bard", 3, 15, nullptr, L, kMGH));
  add(fixed(2, "Brown and Dennis", "brown-dennis", 4, 20, fixed_point({25, 5, -5, -1}), L, kMGH),
      brown_dennis());
  add(fixed(3, "Beale", "beale", 2, 3, fixed_point({1, 1}), Z, kMGH), beale());
  add(fixed(4, "Branin", "branin", 2, 2, fixed_point({0, 5}), S, "Betts"));
  add(fixed(5, "Brown badly scaled", "brown-badly-scaled", 2, 3, fixed_point({1, 1}), Z, kMGH),
      brown_badly_scaled());
  add(fixed(6, "Freudenstein and Roth", "freudenstein-roth", 2, 2, fixed_point({0.5, -2}), L, kMGH),
      extended_freudenstein_roth());
  add(fixed(7, "Jennrich and Sampson", "jennrich-sampson", 2, 10, fixed_point({0.2, 0.3}), L, kMGH),
      jennrich_sampson());
  add(fixed(8, "Linear rank 1 with zero columns and rows", "linear-rank1-zero", 10, 10, filled(1.0), S,
            kMGH),
      linear_rank1_zero_cols_rows());
  add(fixed(9, "Linear rank 2", "linear-rank2", 10, 10,
            [inv_n](Index n) {
              Vector x = constant(n, inv_n(n));
              x[0] = 1.0;
              return x;
            },
            Z, kLaCruz));
  add(fixed(10, "Rank deficient Jacobian", "rank-deficient-jacobian", 2, 3, fixed_point({-1.2, 1}), S,
            "Douglass"));

  add(scalable(11, "Ascher and Russell boundary value", "ascher-russell", 1,
               [inv_n](Index n) { return constant(n, inv_n(n)); }, Z, kLuksan));
  add(scalable(12, "Brown almost linear", "brown-almost-linear", 1, filled(0.5), Z, kMGH),
      brown_almost_linear());
  add(scalable(13, "Broyden tridiagonal", "broyden-tridiagonal", 1, filled(-1.0), Z, kLuksan),
      broyden_tridiagonal());
  add(scalable(14, "Discrete boundary value", "discrete-boundary-value", 1,
               [](Index n) {
                 const double h = 1.0 / static_cast<double>(n + 1);
                 return constant(n, h * (h - 1.0));
               },
               Z, kMGH));
  add(scalable(15, "Exponential function 1", "exponential-1", 1,
               [](Index n) { return constant(n, static_cast<double>(n) / static_cast<double>(n - 1)); }, Z,
               kLaCruz));
  add(scalable(16, "Exponential function 2", "exponential-2", 1,
               [](Index n) { return constant(n, 1.0 / static_cast<double>(n * n)); }, Z, kLaCruz));
  add(scalable(17, "Extended cube", "extended-cube", 2, [](Index n) { return alternating(n, -2, 1); }, Z,
               "Jamil-Yang"));
  add(scalable(18, "Extended Freudenstein and Roth", "extended-freudenstein-roth", 2,
               [](Index n) { return alternating(n, 6, 3); }, Z, kLaCruz),
      extended_freudenstein_roth());
  add(scalable(19, "Extended Himmelblau", "extended-himmelblau", 2,
               [inv_n](Index n) { return alternating(n, 1.0, inv_n(n)); }, Z, "Jamil-Yang"));
  add(scalable(20, "Extended Powell singular", "extended-powell-singular", 4, filled(1.5e-4), Z, kLaCruz),
      extended_powell_singular());
  add(scalable(21, "Extended Rosenbrock", "extended-rosenbrock", 2,
               [](Index n) { return alternating(n, -1.2, 1.0); }, Z, kMGH),
      extended_rosenbrock());
  add(scalable(22, "Extended Wood", "extended-wood", 2, filled(0.0), Z, "Ziliri"));
  add(scalable(23, "Function 21", "function-21", 3, filled(1.0), Z, kLaCruz));
  add(scalable(24, "Function 27", "function-27", 1,
               [](Index n) {
                 Vector x = constant(n, 1.0 / static_cast<double>(n * n));
                 x[0] = 100.0;
                 return x;
               },
               Z, kLaCruz));
  add(scalable(25, "Generalized Broyden tridiagonal", "generalized-broyden-tridiagonal", 1, filled(-1.0),
               Z, kLuksan));
  add(scalable(26, "Linear function full rank", "linear-full-rank", 1, filled(1.0), S, kMGH),
      linear_full_rank());
  add(scalable(27, "Linear rank 1", "linear-rank1", 1, filled(1.0), L, kMGH), linear_rank1());
  add(scalable(28, "Logarithmic", "logarithmic", 1, filled(1.0), Z, kLaCruz), logarithmic());
  add(scalable(29, "Penalty function I", "penalty-1", 1, filled(2.0), Z, kLaCruz), penalty_one());
  add(scalable(30, "Problem 202", "problem-202", 1, filled(2.0), Z, kLuksan));
  add(scalable(31, "Problem 206", "problem-206", 1, [inv_n](Index n) { return constant(n, inv_n(n)); }, Z,
               kLuksan));
  add(scalable(32, "Problem 212", "problem-212", 1, filled(0.5), Z, kLuksan));
  add(scalable(33, "Singular Broyden", "singular-broyden", 1, filled(-1.0), Z, kLuksan));
  add(scalable(34, "Singular function", "singular", 1, filled(1.0), Z, kLaCruz));
  add(scalable(35, "Strictly convex function I", "strictly-convex-1", 1,
               [](Index n) {
                 Vector x(n);
                 for (Index i = 0; i < n; ++i) x[i] = static_cast<double>(i + 1) / static_cast<double>(n);
                 return x;
               },
               L, kLaCruz),
      strictly_convex_one());
  // Strictly convex II: the printed starting point is self-inconsistent.
  add(scalable(36, "Strictly convex function II", "strictly-convex-2", 1, nullptr, L, kLaCruz));
  add(scalable(37, "Trigonometric exponential system", "trigexp-system", 1, filled(0.5), Z, kLuksan));
  add(scalable(38, "Trigonometric", "trigonometric", 1,
               [](Index n) { return constant(n, 1.0 / (10.0 * static_cast<double>(n))); }, Z, kMGH),
      trigonometric());
  add(scalable(39, "Trigonometric logarithmic", "trigonometric-logarithmic", 1, filled(1.0), Z,
               "modified Logarithmic"),
      trigonometric_logarithmic());
  add(scalable(40, "Variably dimensioned", "variably-dimensioned", 1,
               [](Index n) {
                 Vector x(n);
                 for (Index i = 0; i < n; ++i) x[i] = 1.0 - static_cast<double>(i + 1) / static_cast<double>(n);
                 return x;
               },
               Z, kMGH),
      variably_dimensioned());
  return c;
}

const std::vector<Entry>& catalog() {
  static const std::vector<Entry> entries = build_catalog();
  return entries;
}

const Entry& entry(int id) {
  for (const auto& e : catalog()) {
    if (e.spec.id == id) return e;
  }
  throw std::out_of_range("unknown problem id " + std::to_string(id));
}

Index resolve_n(const ProblemSpec& spec, Index n) {
  if (n == 0) n = spec.default_n();
  if (!spec.allows(n)) {
    throw std::invalid_argument(spec.name + ": dimension " + std::to_string(n) + " not allowed");
  }
  return n;
}

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::tolower(ch); });
  return s;
}

}  // namespace

Index ProblemSpec::residual_count(Index n_value) const {
  if (!scalable) return m;
  if (implemented) return entry(id).impl->m_of_n(n_value);
  return n_value;
}

bool ProblemSpec::allows(Index n_value) const {
  if (!scalable) return n_value == n;
  return n_value >= 2 && n_value % n_multiple == 0;
}

const std::vector<ProblemSpec>& list() {
  static const std::vector<ProblemSpec> specs = [] {
    std::vector<ProblemSpec> out;
    for (const auto& e : catalog()) out.push_back(e.spec);
    return out;
  }();
  return specs;
}

const ProblemSpec& find(int id) { return entry(id).spec; }

const ProblemSpec& find(const std::string& selector) {
  if (!selector.empty() && std::all_of(selector.begin(), selector.end(), [](unsigned char ch) { return std::isdigit(ch); })) {
    return find(std::stoi(selector));
  }
  const std::string key = lowercase(selector);
  for (const auto& e : catalog()) {
    if (e.spec.slug == key || lowercase(e.spec.name) == key) return e.spec;
  }
  throw std::out_of_range("unknown problem '" + selector + "'");
}

std::vector<int> implemented_ids() {
  std::vector<int> ids;
  for (const auto& e : catalog()) {
    if (e.impl) ids.push_back(e.spec.id);
  }
  return ids;
}

const std::vector<int>& core_set() {
  static const std::vector<int> ids = {3, 5, 6, 12, 13, 18, 21, 26, 28, 35, 39, 40};
  return ids;
}

Vector starting_point(int id, Index n) {
  const ProblemSpec& spec = find(id);
  n = resolve_n(spec, n);
  if (!spec.x0_rule) throw std::invalid_argument(spec.name + ": no starting point recorded");
  return spec.x0_rule(n);
}

ResidualProblem instantiate(int id, Index n) {
  const Entry& e = entry(id);
  n = resolve_n(e.spec, n);
  if (!e.impl) throw std::invalid_argument(e.spec.name + ": residual not implemented");
  ResidualProblem p;
  p.name = e.spec.name;
  p.n = n;
  p.m = e.impl->m_of_n(n);
  p.residual = e.impl->residual(n);
  p.jtv = e.impl->jtv(n);
  p.x0 = e.spec.x0_rule(n);
  p.residual_class = e.spec.residual_class;
  return p;
}

SuiteValidation validate_problems(const std::vector<ResidualProblem>& problems, double h,
                                  double threshold, const std::vector<int>& ids) {
  if (!(h > 0.0)) throw std::invalid_argument("validate: step must be positive");
  SuiteValidation report;
  report.threshold = threshold;
  report.passed = true;
  for (std::size_t i = 0; i < problems.size(); ++i) {
    const auto& p = problems[i];
    GradientCheck c;
    c.id = i < ids.size() ? ids[i] : 0;
    c.name = p.name;
    c.n = p.n;
    try {
      c.max_rel_error = check_gradient(p, p.x0, h);
      c.ok = c.max_rel_error <= threshold;
    } catch (const EvaluationError& e) {
      c.error = e.what();
      c.ok = false;
    }
    report.passed = report.passed && c.ok;
    report.checks.push_back(std::move(c));
  }
  return report;
}

SuiteValidation validate_suite(double h, Index n_scalable) {
  std::vector<ResidualProblem> problems;
  std::vector<int> ids;
  for (int id : implemented_ids()) {
    const auto& spec = find(id);
    problems.push_back(instantiate(id, spec.scalable ? n_scalable : 0));
    ids.push_back(id);
  }
  return validate_problems(problems, h, 1e-4, ids);
}

}  // namespace ssgm::suite
