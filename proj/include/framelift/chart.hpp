#pragma once

#include <cstdint>
#include <string>
#include <type_traits>
#include <vector>

#include "framelift/types.hpp"

namespace framelift {

// Axis-aligned box used to draw interior sample points.
struct SamplingBox {
  Vec lo;
  Vec hi;
};

// A single coordinate chart carrying a Riemannian metric field.
//
// Every geometric object in the library is computed in such a chart. The metric derivative is
// optional; when present christoffel() uses it instead of central differences.
class ChartManifold {
 public:
  using MetricFn = std::function<Mat(const Vec&)>;
  // Returns {d_0 g, ..., d_{n-1} g}, each an n x n symmetric matrix.
  using MetricDerivativeFn = std::function<std::vector<Mat>(const Vec&)>;
  using DomainFn = std::function<bool(const Vec&)>;

  ChartManifold(std::string name, int dim, MetricFn metric, MetricDerivativeFn metric_derivative = {},
                DomainFn domain = {}, SamplingBox box = {});

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  const SamplingBox& box() const { return box_; }

  bool contains(const Vec& p) const;
  void require(const Vec& p, const char* what = "point") const;
  // Throws DomainError unless p +- h*dir both lie in the domain.
  void require_stencil(const Vec& p, const Vec& dir, double h) const;

  Mat metric_raw(const Vec& p) const { return metric_(p); }
  bool has_exact_derivative() const { return static_cast<bool>(metric_derivative_); }
  // Exact derivative when available, otherwise central differences with cfg.step_h.
  std::vector<Mat> metric_derivative(const Vec& p, const FDConfig& cfg) const;

  // Seeded-deterministic interior points: uniform in the sampling box, filtered by the domain
  // predicate.
  std::vector<Vec> sample(std::uint64_t seed, int count) const;

 private:
  std::string name_;
  int dim_;
  MetricFn metric_;
  MetricDerivativeFn metric_derivative_;
  DomainFn domain_;
  SamplingBox box_;
};

// Metric components g_ij at p. Checks the domain, symmetry and positive definiteness.
Mat metric_eval(const ChartManifold& M, const Vec& p);

namespace fd {

// Central difference (f(p + h d) - f(p - h d)) / 2h for scalar-, vector- or matrix-valued f.
template <class F>
auto directional(F&& f, const Vec& p, const Vec& dir, double h) {
  using R = std::decay_t<std::invoke_result_t<F&, const Vec&>>;
  const Vec a = p + h * dir;
  const Vec b = p - h * dir;
  if constexpr (std::is_arithmetic_v<R>) {
    return (f(a) - f(b)) / (2.0 * h);
  } else {
    R out = (f(a) - f(b)) / (2.0 * h);
    return out;
  }
}

// Partial derivative along coordinate i.
template <class F>
auto partial(F&& f, const Vec& p, int i, double h) {
  return directional(f, p, Vec::Unit(p.size(), i), h);
}

// Jacobian of a vector-valued function (row = output component, column = coordinate).
template <class F>
Mat jacobian(F&& f, const Vec& p, double h) {
  Mat J;
  for (int i = 0; i < p.size(); ++i) {
    Vec col = partial(f, p, i, h);
    if (i == 0) J.resize(col.size(), p.size());
    J.col(i) = col;
  }
  return J;
}

}  // namespace fd

}  // namespace framelift
