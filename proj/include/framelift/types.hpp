#pragma once

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

namespace framelift {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Base class for every failure raised by the library.
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A point (or a finite-difference stencil point) lies outside the chart domain.
class DomainError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

// Linear dependence where a basis, an isomorphism or a full-rank differential is required.
class RankError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

// An input violates a structural precondition (non-orthonormal basis, non-skew endomorphism,
// frame not adapted to a distribution, mismatched base points, ...).
class PreconditionError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

// Step sizes and residual thresholds shared by every finite-difference based computation.
//
// step_h is used for first derivatives of analytic inputs, step_h2 whenever the differentiated
// quantity is itself a finite-difference result. The three tolerances grade checks by how many
// finite-difference levels they stack.
struct FDConfig {
  double step_h = 1e-5;
  double step_h2 = 1e-4;
  double tol_exact = 1e-10;
  double tol_fd1 = 1e-6;
  double tol_fd2 = 5e-4;

  void validate() const {
    if (!(step_h > 0.0) || !(step_h2 > 0.0)) throw PreconditionError("FDConfig: steps must be positive");
    if (step_h2 < step_h) throw PreconditionError("FDConfig: step_h2 must be >= step_h");
    if (!(tol_exact >= 0.0) || tol_exact > tol_fd1 || tol_fd1 > tol_fd2)
      throw PreconditionError("FDConfig: tolerances must satisfy 0 <= tol_exact <= tol_fd1 <= tol_fd2");
  }

  // Step to use when differentiating a quantity that is exact (true) or already an FD result.
  double step_for(bool input_exact) const { return input_exact ? step_h : step_h2; }
};

// A tangent vector X in T_xM given by its chart components at the base point x.
struct TangentVector {
  Vec base;
  Vec v;
};

// A smooth vector field in chart components, optionally with its exact Jacobian d(X^k)/dx^i
// (row k, column i).
struct VectorField {
  std::function<Vec(const Vec&)> eval;
  std::function<Mat(const Vec&)> jacobian;

  VectorField() = default;
  VectorField(std::function<Vec(const Vec&)> f, std::function<Mat(const Vec&)> df = {})
      : eval(std::move(f)), jacobian(std::move(df)) {}

  Vec operator()(const Vec& p) const { return eval(p); }
  bool has_jacobian() const { return static_cast<bool>(jacobian); }

  // Field with constant chart components.
  static VectorField constant(const Vec& c) {
    return VectorField([c](const Vec&) { return c; },
                       [c](const Vec& p) { return Mat::Zero(c.size(), p.size()); });
  }
};

// A (1,1)-tensor field: at each point a square matrix acting on tangent components.
using EndomorphismField = std::function<Mat(const Vec&)>;

inline EndomorphismField constant_endomorphism(const Mat& P) {
  return [P](const Vec&) { return P; };
}

}  // namespace framelift
