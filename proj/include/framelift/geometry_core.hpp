#pragma once

#include <vector>

#include "framelift/chart.hpp"

namespace framelift {

// Christoffel symbols of a linear connection in a chart: upper[k](i, j) = Gamma^k_{ij}, so that
// nabla_{d_i} d_j = Gamma^k_{ij} d_k.
class Christoffel {
 public:
  Christoffel() = default;
  explicit Christoffel(std::vector<Mat> upper) : upper_(std::move(upper)) {}
  static Christoffel zero(int n) { return Christoffel(std::vector<Mat>(n, Mat::Zero(n, n))); }

  int dim() const { return static_cast<int>(upper_.size()); }
  double operator()(int k, int i, int j) const { return upper_[k](i, j); }
  double& operator()(int k, int i, int j) { return upper_[k](i, j); }

  // Matrix Gamma_X with (Gamma_X)^k_j = Gamma^k_{ij} X^i, i.e. Y -> nabla_X Y - d_X Y.
  Mat contract(const Vec& X) const;
  // (Gamma_i)^k_j = Gamma^k_{ij}.
  Mat slot(int i) const { return contract(Vec::Unit(dim(), i)); }
  // Gamma^k_{ij} X^i Y^j.
  Vec apply(const Vec& X, const Vec& Y) const { return contract(X) * Y; }

  const std::vector<Mat>& upper() const { return upper_; }

 private:
  std::vector<Mat> upper_;
};

// Curvature R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y] stored as the endomorphisms R(d_i, d_j).
class Riemann {
 public:
  Riemann() = default;
  Riemann(int n, std::vector<Mat> slots) : n_(n), slots_(std::move(slots)) {}

  int dim() const { return n_; }
  const Mat& slot(int i, int j) const { return slots_[i * n_ + j]; }
  Mat endo(const Vec& X, const Vec& Y) const;
  Vec apply(const Vec& X, const Vec& Y, const Vec& Z) const { return endo(X, Y) * Z; }

  // Assembles R(d_i,d_j) = d_i G_j - d_j G_i + [G_i, G_j] from connection coefficients and their
  // partial derivatives (dgamma[l] = d_l Gamma). Valid for any linear connection.
  static Riemann from_connection(const Christoffel& gamma, const std::vector<Christoffel>& dgamma);

 private:
  int n_ = 0;
  std::vector<Mat> slots_;
};

// Levi-Civita symbols from g and dg (exact when the chart supplies metric derivatives).
Christoffel christoffel(const ChartManifold& M, const Vec& p, const FDConfig& cfg);
// Partial derivatives d_l Gamma by central differences of christoffel().
std::vector<Christoffel> christoffel_derivative(const ChartManifold& M, const Vec& p, const FDConfig& cfg);
Riemann riemann(const ChartManifold& M, const Vec& p, const FDConfig& cfg);

Vec curvature(const ChartManifold& M, const Vec& p, const Vec& X, const Vec& Y, const Vec& Z, const FDConfig& cfg);
double sectional_curvature(const ChartManifold& M, const Vec& p, const Vec& X, const Vec& Y, const FDConfig& cfg);

// d_X Y at p: exact Jacobian if the field has one, otherwise a central difference along X.
Vec directional_derivative(const ChartManifold& M, const Vec& p, const Vec& X, const VectorField& Y,
                           double h);
Mat directional_derivative(const ChartManifold& M, const Vec& p, const Vec& X, const EndomorphismField& P,
                           double h);

// (nabla_X Y)(p) for a vector X at p and a field Y.
Vec covariant_derivative(const ChartManifold& M, const Vec& p, const Vec& X, const VectorField& Y,
                         const FDConfig& cfg);
Vec covariant_derivative(const ChartManifold& M, const VectorField& X, const VectorField& Y, const Vec& p,
                         const FDConfig& cfg);
// nabla_X P = d_X P + [Gamma_X, P] for an endomorphism field P.
Mat covariant_derivative_endo(const ChartManifold& M, const Vec& p, const Vec& X, const EndomorphismField& P,
                              const FDConfig& cfg);

Vec lie_bracket(const ChartManifold& M, const VectorField& X, const VectorField& Y, const Vec& p,
                const FDConfig& cfg);

// Modified Gram-Schmidt in the metric g(p). Columns of seed are processed in order; the result has
// g-orthonormal columns. Throws RankError on a (numerically) dependent seed.
Mat gram_schmidt(const ChartManifold& M, const Vec& p, const Mat& seed);
Mat gram_schmidt(const Mat& g, const Mat& seed);

// max |E^T g E - I|.
double orthonormality_residual(const Mat& g, const Mat& basis);

// <P|Q> = sum_i g(P e_i, Q e_i) over a g-orthonormal basis e_i (columns of onb).
double endo_inner(const Mat& g, const Mat& P, const Mat& Q, const Mat& onb);
double endo_inner(const ChartManifold& M, const Vec& p, const Mat& P, const Mat& Q, const Mat& onb,
                  const FDConfig& cfg);

// g-adjoint of an endomorphism: g^{-1} P^T g. P is g-skew iff P + adjoint(P) = 0.
Mat adjoint(const Mat& g, const Mat& P);
bool is_skew(const Mat& g, const Mat& P, double tol);

// sum_i R(e_i, P e_i) X over the columns e_i of basis (no orthonormality requirement).
Vec sum_curvature_R_P(const Riemann& R, const Mat& P, const Vec& X, const Mat& basis);
// R_P(X) = sum_i R(e_i, P e_i) X; onb must be g-orthonormal at p.
Vec curvature_R_P(const ChartManifold& M, const Vec& p, const Mat& P, const Vec& X, const Mat& onb,
                  const FDConfig& cfg);

}  // namespace framelift
