#include "framelift/geometry_core.hpp"

#include <cmath>

namespace framelift {

Mat Christoffel::contract(const Vec& X) const {
  const int n = dim();
  Mat out(n, n);
  for (int k = 0; k < n; ++k) out.row(k) = X.transpose() * upper_[k];
  return out;
}

Mat Riemann::endo(const Vec& X, const Vec& Y) const {
  Mat out = Mat::Zero(n_, n_);
  for (int i = 0; i < n_; ++i) {
    if (X(i) == 0.0) continue;
    for (int j = 0; j < n_; ++j) {
      if (Y(j) == 0.0) continue;
      out += X(i) * Y(j) * slot(i, j);
    }
  }
  return out;
}

Riemann Riemann::from_connection(const Christoffel& gamma, const std::vector<Christoffel>& dgamma) {
  const int n = gamma.dim();
  std::vector<Mat> G(n);
  for (int i = 0; i < n; ++i) G[i] = gamma.slot(i);
  std::vector<Mat> slots(n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      slots[i * n + j] = dgamma[i].slot(j) - dgamma[j].slot(i) + G[i] * G[j] - G[j] * G[i];
    }
  }
  return Riemann(n, std::move(slots));
}

Christoffel christoffel(const ChartManifold& M, const Vec& p, const FDConfig& cfg) {
  const int n = M.dim();
  const Mat ginv = metric_eval(M, p).inverse();
  const std::vector<Mat> dg = M.metric_derivative(p, cfg);
  // lower(l, i, j) = 1/2 (d_i g_lj + d_j g_li - d_l g_ij)
  std::vector<Mat> upper(n, Mat::Zero(n, n));
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Vec lower(n);
      for (int l = 0; l < n; ++l) lower(l) = 0.5 * (dg[i](l, j) + dg[j](l, i) - dg[l](i, j));
      const Vec up = ginv * lower;
      for (int k = 0; k < n; ++k) {
        upper[k](i, j) = up(k);
        upper[k](j, i) = up(k);
      }
    }
  }
  return Christoffel(std::move(upper));
}

std::vector<Christoffel> christoffel_derivative(const ChartManifold& M, const Vec& p, const FDConfig& cfg) {
  const int n = M.dim();
  const double h = cfg.step_for(M.has_exact_derivative());
  std::vector<Christoffel> out;
  out.reserve(n);
  for (int l = 0; l < n; ++l) {
    const Vec e = Vec::Unit(n, l);
    M.require_stencil(p, e, h);
    const Christoffel plus = christoffel(M, p + h * e, cfg);
    const Christoffel minus = christoffel(M, p - h * e, cfg);
    std::vector<Mat> d(n);
    for (int k = 0; k < n; ++k) d[k] = (plus.upper()[k] - minus.upper()[k]) / (2.0 * h);
    out.emplace_back(std::move(d));
  }
  return out;
}

Riemann riemann(const ChartManifold& M, const Vec& p, const FDConfig& cfg) {
  return Riemann::from_connection(christoffel(M, p, cfg), christoffel_derivative(M, p, cfg));
}

Vec curvature(const ChartManifold& M, const Vec& p, const Vec& X, const Vec& Y, const Vec& Z, const FDConfig& cfg) {
  return riemann(M, p, cfg).apply(X, Y, Z);
}

double sectional_curvature(const ChartManifold& M, const Vec& p, const Vec& X, const Vec& Y, const FDConfig& cfg) {
  const Mat g = metric_eval(M, p);
  const Vec RXYY = curvature(M, p, X, Y, Y, cfg);
  const double num = RXYY.dot(g * X);
  const double den = X.dot(g * X) * Y.dot(g * Y) - std::pow(X.dot(g * Y), 2);
  if (den <= 0.0) throw RankError("sectional_curvature: X and Y are linearly dependent");
  return num / den;
}

Vec directional_derivative(const ChartManifold& M, const Vec& p, const Vec& X, const VectorField& Y, double h) {
  if (Y.has_jacobian()) return Y.jacobian(p) * X;
  if (X.norm() == 0.0) return Vec::Zero(Y(p).size());
  M.require_stencil(p, X, h);
  return fd::directional(Y.eval, p, X, h);
}

Mat directional_derivative(const ChartManifold& M, const Vec& p, const Vec& X, const EndomorphismField& P, double h) {
  if (X.norm() == 0.0) {
    const Mat P0 = P(p);
    return Mat::Zero(P0.rows(), P0.cols());
  }
  M.require_stencil(p, X, h);
  return fd::directional(P, p, X, h);
}

Vec covariant_derivative(const ChartManifold& M, const Vec& p, const Vec& X, const VectorField& Y,
                         const FDConfig& cfg) {
  M.require(p);
  return directional_derivative(M, p, X, Y, cfg.step_h) + christoffel(M, p, cfg).apply(X, Y(p));
}

Vec covariant_derivative(const ChartManifold& M, const VectorField& X, const VectorField& Y, const Vec& p,
                         const FDConfig& cfg) {
  return covariant_derivative(M, p, X(p), Y, cfg);
}

Mat covariant_derivative_endo(const ChartManifold& M, const Vec& p, const Vec& X, const EndomorphismField& P,
                              const FDConfig& cfg) {
  M.require(p);
  const Mat GX = christoffel(M, p, cfg).contract(X);
  const Mat P0 = P(p);
  return directional_derivative(M, p, X, P, cfg.step_h) + GX * P0 - P0 * GX;
}

Vec lie_bracket(const ChartManifold& M, const VectorField& X, const VectorField& Y, const Vec& p,
                const FDConfig& cfg) {
  M.require(p);
  return directional_derivative(M, p, X(p), Y, cfg.step_h) - directional_derivative(M, p, Y(p), X, cfg.step_h);
}

Mat gram_schmidt(const Mat& g, const Mat& seed) {
  Mat out = seed;
  for (int c = 0; c < out.cols(); ++c) {
    const double original = std::sqrt(std::max(0.0, out.col(c).dot(g * out.col(c))));
    for (int pass = 0; pass < 2; ++pass) {
      for (int b = 0; b < c; ++b) out.col(c) -= out.col(b).dot(g * out.col(c)) * out.col(b);
    }
    const double norm = std::sqrt(std::max(0.0, out.col(c).dot(g * out.col(c))));
    if (!(norm > 1e-10 * std::max(original, 1e-300)) || norm == 0.0)
      throw RankError("gram_schmidt: seed basis is linearly dependent");
    out.col(c) /= norm;
  }
  return out;
}

Mat gram_schmidt(const ChartManifold& M, const Vec& p, const Mat& seed) {
  if (seed.rows() != M.dim()) throw PreconditionError("gram_schmidt: seed has wrong row count");
  return gram_schmidt(metric_eval(M, p), seed);
}

double orthonormality_residual(const Mat& g, const Mat& basis) {
  return (basis.transpose() * g * basis - Mat::Identity(basis.cols(), basis.cols())).cwiseAbs().maxCoeff();
}

double endo_inner(const Mat& g, const Mat& P, const Mat& Q, const Mat& onb) {
  return ((P * onb).transpose() * g * (Q * onb)).trace();
}

double endo_inner(const ChartManifold& M, const Vec& p, const Mat& P, const Mat& Q, const Mat& onb,
                  const FDConfig& cfg) {
  const Mat g = metric_eval(M, p);
  if (onb.cols() != M.dim() || orthonormality_residual(g, onb) > cfg.tol_exact)
    throw PreconditionError("endo_inner: basis is not g-orthonormal");
  return endo_inner(g, P, Q, onb);
}

Mat adjoint(const Mat& g, const Mat& P) { return g.ldlt().solve(P.transpose() * g); }

bool is_skew(const Mat& g, const Mat& P, double tol) {
  const Mat s = g * P + P.transpose() * g;
  return s.cwiseAbs().maxCoeff() <= tol * std::max(1.0, (g * P).cwiseAbs().maxCoeff());
}

Vec sum_curvature_R_P(const Riemann& R, const Mat& P, const Vec& X, const Mat& basis) {
  Vec out = Vec::Zero(X.size());
  for (int i = 0; i < basis.cols(); ++i) out += R.apply(basis.col(i), P * basis.col(i), X);
  return out;
}

Vec curvature_R_P(const ChartManifold& M, const Vec& p, const Mat& P, const Vec& X, const Mat& onb,
                  const FDConfig& cfg) {
  const Mat g = metric_eval(M, p);
  if (onb.cols() != M.dim() || orthonormality_residual(g, onb) > cfg.tol_exact)
    throw PreconditionError("curvature_R_P: basis is not g-orthonormal");
  return sum_curvature_R_P(riemann(M, p, cfg), P, X, onb);
}

}  // namespace framelift
