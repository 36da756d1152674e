#include "framelift/adapted_bundle.hpp"

#include <cmath>
#include <random>

namespace framelift {

namespace {

double g_norm(const Mat& g, const Vec& v) { return std::sqrt(std::max(0.0, v.dot(g * v))); }

Mat blockdiag(const Mat& a, const Mat& b) {
  Mat out = Mat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

// Indices of the k most independent columns of A (column-pivoted QR order).
std::vector<int> pivot_columns(const Mat& A, int k) {
  Eigen::ColPivHouseholderQR<Mat> qr(A);
  std::vector<int> out;
  for (int i = 0; i < k; ++i) out.push_back(qr.colsPermutation().indices()(i));
  return out;
}

Mat select_columns(const Mat& A, const std::vector<int>& cols) {
  Mat out(A.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = A.col(cols[i]);
  return out;
}

Vec od_constraints(const ChartManifold& M, const DistributionSpec& D, const Vec& x, const Mat& E) {
  const int n = M.dim();
  const int k = D.rank;
  const Mat g = metric_eval(M, x);
  const Mat P = D.at(x);
  const Mat Pp = Mat::Identity(n, n) - P;
  const Mat ortho = E.transpose() * g * E - Mat::Identity(n, n);
  const Mat inD = Pp * E.leftCols(k);
  const Mat inPerp = P * E.rightCols(n - k);
  Vec c(ortho.size() + inD.size() + inPerp.size());
  c << Eigen::Map<const Vec>(ortho.data(), ortho.size()), Eigen::Map<const Vec>(inD.data(), inD.size()),
      Eigen::Map<const Vec>(inPerp.data(), inPerp.size());
  return c;
}

}  // namespace

ProjectorResidual projector_residual(const ChartManifold& M, const DistributionSpec& D, const Vec& p) {
  const Mat g = metric_eval(M, p);
  const Mat P = D.at(p);
  ProjectorResidual r;
  r.idempotent = (P * P - P).cwiseAbs().maxCoeff();
  r.self_adjoint = (g * P - P.transpose() * g).cwiseAbs().maxCoeff();
  r.trace = std::abs(P.trace() - D.rank);
  return r;
}

FDConfig projector_cfg(const DistributionSpec& D, const FDConfig& cfg) {
  FDConfig c = cfg;
  if (!D.exact) c.step_h = cfg.step_h2;
  return c;
}

BlockDecomposition block_decompose(const Mat& P, const DistributionSpec& D, const Vec& p) {
  const Mat Pi = D.at(p);
  const Mat Pp = Mat::Identity(Pi.rows(), Pi.cols()) - Pi;
  return {Pi * P * Pi, Pp * P * Pp, Pp * P * Pi, Pi * P * Pp};
}

Mat m_projection(const ChartManifold& M, const Mat& P, const DistributionSpec& D, const Vec& p, const FDConfig& cfg) {
  if (!is_skew(metric_eval(M, p), P, cfg.tol_exact)) throw PreconditionError("m_projection: endomorphism is not g-skew");
  return block_decompose(P, D, p).m_part();
}

Mat g_projection(const ChartManifold& M, const Mat& P, const DistributionSpec& D, const Vec& p, const FDConfig& cfg) {
  if (!is_skew(metric_eval(M, p), P, cfg.tol_exact)) throw PreconditionError("g_projection: endomorphism is not g-skew");
  return block_decompose(P, D, p).g_part();
}

Mat g_block_matrix(const Mat& a, const Mat& b) { return blockdiag(a, b); }

Mat m_block_matrix(const Mat& C) {
  const Eigen::Index k = C.rows();
  const Eigen::Index r = C.cols();
  Mat out = Mat::Zero(k + r, k + r);
  out.topRightCorner(k, r) = C;
  out.bottomLeftCorner(r, k) = -C.transpose();
  return out;
}

double reductive_residual(int n, int k, std::uint64_t seed, int trials) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N01(0.0, 1.0);
  auto rnd = [&](int r, int c) {
    Mat A(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) A(i, j) = N01(rng);
    return A;
  };
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    Mat a = rnd(k, k);
    Mat b = rnd(n - k, n - k);
    a = (a - a.transpose()).eval();
    b = (b - b.transpose()).eval();
    const Mat G = g_block_matrix(a, b);
    const Mat Mm = m_block_matrix(rnd(k, n - k));
    const Mat br = G * Mm - Mm * G;
    worst = std::max({worst, br.topLeftCorner(k, k).cwiseAbs().maxCoeff(),
                      br.bottomRightCorner(n - k, n - k).cwiseAbs().maxCoeff()});
  }
  return worst;
}

Mat projector_derivative(const ChartManifold& M, const DistributionSpec& D, const Vec& p, const Vec& X,
                         const FDConfig& cfg) {
  return directional_derivative(M, p, X, D.projector, projector_cfg(D, cfg).step_h);
}

Mat nabla_projector(const ChartManifold& M, const DistributionSpec& D, const Vec& p, const Vec& X,
                    const FDConfig& cfg) {
  const Mat GX = christoffel(M, p, cfg).contract(X);
  const Mat P = D.at(p);
  return projector_derivative(M, D, p, X, cfg) + GX * P - P * GX;
}

Mat S_endo(const ChartManifold& M, const DistributionSpec& D, const Vec& p, const Vec& X, const FDConfig& cfg) {
  const Mat P = D.at(p);
  return (Mat::Identity(P.rows(), P.cols()) - 2.0 * P) * nabla_projector(M, D, p, X, cfg);
}

Vec S_tensor(const ChartManifold& M, const DistributionSpec& D, const Vec& p, const Vec& X, const Vec& Y,
             const FDConfig& cfg) {
  return S_endo(M, D, p, X, cfg) * Y;
}

Vec nabla_D(const ChartManifold& M, const DistributionSpec& D, const Vec& p, const Vec& X, const VectorField& Y,
            const FDConfig& cfg) {
  const FDConfig c = projector_cfg(D, cfg);
  const VectorField top([&D, &Y](const Vec& x) { return Vec(D.at(x) * Y(x)); });
  const VectorField bot([&D, &Y](const Vec& x) { return Vec(D.complement_at(x) * Y(x)); });
  return D.at(p) * covariant_derivative(M, p, X, top, c) + D.complement_at(p) * covariant_derivative(M, p, X, bot, c);
}

Christoffel adapted_christoffel(const ChartManifold& M, const DistributionSpec& D, const Vec& p, const FDConfig& cfg) {
  const int n = M.dim();
  const Christoffel gamma = christoffel(M, p, cfg);
  std::vector<Mat> upper(n, Mat::Zero(n, n));
  for (int i = 0; i < n; ++i) {
    const Mat Gi = gamma.slot(i) - S_endo(M, D, p, Vec::Unit(n, i), cfg);
    for (int k = 0; k < n; ++k) upper[k].row(i) = Gi.row(k);
  }
  return Christoffel(std::move(upper));
}

Riemann curvature_RD(const ChartManifold& M, const DistributionSpec& D, const Vec& p, const FDConfig& cfg) {
  const int n = M.dim();
  const double h = cfg.step_h2;
  std::vector<Christoffel> d;
  d.reserve(n);
  for (int l = 0; l < n; ++l) {
    const Vec e = Vec::Unit(n, l);
    M.require_stencil(p, e, h);
    const Christoffel plus = adapted_christoffel(M, D, p + h * e, cfg);
    const Christoffel minus = adapted_christoffel(M, D, p - h * e, cfg);
    std::vector<Mat> dl(n);
    for (int k = 0; k < n; ++k) dl[k] = (plus.upper()[k] - minus.upper()[k]) / (2.0 * h);
    d.emplace_back(std::move(dl));
  }
  return Riemann::from_connection(adapted_christoffel(M, D, p, cfg), d);
}

Vec torsion_TD(const ChartManifold& M, const DistributionSpec& D, const Vec& p, const Vec& X, const Vec& Y,
               const FDConfig& cfg) {
  return -S_tensor(M, D, p, X, Y, cfg) + S_tensor(M, D, p, Y, X, cfg);
}

Mat nabla_D_endo(const ChartManifold& M, const DistributionSpec& D, const Vec& p, const Vec& X,
                 const EndomorphismField& Q, const FDConfig& cfg) {
  const Mat GX = adapted_christoffel(M, D, p, cfg).contract(X);
  const Mat Q0 = Q(p);
  return directional_derivative(M, p, X, Q, cfg.step_h) + GX * Q0 - Q0 * GX;
}

const char* to_string(DerivativeConvention c) { return c == DerivativeConvention::AsPrinted ? "as-printed" : "standard"; }

Vec nabla_D_S(const ChartManifold& M, const DistributionSpec& D, const Vec& p, const Vec& X, const Vec& Y,
              const Vec& Z, DerivativeConvention conv, const FDConfig& cfg) {
  const Christoffel GD = adapted_christoffel(M, D, p, cfg);
  auto SYZ = [&](const Vec& x) { return Vec(S_endo(M, D, x, Y, cfg) * Z); };
  M.require_stencil(p, X, cfg.step_h2);
  const Vec first = fd::directional(SYZ, p, X, cfg.step_h2) + GD.apply(X, SYZ(p));
  const Vec second = S_tensor(M, D, p, GD.apply(X, Y), Z, cfg);
  const Vec third = conv == DerivativeConvention::AsPrinted ? S_tensor(M, D, p, X, GD.apply(Y, Z), cfg)
                                                            : S_tensor(M, D, p, Y, GD.apply(X, Z), cfg);
  return first - second - third;
}

double curvature_relation_residual(const ChartManifold& M, const DistributionSpec& D, const Vec& p, const Vec& X,
                                   const Vec& Y, const Vec& Z, DerivativeConvention conv, const FDConfig& cfg) {
  const Vec R = riemann(M, p, cfg).apply(X, Y, Z);
  const Vec RD = curvature_RD(M, D, p, cfg).apply(X, Y, Z);
  const Mat SX = S_endo(M, D, p, X, cfg);
  const Mat SY = S_endo(M, D, p, Y, cfg);
  const Vec T = torsion_TD(M, D, p, X, Y, cfg);
  const Vec rhs = RD + nabla_D_S(M, D, p, X, Y, Z, conv, cfg) - nabla_D_S(M, D, p, Y, X, Z, conv, cfg) +
                  S_tensor(M, D, p, T, Z, cfg) + (SX * SY - SY * SX) * Z;
  return g_norm(metric_eval(M, p), R - rhs);
}

Mat W_endo(const ChartManifold& M, const DistributionSpec& D, const Vec& p, const Mat& onb, const FDConfig& cfg) {
  const int n = M.dim();
  const Mat g = metric_eval(M, p);
  if (onb.cols() != n || orthonormality_residual(g, onb) > cfg.tol_exact)
    throw PreconditionError("W_endo: basis is not g-orthonormal");
  std::vector<Mat> Se(n);
  for (int i = 0; i < n; ++i) Se[i] = S_endo(M, D, p, onb.col(i), cfg);
  Mat W = Mat::Identity(n, n);
  for (int j = 0; j < n; ++j) {
    const Mat Sj = S_endo(M, D, p, Vec::Unit(n, j), cfg);
    for (int i = 0; i < n; ++i) W.col(j) += endo_inner(g, Se[i], Sj, onb) * onb.col(i);
  }
  return W;
}

Vec W_inverse_apply(const ChartManifold& M, const DistributionSpec& D, const Vec& p, const Vec& v, const Mat& onb,
                    const FDConfig& cfg) {
  Eigen::FullPivLU<Mat> lu(W_endo(M, D, p, onb, cfg));
  if (!lu.isInvertible()) throw RankError("W_inverse_apply: W is singular");
  return lu.solve(v);
}

Vec L_P_endo(const ChartManifold& M, const DistributionSpec& D, const Vec& p, const EndomorphismField& P,
             const Vec& X, const Mat& onb, const FDConfig& cfg) {
  const int n = M.dim();
  const Mat g = metric_eval(M, p);
  const Vec RP = curvature_R_P(M, p, P(p), X, onb, cfg);
  const Mat nPm = block_decompose(covariant_derivative_endo(M, p, X, P, cfg), D, p).m_part();
  Vec v = RP;
  for (int i = 0; i < n; ++i) v -= endo_inner(g, nPm, S_endo(M, D, p, onb.col(i), cfg), onb) * onb.col(i);
  return W_inverse_apply(M, D, p, v, onb, cfg);
}

double od_membership_residual(const ChartManifold& M, const DistributionSpec& D, const Frame& u) {
  const int n = M.dim();
  const int k = D.rank;
  if (u.E.rows() != n || u.E.cols() != n) return std::numeric_limits<double>::infinity();
  const Mat g = metric_eval(M, u.base);
  const Mat P = D.at(u.base);
  const Mat Pp = Mat::Identity(n, n) - P;
  double r = orthonormality_residual(g, u.E);
  for (int c = 0; c < n; ++c) {
    const Vec wrong = c < k ? Vec(Pp * u.E.col(c)) : Vec(P * u.E.col(c));
    r = std::max(r, g_norm(g, wrong));
  }
  return r;
}

double od_tangency_residual(const ChartManifold& M, const DistributionSpec& D, const FrameTangent& t,
                            const FDConfig& cfg) {
  const double h = projector_cfg(D, cfg).step_h;
  const Vec& x = t.at.base;
  M.require_stencil(x, t.base_rate, h);
  const Vec plus = od_constraints(M, D, x + h * t.base_rate, t.at.E + h * t.frame_rate);
  const Vec minus = od_constraints(M, D, x - h * t.base_rate, t.at.E - h * t.frame_rate);
  return ((plus - minus) / (2.0 * h)).norm() / std::max(t.ambient().norm(), 1e-300);
}

FrameTangent adapted_horizontal_lift(const ChartManifold& M, const DistributionSpec& D, const TangentVector& X,
                                     const Frame& u, const FDConfig& cfg) {
  if (od_membership_residual(M, D, u) > cfg.tol_exact)
    throw PreconditionError("adapted_horizontal_lift: frame is not adapted to the distribution");
  return horizontal_lift_frame(M, X, u, cfg) + fundamental_vertical(S_endo(M, D, u.base, X.v, cfg), u);
}

FrameField adapted_horizontal_lift_field(const ChartManifold& M, const DistributionSpec& D, VectorField X,
                                         FDConfig cfg) {
  const ChartManifold* base = &M;
  const DistributionSpec* dist = &D;
  return [base, dist, X = std::move(X), cfg](const Frame& u) {
    return horizontal_lift_frame(*base, {u.base, X(u.base)}, u, cfg) +
           fundamental_vertical(S_endo(*base, *dist, u.base, X(u.base), cfg), u);
  };
}

OMChart::FrameFieldFn adapted_reference_frame(std::shared_ptr<const ChartManifold> M, DistributionSpec D,
                                              const Vec& center) {
  const int n = M->dim();
  const int k = D.rank;
  const Mat I = Mat::Identity(n, n);
  const std::vector<int> perp_cols = pivot_columns(D.complement_at(center), n - k);
  const bool use_span = static_cast<int>(D.spanning.size()) == k;
  const std::vector<int> d_cols = use_span ? std::vector<int>{} : pivot_columns(D.at(center), k);
  return [M, D = std::move(D), perp_cols, d_cols, use_span, n, k](const Vec& x) {
    const Mat g = metric_eval(*M, x);
    Mat seedD(n, k);
    if (use_span) {
      for (int a = 0; a < k; ++a) seedD.col(a) = D.spanning[a](x);
    } else {
      seedD = select_columns(D.at(x), d_cols);
    }
    const Mat seedP = select_columns(D.complement_at(x), perp_cols);
    Mat F(n, n);
    if (k > 0) F.leftCols(k) = gram_schmidt(g, seedD);
    if (n - k > 0) F.rightCols(n - k) = gram_schmidt(g, seedP);
    return F;
  };
}

std::shared_ptr<OMChart> make_od_chart(std::shared_ptr<const ChartManifold> M, const DistributionSpec& D,
                                       const Vec& center) {
  const int n = M->dim();
  auto ref = adapted_reference_frame(M, D, center);
  return std::make_shared<OMChart>(M, std::move(ref), std::vector<int>{D.rank, n - D.rank},
                                   "O(D in " + M->name() + ")");
}

ConnectionInputs random_od_inputs(std::shared_ptr<const ChartManifold> M, OMChart::FrameFieldFn adapted_ref, int k,
                                  std::uint64_t seed) {
  const int n = M->dim();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N01(0.0, 1.0);
  auto rnd = [&](int r, int c, double s) {
    Mat A(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) A(i, j) = s * N01(rng);
    return A;
  };
  auto linear_field = [&]() {
    const Vec a = rnd(n, 1, 1.0);
    const Mat B = rnd(n, n, 0.5);
    return VectorField([a, B](const Vec& x) { return Vec(a + B * x); }, [B](const Vec&) { return B; });
  };
  auto g_field = [&]() -> EndomorphismField {
    std::vector<Mat> coeffs;
    for (int l = 0; l <= n; ++l) {
      Mat a = rnd(k, k, l == 0 ? 1.0 : 0.5);
      Mat b = rnd(n - k, n - k, l == 0 ? 1.0 : 0.5);
      coeffs.push_back(g_block_matrix((a - a.transpose()).eval(), (b - b.transpose()).eval()));
    }
    return [M, adapted_ref, coeffs, n](const Vec& x) {
      Mat A = coeffs[0];
      for (int l = 0; l < n; ++l) A += x(l) * coeffs[l + 1];
      const Mat F = adapted_ref(x);
      return Mat(F * A * F.transpose() * metric_eval(*M, x));
    };
  };
  ConnectionInputs in;
  in.X = linear_field();
  in.Y = linear_field();
  in.P = g_field();
  in.Q = g_field();
  return in;
}

std::vector<AuditRow> od_connection_audit(const TotalSpace& T, const DistributionSpec& D, const ConnectionInputs& in,
                                          const Vec& q) {
  const ChartManifold& M = T.base();
  const FDConfig& cfg = T.base_cfg();
  const Frame u = T.chart().decode(q);
  const Vec& x = u.base;
  const Mat& onb = u.E;
  const FrameField XhD = adapted_horizontal_lift_field(M, D, in.X, cfg);
  const FrameField YhD = adapted_horizontal_lift_field(M, D, in.Y, cfg);
  const FrameField Ps = fundamental_vertical_field(in.P);
  const FrameField Qs = fundamental_vertical_field(in.Q);
  auto liftD = [&](const Vec& v) { return adapted_horizontal_lift(M, D, {x, v}, u, cfg); };

  const Vec X = in.X(x);
  const Vec Y = in.Y(x);
  const Mat P = in.P(x);
  const Mat Q = in.Q(x);
  const Mat RD = curvature_RD(M, D, x, cfg).endo(X, Y);

  std::vector<AuditRow> rows;
  auto add = [&](const char* kase, const char* variant, const FrameTangent& oracle, const FrameTangent& f) {
    rows.push_back({"O(D)", kase, variant, mok_norm(M, oracle - f, cfg), mok_norm(M, oracle, cfg), false});
  };

  const FrameTangent hh = lc_total_space_oracle(T, XhD, YhD, q);
  add("hh", "(nabla_X Y)^{h,D} - 1/2 R^D(X,Y)*", hh,
      liftD(covariant_derivative(M, x, X, in.Y, cfg)) - 0.5 * fundamental_vertical(RD, u));
  add("hh", "(nabla^D_X Y)^{h,D} - 1/2 R^D(X,Y)*", hh,
      liftD(nabla_D(M, D, x, X, in.Y, cfg)) - 0.5 * fundamental_vertical(RD, u));

  const FrameTangent hv = lc_total_space_oracle(T, XhD, Qs, q);
  const FrameTangent LQ = liftD(0.5 * L_P_endo(M, D, x, in.Q, X, onb, cfg));
  add("hv", "1/2 L_Q(X)^{h,D} + (nabla_X Q)*", hv,
      LQ + fundamental_vertical(covariant_derivative_endo(M, x, X, in.Q, cfg), u));
  add("hv", "1/2 L_Q(X)^{h,D} + (nabla^D_X Q)*", hv, LQ + fundamental_vertical(nabla_D_endo(M, D, x, X, in.Q, cfg), u));

  const FrameTangent vh = lc_total_space_oracle(T, Ps, YhD, q);
  add("vh", "1/2 L_P(Y)^{h,D}", vh, liftD(0.5 * L_P_endo(M, D, x, in.P, Y, onb, cfg)));

  const FrameTangent vv = lc_total_space_oracle(T, Ps, Qs, q);
  add("vv", "-1/2 [P,Q]*", vv, fundamental_vertical(-0.5 * (P * Q - Q * P), u));
  return rows;
}

}  // namespace framelift
