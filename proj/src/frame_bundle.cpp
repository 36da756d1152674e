#include "framelift/frame_bundle.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numbers>
#include <random>

namespace framelift {

namespace {

void require_same_base(const Vec& a, const Vec& b, const char* what) {
  if (a.size() != b.size() || (a - b).norm() > 1e-12 * (1.0 + a.norm()))
    throw PreconditionError(std::string(what) + ": base points differ");
}

void require_same_frame(const Frame& a, const Frame& b, const char* what) {
  require_same_base(a.base, b.base, what);
  if (a.E.rows() != b.E.rows() || a.E.cols() != b.E.cols() ||
      (a.E - b.E).norm() > 1e-12 * (1.0 + a.E.norm()))
    throw PreconditionError(std::string(what) + ": tangent vectors live at different frames");
}

Vec frame_point(const Frame& u) {
  Vec out(u.base.size() + u.E.size());
  out << u.base, Eigen::Map<const Vec>(u.E.data(), u.E.size());
  return out;
}

// V-component of a frame tangent: column i is V(u_i), i.e. Edot + Gamma_xdot E.
Mat connection_component(const ChartManifold& M, const FrameTangent& t, const FDConfig& cfg) {
  return t.frame_rate + christoffel(M, t.at.base, cfg).contract(t.base_rate) * t.at.E;
}

}  // namespace

Vec FrameTangent::ambient() const {
  Vec out(base_rate.size() + frame_rate.size());
  out << base_rate, Eigen::Map<const Vec>(frame_rate.data(), frame_rate.size());
  return out;
}

FrameTangent FrameTangent::from_ambient(const Frame& at, const Vec& v) {
  const int n = at.dim();
  const int m = at.size();
  if (v.size() != n + n * m) throw PreconditionError("FrameTangent: ambient vector has wrong length");
  return {at, v.head(n), Eigen::Map<const Mat>(v.data() + n, n, m)};
}

bool is_orthonormal_frame(const ChartManifold& M, const Frame& u, double tol) {
  if (u.E.rows() != M.dim() || u.E.cols() != M.dim()) return false;
  return orthonormality_residual(metric_eval(M, u.base), u.E) <= tol;
}

FrameTangent horizontal_lift_frame(const ChartManifold& M, const TangentVector& X, const Frame& u,
                                   const FDConfig& cfg) {
  require_same_base(X.base, u.base, "horizontal_lift_frame");
  return {u, X.v, -christoffel(M, u.base, cfg).contract(X.v) * u.E};
}

FrameTangent fundamental_vertical(const Mat& P, const Frame& u) {
  return {u, Vec::Zero(u.dim()), P * u.E};
}

Mat vertical_part(const ChartManifold& M, const FrameTangent& t, const FDConfig& cfg) {
  if (t.at.E.rows() != t.at.E.cols()) throw PreconditionError("vertical_part: frame is not square");
  Eigen::FullPivLU<Mat> lu(t.at.E);
  if (!lu.isInvertible()) throw RankError("vertical_part: frame is singular");
  return connection_component(M, t, cfg) * lu.inverse();
}

double mok_metric(const ChartManifold& M, const FrameTangent& s, const FrameTangent& t, const FDConfig& cfg) {
  require_same_frame(s.at, t.at, "mok_metric");
  const Mat g = metric_eval(M, s.at.base);
  const Mat Vs = connection_component(M, s, cfg);
  const Mat Vt = connection_component(M, t, cfg);
  return s.base_rate.dot(g * t.base_rate) + (Vs.transpose() * g * Vt).trace();
}

double mok_norm(const ChartManifold& M, const FrameTangent& t, const FDConfig& cfg) {
  return std::sqrt(std::max(0.0, mok_metric(M, t, t, cfg)));
}

Mat mok_gram_ambient(const ChartManifold& M, const Frame& u, const FDConfig& cfg) {
  const int n = u.dim();
  const int m = u.size();
  const int N = n + n * m;
  const Christoffel gamma = christoffel(M, u.base, cfg);
  Mat L = Mat::Identity(N, N);
  for (int i = 0; i < n; ++i) {
    const Mat col = gamma.slot(i) * u.E;
    L.block(n, i, n * m, 1) = Eigen::Map<const Vec>(col.data(), col.size());
  }
  const Mat g = metric_eval(M, u.base);
  Mat D = Mat::Zero(N, N);
  D.topLeftCorner(n, n) = g;
  for (int c = 0; c < m; ++c) D.block(n + c * n, n + c * n, n, n) = g;
  const Mat G = L.transpose() * D * L;
  return 0.5 * (G + G.transpose());
}

// --- skew matrices ------------------------------------------------------------------------------

int skew_dim(int n) { return n * (n - 1) / 2; }

std::vector<Mat> skew_basis(int n) {
  std::vector<Mat> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Mat B = Mat::Zero(n, n);
      B(i, j) = 1.0;
      B(j, i) = -1.0;
      out.push_back(std::move(B));
    }
  }
  return out;
}

Mat skew_from_coords(const Vec& a, int n) {
  if (a.size() != skew_dim(n)) throw PreconditionError("skew_from_coords: wrong coordinate count");
  Mat A = Mat::Zero(n, n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++k) {
      A(i, j) = a(k);
      A(j, i) = -a(k);
    }
  }
  return A;
}

Vec coords_from_skew(const Mat& A) {
  const int n = static_cast<int>(A.rows());
  Vec a(skew_dim(n));
  int k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) a(k++) = A(i, j);
  return a;
}

Mat dexp(const Mat& A, const Mat& B) {
  const int n = static_cast<int>(A.rows());
  Mat big = Mat::Zero(2 * n, 2 * n);
  big.topLeftCorner(n, n) = A;
  big.topRightCorner(n, n) = B;
  big.bottomRightCorner(n, n) = A;
  const Mat e = big.exp();
  return e.topRightCorner(n, n);
}

// --- bundle charts ------------------------------------------------------------------------------

bool BundleChart::contains(const Vec& q) const {
  const int n = base().dim();
  return q.size() == dim() && q.allFinite() && base().contains(q.head(n));
}

Mat BundleChart::jacobian(const Vec& q, const FDConfig& cfg) const {
  return fd::jacobian([this](const Vec& p) { return frame_point(decode(p)); }, q, cfg.step_h);
}

Vec BundleChart::chart_components(const Vec& q, const FrameTangent& t, const FDConfig& cfg) const {
  const Mat J = jacobian(q, cfg);
  return J.colPivHouseholderQr().solve(t.ambient());
}

double BundleChart::tangency_residual(const Vec& q, const FrameTangent& t, const FDConfig& cfg) const {
  const Mat J = jacobian(q, cfg);
  const Vec v = t.ambient();
  const Vec c = J.colPivHouseholderQr().solve(v);
  return (J * c - v).norm() / std::max(v.norm(), 1e-300);
}

FrameTangent BundleChart::to_frame_tangent(const Vec& q, const Vec& qdot, const FDConfig& cfg) const {
  return FrameTangent::from_ambient(decode(q), jacobian(q, cfg) * qdot);
}

Frame LMChart::decode(const Vec& q) const {
  const int n = M_->dim();
  if (q.size() != dim()) throw PreconditionError("LMChart: wrong coordinate count");
  return {q.head(n), Eigen::Map<const Mat>(q.data() + n, n, n)};
}

bool LMChart::contains(const Vec& q) const {
  if (!BundleChart::contains(q)) return false;
  return Eigen::FullPivLU<Mat>(decode(q).E).isInvertible();
}

Mat LMChart::jacobian(const Vec& q, const FDConfig&) const { return Mat::Identity(q.size(), q.size()); }

Vec LMChart::encode(const Frame& u) const {
  if (u.dim() != M_->dim() || u.size() != M_->dim()) throw PreconditionError("LMChart: frame has wrong shape");
  return frame_point(u);
}

Mat reference_frame(const ChartManifold& M, const Vec& p) {
  return gram_schmidt(M, p, Mat::Identity(M.dim(), M.dim()));
}

OMChart::OMChart(std::shared_ptr<const ChartManifold> M, FrameFieldFn reference, std::vector<int> blocks,
                 std::string name)
    : M_(std::move(M)), reference_(std::move(reference)), blocks_(std::move(blocks)), name_(std::move(name)) {
  const int n = M_->dim();
  if (!reference_) {
    const ChartManifold* base = M_.get();
    reference_ = [base](const Vec& x) { return reference_frame(*base, x); };
  }
  if (blocks_.empty()) blocks_ = {n};
  int total = 0;
  for (int b : blocks_) {
    if (b < 0) throw PreconditionError("OMChart: negative block size");
    total += b;
  }
  if (total != n) throw PreconditionError("OMChart: block sizes must sum to the dimension");
  if (name_.empty()) name_ = "O(" + M_->name() + ")";
}

int OMChart::dim() const {
  int d = M_->dim();
  for (int b : blocks_) d += skew_dim(b);
  return d;
}

Mat OMChart::rotation(const Vec& a) const {
  const int n = M_->dim();
  Mat R = Mat::Zero(n, n);
  int offset = 0;
  int k = 0;
  for (int b : blocks_) {
    const int d = skew_dim(b);
    const Mat A = skew_from_coords(a.segment(k, d), b);
    R.block(offset, offset, b, b) = A.exp();
    offset += b;
    k += d;
  }
  return R;
}

Frame OMChart::decode(const Vec& q) const {
  const int n = M_->dim();
  if (q.size() != dim()) throw PreconditionError(name_ + ": wrong coordinate count");
  const Vec x = q.head(n);
  return {x, reference_(x) * rotation(q.tail(dim() - n))};
}

bool OMChart::contains(const Vec& q) const {
  if (!BundleChart::contains(q)) return false;
  const int n = M_->dim();
  int k = n;
  for (int b : blocks_) {
    const int d = skew_dim(b);
    // Frobenius norm of A is sqrt(2)|a|; keeping it below pi keeps every rotation angle below pi.
    if (std::sqrt(2.0) * q.segment(k, d).norm() >= std::numbers::pi) return false;
    k += d;
  }
  return true;
}

Mat OMChart::jacobian(const Vec& q, const FDConfig& cfg) const {
  const int n = M_->dim();
  const Vec x = q.head(n);
  const Vec a = q.tail(dim() - n);
  const Mat R = rotation(a);
  Mat J = Mat::Zero(n + n * n, dim());
  J.topLeftCorner(n, n).setIdentity();
  for (int l = 0; l < n; ++l) {
    const Vec e = Vec::Unit(n, l);
    M_->require_stencil(x, e, cfg.step_h);
    const Mat dref = fd::directional(reference_, x, e, cfg.step_h);
    const Mat col = dref * R;
    J.block(n, l, n * n, 1) = Eigen::Map<const Vec>(col.data(), col.size());
  }
  const Mat ref = reference_(x);
  int offset = 0;
  int k = 0;
  for (int b : blocks_) {
    const int d = skew_dim(b);
    const Mat A = skew_from_coords(a.segment(k, d), b);
    const std::vector<Mat> basis = skew_basis(b);
    for (int c = 0; c < d; ++c) {
      Mat D = Mat::Zero(n, n);
      D.block(offset, offset, b, b) = dexp(A, basis[c]);
      const Mat col = ref * D;
      J.block(n, n + k + c, n * n, 1) = Eigen::Map<const Vec>(col.data(), col.size());
    }
    offset += b;
    k += d;
  }
  return J;
}

Vec OMChart::encode(const Frame& u, const FDConfig& cfg) const {
  const int n = M_->dim();
  if (!is_orthonormal_frame(*M_, u, cfg.tol_exact)) throw PreconditionError(name_ + ": frame is not orthonormal");
  const Mat ref = reference_(u.base);
  const Mat R = ref.transpose() * metric_eval(*M_, u.base) * u.E;
  Vec q(dim());
  q.head(n) = u.base;
  int offset = 0;
  int k = n;
  for (int b : blocks_) {
    Mat off = R.block(offset, 0, b, n);
    off.block(0, offset, b, b).setZero();
    if (off.cwiseAbs().maxCoeff() > cfg.tol_exact)
      throw PreconditionError(name_ + ": frame does not respect the block structure");
    const Mat Rb = R.block(offset, offset, b, b);
    if (Rb.determinant() <= 0.0) throw PreconditionError(name_ + ": frame has the opposite orientation in a block");
    if (b > 1) {
      Mat A = Rb.log();
      A = (0.5 * (A - A.transpose())).eval();
      if (!A.allFinite() || (A.exp() - Rb).cwiseAbs().maxCoeff() > 1e-9)
        throw GeometryError(name_ + ": matrix logarithm did not converge");
      q.segment(k, skew_dim(b)) = coords_from_skew(A);
    }
    offset += b;
    k += skew_dim(b);
  }
  if (!contains(q)) throw GeometryError(name_ + ": frame lies outside the chart injectivity range");
  return q;
}

Vec om_chart_encode(const Frame& u, const OMChart& chart, const FDConfig& cfg) { return chart.encode(u, cfg); }
Frame om_chart_decode(const Vec& q, const OMChart& chart) { return chart.decode(q); }

FrameField horizontal_lift_field(const ChartManifold& M, VectorField X, FDConfig cfg) {
  const ChartManifold* base = &M;
  return [base, X = std::move(X), cfg](const Frame& u) {
    return horizontal_lift_frame(*base, {u.base, X(u.base)}, u, cfg);
  };
}

FrameField fundamental_vertical_field(EndomorphismField P) {
  return [P = std::move(P)](const Frame& u) { return fundamental_vertical(P(u.base), u); };
}

// --- total space oracle -------------------------------------------------------------------------

TotalSpace::TotalSpace(std::shared_ptr<const BundleChart> chart, const FDConfig& cfg)
    : chart_(std::move(chart)), cfg_(cfg), total_cfg_(cfg) {
  cfg_.validate();
  total_cfg_.step_h = cfg.step_h2;
  const BundleChart* c = chart_.get();
  const FDConfig base_cfg = cfg_;
  total_ = std::make_shared<ChartManifold>(
      c->name(), c->dim(),
      [c, base_cfg](const Vec& q) {
        const Mat J = c->jacobian(q, base_cfg);
        const Mat G = J.transpose() * mok_gram_ambient(c->base(), c->decode(q), base_cfg) * J;
        return Mat(0.5 * (G + G.transpose()));
      },
      ChartManifold::MetricDerivativeFn{}, [c](const Vec& q) { return c->contains(q); });
}

Mat TotalSpace::metric(const Vec& q) const { return metric_eval(*total_, q); }

VectorField TotalSpace::chart_field(FrameField F) const {
  const BundleChart* c = chart_.get();
  const FDConfig cfg = cfg_;
  return VectorField([c, F = std::move(F), cfg](const Vec& q) { return c->chart_components(q, F(c->decode(q)), cfg); });
}

FrameTangent TotalSpace::covariant_derivative(const FrameField& A, const FrameField& B, const Vec& q) const {
  const VectorField a = chart_field(A);
  const VectorField b = chart_field(B);
  const Vec c = framelift::covariant_derivative(*total_, q, a(q), b, total_cfg_);
  return chart_->to_frame_tangent(q, c, cfg_);
}

FrameTangent TotalSpace::bracket(const FrameField& A, const FrameField& B, const Vec& q) const {
  const Vec c = lie_bracket(*total_, chart_field(A), chart_field(B), q, total_cfg_);
  return chart_->to_frame_tangent(q, c, cfg_);
}

Mat induced_metric_on_chart(const TotalSpace& T, const Vec& q) { return T.metric(q); }

FrameTangent lc_total_space_oracle(const TotalSpace& T, const FrameField& A, const FrameField& B, const Vec& q) {
  return T.covariant_derivative(A, B, q);
}

// --- formulas -----------------------------------------------------------------------------------

const char* to_string(Bundle b) { return b == Bundle::LM ? "L(M)" : "O(M)"; }

const char* to_string(ConnectionCase c) {
  switch (c) {
    case ConnectionCase::HH: return "hh";
    case ConnectionCase::HV: return "hv";
    case ConnectionCase::VH: return "vh";
    case ConnectionCase::VV: return "vv";
  }
  return "?";
}

const char* to_string(BracketCase c) {
  switch (c) {
    case BracketCase::HH: return "hh";
    case BracketCase::HV: return "hv";
    case BracketCase::VV: return "vv";
  }
  return "?";
}

const char* to_string(FormulaVariant v) { return v == FormulaVariant::AsPrinted ? "as-printed" : "derived"; }

FrameTangent lc_connection_formula(const ChartManifold& M, Bundle bundle, ConnectionCase c, const ConnectionInputs& in,
                                   const Frame& u, FormulaVariant variant, const FDConfig& cfg) {
  const Vec& x = u.base;
  switch (c) {
    case ConnectionCase::HH: {
      const Vec X = in.X(x);
      const Vec nXY = covariant_derivative(M, x, X, in.Y, cfg);
      const Mat R = riemann(M, x, cfg).endo(X, in.Y(x));
      return horizontal_lift_frame(M, {x, nXY}, u, cfg) - 0.5 * fundamental_vertical(R, u);
    }
    case ConnectionCase::HV: {
      const Vec X = in.X(x);
      const Vec RQX = sum_curvature_R_P(riemann(M, x, cfg), in.Q(x), X, u.E);
      FrameTangent out = horizontal_lift_frame(M, {x, 0.5 * RQX}, u, cfg);
      if (variant == FormulaVariant::Derived)
        out = out + fundamental_vertical(covariant_derivative_endo(M, x, X, in.Q, cfg), u);
      return out;
    }
    case ConnectionCase::VH: {
      const Vec Y = in.Y(x);
      const Vec RPY = sum_curvature_R_P(riemann(M, x, cfg), in.P(x), Y, u.E);
      FrameTangent out = horizontal_lift_frame(M, {x, 0.5 * RPY}, u, cfg);
      // The displayed term (nabla_X P)* has no X in scope; it is read with the lifted vector Y.
      if (variant == FormulaVariant::AsPrinted)
        out = out + fundamental_vertical(covariant_derivative_endo(M, x, Y, in.P, cfg), u);
      return out;
    }
    case ConnectionCase::VV: {
      const Mat P = in.P(x);
      const Mat Q = in.Q(x);
      if (bundle == Bundle::LM) return fundamental_vertical(Q * P, u);
      return fundamental_vertical(-0.5 * (P * Q - Q * P), u);
    }
  }
  throw PreconditionError("lc_connection_formula: unknown case");
}

FrameTangent bracket_formula(const ChartManifold& M, BracketCase c, const ConnectionInputs& in, const Frame& u,
                             FormulaVariant variant, const FDConfig& cfg) {
  const Vec& x = u.base;
  switch (c) {
    case BracketCase::HH: {
      const Vec XY = lie_bracket(M, in.X, in.Y, x, cfg);
      const Mat R = riemann(M, x, cfg).endo(in.X(x), in.Y(x));
      return horizontal_lift_frame(M, {x, XY}, u, cfg) - fundamental_vertical(R, u);
    }
    case BracketCase::HV: {
      const Mat nQ = covariant_derivative_endo(M, x, in.X(x), in.Q, cfg);
      const double sign = variant == FormulaVariant::AsPrinted ? -1.0 : 1.0;
      return fundamental_vertical(sign * nQ, u);
    }
    case BracketCase::VV: {
      const Mat P = in.P(x);
      const Mat Q = in.Q(x);
      return fundamental_vertical(-(P * Q - Q * P), u);
    }
  }
  throw PreconditionError("bracket_formula: unknown case");
}

double bracket_residual(const TotalSpace& T, BracketCase c, const ConnectionInputs& in, const Vec& q,
                        FormulaVariant variant) {
  const ChartManifold& M = T.base();
  const FDConfig& cfg = T.base_cfg();
  FrameField A;
  FrameField B;
  switch (c) {
    case BracketCase::HH:
      A = horizontal_lift_field(M, in.X, cfg);
      B = horizontal_lift_field(M, in.Y, cfg);
      break;
    case BracketCase::HV:
      A = horizontal_lift_field(M, in.X, cfg);
      B = fundamental_vertical_field(in.Q);
      break;
    case BracketCase::VV:
      A = fundamental_vertical_field(in.P);
      B = fundamental_vertical_field(in.Q);
      break;
  }
  const Frame u = T.chart().decode(q);
  const FrameTangent fd = T.bracket(A, B, q);
  return mok_norm(M, fd - bracket_formula(M, c, in, u, variant, cfg), cfg);
}

std::vector<AuditRow> connection_audit(const TotalSpace& T, Bundle bundle, const ConnectionInputs& in, const Vec& q) {
  const ChartManifold& M = T.base();
  const FDConfig& cfg = T.base_cfg();
  const Frame u = T.chart().decode(q);
  const FrameField Xh = horizontal_lift_field(M, in.X, cfg);
  const FrameField Yh = horizontal_lift_field(M, in.Y, cfg);
  const FrameField Ps = fundamental_vertical_field(in.P);
  const FrameField Qs = fundamental_vertical_field(in.Q);

  std::vector<AuditRow> rows;
  const ConnectionCase cases[] = {ConnectionCase::HH, ConnectionCase::HV, ConnectionCase::VH, ConnectionCase::VV};
  for (ConnectionCase c : cases) {
    const FrameField& A = (c == ConnectionCase::HH || c == ConnectionCase::HV) ? Xh : Ps;
    const FrameField& B = (c == ConnectionCase::HH || c == ConnectionCase::VH) ? Yh : Qs;
    const FrameTangent oracle = lc_total_space_oracle(T, A, B, q);
    const bool has_variants = c == ConnectionCase::HV || c == ConnectionCase::VH;
    for (FormulaVariant v : {FormulaVariant::AsPrinted, FormulaVariant::Derived}) {
      if (v == FormulaVariant::Derived && !has_variants) continue;
      const FrameTangent f = lc_connection_formula(M, bundle, c, in, u, v, cfg);
      rows.push_back({to_string(bundle), to_string(c), to_string(v), mok_norm(M, oracle - f, cfg),
                      mok_norm(M, oracle, cfg), v == FormulaVariant::AsPrinted});
    }
  }
  return rows;
}

ConnectionInputs random_connection_inputs(std::shared_ptr<const ChartManifold> M, std::uint64_t seed, bool skew_only) {
  const int n = M->dim();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N01(0.0, 1.0);
  auto rand_mat = [&](int r, int c, double s) {
    Mat A(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) A(i, j) = s * N01(rng);
    return A;
  };
  auto linear_field = [&]() {
    const Vec a = rand_mat(n, 1, 1.0);
    const Mat B = rand_mat(n, n, 0.5);
    return VectorField([a, B](const Vec& x) { return Vec(a + B * x); }, [B](const Vec&) { return B; });
  };
  auto endo_field = [&]() -> EndomorphismField {
    std::vector<Mat> coeffs;
    for (int l = 0; l <= n; ++l) {
      Mat A = rand_mat(n, n, l == 0 ? 1.0 : 0.5);
      if (skew_only) A = (0.5 * (A - A.transpose())).eval();
      coeffs.push_back(std::move(A));
    }
    auto A_at = [coeffs, n](const Vec& x) {
      Mat A = coeffs[0];
      for (int l = 0; l < n; ++l) A += x(l) * coeffs[l + 1];
      return A;
    };
    if (!skew_only) return A_at;
    // Conjugating by an orthonormal frame field turns a skew matrix field into a g-skew field.
    return [M, A_at](const Vec& x) {
      const Mat F = reference_frame(*M, x);
      return Mat(F * A_at(x) * F.transpose() * metric_eval(*M, x));
    };
  };
  ConnectionInputs in;
  in.X = linear_field();
  in.Y = linear_field();
  in.P = endo_field();
  in.Q = endo_field();
  return in;
}

}  // namespace framelift
