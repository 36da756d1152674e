#include "framelift/submersion.hpp"

#include <cmath>

namespace framelift {

namespace {

double g_norm(const Mat& g, const Vec& v) { return std::sqrt(std::max(0.0, v.dot(g * v))); }

Mat pivoted_seed(const Mat& P, int r) {
  Eigen::ColPivHouseholderQR<Mat> qr(P);
  Mat out(P.rows(), r);
  for (int i = 0; i < r; ++i) out.col(i) = P.col(qr.colsPermutation().indices()(i));
  return out;
}

FDConfig phi_cfg(const SubmersionSpec& phi, const FDConfig& cfg) {
  FDConfig c = cfg;
  if (!phi.exact()) c.step_h = cfg.step_h2;
  return c;
}

}  // namespace

Mat jacobian_fd(const SubmersionSpec& phi, const Vec& p, double h) {
  for (int i = 0; i < p.size(); ++i) phi.source->require_stencil(p, Vec::Unit(p.size(), i), h);
  return fd::jacobian(phi.map, p, h);
}

Mat jacobian(const SubmersionSpec& phi, const Vec& p, const FDConfig& cfg) {
  phi.source->require(p);
  if (phi.exact()) return phi.differential(p);
  return jacobian_fd(phi, p, cfg.step_h);
}

Vec differential(const SubmersionSpec& phi, const TangentVector& X, const FDConfig& cfg) {
  return jacobian(phi, X.base, cfg) * X.v;
}

Vec hessian(const SubmersionSpec& phi, const Vec& p, const Vec& X, const Vec& Y, const FDConfig& cfg) {
  if (X.norm() == 0.0) return Vec::Zero(phi.k());
  const double h = phi.exact() ? cfg.step_h : cfg.step_h2;
  phi.source->require_stencil(p, X, h);
  return fd::directional([&](const Vec& x) { return Vec(jacobian(phi, x, cfg) * Y); }, p, X, h);
}

Splitting splitting_projectors(const SubmersionSpec& phi, const Vec& p, const FDConfig& cfg) {
  const int n = phi.n();
  const Mat J = jacobian(phi, p, cfg);
  const Mat g = metric_eval(*phi.source, p);
  Eigen::FullPivLU<Mat> rank(J);
  if (rank.rank() < phi.k()) throw RankError("splitting_projectors: differential is not surjective");
  const Mat B = g.ldlt().solve(J.transpose());
  const Mat PH = B * (B.transpose() * g * B).ldlt().solve(B.transpose() * g);
  return {Mat::Identity(n, n) - PH, PH};
}

DistributionSpec horizontal_distribution(const SubmersionSpec& phi, const FDConfig& cfg) {
  DistributionSpec D;
  D.rank = phi.k();
  D.projector = [phi, cfg](const Vec& x) { return splitting_projectors(phi, x, cfg).horizontal; };
  D.exact = phi.exact();
  return D;
}

DistributionSpec vertical_distribution(const SubmersionSpec& phi, const FDConfig& cfg) {
  DistributionSpec D;
  D.rank = phi.n() - phi.k();
  D.projector = [phi, cfg](const Vec& x) { return splitting_projectors(phi, x, cfg).vertical; };
  D.exact = phi.exact();
  return D;
}

Mat horizontal_inverse(const SubmersionSpec& phi, const Vec& p, const FDConfig& cfg) {
  const Mat J = jacobian(phi, p, cfg);
  const Mat B = metric_eval(*phi.source, p).ldlt().solve(J.transpose());
  Eigen::FullPivLU<Mat> lu(J * B);
  if (!lu.isInvertible()) throw RankError("horizontal_inverse: differential is not surjective");
  return B * lu.inverse();
}

Mat horizontal_onb(const SubmersionSpec& phi, const Vec& p, const FDConfig& cfg) {
  const Mat g = metric_eval(*phi.source, p);
  return gram_schmidt(g, pivoted_seed(splitting_projectors(phi, p, cfg).horizontal, phi.k()));
}

Mat vertical_onb(const SubmersionSpec& phi, const Vec& p, const FDConfig& cfg) {
  const int r = phi.n() - phi.k();
  if (r == 0) return Mat(phi.n(), 0);
  const Mat g = metric_eval(*phi.source, p);
  return gram_schmidt(g, pivoted_seed(splitting_projectors(phi, p, cfg).vertical, r));
}

Mat adapted_onb(const SubmersionSpec& phi, const Vec& p, const FDConfig& cfg) {
  Mat out(phi.n(), phi.n());
  out << horizontal_onb(phi, p, cfg), vertical_onb(phi, p, cfg);
  return out;
}

Dilatation dilatation(const SubmersionSpec& phi, const Vec& p, const FDConfig& cfg) {
  const Mat E = horizontal_onb(phi, p, cfg);
  const Mat JE = jacobian(phi, p, cfg) * E;
  const Mat G = JE.transpose() * metric_eval(*phi.target, phi(p)) * JE;
  const int k = phi.k();
  Dilatation d;
  d.lambda = G.trace() / k;
  d.defect = (G - d.lambda * Mat::Identity(k, k)).cwiseAbs().maxCoeff();
  return d;
}

Vec pullback_connection(const SubmersionSpec& phi, const Vec& p, const Vec& X,
                        const std::function<Vec(const Vec&)>& W, const FDConfig& cfg) {
  const Vec W0 = W(p);
  Vec dW = Vec::Zero(W0.size());
  if (X.norm() > 0.0) {
    phi.source->require_stencil(p, X, cfg.step_h);
    dW = fd::directional(W, p, X, cfg.step_h);
  }
  const Vec JX = jacobian(phi, p, cfg) * X;
  return dW + christoffel(*phi.target, phi(p), cfg).apply(JX, W0);
}

Vec second_fundamental_form(const SubmersionSpec& phi, const Vec& p, const Vec& X, const Vec& Y,
                            const FDConfig& cfg) {
  const Mat J = jacobian(phi, p, cfg);
  return hessian(phi, p, X, Y, cfg) + christoffel(*phi.target, phi(p), cfg).apply(J * X, J * Y) -
         J * christoffel(*phi.source, p, cfg).apply(X, Y);
}

Vec second_fundamental_form_fields(const SubmersionSpec& phi, const Vec& p, const VectorField& X,
                                   const VectorField& Y, const FDConfig& cfg) {
  const FDConfig c = phi_cfg(phi, cfg);
  const Vec X0 = X(p);
  auto pushY = [&](const Vec& x) { return Vec(jacobian(phi, x, cfg) * Y(x)); };
  return pullback_connection(phi, p, X0, pushY, c) -
         jacobian(phi, p, cfg) * covariant_derivative(*phi.source, p, X0, Y, cfg);
}

double second_fundamental_form_norm(const SubmersionSpec& phi, const Vec& p, const FDConfig& cfg) {
  const Mat E = adapted_onb(phi, p, cfg);
  const Mat gN = metric_eval(*phi.target, phi(p));
  double worst = 0.0;
  for (int i = 0; i < E.cols(); ++i)
    for (int j = i; j < E.cols(); ++j)
      worst = std::max(worst, g_norm(gN, second_fundamental_form(phi, p, E.col(i), E.col(j), cfg)));
  return worst;
}

Mat A_Y_endo(const SubmersionSpec& phi, const Vec& p, const Vec& Y, const FDConfig& cfg) {
  const int n = phi.n();
  const Mat g = metric_eval(*phi.source, p);
  const Splitting s = splitting_projectors(phi, p, cfg);
  if (g_norm(g, s.horizontal * Y) > cfg.tol_fd1 * std::max(1.0, g_norm(g, Y)))
    throw PreconditionError("A_Y_endo: Y is not vertical");
  const DistributionSpec H = horizontal_distribution(phi, cfg);
  Mat A(n, n);
  for (int j = 0; j < n; ++j) A.col(j) = S_endo(*phi.source, H, p, Vec::Unit(n, j), cfg) * Y;
  return A * s.horizontal;
}

double a_identity_residual(const SubmersionSpec& phi, const Vec& p, const Vec& X, const Vec& Y,
                           FormulaVariant variant, const FDConfig& cfg) {
  const Vec lhs = jacobian(phi, p, cfg) * A_Y_endo(phi, p, Y, cfg) * X;
  const Vec pi = second_fundamental_form(phi, p, X, Y, cfg);
  const Vec rhs = variant == FormulaVariant::AsPrinted ? pi : Vec(-pi);
  return g_norm(metric_eval(*phi.target, phi(p)), lhs - rhs);
}

Mat Pi_X_endo(const SubmersionSpec& phi, const Vec& p, const Vec& X, const FDConfig& cfg) {
  const int n = phi.n();
  Mat Pi(phi.k(), n);
  for (int j = 0; j < n; ++j) Pi.col(j) = second_fundamental_form(phi, p, X, Vec::Unit(n, j), cfg);
  return horizontal_inverse(phi, p, cfg) * Pi * splitting_projectors(phi, p, cfg).horizontal;
}

Vec Pi_X_alternative(const SubmersionSpec& phi, const Vec& p, const Vec& X, const Vec& Y, const FDConfig& cfg) {
  const FDConfig c = phi_cfg(phi, cfg);
  const VectorField Yt([&](const Vec& x) { return Vec(splitting_projectors(phi, x, cfg).horizontal * Y); });
  auto pushY = [&](const Vec& x) { return Vec(jacobian(phi, x, cfg) * Yt(x)); };
  const Mat PH = splitting_projectors(phi, p, cfg).horizontal;
  return horizontal_inverse(phi, p, cfg) * pullback_connection(phi, p, X, pushY, c) -
         PH * covariant_derivative(*phi.source, p, X, Yt, c);
}

Mat pushforward_endo(const SubmersionSpec& phi, const Vec& p, const Mat& P0, const FDConfig& cfg) {
  const Mat PH = splitting_projectors(phi, p, cfg).horizontal;
  if ((P0 - PH * P0 * PH).cwiseAbs().maxCoeff() > cfg.tol_fd1 * std::max(1.0, P0.cwiseAbs().maxCoeff()))
    throw PreconditionError("pushforward_endo: endomorphism does not act on the horizontal distribution");
  return jacobian(phi, p, cfg) * P0 * horizontal_inverse(phi, p, cfg);
}

Vec div_bot(const SubmersionSpec& phi, const Vec& p, const Mat& C, const FDConfig& cfg) {
  const DistributionSpec H = horizontal_distribution(phi, cfg);
  const Splitting s = splitting_projectors(phi, p, cfg);
  const Mat Ct = s.horizontal * C * s.horizontal;
  const Mat E = horizontal_onb(phi, p, cfg);
  Vec out = Vec::Zero(phi.n());
  for (int a = 0; a < E.cols(); ++a)
    out += s.vertical * nabla_projector(*phi.source, H, p, E.col(a), cfg) * (Ct * E.col(a));
  return out;
}

Vec div_bot_field(const SubmersionSpec& phi, const Vec& p, const EndomorphismField& C, const FDConfig& cfg) {
  const DistributionSpec H = horizontal_distribution(phi, cfg);
  const FDConfig c = projector_cfg(H, cfg);
  const auto frame = adapted_reference_frame(phi.source, H, p);
  const Mat PV = splitting_projectors(phi, p, cfg).vertical;
  const Mat E0 = frame(p);
  Vec out = Vec::Zero(phi.n());
  for (int a = 0; a < phi.k(); ++a) {
    const VectorField W([&, a](const Vec& x) {
      const Mat PH = H.at(x);
      return Vec(PH * C(x) * PH * frame(x).col(a));
    });
    out += PV * covariant_derivative(*phi.source, p, E0.col(a), W, c);
  }
  return out;
}

double div_lemma_residual(const SubmersionSpec& phi, const Vec& p, const Vec& X, const Mat& C, const FDConfig& cfg) {
  const Mat g = metric_eval(*phi.source, p);
  const Mat PH = splitting_projectors(phi, p, cfg).horizontal;
  const Mat A = A_Y_endo(phi, p, X, cfg);
  const Mat E = horizontal_onb(phi, p, cfg);
  const double inner = endo_inner(g, A, PH * C * PH, E);
  return std::abs(inner + X.dot(g * div_bot(phi, p, C, cfg)));
}

Vec mean_curvature_fibers(const SubmersionSpec& phi, const Vec& p, const FDConfig& cfg) {
  const DistributionSpec H = horizontal_distribution(phi, cfg);
  const Mat PH = splitting_projectors(phi, p, cfg).horizontal;
  const Mat F = vertical_onb(phi, p, cfg);
  Vec out = Vec::Zero(phi.n());
  for (int a = 0; a < F.cols(); ++a) out -= PH * nabla_projector(*phi.source, H, p, F.col(a), cfg) * F.col(a);
  return out;
}

Vec tension_field(const SubmersionSpec& phi, const Vec& p, const FDConfig& cfg) {
  const Mat E = gram_schmidt(metric_eval(*phi.source, p), Mat::Identity(phi.n(), phi.n()));
  Vec out = Vec::Zero(phi.k());
  for (int i = 0; i < E.cols(); ++i) out += second_fundamental_form(phi, p, E.col(i), E.col(i), cfg);
  return out;
}

const char* to_string(TensionCoefficient c) {
  return c == TensionCoefficient::SourceDimension ? "(dim M - 2)/2" : "(dim N - 2)/2";
}

Vec grad_log_dilatation(const SubmersionSpec& phi, const Vec& p, const FDConfig& cfg) {
  const int n = phi.n();
  const double h = phi.exact() ? cfg.step_h : cfg.step_h2;
  Vec d(n);
  for (int i = 0; i < n; ++i) {
    const Vec e = Vec::Unit(n, i);
    phi.source->require_stencil(p, e, h);
    d(i) = (std::log(dilatation(phi, p + h * e, cfg).lambda) - std::log(dilatation(phi, p - h * e, cfg).lambda)) /
           (2.0 * h);
  }
  return metric_eval(*phi.source, p).ldlt().solve(d);
}

Vec tension_conformal(const SubmersionSpec& phi, const Vec& p, TensionCoefficient c, const FDConfig& cfg) {
  const double dim = c == TensionCoefficient::SourceDimension ? phi.n() : phi.k();
  const Mat J = jacobian(phi, p, cfg);
  return -0.5 * (dim - 2.0) * (J * grad_log_dilatation(phi, p, cfg)) - J * mean_curvature_fibers(phi, p, cfg);
}

double horizontal_integrability_defect(const SubmersionSpec& phi, const Vec& p, const FDConfig& cfg) {
  const DistributionSpec H = horizontal_distribution(phi, cfg);
  const Mat g = metric_eval(*phi.source, p);
  const Mat E = horizontal_onb(phi, p, cfg);
  double worst = 0.0;
  for (int a = 0; a < E.cols(); ++a)
    for (int b = a + 1; b < E.cols(); ++b)
      worst = std::max(worst, g_norm(g, torsion_TD(*phi.source, H, p, E.col(a), E.col(b), cfg)));
  return worst;
}

double fiber_second_fundamental_norm(const SubmersionSpec& phi, const Vec& p, const FDConfig& cfg) {
  const DistributionSpec H = horizontal_distribution(phi, cfg);
  const Mat g = metric_eval(*phi.source, p);
  const Mat PH = splitting_projectors(phi, p, cfg).horizontal;
  const Mat F = vertical_onb(phi, p, cfg);
  double worst = 0.0;
  for (int a = 0; a < F.cols(); ++a) {
    const Mat nP = nabla_projector(*phi.source, H, p, F.col(a), cfg);
    for (int b = 0; b < F.cols(); ++b) worst = std::max(worst, g_norm(g, PH * nP * F.col(b)));
  }
  return worst;
}

}  // namespace framelift
