#include "framelift/tangent_bundle.hpp"

#include <cmath>

namespace framelift {

namespace {

void require_same_base(const Vec& a, const Vec& b, const char* what) {
  if (a.size() != b.size() || (a - b).cwiseAbs().maxCoeff() > 0.0) throw PreconditionError(what);
}

TMTangent from_ambient(const TMPoint& at, const Vec& v) {
  const Eigen::Index n = at.base.size();
  return {at, v.head(n), v.tail(n)};
}

// Sasaki-Mok Gram matrix on ambient (x rate, z rate) vectors at Z.
Mat sasaki_gram(const ChartManifold& M, const TMPoint& Z, const FDConfig& cfg) {
  const int n = M.dim();
  const Mat g = metric_eval(M, Z.base);
  const Christoffel G = christoffel(M, Z.base, cfg);
  Mat T = Mat::Identity(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) T.block(n, i, n, 1) = G.apply(Vec::Unit(n, i), Z.fiber);
  Mat D = Mat::Zero(2 * n, 2 * n);
  D.topLeftCorner(n, n) = g;
  D.bottomRightCorner(n, n) = g;
  return T.transpose() * D * T;
}

}  // namespace

Vec TMTangent::ambient() const {
  Vec v(base_rate.size() + fiber_rate.size());
  v << base_rate, fiber_rate;
  return v;
}

TMTangent tm_vertical_lift(const TangentVector& X, const TMPoint& Z) {
  require_same_base(X.base, Z.base, "tm_vertical_lift: base mismatch");
  return {Z, Vec::Zero(X.v.size()), X.v};
}

TMTangent tm_horizontal_lift(const ChartManifold& M, const TangentVector& X, const TMPoint& Z, const FDConfig& cfg) {
  require_same_base(X.base, Z.base, "tm_horizontal_lift: base mismatch");
  return {Z, X.v, -christoffel(M, Z.base, cfg).apply(X.v, Z.fiber)};
}

Vec connection_map_K(const ChartManifold& M, const TMTangent& t, const FDConfig& cfg) {
  return t.fiber_rate + christoffel(M, t.at.base, cfg).apply(t.base_rate, t.at.fiber);
}

double sasaki_mok_tm(const ChartManifold& M, const TMTangent& s, const TMTangent& t, const FDConfig& cfg) {
  require_same_base(s.at.base, t.at.base, "sasaki_mok_tm: point mismatch");
  require_same_base(s.at.fiber, t.at.fiber, "sasaki_mok_tm: point mismatch");
  const Mat g = metric_eval(M, s.at.base);
  return s.base_rate.dot(g * t.base_rate) + connection_map_K(M, s, cfg).dot(g * connection_map_K(M, t, cfg));
}

double sasaki_mok_norm(const ChartManifold& M, const TMTangent& t, const FDConfig& cfg) {
  return std::sqrt(std::max(0.0, sasaki_mok_tm(M, t, t, cfg)));
}

TMSplit split(const ChartManifold& M, const TMTangent& t, const FDConfig& cfg) {
  return {t.base_rate, connection_map_K(M, t, cfg)};
}

TMTangent pi_i_pushforward(int i, const FrameTangent& t) {
  return {{t.at.base, t.at.E.col(i)}, t.base_rate, t.frame_rate.col(i)};
}

double pi_i_lemma_residual(const ChartManifold& M, int i, const Frame& u, const Vec& X, const Mat& P,
                           const FDConfig& cfg) {
  const TMPoint Z{u.base, u.E.col(i)};
  const TMTangent h = pi_i_pushforward(i, horizontal_lift_frame(M, {u.base, X}, u, cfg));
  const TMTangent v = pi_i_pushforward(i, fundamental_vertical(P, u));
  const double rh = (h.ambient() - tm_horizontal_lift(M, {u.base, X}, Z, cfg).ambient()).norm();
  const double rv = (v.ambient() - tm_vertical_lift({u.base, Vec(P * u.E.col(i))}, Z).ambient()).norm();
  return std::max(rh, rv);
}

double pi_i_submersion_residual(const ChartManifold& M, int i, const Frame& u, const FDConfig& cfg) {
  const int n = M.dim();
  const Mat Einv = u.E.inverse();
  std::vector<FrameTangent> kernel;
  std::vector<FrameTangent> horiz;
  for (int a = 0; a < n; ++a) {
    horiz.push_back(horizontal_lift_frame(M, {u.base, Vec::Unit(n, a)}, u, cfg));
    for (int b = 0; b < n; ++b) {
      Mat B = Mat::Zero(n, n);
      B(a, b) = 1.0;
      const FrameTangent t = fundamental_vertical(u.E * B * Einv, u);
      (b == i ? horiz : kernel).push_back(t);
    }
  }
  double worst = 0.0;
  for (const auto& t : kernel) worst = std::max(worst, sasaki_mok_norm(M, pi_i_pushforward(i, t), cfg));
  for (std::size_t a = 0; a < horiz.size(); ++a) {
    for (std::size_t b = 0; b < horiz.size(); ++b) {
      const double up = mok_metric(M, horiz[a], horiz[b], cfg);
      const double down = sasaki_mok_tm(M, pi_i_pushforward(i, horiz[a]), pi_i_pushforward(i, horiz[b]), cfg);
      worst = std::max(worst, std::abs(up - down));
    }
    for (const auto& t : kernel) worst = std::max(worst, std::abs(mok_metric(M, horiz[a], t, cfg)));
  }
  return worst;
}

TMTangent phi_second_differential_fd(const SubmersionSpec& phi, const TMTangent& t, const FDConfig& cfg) {
  const Vec& x = t.at.base;
  const int n = phi.n();
  const int k = phi.k();
  auto Phi = [&](const Vec& q) {
    const Vec xq = q.head(n);
    Vec out(2 * k);
    out << phi(xq), jacobian(phi, xq, cfg) * q.tail(n);
    return out;
  };
  const double h = phi.exact() ? cfg.step_h : cfg.step_h2;
  Vec q(2 * n);
  q << x, t.at.fiber;
  const Vec dir = t.ambient();
  phi.source->require_stencil(x, t.base_rate, h);
  const Vec d = fd::directional(Phi, q, dir, h);
  const TMPoint image{phi(x), jacobian(phi, x, cfg) * t.at.fiber};
  return {image, d.head(k), d.tail(k)};
}

const char* to_string(LiftKind k) { return k == LiftKind::Vertical ? "vertical" : "horizontal"; }

TMTangent phi_second_differential_formula(const SubmersionSpec& phi, LiftKind kind, const TangentVector& X,
                                          const TMPoint& Z, const FDConfig& cfg) {
  require_same_base(X.base, Z.base, "phi_second_differential_formula: base mismatch");
  const Mat J = jacobian(phi, Z.base, cfg);
  const TangentVector JX{phi(Z.base), J * X.v};
  const TMPoint W{phi(Z.base), J * Z.fiber};
  if (kind == LiftKind::Vertical) return tm_vertical_lift(JX, W);
  const TMTangent h = tm_horizontal_lift(*phi.target, JX, W, cfg);
  return h + tm_vertical_lift({W.base, second_fundamental_form(phi, Z.base, X.v, Z.fiber, cfg)}, W);
}

double phi_second_differential_residual(const SubmersionSpec& phi, LiftKind kind, const TangentVector& X,
                                        const TMPoint& Z, const FDConfig& cfg) {
  const TMTangent in = kind == LiftKind::Vertical ? tm_vertical_lift(X, Z) : tm_horizontal_lift(*phi.source, X, Z, cfg);
  const TMTangent f = phi_second_differential_formula(phi, kind, X, Z, cfg);
  const TMTangent o = phi_second_differential_fd(phi, in, cfg);
  return sasaki_mok_norm(*phi.target, f - o, cfg);
}

const char* to_string(Extension e) { return e == Extension::Vertical ? "vertical extension" : "constant extension"; }

TMDistributions thm_kn_distributions(const SubmersionSpec& phi, const TMPoint& Z, Extension ext,
                                     const FDConfig& cfg) {
  const ChartManifold& M = *phi.source;
  const int n = phi.n();
  const Vec& p = Z.base;
  const DistributionSpec Hd = horizontal_distribution(phi, cfg);
  const FDConfig c = projector_cfg(Hd, cfg);
  const Splitting s = splitting_projectors(phi, p, cfg);
  const Mat Ev = vertical_onb(phi, p, cfg);
  const Mat Eh = horizontal_onb(phi, p, cfg);
  const Christoffel G = christoffel(M, p, cfg);

  // (nabla_Z X~) for X~ = proj(x) X or the constant field X.
  auto nabla_Z = [&](const Vec& X, bool vertical_proj) -> Vec {
    if (ext == Extension::Constant) return G.apply(Z.fiber, X);
    const VectorField Xt([&, X, vertical_proj](const Vec& x) {
      const Mat PH = Hd.at(x);
      return Vec(vertical_proj ? Vec(X - PH * X) : Vec(PH * X));
    });
    return covariant_derivative(M, p, Z.fiber, Xt, c);
  };

  TMDistributions out;
  for (int a = 0; a < Ev.cols(); ++a) {
    const Vec X = Ev.col(a);
    out.vertical.push_back(tm_vertical_lift({p, X}, Z));
    out.vertical.push_back(tm_horizontal_lift(M, {p, X}, Z, cfg) +
                           tm_vertical_lift({p, Vec(s.horizontal * nabla_Z(X, true))}, Z));
  }
  for (int a = 0; a < Eh.cols(); ++a) {
    const Vec X = Eh.col(a);
    out.horizontal_shown.push_back(tm_horizontal_lift(M, {p, X}, Z, cfg));
    const Vec W = s.vertical * nabla_Z(X, false);
    out.horizontal_shown.push_back(tm_vertical_lift({p, X}, Z) + tm_horizontal_lift(M, {p, W}, Z, cfg));
  }

  for (const auto& v : out.vertical) {
    const double image = sasaki_mok_norm(*phi.target, phi_second_differential_fd(phi, v, cfg), cfg);
    out.kernel_residual = std::max(out.kernel_residual, image / sasaki_mok_norm(M, v, cfg));
  }

  const Mat Gs = sasaki_gram(M, Z, cfg);
  Mat V(2 * n, static_cast<Eigen::Index>(out.vertical.size()));
  for (std::size_t a = 0; a < out.vertical.size(); ++a) V.col(static_cast<Eigen::Index>(a)) = out.vertical[a].ambient();
  const Mat VG = V.transpose() * Gs;
  Eigen::FullPivLU<Mat> lu(VG);
  if (lu.rank() != V.cols()) throw RankError("thm_kn_distributions: V^Phi spanning set is dependent");
  const Mat complement = gram_schmidt(Gs, lu.kernel());
  for (int c2 = 0; c2 < complement.cols(); ++c2) out.horizontal.push_back(from_ambient(Z, complement.col(c2)));
  out.cross_gram = (VG * complement).cwiseAbs().maxCoeff();

  const Mat VGV = VG * V;
  for (const auto& h : out.horizontal_shown) {
    const Vec a = h.ambient();
    const Vec proj = V * VGV.ldlt().solve(VG * a);
    out.display_residual =
        std::max(out.display_residual, std::sqrt(std::max(0.0, proj.dot(Gs * proj) / a.dot(Gs * a))));
  }
  return out;
}

}  // namespace framelift
