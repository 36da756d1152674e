#include "framelift/lift.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>
#include <random>

namespace framelift {

namespace {

double fd_step(const SubmersionSpec& phi, const FDConfig& cfg) { return phi.exact() ? cfg.step_h : cfg.step_h2; }

void require_chart_stencil(const BundleChart& chart, const Vec& q, const Vec& dir, double h) {
  if (!chart.contains(q + h * dir) || !chart.contains(q - h * dir))
    throw DomainError("finite-difference stencil leaves the " + chart.name() + " chart");
}

Vec chart_directional(const LiftSetup& L, const Vec& q, const Vec& dir, const FDConfig& cfg) {
  const double h = fd_step(L.phi, cfg);
  require_chart_stencil(*L.od, q, dir, h);
  return fd::directional([&](const Vec& s) { return lift_in_charts(L, s, cfg); }, q, dir, h);
}

// g-skew endomorphisms F B F^T g, B over the skew basis of size F.cols().
std::vector<Mat> skew_block_endos(const Mat& F, const Mat& g) {
  std::vector<Mat> out;
  for (const Mat& B : skew_basis(static_cast<int>(F.cols()))) out.push_back(F * B * F.transpose() * g);
  return out;
}

}  // namespace

LiftSetup make_lift_setup(const SubmersionSpec& phi, const Vec& center, const FDConfig& cfg) {
  LiftSetup L;
  L.phi = phi;
  L.H = horizontal_distribution(phi, cfg);
  L.od = make_od_chart(phi.source, L.H, center);
  L.ln = std::make_shared<LMChart>(phi.target);
  L.center = center;
  return L;
}

Frame lift_map(const LiftSetup& L, const Frame& u, const FDConfig& cfg) {
  if (od_membership_residual(*L.phi.source, L.H, u) > cfg.tol_fd1)
    throw PreconditionError("lift_map: frame is not adapted to the horizontal distribution");
  return {L.phi(u.base), jacobian(L.phi, u.base, cfg) * u.E.leftCols(L.phi.k())};
}

Vec lift_in_charts(const LiftSetup& L, const Vec& q, const FDConfig& cfg) {
  const Frame u = L.od->decode(q);
  const Frame w{L.phi(u.base), jacobian(L.phi, u.base, cfg) * u.E.leftCols(L.phi.k())};
  return L.ln->encode(w);
}

FrameTangent lift_differential_fd(const LiftSetup& L, const FrameTangent& t, const FDConfig& cfg) {
  const Vec q = L.od->encode(t.at, cfg);
  if (L.od->tangency_residual(q, t, cfg) > cfg.tol_fd1)
    throw PreconditionError("lift_differential_fd: vector is not tangent to O(H)");
  const Vec qdot = L.od->chart_components(q, t, cfg);
  const Frame w = lift_map(L, t.at, cfg);
  return FrameTangent::from_ambient(w, chart_directional(L, q, qdot, cfg));
}

const char* to_string(LiftCase c) {
  switch (c) {
    case LiftCase::HorizontalOfH: return "X^{h,phi}, X in H";
    case LiftCase::HorizontalOfV: return "Y^{h,phi}, Y in V";
    case LiftCase::Vertical: return "P*, P in g(TM)";
  }
  return "?";
}

FrameTangent lift_input_tangent(const LiftSetup& L, const LiftInput& in, const Frame& u, const FDConfig& cfg) {
  if (in.kase == LiftCase::Vertical) return fundamental_vertical(in.P, u);
  return adapted_horizontal_lift(*L.phi.source, L.H, {u.base, in.v}, u, cfg);
}

FrameTangent lift_differential_formula(const LiftSetup& L, const LiftInput& in, const Frame& u, FormulaVariant variant,
                                       const FDConfig& cfg) {
  const SubmersionSpec& phi = L.phi;
  const Vec& x = u.base;
  const Frame w = lift_map(L, u, cfg);
  const Mat J = jacobian(phi, x, cfg);
  const Mat PH = splitting_projectors(phi, x, cfg).horizontal;
  switch (in.kase) {
    case LiftCase::HorizontalOfH:
      return horizontal_lift_frame(*phi.target, {w.base, J * in.v}, w, cfg) +
             fundamental_vertical(pushforward_endo(phi, x, Pi_X_endo(phi, x, in.v, cfg), cfg), w);
    case LiftCase::HorizontalOfV: {
      const Mat A = pushforward_endo(phi, x, A_Y_endo(phi, x, in.v, cfg), cfg);
      return fundamental_vertical(variant == FormulaVariant::AsPrinted ? A : Mat(-A), w);
    }
    case LiftCase::Vertical:
      return fundamental_vertical(pushforward_endo(phi, x, PH * in.P * PH, cfg), w);
  }
  throw PreconditionError("lift_differential_formula: unknown case");
}

double lift_differential_residual(const LiftSetup& L, const LiftInput& in, const Frame& u, FormulaVariant variant,
                                  const FDConfig& cfg) {
  const FrameTangent f = lift_differential_formula(L, in, u, variant, cfg);
  const FrameTangent o = lift_differential_fd(L, lift_input_tangent(L, in, u, cfg), cfg);
  return mok_norm(*L.phi.target, f - o, cfg);
}

LiftDistributions lift_distributions(const LiftSetup& L, const Frame& u, FormulaVariant variant, const FDConfig& cfg) {
  const SubmersionSpec& phi = L.phi;
  const ChartManifold& M = *phi.source;
  const Vec& x = u.base;
  const int n = phi.n();
  const int k = phi.k();
  const Mat g = metric_eval(M, x);
  const Mat Fh = u.E.leftCols(k);
  const Mat Fv = u.E.rightCols(n - k);
  const double sign = variant == FormulaVariant::AsPrinted ? -1.0 : 1.0;
  auto hlift = [&](const Vec& v) { return adapted_horizontal_lift(M, L.H, {x, v}, u, cfg); };

  LiftDistributions out;
  for (int a = 0; a < n - k; ++a) {
    const Vec X = Fv.col(a);
    out.vertical.push_back(hlift(X) + sign * fundamental_vertical(A_Y_endo(phi, x, X, cfg), u));
  }
  for (const Mat& P : skew_block_endos(Fv, g)) out.vertical.push_back(fundamental_vertical(P, u));
  for (int a = 0; a < k; ++a) out.horizontal.push_back(hlift(W_inverse_apply(M, L.H, x, Fh.col(a), u.E, cfg)));
  for (const Mat& C : skew_block_endos(Fh, g)) {
    const Vec d = W_inverse_apply(M, L.H, x, div_bot(phi, x, C, cfg), u.E, cfg);
    out.horizontal.push_back(hlift(d) + sign * fundamental_vertical(C, u));
  }

  for (const auto& v : out.vertical) {
    const double image = mok_norm(*phi.target, lift_differential_fd(L, v, cfg), cfg);
    out.kernel_residual = std::max(out.kernel_residual, image / mok_norm(M, v, cfg));
  }
  for (const auto& v : out.vertical)
    for (const auto& h : out.horizontal) out.cross_gram = std::max(out.cross_gram, std::abs(mok_metric(M, v, h, cfg)));

  out.dim_vertical = static_cast<int>(out.vertical.size());
  out.dim_horizontal = static_cast<int>(out.horizontal.size());
  out.dim_total = L.od->dim();
  std::vector<FrameTangent> all = out.vertical;
  all.insert(all.end(), out.horizontal.begin(), out.horizontal.end());
  Mat G(all.size(), all.size());
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < all.size(); ++j) G(i, j) = mok_metric(M, all[i], all[j], cfg);
  Eigen::SelfAdjointEigenSolver<Mat> es(G);
  const double top = es.eigenvalues().cwiseAbs().maxCoeff();
  out.rank = static_cast<int>((es.eigenvalues().array() > 1e-8 * top).count());
  return out;
}

LiftConformality lift_conformality(const LiftSetup& L, const Vec& q, const FDConfig& cfg) {
  const SubmersionSpec& phi = L.phi;
  const int k = phi.k();
  const int d = L.od->dim();
  const Frame u = L.od->decode(q);
  const Frame w = lift_map(L, u, cfg);
  const Mat Jc = L.od->jacobian(q, cfg);
  const Mat G0 = Jc.transpose() * mok_gram_ambient(*phi.source, u, cfg) * Jc;
  Mat D(k + k * k, d);
  for (int j = 0; j < d; ++j) D.col(j) = chart_directional(L, q, Vec::Unit(d, j), cfg);
  const Mat G1 = D.transpose() * mok_gram_ambient(*phi.target, w, cfg) * D;
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(0.5 * (G1 + G1.transpose()), 0.5 * (G0 + G0.transpose()));
  const Vec mu = es.eigenvalues();  // ascending
  const int r = k + skew_dim(k);
  LiftConformality out;
  out.eigenvalues.assign(mu.data(), mu.data() + mu.size());
  const Vec top = mu.tail(r);
  out.Lambda = top.mean();
  out.defect = (top.array() - out.Lambda).abs().maxCoeff() / out.Lambda;
  out.kernel = d > r ? std::abs(mu(d - r - 1)) / out.Lambda : 0.0;
  return out;
}

double lift_tension_direct(const LiftSetup& L, const Vec& q, const FDConfig& cfg) {
  const TotalSpace T0(L.od, cfg);
  const TotalSpace T1(L.ln, cfg);
  const int d = L.od->dim();
  const Vec F0 = lift_in_charts(L, q, cfg);
  const int m = static_cast<int>(F0.size());
  const double h = cfg.step_h2;
  auto F = [&](const Vec& s) { return lift_in_charts(L, s, cfg); };

  Mat dF(m, d);
  for (int i = 0; i < d; ++i) {
    const Vec e = Vec::Unit(d, i);
    require_chart_stencil(*L.od, q, 2.0 * e, h);
    dF.col(i) = fd::directional(F, q, e, h);
  }
  const Mat G0inv = T0.metric(q).inverse();
  const Christoffel gam0 = christoffel(T0.manifold(), q, T0.total_cfg());
  const Christoffel gam1 = christoffel(T1.manifold(), F0, T1.total_cfg());

  Vec tau = Vec::Zero(m);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (G0inv(i, j) == 0.0) continue;
      const Vec ei = Vec::Unit(d, i);
      const Vec ej = Vec::Unit(d, j);
      const Vec d2 = (F(q + h * ei + h * ej) - F(q + h * ei - h * ej) - F(q - h * ei + h * ej) + F(q - h * ei - h * ej)) /
                     (4.0 * h * h);
      const Vec christ0 = dF * gam0.apply(ei, ej);
      const Vec christ1 = gam1.apply(dF.col(i), dF.col(j));
      tau += G0inv(i, j) * (d2 - christ0 + christ1);
    }
  }
  return std::sqrt(std::max(0.0, tau.dot(T1.metric(F0) * tau)));
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

ClassificationReport classify(const SubmersionSpec& phi, const std::vector<Vec>& points, std::uint64_t seed,
                              const FDConfig& cfg, const ClassificationThresholds& th) {
  const int fiber_dim = skew_dim(phi.k()) + skew_dim(phi.n() - phi.k());
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-0.3, 0.3);
  std::vector<Vec> fibers;
  for (std::size_t i = 0; i < points.size(); ++i) {
    Vec a(fiber_dim);
    for (int j = 0; j < fiber_dim; ++j) a(j) = U(rng);
    fibers.push_back(a);
  }

  std::vector<std::future<PointSample>> jobs;
  for (std::size_t i = 0; i < points.size(); ++i) {
    jobs.push_back(std::async(std::launch::async, [&, i]() {
      PointSample s;
      s.p = points[i];
      s.q = Vec(phi.n() + fiber_dim);
      s.q << s.p, fibers[i];
      s.dil = dilatation(phi, s.p, cfg);
      s.pi_norm = second_fundamental_form_norm(phi, s.p, cfg);
      s.fiber_sff = fiber_second_fundamental_norm(phi, s.p, cfg);
      s.h_integrability = horizontal_integrability_defect(phi, s.p, cfg);
      s.tension = std::sqrt(std::max(0.0, [&] {
        const Vec t = tension_field(phi, s.p, cfg);
        return t.dot(metric_eval(*phi.target, phi(s.p)) * t);
      }()));
      const LiftSetup L = make_lift_setup(phi, s.p, cfg);
      s.lift = lift_conformality(L, s.q, cfg);
      return s;
    }));
  }

  ClassificationReport r;
  for (auto& j : jobs) r.samples.push_back(j.get());

  auto mean_std = [](const std::vector<double>& v) {
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    return std::pair<double, double>{mean, v.size() > 1 ? std::sqrt(var / static_cast<double>(v.size() - 1)) : 0.0};
  };
  std::vector<double> lam;
  std::vector<double> Lam;
  for (const auto& s : r.samples) {
    lam.push_back(s.dil.lambda);
    Lam.push_back(s.lift.Lambda);
    r.max_defect = std::max(r.max_defect, s.dil.defect);
    r.max_pi = std::max(r.max_pi, s.pi_norm);
    r.max_fiber_sff = std::max(r.max_fiber_sff, s.fiber_sff);
    r.max_h_integrability = std::max(r.max_h_integrability, s.h_integrability);
    r.max_tension = std::max(r.max_tension, s.tension);
    r.max_lift_defect = std::max(r.max_lift_defect, s.lift.defect);
    r.max_Lambda_minus_lambda = std::max(r.max_Lambda_minus_lambda, std::abs(s.lift.Lambda - s.dil.lambda));
  }
  std::tie(r.lambda_mean, r.lambda_std) = mean_std(lam);
  std::tie(r.Lambda_mean, r.Lambda_std) = mean_std(Lam);

  r.horizontally_conformal = r.max_defect < cfg.tol_fd1;
  r.dilatation_constant = r.lambda_std < cfg.tol_fd1 * (1.0 + r.lambda_mean);
  r.totally_geodesic = r.max_pi < cfg.tol_fd2;
  r.fibers_totally_geodesic = r.max_fiber_sff < cfg.tol_fd2;
  r.H_integrable = r.max_h_integrability < cfg.tol_fd2;
  r.harmonic = r.max_tension < cfg.tol_fd2;
  r.harmonic_morphism = r.horizontally_conformal && r.harmonic;
  r.lift_conformal_predicted = r.horizontally_conformal && r.dilatation_constant && r.totally_geodesic;
  if (r.max_lift_defect < th.conformal)
    r.lift_conformal_measured = Verdict::Yes;
  else if (r.max_lift_defect > th.nonconformal)
    r.lift_conformal_measured = Verdict::No;
  else
    r.lift_conformal_measured = Verdict::Inconclusive;
  r.lift_harmonic_morphism_predicted = r.totally_geodesic && r.harmonic_morphism && r.dilatation_constant;
  return r;
}

}  // namespace framelift
