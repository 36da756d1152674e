#include "framelift/suites.hpp"

#include <Eigen/Eigenvalues>

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <string_view>

#include "framelift/lift.hpp"
#include "framelift/tangent_bundle.hpp"

namespace framelift {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// FNV-1a over the tag, so every check draws from its own stream.
std::uint64_t mix(std::uint64_t seed, std::string_view tag) {
  std::uint64_t h = 1469598103934665603ull ^ seed;
  for (unsigned char c : tag) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

class Rng {
 public:
  Rng(std::uint64_t seed, std::string_view tag) : gen_(mix(seed, tag)) {}

  Vec vec(int n, double s = 1.0) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = s * n01_(gen_);
    return v;
  }
  Mat mat(int r, int c, double s = 1.0) {
    Mat A(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) A(i, j) = s * n01_(gen_);
    return A;
  }
  Mat skew(int n, double s = 1.0) {
    const Mat A = mat(n, n, s);
    return 0.5 * (A - A.transpose());
  }
  Vec uniform(int n, double a, double b) {
    std::uniform_real_distribution<double> U(a, b);
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = U(gen_);
    return v;
  }
  std::uint64_t next() { return gen_(); }

 private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> n01_{0.0, 1.0};
};

// a + B x + (c.x) d, with its exact Jacobian.
VectorField random_field(Rng& r, int n) {
  const Vec a = r.vec(n);
  const Mat B = r.mat(n, n, 0.5);
  const Vec c = r.vec(n, 0.3);
  const Vec d = r.vec(n, 0.3);
  return VectorField([a, B, c, d](const Vec& x) { return Vec(a + B * x + c.dot(x) * d); },
                     [B, c, d](const Vec&) { return Mat(B + d * c.transpose()); });
}

double gnorm(const Mat& g, const Vec& v) { return std::sqrt(std::max(0.0, v.dot(g * v))); }

double worst(double m, double v) { return (std::isnan(m) || std::isnan(v)) ? kNaN : std::max(m, v); }

template <class F>
double max_over(const std::vector<Vec>& points, F&& f) {
  double m = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) m = worst(m, f(static_cast<int>(i), points[i]));
  return m;
}

class Recorder {
 public:
  Recorder(std::string subject, std::string suite) : subject_(std::move(subject)), suite_(std::move(suite)) {}

  // f returns the largest residual over its samples; exceptions become NaN residuals.
  void check(const std::string& name, const std::string& anchor, double tol, Bound b, int samples,
             const std::function<double()>& f, bool asserted = true) {
    CheckReport r;
    r.subject = subject_;
    r.suite = suite_;
    r.check = name;
    r.anchor = anchor;
    r.tolerance = tol;
    r.bound = b;
    r.samples = samples;
    r.asserted = asserted;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      r.residual = f();
    } catch (const std::exception& e) {
      r.residual = kNaN;
      r.note = e.what();
    }
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    r.status = asserted ? (within(r.residual, tol, b) ? Status::Pass : Status::Fail) : Status::Audit;
    out_.push_back(std::move(r));
  }
  void audit(const std::string& name, const std::string& anchor, double tol, int samples,
             const std::function<double()>& f) {
    check(name, anchor, tol, Bound::Below, samples, f, false);
  }
  // Expected-zero or expected-nonzero, depending on the flag.
  void flag(const std::string& name, const std::string& anchor, bool expect_zero, double tol, int samples,
            const std::function<double()>& f) {
    if (expect_zero)
      check(name, anchor, tol, Bound::Below, samples, f);
    else
      check(name + " (nonzero)", anchor, kNonzeroFloor, Bound::Above, samples, f);
  }
  CheckReport& last() { return out_.back(); }
  std::vector<CheckReport> take() { return std::move(out_); }

 private:
  std::string subject_;
  std::string suite_;
  std::vector<CheckReport> out_;
};

int count(const std::vector<Vec>& points) { return static_cast<int>(points.size()); }

// An invertible, non-orthonormal frame near the reference frame.
Frame random_frame(const ChartManifold& M, const Vec& p, Rng& r) {
  const int n = M.dim();
  return {p, reference_frame(M, p) * (Mat::Identity(n, n) + 0.3 * r.mat(n, n))};
}

// A point of O(H^phi) over p with seeded fiber coordinates.
Vec od_point(const LiftSetup& L, const Vec& p, Rng& r) {
  const int n = static_cast<int>(p.size());
  Vec q(L.od->dim());
  q << p, r.uniform(L.od->dim() - n, -0.3, 0.3);
  return q;
}

Mat skew_block(const Mat& F, const Mat& g, Rng& r) {
  if (F.cols() == 0) return Mat::Zero(g.rows(), g.cols());
  return F * r.skew(static_cast<int>(F.cols())) * F.transpose() * g;
}

}  // namespace

// --- core -------------------------------------------------------------------------------------

std::vector<CheckReport> core_checks(const ChartManifold& M, const std::string& subject,
                                     const std::vector<Vec>& points, std::uint64_t seed, const FDConfig& cfg,
                                     std::optional<double> sectional) {
  Recorder rec(subject, "core");
  const int n = M.dim();
  const int N = count(points);

  rec.check("christoffel symmetry", "Gamma^k_ij = Gamma^k_ji", cfg.tol_fd1, Bound::Below, N, [&] {
    return max_over(points, [&](int, const Vec& p) {
      const Christoffel G = christoffel(M, p, cfg);
      double m = 0.0;
      for (const Mat& U : G.upper()) m = std::max(m, (U - U.transpose()).cwiseAbs().maxCoeff());
      return m;
    });
  });

  rec.check("metric compatibility", "X g(Y,Z) = g(nabla_X Y, Z) + g(Y, nabla_X Z)", cfg.tol_fd1, Bound::Below, N,
            [&] {
              Rng r(seed, "core.compat");
              return max_over(points, [&](int, const Vec& p) {
                const Vec X = r.vec(n);
                const VectorField Y = random_field(r, n);
                const VectorField Z = random_field(r, n);
                const double lhs = fd::directional(
                    [&](const Vec& x) { return Y(x).dot(metric_eval(M, x) * Z(x)); }, p, X, cfg.step_h);
                const Mat g = metric_eval(M, p);
                const double rhs = covariant_derivative(M, p, X, Y, cfg).dot(g * Z(p)) +
                                   Y(p).dot(g * covariant_derivative(M, p, X, Z, cfg));
                return std::abs(lhs - rhs);
              });
            });

  rec.check("torsion free", "nabla_X Y - nabla_Y X = [X,Y]", cfg.tol_fd1, Bound::Below, N, [&] {
    Rng r(seed, "core.torsion");
    return max_over(points, [&](int, const Vec& p) {
      const VectorField X = random_field(r, n);
      const VectorField Y = random_field(r, n);
      const Vec T = covariant_derivative(M, X, Y, p, cfg) - covariant_derivative(M, Y, X, p, cfg) -
                    lie_bracket(M, X, Y, p, cfg);
      return gnorm(metric_eval(M, p), T);
    });
  });

  rec.check("first Bianchi", "R(X,Y)Z + R(Y,Z)X + R(Z,X)Y = 0", cfg.tol_fd1, Bound::Below, N, [&] {
    Rng r(seed, "core.bianchi");
    return max_over(points, [&](int, const Vec& p) {
      const Riemann R = riemann(M, p, cfg);
      const Vec X = r.vec(n), Y = r.vec(n), Z = r.vec(n);
      return gnorm(metric_eval(M, p), R.apply(X, Y, Z) + R.apply(Y, Z, X) + R.apply(Z, X, Y));
    });
  });

  if (M.has_exact_derivative()) {
    rec.check("metric derivative consistency", "exact d_k g = central difference of g", cfg.tol_fd1, Bound::Below, N,
              [&] {
                return max_over(points, [&](int, const Vec& p) {
                  const std::vector<Mat> dg = M.metric_derivative(p, cfg);
                  double m = 0.0;
                  for (int k = 0; k < n; ++k) {
                    const Mat fdk = fd::partial([&](const Vec& x) { return M.metric_raw(x); }, p, k, cfg.step_h);
                    m = std::max(m, (dg[k] - fdk).cwiseAbs().maxCoeff());
                  }
                  return m;
                });
              });
  }

  rec.check("endomorphism inner product basis independence", "<P|Q> = sum_i g(P e_i, Q e_i) for any orthonormal e",
            cfg.tol_exact, Bound::Below, N, [&] {
              Rng r(seed, "core.endo");
              return max_over(points, [&](int, const Vec& p) {
                const Mat g = metric_eval(M, p);
                const Mat P = r.mat(n, n), Q = r.mat(n, n);
                const Mat e1 = gram_schmidt(g, Mat::Identity(n, n));
                const Mat e2 = gram_schmidt(g, Mat(r.mat(n, n) + 3.0 * Mat::Identity(n, n)));
                const double a = endo_inner(g, P, Q, e1);
                const double b = endo_inner(g, P, Q, e2);
                return std::abs(a - b) / (1.0 + std::abs(a));
              });
            });

  if (sectional && n >= 2) {
    rec.check("sectional curvature", "K(X,Y) = " + std::to_string(*sectional), cfg.tol_fd2, Bound::Below, N, [&] {
      Rng r(seed, "core.sectional");
      return max_over(points, [&](int, const Vec& p) {
        return std::abs(sectional_curvature(M, p, r.vec(n), r.vec(n), cfg) - *sectional);
      });
    });
  }
  return rec.take();
}

// --- frame ------------------------------------------------------------------------------------

std::vector<CheckReport> bracket_checks(std::shared_ptr<const ChartManifold> M, const std::string& subject,
                                        const std::vector<Vec>& points, std::uint64_t seed, const FDConfig& cfg) {
  Recorder rec(subject, "frame");
  auto chart = std::make_shared<LMChart>(M);
  const TotalSpace T(chart, cfg);
  Rng r(seed, "frame.bracket");
  std::vector<Vec> qs;
  std::vector<ConnectionInputs> ins;
  for (const Vec& p : points) {
    qs.push_back(chart->encode(random_frame(*M, p, r)));
    ins.push_back(random_connection_inputs(M, r.next(), false));
  }
  struct Row {
    BracketCase c;
    FormulaVariant v;
    const char* anchor;
  };
  const Row rows[] = {
      {BracketCase::HH, FormulaVariant::AsPrinted, "[X^h,Y^h] = [X,Y]^h - R(X,Y)*"},
      {BracketCase::HV, FormulaVariant::AsPrinted, "[X^h,Q*] = -(nabla_X Q)*"},
      {BracketCase::HV, FormulaVariant::Derived, "[X^h,Q*] = (nabla_X Q)*"},
      {BracketCase::VV, FormulaVariant::AsPrinted, "[P*,Q*] = -[P,Q]*"},
  };
  for (const Row& row : rows) {
    const bool asserted = row.v == FormulaVariant::AsPrinted;
    std::string name = std::string("L(M) bracket ") + to_string(row.c);
    if (!asserted) name += " (derived)";
    rec.check(name, row.anchor, cfg.tol_fd2, Bound::Below, count(points), [&] {
      double m = 0.0;
      for (std::size_t i = 0; i < qs.size(); ++i) m = worst(m, bracket_residual(T, row.c, ins[i], qs[i], row.v));
      return m;
    }, asserted);
  }
  return rec.take();
}

namespace {

std::string connection_anchor(Bundle b, const std::string& kase, const std::string& variant) {
  const bool printed = variant == to_string(FormulaVariant::AsPrinted);
  if (kase == "hh") return "nabla_{X^h} Y^h = (nabla_X Y)^h - 1/2 R(X,Y)*";
  if (kase == "hv") return printed ? "nabla_{X^h} Q* = 1/2 R_Q(X)^h" : "nabla_{X^h} Q* = 1/2 R_Q(X)^h + (nabla_X Q)*";
  if (kase == "vh") return printed ? "nabla_{P*} Y^h = 1/2 R_P(Y)^h + (nabla_Y P)*" : "nabla_{P*} Y^h = 1/2 R_P(Y)^h";
  return b == Bundle::LM ? "nabla_{P*} Q* = (QP)*" : "nabla_{P*} Q* = -1/2 [P,Q]*";
}

}  // namespace

std::vector<CheckReport> connection_checks(std::shared_ptr<const ChartManifold> M, Bundle bundle,
                                           const std::string& subject, const std::vector<Vec>& points,
                                           std::uint64_t seed, const FDConfig& cfg) {
  Recorder rec(subject, "frame");
  const int n = M->dim();
  std::shared_ptr<const BundleChart> chart;
  if (bundle == Bundle::LM)
    chart = std::make_shared<LMChart>(M);
  else
    chart = std::make_shared<OMChart>(M);
  const TotalSpace T(chart, cfg);
  Rng r(seed, bundle == Bundle::LM ? "frame.lm" : "frame.om");

  // Rows are computed once per point and aggregated per (case, variant).
  std::map<std::pair<std::string, std::string>, std::pair<double, bool>> agg;
  std::vector<std::pair<std::string, std::string>> order;
  std::string error;
  const auto t0 = std::chrono::steady_clock::now();
  for (const Vec& p : points) {
    Vec q;
    if (bundle == Bundle::LM) {
      q = std::static_pointer_cast<const LMChart>(chart)->encode(random_frame(*M, p, r));
    } else {
      q = Vec(chart->dim());
      q << p, r.uniform(skew_dim(n), -0.3, 0.3);
    }
    const ConnectionInputs in = random_connection_inputs(M, r.next(), bundle == Bundle::OM);
    try {
      for (const AuditRow& row : connection_audit(T, bundle, in, q)) {
        const auto key = std::make_pair(row.kase, row.variant);
        if (!agg.count(key)) order.push_back(key);
        auto& slot = agg[key];
        slot.first = worst(slot.first, row.residual);
        slot.second = row.asserted;
      }
    } catch (const std::exception& e) {
      error = e.what();
    }
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  const std::string prefix = std::string(to_string(bundle)) + " connection ";
  if (!error.empty() && order.empty()) {
    rec.check(prefix + "oracle", "total-space Levi-Civita oracle", cfg.tol_fd2, Bound::Below, count(points),
              [&]() -> double { throw GeometryError(error); });
    return rec.take();
  }
  for (const auto& key : order) {
    const auto& [residual, asserted] = agg[key];
    std::string name = prefix + key.first;
    if (!asserted) name += " (" + key.second + ")";
    const double value = error.empty() ? residual : kNaN;
    rec.check(name, connection_anchor(bundle, key.first, key.second), cfg.tol_fd2, Bound::Below, count(points),
              [value] { return value; }, asserted);
    rec.last().wall_ms = ms / static_cast<double>(order.size());
    if (!error.empty()) rec.last().note = error;
  }
  return rec.take();
}

// --- tangent ----------------------------------------------------------------------------------

std::vector<CheckReport> tangent_checks(const SubmersionSpec& phi, const std::string& subject,
                                        const std::vector<Vec>& points, std::uint64_t seed, const FDConfig& cfg) {
  Recorder rec(subject, "tangent");
  const ChartManifold& M = *phi.source;
  const int n = phi.n();
  const int k = phi.k();
  const int N = count(points);

  rec.check("K of vertical lift", "K(X^v) = X", cfg.tol_exact, Bound::Below, N, [&] {
    Rng r(seed, "tangent.Kv");
    return max_over(points, [&](int, const Vec& p) {
      const Vec X = r.vec(n);
      const TMPoint Z{p, r.vec(n)};
      return gnorm(metric_eval(M, p), connection_map_K(M, tm_vertical_lift({p, X}, Z), cfg) - X);
    });
  });
  rec.check("K of horizontal lift", "K(X^h) = 0", cfg.tol_exact, Bound::Below, N, [&] {
    Rng r(seed, "tangent.Kh");
    return max_over(points, [&](int, const Vec& p) {
      const TMPoint Z{p, r.vec(n)};
      return gnorm(metric_eval(M, p), connection_map_K(M, tm_horizontal_lift(M, {p, r.vec(n)}, Z, cfg), cfg));
    });
  });
  rec.check("K of a section differential", "K(dZ(X)) = nabla_X Z", cfg.tol_exact, Bound::Below, N, [&] {
    Rng r(seed, "tangent.Ksection");
    return max_over(points, [&](int, const Vec& p) {
      const VectorField Zf = random_field(r, n);
      const Vec X = r.vec(n);
      const TMTangent t{{p, Zf(p)}, X, Zf.jacobian(p) * X};
      return gnorm(metric_eval(M, p), connection_map_K(M, t, cfg) - covariant_derivative(M, p, X, Zf, cfg));
    });
  });
  rec.check("Sasaki orthogonality", "g_TM(X^h, Y^v) = 0", cfg.tol_exact, Bound::Below, N, [&] {
    Rng r(seed, "tangent.sasaki");
    return max_over(points, [&](int, const Vec& p) {
      const TMPoint Z{p, r.vec(n)};
      const TMTangent h = tm_horizontal_lift(M, {p, r.vec(n)}, Z, cfg);
      const TMTangent v = tm_vertical_lift({p, r.vec(n)}, Z);
      return std::abs(sasaki_mok_tm(M, h, v, cfg));
    });
  });
  rec.check("frame projection lifts", "pi^i_* X^h = X^{h,TM}, pi^i_* P* = P(u_i)^v", cfg.tol_exact, Bound::Below, N,
            [&] {
              Rng r(seed, "tangent.pi_lemma");
              return max_over(points, [&](int, const Vec& p) {
                const Frame u = random_frame(M, p, r);
                const Vec X = r.vec(n);
                const Mat P = r.mat(n, n);
                double m = 0.0;
                for (int i = 0; i < n; ++i) m = worst(m, pi_i_lemma_residual(M, i, u, X, P, cfg));
                return m;
              });
            });
  rec.check("frame projection Riemannian submersion", "pi^i : (L(M), Mok) -> (TM, Sasaki) Riemannian submersion",
            cfg.tol_fd1, Bound::Below, N, [&] {
              Rng r(seed, "tangent.pi_sub");
              return max_over(points, [&](int, const Vec& p) {
                const Frame u = random_frame(M, p, r);
                double m = 0.0;
                for (int i = 0; i < n; ++i) m = worst(m, pi_i_submersion_residual(M, i, u, cfg));
                return m;
              });
            });

  for (LiftKind kind : {LiftKind::Vertical, LiftKind::Horizontal}) {
    const bool vert = kind == LiftKind::Vertical;
    rec.check(std::string("second differential on ") + to_string(kind) + " lifts",
              vert ? "phi_** X^v = (phi_* X)^v" : "phi_** X^h = (phi_* X)^h + Pi(X,Z)^v", cfg.tol_fd2, Bound::Below,
              N, [&] {
                Rng r(seed, vert ? "tangent.phi2v" : "tangent.phi2h");
                return max_over(points, [&](int, const Vec& p) {
                  const TangentVector X{p, r.vec(n)};
                  const TMPoint Z{p, r.vec(n)};
                  return phi_second_differential_residual(phi, kind, X, Z, cfg);
                });
              });
  }

  // The distributions are computed once per point and reported through several rows.
  std::vector<TMDistributions> dv, dc;
  std::string error;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    Rng r(seed, "tangent.kn");
    for (const Vec& p : points) {
      const TMPoint Z{p, r.vec(n)};
      dv.push_back(thm_kn_distributions(phi, Z, Extension::Vertical, cfg));
      dc.push_back(thm_kn_distributions(phi, Z, Extension::Constant, cfg));
    }
  } catch (const std::exception& e) {
    error = e.what();
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  auto over = [&](const std::vector<TMDistributions>& ds, auto&& f) {
    if (!error.empty()) throw GeometryError(error);
    double m = 0.0;
    for (const auto& d : ds) m = worst(m, f(d));
    return m;
  };
  rec.check("V^Phi in kernel of Phi_*", "Phi_*(X^v), Phi_*(X^h + ((nabla_Z X~)^T)^v) = 0, X vertical", cfg.tol_fd2,
            Bound::Below, N, [&] { return over(dv, [](const auto& d) { return d.kernel_residual; }); });
  rec.last().wall_ms = ms;
  rec.check("V^Phi orthogonal to H^Phi", "g_TM(V^Phi, H^Phi) = 0", cfg.tol_fd1, Bound::Below, N,
            [&] { return over(dv, [](const auto& d) { return d.cross_gram; }); });
  rec.check("V^Phi and H^Phi dimensions", "dim V^Phi = 2(n-k), dim H^Phi = 2k", 0.5, Bound::Below, N, [&] {
    return over(dv, [&](const auto& d) {
      return std::abs(static_cast<double>(d.vertical.size()) - 2.0 * (n - k)) +
             std::abs(static_cast<double>(d.horizontal.size()) - 2.0 * k);
    });
  });
  rec.audit("H^Phi display in the complement", "displayed H^Phi vectors lie in (V^Phi)^perp", cfg.tol_fd1, N,
            [&] { return over(dv, [](const auto& d) { return d.display_residual; }); });
  rec.audit("V^Phi kernel (constant extension)", "Phi_*(X^h + ((nabla_Z X)^T)^v) = 0, X constant", cfg.tol_fd2, N,
            [&] { return over(dc, [](const auto& d) { return d.kernel_residual; }); });
  return rec.take();
}

// --- adapted ----------------------------------------------------------------------------------

std::vector<CheckReport> adapted_checks(const SubmersionSpec& phi, const std::string& subject,
                                        const std::vector<Vec>& points, std::uint64_t seed, const FDConfig& cfg,
                                        bool expected_integrable, int od_points) {
  Recorder rec(subject, "adapted");
  const ChartManifold& M = *phi.source;
  const int n = phi.n();
  const int k = phi.k();
  const int N = count(points);
  const DistributionSpec D = horizontal_distribution(phi, cfg);
  const FDConfig pcfg = projector_cfg(D, cfg);

  rec.check("projector invariants", "Pi^2 = Pi, Pi g-self-adjoint, tr Pi = rank D", cfg.tol_fd1, Bound::Below, N, [&] {
    return max_over(points, [&](int, const Vec& p) { return projector_residual(M, D, p).max(); });
  });
  rec.check("reductive splitting", "[g, m] in m", cfg.tol_exact, Bound::Below, N,
            [&] { return reductive_residual(n, k, mix(seed, "adapted.reductive"), N); });
  rec.check("block decomposition", "P = P_D + P_perp + P' + P'', skew P = g-part + m-part", cfg.tol_exact,
            Bound::Below, N, [&] {
              Rng r(seed, "adapted.blocks");
              return max_over(points, [&](int, const Vec& p) {
                const Mat g = metric_eval(M, p);
                const Mat P = r.mat(n, n);
                const Mat S = reference_frame(M, p) * r.skew(n) * reference_frame(M, p).transpose() * g;
                const double a = (block_decompose(P, D, p).reassemble() - P).cwiseAbs().maxCoeff();
                const double b =
                    (m_projection(M, S, D, p, cfg) + g_projection(M, S, D, p, cfg) - S).cwiseAbs().maxCoeff();
                return std::max(a, b);
              });
            });

  rec.check("adapted connection preserves D", "(nabla^D_X Y)^perp = 0 for Y in D", cfg.tol_fd1, Bound::Below, N, [&] {
    Rng r(seed, "adapted.preserve");
    return max_over(points, [&](int, const Vec& p) {
      const VectorField Y0 = random_field(r, n);
      const VectorField Y([&D, Y0](const Vec& x) { return Vec(D.at(x) * Y0(x)); });
      const Vec v = D.complement_at(p) * nabla_D(M, D, p, r.vec(n), Y, cfg);
      return gnorm(metric_eval(M, p), v);
    });
  });
  rec.check("adapted connection metric", "X g(Y,Z) = g(nabla^D_X Y, Z) + g(Y, nabla^D_X Z)", cfg.tol_fd1,
            Bound::Below, N, [&] {
              Rng r(seed, "adapted.metric");
              return max_over(points, [&](int, const Vec& p) {
                const Vec X = r.vec(n);
                const VectorField Y = random_field(r, n);
                const VectorField Z = random_field(r, n);
                const double lhs = fd::directional(
                    [&](const Vec& x) { return Y(x).dot(metric_eval(M, x) * Z(x)); }, p, X, cfg.step_h);
                const Mat g = metric_eval(M, p);
                const double rhs =
                    nabla_D(M, D, p, X, Y, cfg).dot(g * Z(p)) + Y(p).dot(g * nabla_D(M, D, p, X, Z, cfg));
                return std::abs(lhs - rhs);
              });
            });
  rec.check("S exchanges D and D-perp", "S_X D in D-perp, S_X D-perp in D", cfg.tol_fd1, Bound::Below, N, [&] {
    Rng r(seed, "adapted.swap");
    return max_over(points, [&](int, const Vec& p) {
      const Mat S = S_endo(M, D, p, r.vec(n), cfg);
      const Mat P = D.at(p);
      const Mat Q = D.complement_at(p);
      return std::max((P * S * P).cwiseAbs().maxCoeff(), (Q * S * Q).cwiseAbs().maxCoeff());
    });
  });
  rec.check("S tensorial", "S_X Y = nabla_X Y - nabla^D_X Y depends on Y(p) only", cfg.tol_fd1, Bound::Below, N, [&] {
    Rng r(seed, "adapted.S");
    return max_over(points, [&](int, const Vec& p) {
      const Vec X = r.vec(n);
      const VectorField Y = random_field(r, n);
      const Vec field = covariant_derivative(M, p, X, Y, cfg) - nabla_D(M, D, p, X, Y, cfg);
      return gnorm(metric_eval(M, p), field - S_tensor(M, D, p, X, Y(p), cfg));
    });
  });
  rec.check("adapted torsion", "T^D(X,Y) = nabla^D_X Y - nabla^D_Y X - [X,Y]", cfg.tol_fd1, Bound::Below, N, [&] {
    Rng r(seed, "adapted.torsion");
    return max_over(points, [&](int, const Vec& p) {
      const VectorField X = random_field(r, n);
      const VectorField Y = random_field(r, n);
      const Vec field = nabla_D(M, D, p, X(p), Y, cfg) - nabla_D(M, D, p, Y(p), X, cfg) - lie_bracket(M, X, Y, p, cfg);
      return gnorm(metric_eval(M, p), field - torsion_TD(M, D, p, X(p), Y(p), cfg));
    });
  });
  if (k >= 2) {
    rec.flag("integrability of D", "T^D(X,Y) = -[X,Y]^perp on D", expected_integrable, cfg.tol_fd2, N, [&] {
      return max_over(points, [&](int, const Vec& p) {
        const Mat F = horizontal_onb(phi, p, cfg);
        const Mat g = metric_eval(M, p);
        double m = 0.0;
        for (int a = 0; a < k; ++a)
          for (int b = a + 1; b < k; ++b) m = std::max(m, gnorm(g, torsion_TD(M, D, p, F.col(a), F.col(b), cfg)));
        return m;
      });
    });
  }
  for (DerivativeConvention conv : {DerivativeConvention::Standard, DerivativeConvention::AsPrinted}) {
    const bool standard = conv == DerivativeConvention::Standard;
    auto body = [&, conv] {
      Rng r(seed, "adapted.curvature");
      return max_over(points, [&](int, const Vec& p) {
        return curvature_relation_residual(M, D, p, r.vec(n), r.vec(n), r.vec(n), conv, pcfg);
      });
    };
    const std::string anchor = "R = R^D + (nabla^D_X S)_Y - (nabla^D_Y S)_X + S_{T^D(X,Y)} + [S_X, S_Y]";
    if (standard)
      rec.check("curvature relation", anchor, cfg.tol_fd2, Bound::Below, N, body);
    else
      rec.audit(std::string("curvature relation (") + to_string(conv) + " derivative)", anchor, cfg.tol_fd2, N, body);
  }

  // O(D) quantities at frames of O(H^phi).
  std::vector<LiftSetup> setups;
  std::vector<Frame> frames;
  {
    Rng r(seed, "adapted.frames");
    for (const Vec& p : points) {
      setups.push_back(make_lift_setup(phi, p, cfg));
      frames.push_back(setups.back().od->decode(od_point(setups.back(), p, r)));
    }
  }
  rec.check("W positive definite", "g(X, W X) >= g(X, X)", cfg.tol_exact, Bound::Below, N, [&] {
    return max_over(points, [&](int i, const Vec& p) {
      const Mat g = metric_eval(M, p);
      const Mat G = g * W_endo(M, D, p, frames[i].E, cfg);
      Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(0.5 * (G + G.transpose()), g);
      return std::max(0.0, 1.0 - es.eigenvalues().minCoeff());
    });
  });
  rec.check("W lemma", "g(X, W(Y)) = mok(X^{h,D}, Y^{h,D})", cfg.tol_fd1, Bound::Below, N, [&] {
    Rng r(seed, "adapted.W");
    return max_over(points, [&](int i, const Vec& p) {
      const Vec X = r.vec(n), Y = r.vec(n);
      const Mat g = metric_eval(M, p);
      const Mat W = W_endo(M, D, p, frames[i].E, cfg);
      const double mok = mok_metric(M, adapted_horizontal_lift(M, D, {p, X}, frames[i], cfg),
                                    adapted_horizontal_lift(M, D, {p, Y}, frames[i], cfg), cfg);
      return std::abs(X.dot(g * W * Y) - mok);
    });
  });
  rec.check("adapted horizontal lift", "X^{h,D} = X^h + (S_X)*", cfg.tol_exact, Bound::Below, N, [&] {
    Rng r(seed, "adapted.lift");
    return max_over(points, [&](int i, const Vec& p) {
      const Vec X = r.vec(n);
      const FrameTangent a = adapted_horizontal_lift(M, D, {p, X}, frames[i], cfg);
      const FrameTangent b = horizontal_lift_frame(M, {p, X}, frames[i], cfg) +
                             fundamental_vertical(S_endo(M, D, p, X, cfg), frames[i]);
      return (a.ambient() - b.ambient()).norm();
    });
  });
  rec.check("adapted horizontal lift tangency", "X^{h,D} tangent to O(D)", cfg.tol_fd1, Bound::Below, N, [&] {
    Rng r(seed, "adapted.tangency");
    return max_over(points, [&](int i, const Vec& p) {
      return od_tangency_residual(M, D, adapted_horizontal_lift(M, D, {p, r.vec(n)}, frames[i], cfg), cfg);
    });
  });

  // Candidate O(D) Levi-Civita readings, reported only.
  const int od_count = std::min(od_points, N);
  std::map<std::pair<std::string, std::string>, double> agg;
  std::vector<std::pair<std::string, std::string>> order;
  std::string error;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    Rng r(seed, "adapted.od");
    for (int i = 0; i < od_count; ++i) {
      const LiftSetup& L = setups[i];
      const TotalSpace T(L.od, cfg);
      auto od = L.od;
      const ConnectionInputs in =
          random_od_inputs(phi.source, [od](const Vec& x) { return od->reference(x); }, k, r.next());
      for (const AuditRow& row : od_connection_audit(T, D, in, od_point(L, points[i], r))) {
        const auto key = std::make_pair(row.kase, row.variant);
        if (!agg.count(key)) order.push_back(key);
        agg[key] = worst(agg[key], row.residual);
      }
    }
  } catch (const std::exception& e) {
    error = e.what();
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  std::map<std::string, int> reading;
  for (const auto& key : order) {
    const double v = error.empty() ? agg[key] : kNaN;
    const std::string name = "O(D) connection " + key.first + " reading " + std::to_string(++reading[key.first]);
    rec.audit(name, "nabla = " + key.second, cfg.tol_fd2, od_count, [v] { return v; });
    rec.last().wall_ms = ms / static_cast<double>(order.size());
  }
  if (order.empty() && !error.empty())
    rec.audit("O(D) connection", "total-space Levi-Civita oracle", cfg.tol_fd2, od_count,
              [&]() -> double { throw GeometryError(error); });
  return rec.take();
}

// --- lift -------------------------------------------------------------------------------------

std::vector<CheckReport> lift_checks(const SubmersionSpec& phi, const std::string& subject,
                                     const std::vector<Vec>& points, std::uint64_t seed, const FDConfig& cfg) {
  Recorder rec(subject, "lift");
  const ChartManifold& M = *phi.source;
  const ChartManifold& Nm = *phi.target;
  const int n = phi.n();
  const int k = phi.k();
  const int N = count(points);
  auto gN = [&](const Vec& p) { return metric_eval(Nm, phi(p)); };

  rec.check("second fundamental form symmetry", "Pi(X,Y) = Pi(Y,X)", cfg.tol_fd2, Bound::Below, N, [&] {
    Rng r(seed, "lift.pisym");
    return max_over(points, [&](int, const Vec& p) {
      const Vec X = r.vec(n), Y = r.vec(n);
      return gnorm(gN(p), second_fundamental_form(phi, p, X, Y, cfg) - second_fundamental_form(phi, p, Y, X, cfg));
    });
  });
  rec.check("second fundamental form tensorial", "nabla^phi_X phi_* Y - phi_*(nabla_X Y) = Pi(X(p), Y(p))",
            cfg.tol_fd2, Bound::Below, N, [&] {
              Rng r(seed, "lift.pifield");
              return max_over(points, [&](int, const Vec& p) {
                const VectorField X = random_field(r, n);
                const VectorField Y = random_field(r, n);
                return gnorm(gN(p), second_fundamental_form_fields(phi, p, X, Y, cfg) -
                                        second_fundamental_form(phi, p, X(p), Y(p), cfg));
              });
            });
  if (n > k) {
    for (FormulaVariant v : {FormulaVariant::AsPrinted, FormulaVariant::Derived}) {
      const bool printed = v == FormulaVariant::AsPrinted;
      rec.check(printed ? "A identity" : "A identity (derived sign)",
                printed ? "phi_* A_Y(X) = Pi(X,Y), X horizontal, Y vertical"
                        : "phi_* A_Y(X) = -Pi(X,Y), X horizontal, Y vertical",
                cfg.tol_fd2, Bound::Below, N, [&, v] {
                  Rng r(seed, "lift.A");
                  return max_over(points, [&](int, const Vec& p) {
                    const Vec X = horizontal_onb(phi, p, cfg) * r.vec(k);
                    const Vec Y = vertical_onb(phi, p, cfg) * r.vec(n - k);
                    return a_identity_residual(phi, p, X, Y, v, cfg);
                  });
                }, printed);
    }
  }
  rec.check("Pi_X displays agree", "phi_*^{-1}(nabla^phi_X phi_* Y) - (nabla_X Y)^T = (Pi)_X Y", cfg.tol_fd2,
            Bound::Below, N, [&] {
              Rng r(seed, "lift.PiX");
              return max_over(points, [&](int, const Vec& p) {
                const Mat F = horizontal_onb(phi, p, cfg);
                const Vec X = F * r.vec(k), Y = F * r.vec(k);
                return gnorm(metric_eval(M, p), Pi_X_endo(phi, p, X, cfg) * Y - Pi_X_alternative(phi, p, X, Y, cfg));
              });
            });
  if (n > k) {
    rec.check("divergence lemma", "<A_X|C> = -g(X, div_perp C), X vertical, C in End(H)", cfg.tol_fd2, Bound::Below, N,
              [&] {
                Rng r(seed, "lift.div");
                return max_over(points, [&](int, const Vec& p) {
                  const Mat F = horizontal_onb(phi, p, cfg);
                  const Mat C = F * r.mat(k, k) * F.transpose() * metric_eval(M, p);
                  return div_lemma_residual(phi, p, vertical_onb(phi, p, cfg) * r.vec(n - k), C, cfg);
                });
              });
  }
  rec.check("divergence tensorial", "div_perp C from C(p) = div_perp of the field C", cfg.tol_fd2, Bound::Below, N, [&] {
    Rng r(seed, "lift.divfield");
    return max_over(points, [&](int, const Vec& p) {
      const Mat F = horizontal_onb(phi, p, cfg);
      const Mat C0 = F * r.mat(k, k) * F.transpose() * metric_eval(M, p);
      const EndomorphismField C = [&phi, &cfg, C0](const Vec& x) {
        const Mat PH = splitting_projectors(phi, x, cfg).horizontal;
        return Mat(PH * C0 * PH);
      };
      return gnorm(metric_eval(M, p), div_bot(phi, p, C0, cfg) - div_bot_field(phi, p, C, cfg));
    });
  });
  rec.check("pushforward multiplicative", "phi_*(P Q) = phi_* P phi_* Q on End(H)", cfg.tol_fd1, Bound::Below, N, [&] {
    Rng r(seed, "lift.push");
    return max_over(points, [&](int, const Vec& p) {
      const Mat F = horizontal_onb(phi, p, cfg);
      const Mat g = metric_eval(M, p);
      const Mat P = F * r.mat(k, k) * F.transpose() * g;
      const Mat Q = F * r.mat(k, k) * F.transpose() * g;
      return (pushforward_endo(phi, p, P * Q, cfg) - pushforward_endo(phi, p, P, cfg) * pushforward_endo(phi, p, Q, cfg))
          .cwiseAbs()
          .maxCoeff();
    });
  });

  // Lift setups and frames shared by the remaining rows.
  std::vector<LiftSetup> setups;
  std::vector<Frame> frames;
  {
    Rng r(seed, "lift.frames");
    for (const Vec& p : points) {
      setups.push_back(make_lift_setup(phi, p, cfg));
      frames.push_back(setups.back().od->decode(od_point(setups.back(), p, r)));
    }
  }
  rec.check("lift of frames", "g_N(phi_* u_a, phi_* u_b) = lambda delta_ab", cfg.tol_fd1, Bound::Below, N, [&] {
    return max_over(points, [&](int i, const Vec& p) {
      const Frame w = lift_map(setups[i], frames[i], cfg);
      const double lambda = dilatation(phi, p, cfg).lambda;
      return (w.E.transpose() * gN(p) * w.E - lambda * Mat::Identity(k, k)).cwiseAbs().maxCoeff();
    });
  });

  struct CaseRow {
    LiftCase kase;
    FormulaVariant v;
    const char* anchor;
  };
  std::vector<CaseRow> cases = {
      {LiftCase::HorizontalOfH, FormulaVariant::AsPrinted, "(L phi)_* X^{h,phi} = (phi_* X)^h + (phi_*(Pi)_X)*"},
      {LiftCase::Vertical, FormulaVariant::AsPrinted, "(L phi)_* P* = (phi_* P^T)*"}};
  if (n > k) {
    cases.insert(cases.begin() + 1, {LiftCase::HorizontalOfV, FormulaVariant::AsPrinted,
                                     "(L phi)_* Y^{h,phi} = (phi_* A_Y)*"});
    cases.push_back({LiftCase::HorizontalOfV, FormulaVariant::Derived, "(L phi)_* Y^{h,phi} = -(phi_* A_Y)*"});
  }
  for (const CaseRow& c : cases) {
    const bool printed = c.v == FormulaVariant::AsPrinted;
    std::string name = std::string("lift differential ") + to_string(c.kase);
    if (!printed) name += " (derived sign)";
    rec.check(name, c.anchor, cfg.tol_fd2, Bound::Below, N, [&, c] {
      Rng r(seed, std::string("lift.diff.") + to_string(c.kase));
      return max_over(points, [&](int i, const Vec& p) {
        const Frame& u = frames[i];
        const Mat Fh = u.E.leftCols(k);
        const Mat Fv = u.E.rightCols(n - k);
        const Mat g = metric_eval(M, p);
        LiftInput in;
        in.kase = c.kase;
        if (c.kase == LiftCase::HorizontalOfH) in.v = Fh * r.vec(k);
        if (c.kase == LiftCase::HorizontalOfV) in.v = Fv * r.vec(n - k);
        if (c.kase == LiftCase::Vertical) in.P = skew_block(Fh, g, r) + skew_block(Fv, g, r);
        return lift_differential_residual(setups[i], in, u, c.v, cfg);
      });
    }, printed);
  }

  for (FormulaVariant v : {FormulaVariant::AsPrinted, FormulaVariant::Derived}) {
    const bool printed = v == FormulaVariant::AsPrinted;
    std::vector<LiftDistributions> ds;
    std::string error;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      for (int i = 0; i < N; ++i) ds.push_back(lift_distributions(setups[i], frames[i], v, cfg));
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    auto over = [&](auto&& f) {
      if (!error.empty()) throw GeometryError(error);
      double m = 0.0;
      for (const auto& d : ds) m = worst(m, f(d));
      return m;
    };
    const std::string sfx = printed ? "" : " (derived sign)";
    const char* sign = printed ? "-" : "+";
    rec.check("V^{L phi} in kernel" + sfx,
              std::string("(L phi)_*(X^{h,phi} ") + sign + " A_X*) = 0, (L phi)_* P* = 0, P in so(V)", cfg.tol_fd2,
              Bound::Below, N, [&] { return over([](const auto& d) { return d.kernel_residual; }); }, printed);
    rec.last().wall_ms = ms;
    rec.check("V^{L phi} orthogonal to H^{L phi}" + sfx,
              std::string("mok(V^{L phi}, {W^{-1}(Y)^{h,phi}, W^{-1}(div_perp C)^{h,phi} ") + sign + " C*}) = 0",
              cfg.tol_fd1, Bound::Below, N, [&] { return over([](const auto& d) { return d.cross_gram; }); }, printed);
    if (printed) {
      rec.check("V^{L phi} + H^{L phi} dimension", "dim V^{L phi} + dim H^{L phi} = dim O(H), full rank", 0.5,
                Bound::Below, N, [&] {
                  return over([](const auto& d) {
                    return std::abs(static_cast<double>(d.dim_vertical + d.dim_horizontal - d.dim_total)) +
                           std::abs(static_cast<double>(d.rank - d.dim_total));
                  });
                });
    }
  }
  return rec.take();
}

// --- theorems ---------------------------------------------------------------------------------

std::vector<CheckReport> theorem_checks(const CatalogEntry& e, const std::vector<Vec>& points, std::uint64_t seed,
                                        const FDConfig& cfg) {
  Recorder rec(e.id, "theorems");
  const SubmersionSpec& phi = e.phi;
  const ExpectedFlags& f = e.expected;
  const int N = count(points);

  ClassificationReport rep;
  std::string error;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    rep = classify(phi, points, mix(seed, "theorems.classify"), cfg);
  } catch (const std::exception& ex) {
    error = ex.what();
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  auto get = [&](auto&& fn) {
    return [&, fn]() -> double {
      if (!error.empty()) throw GeometryError(error);
      return fn();
    };
  };
  auto yes = [](bool b) { return b ? 1.0 : 0.0; };

  if (f.lambda) {
    rec.check("horizontally conformal", "g_N(phi_* X, phi_* Y) = lambda g(X,Y) on H", cfg.tol_fd1, Bound::Below, N,
              get([&] { return rep.max_defect; }));
    rec.last().wall_ms = ms;
    rec.check("dilatation value", "lambda = " + std::to_string(*f.lambda), cfg.tol_fd1, Bound::Below, N,
              get([&] { return std::abs(rep.lambda_mean - *f.lambda); }));
    rec.check("dilatation constant", "std(lambda) < tol (1 + mean lambda)", cfg.tol_fd1, Bound::Below, N,
              get([&] { return rep.lambda_std / (1.0 + rep.lambda_mean); }));
  }
  if (e.factors.size() == 2) {
    rec.check("composition law", "lambda_{psi o phi} = lambda_psi lambda_phi", cfg.tol_fd1, Bound::Below, N, [&] {
      return max_over(points, [&](int, const Vec& p) {
        const double a = dilatation(e.factors[0], p, cfg).lambda;
        const double b = dilatation(e.factors[1], e.factors[0](p), cfg).lambda;
        return std::abs(dilatation(phi, p, cfg).lambda - a * b);
      });
    });
  }
  rec.flag("totally geodesic", "Pi = 0", f.totally_geodesic, cfg.tol_fd2, N, get([&] { return rep.max_pi; }));
  rec.flag("fibers totally geodesic", "(nabla_U V)^T = 0 on fibers", f.fibers_totally_geodesic, cfg.tol_fd2, N,
           get([&] { return rep.max_fiber_sff; }));
  if (phi.k() >= 2)
    rec.flag("H integrable", "[X,Y]^perp = 0 on H", f.H_integrable, cfg.tol_fd2, N,
             get([&] { return rep.max_h_integrability; }));
  rec.flag("harmonic", "tau(phi) = trace Pi = 0", f.harmonic_morphism, cfg.tol_fd2, N,
           get([&] { return rep.max_tension; }));
  rec.check("harmonic morphism", "horizontally conformal and harmonic", 0.5, Bound::Below, N,
            get([&] { return std::abs(yes(rep.harmonic_morphism) - yes(f.harmonic_morphism)); }));

  if (f.tension_norm_at_reference) {
    const double v = *f.tension_norm_at_reference;
    const Vec& p = e.reference_point;
    const Mat g = metric_eval(*phi.target, phi(p));
    rec.check("tension at reference point", "|tau| = " + std::to_string(v), kReferenceTensionTol, Bound::Below, 1,
              [&] { return std::abs(gnorm(g, tension_field(phi, p, cfg)) - v); });
    rec.check("fiber mean curvature at reference point", "|phi_* H_phi| = " + std::to_string(v), kReferenceTensionTol,
              Bound::Below, 1, [&] {
                const Vec Hv = mean_curvature_fibers(phi, p, cfg);
                return std::abs(gnorm(g, jacobian(phi, p, cfg) * Hv) - v);
              });
  }
  if (f.lambda) {
    for (TensionCoefficient c : {TensionCoefficient::SourceDimension, TensionCoefficient::TargetDimension}) {
      const bool src = c == TensionCoefficient::SourceDimension;
      auto body = [&, c] {
        return max_over(points, [&](int, const Vec& p) {
          const Mat g = metric_eval(*phi.target, phi(p));
          return gnorm(g, tension_field(phi, p, cfg) - tension_conformal(phi, p, c, cfg));
        });
      };
      const std::string anchor = src ? "tau = -(dim M - 2)/2 phi_* grad ln lambda - phi_* H_phi"
                                     : "tau = -(dim N - 2)/2 phi_* grad ln lambda - phi_* H_phi";
      if (src)
        rec.check("tension of a conformal map", anchor, cfg.tol_fd2, Bound::Below, N, body);
      else
        rec.audit("tension of a conformal map (target dimension)", anchor, cfg.tol_fd2, N, body);
    }
  }

  const char* predicate = "L phi conformal iff lambda constant and Pi = 0";
  rec.check("lift conformality predicted", predicate, 0.5, Bound::Below, N,
            get([&] { return std::abs(yes(rep.lift_conformal_predicted) - yes(f.lift_conformal)); }));
  {
    const ClassificationThresholds th;
    const bool conformal = f.lift_conformal;
    rec.check(conformal ? "lift conformality measured" : "lift conformality measured (nonconformal)",
              std::string(predicate) + ", measured on H^{L phi}", conformal ? th.conformal : th.nonconformal,
              conformal ? Bound::Below : Bound::Above, N, get([&] { return rep.max_lift_defect; }));
    CheckReport& r = rec.last();
    if (error.empty() && rep.lift_conformal_measured == Verdict::Inconclusive) {
      r.status = Status::Inconclusive;
      r.note = "lift defect between the conformal and nonconformal thresholds";
    }
    if (error.empty())
      r.note += (r.note.empty() ? "" : "; ") + std::string("measured ") + to_string(rep.lift_conformal_measured) +
                ", predicted " + (rep.lift_conformal_predicted ? "yes" : "no");
  }
  if (f.lift_conformal) {
    rec.check("lift dilatation constant", "std(Lambda) small", kLiftDilatationTol, Bound::Below, N,
              get([&] { return rep.Lambda_std; }));
    rec.check("lift dilatation along fibers", "Lambda = lambda o pi", kLiftDilatationTol, Bound::Below, N,
              get([&] { return rep.max_Lambda_minus_lambda; }));
    if (f.Lambda)
      rec.check("lift dilatation value", "Lambda = " + std::to_string(*f.Lambda), cfg.tol_fd2, Bound::Below, N,
                get([&] { return std::abs(rep.Lambda_mean - *f.Lambda); }));
  }
  rec.check("lift harmonic morphism", "L phi harmonic morphism iff L phi conformal and phi harmonic morphism", 0.5,
            Bound::Below, N, get([&] {
              const bool measured = rep.lift_conformal_measured == Verdict::Yes && rep.harmonic_morphism;
              return std::abs(yes(measured) - yes(f.lift_harmonic_morphism));
            }));
  if (e.direct_lift_tension) {
    const int m = std::min(N, 3);
    rec.check("lift tension (direct)", "tau(L phi) = 0 from total-space Christoffel symbols", kDirectTensionTol,
              Bound::Below, m, [&] {
                Rng r(seed, "theorems.direct");
                double worst_v = 0.0;
                for (int i = 0; i < m; ++i) {
                  const LiftSetup L = make_lift_setup(phi, points[i], cfg);
                  worst_v = worst(worst_v, lift_tension_direct(L, od_point(L, points[i], r), cfg));
                }
                return worst_v;
              });
  }
  return rec.take();
}

std::vector<CheckReport> run_suite(const CatalogEntry& e, const std::string& suite, int samples, std::uint64_t seed,
                                   const FDConfig& cfg) {
  const std::uint64_t s = mix(seed, e.id + "/" + suite);
  const std::vector<Vec> points = e.phi.source->sample(s, samples);
  if (suite == "core") {
    auto out = core_checks(*e.phi.source, e.id, points, s, cfg, e.source_curvature);
    auto tgt = core_checks(*e.phi.target, e.id, e.phi.target->sample(mix(s, "target"), samples), mix(s, "t"), cfg,
                           e.target_curvature);
    for (auto& r : tgt) {
      r.check = "target " + r.check;
      out.push_back(std::move(r));
    }
    return out;
  }
  if (suite == "tangent") return tangent_checks(e.phi, e.id, points, s, cfg);
  if (suite == "frame") {
    auto out = bracket_checks(e.phi.source, e.id, points, s, cfg);
    for (Bundle b : {Bundle::LM, Bundle::OM})
      for (auto& r : connection_checks(e.phi.source, b, e.id, points, mix(s, to_string(b)), cfg))
        out.push_back(std::move(r));
    return out;
  }
  if (suite == "adapted") return adapted_checks(e.phi, e.id, points, s, cfg, e.expected.H_integrable);
  if (suite == "lift") return lift_checks(e.phi, e.id, points, s, cfg);
  if (suite == "theorems") return theorem_checks(e, points, s, cfg);
  throw ConfigError("unknown suite: " + suite);
}

}  // namespace framelift
