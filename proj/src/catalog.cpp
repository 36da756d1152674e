#include "framelift/catalog.hpp"

#include <cmath>

namespace framelift {

std::shared_ptr<ChartManifold> sphere_stereo(int n, double scale, double sample_radius) {
  auto metric = [scale](const Vec& x) {
    const double s = 1.0 + x.squaredNorm();
    return Mat(scale * 4.0 / (s * s) * Mat::Identity(x.size(), x.size()));
  };
  auto dmetric = [scale](const Vec& x) {
    const double s = 1.0 + x.squaredNorm();
    std::vector<Mat> d;
    for (int k = 0; k < x.size(); ++k) d.push_back(scale * (-16.0 * x(k)) / (s * s * s) * Mat::Identity(x.size(), x.size()));
    return d;
  };
  const std::string name = scale == 1.0 ? "S^" + std::to_string(n) : "S^" + std::to_string(n) + "(r^2=" + std::to_string(scale) + ")";
  return std::make_shared<ChartManifold>(name, n, metric, dmetric, [](const Vec& x) { return x.norm() < 10.0; },
                                         SamplingBox{Vec::Constant(n, -sample_radius), Vec::Constant(n, sample_radius)});
}

std::shared_ptr<ChartManifold> euclidean(int n, double half_width) {
  return std::make_shared<ChartManifold>(
      "R^" + std::to_string(n), n, [n](const Vec&) { return Mat(Mat::Identity(n, n)); },
      [n](const Vec&) { return std::vector<Mat>(n, Mat::Zero(n, n)); }, ChartManifold::DomainFn{},
      SamplingBox{Vec::Constant(n, -half_width), Vec::Constant(n, half_width)});
}

std::shared_ptr<ChartManifold> sphere2_times_circle() {
  auto metric = [](const Vec& x) {
    const double s = 1.0 + x.head(2).squaredNorm();
    Mat g = Mat::Identity(3, 3);
    g.topLeftCorner(2, 2) *= 4.0 / (s * s);
    return g;
  };
  auto dmetric = [](const Vec& x) {
    const double s = 1.0 + x.head(2).squaredNorm();
    std::vector<Mat> d(3, Mat::Zero(3, 3));
    for (int k = 0; k < 2; ++k) d[k].topLeftCorner(2, 2) = -16.0 * x(k) / (s * s * s) * Mat::Identity(2, 2);
    return d;
  };
  Vec lo(3), hi(3);
  lo << -0.6, -0.6, -1.0;
  hi << 0.6, 0.6, 1.0;
  return std::make_shared<ChartManifold>(
      "S^2 x S^1", 3, metric, dmetric, [](const Vec& x) { return x.head(2).norm() < 10.0 && std::abs(x(2)) < 3.0; },
      SamplingBox{lo, hi});
}

std::shared_ptr<ChartManifold> warped_plane() {
  auto metric = [](const Vec& x) {
    Mat g = Mat::Identity(2, 2);
    g(1, 1) = std::exp(2.0 * x(0));
    return g;
  };
  auto dmetric = [](const Vec& x) {
    std::vector<Mat> d(2, Mat::Zero(2, 2));
    d[0](1, 1) = 2.0 * std::exp(2.0 * x(0));
    return d;
  };
  Vec lo(2), hi(2);
  lo << -0.5, -1.0;
  hi << 0.5, 1.0;
  return std::make_shared<ChartManifold>("warped plane", 2, metric, dmetric,
                                         [](const Vec& x) { return std::abs(x(0)) < 5.0; }, SamplingBox{lo, hi});
}

namespace {

// y in R^3 -> X in S^3 subset R^4 (inverse stereographic projection from (0,0,0,1)).
Vec s3_point(const Vec& y) {
  const double s = 1.0 + y.squaredNorm();
  Vec X(4);
  X << 2.0 * y / s, (y.squaredNorm() - 1.0) / s;
  return X;
}

Mat s3_jacobian(const Vec& y) {
  const double s = 1.0 + y.squaredNorm();
  Mat D(4, 3);
  D.topRows(3) = 2.0 / s * Mat::Identity(3, 3) - 4.0 / (s * s) * y * y.transpose();
  D.row(3) = 4.0 / (s * s) * y.transpose();
  return D;
}

// (z1, z2) = (X0 + i X1, X2 + i X3) -> (|z1|^2 - |z2|^2, 2 Re z1 conj z2, 2 Im z1 conj z2) on the unit sphere.
Vec hopf_unit(const Vec& X) {
  Vec w(3);
  w << X(0) * X(0) + X(1) * X(1) - X(2) * X(2) - X(3) * X(3), 2.0 * (X(0) * X(2) + X(1) * X(3)),
      2.0 * (X(1) * X(2) - X(0) * X(3));
  return w;
}

Mat hopf_unit_jacobian(const Vec& X) {
  Mat D(3, 4);
  D << 2 * X(0), 2 * X(1), -2 * X(2), -2 * X(3),
       2 * X(2), 2 * X(3), 2 * X(0), 2 * X(1),
      -2 * X(3), 2 * X(2), 2 * X(1), -2 * X(0);
  return D;
}

// Stereographic projection of the unit sphere from (1, 0, 0).
Vec stereo2(const Vec& w) { return Vec(w.tail(2) / (1.0 - w(0))); }

Mat stereo2_jacobian(const Vec& w) {
  const double d = 1.0 - w(0);
  Mat D = Mat::Zero(2, 3);
  D.col(0) = w.tail(2) / (d * d);
  D.block(0, 1, 2, 2) = Mat::Identity(2, 2) / d;
  return D;
}

CatalogEntry make_entry(std::string id, std::string name, std::string description, SubmersionSpec phi,
                        ExpectedFlags f, Vec ref) {
  CatalogEntry e{std::move(id), std::move(name), std::move(description), std::move(phi), f, std::move(ref), {}, false, std::nullopt, std::nullopt};
  check_consistency(e);
  return e;
}

std::vector<CatalogEntry> build() {
  std::vector<CatalogEntry> out;

  {
    SubmersionSpec phi{"flat-projection", euclidean(3), euclidean(2),
                       [](const Vec& x) { return Vec(x.head(2)); },
                       [](const Vec&) { return Mat(Mat::Identity(2, 3)); }};
    ExpectedFlags f;
    f.lambda = 1.0;
    f.totally_geodesic = true;
    f.fibers_totally_geodesic = true;
    f.H_integrable = true;
    f.harmonic_morphism = true;
    f.lift_conformal = true;
    f.Lambda = 1.0;
    f.lift_harmonic_morphism = true;
    out.push_back(make_entry("E1", "flat-projection", "R^3 -> R^2, (x,y,z) -> (x,y)", phi, f, Vec::Zero(3)));
    out.back().direct_lift_tension = true;
    out.back().source_curvature = 0.0;
    out.back().target_curvature = 0.0;
  }
  {
    SubmersionSpec phi{"product", sphere2_times_circle(), sphere_stereo(2),
                       [](const Vec& x) { return Vec(x.head(2)); },
                       [](const Vec&) { return Mat(Mat::Identity(2, 3)); }};
    ExpectedFlags f;
    f.lambda = 1.0;
    f.totally_geodesic = true;
    f.fibers_totally_geodesic = true;
    f.H_integrable = true;
    f.harmonic_morphism = true;
    f.lift_conformal = true;
    f.Lambda = 1.0;
    f.lift_harmonic_morphism = true;
    Vec ref(3);
    ref << 0.2, -0.1, 0.3;
    out.push_back(make_entry("E2", "product", "S^2 x S^1 -> S^2, projection", phi, f, ref));
    out.back().target_curvature = 1.0;
  }
  {
    SubmersionSpec phi{"hopf", sphere_stereo(3, 1.0, 0.5), sphere_stereo(2, 0.25), hopf_map, hopf_jacobian};
    ExpectedFlags f;
    f.lambda = 1.0;
    f.totally_geodesic = false;
    f.fibers_totally_geodesic = true;
    f.H_integrable = false;
    f.harmonic_morphism = true;
    f.lift_conformal = false;
    f.lift_harmonic_morphism = false;
    Vec ref(3);
    ref << 0.1, 0.2, -0.15;
    out.push_back(make_entry("E3", "hopf", "S^3 -> S^2(1/2), Hopf fibration in stereographic charts", phi, f, ref));
    out.back().source_curvature = 1.0;
    out.back().target_curvature = 4.0;
  }
  {
    SubmersionSpec phi{"warped", warped_plane(), euclidean(1, 0.5),
                       [](const Vec& x) { return Vec(x.head(1)); },
                       [](const Vec&) { return Mat(Mat::Identity(1, 2)); }};
    ExpectedFlags f;
    f.lambda = 1.0;
    f.totally_geodesic = false;
    f.fibers_totally_geodesic = false;
    f.H_integrable = true;
    f.harmonic_morphism = false;
    f.lift_conformal = false;
    f.lift_harmonic_morphism = false;
    f.tension_norm_at_reference = 1.0;
    out.push_back(make_entry("E4", "warped", "(R^2, diag(1, e^{2t})) -> R, (t, s) -> t", phi, f, Vec::Zero(2)));
    out.back().source_curvature = -1.0;
  }
  {
    const double c = 2.0;
    SubmersionSpec phi{"homothety-projection", euclidean(3), euclidean(2, 2.0),
                       [c](const Vec& x) { return Vec(c * x.head(2)); },
                       [c](const Vec&) { return Mat(c * Mat::Identity(2, 3)); }};
    ExpectedFlags f;
    f.lambda = c * c;
    f.totally_geodesic = true;
    f.fibers_totally_geodesic = true;
    f.H_integrable = true;
    f.harmonic_morphism = true;
    f.lift_conformal = true;
    f.Lambda = c * c;
    f.lift_harmonic_morphism = true;
    out.push_back(make_entry("E5", "homothety-projection", "R^3 -> R^2, x -> 2 (x1, x2)", phi, f, Vec::Zero(3)));
    out.back().source_curvature = 0.0;
    out.back().target_curvature = 0.0;
    out.back().factors = {
        SubmersionSpec{"projection", euclidean(3), euclidean(2), [](const Vec& x) { return Vec(x.head(2)); },
                       [](const Vec&) { return Mat(Mat::Identity(2, 3)); }},
        SubmersionSpec{"scaling", euclidean(2), euclidean(2, 2.0), [c](const Vec& y) { return Vec(c * y); },
                       [c](const Vec&) { return Mat(c * Mat::Identity(2, 2)); }}};
  }
  return out;
}

}  // namespace

Vec hopf_map(const Vec& y) { return stereo2(hopf_unit(s3_point(y))); }

Mat hopf_jacobian(const Vec& y) {
  const Vec X = s3_point(y);
  return stereo2_jacobian(hopf_unit(X)) * hopf_unit_jacobian(X) * s3_jacobian(y);
}

void check_consistency(const CatalogEntry& e) {
  const ExpectedFlags& f = e.expected;
  const bool predicted = f.lambda.has_value() && f.totally_geodesic;
  if (f.lift_conformal != predicted)
    throw PreconditionError(e.id + ": lift_conformal flag contradicts the conformality criterion");
  if (f.lift_conformal != f.Lambda.has_value())
    throw PreconditionError(e.id + ": lift dilatation given for a non-conformal lift (or missing)");
  if (f.Lambda && f.lambda && std::abs(*f.Lambda - *f.lambda) > 0.0)
    throw PreconditionError(e.id + ": lift dilatation differs from the dilatation");
  if (f.lift_harmonic_morphism != (f.lift_conformal && f.harmonic_morphism))
    throw PreconditionError(e.id + ": lift harmonic-morphism flag contradicts the characterization");
}

const std::vector<CatalogEntry>& entries() {
  static const std::vector<CatalogEntry> all = build();
  return all;
}

const CatalogEntry& get(const std::string& id) {
  for (const auto& e : entries())
    if (e.id == id) return e;
  throw PreconditionError("unknown catalog entry: " + id);
}

std::vector<std::string> ids() {
  std::vector<std::string> out;
  for (const auto& e : entries()) out.push_back(e.id);
  return out;
}

}  // namespace framelift
