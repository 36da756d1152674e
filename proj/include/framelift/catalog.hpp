#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "framelift/submersion.hpp"

namespace framelift {

// Scaled stereographic chart of the unit sphere: g = scale * 4 I / (1 + |x|^2)^2, exact dg.
std::shared_ptr<ChartManifold> sphere_stereo(int n, double scale = 1.0, double sample_radius = 0.6);
std::shared_ptr<ChartManifold> euclidean(int n, double half_width = 1.0);
// S^2 x S^1 with chart (stereographic, angle).
std::shared_ptr<ChartManifold> sphere2_times_circle();
// (t, s) with g = diag(1, e^{2t}).
std::shared_ptr<ChartManifold> warped_plane();

struct ExpectedFlags {
  std::optional<double> lambda;  // empty: not a constant-dilatation horizontally conformal map
  bool totally_geodesic = false;
  bool fibers_totally_geodesic = false;
  bool H_integrable = false;
  bool harmonic_morphism = false;
  bool lift_conformal = false;
  std::optional<double> Lambda;
  bool lift_harmonic_morphism = false;
  // |tau| and |phi_* H_phi| at the reference point, when known in closed form.
  std::optional<double> tension_norm_at_reference;
};

struct CatalogEntry {
  std::string id;
  std::string name;
  std::string description;
  SubmersionSpec phi;
  ExpectedFlags expected;
  // Special points used by single-point checks (e.g. t = 0 on the warped plane).
  Vec reference_point;
  // Factors of a composite map, first applied first (empty if not a composition).
  std::vector<SubmersionSpec> factors;
  // Whether the tension of L phi is computed directly on the total spaces.
  bool direct_lift_tension = false;
  // Constant sectional curvature of the source and target, where it is constant.
  std::optional<double> source_curvature;
  std::optional<double> target_curvature;
};

// Throws PreconditionError if the flags contradict lift_conformal == (lambda constant and totally geodesic)
// or lift_harmonic_morphism == (lift_conformal and harmonic_morphism).
void check_consistency(const CatalogEntry& e);

const std::vector<CatalogEntry>& entries();
// Throws PreconditionError for an unknown id.
const CatalogEntry& get(const std::string& id);
std::vector<std::string> ids();

// The Hopf map in stereographic coordinates and its exact Jacobian.
Vec hopf_map(const Vec& y);
Mat hopf_jacobian(const Vec& y);

}  // namespace framelift
