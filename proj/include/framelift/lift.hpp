#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "framelift/submersion.hpp"

namespace framelift {

// Everything needed to evaluate L phi : O(H) -> L(N) near a base point.
struct LiftSetup {
  SubmersionSpec phi;
  DistributionSpec H;
  std::shared_ptr<OMChart> od;  // O(H) chart, blocks (k, n-k), adapted reference centered at `center`
  std::shared_ptr<LMChart> ln;  // L(N)
  Vec center;
};

LiftSetup make_lift_setup(const SubmersionSpec& phi, const Vec& center, const FDConfig& cfg);

// L phi(u) = (phi_* u_1, ..., phi_* u_k) at phi(x). Throws PreconditionError unless u is in O(H).
Frame lift_map(const LiftSetup& L, const Frame& u, const FDConfig& cfg);
// Ambient L(N) coordinates of L phi(decode(q)).
Vec lift_in_charts(const LiftSetup& L, const Vec& q, const FDConfig& cfg);

// (L phi)_* t by central differences in the O(H) and L(N) charts. t must be tangent to O(H)
// (relative chart residual below tol_fd1).
FrameTangent lift_differential_fd(const LiftSetup& L, const FrameTangent& t, const FDConfig& cfg);

enum class LiftCase { HorizontalOfH, HorizontalOfV, Vertical };
const char* to_string(LiftCase c);

struct LiftInput {
  LiftCase kase = LiftCase::HorizontalOfH;
  Vec v;  // X in H or Y in V
  Mat P;  // element of g(TM) for the vertical case
};

// The total-space vector whose image is taken: X^{h,phi}, Y^{h,phi} or P*.
FrameTangent lift_input_tangent(const LiftSetup& L, const LiftInput& in, const Frame& u, const FDConfig& cfg);
//  HorizontalOfH: (phi_* X)^h + (phi_*(Pi)_X)*
//  HorizontalOfV: AsPrinted (phi_* A_Y)*, Derived -(phi_* A_Y)*
//  Vertical:      (phi_* P^T)*
FrameTangent lift_differential_formula(const LiftSetup& L, const LiftInput& in, const Frame& u, FormulaVariant variant,
                                       const FDConfig& cfg);
// Mok norm on L(N) of formula - fd.
double lift_differential_residual(const LiftSetup& L, const LiftInput& in, const Frame& u, FormulaVariant variant,
                                  const FDConfig& cfg);

struct LiftDistributions {
  std::vector<FrameTangent> vertical;
  std::vector<FrameTangent> horizontal;
  double kernel_residual = 0.0;  // max |(L phi)_* v| / |v| over the vertical set
  double cross_gram = 0.0;       // max |g_O(M)(v, h)|
  int dim_vertical = 0;
  int dim_horizontal = 0;
  int dim_total = 0;             // dim O(H)
  int rank = 0;                  // rank of the Mok Gram matrix of vertical + horizontal
};

//  AsPrinted: V = {X^{h,phi} - A_X*} + {P*},  H = {W^{-1}(Y)^{h,phi}} + {W^{-1}(div C)^{h,phi} - C*}
//  Derived:   V = {X^{h,phi} + A_X*} + {P*},  H = {W^{-1}(Y)^{h,phi}} + {W^{-1}(div C)^{h,phi} + C*}
// P runs over so(n-k) acting on V, C over so(k) acting on H, both in orthonormal frames of the splitting.
LiftDistributions lift_distributions(const LiftSetup& L, const Frame& u, FormulaVariant variant, const FDConfig& cfg);

struct LiftConformality {
  double Lambda = 0.0;  // mean of the top generalized eigenvalues
  double defect = 0.0;  // max |mu - Lambda| / Lambda over them
  double kernel = 0.0;  // largest of the remaining eigenvalues, relative to Lambda
  std::vector<double> eigenvalues;
};

// Generalized eigenvalues of (pull-back of the L(N) Mok metric, O(H) Mok metric) at chart point q,
// using the top k + k(k-1)/2 of them (the dimension of H^{L phi}).
LiftConformality lift_conformality(const LiftSetup& L, const Vec& q, const FDConfig& cfg);

// Tension field of L phi at chart point q by total-space Christoffel symbols on both charts and
// second differences of the chart map. Returns the Mok norm on L(N).
double lift_tension_direct(const LiftSetup& L, const Vec& q, const FDConfig& cfg);

struct ClassificationThresholds {
  double conformal = 5e-3;  // below: conformal
  double nonconformal = 0.01;  // above: not conformal
};

enum class Verdict { Yes, No, Inconclusive };
const char* to_string(Verdict v);

struct PointSample {
  Vec p;
  Vec q;
  Dilatation dil;
  double pi_norm = 0.0;
  double fiber_sff = 0.0;
  double h_integrability = 0.0;
  double tension = 0.0;
  LiftConformality lift;
};

struct ClassificationReport {
  std::vector<PointSample> samples;
  double max_defect = 0.0;
  double lambda_mean = 0.0;
  double lambda_std = 0.0;
  double max_pi = 0.0;
  double max_fiber_sff = 0.0;
  double max_h_integrability = 0.0;
  double max_tension = 0.0;
  double max_lift_defect = 0.0;
  double Lambda_mean = 0.0;
  double Lambda_std = 0.0;
  double max_Lambda_minus_lambda = 0.0;

  bool horizontally_conformal = false;
  bool dilatation_constant = false;
  bool totally_geodesic = false;
  bool fibers_totally_geodesic = false;
  bool H_integrable = false;
  bool harmonic = false;
  bool harmonic_morphism = false;
  bool lift_conformal_predicted = false;
  Verdict lift_conformal_measured = Verdict::Inconclusive;
  bool lift_harmonic_morphism_predicted = false;
};

// Evaluates every sample point concurrently, then aggregates. Frames are drawn in O(H) at seeded
// fiber coordinates.
ClassificationReport classify(const SubmersionSpec& phi, const std::vector<Vec>& points, std::uint64_t seed,
                              const FDConfig& cfg, const ClassificationThresholds& th = {});

}  // namespace framelift
