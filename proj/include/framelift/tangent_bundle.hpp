#pragma once

#include <vector>

#include "framelift/frame_bundle.hpp"
#include "framelift/submersion.hpp"

namespace framelift {

// Z in T_xM in the chart (x, Z).
struct TMPoint {
  Vec base;
  Vec fiber;
};

struct TMTangent {
  TMPoint at;
  Vec base_rate;
  Vec fiber_rate;

  TMTangent operator+(const TMTangent& o) const { return {at, base_rate + o.base_rate, fiber_rate + o.fiber_rate}; }
  TMTangent operator-(const TMTangent& o) const { return {at, base_rate - o.base_rate, fiber_rate - o.fiber_rate}; }
  TMTangent operator*(double s) const { return {at, s * base_rate, s * fiber_rate}; }
  Vec ambient() const;
};

TMTangent tm_vertical_lift(const TangentVector& X, const TMPoint& Z);
TMTangent tm_horizontal_lift(const ChartManifold& M, const TangentVector& X, const TMPoint& Z, const FDConfig& cfg);
// K(x', z') = z' + Gamma_{x'} Z.
Vec connection_map_K(const ChartManifold& M, const TMTangent& t, const FDConfig& cfg);
// g(pi_* s, pi_* t) + g(K s, K t).
double sasaki_mok_tm(const ChartManifold& M, const TMTangent& s, const TMTangent& t, const FDConfig& cfg);
double sasaki_mok_norm(const ChartManifold& M, const TMTangent& t, const FDConfig& cfg);

struct TMSplit {
  Vec horizontal;  // pi_* t
  Vec vertical;    // K t
};
TMSplit split(const ChartManifold& M, const TMTangent& t, const FDConfig& cfg);

// pi^i(u) = u_i; its differential on a frame tangent.
TMTangent pi_i_pushforward(int i, const FrameTangent& t);
// Largest residual of: pi^i_* X^h = X^{h,TM}, pi^i_* P* = P(u_i)^v.
double pi_i_lemma_residual(const ChartManifold& M, int i, const Frame& u, const Vec& X, const Mat& P,
                           const FDConfig& cfg);
// pi^i : L(M) -> TM as a Riemannian submersion at u: kernel of pi^i_* on {P* : P u_i = 0}, isometry
// on H^{L(M)} + {P* : P u_j = 0, j != i}, and orthogonality of the two. Returns the largest residual.
double pi_i_submersion_residual(const ChartManifold& M, int i, const Frame& u, const FDConfig& cfg);

// phi_** t by central differences of (x, Z) -> (phi(x), dphi_x Z).
TMTangent phi_second_differential_fd(const SubmersionSpec& phi, const TMTangent& t, const FDConfig& cfg);

enum class LiftKind { Vertical, Horizontal };
const char* to_string(LiftKind k);
//  Vertical:   (phi_* X)^v at phi_* Z
//  Horizontal: (phi_* X)^h at phi_* Z + Pi(X, Z)^v
TMTangent phi_second_differential_formula(const SubmersionSpec& phi, LiftKind kind, const TangentVector& X,
                                          const TMPoint& Z, const FDConfig& cfg);
// |formula - fd|_{TN} for the lift of X of the given kind at Z.
double phi_second_differential_residual(const SubmersionSpec& phi, LiftKind kind, const TangentVector& X,
                                        const TMPoint& Z, const FDConfig& cfg);

// How the vertical field X is extended for the (nabla_Z X)^T correction in V^Phi.
//  Vertical: X~ = proj_V(x) X    Constant: constant chart components
enum class Extension { Vertical, Constant };
const char* to_string(Extension e);

struct TMDistributions {
  std::vector<TMTangent> vertical;         // V^Phi spanning set, 2(n-k) vectors
  std::vector<TMTangent> horizontal;       // g_TM-orthonormal basis of the complement, 2k vectors
  std::vector<TMTangent> horizontal_shown; // the displayed spanning set of H^Phi
  double kernel_residual = 0.0;            // max |Phi_* v| / |v| over the V^Phi set
  double cross_gram = 0.0;                 // max |g_TM(v, h)| between V^Phi and the complement
  double display_residual = 0.0;           // max distance of the displayed H^Phi vectors from the complement
};

TMDistributions thm_kn_distributions(const SubmersionSpec& phi, const TMPoint& Z, Extension ext,
                                     const FDConfig& cfg);

}  // namespace framelift
