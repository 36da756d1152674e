#pragma once

#include <memory>
#include <string>
#include <vector>

#include "framelift/frame_bundle.hpp"

namespace framelift {

// A rank-k distribution D given by its g-orthogonal projector field. D-perp uses id - projector.
struct DistributionSpec {
  int rank = 0;
  EndomorphismField projector;
  // True when the projector is analytic; false when it already carries finite-difference error,
  // in which case its derivatives use step_h2.
  bool exact = true;
  // Optional fields spanning D (used for the adapted reference frame when present).
  std::vector<VectorField> spanning;

  Mat at(const Vec& p) const { return projector(p); }
  Mat complement_at(const Vec& p) const {
    const Mat P = projector(p);
    return Mat::Identity(P.rows(), P.cols()) - P;
  }
};

struct ProjectorResidual {
  double idempotent = 0.0;
  double self_adjoint = 0.0;
  double trace = 0.0;
  double max() const { return std::max({idempotent, self_adjoint, trace}); }
};

ProjectorResidual projector_residual(const ChartManifold& M, const DistributionSpec& D, const Vec& p);

// FD settings to use when differentiating the projector of D.
FDConfig projector_cfg(const DistributionSpec& D, const FDConfig& cfg);

// P = [[P_top, P''], [P', P_bot]] with respect to TM = D + D-perp, every block kept as an
// n x n chart matrix (P' = proj_perp P proj_D, P'' = proj_D P proj_perp).
struct BlockDecomposition {
  Mat top;
  Mat bot;
  Mat off1;
  Mat off2;

  Mat reassemble() const { return top + bot + off1 + off2; }
  Mat g_part() const { return top + bot; }
  Mat m_part() const { return off1 + off2; }
};

BlockDecomposition block_decompose(const Mat& P, const DistributionSpec& D, const Vec& p);
// Off-diagonal part of a g-skew endomorphism. Throws PreconditionError on non-skew input.
Mat m_projection(const ChartManifold& M, const Mat& P, const DistributionSpec& D, const Vec& p, const FDConfig& cfg);
Mat g_projection(const ChartManifold& M, const Mat& P, const DistributionSpec& D, const Vec& p, const FDConfig& cfg);

// Block matrices in the standard splitting R^n = R^k + R^{n-k}.
Mat g_block_matrix(const Mat& a, const Mat& b);
Mat m_block_matrix(const Mat& C);
// max |g-part of [G, M]| over random G in g and M in m (the reductive property [g, m] in m).
double reductive_residual(int n, int k, std::uint64_t seed, int trials);

// d_X proj_D and nabla_X proj_D = d_X proj + [Gamma_X, proj].
Mat projector_derivative(const ChartManifold& M, const DistributionSpec& D, const Vec& p, const Vec& X,
                         const FDConfig& cfg);
Mat nabla_projector(const ChartManifold& M, const DistributionSpec& D, const Vec& p, const Vec& X,
                    const FDConfig& cfg);

// S_X as a matrix: S_X = (I - 2 proj)(nabla_X proj).
Mat S_endo(const ChartManifold& M, const DistributionSpec& D, const Vec& p, const Vec& X, const FDConfig& cfg);
Vec S_tensor(const ChartManifold& M, const DistributionSpec& D, const Vec& p, const Vec& X, const Vec& Y,
             const FDConfig& cfg);

// nabla^D_X Y from the defining projections of nabla applied to the field Y.
Vec nabla_D(const ChartManifold& M, const DistributionSpec& D, const Vec& p, const Vec& X, const VectorField& Y,
            const FDConfig& cfg);
// Connection coefficients of nabla^D: (Gamma^D_i) = Gamma_i - S_{d_i}. Not symmetric in general.
Christoffel adapted_christoffel(const ChartManifold& M, const DistributionSpec& D, const Vec& p, const FDConfig& cfg);
Riemann curvature_RD(const ChartManifold& M, const DistributionSpec& D, const Vec& p, const FDConfig& cfg);
Vec torsion_TD(const ChartManifold& M, const DistributionSpec& D, const Vec& p, const Vec& X, const Vec& Y,
               const FDConfig& cfg);
// nabla^D_X Q = d_X Q + [Gamma^D_X, Q] for an endomorphism field Q.
Mat nabla_D_endo(const ChartManifold& M, const DistributionSpec& D, const Vec& p, const Vec& X,
                 const EndomorphismField& Q, const FDConfig& cfg);

// Third term of (nabla^D_X S)_Y Z:
//  AsPrinted: - S_X(nabla^D_Y Z)    Standard: - S_Y(nabla^D_X Z)
enum class DerivativeConvention { AsPrinted, Standard };
const char* to_string(DerivativeConvention c);

// (nabla^D_X S)_Y Z with Y and Z extended by constant chart components.
Vec nabla_D_S(const ChartManifold& M, const DistributionSpec& D, const Vec& p, const Vec& X, const Vec& Y,
              const Vec& Z, DerivativeConvention conv, const FDConfig& cfg);
// | R(X,Y)Z - R^D(X,Y)Z - (nabla^D_X S)_Y Z + (nabla^D_Y S)_X Z - S_{T^D(X,Y)} Z - [S_X, S_Y] Z |_g
double curvature_relation_residual(const ChartManifold& M, const DistributionSpec& D, const Vec& p, const Vec& X,
                                   const Vec& Y, const Vec& Z, DerivativeConvention conv, const FDConfig& cfg);

// W(X) = X + sum_i <S_{e_i}|S_X> e_i over a g-orthonormal basis onb of T_pM, as a chart matrix.
Mat W_endo(const ChartManifold& M, const DistributionSpec& D, const Vec& p, const Mat& onb, const FDConfig& cfg);
Vec W_inverse_apply(const ChartManifold& M, const DistributionSpec& D, const Vec& p, const Vec& v, const Mat& onb,
                    const FDConfig& cfg);
// L_P(X) = W^{-1}(R_P(X) - sum_i <(nabla_X P)_m | S_{e_i}> e_i).
Vec L_P_endo(const ChartManifold& M, const DistributionSpec& D, const Vec& p, const EndomorphismField& P,
             const Vec& X, const Mat& onb, const FDConfig& cfg);

// Largest violation of the O(D) constraints: orthonormality, first k columns in D, rest in D-perp.
double od_membership_residual(const ChartManifold& M, const DistributionSpec& D, const Frame& u);
// |d/ds constraints(u + s t)| / |t| by central differences of the constraint map.
double od_tangency_residual(const ChartManifold& M, const DistributionSpec& D, const FrameTangent& t,
                            const FDConfig& cfg);

// X^{h,D}_u = X^h_u + (S_X)*_u. Throws PreconditionError unless u is in O(D).
FrameTangent adapted_horizontal_lift(const ChartManifold& M, const DistributionSpec& D, const TangentVector& X,
                                     const Frame& u, const FDConfig& cfg);
// M and D must outlive the returned field.
FrameField adapted_horizontal_lift_field(const ChartManifold& M, const DistributionSpec& D, VectorField X,
                                         FDConfig cfg);

// Orthonormal frame field adapted to D: Gram-Schmidt of the spanning fields (or of projected
// coordinate vectors selected at center) followed by the same for D-perp.
OMChart::FrameFieldFn adapted_reference_frame(std::shared_ptr<const ChartManifold> M, DistributionSpec D,
                                              const Vec& center);
std::shared_ptr<OMChart> make_od_chart(std::shared_ptr<const ChartManifold> M, const DistributionSpec& D,
                                       const Vec& center);

// Test fields for O(D): vector fields X, Y and g(TM)-valued endomorphism fields P, Q.
ConnectionInputs random_od_inputs(std::shared_ptr<const ChartManifold> M, OMChart::FrameFieldFn adapted_ref, int k,
                                  std::uint64_t seed);

// Candidate readings of the O(D) Levi-Civita displays against the total-space oracle of the O(D)
// chart. Reported only.
std::vector<AuditRow> od_connection_audit(const TotalSpace& T, const DistributionSpec& D, const ConnectionInputs& in,
                                          const Vec& q);

}  // namespace framelift
