#pragma once

#include <memory>
#include <string>

#include "framelift/adapted_bundle.hpp"

namespace framelift {

// A smooth map between charts, expected to be a submersion on the sampled domain.
struct SubmersionSpec {
  std::string name;
  std::shared_ptr<const ChartManifold> source;
  std::shared_ptr<const ChartManifold> target;
  std::function<Vec(const Vec&)> map;
  // Optional exact Jacobian (target dim x source dim).
  std::function<Mat(const Vec&)> differential;

  int n() const { return source->dim(); }
  int k() const { return target->dim(); }
  bool exact() const { return static_cast<bool>(differential); }
  Vec operator()(const Vec& p) const { return map(p); }
};

// Exact Jacobian when available, otherwise central differences with step_h.
Mat jacobian(const SubmersionSpec& phi, const Vec& p, const FDConfig& cfg);
Mat jacobian_fd(const SubmersionSpec& phi, const Vec& p, double h);
Vec differential(const SubmersionSpec& phi, const TangentVector& X, const FDConfig& cfg);
// d_X(d phi) Y in target components.
Vec hessian(const SubmersionSpec& phi, const Vec& p, const Vec& X, const Vec& Y, const FDConfig& cfg);

struct Splitting {
  Mat vertical;    // projector onto ker d phi
  Mat horizontal;  // g-orthogonal complement
};

// Throws RankError when d phi is not of full rank.
Splitting splitting_projectors(const SubmersionSpec& phi, const Vec& p, const FDConfig& cfg);
DistributionSpec horizontal_distribution(const SubmersionSpec& phi, const FDConfig& cfg);
DistributionSpec vertical_distribution(const SubmersionSpec& phi, const FDConfig& cfg);
// Inverse of d phi restricted to H: an n x k matrix with image in H.
Mat horizontal_inverse(const SubmersionSpec& phi, const Vec& p, const FDConfig& cfg);
// g-orthonormal bases (as columns) of H and V at p.
Mat horizontal_onb(const SubmersionSpec& phi, const Vec& p, const FDConfig& cfg);
Mat vertical_onb(const SubmersionSpec& phi, const Vec& p, const FDConfig& cfg);
// [horizontal_onb, vertical_onb].
Mat adapted_onb(const SubmersionSpec& phi, const Vec& p, const FDConfig& cfg);

struct Dilatation {
  double lambda = 0.0;
  double defect = 0.0;
};
// g_N(phi_* X, phi_* Y) = lambda g(X, Y) on H: lambda = trace / k of the horizontal Gram matrix,
// defect = max deviation of that matrix from lambda I.
Dilatation dilatation(const SubmersionSpec& phi, const Vec& p, const FDConfig& cfg);

// nabla^phi_X W = d_X W + Gamma^N_{phi_* X} W for W along phi (target components).
Vec pullback_connection(const SubmersionSpec& phi, const Vec& p, const Vec& X,
                        const std::function<Vec(const Vec&)>& W, const FDConfig& cfg);

// Pi(X,Y) = hess(X,Y) + Gamma^N(dphi X, dphi Y) - dphi Gamma^M(X,Y).
Vec second_fundamental_form(const SubmersionSpec& phi, const Vec& p, const Vec& X, const Vec& Y,
                            const FDConfig& cfg);
// nabla^phi_X (phi_* Y) - phi_*(nabla_X Y) for fields.
Vec second_fundamental_form_fields(const SubmersionSpec& phi, const Vec& p, const VectorField& X,
                                   const VectorField& Y, const FDConfig& cfg);
// max |Pi(e_i, e_j)|_N over a g-orthonormal basis.
double second_fundamental_form_norm(const SubmersionSpec& phi, const Vec& p, const FDConfig& cfg);

// A_Y X = (nabla_X Y)^T for X in H, Y in V, as an n x n matrix vanishing on V.
// Throws PreconditionError if Y is not vertical.
Mat A_Y_endo(const SubmersionSpec& phi, const Vec& p, const Vec& Y, const FDConfig& cfg);

// The identity relating phi_* A_Y(X) to Pi(X,Y).
//  AsPrinted: phi_* A_Y(X) = Pi(X,Y)    Derived: phi_* A_Y(X) = -Pi(X,Y)
double a_identity_residual(const SubmersionSpec& phi, const Vec& p, const Vec& X, const Vec& Y,
                           FormulaVariant variant, const FDConfig& cfg);

// (Pi)_X in End(H): phi_*((Pi)_X Y) = Pi(X,Y). n x n, vanishing on V.
Mat Pi_X_endo(const SubmersionSpec& phi, const Vec& p, const Vec& X, const FDConfig& cfg);
// phi_*^{-1}(nabla^phi_X phi_* Y~) - (nabla_X Y~)^T with Y~ = proj_H(x) Y.
Vec Pi_X_alternative(const SubmersionSpec& phi, const Vec& p, const Vec& X, const Vec& Y, const FDConfig& cfg);

// phi_* P0 = dphi P0 (dphi|_H)^{-1}. P0 must be an endomorphism of H (preserve H, vanish on V).
Mat pushforward_endo(const SubmersionSpec& phi, const Vec& p, const Mat& P0, const FDConfig& cfg);

// div_perp C = sum_A ((nabla_{e_A} C)(e_A))^perp for C = proj_H C proj_H.
Vec div_bot(const SubmersionSpec& phi, const Vec& p, const Mat& C, const FDConfig& cfg);
// Same sum with e_A a smooth adapted frame field and C a field, by finite differences.
Vec div_bot_field(const SubmersionSpec& phi, const Vec& p, const EndomorphismField& C, const FDConfig& cfg);
// <A_X | C> + g(X, div_perp C).
double div_lemma_residual(const SubmersionSpec& phi, const Vec& p, const Vec& X, const Mat& C, const FDConfig& cfg);

// H_phi = sum_alpha (nabla_{e_alpha} e_alpha)^T.
Vec mean_curvature_fibers(const SubmersionSpec& phi, const Vec& p, const FDConfig& cfg);
// sum_i Pi(e_i, e_i) over a g-orthonormal basis.
Vec tension_field(const SubmersionSpec& phi, const Vec& p, const FDConfig& cfg);

// -c phi_* grad(ln lambda) - phi_* H_phi for horizontally conformal maps.
//  SourceDimension: c = (dim M - 2)/2    TargetDimension: c = (dim N - 2)/2
enum class TensionCoefficient { SourceDimension, TargetDimension };
const char* to_string(TensionCoefficient c);
Vec tension_conformal(const SubmersionSpec& phi, const Vec& p, TensionCoefficient c, const FDConfig& cfg);
Vec grad_log_dilatation(const SubmersionSpec& phi, const Vec& p, const FDConfig& cfg);

// |T^H(X,Y)| maximized over pairs of a horizontal orthonormal basis.
double horizontal_integrability_defect(const SubmersionSpec& phi, const Vec& p, const FDConfig& cfg);
// max |(nabla_{e_a} e_b)^T| over a vertical orthonormal basis (0 iff fibers totally geodesic).
double fiber_second_fundamental_norm(const SubmersionSpec& phi, const Vec& p, const FDConfig& cfg);

}  // namespace framelift
