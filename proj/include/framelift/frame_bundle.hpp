#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "framelift/geometry_core.hpp"

namespace framelift {

// A point u = (u_1, ..., u_n) of L(M): column i of E holds u_i in chart components.
struct Frame {
  Vec base;
  Mat E;

  int dim() const { return static_cast<int>(base.size()); }
  // Number of frame vectors (n for L(M); fewer for image frames of a submersion lift).
  int size() const { return static_cast<int>(E.cols()); }
};

// A tangent vector to the total space at a frame: (x rate, frame rate).
struct FrameTangent {
  Frame at;
  Vec base_rate;
  Mat frame_rate;

  FrameTangent operator+(const FrameTangent& o) const { return {at, base_rate + o.base_rate, frame_rate + o.frame_rate}; }
  FrameTangent operator-(const FrameTangent& o) const { return {at, base_rate - o.base_rate, frame_rate - o.frame_rate}; }
  FrameTangent operator*(double s) const { return {at, s * base_rate, s * frame_rate}; }

  // Ambient layout (x rate, vec(frame rate) column-major).
  Vec ambient() const;
  static FrameTangent from_ambient(const Frame& at, const Vec& v);
};

inline FrameTangent operator*(double s, const FrameTangent& t) { return t * s; }

bool is_orthonormal_frame(const ChartManifold& M, const Frame& u, double tol);

FrameTangent horizontal_lift_frame(const ChartManifold& M, const TangentVector& X, const Frame& u, const FDConfig& cfg);
// P*_u: the flow u -> exp(tP) u, frame rate P E.
FrameTangent fundamental_vertical(const Mat& P, const Frame& u);
// Connection-form component: the endomorphism V with V(u_i) = (d/dt u_i) + Gamma_{x rate} u_i.
Mat vertical_part(const ChartManifold& M, const FrameTangent& t, const FDConfig& cfg);

// g(x_s, x_t) + sum_i g(V_s u_i, V_t u_i).
double mok_metric(const ChartManifold& M, const FrameTangent& s, const FrameTangent& t, const FDConfig& cfg);
double mok_norm(const ChartManifold& M, const FrameTangent& t, const FDConfig& cfg);
// The Mok metric as a quadratic form on the ambient (n + n*m) vector at u (m = u.size()).
Mat mok_gram_ambient(const ChartManifold& M, const Frame& u, const FDConfig& cfg);

// --- charts on total spaces -------------------------------------------------------------------

// Skew basis E_ij - E_ji, i < j, in lexicographic order.
std::vector<Mat> skew_basis(int n);
Mat skew_from_coords(const Vec& a, int n);
Vec coords_from_skew(const Mat& A);
int skew_dim(int n);

// A chart q -> (x, E) on L(M) or on a subbundle of it.
class BundleChart {
 public:
  virtual ~BundleChart() = default;

  virtual std::string name() const = 0;
  virtual int dim() const = 0;
  virtual const ChartManifold& base() const = 0;
  virtual Frame decode(const Vec& q) const = 0;
  virtual bool contains(const Vec& q) const;
  // d(x, vec E)/dq: (n + n^2) x dim().
  virtual Mat jacobian(const Vec& q, const FDConfig& cfg) const;

  // Chart components of an ambient frame tangent (least squares if not exactly tangent).
  Vec chart_components(const Vec& q, const FrameTangent& t, const FDConfig& cfg) const;
  // Distance of t from the chart's tangent space, relative to |t|.
  double tangency_residual(const Vec& q, const FrameTangent& t, const FDConfig& cfg) const;
  FrameTangent to_frame_tangent(const Vec& q, const Vec& qdot, const FDConfig& cfg) const;
};

// L(M) with its tautological chart q = (x, vec E).
class LMChart : public BundleChart {
 public:
  explicit LMChart(std::shared_ptr<const ChartManifold> M) : M_(std::move(M)) {}
  std::string name() const override { return "L(" + M_->name() + ")"; }
  int dim() const override { return M_->dim() + M_->dim() * M_->dim(); }
  const ChartManifold& base() const override { return *M_; }
  Frame decode(const Vec& q) const override;
  bool contains(const Vec& q) const override;
  Mat jacobian(const Vec& q, const FDConfig& cfg) const override;
  Vec encode(const Frame& u) const;

 private:
  std::shared_ptr<const ChartManifold> M_;
};

// The reference orthonormal frame: Gram-Schmidt of the coordinate basis.
Mat reference_frame(const ChartManifold& M, const Vec& p);

// Orthonormal frames near a reference frame field: q = (x, a), u = ref(x) blockdiag(exp(A_1(a)), ...).
// With a single block of size n this is a chart of O(M); with blocks (k, n-k) and an adapted
// reference it is a chart of the adapted bundle O(D).
class OMChart : public BundleChart {
 public:
  using FrameFieldFn = std::function<Mat(const Vec&)>;

  explicit OMChart(std::shared_ptr<const ChartManifold> M, FrameFieldFn reference = {}, std::vector<int> blocks = {},
                   std::string name = {});

  std::string name() const override { return name_; }
  int dim() const override;
  const ChartManifold& base() const override { return *M_; }
  Frame decode(const Vec& q) const override;
  bool contains(const Vec& q) const override;
  Mat jacobian(const Vec& q, const FDConfig& cfg) const override;

  const std::vector<int>& blocks() const { return blocks_; }
  Mat reference(const Vec& x) const { return reference_(x); }
  // Block-diagonal rotation for fiber coordinates a.
  Mat rotation(const Vec& a) const;
  // Inverse of decode. Throws on non-orthonormal frames, frames outside the block structure, or
  // rotations outside the log injectivity range.
  Vec encode(const Frame& u, const FDConfig& cfg) const;

 private:
  std::shared_ptr<const ChartManifold> M_;
  FrameFieldFn reference_;
  std::vector<int> blocks_;
  std::string name_;
};

Vec om_chart_encode(const Frame& u, const OMChart& chart, const FDConfig& cfg);
Frame om_chart_decode(const Vec& q, const OMChart& chart);

// Derivative of exp at A in direction B (exact, via the block-triangular exponential).
Mat dexp(const Mat& A, const Mat& B);

// A vector field on the total space described frame-wise.
using FrameField = std::function<FrameTangent(const Frame&)>;

// M must outlive the returned field.
FrameField horizontal_lift_field(const ChartManifold& M, VectorField X, FDConfig cfg);
FrameField fundamental_vertical_field(EndomorphismField P);

// Total space of a bundle chart equipped with the Mok metric, used as a brute-force oracle.
class TotalSpace {
 public:
  TotalSpace(std::shared_ptr<const BundleChart> chart, const FDConfig& cfg);

  const BundleChart& chart() const { return *chart_; }
  const ChartManifold& base() const { return chart_->base(); }
  // The chart metric as a ChartManifold (no exact derivative, so FD uses step_h2 throughout).
  const ChartManifold& manifold() const { return *total_; }
  const FDConfig& base_cfg() const { return cfg_; }
  const FDConfig& total_cfg() const { return total_cfg_; }

  Mat metric(const Vec& q) const;
  VectorField chart_field(FrameField F) const;

  // Levi-Civita nabla_A B of the induced metric at q, returned as an ambient frame tangent.
  FrameTangent covariant_derivative(const FrameField& A, const FrameField& B, const Vec& q) const;
  FrameTangent bracket(const FrameField& A, const FrameField& B, const Vec& q) const;

 private:
  std::shared_ptr<const BundleChart> chart_;
  FDConfig cfg_;
  FDConfig total_cfg_;
  std::shared_ptr<ChartManifold> total_;
};

enum class Bundle { LM, OM };
enum class ConnectionCase { HH, HV, VH, VV };
enum class BracketCase { HH, HV, VV };

// Which right-hand side of the printed Levi-Civita and bracket formulas is evaluated.
//  AsPrinted:  the formulas as displayed (symbol typos P/Q and X/Y resolved).
//  Derived:    the Koszul-derived forms, which differ from the displayed ones in the sign of the
//              hv bracket and in which of the hv/vh cases carries the (nabla P)* term.
enum class FormulaVariant { AsPrinted, Derived };

const char* to_string(Bundle b);
const char* to_string(ConnectionCase c);
const char* to_string(BracketCase c);
const char* to_string(FormulaVariant v);

Mat induced_metric_on_chart(const TotalSpace& T, const Vec& q);
FrameTangent lc_total_space_oracle(const TotalSpace& T, const FrameField& A, const FrameField& B, const Vec& q);

struct ConnectionInputs {
  VectorField X;
  VectorField Y;
  EndomorphismField P;
  EndomorphismField Q;
};

FrameTangent lc_connection_formula(const ChartManifold& M, Bundle bundle, ConnectionCase c, const ConnectionInputs& in,
                                   const Frame& u, FormulaVariant variant, const FDConfig& cfg);
FrameTangent bracket_formula(const ChartManifold& M, BracketCase c, const ConnectionInputs& in, const Frame& u,
                             FormulaVariant variant, const FDConfig& cfg);

// || FD bracket on the total-space chart - formula ||, in the Mok norm.
double bracket_residual(const TotalSpace& T, BracketCase c, const ConnectionInputs& in, const Vec& q,
                        FormulaVariant variant);

struct AuditRow {
  std::string bundle;
  std::string kase;
  std::string variant;
  double residual = 0.0;
  double scale = 0.0;  // Mok norm of the oracle value
  bool asserted = false;
};

// lc_connection_formula vs lc_total_space_oracle, case by case, at chart point q.
std::vector<AuditRow> connection_audit(const TotalSpace& T, Bundle bundle, const ConnectionInputs& in, const Vec& q);

// Random smooth test fields (seeded); skew_only produces g-skew endomorphism fields.
ConnectionInputs random_connection_inputs(std::shared_ptr<const ChartManifold> M, std::uint64_t seed, bool skew_only);

}  // namespace framelift
