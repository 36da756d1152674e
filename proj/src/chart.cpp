#include "framelift/chart.hpp"

#include <random>
#include <sstream>

namespace framelift {

ChartManifold::ChartManifold(std::string name, int dim, MetricFn metric, MetricDerivativeFn metric_derivative,
                             DomainFn domain, SamplingBox box)
    : name_(std::move(name)),
      dim_(dim),
      metric_(std::move(metric)),
      metric_derivative_(std::move(metric_derivative)),
      domain_(std::move(domain)),
      box_(std::move(box)) {
  if (dim_ <= 0) throw PreconditionError("ChartManifold: dimension must be positive");
  if (!metric_) throw PreconditionError("ChartManifold: metric field is required");
  if (box_.lo.size() == 0) {
    box_.lo = Vec::Constant(dim_, -0.5);
    box_.hi = Vec::Constant(dim_, 0.5);
  }
  if (box_.lo.size() != dim_ || box_.hi.size() != dim_)
    throw PreconditionError("ChartManifold: sampling box dimension mismatch");
}

bool ChartManifold::contains(const Vec& p) const {
  if (p.size() != dim_ || !p.allFinite()) return false;
  return domain_ ? domain_(p) : true;
}

void ChartManifold::require(const Vec& p, const char* what) const {
  if (!contains(p)) {
    std::ostringstream os;
    os << name_ << ": " << what << " outside chart domain: [" << p.transpose() << "]";
    throw DomainError(os.str());
  }
}

void ChartManifold::require_stencil(const Vec& p, const Vec& dir, double h) const {
  if (!contains(p + h * dir) || !contains(p - h * dir)) {
    std::ostringstream os;
    os << name_ << ": finite-difference stencil leaves the chart domain at [" << p.transpose() << "]";
    throw DomainError(os.str());
  }
}

std::vector<Mat> ChartManifold::metric_derivative(const Vec& p, const FDConfig& cfg) const {
  require(p);
  if (metric_derivative_) return metric_derivative_(p);
  std::vector<Mat> out;
  out.reserve(dim_);
  for (int k = 0; k < dim_; ++k) {
    const Vec e = Vec::Unit(dim_, k);
    require_stencil(p, e, cfg.step_h);
    out.push_back(fd::directional(metric_, p, e, cfg.step_h));
  }
  return out;
}

std::vector<Vec> ChartManifold::sample(std::uint64_t seed, int count) const {
  std::mt19937_64 rng(seed);
  std::vector<Vec> pts;
  pts.reserve(count);
  const int max_attempts = 1000 * std::max(count, 1);
  for (int attempt = 0; attempt < max_attempts && static_cast<int>(pts.size()) < count; ++attempt) {
    Vec p(dim_);
    for (int i = 0; i < dim_; ++i) {
      std::uniform_real_distribution<double> u(box_.lo(i), box_.hi(i));
      p(i) = u(rng);
    }
    if (contains(p)) pts.push_back(std::move(p));
  }
  if (static_cast<int>(pts.size()) < count) throw DomainError(name_ + ": sampling box misses the domain");
  return pts;
}

Mat metric_eval(const ChartManifold& M, const Vec& p) {
  M.require(p);
  Mat g = M.metric_raw(p);
  if (g.rows() != M.dim() || g.cols() != M.dim()) throw PreconditionError(M.name() + ": metric has wrong shape");
  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw GeometryError(M.name() + ": metric is not symmetric");
  Eigen::LLT<Mat> llt(g);
  if (llt.info() != Eigen::Success) throw GeometryError(M.name() + ": metric is not positive definite");
  return g;
}

}  // namespace framelift
