#include "walkoff/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "walkoff/errors.hpp"

namespace walkoff {

namespace {

void normalize(AngularDistribution& d) {
  double total = 0.0;
  for (double v : d.p) total += v;
  total *= d.step;
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw NumericError("distribution has zero or non-finite total weight");
  }
  for (double& v : d.p) v /= total;
}

}  // namespace

double AngularDistribution::mean() const {
  double m = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) m += theta[j] * p[j];
  return m * step;
}

double AngularDistribution::stddev() const {
  const double mu = mean();
  double v = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) v += (theta[j] - mu) * (theta[j] - mu) * p[j];
  return std::sqrt(v * step);
}

double AngularDistribution::skewness() const {
  const double mu = mean();
  double m2 = 0.0, m3 = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    const double d = theta[j] - mu;
    m2 += d * d * p[j];
    m3 += d * d * d * p[j];
  }
  m2 *= step;
  m3 *= step;
  return m3 / std::pow(m2, 1.5);
}

double AngularDistribution::peak() const {
  const auto it = std::max_element(p.begin(), p.end());
  const auto j = static_cast<std::size_t>(it - p.begin());
  if (j == 0 || j + 1 == p.size()) return theta[j];
  const double a = p[j - 1], b = p[j], c = p[j + 1];
  const double denom = a - 2.0 * b + c;
  if (denom == 0.0) return theta[j];
  return theta[j] + 0.5 * step * (a - c) / denom;
}

AngularDistribution conditional_distribution(const TPAGrid& grid, double theta_i_fixed) {
  const auto& th = grid.theta;
  if (!(theta_i_fixed >= th.front() && theta_i_fixed <= th.back())) {
    std::ostringstream msg;
    msg << "conditioning angle " << theta_i_fixed << " rad outside grid [" << th.front() << ", "
        << th.back() << "]";
    throw DomainError(msg.str());
  }
  const auto n = static_cast<std::size_t>(grid.size());
  auto hi = static_cast<std::size_t>(std::upper_bound(th.begin(), th.end(), theta_i_fixed) - th.begin());
  hi = std::min(std::max<std::size_t>(hi, 1), n - 1);
  const std::size_t lo = hi - 1;
  const double w = (theta_i_fixed - th[lo]) / (th[hi] - th[lo]);

  AngularDistribution d;
  d.theta = th;
  d.step = grid.step;
  d.theta_fixed = theta_i_fixed;
  d.p.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    const auto ai = static_cast<Eigen::Index>(a);
    d.p[a] = (1.0 - w) * std::norm(grid.values(ai, static_cast<Eigen::Index>(lo))) +
             w * std::norm(grid.values(ai, static_cast<Eigen::Index>(hi)));
  }
  normalize(d);
  return d;
}

AngularDistribution unconditional_distribution(const TPAGrid& grid, Axis axis) {
  const Eigen::MatrixXd intensity = grid.intensity();
  const Eigen::Index n = intensity.rows();
  AngularDistribution d;
  d.theta = grid.theta;
  d.step = grid.step;
  d.p.assign(static_cast<std::size_t>(n), 0.0);
  for (Eigen::Index a = 0; a < n; ++a) {
    double sum = 0.0;
    for (Eigen::Index b = 0; b < n; ++b) {
      const double w = (b == 0 || b == n - 1) ? 0.5 : 1.0;
      sum += w * (axis == Axis::signal ? intensity(a, b) : intensity(b, a));
    }
    d.p[static_cast<std::size_t>(a)] = sum * grid.step;
  }
  normalize(d);
  return d;
}

AsymmetryReport asymmetry_report(const TPAGrid& grid) {
  if (std::abs(grid.theta.front() + grid.theta.back()) > 1e-12 * grid.theta.back()) {
    throw DomainError("asymmetry report needs an angular range symmetric about zero");
  }
  const Eigen::MatrixXd mag = grid.values.cwiseAbs();
  AsymmetryReport r;
  r.swap_asym = (mag - mag.transpose()).norm() / mag.norm();
  const AngularDistribution marginal = unconditional_distribution(grid, Axis::signal);
  r.marginal_skewness = marginal.skewness();
  r.conditioning_angle = std::min(marginal.stddev(), grid.theta.back());
  r.bend_offset = conditional_distribution(grid, r.conditioning_angle).peak() - r.conditioning_angle;
  return r;
}

}  // namespace walkoff
