#include "walkoff/oracle.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "walkoff/errors.hpp"
#include "walkoff/kernels.hpp"
#include "walkoff/tpa.hpp"

namespace walkoff {

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) throw DomainError("Gauss-Legendre rule needs n >= 1");
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute the derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = (n == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

QuadratureOracle::QuadratureOracle(const PumpBeam& pump, const CrystalStack& stack,
                                   const PhaseMatchingSolution& pm, QuadratureSpec spec)
    : pump_(pump),
      stack_(stack),
      pm_(pm),
      spec_(spec),
      entry_(stack.breakpoints()),
      bound_(tpa_amplitude_bound(pump, stack)),
      z_rule_(gauss_legendre(spec.z_order)) {
  if (spec_.z_panels < 2 || spec_.z_order < 1 || spec_.x_nodes < 2 ||
      !(spec_.x_halfwidth_sigma > 0.0) || !(spec_.tol > 0.0) || spec_.max_refinements < 0) {
    throw DomainError("invalid quadrature spec");
  }
  const double t = std::tan(stack.theta());
  for (const auto& s : stack.slabs()) tilt_.push_back(s.walkoff_sign * t);

  if (spec_.x_mode == XIntegration::numeric) {
    // Every slab shares |theta|, so the profile across the path is the same in all of them.
    // g(x, z) = exp[-(dx cos(theta') - dz sin(theta'))^2 / (2 sigma^2)], measured from the
    // slab entry point; nodes are placed at x = x_c(z) + u.
    const double cos_t = std::cos(stack.theta());
    const double sigma = pump.sigma();
    const double half_width = spec_.x_halfwidth_sigma * sigma / cos_t;
    const GaussLegendreRule xr = gauss_legendre(spec_.x_nodes);
    const double tilt0 = tilt_.front();
    const double angle0 = std::atan(tilt0);
    const double dz = 0.5 * stack.slabs().front().length;  // any z inside the slab
    for (int j = 0; j < spec_.x_nodes; ++j) {
      const double u = half_width * xr.nodes[j];
      const double dx = tilt0 * dz + u;
      const double across = dx * std::cos(angle0) - dz * std::sin(angle0);
      x_u_.push_back(u);
      x_wg_.push_back(half_width * xr.weights[j] * std::exp(-across * across / (2.0 * sigma * sigma)));
    }
  }
}

const std::vector<QuadratureOracle::SlabNodes>& QuadratureOracle::z_nodes(int z_panels) const {
  std::lock_guard lock(cache_mutex_);
  auto it = z_cache_.find(z_panels);
  if (it != z_cache_.end()) return it->second;
  std::vector<SlabNodes> per_slab;
  const auto& slabs = stack_.slabs();
  for (std::size_t j = 0; j < slabs.size(); ++j) {
    SlabNodes sn;
    const double z0 = entry_[j].z;
    const double h = slabs[j].length / z_panels;
    sn.z.reserve(static_cast<std::size_t>(z_panels) * z_rule_.nodes.size());
    for (int p = 0; p < z_panels; ++p) {
      const double mid = z0 + (p + 0.5) * h;
      for (std::size_t q = 0; q < z_rule_.nodes.size(); ++q) {
        sn.z.push_back(mid + 0.5 * h * z_rule_.nodes[q]);
        sn.w.push_back(0.5 * h * z_rule_.weights[q]);
      }
    }
    per_slab.push_back(std::move(sn));
  }
  return z_cache_.emplace(z_panels, std::move(per_slab)).first->second;
}

std::complex<double> QuadratureOracle::x_integral(double d_perp) const {
  if (spec_.x_mode == XIntegration::analytic) {
    const double c = std::cos(stack_.theta());
    const double sigma = pump_.sigma();
    return std::sqrt(2.0 * std::numbers::pi) * sigma / c *
           std::exp(-sigma * sigma * d_perp * d_perp / (2.0 * c * c));
  }
  return kernels::phasor_sum(x_wg_, x_u_, -d_perp, 0.0);
}

std::complex<double> QuadratureOracle::estimate(double theta_s, double theta_i,
                                                int z_panels) const {
  const Mismatch m = mismatches(theta_s, theta_i, pm_);
  const std::complex<double> x_part = x_integral(m.d_perp);
  const auto& nodes = z_nodes(z_panels);
  std::vector<double> phase;
  std::complex<double> total{0.0, 0.0};
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const auto& sn = nodes[j];
    phase.resize(sn.z.size());
    for (std::size_t k = 0; k < sn.z.size(); ++k) {
      const double x_c = entry_[j].x + tilt_[j] * (sn.z[k] - entry_[j].z);
      phase[k] = m.d_par * sn.z[k] - m.d_perp * x_c;
    }
    total += x_part * kernels::phasor_sum(sn.w, phase, 1.0, 0.0);
  }
  return total;
}

OracleResult QuadratureOracle::evaluate(double theta_s, double theta_i) const {
  int panels = spec_.z_panels;
  std::complex<double> coarse = estimate(theta_s, theta_i, panels / 2);
  std::complex<double> fine = estimate(theta_s, theta_i, panels);
  for (int r = 0;; ++r) {
    const double change = std::abs(fine - coarse) / bound_;
    if (change <= spec_.tol) return {fine, change, panels};
    if (r == spec_.max_refinements) {
      std::ostringstream msg;
      msg << "quadrature oracle did not converge at (" << theta_s << ", " << theta_i
          << ") rad: relative change " << change << " > tol " << spec_.tol << " with " << panels
          << " z panels per slab";
      throw OracleConvergenceError(msg.str(), std::abs(coarse), std::abs(fine));
    }
    panels *= 2;
    coarse = fine;
    fine = estimate(theta_s, theta_i, panels);
  }
}

OracleResult tpa_quadrature_oracle(double theta_s, double theta_i, const PumpBeam& pump,
                                   const CrystalStack& stack, const PhaseMatchingSolution& pm,
                                   const QuadratureSpec& quad) {
  return QuadratureOracle(pump, stack, pm, quad).evaluate(theta_s, theta_i);
}

}  // namespace walkoff
