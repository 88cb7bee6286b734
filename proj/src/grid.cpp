#include "walkoff/grid.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>

#include "walkoff/analysis.hpp"
#include "walkoff/errors.hpp"
#include "walkoff/kernels.hpp"
#include "walkoff/tpa.hpp"

namespace walkoff {

void GridSpec::validate() const {
  if (n < 16) throw DomainError("grid needs at least 16 points per axis");
  if (!(theta_max > theta_min) || !std::isfinite(theta_min) || !std::isfinite(theta_max)) {
    throw DomainError("grid needs theta_max > theta_min");
  }
  if (!(theta_max < std::numbers::pi / 2 && theta_min > -std::numbers::pi / 2)) {
    throw DomainError("grid angles must stay inside (-pi/2, pi/2)");
  }
}

std::vector<double> GridSpec::nodes() const {
  validate();
  const double mid = 0.5 * (theta_max + theta_min);
  const double half = 0.5 * (theta_max - theta_min);
  std::vector<double> out(n);
  for (int j = 0; j < n; ++j) {
    out[j] = mid + half * (static_cast<double>(2 * j - (n - 1)) / (n - 1));
  }
  return out;
}

std::string engine_name(Engine e) { return e == Engine::oracle ? "oracle" : "closed_form"; }

Eigen::MatrixXd TPAGrid::intensity() const {
  Eigen::MatrixXd out(values.rows(), values.cols());
  kernels::abs2({values.data(), static_cast<std::size_t>(values.size())},
                {out.data(), static_cast<std::size_t>(out.size())});
  return out;
}

namespace {

template <class Fn>
void parallel_columns(int n, Fn&& fn) {
  const int workers =
      std::clamp(static_cast<int>(std::thread::hardware_concurrency()), 1, std::max(n, 1));
  std::vector<std::exception_ptr> errors(n);
  auto run = [&](int w) {
    for (int col = w; col < n; col += workers) {
      try {
        fn(col);
      } catch (...) {
        errors[col] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void normalize_peak(TPAGrid& g) {
  g.raw_peak = g.values.cwiseAbs().maxCoeff();
  if (!(g.raw_peak > 0.0) || !std::isfinite(g.raw_peak)) {
    throw NumericError("TPA grid has no finite nonzero peak");
  }
  g.values /= g.raw_peak;
  g.peak_normalized = true;
}

}  // namespace

TPAGrid evaluate_grid(const CrystalStack& stack, const PumpBeam& pump,
                      const PhaseMatchingSolution& pm, const GridSpec& grid, Engine engine,
                      const QuadratureSpec& quad) {
  TPAGrid g;
  g.theta = grid.nodes();
  g.step = grid.step();
  g.engine = engine;
  g.stack_name = stack.name();
  const int n = grid.n;
  g.values.resize(n, n);

  std::vector<double> sin_t(n), versin_t(n);
  for (int j = 0; j < n; ++j) {
    sin_t[j] = std::sin(g.theta[j]);
    versin_t[j] = versine(g.theta[j]);
  }

  if (engine == Engine::closed_form) {
    const StackKernel kernel = make_stack_kernel(pump, stack, pm);
    const kernels::StackArgs args = kernel.args();
    parallel_columns(n, [&](int col) {
      kernels::stack_row(args, sin_t, versin_t, sin_t[col], versin_t[col],
                         {g.values.col(col).data(), static_cast<std::size_t>(n)});
    });
  } else {
    const QuadratureOracle oracle(pump, stack, pm, quad);
    std::vector<OracleStats> col_stats(n);
    parallel_columns(n, [&](int col) {
      for (int row = 0; row < n; ++row) {
        const OracleResult r = oracle.evaluate(g.theta[row], g.theta[col]);
        g.values(row, col) = r.value;
        col_stats[col].max_change = std::max(col_stats[col].max_change, r.change);
        col_stats[col].max_z_panels = std::max(col_stats[col].max_z_panels, r.z_panels);
      }
    });
    for (const auto& s : col_stats) {
      g.oracle_stats.max_change = std::max(g.oracle_stats.max_change, s.max_change);
      g.oracle_stats.max_z_panels = std::max(g.oracle_stats.max_z_panels, s.max_z_panels);
    }
  }
  if (!g.values.allFinite()) throw NumericError("non-finite TPA value on grid");
  normalize_peak(g);
  return g;
}

TPAGrid make_grid(const GridSpec& grid, const Eigen::MatrixXcd& values, bool normalize) {
  if (values.rows() != grid.n || values.cols() != grid.n) {
    throw DomainError("kernel matrix does not match grid size");
  }
  TPAGrid g;
  g.theta = grid.nodes();
  g.step = grid.step();
  g.values = values;
  if (!g.values.allFinite()) throw NumericError("non-finite kernel value");
  if (normalize) {
    normalize_peak(g);
  } else {
    g.raw_peak = g.values.cwiseAbs().maxCoeff();
  }
  return g;
}

GridSpec auto_grid(const std::vector<const CrystalStack*>& stacks, const PumpBeam& pump,
                   const PhaseMatchingSolution& pm, int n) {
  if (stacks.empty()) throw DomainError("auto_grid needs at least one stack");
  double longest = 0.0;
  for (const auto* s : stacks) longest = std::max(longest, s->total_length());
  // first sinc zero along the diagonal and the envelope width across it
  const double sinc_scale = std::sqrt(2.0 * std::numbers::pi / (pm.k_s * longest));
  const double envelope_scale = 1.0 / (pm.k_s * pump.sigma());
  const double window = 4.0 * std::max(sinc_scale, envelope_scale);
  const GridSpec coarse = GridSpec::symmetric(window, 41);
  double width = 0.0;
  for (const auto* s : stacks) {
    const TPAGrid g = evaluate_grid(*s, pump, pm, coarse);
    for (Axis axis : {Axis::signal, Axis::idler}) {
      width = std::max(width, unconditional_distribution(g, axis).stddev());
    }
  }
  return GridSpec::symmetric(5.0 * width, n);
}

}  // namespace walkoff
