#include "walkoff/schmidt.hpp"

#include <cmath>
#include <sstream>

#include "walkoff/errors.hpp"

namespace walkoff {

SchmidtSpectrum schmidt_decompose(const TPAGrid& grid, int rank) {
  const auto n = grid.size();
  if (rank < 1 || rank > n) throw DomainError("Schmidt rank must lie in [1, n]");
  if (!grid.values.allFinite()) throw NumericError("Schmidt decomposition of non-finite kernel");

  const Eigen::MatrixXcd weighted = grid.values * grid.step;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(weighted, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "SVD did not converge on " << n << "x" << n << " kernel (Eigen status "
        << static_cast<int>(svd.info()) << ")";
    throw NumericError(msg.str());
  }
  const Eigen::VectorXd& s = svd.singularValues();
  double energy = 0.0;
  for (Eigen::Index k = 0; k < s.size(); ++k) energy += s(k) * s(k);
  if (!(energy > 0.0)) throw NumericError("Schmidt decomposition of a zero kernel");

  SchmidtSpectrum out;
  double purity = 0.0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    const double lambda = s(k) * s(k) / energy;
    out.lambdas.push_back(lambda);
    out.singular_values.push_back(s(k));
    purity += lambda * lambda;
  }
  out.K = 1.0 / purity;
  const double inv_sqrt_step = 1.0 / std::sqrt(grid.step);
  out.modes_s = svd.matrixU().leftCols(rank) * inv_sqrt_step;
  out.modes_i = svd.matrixV().leftCols(rank).conjugate() * inv_sqrt_step;
  return out;
}

Eigen::MatrixXcd schmidt_reconstruct(const SchmidtSpectrum& spectrum, int rank) {
  if (rank < 1 || rank > spectrum.modes_s.cols()) throw DomainError("rank exceeds kept modes");
  const auto n = spectrum.modes_s.rows();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k < rank; ++k) {
    // F step = sum s_k U_k V_k^H with U_k = u_k sqrt(step) and conj(V_k) = v_k sqrt(step)
    out += spectrum.singular_values[k] * spectrum.modes_s.col(k) *
           spectrum.modes_i.col(k).transpose();
  }
  return out;
}

DoubleGaussFit double_gauss_fit(const TPAGrid& grid) {
  const Eigen::MatrixXd intensity = grid.intensity();
  const auto n = grid.size();
  const double peak = intensity.maxCoeff();
  std::vector<Eigen::Index> rows, cols;
  for (Eigen::Index b = 0; b < n; ++b) {
    for (Eigen::Index a = 0; a < n; ++a) {
      if (intensity(a, b) > 0.01 * peak) {
        rows.push_back(a);
        cols.push_back(b);
      }
    }
  }
  const auto m = static_cast<Eigen::Index>(rows.size());
  if (m < 6) throw NumericError("double-Gauss fit: fewer than 6 samples above threshold");

  Eigen::MatrixXd design(m, 3);
  Eigen::VectorXd target(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const double ts = grid.theta[static_cast<std::size_t>(rows[k])];
    const double ti = grid.theta[static_cast<std::size_t>(cols[k])];
    design(k, 0) = 2.0 * (ts + ti) * (ts + ti);
    design(k, 1) = 2.0 * (ts - ti) * (ts - ti);
    design(k, 2) = 1.0;
    target(k) = -std::log(intensity(rows[k], cols[k]) / peak);
  }
  const Eigen::Vector3d coef = design.colPivHouseholderQr().solve(target);

  double err2 = 0.0, ref2 = 0.0;
  for (Eigen::Index k = 0; k < m; ++k) {
    const double data = intensity(rows[k], cols[k]) / peak;
    const double fit = std::exp(-design.row(k).dot(coef));
    err2 += (fit - data) * (fit - data);
    ref2 += data * data;
  }
  DoubleGaussFit out;
  out.a = coef(0);
  out.b = coef(1);
  out.offset = coef(2);
  out.residual = std::sqrt(err2 / ref2);
  out.points = static_cast<int>(m);
  out.applicable = out.residual <= 0.1;
  return out;
}

}  // namespace walkoff
