#pragma once

#include <Eigen/Dense>
#include <vector>

#include "walkoff/grid.hpp"

namespace walkoff {

struct SchmidtSpectrum {
  std::vector<double> lambdas;  // descending, sum 1
  double K = 1.0;               // 1 / sum(lambda^2)
  /// Leading mode profiles on the grid axis, columns normalized so that
  /// sum |u|^2 * step = 1.
  Eigen::MatrixXcd modes_s;
  Eigen::MatrixXcd modes_i;
  std::vector<double> singular_values;  // of F * step, descending
};

/// SVD of the quadrature-weighted kernel F * step; keeps the leading `rank` modes.
SchmidtSpectrum schmidt_decompose(const TPAGrid& grid, int rank);

/// sum_{n<r} s_n u_n(theta_s) v_n(theta_i)^*, in the units of the original grid values.
Eigen::MatrixXcd schmidt_reconstruct(const SchmidtSpectrum& spectrum, int rank);

struct DoubleGaussFit {
  double a = 0.0;  // rad^-2, sum direction
  double b = 0.0;  // rad^-2, difference direction
  double offset = 0.0;
  double residual = 0.0;  // ||fit - |F|^2||_2 / |||F|^2||_2 over the fitted region
  int points = 0;
  bool applicable = true;  // residual <= 0.1
};

/// Least squares of -ln|F|^2 = 2a (theta_s + theta_i)^2 + 2b (theta_s - theta_i)^2 + c over
/// the samples with |F|^2 > 0.01.
DoubleGaussFit double_gauss_fit(const TPAGrid& grid);

}  // namespace walkoff
