#pragma once

#include <Eigen/Dense>
#include <vector>

#include "sphdeconv/filters.hpp"
#include "sphdeconv/harmonics.hpp"
#include "sphdeconv/sphere_geometry.hpp"

namespace sphdeconv {

struct LsqReport {
  CoefficientVector solution;
  double residual = 0.0;  ///< sqrt(sum_j tau_j |y_j - F p(x_j)|^2)
  std::vector<double> singular_values;  ///< descending
  double frame_lower_active = 0.0;      ///< sigma_min^2, 0 when rows < columns
  double frame_upper_active = 0.0;      ///< sigma_max^2
  int rank = 0;
  bool rank_deficient = false;
  std::vector<std::size_t> active_indices;  ///< flat indices with b_m != 0
};

/// Flat indices of degree <= m whose multiplier is non-zero.
std::vector<std::size_t> active_indices(const MultiplierFilter& filt, int m);

/// Rows are nodes, columns the active indices; entry sqrt(tau_j) b_m Y_k(x_j).
Eigen::MatrixXd design_matrix(const MultiplierFilter& filt, const MzFamily& fam, int m);

/// Minimum-norm weighted least squares over Q_m via the SVD pseudoinverse
/// (relative cutoff 1e-12 sigma_max). Inactive coefficients are left at zero.
LsqReport lsq_solve(const MultiplierFilter& filt, const MzFamily& fam, int m,
                    const std::vector<double>& y);

/// lsq_solve with the identity filter.
LsqReport reconstruct_direct(const MzFamily& fam, int m, const std::vector<double>& y);

}  // namespace sphdeconv
