#include "sphdeconv/reconstruct.hpp"

#include <cmath>
#include <string>

#include "sphdeconv/error.hpp"

namespace sphdeconv {

namespace {

void check_inputs(const MultiplierFilter& filt, const MzFamily& fam, int m) {
  require(m >= 0, "design_matrix: degree must be non-negative");
  require(m <= filt.m_max(), "design_matrix: degree " + std::to_string(m) +
                                 " exceeds filter length " + std::to_string(filt.m_max()));
  require(!fam.nodes.empty(), "design_matrix: empty family");
  require(fam.nodes.size() == fam.weights.size(), "design_matrix: nodes and weights differ in length");
}

}  // namespace

std::vector<std::size_t> active_indices(const MultiplierFilter& filt, int m) {
  std::vector<std::size_t> out;
  for (int d = 0; d <= m && d <= filt.m_max(); ++d) {
    if (filt.b[d] == 0.0) continue;
    for (int ell = 1; ell <= 2 * d + 1; ++ell) out.push_back(HarmonicIndex{d, ell}.flat());
  }
  return out;
}

Eigen::MatrixXd design_matrix(const MultiplierFilter& filt, const MzFamily& fam, int m) {
  check_inputs(filt, fam, m);
  const std::vector<std::size_t> cols = active_indices(filt, m);
  require(!cols.empty(), "design_matrix: every multiplier up to degree " + std::to_string(m) +
                             " is zero, so F(Q_m) is trivial");
  Eigen::MatrixXd D(static_cast<Eigen::Index>(fam.size()), static_cast<Eigen::Index>(cols.size()));
  std::vector<double> basis(coefficient_count(m));
  for (std::size_t j = 0; j < fam.size(); ++j) {
    eval_basis_all(m, fam.nodes[j], basis);
    const double w = std::sqrt(fam.weights[j]);
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const int degree = HarmonicIndex::from_flat(cols[c]).m;
      D(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(c)) =
          w * filt.b[degree] * basis[cols[c]];
    }
  }
  return D;
}

LsqReport lsq_solve(const MultiplierFilter& filt, const MzFamily& fam, int m,
                    const std::vector<double>& y) {
  check_inputs(filt, fam, m);
  require(y.size() == fam.size(), "lsq_solve: " + std::to_string(y.size()) +
                                      " values for " + std::to_string(fam.size()) + " nodes");
  const Eigen::MatrixXd D = design_matrix(filt, fam, m);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(y.size()));
  for (std::size_t j = 0; j < y.size(); ++j) rhs(static_cast<Eigen::Index>(j)) = std::sqrt(fam.weights[j]) * y[j];

  Eigen::BDCSVD<Eigen::MatrixXd> svd(D, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  const double cutoff = 1e-12 * smax;
  Eigen::VectorXd utb = svd.matrixU().transpose() * rhs;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) {
      utb(i) /= sv(i);
      ++rank;
    } else {
      utb(i) = 0.0;
    }
  }
  const Eigen::VectorXd x = svd.matrixV() * utb;

  LsqReport report;
  report.active_indices = active_indices(filt, m);
  report.solution = CoefficientVector(m);
  for (std::size_t c = 0; c < report.active_indices.size(); ++c) {
    report.solution[report.active_indices[c]] = x(static_cast<Eigen::Index>(c));
  }
  report.residual = (D * x - rhs).norm();
  report.singular_values.assign(sv.data(), sv.data() + sv.size());
  report.frame_upper_active = smax * smax;
  const bool tall = D.rows() >= D.cols();
  const double smin = sv.size() > 0 ? sv(sv.size() - 1) : 0.0;
  report.frame_lower_active = tall ? smin * smin : 0.0;
  report.rank = rank;
  report.rank_deficient = rank < D.cols();
  return report;
}

LsqReport reconstruct_direct(const MzFamily& fam, int m, const std::vector<double>& y) {
  return lsq_solve(MultiplierFilter::identity(m), fam, m, y);
}

}  // namespace sphdeconv
