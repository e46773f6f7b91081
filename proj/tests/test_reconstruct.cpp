#include <doctest.h>

#include <cmath>
#include <random>

#include "sphdeconv/error.hpp"
#include "sphdeconv/forward.hpp"
#include "sphdeconv/reconstruct.hpp"

using namespace sphdeconv;

namespace {

const MzFamily& family400() {
  static const MzFamily fam = pick_nodes(build_partition(400), NodeRule::AreaCenter);
  return fam;
}

double weighted_norm(const std::vector<double>& v, const std::vector<double>& w) {
  double s = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) s += w[j] * v[j] * v[j];
  return std::sqrt(s);
}

double residual_of(const CoefficientVector& p, const MultiplierFilter& f, const MzFamily& fam,
                   const std::vector<double>& y) {
  const std::vector<double> fp = sample_at(apply_multiplier(f, p), fam.nodes);
  std::vector<double> r(y.size());
  for (std::size_t j = 0; j < y.size(); ++j) r[j] = y[j] - fp[j];
  return weighted_norm(r, fam.weights);
}

}  // namespace

TEST_CASE("design matrix") {
  const MzFamily& fam = family400();
  const Eigen::MatrixXd a = design_matrix(MultiplierFilter::identity(4), fam, 0);
  REQUIRE(a.cols() == 1);
  CHECK(a.col(0).squaredNorm() == doctest::Approx(1.0).epsilon(1e-13));

  const MultiplierFilter gap = MultiplierFilter::custom({1.0, 0.0, 0.5});
  CHECK(design_matrix(gap, fam, 2).cols() == 6);
  CHECK(active_indices(gap, 2).size() == 6);
  CHECK_THROWS_AS(design_matrix(MultiplierFilter::custom({0.0, 0.0}), fam, 1), Error);

  const MultiplierFilter cap = cap_multipliers(0.6, 5);
  const CoefficientVector p = random_poly(5, {1.0}, 4, false);
  const Eigen::MatrixXd t = design_matrix(cap, fam, 5);
  const Eigen::Map<const Eigen::VectorXd> pv(p.values().data(), static_cast<Eigen::Index>(p.size()));
  const Eigen::VectorXd lhs = t * pv;
  const MeasurementSet ms = simulate(p, cap, fam, 0.0, 0);
  for (std::size_t j = 0; j < fam.size(); ++j) {
    CHECK(lhs[static_cast<Eigen::Index>(j)] == doctest::Approx(std::sqrt(fam.weights[j]) * ms.y[j]).epsilon(1e-12));
  }
}

TEST_CASE("exact recovery") {
  const MzFamily& fam = family400();
  const LsqReport zero = lsq_solve(cap_multipliers(0.5, 8), fam, 8, std::vector<double>(fam.size(), 0.0));
  CHECK(zero.solution.l2_norm() == 0.0);

  const LsqReport five = reconstruct_direct(fam, 6, std::vector<double>(fam.size(), 5.0));
  CHECK(five.solution[0] == doctest::Approx(5.0).epsilon(1e-12));
  for (std::size_t k = 1; k < five.solution.size(); ++k) CHECK(std::abs(five.solution[k]) <= 1e-11);

  const MultiplierFilter cap = cap_multipliers(2 * kPi / 41, 10);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const CoefficientVector truth = random_poly(8, {1.0}, seed, true);
    const MeasurementSet ms = simulate(truth, cap, fam, 0.0, seed);
    const LsqReport rep = lsq_solve(cap, fam, 8, ms.y);
    CHECK_FALSE(rep.rank_deficient);
    CHECK((rep.solution - truth).l2_norm() <= 1e-8);
  }
}

TEST_CASE("minimum norm on inactive degrees") {
  const MzFamily& fam = family400();
  const MultiplierFilter gap = MultiplierFilter::custom({1.0, 0.7, 0.0, 0.4});
  const CoefficientVector truth = random_poly(3, {0.0}, 11, true);
  const LsqReport rep = lsq_solve(gap, fam, 3, simulate(truth, gap, fam, 0.0, 0).y);
  for (int ell = 1; ell <= 5; ++ell) CHECK(rep.solution.at({2, ell}) == 0.0);
  CHECK(rep.solution.at({3, 4}) == doctest::Approx(truth.at({3, 4})).epsilon(1e-9));
}

TEST_CASE("orthogonality barrier") {
  const MzFamily& fam = pick_nodes(build_partition(4000), NodeRule::AreaCenter);
  const int m = 5;
  CoefficientVector high(m + 1);
  high.at({m + 1, 3}) = 1.0;
  const std::vector<double> y = sample_at(high, fam.nodes);
  const LsqReport rep = reconstruct_direct(fam, m, y);
  // Degree m+1 is orthogonal to Q_m, so the least-squares fit only picks up sampling error.
  CHECK(rep.solution.l2_norm() <= 0.1);
}

TEST_CASE("least squares optimality and stability") {
  const MzFamily& fam = family400();
  const MultiplierFilter cap = cap_multipliers(0.8, 9);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  std::vector<double> y(fam.size());
  for (double& v : y) v = g(rng);

  const int m = 9;
  const LsqReport rep = lsq_solve(cap, fam, m, y);
  CHECK(rep.residual == doctest::Approx(residual_of(rep.solution, cap, fam, y)).epsilon(1e-10));
  for (int trial = 0; trial < 20; ++trial) {
    CoefficientVector dir(m);
    for (std::size_t k = 0; k < dir.size(); ++k) dir[k] = g(rng);
    for (double t : {1e-3, -1e-3, 0.1}) {
      CHECK(residual_of(rep.solution + t * dir, cap, fam, y) >= rep.residual - 1e-12);
    }
  }

  const LsqReport direct = reconstruct_direct(fam, m, y);
  CHECK(direct.solution.l2_norm() <= std::pow(direct.frame_lower_active, -0.5) * weighted_norm(y, fam.weights) * (1 + 1e-12));

  double previous = INFINITY;
  for (int k = 0; k <= 12; ++k) {
    const double r = reconstruct_direct(fam, k, y).residual;
    CHECK(r <= previous + 1e-12);
    previous = r;
  }
}

TEST_CASE("noise robustness") {
  const MzFamily& fam = family400();
  const CoefficientVector truth = random_poly(7, {1.5}, 2, true);
  const MultiplierFilter id = MultiplierFilter::identity(7);
  const double beta = 1e-2;
  const LsqReport clean = lsq_solve(id, fam, 7, simulate(truth, id, fam, 0.0, 0).y);
  const LsqReport noisy = lsq_solve(id, fam, 7, simulate(truth, id, fam, beta, 3).y);
  CHECK((noisy.solution - clean.solution).l2_norm() <= std::pow(noisy.frame_lower_active, -0.5) * beta);
}

TEST_CASE("rank deficiency") {
  const MzFamily fam = pick_nodes(build_partition(50), NodeRule::AreaCenter);
  const LsqReport rep = reconstruct_direct(fam, 9, std::vector<double>(fam.size(), 1.0));
  CHECK(rep.rank_deficient);
  CHECK(rep.frame_lower_active == 0.0);
  CHECK(rep.rank <= 50);
}
