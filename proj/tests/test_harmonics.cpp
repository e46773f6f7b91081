#include <doctest.h>

#include <cmath>
#include <random>

#include "sphdeconv/error.hpp"
#include "sphdeconv/harmonics.hpp"
#include "sphdeconv/quadrature.hpp"

using namespace sphdeconv;

namespace {

SpherePoint random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return SpherePoint::make(std::acos(1.0 - 2.0 * u(rng)), kTwoPi * u(rng));
}

// Gauss-Legendre in cos(theta) times the trapezoid rule in phi; exact for
// band-limited integrands of degree below the rule sizes.
struct ProductGrid {
  std::vector<SpherePoint> points;
  std::vector<double> weights;
  explicit ProductGrid(int n) {
    const GaussLegendreRule g = gauss_legendre(n);
    const int M = 2 * n;
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < M; ++k) {
        points.push_back({std::acos(g.nodes[i]), kTwoPi * k / M});
        weights.push_back(g.weights[i] / 2.0 / M);
      }
    }
  }
};

}  // namespace

TEST_CASE("flat index round trip") {
  for (std::size_t k = 0; k < 500; ++k) CHECK(HarmonicIndex::from_flat(k).flat() == k);
  CHECK(HarmonicIndex{3, 1}.flat() == 9);
}

TEST_CASE("constant basis function and addition theorem") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 20; ++k) {
    const SpherePoint x = random_point(rng);
    CHECK(eval_basis({0, 1}, x) == doctest::Approx(1.0));
    const auto y = eval_basis_all(20, x);
    for (int m = 0; m <= 20; ++m) {
      double s = 0.0;
      for (int ell = 1; ell <= 2 * m + 1; ++ell) s += std::pow(y[HarmonicIndex{m, ell}.flat()], 2);
      CHECK(std::abs(s - (2 * m + 1)) <= 1e-10);
    }
  }
}

TEST_CASE("orthonormality on a product grid") {
  const int M = 8;
  const ProductGrid grid(20);
  const std::size_t n = coefficient_count(M);
  std::vector<double> gram(n * n, 0.0), y(n);
  for (std::size_t q = 0; q < grid.points.size(); ++q) {
    eval_basis_all(M, grid.points[q], y);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) gram[i * n + j] += grid.weights[q] * y[i] * y[j];
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) worst = std::max(worst, std::abs(gram[i * n + j] - (i == j)));
  CHECK(worst <= 1e-8);
}

TEST_CASE("eval_poly") {
  std::mt19937_64 rng(12);
  CoefficientVector one(4);
  one[0] = 1.0;
  CHECK(eval_poly(one, random_point(rng)) == doctest::Approx(1.0));

  const SpherePoint x = random_point(rng);
  CoefficientVector unit(5);
  unit.at({4, 6}) = 1.0;
  CHECK(eval_poly(unit, x) == doctest::Approx(eval_basis({4, 6}, x)).epsilon(1e-14));

  const CoefficientVector c = random_poly(5, {0.0}, 3, false);
  for (int k = 0; k < 10; ++k) {
    const SpherePoint p = random_point(rng);
    double naive = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) naive += c[i] * eval_basis(HarmonicIndex::from_flat(i), p);
    CHECK(eval_poly(c, p) == doctest::Approx(naive).epsilon(1e-12));
  }
}

TEST_CASE("Parseval on a product grid") {
  const ProductGrid grid(24);
  const CoefficientVector c = random_poly(10, {1.0}, 77, false);
  double integral = 0.0;
  for (std::size_t q = 0; q < grid.points.size(); ++q) {
    integral += grid.weights[q] * std::pow(eval_poly(c, grid.points[q]), 2);
  }
  CHECK(integral == doctest::Approx(c.l2_norm() * c.l2_norm()).epsilon(1e-8));
}

TEST_CASE("zonal kernel") {
  std::mt19937_64 rng(13);
  const SpherePoint x = random_point(rng);
  CHECK(zonal_kernel(4, x, x) == doctest::Approx(9.0));
  CHECK(zonal_kernel(1, {0.0, 0.0}, {kPi, 0.0}) == doctest::Approx(-3.0));
  for (int k = 0; k < 50; ++k) {
    const SpherePoint a = random_point(rng), b = random_point(rng);
    for (int m = 0; m <= 20; ++m) {
      const auto ya = eval_basis_all(m, a), yb = eval_basis_all(m, b);
      double s = 0.0;
      for (int ell = 1; ell <= 2 * m + 1; ++ell) {
        const std::size_t i = HarmonicIndex{m, ell}.flat();
        s += ya[i] * yb[i];
      }
      CHECK(std::abs(zonal_kernel(m, a, b) - s) <= 1e-10);
    }
  }
}

TEST_CASE("zonal kernel depends only on distance") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    const double d = kPi * u(rng);
    // A pair at the pole and a pair on the equator with the same separation.
    const SpherePoint a{0.0, 0.0}, b{d, kTwoPi * u(rng)};
    const double phi = kTwoPi * u(rng);
    const SpherePoint c = SpherePoint::make(kPi / 2, phi), e = SpherePoint::make(kPi / 2, phi + d);
    for (int m = 0; m <= 10; ++m) CHECK(std::abs(zonal_kernel(m, a, b) - zonal_kernel(m, c, e)) <= 1e-10);
  }
}

TEST_CASE("sobolev norm") {
  CoefficientVector one(3);
  one[0] = 1.0;
  CHECK(sobolev_norm(one, {2.5}) == doctest::Approx(1.0));
  const CoefficientVector c = random_poly(6, {0.0}, 5, false);
  CHECK(sobolev_norm(c, {0.0}) == doctest::Approx(c.l2_norm()));
  CoefficientVector e(2);
  e.at({1, 2}) = 1.0;
  CHECK(sobolev_norm(e, {2.0}) == doctest::Approx(3.0));
}

TEST_CASE("projection") {
  CoefficientVector one(3);
  one[0] = 1.0;
  CHECK(project(one, 0)[0] == 1.0);
  const CoefficientVector c = random_poly(6, {0.0}, 6, false);
  CoefficientVector sum(6);
  for (int m = 0; m <= 6; ++m) sum += project(c, m);
  for (std::size_t k = 0; k < c.size(); ++k) CHECK(sum[k] == c[k]);
  const CoefficientVector p2 = project(c, 2), p3 = project(c, 3);
  double dot = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) dot += p2[k] * p3[k];
  CHECK(dot == 0.0);
}

TEST_CASE("random polynomials") {
  const CoefficientVector a = random_poly(8, {2.0}, 99, true);
  const CoefficientVector b = random_poly(8, {2.0}, 99, true);
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == b[k]);
  CHECK(sobolev_norm(a, {2.0}) == doctest::Approx(1.0).epsilon(1e-12));
  double previous = 0.0;
  for (double s : {0.0, 0.5, 1.0, 2.0, 3.0}) {
    const double v = sobolev_norm(a, {s});
    CHECK(std::isfinite(v));
    CHECK(v >= previous);
    previous = v;
  }
}

TEST_CASE("coefficient vector validation") {
  CHECK_THROWS_AS(CoefficientVector(2, std::vector<double>(8)), Error);
  CHECK_THROWS_AS(CoefficientVector(-1), Error);
  CHECK_THROWS_AS(CoefficientVector(2) + CoefficientVector(3), Error);
  CHECK(CoefficientVector(2).resized(4).size() == 25);
}
