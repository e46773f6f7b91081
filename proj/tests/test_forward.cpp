#include <doctest.h>

#include <cmath>
#include <random>

#include "sphdeconv/error.hpp"
#include "sphdeconv/forward.hpp"

using namespace sphdeconv;

TEST_CASE("apply multiplier") {
  const CoefficientVector c = random_poly(6, {1.0}, 1, false);
  const CoefficientVector same = apply_multiplier(MultiplierFilter::identity(6), c);
  for (std::size_t k = 0; k < c.size(); ++k) CHECK(same[k] == c[k]);

  std::vector<double> b(7, 0.0);
  b[0] = 1.0;
  const CoefficientVector mean = apply_multiplier(MultiplierFilter::custom(b), c);
  CHECK(mean[0] == c[0]);
  for (std::size_t k = 1; k < c.size(); ++k) CHECK(mean[k] == 0.0);

  const MultiplierFilter f = cap_multipliers(0.5, 6), g = MultiplierFilter::custom({1, 2, 3, 4, 5, 6, 7});
  std::vector<double> fg(7);
  for (int m = 0; m <= 6; ++m) fg[m] = f.b[m] * g.b[m];
  const CoefficientVector twice = apply_multiplier(g, apply_multiplier(f, c));
  const CoefficientVector once = apply_multiplier(MultiplierFilter::custom(fg), c);
  for (std::size_t k = 0; k < c.size(); ++k) CHECK(twice[k] == doctest::Approx(once[k]).epsilon(1e-15));

  CHECK_THROWS_AS(apply_multiplier(MultiplierFilter::identity(5), c), Error);
}

TEST_CASE("multiplier linearity and norm bound") {
  MultiplierFilter f = cap_multipliers(2 * kPi / 41, 20);
  const double c_fit = fit_decay(f, 1.5);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const CoefficientVector a = random_poly(20, {0.5}, seed, false);
    const CoefficientVector b = random_poly(20, {1.0}, seed + 100, false);
    const CoefficientVector lhs = apply_multiplier(f, 2.5 * a + b);
    const CoefficientVector rhs = 2.5 * apply_multiplier(f, a) + apply_multiplier(f, b);
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK(std::abs(lhs[k] - rhs[k]) <= 1e-14 * std::max(1.0, std::abs(rhs[k])));
    }
    for (double omega : {0.0, 1.0, 2.0}) {
      CHECK(sobolev_norm(apply_multiplier(f, a), {omega + 1.5}) <= c_fit * sobolev_norm(a, {omega}));
    }
  }
}

TEST_CASE("sampling") {
  CoefficientVector one(3);
  one[0] = 1.0;
  const std::vector<SpherePoint> nodes{{0.3, 1.0}, {2.0, 4.0}, {kPi, 0.0}};
  for (double v : sample_at(one, nodes)) CHECK(v == doctest::Approx(1.0));
  CHECK(sample_at(one, {}).empty());

  CoefficientVector z(1);
  z.at({1, 1}) = 1.0;
  const SpherePoint north{0.0, 0.0};
  CHECK(sample_at(z, {north})[0] == doctest::Approx(std::sqrt(3.0)));
  CHECK(sample_at(z, {north})[0] == doctest::Approx(eval_poly(z, north)));
}

TEST_CASE("noise") {
  const std::vector<double> v{1.0, -2.0, 3.5, 0.0};
  CHECK(add_noise(v, 0.0, 5) == v);
  std::vector<double> many(1000, 0.25);
  const auto a = add_noise(many, 0.01, 9), b = add_noise(many, 0.01, 9), c = add_noise(many, 0.01, 10);
  CHECK(a == b);
  CHECK(a != c);
  for (std::size_t j = 0; j < a.size(); ++j) CHECK(std::abs(a[j] - many[j]) <= 0.01);
  CHECK_THROWS_AS(add_noise(v, -1.0, 1), Error);
}

TEST_CASE("simulate") {
  const MzFamily fam = pick_nodes(build_partition(200), NodeRule::AreaCenter);
  CoefficientVector one(4);
  one[0] = 1.0;
  const MeasurementSet ms = simulate(one, MultiplierFilter::identity(4), fam, 0.0, 1);
  CHECK_NOTHROW(ms.validate());
  for (double y : ms.y) CHECK(y == doctest::Approx(1.0));

  const CoefficientVector truth = random_poly(8, {2.0}, 3, true);
  const MultiplierFilter f = cap_multipliers(0.4, 8);
  const std::vector<double> exact = sample_at(apply_multiplier(f, truth), fam.nodes);
  const MeasurementSet clean = simulate(truth, f, fam, 0.0, 2);
  CHECK(clean.y == exact);
  const MeasurementSet noisy = simulate(truth, f, fam, 1e-3, 2);
  for (std::size_t j = 0; j < exact.size(); ++j) CHECK(std::abs(noisy.y[j] - exact[j]) <= 1e-3);
  REQUIRE(noisy.truth_ref);
  CHECK(*noisy.truth_ref == *clean.truth_ref);
  CHECK(*simulate(truth, cap_multipliers(0.5, 8), fam, 0.0, 2).truth_ref != *clean.truth_ref);
  CHECK_THROWS_AS(simulate(truth, MultiplierFilter::identity(5), fam, 0.0, 1), Error);
}
