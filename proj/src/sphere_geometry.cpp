#include "sphdeconv/sphere_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "sphdeconv/error.hpp"

namespace sphdeconv {

namespace {

double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

// Minimises a unimodal function on [lo, hi].
template <typename F>
double golden_minimum(F&& f, double lo, double hi, int iterations = 80) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iterations && b - a > 1e-15; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return std::min({fc, fd, f(lo), f(hi)});
}

bool is_full_circle(const Region& r) { return r.phi_hi - r.phi_lo >= kTwoPi - 1e-12; }

// Largest distance from (theta_c, mid-longitude) to any point of the region.
double max_distance_from(const Region& r, double theta_c) {
  const double w = 0.5 * (r.phi_hi - r.phi_lo);
  // For fixed theta the farthest point sits on a wedge edge; along theta the
  // cosine of the distance is R cos(theta - alpha).
  const double p = std::cos(theta_c);
  const double q = std::sin(theta_c) * std::cos(w);
  auto cos_dist = [&](double th) { return p * std::cos(th) + q * std::sin(th); };
  double lowest = std::min(cos_dist(r.theta_lo), cos_dist(r.theta_hi));
  const double alpha = std::atan2(q, p);
  for (double critical : {alpha + kPi, alpha - kPi}) {
    if (critical >= r.theta_lo && critical <= r.theta_hi) {
      lowest = std::min(lowest, cos_dist(critical));
    }
  }
  return std::acos(clamp_unit(lowest));
}

// A lower bound on the distance from (theta_c, mid-longitude) to the region
// boundary, using the full circles that carry each boundary piece.
double boundary_clearance(const Region& r, double theta_c) {
  double clearance = kPi;
  if (r.theta_lo > 0.0) clearance = std::min(clearance, theta_c - r.theta_lo);
  if (r.theta_hi < kPi) clearance = std::min(clearance, r.theta_hi - theta_c);
  if (!is_full_circle(r)) {
    const double w = 0.5 * (r.phi_hi - r.phi_lo);
    clearance = std::min(clearance, std::asin(clamp_unit(std::sin(theta_c) * std::abs(std::sin(w)))));
  }
  return std::max(clearance, 0.0);
}

}  // namespace

SpherePoint SpherePoint::make(double theta, double phi) {
  require(std::isfinite(theta) && std::isfinite(phi), "SpherePoint: non-finite coordinate");
  require(theta >= -1e-12 && theta <= kPi + 1e-12,
          "SpherePoint: colatitude " + std::to_string(theta) + " outside [0, pi]");
  double wrapped = std::fmod(phi, kTwoPi);
  if (wrapped < 0.0) wrapped += kTwoPi;
  if (wrapped >= kTwoPi) wrapped = 0.0;
  return SpherePoint{std::clamp(theta, 0.0, kPi), wrapped};
}

std::array<double, 3> SpherePoint::unit_vector() const {
  const double st = std::sin(theta);
  return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

double geodesic_distance(const SpherePoint& p, const SpherePoint& q) {
  const auto u = p.unit_vector();
  const auto v = q.unit_vector();
  return std::acos(clamp_unit(u[0] * v[0] + u[1] * v[1] + u[2] * v[2]));
}

bool Region::contains(const SpherePoint& p) const {
  if (p.theta < theta_lo || p.theta > theta_hi) return false;
  if (p.phi < phi_lo) return false;
  return p.phi < phi_hi || (phi_hi >= kTwoPi && p.phi <= phi_hi);
}

double region_measure(const Region& r) {
  return (std::cos(r.theta_lo) - std::cos(r.theta_hi)) * (r.phi_hi - r.phi_lo) / (4.0 * kPi);
}

double enclosing_cap_radius(const Region& r) {
  return golden_minimum([&](double t) { return max_distance_from(r, t); }, r.theta_lo,
                        r.theta_hi);
}

double inscribed_cap_radius(const Region& r) {
  return -golden_minimum([&](double t) { return -boundary_clearance(r, t); }, r.theta_lo,
                         r.theta_hi);
}

std::vector<long> build_rounding_sequence(std::span<const double> y, bool symmetric) {
  const std::size_t s = y.size();
  require(s > 0, "rounding sequence: empty input");
  double total = 0.0;
  for (double v : y) total += v;
  const double rounded_total = std::nearbyint(total);
  if (std::abs(total - rounded_total) > 1e-6) {
    fail(ErrorKind::InvalidArgument,
         "rounding sequence: total " + std::to_string(total) + " is not an integer");
  }

  std::vector<long> ell(s, 0);
  auto cumulative_round = [&](std::size_t count) {
    double prefix = 0.0;
    long previous = 0;
    for (std::size_t k = 0; k < count; ++k) {
      prefix += y[k];
      const long r = static_cast<long>(std::nearbyint(prefix));
      ell[k] = r - previous;
      previous = r;
    }
    return previous;
  };

  if (!symmetric) {
    const long head = cumulative_round(s - 1);
    ell[s - 1] = static_cast<long>(rounded_total) - head;
    return ell;
  }

  require(s % 2 == 1, "rounding sequence: symmetric mode needs an odd length");
  const std::size_t half = (s - 1) / 2;
  const long head = cumulative_round(half);
  for (std::size_t k = 0; k < half; ++k) ell[s - 1 - k] = ell[k];
  ell[half] = static_cast<long>(rounded_total) - 2 * head;
  return ell;
}

RoundingCheck check_rounding_sequence(std::span<const double> y, std::span<const long> ell,
                                      double tol) {
  RoundingCheck c;
  const std::size_t s = y.size();
  if (s == 0 || ell.size() != s) return c;

  double y_total = 0.0;
  long ell_total = 0;
  for (std::size_t i = 0; i < s; ++i) {
    y_total += y[i];
    ell_total += ell[i];
  }
  c.total_matches = std::abs(y_total - static_cast<double>(ell_total)) <= tol;

  const double first = std::abs(y[0] - static_cast<double>(ell[0]));
  const double last = std::abs(y[s - 1] - static_cast<double>(ell[s - 1]));
  c.ends_within_half = first <= 0.5 + tol && last <= 0.5 + tol && std::abs(first - last) <= tol;

  c.interior_within_one = true;
  for (std::size_t i = 1; i + 1 < s; ++i) {
    if (std::abs(y[i] - static_cast<double>(ell[i])) > 1.0 + tol) c.interior_within_one = false;
  }

  c.prefixes_within_half = true;
  double drift = 0.0;
  for (std::size_t k = 0; k < s; ++k) {
    drift += y[k] - static_cast<double>(ell[k]);
    if (std::abs(drift) > 0.5 + tol) c.prefixes_within_half = false;
  }

  c.symmetric = true;
  for (std::size_t i = 0; i < s; ++i) {
    if (ell[i] != ell[s - 1 - i]) c.symmetric = false;
  }
  return c;
}

double EqualAreaPartition::c4() const { return max_cap_radius * std::sqrt(static_cast<double>(N)); }
double EqualAreaPartition::c3() const {
  return min_inscribed_radius * std::sqrt(static_cast<double>(N));
}

EqualAreaPartition build_partition(long N) {
  if (N < 50) {
    fail(ErrorKind::InvalidArgument,
         "partition: N = " + std::to_string(N) + " but the construction needs N >= 50");
  }
  const double n = static_cast<double>(N);
  EqualAreaPartition p;
  p.N = N;
  p.theta0 = std::acos(1.0 - 50.0 / n);

  int s = static_cast<int>(std::floor(std::sqrt(kPi * n) / 2.0));
  if (s % 2 == 0) --s;
  p.s = s;
  p.delta_theta = (kPi - 2.0 * p.theta0) / s;

  // Band sizes are mirror images of each other; computing the first half and
  // mirroring keeps them bitwise symmetric.
  const int half = (s - 1) / 2;
  auto theta_prime = [&](int k) { return p.theta0 + k * p.delta_theta; };
  p.y.assign(static_cast<std::size_t>(s), 0.0);
  for (int k = 1; k <= half + 1; ++k) {
    p.y[k - 1] = n * (std::cos(theta_prime(k - 1)) - std::cos(theta_prime(k))) / 2.0;
  }
  for (int k = 1; k <= half; ++k) p.y[s - k] = p.y[k - 1];

  const std::vector<long> inner = build_rounding_sequence(p.y, true);
  p.ell.reserve(inner.size() + 2);
  p.ell.push_back(25);
  p.ell.insert(p.ell.end(), inner.begin(), inner.end());
  p.ell.push_back(25);

  p.theta_bounds.reserve(p.ell.size() + 1);
  p.theta_bounds.push_back(0.0);
  long cumulative = 0;
  for (std::size_t k = 0; k < p.ell.size(); ++k) {
    cumulative += p.ell[k];
    if (k + 1 == p.ell.size()) {
      p.theta_bounds.push_back(kPi);
    } else {
      p.theta_bounds.push_back(std::acos(clamp_unit(1.0 - 2.0 * static_cast<double>(cumulative) / n)));
    }
  }

  p.regions.reserve(static_cast<std::size_t>(N));
  for (std::size_t k = 0; k < p.ell.size(); ++k) {
    const long wedges = p.ell[k];
    for (long j = 1; j <= wedges; ++j) {
      Region r;
      r.theta_lo = p.theta_bounds[k];
      r.theta_hi = p.theta_bounds[k + 1];
      r.phi_lo = kTwoPi * static_cast<double>(j - 1) / static_cast<double>(wedges);
      r.phi_hi = j == wedges ? kTwoPi : kTwoPi * static_cast<double>(j) / static_cast<double>(wedges);
      r.band_index = static_cast<int>(k);
      r.wedge_index = static_cast<int>(j);
      p.regions.push_back(r);
    }
  }

  // Regions within a band are congruent, so one representative per band suffices.
  p.max_cap_radius = 0.0;
  p.min_inscribed_radius = kPi;
  for (std::size_t i = 0; i < p.regions.size(); ++i) {
    if (i > 0 && p.regions[i].band_index == p.regions[i - 1].band_index) continue;
    p.max_cap_radius = std::max(p.max_cap_radius, enclosing_cap_radius(p.regions[i]));
    p.min_inscribed_radius = std::min(p.min_inscribed_radius, inscribed_cap_radius(p.regions[i]));
  }
  return p;
}

SpherePoint area_center(const Region& r) {
  const double c = 0.5 * (std::cos(r.theta_lo) + std::cos(r.theta_hi));
  return SpherePoint{std::acos(clamp_unit(c)), 0.5 * (r.phi_lo + r.phi_hi)};
}

MzFamily pick_nodes(const EqualAreaPartition& p, NodeRule rule, std::uint64_t seed) {
  MzFamily fam;
  fam.nodes.reserve(p.regions.size());
  fam.weights.reserve(p.regions.size());
  std::mt19937_64 engine(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (const Region& r : p.regions) {
    SpherePoint x;
    if (rule == NodeRule::AreaCenter) {
      x = area_center(r);
    } else {
      const double u = unit(engine);
      const double v = unit(engine);
      const double c_lo = std::cos(r.theta_lo);
      const double c_hi = std::cos(r.theta_hi);
      x.theta = std::clamp(std::acos(clamp_unit(c_lo - u * (c_lo - c_hi))), r.theta_lo, r.theta_hi);
      x.phi = r.phi_lo + v * (r.phi_hi - r.phi_lo);
      if (x.phi >= r.phi_hi) x.phi = r.phi_lo;
    }
    fam.nodes.push_back(x);
    fam.weights.push_back(1.0 / static_cast<double>(p.N));
  }
  return fam;
}

}  // namespace sphdeconv
