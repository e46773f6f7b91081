#include "sphdeconv/filters.hpp"

#include <algorithm>
#include <math.h>  // pchip calls isnan unqualified

#include <boost/math/interpolators/pchip.hpp>
#include <cmath>
#include <limits>
#include <string>

#include "sphdeconv/error.hpp"
#include "sphdeconv/quadrature.hpp"
#include "sphdeconv/sphere_geometry.hpp"

namespace sphdeconv {

struct RadialProfile::Interp {
  boost::math::interpolators::pchip<std::vector<double>> spline;
};

const char* to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::Cap: return "cap";
    case ProfileKind::Planck: return "planck";
    case ProfileKind::Lunar: return "lunar";
    case ProfileKind::Tabulated: return "tabulated";
  }
  return "unknown";
}

RadialProfile RadialProfile::cap(double theta0) {
  require(theta0 > 0.0 && theta0 <= kPi / 2.0,
          "cap profile: theta0 must satisfy 0 < theta0 <= pi/2, got " + std::to_string(theta0));
  RadialProfile p;
  p.kind_ = ProfileKind::Cap;
  p.p0_ = theta0;
  return p;
}

RadialProfile RadialProfile::planck(double lambda0, double radius) {
  require(lambda0 > 0.0 && radius > 0.0, "planck profile: lambda0 and R must be positive");
  RadialProfile p;
  p.kind_ = ProfileKind::Planck;
  p.p0_ = lambda0;
  p.p1_ = radius;
  return p;
}

RadialProfile RadialProfile::lunar(double radius, double altitude) {
  require(radius > 0.0 && altitude > 0.0, "lunar profile: R and t must be positive");
  RadialProfile p;
  p.kind_ = ProfileKind::Lunar;
  p.p1_ = radius;
  p.p2_ = altitude;
  return p;
}

RadialProfile RadialProfile::tabulated(std::vector<double> r, std::vector<double> values) {
  require(r.size() == values.size(), "tabulated profile: abscissae and values differ in length");
  require(r.size() >= 4, "tabulated profile: need at least 4 samples");
  for (std::size_t i = 1; i < r.size(); ++i) {
    require(r[i] > r[i - 1], "tabulated profile: abscissae must be strictly increasing");
  }
  require(r.front() <= 0.0 && r.back() >= kPi, "tabulated profile: samples must cover [0, pi]");
  for (double v : values) require(std::isfinite(v), "tabulated profile: non-finite sample");
  RadialProfile p;
  p.kind_ = ProfileKind::Tabulated;
  p.r_ = r;
  p.v_ = values;
  p.interp_ = std::make_shared<const Interp>(
      Interp{boost::math::interpolators::pchip<std::vector<double>>(std::move(r), std::move(values))});
  return p;
}

double RadialProfile::lunar_sigma() const { return 0.704 * p2_ + 1.39; }
double RadialProfile::lunar_iota() const { return -4.87e-4 * p2_ + 0.631; }

double RadialProfile::operator()(double r) const {
  switch (kind_) {
    case ProfileKind::Cap:
      return r <= p0_ ? 1.0 : 0.0;
    case ProfileKind::Planck: {
      const double s = std::sin(0.5 * r);
      const double z = 4.0 * kPi * p1_ * s;
      double amp;
      if (std::abs(z) < 1e-4) {
        amp = p0_ * kPi * (1.0 - z * z / 8.0);
      } else {
        amp = p0_ * std::cyl_bessel_j(1.0, z) / (2.0 * p1_ * s);
      }
      return amp * amp;
    }
    case ProfileKind::Lunar: {
      const double sig = lunar_sigma();
      const double u = p1_ * r;
      return std::pow(1.0 + u * u / (2.0 * sig * sig), -lunar_iota() - 1.0);
    }
    case ProfileKind::Tabulated:
      return interp_->spline(std::clamp(r, r_.front(), r_.back()));
  }
  return 0.0;
}

std::vector<double> RadialProfile::breakpoints() const {
  if (kind_ == ProfileKind::Cap) return {p0_};
  if (kind_ == ProfileKind::Tabulated) {
    std::vector<double> out;
    for (double x : r_) {
      if (x > 0.0 && x < kPi) out.push_back(x);
    }
    return out;
  }
  return {};
}

bool RadialProfile::uniform_grid() const {
  if (kind_ != ProfileKind::Tabulated) return false;
  const double h = (r_.back() - r_.front()) / static_cast<double>(r_.size() - 1);
  for (std::size_t i = 0; i < r_.size(); ++i) {
    if (std::abs(r_[i] - (r_.front() + h * static_cast<double>(i))) > 1e-9 * h) return false;
  }
  return true;
}

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::ClosedFormCap: return "closed_form_cap";
    case Provenance::Quadrature: return "quadrature";
    case Provenance::Identity: return "identity";
    case Provenance::Custom: return "custom";
  }
  return "custom";
}

Provenance provenance_from_string(const std::string& s) {
  if (s == "closed_form_cap") return Provenance::ClosedFormCap;
  if (s == "quadrature") return Provenance::Quadrature;
  if (s == "identity") return Provenance::Identity;
  if (s == "custom") return Provenance::Custom;
  fail(ErrorKind::InvalidArgument, "unknown filter provenance '" + s + "'");
}

MultiplierFilter MultiplierFilter::identity(int m_max) {
  require(m_max >= 0, "identity filter: m_max must be non-negative");
  MultiplierFilter f;
  f.b.assign(static_cast<std::size_t>(m_max) + 1, 1.0);
  f.provenance = Provenance::Identity;
  return f;
}

MultiplierFilter MultiplierFilter::custom(std::vector<double> b) {
  require(!b.empty(), "custom filter: empty multiplier sequence");
  for (double v : b) require(std::isfinite(v), "custom filter: non-finite multiplier");
  MultiplierFilter f;
  f.b = std::move(b);
  f.provenance = Provenance::Custom;
  return f;
}

MultiplierFilter cap_multipliers(double theta0, int m_max) {
  require(theta0 > 0.0 && theta0 <= kPi / 2.0,
          "cap_multipliers: theta0 must satisfy 0 < theta0 <= pi/2, got " + std::to_string(theta0));
  require(m_max >= 0, "cap_multipliers: m_max must be non-negative");
  MultiplierFilter f;
  f.provenance = Provenance::ClosedFormCap;
  f.b.resize(static_cast<std::size_t>(m_max) + 1);
  const double x = std::cos(theta0);
  f.b[0] = 0.5 * (1.0 - x);
  if (m_max == 0) return f;
  const double s = std::sin(0.5 * theta0), c = std::cos(0.5 * theta0);
  const double scale = s * s * c * c;
  std::vector<double> p(static_cast<std::size_t>(m_max));
  jacobi_sequence(JacobiParams{1.0, 1.0}, x, p);
  for (int m = 1; m <= m_max; ++m) f.b[m] = p[m - 1] * scale / m;
  return f;
}

MultiplierFilter multipliers_from_profile(const RadialProfile& p, const JacobiParams& params,
                                          int m_max, double tol) {
  require(m_max >= 0, "multipliers_from_profile: m_max must be non-negative");
  require(tol > 0.0, "multipliers_from_profile: tolerance must be positive");
  const std::size_t dim = static_cast<std::size_t>(m_max) + 1;
  std::vector<double> at_one(dim);
  for (int m = 0; m <= m_max; ++m) at_one[m] = jacobi_at_one(m, params);
  const double density = radial_density_constant(params);

  std::vector<double> seq(dim);
  auto integrand = [&](double r, std::span<double> out) {
    const double weight = p(r) * density * std::pow(std::sin(0.5 * r), 2.0 * params.a + 1.0) *
                          std::pow(std::cos(0.5 * r), 2.0 * params.b + 1.0);
    jacobi_sequence(params, std::cos(r), seq);
    for (std::size_t m = 0; m < dim; ++m) out[m] = weight * seq[m] / at_one[m];
  };

  QuadratureOptions opts;
  opts.abs_tol = tol;
  opts.base_panels = std::max(16, 4 * m_max);
  opts.breakpoints = p.breakpoints();
  const QuadratureResult r = integrate_adaptive(integrand, dim, 0.0, kPi, opts);
  if (!r.converged) {
    std::size_t worst = 0;
    for (std::size_t m = 1; m < dim; ++m) {
      if (r.error_estimate[m] > r.error_estimate[worst]) worst = m;
    }
    fail(ErrorKind::NoConvergence,
         "multipliers_from_profile: quadrature did not converge for m = " + std::to_string(worst) +
             " (error estimate " + std::to_string(r.error_estimate[worst]) + ")");
  }
  MultiplierFilter f;
  f.b = r.values;
  f.provenance = Provenance::Quadrature;
  return f;
}

double profile_l2_norm(const RadialProfile& p, const JacobiParams& params) {
  QuadratureOptions opts;
  opts.abs_tol = 1e-10;
  opts.breakpoints = p.breakpoints();
  const double sq = integrate(
      [&](double r) {
        const double g = p(r);
        return g * g * radial_density(r, params);
      },
      0.0, kPi, opts);
  return std::sqrt(sq);
}

double fit_decay(MultiplierFilter& f, double gamma) {
  require(gamma >= 0.0, "fit_decay: gamma must be non-negative");
  require(!f.b.empty(), "fit_decay: empty filter");
  double c = 0.0;
  for (int m = 0; m <= f.m_max(); ++m) {
    c = std::max(c, std::abs(f.b[m]) * std::pow(1.0 + m * (m + 1.0), 0.5 * gamma));
  }
  f.decay_fit = DecayFit{c, gamma, 0, f.m_max()};
  return c;
}

double fit_lower(MultiplierFilter& f, double zeta) {
  require(zeta >= 0.0, "fit_lower: zeta must be non-negative");
  require(!f.b.empty(), "fit_lower: empty filter");
  double c0 = std::numeric_limits<double>::infinity();
  for (int m = 0; m <= f.m_max(); ++m) {
    if (f.b[m] == 0.0) {
      c0 = 0.0;
      break;
    }
    c0 = std::min(c0, std::abs(f.b[m]) * std::pow(1.0 + m * (m + 1.0), 0.5 * zeta));
  }
  f.lower_fit = LowerFit{c0, zeta, 0, f.m_max()};
  return c0;
}

RadialProfile radial_laplacian(const RadialProfile& p, const JacobiParams& params, int points) {
  require(points >= 5, "radial_laplacian: need at least 5 grid points");
  std::vector<double> r, g;
  if (p.kind() == ProfileKind::Tabulated && p.uniform_grid() && p.abscissae().front() == 0.0 &&
      std::abs(p.abscissae().back() - kPi) < 1e-12) {
    r = p.abscissae();
    g = p.samples();
  } else {
    r.resize(static_cast<std::size_t>(points));
    g.resize(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
      r[i] = i + 1 == r.size() ? kPi : kPi * static_cast<double>(i) / (points - 1);
      g[i] = p(r[i]);
    }
  }
  const std::size_t n = r.size();
  const double h = kPi / static_cast<double>(n - 1);
  std::vector<double> out(n);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double d2 = (g[i + 1] - 2.0 * g[i] + g[i - 1]) / (h * h);
    const double d1 = (g[i + 1] - g[i - 1]) / (2.0 * h);
    const double log_a = (2.0 * params.a + 1.0) / 2.0 / std::tan(0.5 * r[i]) -
                         (2.0 * params.b + 1.0) / 2.0 * std::tan(0.5 * r[i]);
    out[i] = d2 + log_a * d1;
  }
  // At the poles g' vanishes and (A'/A) g' tends to a multiple of g''.
  const double d2_lo = (2.0 * g[0] - 5.0 * g[1] + 4.0 * g[2] - g[3]) / (h * h);
  const double d2_hi = (2.0 * g[n - 1] - 5.0 * g[n - 2] + 4.0 * g[n - 3] - g[n - 4]) / (h * h);
  out[0] = (2.0 * params.a + 2.0) * d2_lo;
  out[n - 1] = (2.0 * params.b + 2.0) * d2_hi;
  return RadialProfile::tabulated(std::move(r), std::move(out));
}

double smoothness_bound(const RadialProfile& p, int K, int m) {
  require(K >= 0, "smoothness_bound: K must be non-negative");
  require(m >= 0, "smoothness_bound: m must be non-negative");
  if (K >= 1) {
    require(p.kind() != ProfileKind::Tabulated,
            "smoothness_bound: tabulated profiles carry no smoothness information for K >= 1");
    require(p.kind() != ProfileKind::Cap, "smoothness_bound: the cap indicator is not differentiable");
    require(m >= 1, "smoothness_bound: the K >= 1 bound needs m >= 1");
  }
  double norm;
  if (K == 0) {
    norm = profile_l2_norm(p);
  } else {
    RadialProfile q = radial_laplacian(p);
    for (int k = 1; k < K; ++k) q = radial_laplacian(q);
    norm = profile_l2_norm(q);
  }
  return std::pow(2.0, K) * norm / std::pow(1.0 + m * (m + 1.0), (4.0 * K + 1.0) / 4.0);
}

}  // namespace sphdeconv
