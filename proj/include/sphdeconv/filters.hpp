#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sphdeconv/special_functions.hpp"

namespace sphdeconv {

enum class ProfileKind { Cap, Planck, Lunar, Tabulated };

const char* to_string(ProfileKind kind);

/// Radial part h~_0(r) of a zonal point spread function, r in [0, pi] being the
/// distance to the pole.
class RadialProfile {
 public:
  /// Indicator of the cap of radius theta0, 0 < theta0 <= pi/2.
  static RadialProfile cap(double theta0);
  /// Airy-type beam (lambda0 J1(4 pi R sin(r/2)) / (2 R sin(r/2)))^2.
  static RadialProfile planck(double lambda0, double radius);
  /// (1 + R^2 r^2 / (2 s(t)^2))^(-i(t) - 1) with s(t) = 0.704 t + 1.39 and
  /// i(t) = -4.87e-4 t + 0.631.
  static RadialProfile lunar(double radius, double altitude);
  /// Monotone cubic (PCHIP) interpolant of samples covering [0, pi].
  static RadialProfile tabulated(std::vector<double> r, std::vector<double> values);

  ProfileKind kind() const { return kind_; }
  double operator()(double r) const;

  /// Break points of the profile inside (0, pi); the cap edge for a cap.
  std::vector<double> breakpoints() const;

  double theta0() const { return p0_; }
  double lambda0() const { return p0_; }
  double radius() const { return p1_; }
  double altitude() const { return p2_; }
  double lunar_sigma() const;
  double lunar_iota() const;

  const std::vector<double>& abscissae() const { return r_; }
  const std::vector<double>& samples() const { return v_; }

  /// True when the samples lie on a uniform grid (within 1e-9 of the spacing).
  bool uniform_grid() const;

 private:
  struct Interp;

  ProfileKind kind_ = ProfileKind::Cap;
  double p0_ = 0.0, p1_ = 0.0, p2_ = 0.0;
  std::vector<double> r_, v_;
  std::shared_ptr<const Interp> interp_;
};

enum class Provenance { ClosedFormCap, Quadrature, Identity, Custom };

const char* to_string(Provenance p);
Provenance provenance_from_string(const std::string& s);

struct DecayFit {
  double c = 0.0;
  double gamma = 0.0;
  int m_lo = 0;
  int m_hi = 0;
};

struct LowerFit {
  double c0 = 0.0;
  double zeta = 0.0;
  int m_lo = 0;
  int m_hi = 0;
};

struct MultiplierFilter {
  std::vector<double> b;
  Provenance provenance = Provenance::Custom;
  std::optional<DecayFit> decay_fit;
  std::optional<LowerFit> lower_fit;

  int m_max() const { return static_cast<int>(b.size()) - 1; }

  static MultiplierFilter identity(int m_max);
  static MultiplierFilter custom(std::vector<double> b);
};

/// Closed form for the cap of radius theta0 on S^2.
MultiplierFilter cap_multipliers(double theta0, int m_max);

/// b_m = int_0^pi h(r) P_m(cos r)/P_m(1) A(r) dr for all m <= m_max, each to
/// absolute tolerance tol.
MultiplierFilter multipliers_from_profile(const RadialProfile& p, const JacobiParams& params,
                                          int m_max, double tol);

/// L2 norm of the zonal function with the given radial profile.
double profile_l2_norm(const RadialProfile& p,
                       const JacobiParams& params = JacobiParams::sphere(2));

/// Smallest c with |b_m| <= c (1 + m(m+1))^(-gamma/2) on the stored range.
double fit_decay(MultiplierFilter& f, double gamma);

/// Largest c0 with |b_m| >= c0 (1 + m(m+1))^(-zeta/2) on the stored range.
double fit_lower(MultiplierFilter& f, double zeta);

/// 2^K ||(-Delta)^K h||_2 / (1 + m(m+1))^((4K+1)/4) on S^2.
double smoothness_bound(const RadialProfile& p, int K, int m);

/// (1/A)(A g')' sampled on a uniform grid of `points` nodes over [0, pi].
RadialProfile radial_laplacian(const RadialProfile& p,
                               const JacobiParams& params = JacobiParams::sphere(2),
                               int points = 4001);

}  // namespace sphdeconv
