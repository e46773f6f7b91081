#pragma once

#include <span>

namespace sphdeconv {

/// Jacobi exponents of a compact two-point homogeneous space. The sphere S^d
/// has a = b = (d - 2) / 2, so S^2 is a = b = 0.
struct JacobiParams {
  double a = 0.0;
  double b = 0.0;

  static JacobiParams sphere(int d) {
    return JacobiParams{(d - 2) / 2.0, (d - 2) / 2.0};
  }
};

/// P_m^{(a,b)}(x) by the three-term recurrence in m.
double jacobi(int m, const JacobiParams& params, double x);

/// Fills out[n] = P_n^{(a,b)}(x) for n = 0..out.size()-1.
void jacobi_sequence(const JacobiParams& params, double x, std::span<double> out);

/// P_m^{(a,b)}(1) = Gamma(m+a+1) / (Gamma(m+1) Gamma(a+1)).
double jacobi_at_one(int m, const JacobiParams& params);

/// Dimension of the degree-m eigenspace; 2m+1 on S^2.
double delta_m(int m, const JacobiParams& params);

/// Laplace-Beltrami eigenvalue m(m+a+b+1).
double lambda_sq(int m, const JacobiParams& params);

/// Normalising constant Gamma(a+b+2) / (Gamma(a+1) Gamma(b+1)) of the radial density.
double radial_density_constant(const JacobiParams& params);

/// Density A(r) of the distance to a fixed pole, so that the integral of a
/// zonal f over the space equals the integral of f_0(r) A(r) over [0, pi].
double radial_density(double r, const JacobiParams& params);

}  // namespace sphdeconv
