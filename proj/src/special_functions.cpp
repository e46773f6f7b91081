#include "sphdeconv/special_functions.hpp"

#include <cmath>

#include "sphdeconv/error.hpp"

namespace sphdeconv {

namespace {

void check_params(const JacobiParams& p) {
  require(p.a >= -0.5 && p.b >= -0.5, "Jacobi parameters must satisfy a, b >= -1/2");
}

}  // namespace

void jacobi_sequence(const JacobiParams& params, double x, std::span<double> out) {
  check_params(params);
  if (out.empty()) return;
  const double a = params.a, b = params.b;
  out[0] = 1.0;
  if (out.size() == 1) return;
  out[1] = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0;
  for (std::size_t i = 2; i < out.size(); ++i) {
    const double n = static_cast<double>(i);
    const double s = 2.0 * n + a + b;
    const double c1 = 2.0 * n * (n + a + b) * (s - 2.0);
    const double c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
    const double c3 = 2.0 * (n + a - 1.0) * (n + b - 1.0) * s;
    out[i] = (c2 * out[i - 1] - c3 * out[i - 2]) / c1;
  }
}

double jacobi(int m, const JacobiParams& params, double x) {
  require(m >= 0, "jacobi: degree must be non-negative");
  check_params(params);
  const double a = params.a, b = params.b;
  if (m == 0) return 1.0;
  double p0 = 1.0;
  double p1 = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0;
  for (int i = 2; i <= m; ++i) {
    const double n = i;
    const double s = 2.0 * n + a + b;
    const double p2 = ((s - 1.0) * (s * (s - 2.0) * x + a * a - b * b) * p1 -
                       2.0 * (n + a - 1.0) * (n + b - 1.0) * s * p0) /
                      (2.0 * n * (n + a + b) * (s - 2.0));
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double jacobi_at_one(int m, const JacobiParams& params) {
  require(m >= 0, "jacobi_at_one: degree must be non-negative");
  check_params(params);
  return std::exp(std::lgamma(m + params.a + 1.0) - std::lgamma(m + 1.0) -
                  std::lgamma(params.a + 1.0));
}

double delta_m(int m, const JacobiParams& params) {
  require(m >= 0, "delta_m: degree must be non-negative");
  check_params(params);
  const double a = params.a, b = params.b;
  if (m == 0) return 1.0;
  const double log_ratio = std::lgamma(b + 1.0) - std::lgamma(a + 1.0) - std::lgamma(a + b + 2.0) +
                           std::lgamma(m + a + b + 1.0) - std::lgamma(m + b + 1.0) +
                           std::lgamma(m + a + 1.0) - std::lgamma(m + 1.0);
  return (2.0 * m + a + b + 1.0) * std::exp(log_ratio);
}

double lambda_sq(int m, const JacobiParams& params) {
  require(m >= 0, "lambda_sq: degree must be non-negative");
  return m * (m + params.a + params.b + 1.0);
}

double radial_density_constant(const JacobiParams& params) {
  check_params(params);
  return std::exp(std::lgamma(params.a + params.b + 2.0) - std::lgamma(params.a + 1.0) -
                  std::lgamma(params.b + 1.0));
}

double radial_density(double r, const JacobiParams& params) {
  return radial_density_constant(params) * std::pow(std::sin(r / 2.0), 2.0 * params.a + 1.0) *
         std::pow(std::cos(r / 2.0), 2.0 * params.b + 1.0);
}

}  // namespace sphdeconv
