#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace sphdeconv {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point rule; nodes by Newton iteration on the Legendre recurrence.
GaussLegendreRule gauss_legendre(int n);

struct QuadratureOptions {
  double abs_tol = 1e-12;
  int order = 20;               ///< points per panel
  int base_panels = 16;         ///< uniform panels over [a, b] before adaptivity
  std::vector<double> breakpoints;  ///< interior points where the integrand may jump
  long max_panels = 400000;     ///< budget on accepted + rejected panels
};

struct QuadratureResult {
  std::vector<double> values;
  std::vector<double> error_estimate;
  long panels = 0;
  bool converged = true;
};

/// Writes the `dim` integrand components at x into the output span.
using VectorIntegrand = std::function<void(double x, std::span<double> out)>;

/// Composite Gauss-Legendre with bisection of any panel whose two-half
/// refinement changes some component by more than its share of abs_tol.
/// Never throws on non-convergence; inspect `converged`.
QuadratureResult integrate_adaptive(const VectorIntegrand& f, std::size_t dim, double a, double b,
                                    const QuadratureOptions& options = {});

/// Scalar convenience wrapper; throws Error(NoConvergence) if the budget runs out.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& options = {});

}  // namespace sphdeconv
