#include "sphdeconv/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sphdeconv/error.hpp"

namespace sphdeconv {

GaussLegendreRule gauss_legendre(int n) {
  require(n >= 1, "gauss_legendre: need at least one point");
  GaussLegendreRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const double pi = std::acos(-1.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

namespace {

struct Panel {
  double lo;
  double hi;
  std::vector<double> estimate;
  int depth;
};

}  // namespace

QuadratureResult integrate_adaptive(const VectorIntegrand& f, std::size_t dim, double a, double b,
                                    const QuadratureOptions& options) {
  require(b > a, "integrate_adaptive: empty interval");
  require(options.abs_tol > 0.0, "integrate_adaptive: tolerance must be positive");
  const GaussLegendreRule rule = gauss_legendre(options.order);
  const double length = b - a;

  std::vector<double> scratch(dim);
  auto apply_rule = [&](double lo, double hi) {
    std::vector<double> sum(dim, 0.0);
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      f(mid + half * rule.nodes[q], scratch);
      for (std::size_t k = 0; k < dim; ++k) sum[k] += rule.weights[q] * scratch[k];
    }
    for (double& v : sum) v *= half;
    return sum;
  };

  std::vector<double> cuts{a};
  for (double bp : options.breakpoints) {
    if (bp > a && bp < b) cuts.push_back(bp);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Panel> stack;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    const int pieces = std::max(
        1, static_cast<int>(std::ceil(options.base_panels * (hi - lo) / length)));
    for (int p = 0; p < pieces; ++p) {
      const double plo = lo + (hi - lo) * p / pieces;
      const double phi = p + 1 == pieces ? hi : lo + (hi - lo) * (p + 1) / pieces;
      stack.push_back(Panel{plo, phi, apply_rule(plo, phi), 0});
    }
  }

  QuadratureResult result;
  result.values.assign(dim, 0.0);
  result.error_estimate.assign(dim, 0.0);
  long processed = 0;
  while (!stack.empty()) {
    Panel panel = std::move(stack.back());
    stack.pop_back();
    ++processed;
    const double mid = 0.5 * (panel.lo + panel.hi);
    std::vector<double> left = apply_rule(panel.lo, mid);
    std::vector<double> right = apply_rule(mid, panel.hi);
    double worst = 0.0;
    double magnitude = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      worst = std::max(worst, std::abs(left[k] + right[k] - panel.estimate[k]));
      magnitude = std::max(magnitude, std::abs(left[k]) + std::abs(right[k]));
    }
    // Below the rounding floor of the panel sum further bisection cannot help.
    const double share =
        std::max(options.abs_tol * (panel.hi - panel.lo) / length, 1e-14 * magnitude);
    const bool exhausted = processed + static_cast<long>(stack.size()) >= options.max_panels;
    const bool too_deep = panel.depth >= 60 || mid <= panel.lo || mid >= panel.hi;
    if (worst <= share || exhausted || too_deep) {
      if (worst > share) result.converged = false;
      for (std::size_t k = 0; k < dim; ++k) {
        result.values[k] += left[k] + right[k];
        result.error_estimate[k] += std::abs(left[k] + right[k] - panel.estimate[k]);
      }
      ++result.panels;
      continue;
    }
    stack.push_back(Panel{mid, panel.hi, std::move(right), panel.depth + 1});
    stack.push_back(Panel{panel.lo, mid, std::move(left), panel.depth + 1});
  }
  return result;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& options) {
  const auto r = integrate_adaptive([&](double x, std::span<double> out) { out[0] = f(x); }, 1,
                                    a, b, options);
  if (!r.converged) {
    fail(ErrorKind::NoConvergence, "integrate: panel budget exhausted with error estimate " +
                                       std::to_string(r.error_estimate[0]));
  }
  return r.values[0];
}

}  // namespace sphdeconv
