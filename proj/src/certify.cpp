#include "sphdeconv/certify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "sphdeconv/error.hpp"
#include "sphdeconv/forward.hpp"

namespace sphdeconv {

MzConstants mz_constants(const MzFamily& fam, int m) {
  require(m >= 0, "mz_constants: degree must be non-negative");
  const std::size_t dim = coefficient_count(m);
  require(fam.size() >= dim, "mz_constants: " + std::to_string(fam.size()) +
                                 " nodes cannot be MZ for the " + std::to_string(dim) +
                                 "-dimensional space of degree " + std::to_string(m));
  const Eigen::MatrixXd D = design_matrix(MultiplierFilter::identity(m), fam, m);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(D);
  const Eigen::VectorXd& sv = svd.singularValues();
  MzConstants k;
  k.B = sv(0) * sv(0);
  k.A = sv(sv.size() - 1) * sv(sv.size() - 1);
  k.epsilon = std::max(1.0 - k.A, k.B - 1.0);
  return k;
}

MzSearch find_mz_family(int m, double target_epsilon, long max_N) {
  require(m >= 0, "find_mz_family: degree must be non-negative");
  require(target_epsilon > 0.0 && target_epsilon < 1.0,
          "find_mz_family: target epsilon must lie in (0, 1)");
  MzSearch out;
  long N = std::max(50L, static_cast<long>(coefficient_count(m)));
  while (true) {
    if (N > max_N) {
      fail(ErrorKind::NoConvergence, "find_mz_family: no partition up to N = " +
                                         std::to_string(max_N) + " reaches epsilon <= " +
                                         std::to_string(target_epsilon) + " at degree " +
                                         std::to_string(m));
    }
    MzFamily fam = pick_nodes(build_partition(N), NodeRule::AreaCenter);
    const MzConstants k = mz_constants(fam, m);
    out.trace.emplace_back(N, k.epsilon);
    if (k.epsilon <= target_epsilon) {
      fam.degree = m;
      fam.frame_lower = k.A;
      fam.frame_upper = k.B;
      out.N = N;
      out.C1 = m == 0 ? static_cast<double>(N) : static_cast<double>(N) / (m * (m + 1.0));
      out.constants = k;
      out.family = std::move(fam);
      return out;
    }
    N *= 2;
  }
}

namespace {

double tail_term(double s, double n) {
  return (2.0 * n + 1.0) * std::pow(1.0 + n * (n + 1.0), -s);
}

// Antiderivative with F(inf) = 0, so that the integral of the term over [x, inf) is F(x).
double tail_integral(double s, double x) {
  return std::pow(1.0 + x * (1.0 + x), 1.0 - s) / (s - 1.0);
}

double tail_term_derivative(double s, double x) {
  const double u = 1.0 + x * (1.0 + x);
  const double v = 2.0 * x + 1.0;
  return 2.0 * std::pow(u, -s) - s * v * v * std::pow(u, -s - 1.0);
}

}  // namespace

double phi_tail(double s, int m, TailMode mode) {
  require(s > 1.0, "phi_tail: s must exceed 1, got " + std::to_string(s) + " (the sum diverges)");
  require(m >= 0, "phi_tail: m must be non-negative");
  if (mode == TailMode::ClosedBound) return tail_integral(s, m);

  constexpr long kMaxTerms = 1000000;
  double sum = 0.0, comp = 0.0;
  long n = m + 1;
  for (; n - m <= kMaxTerms && tail_integral(s, n) >= 1e-14; ++n) {
    const double yk = tail_term(s, n) - comp;
    const double t = sum + yk;
    comp = (t - sum) - yk;
    sum = t;
  }
  // Euler-Maclaurin for sum_{k >= n}.
  const double rest = tail_integral(s, n) + 0.5 * tail_term(s, n) - tail_term_derivative(s, n) / 12.0;
  return sum + rest;
}

Certificate bound_apriori(const CertificateInputs& in) {
  require(in.d >= 1, "bound_apriori: dimension must be positive");
  require(in.m >= 0, "bound_apriori: degree must be non-negative");
  require(in.omega >= 0.0 && in.gamma >= 0.0 && in.zeta >= 0.0,
          "bound_apriori: smoothness exponents must be non-negative");
  require(in.beta >= 0.0, "bound_apriori: beta must be non-negative");
  require(in.c > 0.0, "bound_apriori: decay constant c must be positive");
  require(in.c0 >= 0.0, "bound_apriori: c0 must be non-negative");
  const double half_d = 0.5 * in.d;
  const double sigma = in.omega + in.gamma;
  if (!(sigma - in.zeta > half_d)) {
    fail(ErrorKind::HypothesisViolation,
         "hypothesis sigma - zeta > d/2 fails: sigma = " + std::to_string(sigma) +
             ", zeta = " + std::to_string(in.zeta) + ", d = " + std::to_string(in.d));
  }
  if (!(in.epsilon >= 0.0 && in.epsilon < 1.0)) {
    fail(ErrorKind::HypothesisViolation,
         "hypothesis 0 <= epsilon < 1 fails: epsilon = " + std::to_string(in.epsilon));
  }
  require(in.norm_ff_sigma.has_value() || in.norm_f_omega.has_value(),
          "bound_apriori: need ||F f||_{H^sigma} or ||f||_{H^omega}");

  Certificate cert;
  cert.d = in.d;
  cert.omega = in.omega;
  cert.gamma = in.gamma;
  cert.sigma = sigma;
  cert.zeta = in.zeta;
  cert.c = in.c;
  cert.c0 = in.c0;
  cert.fit_m_lo = in.fit_m_lo;
  cert.fit_m_hi = in.fit_m_hi;
  cert.range_limited = !in.truth_degree.has_value() || *in.truth_degree > in.fit_m_hi ||
                       in.m > in.fit_m_hi;
  cert.epsilon = in.epsilon;
  cert.kappa = (1.0 + in.epsilon) / (1.0 - in.epsilon);
  cert.m = in.m;
  cert.beta = in.beta;
  cert.norm_ff_sigma_exact = in.norm_ff_sigma;
  if (in.norm_f_omega) cert.norm_ff_sigma_via_c = in.c * *in.norm_f_omega;
  cert.norm_ff_sigma_used = in.norm_ff_sigma ? *in.norm_ff_sigma : *cert.norm_ff_sigma_via_c;

  const double lam = 1.0 + in.m * (in.m + 1.0);
  const double s = sigma - in.zeta - half_d + 1.0;
  cert.term_approx = std::sqrt((1.0 + cert.kappa) * phi_tail(s, in.m, TailMode::ClosedBound)) *
                     cert.norm_ff_sigma_used;
  cert.term_approx_sharp = std::sqrt((1.0 + cert.kappa) * phi_tail(s, in.m, TailMode::ExactSum)) *
                           cert.norm_ff_sigma_used;
  cert.term_noise = std::sqrt(cert.kappa) * in.beta * std::pow(lam, 0.5 * in.zeta);
  cert.bound_Hzeta = cert.term_approx + cert.term_noise;
  if (in.c0 > 0.0 && in.zeta >= in.gamma) cert.bound_L2 = cert.bound_Hzeta / in.c0;
  return cert;
}

DegreeChoice choose_degree(double beta, double omega, double gamma, double zeta, int d) {
  require(beta > 0.0, "choose_degree: beta must be positive");
  const double denom = omega + gamma - 0.5 * d;
  require(denom > 0.0, "choose_degree: omega + gamma - d/2 must be positive, got " +
                           std::to_string(denom));
  const double v = std::pow(beta, -1.0 / denom);
  DegreeChoice out;
  out.m = std::max(1, static_cast<int>(std::ceil(v * (1.0 - 1e-12))));
  out.rate_exponent = 1.0 - zeta / denom;
  return out;
}

VerifyReport verify_bound(const CoefficientVector& truth, const MultiplierFilter& filt,
                          const CoefficientVector& solution, const Certificate& cert) {
  const int top = std::max(truth.m_max(), solution.m_max());
  require(filt.m_max() >= top, "verify_bound: filter must reach degree " + std::to_string(top));
  const CoefficientVector diff = solution.resized(top) - truth.resized(top);
  VerifyReport r;
  r.measured_Hzeta = sobolev_norm(apply_multiplier(filt, diff), SobolevParams{cert.zeta});
  r.measured_L2 = diff.l2_norm();
  r.pass_Hzeta = r.measured_Hzeta <= cert.bound_Hzeta;
  if (cert.bound_L2) r.pass_L2 = r.measured_L2 <= *cert.bound_L2;
  return r;
}

ExperimentResult run_experiment(const ExperimentSetup& setup, const MzFamily& fam) {
  require(setup.filter.decay_fit.has_value(), "run_experiment: filter needs a decay fit");
  const DecayFit& fit = *setup.filter.decay_fit;
  ExperimentResult out;
  out.N = static_cast<long>(fam.size());
  out.constants = mz_constants(fam, setup.m);
  const MeasurementSet ms = simulate(setup.truth, setup.filter, fam, setup.beta, setup.noise_seed);
  out.lsq = lsq_solve(setup.filter, fam, setup.m, ms.y);

  CertificateInputs in;
  in.omega = setup.omega;
  in.gamma = fit.gamma;
  in.zeta = setup.zeta;
  in.c = fit.c;
  in.fit_m_lo = fit.m_lo;
  in.fit_m_hi = fit.m_hi;
  if (setup.filter.lower_fit && setup.filter.lower_fit->zeta == setup.zeta) {
    in.c0 = setup.filter.lower_fit->c0;
    in.fit_m_hi = std::min(in.fit_m_hi, setup.filter.lower_fit->m_hi);
  }
  in.epsilon = out.constants.epsilon;
  in.m = setup.m;
  in.beta = setup.beta;
  in.norm_ff_sigma = sobolev_norm(apply_multiplier(setup.filter, setup.truth),
                                  SobolevParams{setup.omega + fit.gamma});
  in.norm_f_omega = sobolev_norm(setup.truth, SobolevParams{setup.omega});
  in.truth_degree = setup.truth.m_max();
  out.certificate = bound_apriori(in);
  out.verify = verify_bound(setup.truth, setup.filter, out.lsq.solution, out.certificate);
  return out;
}

}  // namespace sphdeconv
