#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sphdeconv/filters.hpp"
#include "sphdeconv/harmonics.hpp"
#include "sphdeconv/reconstruct.hpp"
#include "sphdeconv/sphere_geometry.hpp"

namespace sphdeconv {

struct MzConstants {
  double A = 0.0;
  double B = 0.0;
  double epsilon = 0.0;  ///< max(1 - A, B - 1)
};

/// Extreme squared singular values of [sqrt(tau_j) Y_k(x_j)] over degrees <= m.
MzConstants mz_constants(const MzFamily& fam, int m);

struct MzSearch {
  long N = 0;
  double C1 = 0.0;  ///< N / (m(m+1)), or N when m = 0
  MzConstants constants;
  MzFamily family;
  std::vector<std::pair<long, double>> trace;  ///< (N, epsilon) per tried partition
};

/// Doubles N from max(50, (m+1)^2) until epsilon <= target_epsilon, using
/// area-center nodes. The family comes back with degree and frame bounds set.
MzSearch find_mz_family(int m, double target_epsilon = 0.5, long max_N = 1L << 20);

enum class TailMode { ExactSum, ClosedBound };

/// sum_{n > m} (2n+1)(1 + n(n+1))^(-s), or its integral bound
/// (1/(s-1)) (1 + m(m+1))^(-(s-1)).
double phi_tail(double s, int m, TailMode mode);

struct CertificateInputs {
  int d = 2;
  double omega = 0.0;
  double gamma = 0.0;
  double zeta = 0.0;
  double c = 0.0;   ///< decay constant of the filter
  double c0 = 0.0;  ///< lower constant; 0 when none is known
  int fit_m_lo = 0;
  int fit_m_hi = 0;
  double epsilon = 0.0;
  int m = 0;
  double beta = 0.0;
  std::optional<double> norm_ff_sigma;  ///< ||F f||_{H^sigma} from known coefficients
  std::optional<double> norm_f_omega;   ///< ||f||_{H^omega}, bounds the above via c
  std::optional<int> truth_degree;      ///< highest degree present in f, when known
};

struct Certificate {
  int d = 2;
  double omega = 0.0, gamma = 0.0, sigma = 0.0, zeta = 0.0;
  double c = 0.0, c0 = 0.0;
  int fit_m_lo = 0, fit_m_hi = 0;
  bool range_limited = false;  ///< the truth reaches past the fitted range
  double epsilon = 0.0, kappa = 1.0;
  int m = 0;
  double beta = 0.0;
  std::optional<double> norm_ff_sigma_exact;
  std::optional<double> norm_ff_sigma_via_c;
  double norm_ff_sigma_used = 0.0;
  double term_approx = 0.0;
  double term_approx_sharp = 0.0;  ///< same with the exact remainder sum
  double term_noise = 0.0;
  double bound_Hzeta = 0.0;
  std::optional<double> bound_L2;
};

/// Assembles the a-priori error bound; throws HypothesisViolation naming the
/// failed hypothesis.
Certificate bound_apriori(const CertificateInputs& in);

struct DegreeChoice {
  int m = 0;
  double rate_exponent = 0.0;  ///< 1 - zeta / (omega + gamma - d/2)
};

DegreeChoice choose_degree(double beta, double omega, double gamma, double zeta = 0.0, int d = 2);

struct VerifyReport {
  double measured_Hzeta = 0.0;
  double measured_L2 = 0.0;
  bool pass_Hzeta = false;
  std::optional<bool> pass_L2;
  bool pass() const { return pass_Hzeta && pass_L2.value_or(true); }
};

/// Measures ||F p - F f||_{H^zeta} and ||p - f||_2 and compares them with the
/// certificate. The filter must reach the degree of the truth.
VerifyReport verify_bound(const CoefficientVector& truth, const MultiplierFilter& filt,
                          const CoefficientVector& solution, const Certificate& cert);

/// One synthetic run: simulate, reconstruct, certify, verify.
struct ExperimentSetup {
  MultiplierFilter filter;  ///< decay_fit required; lower_fit optional
  CoefficientVector truth;
  double omega = 0.0;
  double zeta = 0.0;
  int m = 0;
  double beta = 0.0;
  std::uint64_t noise_seed = 0;
};

struct ExperimentResult {
  long N = 0;
  MzConstants constants;
  LsqReport lsq;
  Certificate certificate;
  VerifyReport verify;
};

ExperimentResult run_experiment(const ExperimentSetup& setup, const MzFamily& fam);

}  // namespace sphdeconv
