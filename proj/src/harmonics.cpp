#include "sphdeconv/harmonics.hpp"

#include <cmath>
#include <random>
#include <string>

#include "sphdeconv/error.hpp"
#include "sphdeconv/special_functions.hpp"

namespace sphdeconv {

HarmonicIndex HarmonicIndex::from_flat(std::size_t k) {
  int m = static_cast<int>(std::sqrt(static_cast<double>(k)));
  while (static_cast<std::size_t>(m) * m > k) --m;
  while (static_cast<std::size_t>(m + 1) * (m + 1) <= k) ++m;
  return HarmonicIndex{m, static_cast<int>(k - static_cast<std::size_t>(m) * m) + 1};
}

CoefficientVector::CoefficientVector(int m_max) : m_max_(m_max) {
  require(m_max >= 0, "CoefficientVector: m_max must be non-negative");
  coeffs_.assign(coefficient_count(m_max), 0.0);
}

CoefficientVector::CoefficientVector(int m_max, std::vector<double> coeffs)
    : m_max_(m_max), coeffs_(std::move(coeffs)) {
  require(m_max >= 0, "CoefficientVector: m_max must be non-negative");
  if (coeffs_.size() != coefficient_count(m_max)) {
    fail(ErrorKind::InvalidArgument,
         "CoefficientVector: expected " + std::to_string(coefficient_count(m_max)) +
             " coefficients for m_max = " + std::to_string(m_max) + ", got " +
             std::to_string(coeffs_.size()));
  }
}

std::span<double> CoefficientVector::degree_block(int m) {
  require(m >= 0 && m <= m_max_, "degree_block: degree out of range");
  return std::span<double>(coeffs_).subspan(static_cast<std::size_t>(m) * m,
                                            static_cast<std::size_t>(2 * m + 1));
}

std::span<const double> CoefficientVector::degree_block(int m) const {
  require(m >= 0 && m <= m_max_, "degree_block: degree out of range");
  return std::span<const double>(coeffs_).subspan(static_cast<std::size_t>(m) * m,
                                                  static_cast<std::size_t>(2 * m + 1));
}

double CoefficientVector::l2_norm() const {
  double sum = 0.0;
  for (double v : coeffs_) sum += v * v;
  return std::sqrt(sum);
}

CoefficientVector CoefficientVector::resized(int m_max) const {
  CoefficientVector out(m_max);
  const std::size_t n = std::min(out.size(), size());
  for (std::size_t k = 0; k < n; ++k) out.coeffs_[k] = coeffs_[k];
  return out;
}

CoefficientVector& CoefficientVector::operator+=(const CoefficientVector& other) {
  require(other.m_max_ == m_max_, "CoefficientVector: degree mismatch in +=");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  return *this;
}

CoefficientVector& CoefficientVector::operator-=(const CoefficientVector& other) {
  require(other.m_max_ == m_max_, "CoefficientVector: degree mismatch in -=");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  return *this;
}

CoefficientVector& CoefficientVector::operator*=(double s) {
  for (double& v : coeffs_) v *= s;
  return *this;
}

CoefficientVector operator+(CoefficientVector lhs, const CoefficientVector& rhs) {
  return lhs += rhs;
}
CoefficientVector operator-(CoefficientVector lhs, const CoefficientVector& rhs) {
  return lhs -= rhs;
}
CoefficientVector operator*(double s, CoefficientVector v) { return v *= s; }

void eval_basis_all(int m_max, const SpherePoint& p, std::span<double> out) {
  require(m_max >= 0, "eval_basis_all: m_max must be non-negative");
  require(out.size() >= coefficient_count(m_max), "eval_basis_all: output too short");
  const double x = std::cos(p.theta);
  const double sx = std::sin(p.theta);
  const double sqrt2 = std::sqrt(2.0);

  // Associated Legendre functions normalised so that the integral of their
  // square against dx/2 is 1; diagonal, first off-diagonal, then the
  // three-term recurrence in degree for each fixed order k.
  double diag = 1.0;
  for (int k = 0; k <= m_max; ++k) {
    if (k > 0) diag *= std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * sx;
    const double ck = k == 0 ? 1.0 : sqrt2 * std::cos(k * p.phi);
    const double sk = k == 0 ? 0.0 : sqrt2 * std::sin(k * p.phi);

    double prev2 = 0.0;
    double prev1 = diag;
    for (int m = k; m <= m_max; ++m) {
      double value;
      if (m == k) {
        value = diag;
      } else if (m == k + 1) {
        value = std::sqrt(2.0 * k + 3.0) * x * diag;
      } else {
        const double mm = m, kk = k;
        const double alpha = std::sqrt((2.0 * mm + 1.0) * (2.0 * mm - 1.0) / ((mm - kk) * (mm + kk)));
        const double beta = std::sqrt((2.0 * mm + 1.0) * (mm + kk - 1.0) * (mm - kk - 1.0) /
                                      ((2.0 * mm - 3.0) * (mm - kk) * (mm + kk)));
        value = alpha * x * prev1 - beta * prev2;
      }
      if (m > k) {
        prev2 = prev1;
        prev1 = value;
      }
      const std::size_t base = static_cast<std::size_t>(m) * m;
      if (k == 0) {
        out[base] = value;
      } else {
        out[base + 2 * k - 1] = value * ck;
        out[base + 2 * k] = value * sk;
      }
    }
  }
}

std::vector<double> eval_basis_all(int m_max, const SpherePoint& p) {
  std::vector<double> out(coefficient_count(m_max));
  eval_basis_all(m_max, p, out);
  return out;
}

double eval_basis(HarmonicIndex idx, const SpherePoint& p) {
  require(idx.m >= 0 && idx.ell >= 1 && idx.ell <= 2 * idx.m + 1,
          "eval_basis: order index outside 1..2m+1");
  return eval_basis_all(idx.m, p)[idx.flat()];
}

double eval_poly(const CoefficientVector& c, const SpherePoint& p) {
  const std::vector<double> basis = eval_basis_all(c.m_max(), p);
  double sum = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) sum += c[k] * basis[k];
  return sum;
}

double zonal_kernel(int m, const SpherePoint& x, const SpherePoint& y) {
  const JacobiParams s2 = JacobiParams::sphere(2);
  const double t = std::cos(geodesic_distance(x, y));
  return delta_m(m, s2) * jacobi(m, s2, t) / jacobi_at_one(m, s2);
}

double sobolev_norm(const CoefficientVector& c, SobolevParams s) {
  require(s.sigma >= 0.0, "sobolev_norm: sigma must be non-negative");
  double sum = 0.0;
  for (int m = 0; m <= c.m_max(); ++m) {
    double block = 0.0;
    for (double v : c.degree_block(m)) block += v * v;
    sum += block * std::pow(1.0 + m * (m + 1.0), s.sigma);
  }
  return std::sqrt(sum);
}

CoefficientVector project(const CoefficientVector& c, int m) {
  require(m >= 0 && m <= c.m_max(), "project: degree out of range");
  CoefficientVector out(c.m_max());
  const auto src = c.degree_block(m);
  auto dst = out.degree_block(m);
  std::copy(src.begin(), src.end(), dst.begin());
  return out;
}

CoefficientVector random_poly(int m_max, SobolevParams s, std::uint64_t seed, bool unit_norm) {
  require(s.sigma >= 0.0, "random_poly: sigma must be non-negative");
  CoefficientVector c(m_max);
  std::mt19937_64 engine(seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  for (int m = 0; m <= m_max; ++m) {
    auto block = c.degree_block(m);
    double norm = 0.0;
    do {
      norm = 0.0;
      for (double& v : block) {
        v = uniform(engine);
        norm += v * v;
      }
    } while (norm == 0.0);
    const double scale = std::pow(1.0 + m * (m + 1.0), -0.5 * s.sigma - 0.5) / std::sqrt(norm);
    for (double& v : block) v *= scale;
  }
  if (unit_norm) c *= 1.0 / sobolev_norm(c, s);
  return c;
}

}  // namespace sphdeconv
