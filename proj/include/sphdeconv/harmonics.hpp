#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sphdeconv/sphere_geometry.hpp"

namespace sphdeconv {

/// (degree m, order index ell) with 1 <= ell <= 2m+1. Within a degree block
/// ell = 1 is the zonal function, ell = 2k the cos(k phi) and ell = 2k+1 the
/// sin(k phi) harmonic.
struct HarmonicIndex {
  int m = 0;
  int ell = 1;

  /// Position in the degree-major layout: m^2 + ell - 1.
  std::size_t flat() const { return static_cast<std::size_t>(m) * m + ell - 1; }
  static HarmonicIndex from_flat(std::size_t k);
};

/// Number of coefficients up to and including degree m_max.
constexpr std::size_t coefficient_count(int m_max) {
  return static_cast<std::size_t>(m_max + 1) * static_cast<std::size_t>(m_max + 1);
}

/// Coefficients of a diffusion polynomial in the real orthonormal basis,
/// degree-major.
class CoefficientVector {
 public:
  CoefficientVector() : CoefficientVector(0) {}
  explicit CoefficientVector(int m_max);
  CoefficientVector(int m_max, std::vector<double> coeffs);

  int m_max() const { return m_max_; }
  std::size_t size() const { return coeffs_.size(); }

  double& operator[](std::size_t k) { return coeffs_[k]; }
  double operator[](std::size_t k) const { return coeffs_[k]; }
  double& at(HarmonicIndex idx) { return coeffs_.at(idx.flat()); }
  double at(HarmonicIndex idx) const { return coeffs_.at(idx.flat()); }

  std::span<double> degree_block(int m);
  std::span<const double> degree_block(int m) const;

  std::span<const double> values() const { return coeffs_; }
  std::span<double> values() { return coeffs_; }

  /// Euclidean norm of the coefficients, i.e. the L2(mu) norm of the function.
  double l2_norm() const;

  /// Copy with degree raised (zero padded) or lowered (truncated) to m_max.
  CoefficientVector resized(int m_max) const;

  CoefficientVector& operator+=(const CoefficientVector& other);
  CoefficientVector& operator-=(const CoefficientVector& other);
  CoefficientVector& operator*=(double s);

 private:
  int m_max_;
  std::vector<double> coeffs_;
};

CoefficientVector operator+(CoefficientVector lhs, const CoefficientVector& rhs);
CoefficientVector operator-(CoefficientVector lhs, const CoefficientVector& rhs);
CoefficientVector operator*(double s, CoefficientVector v);

struct SobolevParams {
  double sigma = 0.0;
};

/// Values of every basis function of degree <= m_max at p, degree-major.
/// The basis is orthonormal under the probability measure on S^2, so the
/// (0, 1) entry is identically 1.
void eval_basis_all(int m_max, const SpherePoint& p, std::span<double> out);
std::vector<double> eval_basis_all(int m_max, const SpherePoint& p);

double eval_basis(HarmonicIndex idx, const SpherePoint& p);

double eval_poly(const CoefficientVector& c, const SpherePoint& p);

/// (2m+1) P_m(cos rho(x, y)).
double zonal_kernel(int m, const SpherePoint& x, const SpherePoint& y);

/// Weight (1 + m(m+1))^sigma per degree, summed against squared coefficients.
double sobolev_norm(const CoefficientVector& c, SobolevParams s);

/// Keeps only degree m.
CoefficientVector project(const CoefficientVector& c, int m);

/// Deterministic test signal: each degree block is a pseudo-random direction
/// scaled to (1 + m(m+1))^(-sigma/2 - 1/2); optionally normalised to unit
/// H^sigma norm.
CoefficientVector random_poly(int m_max, SobolevParams s, std::uint64_t seed, bool unit_norm);

}  // namespace sphdeconv
