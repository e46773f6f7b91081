#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sphdeconv/filters.hpp"
#include "sphdeconv/harmonics.hpp"
#include "sphdeconv/sphere_geometry.hpp"

namespace sphdeconv {

/// Noisy point samples of F f at the nodes of a family.
struct MeasurementSet {
  std::vector<SpherePoint> nodes;
  std::vector<double> weights;
  std::vector<double> y;
  double beta = 0.0;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> truth_ref;

  std::size_t size() const { return y.size(); }
  /// Throws unless nodes, weights and y agree in length and beta >= 0.
  void validate() const;
};

/// Scales degree block m by b_m. The filter must reach at least c.m_max().
CoefficientVector apply_multiplier(const MultiplierFilter& f, const CoefficientVector& c);

std::vector<double> sample_at(const CoefficientVector& c, const std::vector<SpherePoint>& nodes);

/// Adds i.i.d. uniform noise on [-beta, beta].
std::vector<double> add_noise(std::vector<double> values, double beta, std::uint64_t seed);

/// 64-bit FNV-1a over the raw bytes of the values, as 16 hex digits.
std::string digest(const std::vector<double>& values);

MeasurementSet simulate(const CoefficientVector& truth, const MultiplierFilter& filt,
                        const MzFamily& fam, double beta, std::uint64_t seed);

}  // namespace sphdeconv
