#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace sphdeconv {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// A point on S^2 in colatitude/longitude form.
struct SpherePoint {
  double theta = 0.0;  ///< colatitude in [0, pi]
  double phi = 0.0;    ///< longitude in [0, 2 pi)

  /// Builds a point, wrapping phi into [0, 2 pi) and rejecting theta outside [0, pi].
  static SpherePoint make(double theta, double phi);

  std::array<double, 3> unit_vector() const;
};

/// Angular distance, in [0, pi].
double geodesic_distance(const SpherePoint& p, const SpherePoint& q);

/// theta-band x phi-wedge. Membership is closed in theta and half-open in phi,
/// except that a wedge ending at 2 pi is closed there.
struct Region {
  double theta_lo = 0.0;
  double theta_hi = 0.0;
  double phi_lo = 0.0;
  double phi_hi = 0.0;
  int band_index = 0;
  int wedge_index = 0;

  bool contains(const SpherePoint& p) const;
};

/// Probability measure of a region (mu(S^2) = 1).
double region_measure(const Region& r);

/// Radius of a geodesic cap that encloses the region. The center is searched
/// along the mid-meridian, so the value is a tight upper bound on the minimal one.
double enclosing_cap_radius(const Region& r);

/// Radius of a geodesic cap contained in the region (a lower bound on the
/// largest inscribed cap).
double inscribed_cap_radius(const Region& r);

/// Integer rounding of a real sequence with integral total such that
/// prefix sums never drift by more than 1/2. With `symmetric` set, only the
/// first half is rounded, the second half is mirrored, and the middle entry
/// absorbs the remainder; this needs an odd length.
std::vector<long> build_rounding_sequence(std::span<const double> y, bool symmetric);

/// The equal-area partition of S^2 into N regions: two polar caps cut into 25
/// wedges each and s odd collar bands in between.
struct EqualAreaPartition {
  long N = 0;
  double theta0 = 0.0;
  int s = 0;
  double delta_theta = 0.0;
  std::vector<double> y;             ///< real band sizes y_1..y_s
  std::vector<long> ell;             ///< wedge counts ell_0..ell_{s+1}
  std::vector<double> theta_bounds;  ///< theta_{-1}..theta_{s+1}
  std::vector<Region> regions;
  double max_cap_radius = 0.0;        ///< max over regions of enclosing_cap_radius
  double min_inscribed_radius = 0.0;  ///< min over regions of inscribed_cap_radius

  /// max_cap_radius * sqrt(N)
  double c4() const;
  /// min_inscribed_radius * sqrt(N)
  double c3() const;
};

/// Requires N >= 50.
EqualAreaPartition build_partition(long N);

/// Per-property outcome of checking a rounding sequence against its reals.
struct RoundingCheck {
  bool total_matches = false;
  bool ends_within_half = false;
  bool interior_within_one = false;
  bool prefixes_within_half = false;
  bool symmetric = false;

  bool all() const {
    return total_matches && ends_within_half && interior_within_one &&
           prefixes_within_half && symmetric;
  }
};

/// Checks the three rounding properties (plus symmetry) with slack `tol` on
/// the real-valued comparisons.
RoundingCheck check_rounding_sequence(std::span<const double> y, std::span<const long> ell,
                                      double tol = 1e-9);

/// Nodes, weights and (optionally) certified degree and frame bounds.
struct MzFamily {
  std::vector<SpherePoint> nodes;
  std::vector<double> weights;
  std::optional<int> degree;
  std::optional<double> frame_lower;
  std::optional<double> frame_upper;

  std::size_t size() const { return nodes.size(); }
};

enum class NodeRule { AreaCenter, RandomInRegion };

/// One node per region. `seed` is only consulted by RandomInRegion.
MzFamily pick_nodes(const EqualAreaPartition& p, NodeRule rule, std::uint64_t seed = 0);

/// Area-median colatitude and mid-longitude of the region.
SpherePoint area_center(const Region& r);

}  // namespace sphdeconv
