#include "sphdeconv/forward.hpp"

#include <cstdio>
#include <cstring>
#include <random>

#include "sphdeconv/error.hpp"

namespace sphdeconv {

void MeasurementSet::validate() const {
  require(nodes.size() == weights.size() && nodes.size() == y.size(),
          "measurement set: nodes, weights and y differ in length");
  require(beta >= 0.0, "measurement set: beta must be non-negative");
}

CoefficientVector apply_multiplier(const MultiplierFilter& f, const CoefficientVector& c) {
  require(f.m_max() >= c.m_max(),
          "apply_multiplier: filter stops at degree " + std::to_string(f.m_max()) +
              " but coefficients reach degree " + std::to_string(c.m_max()));
  CoefficientVector out = c;
  for (int m = 0; m <= c.m_max(); ++m) {
    for (double& v : out.degree_block(m)) v *= f.b[m];
  }
  return out;
}

std::vector<double> sample_at(const CoefficientVector& c, const std::vector<SpherePoint>& nodes) {
  std::vector<double> out;
  out.reserve(nodes.size());
  std::vector<double> basis(c.size());
  for (const SpherePoint& p : nodes) {
    eval_basis_all(c.m_max(), p, basis);
    double sum = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) sum += c[k] * basis[k];
    out.push_back(sum);
  }
  return out;
}

std::vector<double> add_noise(std::vector<double> values, double beta, std::uint64_t seed) {
  require(beta >= 0.0, "add_noise: beta must be non-negative");
  if (beta == 0.0) return values;
  std::mt19937_64 engine(seed);
  std::uniform_real_distribution<double> noise(-beta, beta);
  for (double& v : values) v += noise(engine);
  return values;
}

std::string digest(const std::vector<double>& values) {
  std::uint64_t h = 1469598103934665603ULL;
  for (double v : values) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &v, sizeof(double));
    for (unsigned char byte : bytes) {
      h ^= byte;
      h *= 1099511628211ULL;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

MeasurementSet simulate(const CoefficientVector& truth, const MultiplierFilter& filt,
                        const MzFamily& fam, double beta, std::uint64_t seed) {
  require(fam.nodes.size() == fam.weights.size(), "simulate: family nodes and weights differ in length");
  MeasurementSet ms;
  ms.nodes = fam.nodes;
  ms.weights = fam.weights;
  ms.y = add_noise(sample_at(apply_multiplier(filt, truth), fam.nodes), beta, seed);
  ms.beta = beta;
  ms.seed = seed;
  std::vector<double> truth_values(truth.values().begin(), truth.values().end());
  ms.truth_ref = "truth:" + digest(truth_values) + ";filter:" + digest(filt.b);
  return ms;
}

}  // namespace sphdeconv
