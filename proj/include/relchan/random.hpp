#pragma once

// Seeded sampling. The engine is std::mt19937_64, whose output sequence is
// fixed by the C++ standard. The standard distributions are not, so the
// conversions to uniform and normal variates are spelled out here:
//   uniform01  = (x >> 11) * 2^-53
//   normal     = Box-Muller on two uniform01 draws (cosine branch only)
// Sample points are therefore identical on every conforming platform.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "relchan/minkowski.hpp"

namespace relchan {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double normal() {
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  std::complex<double> complex_normal() { return {normal(), normal()}; }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform01() * static_cast<double>(n)) % n; }

  Eigen::Vector3d unit_vector() {
    Eigen::Vector3d v;
    do {
      v = {normal(), normal(), normal()};
    } while (v.norm() < 1e-12);
    return v.normalized();
  }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Uniform rotation from a normalized Gaussian quaternion.
inline LorentzTransform random_rotation(Rng& rng) {
  Eigen::Quaterniond q(rng.normal(), rng.normal(), rng.normal(), rng.normal());
  q.normalize();
  return LorentzTransform::rotation(q.toRotationMatrix());
}

/// Pure boost in a uniform direction with rapidity uniform in [0, max_rapidity].
inline LorentzTransform random_boost(Rng& rng, double max_rapidity = 2.0) {
  const Eigen::Vector3d dir = rng.unit_vector();
  return LorentzTransform::boost(dir, rng.uniform(0.0, max_rapidity));
}

/// Boost composed with a rotation.
inline LorentzTransform random_lorentz(Rng& rng, double max_rapidity = 2.0) {
  const auto r = random_rotation(rng);
  return random_boost(rng, max_rapidity) * r;
}

/// Spatial momentum with Gaussian components of width `scale` (units of m).
inline MassShellMomentum random_momentum(Rng& rng, double mass, double scale = 1.0) {
  return {Eigen::Vector3d(rng.normal(), rng.normal(), rng.normal()) * scale * mass, mass};
}

inline FourVector random_four_vector(Rng& rng, double scale = 1.0) {
  return {rng.uniform(-scale, scale), rng.uniform(-scale, scale), rng.uniform(-scale, scale),
          rng.uniform(-scale, scale)};
}

/// Future-pointing unit timelike vector: the boost of (1,0,0,0).
inline FourVector random_unit_timelike(Rng& rng, double max_rapidity = 2.0) {
  return random_boost(rng, max_rapidity).apply(FourVector{1.0, 0.0, 0.0, 0.0});
}

inline Eigen::MatrixXcd random_unitary(Rng& rng, Eigen::Index n) {
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
  // fix the phases so the distribution is Haar
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

/// Density matrix of dimension d and rank `rank` (full rank when rank <= 0),
/// built as G G^dagger / Tr with complex Gaussian G.
inline Eigen::MatrixXcd random_density(Rng& rng, Eigen::Index d, Eigen::Index rank = 0) {
  if (rank <= 0 || rank > d) rank = d;
  Eigen::MatrixXcd g(d, rank);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < rank; ++j) g(i, j) = rng.complex_normal();
  Eigen::MatrixXcd rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

}  // namespace relchan
