#pragma once

// Shared random fixtures for the test suite.

#include <vector>

#include "relchan/channel.hpp"
#include "relchan/random.hpp"

namespace relchan::testing {

inline double inf_norm(const Operator& x) { return x.size() ? x.cwiseAbs().maxCoeff() : 0.0; }

inline AtomBasis random_basis(Rng& rng, int m, double mass = 1.0, double scale = 1.0) {
  std::vector<MassShellMomentum> atoms;
  while (static_cast<int>(atoms.size()) < m) {
    const MassShellMomentum p = random_momentum(rng, mass, scale);
    bool dup = false;
    for (const auto& q : atoms) dup = dup || same_atom(p, q);
    if (!dup) atoms.push_back(p);
  }
  return {mass, atoms};
}

/// Valid parameters: beta in [0, 0.4], gamma drawn until delta0 >= 0,
/// constant or exponential kernel. The exponential family is not positive
/// on every atom set, so draws that fail validation are redrawn.
inline ChannelParams random_params(Rng& rng, const AtomBasis& basis) {
  for (;;) {
    const double beta = rng.uniform(0.0, 0.4);
    cplx gamma;
    do {
      gamma = {rng.uniform(-1.4, 0.0), rng.uniform(-0.5, 0.5)};
    } while (ChannelParams::derived_delta0(beta, gamma) < 0.0);
    const InvariantKernel shape = rng.uniform01() < 0.5 ? InvariantKernel::constant(1.0)
                                                        : InvariantKernel::exponential(1.0, rng.uniform(0.0, 2.0));
    const double t = rng.uniform(-2.0, 3.0), t0 = rng.uniform(-2.0, 3.0);
    try {
      return make_params(beta, gamma, shape, t, t0, basis);
    } catch (const InvalidParams&) {
    }
  }
}

/// Density operator supported on the one-particle block.
inline Operator random_one_particle_density(Rng& rng, Eigen::Index d) {
  Operator rho = Operator::Zero(d, d);
  rho.bottomRightCorner(d - 1, d - 1) = random_density(rng, d - 1);
  return rho;
}

}  // namespace relchan::testing
