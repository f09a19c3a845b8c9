#pragma once

// Lorentz-invariant two-point kernels delta(p, q) on one mass shell.
//
// The built-in families depend on (p, q) only through the scalar
// s = -(p.q)/m^2, which is 1 for p = q and larger otherwise. A custom family
// takes an arbitrary function and is useful for negative tests.

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "relchan/fock_sector.hpp"
#include "relchan/minkowski.hpp"

namespace relchan {

enum class KernelFamily { constant, exponential, custom };

inline const char* to_string(KernelFamily f) {
  switch (f) {
    case KernelFamily::constant: return "constant";
    case KernelFamily::exponential: return "exponential";
    case KernelFamily::custom: return "custom";
  }
  return "?";
}

inline double invariant_s(const MassShellMomentum& p, const MassShellMomentum& q) {
  const double m = p.mass();
  return -contract(p.four(), q.four()) / (m * m);
}

class InvariantKernel {
 public:
  using Function = std::function<double(const MassShellMomentum&, const MassShellMomentum&)>;

  static InvariantKernel constant(double delta0) { return InvariantKernel(KernelFamily::constant, delta0, 0.0, {}); }

  static InvariantKernel exponential(double delta0, double lambda) {
    if (!(lambda >= 0.0)) throw Error("kernel decay rate must be non-negative");
    return InvariantKernel(KernelFamily::exponential, delta0, lambda, {});
  }

  /// `delta0` records the intended diagonal; nothing forces f(p,p) to match it.
  static InvariantKernel custom(double delta0, Function f) {
    return InvariantKernel(KernelFamily::custom, delta0, 0.0, std::move(f));
  }

  /// Same shape with a new diagonal value. Custom kernels are scaled.
  InvariantKernel with_delta0(double delta0) const {
    if (family_ != KernelFamily::custom) return InvariantKernel(family_, delta0, lambda_, {});
    if (delta0_ == 0.0) throw Error("cannot rescale a custom kernel whose diagonal is zero");
    const double scale = delta0 / delta0_;
    Function f = fn_;
    return InvariantKernel(KernelFamily::custom, delta0, 0.0,
                           [f, scale](const MassShellMomentum& p, const MassShellMomentum& q) { return scale * f(p, q); });
  }

  KernelFamily family() const { return family_; }
  double delta0() const { return delta0_; }
  double lambda() const { return lambda_; }

  double operator()(const MassShellMomentum& p, const MassShellMomentum& q) const {
    if (std::abs(p.mass() - q.mass()) > kAtomTolerance * p.mass())
      throw Error("kernel evaluated on momenta from different mass shells");
    switch (family_) {
      case KernelFamily::constant: return delta0_;
      case KernelFamily::exponential: return delta0_ * std::exp(-lambda_ * (invariant_s(p, q) - 1.0));
      case KernelFamily::custom: return fn_(p, q);
    }
    return 0.0;
  }

  Eigen::MatrixXd gram(const AtomBasis& basis) const {
    const auto m = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXd g(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j)
        g(i, j) = (*this)(basis[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(j)]);
    return g;
  }

 private:
  InvariantKernel(KernelFamily f, double d0, double lam, Function fn)
      : family_(f), delta0_(d0), lambda_(lam), fn_(std::move(fn)) {
    if (!std::isfinite(d0)) throw Error("kernel diagonal must be finite");
  }

  KernelFamily family_;
  double delta0_;
  double lambda_;
  Function fn_;
};

inline constexpr double kPsdFloor = -1e-10;

struct PsdReport {
  Eigen::VectorXd eigenvalues;  // ascending
  double min_eigenvalue = 0.0;
  bool passed = true;
};

inline PsdReport validate_psd(const Eigen::MatrixXd& gram, double floor = kPsdFloor) {
  PsdReport r;
  if (gram.size() == 0) return r;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (gram + gram.transpose()), Eigen::EigenvaluesOnly);
  r.eigenvalues = es.eigenvalues();
  r.min_eigenvalue = r.eigenvalues.minCoeff();
  r.passed = r.min_eigenvalue >= floor;
  return r;
}

inline PsdReport validate_psd(const InvariantKernel& k, const AtomBasis& basis, double floor = kPsdFloor) {
  return validate_psd(k.gram(basis), floor);
}

/// max |k(Lp, Lq) - k(p, q)| over all transforms and pairs.
inline double validate_invariance(const InvariantKernel& k, const std::vector<LorentzTransform>& transforms,
                                  const std::vector<std::pair<MassShellMomentum, MassShellMomentum>>& pairs) {
  double worst = 0.0;
  for (const auto& l : transforms)
    for (const auto& [p, q] : pairs) worst = std::max(worst, std::abs(k(l.apply(p), l.apply(q)) - k(p, q)));
  return worst;
}

/// Spread of the diagonal k(p_i, p_i) over the basis.
inline double diagonal_spread(const InvariantKernel& k, const AtomBasis& basis) {
  if (basis.size() == 0) return 0.0;
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& p : basis.atoms()) {
    const double v = k(p, p);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi - lo;
}

}  // namespace relchan
