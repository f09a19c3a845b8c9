#pragma once

// Foliation-covariant form of the representation and the channel.
//
// A foliation is a unit timelike normal n with an origin x0; the evolution
// parameter is tau = -n.(x - x0) and its generator Theta = -n.P acts on atom
// p with eigenvalue -n.p. Covariant ladder operators are A(p) = sqrt(E_p) a(p)
// and momentum sums carry the invariant weight 1/E_p.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "relchan/channel.hpp"
#include "relchan/fock_sector.hpp"
#include "relchan/minkowski.hpp"
#include "relchan/poincare_algebra.hpp"
#include "relchan/poincare_rep.hpp"
#include "relchan/random.hpp"

namespace relchan {

struct Foliation {
  FourVector n{1.0, 0.0, 0.0, 0.0};
  FourVector x0{};

  static Foliation make(const FourVector& n, const FourVector& x0 = {}) {
    require_unit_timelike(n);
    return {n, x0};
  }
  static Foliation special_frame() { return {}; }

  Foliation transformed(const PoincareElement& g) const { return {g.lambda.apply(n), g.lambda.apply(x0) + g.a}; }
};

inline double tau_of(const FourVector& x, const Foliation& f) { return -contract(f.n, x - f.x0); }

/// Eigenvalues of Theta on the atoms, read off from the algebra element
/// Theta = c_H H + sum_k c_k P_k.
inline Eigen::VectorXd theta_eigenvalues(const Foliation& f, const AtomBasis& basis) {
  const AlgebraElement theta = foliation_generators(f.n).theta;
  Eigen::VectorXd out(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const FourVector p = basis[i].four();
    double v = 0.0;
    for (int mu = 0; mu < 4; ++mu) v += theta(mu).real() * p[mu];
    out(static_cast<Eigen::Index>(i)) = v;
  }
  return out;
}

inline Eigen::VectorXcd theta_phases(const Foliation& f, double dtau, const AtomBasis& basis) {
  const Eigen::VectorXd w = theta_eigenvalues(f, basis);
  Eigen::VectorXcd ph(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) ph(i) = std::exp(-kI * w(i) * dtau);
  return ph;
}

/// e^{-i Theta (tau - tau0)} rho e^{i Theta (tau - tau0)}
inline Operator evolve_cov(const Foliation& f, double tau, double tau0, const AtomBasis& basis, const Operator& rho) {
  require_dims(basis, rho);
  return conjugate_diagonal(theta_phases(f, tau - tau0, basis), rho);
}

/// diag(1, 1/sqrt(E_i)): atom amplitudes to covariant amplitudes.
inline Eigen::VectorXd covariant_weights(const AtomBasis& basis) {
  Eigen::VectorXd w(basis.dim());
  w(0) = 1.0;
  for (std::size_t i = 0; i < basis.size(); ++i) w(particle(i)) = 1.0 / std::sqrt(basis[i].energy());
  return w;
}

inline Eigen::VectorXcd to_covariant(const Eigen::VectorXcd& psi, const AtomBasis& basis) {
  return covariant_weights(basis).cwiseProduct(psi);
}
inline Eigen::VectorXcd from_covariant(const Eigen::VectorXcd& psi_cov, const AtomBasis& basis) {
  return psi_cov.cwiseQuotient(covariant_weights(basis).cast<cplx>());
}
inline Operator to_covariant(const Operator& rho, const AtomBasis& basis) {
  const Eigen::VectorXd w = covariant_weights(basis);
  return w.asDiagonal() * rho * w.asDiagonal();
}
inline Operator from_covariant(const Operator& rho_cov, const AtomBasis& basis) {
  const Eigen::VectorXd w = covariant_weights(basis).cwiseInverse();
  return w.asDiagonal() * rho_cov * w.asDiagonal();
}

/// A(p_i) = sqrt(E_i) a_i
inline Operator covariant_annihilator(const AtomBasis& basis, std::size_t i) {
  return std::sqrt(basis[i].energy()) * annihilator(basis, i);
}

/// N = sum_i (1/E_i) A_i^dag A_i
inline Operator covariant_number_operator(const AtomBasis& basis) {
  Operator n = Operator::Zero(basis.dim(), basis.dim());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Operator a = covariant_annihilator(basis, i);
    n += (1.0 / basis[i].energy()) * a.adjoint() * a;
  }
  return n;
}

/// The channel written with covariant ladder operators and invariant weights:
///   beta sum_i w_i A_i rho A_i^dag + (I + gamma N) rho (I + gamma N)^dag
///   + sum_ij w_i w_j delta(p_i,p_j) A_i^dag A_i rho A_j^dag A_j,   w_i = 1/E_i.
/// The foliation enters only through the evolution that follows.
inline Operator apply_E_cov(const ChannelParams& params, const Foliation&, const AtomBasis& basis, const Operator& rho) {
  require_dims(basis, rho);
  const Eigen::Index d = basis.dim();
  std::vector<Operator> a(basis.size()), num(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    a[i] = covariant_annihilator(basis, i);
    num[i] = a[i].adjoint() * a[i];
  }
  Operator out = Operator::Zero(d, d);
  for (std::size_t i = 0; i < basis.size(); ++i)
    out += (params.beta / basis[i].energy()) * a[i] * rho * a[i].adjoint();
  const Operator g = Operator::Identity(d, d) + params.gamma * covariant_number_operator(basis);
  out += g * rho * g.adjoint();
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const double w = params.kernel(basis[i], basis[j]) / (basis[i].energy() * basis[j].energy());
      out += w * num[i] * rho * num[j];
    }
  return out;
}

inline Operator apply_Phi_cov(const ChannelParams& params, const Foliation& f, const AtomBasis& basis,
                              const Operator& rho) {
  return evolve_cov(f, params.t, params.t0, basis, apply_E_cov(params, f, basis, rho));
}

/// U_tau(g) = e^{-i Theta tau} T(a) V(L) e^{i Theta tau}, composed directly.
inline BasisState u_tau(const Foliation& f, const PoincareElement& g, double tau, const AtomBasis& basis,
                        const Operator& rho) {
  Operator r = evolve_cov(f, 0.0, tau, basis, rho);
  BasisState s{transform_basis(g.lambda, basis), r};
  s.rho = act_translation(g.a, s.basis, s.rho);
  s.rho = evolve_cov(f, tau, 0.0, s.basis, s.rho);
  return s;
}

/// The same transformation as a plain U_0 with a shifted translation:
/// e^{-i Theta tau} = T(-tau n), hence U_tau(L, a) = U_0(L, a + tau (L n - n)).
inline BasisState u_tau_shifted(const Foliation& f, const PoincareElement& g, double tau, const AtomBasis& basis,
                                const Operator& rho) {
  const FourVector shift = tau * (g.lambda.apply(f.n) - f.n);
  return u_t(PoincareElement{g.lambda, g.a + shift}, 0.0, basis, rho);
}

/// |u_tau - u_tau_shifted| after aligning bases.
inline double covariant_generator_residual(const Foliation& f, const PoincareElement& g, double tau,
                                           const AtomBasis& basis, const Operator& rho) {
  const BasisState direct = u_tau(f, g, tau, basis, rho);
  const BasisState shifted = u_tau_shifted(f, g, tau, basis, rho);
  return (direct.rho - align(shifted, direct.basis)).cwiseAbs().maxCoeff();
}

struct GeneratorCheckReport {
  std::size_t samples = 0;
  double max_residual = 0.0;
  bool passed(double tol = 1e-11) const { return max_residual < tol; }
};

/// Two-path check over random (L, a, tau, rho).
inline GeneratorCheckReport covariant_generator_check(const Foliation& f, const AtomBasis& basis, Rng& rng,
                                                      std::size_t samples) {
  GeneratorCheckReport rep;
  rep.samples = samples;
  for (std::size_t s = 0; s < samples; ++s) {
    const PoincareElement g{random_lorentz(rng, 1.0), random_four_vector(rng, 2.0)};
    const double tau = rng.uniform(-3.0, 3.0);
    const Operator rho = random_density(rng, basis.dim());
    rep.max_residual = std::max(rep.max_residual, covariant_generator_residual(f, g, tau, basis, rho));
  }
  return rep;
}

/// Covariance of Phi in foliation form:
/// U_tau(g) Phi[rho] U_tau(g)^dag vs Phi[U_tau0(g) rho U_tau0(g)^dag].
inline double covariance_check_cov(const ChannelParams& params, const Foliation& f, const AtomBasis& basis,
                                   const PoincareElement& g, const Operator& rho) {
  const BasisState lhs = u_tau(f, g, params.t, basis, apply_Phi_cov(params, f, basis, rho));
  const BasisState moved = u_tau(f, g, params.t0, basis, rho);
  const BasisState rhs{moved.basis, apply_Phi_cov(params, f, moved.basis, moved.rho)};
  return (lhs.rho - align(rhs, lhs.basis)).cwiseAbs().maxCoeff();
}

}  // namespace relchan
