#pragma once

// The Poincare-invariant dynamical map on the vacuum + one-particle sector.
//
//   E[rho] = beta sum_i a_i rho a_i^dag + (I + gamma N) rho (I + gamma N)^dag
//            + sum_ij Delta_ij n_i rho n_j,       Delta_ij = delta(p_i, p_j)
//   Phi    = U_{t,t0} o E
//
// Completeness ties the diagonal of the kernel to the other two parameters:
// delta0 = -(beta + 2 Re gamma + |gamma|^2).

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "relchan/fock_sector.hpp"
#include "relchan/kernels.hpp"
#include "relchan/poincare_rep.hpp"

namespace relchan {

class InvalidParams : public Error {
 public:
  using Error::Error;
};

struct ChannelParams {
  double t = 0.0;
  double t0 = 0.0;
  double beta = 0.0;
  cplx gamma{0.0, 0.0};
  InvariantKernel kernel = InvariantKernel::constant(0.0);
  double delta0 = 0.0;

  /// Builds parameters without any check, for negative tests.
  static ChannelParams unchecked(double beta, cplx gamma, const InvariantKernel& kernel, double t, double t0) {
    return {t, t0, beta, gamma, kernel, derived_delta0(beta, gamma)};
  }

  static double derived_delta0(double beta, cplx gamma) { return -(beta + 2.0 * gamma.real() + std::norm(gamma)); }
};

inline constexpr double kDelta0Slack = 1e-14;

/// Checks every condition and names each one that fails.
inline ChannelParams validate_params(double beta, cplx gamma, const InvariantKernel& kernel, double t, double t0,
                                     const AtomBasis& basis) {
  std::vector<std::string> failures;
  if (!std::isfinite(beta) || !std::isfinite(gamma.real()) || !std::isfinite(gamma.imag()) || !std::isfinite(t) ||
      !std::isfinite(t0))
    failures.push_back("non-finite parameter");
  if (!(beta >= 0.0)) failures.push_back("beta = " + std::to_string(beta) + " is negative");
  const double d0 = ChannelParams::derived_delta0(beta, gamma);
  if (!(d0 >= -kDelta0Slack)) failures.push_back("derived delta0 = " + std::to_string(d0) + " is negative");
  if (basis.size() > 0) {
    double worst = 0.0;
    for (const auto& p : basis.atoms()) worst = std::max(worst, std::abs(kernel(p, p) - d0));
    if (worst > 1e-12)
      failures.push_back("kernel diagonal differs from delta0 = " + std::to_string(d0) + " by " +
                         std::to_string(worst));
    const auto psd = validate_psd(kernel, basis);
    if (!psd.passed)
      failures.push_back("kernel Gram matrix not PSD (min eigenvalue " + std::to_string(psd.min_eigenvalue) + ")");
  }
  if (!failures.empty()) {
    std::string msg = "invalid channel parameters:";
    for (const auto& f : failures) msg += " [" + f + "]";
    throw InvalidParams(msg);
  }
  return {t, t0, beta, gamma, kernel, std::max(d0, 0.0)};
}

/// Derives delta0 from (beta, gamma) and fits the kernel's diagonal to it.
/// Built-in families are re-parameterized; a custom kernel must have a
/// constant diagonal on the basis and is rescaled.
inline ChannelParams make_params(double beta, cplx gamma, const InvariantKernel& shape, double t, double t0,
                                 const AtomBasis& basis) {
  const double d0 = std::max(ChannelParams::derived_delta0(beta, gamma), 0.0);
  InvariantKernel k = shape.with_delta0(d0);
  if (shape.family() == KernelFamily::custom && basis.size() > 0) {
    if (diagonal_spread(shape, basis) > 1e-12) throw InvalidParams("custom kernel diagonal is not constant");
    const double diag = shape(basis[0], basis[0]);
    if (diag == 0.0 && d0 != 0.0) throw InvalidParams("custom kernel diagonal is zero but delta0 is not");
    k = diag == 0.0 ? shape
                    : InvariantKernel::custom(diag, [shape](const MassShellMomentum& p, const MassShellMomentum& q) {
                        return shape(p, q);
                      }).with_delta0(d0);
  }
  return validate_params(beta, gamma, k, t, t0, basis);
}

inline void require_dims(const AtomBasis& basis, const Operator& rho) {
  if (rho.rows() != basis.dim() || rho.cols() != basis.dim())
    throw Error("operator of size " + std::to_string(rho.rows()) + "x" + std::to_string(rho.cols()) +
                " does not match sector dimension " + std::to_string(basis.dim()));
}

inline Operator apply_E(const ChannelParams& params, const AtomBasis& basis, const Operator& rho) {
  require_dims(basis, rho);
  const Eigen::Index d = basis.dim();
  const cplx f = 1.0 + params.gamma;
  const Eigen::MatrixXd delta = params.kernel.gram(basis);

  Operator out(d, d);
  out(0, 0) = rho(0, 0);
  for (Eigen::Index k = 1; k < d; ++k) {
    out(0, k) = rho(0, k) * std::conj(f);
    out(k, 0) = f * rho(k, 0);
  }
  for (Eigen::Index j = 1; j < d; ++j)
    for (Eigen::Index k = 1; k < d; ++k) out(j, k) = (std::norm(f) + delta(j - 1, k - 1)) * rho(j, k);
  cplx decay{0.0, 0.0};
  for (Eigen::Index i = 1; i < d; ++i) decay += rho(i, i);
  out(0, 0) += params.beta * decay;
  return out;
}

inline Operator apply_Phi(const ChannelParams& params, const AtomBasis& basis, const Operator& rho) {
  return time_evolve(params.t, params.t0, basis, apply_E(params, basis, rho));
}

using KrausSet = std::vector<Operator>;

inline Operator apply_kraus(const KrausSet& kraus, const Operator& rho) {
  Operator out = Operator::Zero(rho.rows(), rho.cols());
  for (const auto& k : kraus) out += k * rho * k.adjoint();
  return out;
}

inline double completeness_residual(const KrausSet& kraus) {
  if (kraus.empty()) return INFINITY;
  const Eigen::Index d = kraus.front().cols();
  Operator s = Operator::Zero(d, d);
  for (const auto& k : kraus) s += k.adjoint() * k;
  return (s - Operator::Identity(d, d)).cwiseAbs().maxCoeff();
}

/// {sqrt(beta) a_i}, I + gamma N, {sqrt(l_k) sum_i v_k(i) n_i} from the
/// eigendecomposition of the kernel Gram matrix.
inline KrausSet kraus_set(const ChannelParams& params, const AtomBasis& basis) {
  const Eigen::Index d = basis.dim();
  KrausSet out;
  if (params.beta > 0.0)
    for (std::size_t i = 0; i < basis.size(); ++i) out.push_back(std::sqrt(params.beta) * annihilator(basis, i));
  out.push_back(Operator::Identity(d, d) + params.gamma * number_operator(basis));

  if (basis.size() == 0) return out;
  const Eigen::MatrixXd delta = params.kernel.gram(basis);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (delta + delta.transpose()));
  const double scale = std::max(1.0, delta.cwiseAbs().maxCoeff());
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double lam = es.eigenvalues()(k);
    if (lam < kPsdFloor) throw InvalidParams("kernel eigenvalue " + std::to_string(lam) + " below the PSD floor");
    if (lam <= 1e-14 * scale) continue;
    Operator kk = Operator::Zero(d, d);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) kk(i + 1, i + 1) = std::sqrt(lam) * es.eigenvectors()(i, k);
    out.push_back(std::move(kk));
  }
  return out;
}

/// Kraus operators of Phi: F = e^{-iHt} E_k e^{iHt0}.
inline KrausSet phi_kraus_set(const ChannelParams& params, const AtomBasis& basis) {
  Eigen::VectorXcd left(basis.dim()), right(basis.dim());
  left(0) = right(0) = 1.0;
  left.tail(basis.dim() - 1) = evolution_phases(params.t, basis);
  right.tail(basis.dim() - 1) = evolution_phases(params.t0, basis).conjugate();
  KrausSet out;
  for (const auto& e : kraus_set(params, basis)) out.push_back(left.asDiagonal() * e * right.asDiagonal());
  return out;
}

/// K'_a = sum_b U_ab K_b for a unitary U of matching size.
inline KrausSet mix_kraus(const KrausSet& kraus, const Eigen::MatrixXcd& u) {
  if (u.rows() != static_cast<Eigen::Index>(kraus.size()) || u.cols() != u.rows())
    throw Error("mixing matrix size does not match the Kraus set");
  KrausSet out;
  for (Eigen::Index a = 0; a < u.rows(); ++a) {
    Operator k = Operator::Zero(kraus.front().rows(), kraus.front().cols());
    for (Eigen::Index b = 0; b < u.cols(); ++b) k += u(a, b) * kraus[static_cast<std::size_t>(b)];
    out.push_back(std::move(k));
  }
  return out;
}

/// C = sum_ij |i><j| (x) map(|i><j|), input factor first.
inline Operator choi_of(const std::function<Operator(const Operator&)>& map, Eigen::Index d) {
  Operator c = Operator::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      Operator e = Operator::Zero(d, d);
      e(i, j) = 1.0;
      c.block(i * d, j * d, d, d) = map(e);
    }
  return c;
}

inline Operator choi(const ChannelParams& params, const AtomBasis& basis) {
  return choi_of([&](const Operator& x) { return apply_Phi(params, basis, x); }, basis.dim());
}

struct ChoiReport {
  double hermiticity_error = 0.0;
  double min_eigenvalue = 0.0;
  double partial_trace_residual = 0.0;  // |Tr_out C - I|
  bool completely_positive() const { return min_eigenvalue >= kPsdFloor; }
  bool trace_preserving(double tol = 1e-11) const { return partial_trace_residual < tol; }
};

inline ChoiReport analyze_choi(const Operator& c, Eigen::Index d) {
  ChoiReport r;
  r.hermiticity_error = (c - c.adjoint()).cwiseAbs().maxCoeff();
  r.min_eigenvalue = min_eigenvalue(c);
  Operator pt = Operator::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) pt(i, j) = c.block(i * d, j * d, d, d).trace();
  r.partial_trace_residual = (pt - Operator::Identity(d, d)).cwiseAbs().maxCoeff();
  return r;
}

struct CovarianceResult {
  double residual = 0.0;
  AtomBasis basis;  // basis of both outputs after alignment
};

/// Compares U_t(g) Phi[rho] U_t(g)^dag with Phi[U_t0(g) rho U_t0(g)^dag].
inline CovarianceResult covariance_check(const ChannelParams& params, const AtomBasis& basis, const PoincareElement& g,
                                         const Operator& rho) {
  const BasisState lhs = u_t(g, params.t, basis, apply_Phi(params, basis, rho));
  const BasisState moved = u_t(g, params.t0, basis, rho);
  const BasisState rhs{moved.basis, apply_Phi(params, moved.basis, moved.rho)};
  const Operator rhs_aligned = align(rhs, lhs.basis);
  return {(lhs.rho - rhs_aligned).cwiseAbs().maxCoeff(), lhs.basis};
}

/// max |Phi_{t2,t1} o Phi_{t1,t0}[rho] - Phi_{t2,t0}[rho]|. A measurement only:
/// the parameter family carries no composition law.
inline double composition_defect(const ChannelParams& p21, const ChannelParams& p10, const ChannelParams& p20,
                                 const AtomBasis& basis, const Operator& rho) {
  const Operator two_step = apply_Phi(p21, basis, apply_Phi(p10, basis, rho));
  return (two_step - apply_Phi(p20, basis, rho)).cwiseAbs().maxCoeff();
}

}  // namespace relchan
