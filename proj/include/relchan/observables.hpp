#pragma once

// Characteristic functions of the generators and the conservation checks.
//
//   chi(a)       = Tr[e^{-i a.P} rho] = rho_00 + sum_i e^{-i a.p_i} rho_ii
//   chi_t(theta) = Tr[O rho],  O = e^{-iHt} V(L(theta)) e^{iHt}
//
// a.p is the Minkowski contraction, so a time-like argument (a0,0,0,0)
// produces e^{+i E a0}. Lorentz traces use the overlap rule
// <p_i|L p_j> = 1 when the momenta coincide as atoms, 0 otherwise.

#include <algorithm>
#include <array>
#include <utility>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "relchan/channel.hpp"
#include "relchan/fock_sector.hpp"
#include "relchan/minkowski.hpp"
#include "relchan/poincare_rep.hpp"

namespace relchan {

/// chi(a) evaluated in the arithmetic of Real. Returns (re, im).
template <class Real>
std::pair<Real, Real> char_fn_translation_in(const Operator& rho, const std::array<Real, 4>& a, const AtomBasis& basis) {
  using std::cos;
  using std::sin;
  using std::sqrt;
  Real re = Real(rho(0, 0).real()), im = Real(rho(0, 0).imag());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& p = basis[i];
    const Eigen::Vector3d& s = p.spatial();
    // a.p = -a0 E + a.p; the energy is recomputed in Real
    const Real e = sqrt(Real(s(0)) * Real(s(0)) + Real(s(1)) * Real(s(1)) + Real(s(2)) * Real(s(2)) +
                        Real(p.mass()) * Real(p.mass()));
    const Real ap = -a[0] * e + a[1] * Real(s(0)) + a[2] * Real(s(1)) + a[3] * Real(s(2));
    const Real c = cos(ap), sn = -sin(ap);
    const auto idx = particle(i);
    const Real rr = Real(rho(idx, idx).real()), ri = Real(rho(idx, idx).imag());
    re += c * rr - sn * ri;
    im += c * ri + sn * rr;
  }
  return {re, im};
}

inline cplx char_fn_translation(const Operator& rho, const FourVector& a, const AtomBasis& basis) {
  require_dims(basis, rho);
  cplx chi = rho(0, 0);
  for (std::size_t i = 0; i < basis.size(); ++i)
    chi += std::exp(-kI * contract(a, basis[i].four())) * rho(particle(i), particle(i));
  return chi;
}

/// Closed form of chi_t(0,a) after Phi: chi_t0(a) + beta Tr[N (1 - e^{-ia.P}) rho].
inline cplx chit2_rhs(const ChannelParams& params, const Operator& rho, const FourVector& a, const AtomBasis& basis) {
  cplx defect{0.0, 0.0};
  for (std::size_t i = 0; i < basis.size(); ++i)
    defect += (1.0 - std::exp(-kI * contract(a, basis[i].four()))) * rho(particle(i), particle(i));
  return char_fn_translation(rho, a, basis) + params.beta * defect;
}

struct ConservationSample {
  std::size_t id = 0;
  cplx lhs;       // chi after the map
  cplx rhs;       // closed formula
  cplx chi_t0;    // chi before the map
  double residual = 0.0;
  cplx defect() const { return lhs - chi_t0; }
};

struct ConservationReport {
  std::vector<ConservationSample> samples;
  double max_residual = 0.0;
  double max_defect = 0.0;  // max |chi_t - chi_t0|
  bool exact_conservation_expected = false;
  double tolerance = 1e-10;
  double exact_tolerance = 1e-12;

  bool passed() const {
    if (max_residual >= tolerance) return false;
    if (exact_conservation_expected && max_defect >= exact_tolerance) return false;
    return true;
  }
};

inline ConservationReport verify_momentum_conservation(const ChannelParams& params, const AtomBasis& basis,
                                                       const Operator& rho, const std::vector<FourVector>& a_samples) {
  ConservationReport rep;
  rep.exact_conservation_expected = params.beta == 0.0;
  const Operator out = apply_Phi(params, basis, rho);
  for (std::size_t s = 0; s < a_samples.size(); ++s) {
    ConservationSample cs;
    cs.id = s;
    cs.lhs = char_fn_translation(out, a_samples[s], basis);
    cs.rhs = chit2_rhs(params, rho, a_samples[s], basis);
    cs.chi_t0 = char_fn_translation(rho, a_samples[s], basis);
    cs.residual = std::abs(cs.lhs - cs.rhs);
    rep.max_residual = std::max(rep.max_residual, cs.residual);
    rep.max_defect = std::max(rep.max_defect, std::abs(cs.defect()));
    rep.samples.push_back(cs);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Lorentz characteristic function

class InvalidTheta : public Error {
 public:
  using Error::Error;
};

/// L(theta) = exp(omega) with omega^mu_nu = eta^{mu a} theta_{a nu}; theta
/// carries two lower indices and must be antisymmetric.
inline LorentzTransform lorentz_from_theta(const Eigen::Matrix4d& theta) {
  const double asym = (theta + theta.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-14) throw InvalidTheta("theta is not antisymmetric (deviation " + std::to_string(asym) + ")");
  const Eigen::Matrix4d omega = metric() * theta;
  return LorentzTransform::from_matrix(omega.exp());
}

/// theta for an active rotation by `angle` about the unit axis n.
inline Eigen::Matrix4d theta_rotation(const Eigen::Vector3d& axis, double angle) {
  const Eigen::Vector3d n = axis.normalized() * angle;
  Eigen::Matrix4d th = Eigen::Matrix4d::Zero();
  // omega^i_j = -eps_ijk n_k generates R(n)
  th(1, 2) = -n(2);
  th(2, 1) = n(2);
  th(2, 3) = -n(0);
  th(3, 2) = n(0);
  th(3, 1) = -n(1);
  th(1, 3) = n(1);
  return th;
}

/// theta for a pure boost with the given rapidity along a unit direction.
inline Eigen::Matrix4d theta_boost(const Eigen::Vector3d& direction, double rapidity) {
  const Eigen::Vector3d v = direction.normalized() * rapidity;
  Eigen::Matrix4d th = Eigen::Matrix4d::Zero();
  // omega^0_i = omega^i_0 = v_i  <=>  theta_{0i} = -v_i, theta_{i0} = v_i
  for (int i = 0; i < 3; ++i) {
    th(0, i + 1) = -v(i);
    th(i + 1, 0) = v(i);
  }
  return th;
}

/// Matrix of O = e^{-iHt} V(L) e^{iHt} in the basis under the overlap rule.
inline Operator lorentz_overlap_operator(const LorentzTransform& lambda, const AtomBasis& basis, double t) {
  Operator o = Operator::Zero(basis.dim(), basis.dim());
  o(0, 0) = 1.0;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const long j = basis.find(lambda.apply(basis[k]));
    if (j < 0) continue;
    const double phase = (basis[k].energy() - basis[static_cast<std::size_t>(j)].energy()) * t;
    o(particle(static_cast<std::size_t>(j)), particle(k)) = std::exp(kI * phase);
  }
  return o;
}

inline cplx char_fn_lorentz(const Operator& rho, const Eigen::Matrix4d& theta, const AtomBasis& basis, double t) {
  require_dims(basis, rho);
  return (lorentz_overlap_operator(lorentz_from_theta(theta), basis, t) * rho).trace();
}

/// Closed form of chi_t(theta, 0) for beta = 0:
///   chi_t0 - delta0 Tr[N O rho] + sum_p delta(p, Lp) (n_p O rho)_pp
inline cplx chit3_rhs(const ChannelParams& params, const Operator& rho, const Eigen::Matrix4d& theta,
                      const AtomBasis& basis) {
  const LorentzTransform lambda = lorentz_from_theta(theta);
  const Operator o = lorentz_overlap_operator(lambda, basis, params.t0);
  const Operator orho = o * rho;
  cplx out = orho.trace();
  cplx n_term{0.0, 0.0}, kernel_term{0.0, 0.0};
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto idx = particle(i);
    n_term += orho(idx, idx);
    kernel_term += params.kernel(basis[i], lambda.apply(basis[i])) * orho(idx, idx);
  }
  return out - params.delta0 * n_term + kernel_term;
}

class ConservationPrecondition : public Error {
 public:
  using Error::Error;
};

inline ConservationReport verify_lorentz_conservation(const ChannelParams& params, const AtomBasis& basis,
                                                      const Operator& rho,
                                                      const std::vector<Eigen::Matrix4d>& theta_samples) {
  if (params.beta != 0.0) throw ConservationPrecondition("the Lorentz identity is only defined for beta = 0");
  ConservationReport rep;
  rep.exact_conservation_expected = params.kernel.family() == KernelFamily::constant;
  rep.exact_tolerance = 1e-11;
  const Operator out = apply_Phi(params, basis, rho);
  for (std::size_t s = 0; s < theta_samples.size(); ++s) {
    ConservationSample cs;
    cs.id = s;
    cs.lhs = char_fn_lorentz(out, theta_samples[s], basis, params.t);
    cs.rhs = chit3_rhs(params, rho, theta_samples[s], basis);
    cs.chi_t0 = char_fn_lorentz(rho, theta_samples[s], basis, params.t0);
    cs.residual = std::abs(cs.lhs - cs.rhs);
    rep.max_residual = std::max(rep.max_residual, cs.residual);
    rep.max_defect = std::max(rep.max_defect, std::abs(cs.defect()));
    rep.samples.push_back(cs);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Moments

enum class MomentGenerator { H, P1, P2, P3 };

inline const char* to_string(MomentGenerator g) {
  switch (g) {
    case MomentGenerator::H: return "H";
    case MomentGenerator::P1: return "P1";
    case MomentGenerator::P2: return "P2";
    case MomentGenerator::P3: return "P3";
  }
  return "?";
}

inline double generator_eigenvalue(const MassShellMomentum& p, MomentGenerator g) {
  switch (g) {
    case MomentGenerator::H: return p.energy();
    case MomentGenerator::P1: return p.spatial()(0);
    case MomentGenerator::P2: return p.spatial()(1);
    case MomentGenerator::P3: return p.spatial()(2);
  }
  return 0.0;
}

/// Tr[X^n rho] from the diagonal.
inline double moment_direct(const Operator& rho, MomentGenerator g, int n, const AtomBasis& basis) {
  double s = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i)
    s += std::pow(generator_eigenvalue(basis[i], g), n) * rho(particle(i), particle(i)).real();
  if (n == 0) s += rho(0, 0).real();
  return s;
}

inline constexpr double kMomentStep = 1e-3;

/// Tr[X^n rho] from a central finite difference of chi along the matching
/// direction: (-i)^n d^n/da0^n for H, (i)^n d^n/da_k^n for P_k. The
/// stencils are evaluated in 113-bit floating point so that the h^-n
/// amplification of rounding does not swamp the result.
inline double moment_finite_difference(const Operator& rho, MomentGenerator g, int n, const AtomBasis& basis,
                                       double h = kMomentStep) {
  if (n < 1 || n > 4) throw Error("finite-difference moments are provided for orders 1 to 4");
  using Real = boost::multiprecision::cpp_bin_float_quad;
  const int dir = static_cast<int>(g);
  auto f = [&](int k) {
    std::array<Real, 4> a{Real(0), Real(0), Real(0), Real(0)};
    a[static_cast<std::size_t>(dir)] = Real(k) * Real(h);
    return char_fn_translation_in<Real>(rho, a, basis);
  };
  // sixth-order accurate central stencils on offsets -4..4, weights num/den
  static const int num[4][9] = {{0, -1, 9, -45, 0, 45, -9, 1, 0},
                                {0, 2, -27, 270, -490, 270, -27, 2, 0},
                                {-7, 72, -338, 488, 0, -488, 338, -72, 7},
                                {7, -96, 676, -1952, 2730, -1952, 676, -96, 7}};
  static const int den[4] = {60, 180, 240, 240};
  Real dre(0), dim(0);
  for (int s = 0; s < 9; ++s) {
    const int w = num[n - 1][s];
    if (w == 0) continue;
    const auto [re, im] = f(s - 4);
    dre += Real(w) * re;
    dim += Real(w) * im;
  }
  dre /= Real(den[n - 1]);
  dim /= Real(den[n - 1]);
  const Real hn = pow(Real(h), n);
  dre /= hn;
  dim /= hn;
  // multiply by (-i)^n for H, (i)^n for P_k; take the real part
  const int q = ((g == MomentGenerator::H ? -n : n) % 4 + 4) % 4;
  Real out;
  switch (q) {
    case 0: out = dre; break;
    case 1: out = -dim; break;   // i (x + iy) -> -y
    case 2: out = -dre; break;
    default: out = dim; break;   // -i (x + iy) -> y
  }
  return static_cast<double>(out);
}

struct MomentCheck {
  MomentGenerator generator;
  int order;
  double direct;
  double finite_difference;
  double relative_error;
  bool passed(double tol = 1e-6) const { return relative_error <= tol; }
};

inline MomentCheck moments(const Operator& rho, MomentGenerator g, int n, const AtomBasis& basis) {
  const double d = moment_direct(rho, g, n, basis);
  const double fd = moment_finite_difference(rho, g, n, basis);
  // relative to Tr[|X|^n rho], which stays meaningful when odd moments cancel
  double scale = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i)
    scale += std::pow(std::abs(generator_eigenvalue(basis[i], g)), n) * rho(particle(i), particle(i)).real();
  const double denom = std::max(scale, 1e-12);
  return {g, n, d, fd, std::abs(fd - d) / denom};
}

/// Minimum eigenvalue of [chi(a_i - a_j)].
inline double bochner_min_eigenvalue(const Operator& rho, const std::vector<FourVector>& points, const AtomBasis& basis) {
  const auto n = static_cast<Eigen::Index>(points.size());
  Operator g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      g(i, j) = char_fn_translation(rho, points[static_cast<std::size_t>(i)] - points[static_cast<std::size_t>(j)], basis);
  return min_eigenvalue(g);
}

}  // namespace relchan
