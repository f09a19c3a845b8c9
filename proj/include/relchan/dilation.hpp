#pragma once

// Kraus operators from a unitary on system (x) environment.
//
// With the environment state rho_E = sum_m r_m |e_m><e_m|,
//   F_{n,m} = sqrt(r_m) (I (x) <n|) U (I (x) |e_m>).
// Composite index ordering is s * d_E + e (system factor first).

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "relchan/channel.hpp"
#include "relchan/fock_sector.hpp"

namespace relchan {

inline void require_unitary(const Eigen::MatrixXcd& u, double tol = 1e-10) {
  if (u.rows() != u.cols()) throw Error("total unitary must be square");
  const double dev = (u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
  if (dev > tol) throw Error("total operator is not unitary (deviation " + std::to_string(dev) + ")");
}

inline KrausSet dilation_extract(const Eigen::MatrixXcd& u_total, Eigen::Index env_dim, const Operator& env_state) {
  require_unitary(u_total);
  if (env_dim <= 0 || u_total.rows() % env_dim != 0)
    throw Error("environment dimension does not divide the total dimension");
  if (env_state.rows() != env_dim || env_state.cols() != env_dim)
    throw Error("environment state has the wrong dimension");
  const auto diag = validate_density(env_state, 1e-10, 1e-10);
  if (!diag.ok()) throw Error("environment state is not a density operator: " + diag.describe());

  const Eigen::Index ds = u_total.rows() / env_dim;
  Eigen::SelfAdjointEigenSolver<Operator> es(0.5 * (env_state + env_state.adjoint()));
  KrausSet out;
  for (Eigen::Index m = 0; m < env_dim; ++m) {
    const double r = es.eigenvalues()(m);
    if (r <= 1e-15) continue;
    const Eigen::VectorXcd em = es.eigenvectors().col(m);
    for (Eigen::Index n = 0; n < env_dim; ++n) {
      Operator f = Operator::Zero(ds, ds);
      for (Eigen::Index so = 0; so < ds; ++so)
        for (Eigen::Index si = 0; si < ds; ++si) {
          cplx acc{0.0, 0.0};
          for (Eigen::Index e = 0; e < env_dim; ++e) acc += u_total(so * env_dim + n, si * env_dim + e) * em(e);
          f(so, si) = std::sqrt(r) * acc;
        }
      out.push_back(std::move(f));
    }
  }
  return out;
}

/// Tr_E [U (rho (x) rho_E) U^dag]
inline Operator partial_trace_evolution(const Eigen::MatrixXcd& u_total, const Operator& rho_sys,
                                        const Operator& rho_env) {
  const Eigen::Index ds = rho_sys.rows(), de = rho_env.rows();
  Operator joint(ds * de, ds * de);
  for (Eigen::Index a = 0; a < ds; ++a)
    for (Eigen::Index b = 0; b < ds; ++b) joint.block(a * de, b * de, de, de) = rho_sys(a, b) * rho_env;
  const Operator evolved = u_total * joint * u_total.adjoint();
  Operator out = Operator::Zero(ds, ds);
  for (Eigen::Index a = 0; a < ds; ++a)
    for (Eigen::Index b = 0; b < ds; ++b) out(a, b) = evolved.block(a * de, b * de, de, de).trace();
  return out;
}

/// Swap of two factors of equal dimension d.
inline Eigen::MatrixXcd swap_unitary(Eigen::Index d) {
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b) s(b * d + a, a * d + b) = 1.0;
  return s;
}

}  // namespace relchan
