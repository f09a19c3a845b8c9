#pragma once

// The ten-generator Poincare algebra over the ordered basis
// (H, P1, P2, P3, J1, J2, J3, K1, K2, K3) and the foliation generators
// Theta, Pi^mu, L^mu, N^mu attached to a unit timelike normal n.
//
// Conventions:
//   [J_i, J_j] = i eps_ijk J_k     [J_i, P_j] = i eps_ijk P_k
//   [J_i, K_j] = i eps_ijk K_k     [K_i, P_j] = i delta_ij H
//   [K_i, H]   = i P_i             [K_i, K_j] = -i eps_ijk J_k
//   all other brackets of basis elements vanish.
//   P^0 = H, J^{jk} = eps_ijk J_i, J^{i0} = -J^{0i} = K_i.
//   L^mu = 1/2 eps^{mu a b c} J_{ab} n_c with eps^{0123} = +1.
//   The epsilon appearing with four lower indices on the right-hand side of
//   the foliation brackets is the numeric symbol with eps_{0123} = +1.

#include <algorithm>
#include <array>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "relchan/minkowski.hpp"

namespace relchan {

using cplx = std::complex<double>;
inline constexpr cplx kI{0.0, 1.0};

using AlgebraElement = Eigen::Matrix<cplx, 10, 1>;

enum class Generator : int { H = 0, P1, P2, P3, J1, J2, J3, K1, K2, K3 };

inline constexpr std::array<const char*, 10> kGeneratorNames = {"H",  "P1", "P2", "P3", "J1",
                                                                 "J2", "J3", "K1", "K2", "K3"};

inline AlgebraElement basis_element(int index) {
  AlgebraElement e = AlgebraElement::Zero();
  e(index) = 1.0;
  return e;
}
inline AlgebraElement basis_element(Generator g) { return basis_element(static_cast<int>(g)); }

namespace detail {

constexpr int P(int i) { return 1 + i; }
constexpr int J(int i) { return 4 + i; }
constexpr int K(int i) { return 7 + i; }

/// Levi-Civita symbol on three spatial indices 0..2.
constexpr double eps3(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0.0;
  return ((i + 1) % 3 == j) ? 1.0 : -1.0;
}

/// Levi-Civita symbol on four indices with value +1 at (0,1,2,3).
constexpr double eps4(int a, int b, int c, int d) {
  const int idx[4] = {a, b, c, d};
  for (int x = 0; x < 4; ++x)
    for (int y = x + 1; y < 4; ++y)
      if (idx[x] == idx[y]) return 0.0;
  int inversions = 0;
  for (int x = 0; x < 4; ++x)
    for (int y = x + 1; y < 4; ++y)
      if (idx[x] > idx[y]) ++inversions;
  return (inversions % 2 == 0) ? 1.0 : -1.0;
}

constexpr double eta(int mu) { return mu == 0 ? -1.0 : 1.0; }

using StructureTable = std::array<std::array<AlgebraElement, 10>, 10>;

inline StructureTable build_structure_table() {
  StructureTable f;
  for (auto& row : f)
    for (auto& e : row) e.setZero();
  auto set = [&f](int a, int b, int c, cplx v) {
    f[a][b](c) += v;
    f[b][a](c) -= v;
  };
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        const double e = eps3(i, j, k);
        if (e == 0.0) continue;
        // antisymmetric pairs (i,j)/(j,i) are both visited; only set once
        if (i < j) {
          set(J(i), J(j), J(k), kI * e);
          set(K(i), K(j), J(k), -kI * e);
        }
        set(J(i), P(j), P(k), kI * e);
        set(J(i), K(j), K(k), kI * e);
      }
    }
    set(K(i), P(i), 0, kI);
    set(K(i), 0, P(i), kI);
  }
  return f;
}

}  // namespace detail

/// Structure constants: [X_a, X_b] = sum_c f[a][b](c) X_c.
inline const detail::StructureTable& structure_constants() {
  static const detail::StructureTable table = detail::build_structure_table();
  return table;
}

/// Bilinear bracket expanded over the structure constants.
inline AlgebraElement commutator(const AlgebraElement& x, const AlgebraElement& y) {
  const auto& f = structure_constants();
  AlgebraElement out = AlgebraElement::Zero();
  for (int a = 0; a < 10; ++a) {
    if (x(a) == cplx{}) continue;
    for (int b = 0; b < 10; ++b) {
      if (y(b) == cplx{}) continue;
      out += x(a) * y(b) * f[a][b];
    }
  }
  return out;
}

inline double max_abs(const AlgebraElement& x) { return x.cwiseAbs().maxCoeff(); }

/// Max coefficient of [X,[Y,Z]] + [Y,[Z,X]] + [Z,[X,Y]] over all ordered
/// basis triples.
inline double jacobi_residual() {
  double worst = 0.0;
  for (int a = 0; a < 10; ++a)
    for (int b = 0; b < 10; ++b)
      for (int c = 0; c < 10; ++c) {
        const auto x = basis_element(a), y = basis_element(b), z = basis_element(c);
        const AlgebraElement j =
            commutator(x, commutator(y, z)) + commutator(y, commutator(z, x)) + commutator(z, commutator(x, y));
        worst = std::max(worst, max_abs(j));
      }
  return worst;
}

/// Four-momentum P^mu as algebra elements.
inline std::array<AlgebraElement, 4> four_momentum_generators() {
  return {basis_element(0), basis_element(detail::P(0)), basis_element(detail::P(1)), basis_element(detail::P(2))};
}

/// J^{mu nu} with upper indices.
inline std::array<std::array<AlgebraElement, 4>, 4> angular_momentum_generators() {
  std::array<std::array<AlgebraElement, 4>, 4> j;
  for (auto& row : j)
    for (auto& e : row) e.setZero();
  for (int i = 0; i < 3; ++i) {
    j[i + 1][0] = basis_element(detail::K(i));
    j[0][i + 1] = -basis_element(detail::K(i));
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        if (detail::eps3(i, a, b) != 0.0) j[a + 1][b + 1] += detail::eps3(i, a, b) * basis_element(detail::J(i));
  }
  return j;
}

class InvalidFoliation : public Error {
 public:
  using Error::Error;
};

struct FoliationGenerators {
  FourVector n;
  AlgebraElement theta;
  std::array<AlgebraElement, 4> pi;  // upper index
  std::array<AlgebraElement, 4> l;   // upper index
  std::array<AlgebraElement, 4> nb;  // N^mu, upper index
};

inline void require_unit_timelike(const FourVector& n, double tol = 1e-10) {
  const double nn = contract(n, n);
  if (std::abs(nn + 1.0) > tol || !(n[0] > 0.0))
    throw InvalidFoliation("foliation normal must be unit timelike and future-pointing (n.n = " + std::to_string(nn) +
                           ", n^0 = " + std::to_string(n[0]) + ")");
}

/// Theta = -n.P, Pi^mu = P^mu - n^mu Theta, L^mu = 1/2 eps^{mu a b c} J_{ab} n_c,
/// N^mu = J^{nu mu} n_nu. The contraction runs over the first index of J so
/// that N^mu = (0, K) in the frame n = (1,0,0,0).
inline FoliationGenerators foliation_generators(const FourVector& n) {
  require_unit_timelike(n);
  using detail::eta;
  const auto p = four_momentum_generators();
  const auto j = angular_momentum_generators();

  FoliationGenerators g;
  g.n = n;
  g.theta.setZero();
  for (int mu = 0; mu < 4; ++mu) g.theta -= n.lower(mu) * p[mu];
  for (int mu = 0; mu < 4; ++mu) {
    g.pi[mu] = p[mu] - n[mu] * g.theta;
    g.l[mu].setZero();
    g.nb[mu].setZero();
    for (int nu = 0; nu < 4; ++nu) g.nb[mu] += j[nu][mu] * n.lower(nu);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c) {
          const double e = detail::eps4(mu, a, b, c);
          if (e == 0.0) continue;
          g.l[mu] += 0.5 * e * eta(a) * eta(b) * n.lower(c) * j[a][b];
        }
  }
  return g;
}

struct BracketFamilyResult {
  std::string name;
  double max_residual = 0.0;
};

struct FoliationAlgebraReport {
  FourVector n;
  std::vector<BracketFamilyResult> families;
  double tolerance = 1e-10;

  double max_residual() const {
    double r = 0.0;
    for (const auto& f : families) r = std::max(r, f.max_residual);
    return r;
  }
  bool passed() const { return max_residual() < tolerance; }
};

/// Checks the nine bracket families of the foliation generators as
/// coefficient-vector identities. Indices on both sides are lowered with eta.
inline FoliationAlgebraReport verify_foliation_algebra(const FourVector& n) {
  using detail::eta;
  const auto g = foliation_generators(n);

  std::array<AlgebraElement, 4> pi_lo, l_lo, n_lo;
  for (int mu = 0; mu < 4; ++mu) {
    pi_lo[mu] = eta(mu) * g.pi[mu];
    l_lo[mu] = eta(mu) * g.l[mu];
    n_lo[mu] = eta(mu) * g.nb[mu];
  }
  // i eps_{mu nu a b} n^a X^b
  auto eps_rhs = [&](int mu, int nu, const std::array<AlgebraElement, 4>& x_up) {
    AlgebraElement out = AlgebraElement::Zero();
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        const double e = detail::eps4(mu, nu, a, b);
        if (e != 0.0) out += kI * e * n[a] * x_up[b];
      }
    return out;
  };

  FoliationAlgebraReport report;
  report.n = n;
  auto family = [&report](const std::string& name, auto&& residual_fn) {
    double worst = 0.0;
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) worst = std::max(worst, max_abs(residual_fn(mu, nu)));
    report.families.push_back({name, worst});
  };

  family("PiPi", [&](int mu, int nu) { return commutator(pi_lo[mu], pi_lo[nu]); });
  family("PiTheta", [&](int mu, int) { return commutator(pi_lo[mu], g.theta); });
  family("LTheta", [&](int mu, int) { return commutator(l_lo[mu], g.theta); });
  family("LL", [&](int mu, int nu) { return AlgebraElement(commutator(l_lo[mu], l_lo[nu]) - eps_rhs(mu, nu, g.l)); });
  family("LPi", [&](int mu, int nu) { return AlgebraElement(commutator(l_lo[mu], pi_lo[nu]) - eps_rhs(mu, nu, g.pi)); });
  family("LN", [&](int mu, int nu) { return AlgebraElement(commutator(l_lo[mu], n_lo[nu]) - eps_rhs(mu, nu, g.nb)); });
  family("NPi", [&](int mu, int nu) {
    const double proj = (mu == nu ? eta(mu) : 0.0) + n.lower(mu) * n.lower(nu);
    return AlgebraElement(commutator(n_lo[mu], pi_lo[nu]) - kI * proj * g.theta);
  });
  family("NTheta", [&](int mu, int) { return AlgebraElement(commutator(n_lo[mu], g.theta) - kI * pi_lo[mu]); });
  family("NN", [&](int mu, int nu) { return AlgebraElement(commutator(n_lo[mu], n_lo[nu]) + eps_rhs(mu, nu, g.l)); });
  return report;
}

}  // namespace relchan
