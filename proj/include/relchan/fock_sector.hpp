#pragma once

// Finite "momentum-atom" model of the vacuum + one-particle sector.
//
// A basis of M atoms spans a sector of dimension d = 1 + M. Index 0 is the
// vacuum |0>, index 1 + i is the one-particle state |p_i>. Atoms carry
// Kronecker normalization [a_i, a_j^dagger] = delta_ij, so every momentum
// integral of the continuum theory becomes a sum over atoms.

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "relchan/minkowski.hpp"
#include "relchan/poincare_algebra.hpp"

namespace relchan {

using Operator = Eigen::MatrixXcd;

class InvalidBasis : public Error {
 public:
  using Error::Error;
};

class AtomBasis {
 public:
  AtomBasis(double mass, std::vector<MassShellMomentum> atoms) : mass_(mass), atoms_(std::move(atoms)) {
    if (!(mass_ > 0.0)) throw InvalidBasis("basis mass must be positive");
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      if (std::abs(atoms_[i].mass() - mass_) > kAtomTolerance * mass_)
        throw InvalidBasis("atom " + std::to_string(i) + " is on a different mass shell");
      for (std::size_t j = 0; j < i; ++j)
        if (same_atom(atoms_[i], atoms_[j]))
          throw InvalidBasis("atoms " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
    }
  }

  static AtomBasis from_spatial(double mass, const std::vector<Eigen::Vector3d>& momenta) {
    std::vector<MassShellMomentum> atoms;
    atoms.reserve(momenta.size());
    for (const auto& p : momenta) atoms.emplace_back(p, mass);
    return {mass, std::move(atoms)};
  }

  double mass() const { return mass_; }
  std::size_t size() const { return atoms_.size(); }
  Eigen::Index dim() const { return static_cast<Eigen::Index>(atoms_.size()) + 1; }
  const MassShellMomentum& operator[](std::size_t i) const { return atoms_[i]; }
  const std::vector<MassShellMomentum>& atoms() const { return atoms_; }

  Eigen::VectorXd energies() const {
    Eigen::VectorXd e(static_cast<Eigen::Index>(atoms_.size()));
    for (std::size_t i = 0; i < atoms_.size(); ++i) e(static_cast<Eigen::Index>(i)) = atoms_[i].energy();
    return e;
  }

  /// Index of the atom matching p within the momentum tolerance, or -1.
  long find(const MassShellMomentum& p) const {
    for (std::size_t i = 0; i < atoms_.size(); ++i)
      if (same_atom(atoms_[i], p)) return static_cast<long>(i);
    return -1;
  }

  long rest_atom() const { return find(MassShellMomentum::at_rest(mass_)); }

 private:
  double mass_;
  std::vector<MassShellMomentum> atoms_;
};

/// Sector index of atom i.
constexpr Eigen::Index particle(std::size_t i) { return static_cast<Eigen::Index>(i) + 1; }

/// Vacuum amplitude plus one amplitude per atom.
struct SectorState {
  cplx vacuum{0.0, 0.0};
  Eigen::VectorXcd particles;

  static SectorState vacuum_state(const AtomBasis& basis) {
    return {cplx{1.0, 0.0}, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()))};
  }
  static SectorState one_particle(const AtomBasis& basis, std::size_t i) {
    SectorState s{cplx{}, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()))};
    s.particles(static_cast<Eigen::Index>(i)) = 1.0;
    return s;
  }

  double norm_squared() const { return std::norm(vacuum) + particles.squaredNorm(); }

  Eigen::VectorXcd vector() const {
    Eigen::VectorXcd v(particles.size() + 1);
    v(0) = vacuum;
    v.tail(particles.size()) = particles;
    return v;
  }

  Operator projector() const {
    const Eigen::VectorXcd v = vector();
    return v * v.adjoint();
  }
};

inline Operator vacuum_projector(const AtomBasis& basis) {
  Operator rho = Operator::Zero(basis.dim(), basis.dim());
  rho(0, 0) = 1.0;
  return rho;
}

/// a_i = |0><p_i|
inline Operator annihilator(const AtomBasis& basis, std::size_t i) {
  if (i >= basis.size()) throw InvalidBasis("atom index " + std::to_string(i) + " out of range");
  Operator a = Operator::Zero(basis.dim(), basis.dim());
  a(0, particle(i)) = 1.0;
  return a;
}

/// n_i = a_i^dagger a_i = |p_i><p_i|
inline Operator mode_number(const AtomBasis& basis, std::size_t i) {
  if (i >= basis.size()) throw InvalidBasis("atom index " + std::to_string(i) + " out of range");
  Operator n = Operator::Zero(basis.dim(), basis.dim());
  n(particle(i), particle(i)) = 1.0;
  return n;
}

/// N = sum_i n_i: zero on the vacuum, identity on the one-particle block.
inline Operator number_operator(Eigen::Index dim) {
  Operator n = Operator::Identity(dim, dim);
  n(0, 0) = 0.0;
  return n;
}
inline Operator number_operator(const AtomBasis& basis) { return number_operator(basis.dim()); }

/// a_i rho a_i^dagger. Only the (i,i) population survives, moved to the
/// vacuum slot; the result has trace <n_i>.
inline Operator annihilate(const AtomBasis& basis, std::size_t i, const Operator& rho) {
  if (i >= basis.size()) throw InvalidBasis("atom index " + std::to_string(i) + " out of range");
  Operator out = Operator::Zero(rho.rows(), rho.cols());
  out(0, 0) = rho(particle(i), particle(i));
  return out;
}

enum class Side { left, right, both };

/// N rho, rho N, or N rho N.
inline Operator apply_number(const Operator& rho, Side side) {
  Operator out = rho;
  if (side == Side::left || side == Side::both) out.row(0).setZero();
  if (side == Side::right || side == Side::both) out.col(0).setZero();
  return out;
}

struct DensityDiagnostics {
  double hermiticity_error = 0.0;
  double trace_error = 0.0;
  double min_eigenvalue = 0.0;
  bool hermitian = true;
  bool unit_trace = true;
  bool positive = true;

  bool ok() const { return hermitian && unit_trace && positive; }
  std::string describe() const {
    std::string s;
    if (!hermitian) s += "hermiticity violated (" + std::to_string(hermiticity_error) + "); ";
    if (!unit_trace) s += "trace violated (|tr - 1| = " + std::to_string(trace_error) + "); ";
    if (!positive) s += "positivity violated (min eigenvalue " + std::to_string(min_eigenvalue) + "); ";
    return s.empty() ? "ok" : s;
  }
};

/// Hermitian to 1e-12, trace 1 to 1e-12, smallest eigenvalue >= -1e-10.
/// Each condition is reported separately.
inline DensityDiagnostics validate_density(const Operator& rho, double herm_tol = 1e-12, double trace_tol = 1e-12,
                                           double psd_floor = -1e-10) {
  DensityDiagnostics d;
  if (rho.rows() != rho.cols() || rho.rows() == 0) {
    d.hermitian = d.unit_trace = d.positive = false;
    d.hermiticity_error = d.trace_error = INFINITY;
    return d;
  }
  d.hermiticity_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  d.hermitian = d.hermiticity_error <= herm_tol;
  const cplx tr = rho.trace();
  d.trace_error = std::abs(tr - cplx{1.0, 0.0});
  d.unit_trace = d.trace_error <= trace_tol;
  const Operator h = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Operator> es(h, Eigen::EigenvaluesOnly);
  d.min_eigenvalue = es.eigenvalues().minCoeff();
  d.positive = d.min_eigenvalue >= psd_floor;
  return d;
}

inline double min_eigenvalue(const Operator& hermitian) {
  Eigen::SelfAdjointEigenSolver<Operator> es(0.5 * (hermitian + hermitian.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

/// Hermitian, unit-trace, positive operator on the sector. Construction
/// validates; failures throw with the diagnostics text.
class DensityOperator {
 public:
  explicit DensityOperator(Operator rho) : rho_(std::move(rho)) {
    const auto d = validate_density(rho_);
    if (!d.ok()) throw Error("invalid density operator: " + d.describe());
  }
  const Operator& matrix() const { return rho_; }
  Eigen::Index dim() const { return rho_.rows(); }

 private:
  Operator rho_;
};

}  // namespace relchan
