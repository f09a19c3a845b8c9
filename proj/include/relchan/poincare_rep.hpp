#pragma once

// Unitary Poincare representation on the atom sector.
//
// T(a)|p> = exp(-i p.a)|p>, V(L)|p> = |Lp> (a pure relabeling in Kronecker
// normalization), H|0> = 0 and H|p> = E_p|p>. Every action is diagonal up to
// the relabeling, so it is stored as a per-atom phase together with the
// target basis; index i of the target basis is the image of atom i.

#include <cmath>
#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "relchan/fock_sector.hpp"
#include "relchan/minkowski.hpp"

namespace relchan {

struct PoincareElement {
  LorentzTransform lambda;
  FourVector a;

  static PoincareElement identity() { return {}; }
  static PoincareElement translation(const FourVector& a) { return {LorentzTransform::identity(), a}; }
  static PoincareElement lorentz(const LorentzTransform& l) { return {l, FourVector{}}; }

  /// (L', a') . (L, a) = (L'L, a' + L'a)
  friend PoincareElement operator*(const PoincareElement& g2, const PoincareElement& g1) {
    return {g2.lambda * g1.lambda, g2.a + g2.lambda.apply(g1.a)};
  }
};

/// A sector operator written in a particular atom basis.
struct BasisState {
  AtomBasis basis;
  Operator rho;
};

class BasisMismatch : public Error {
 public:
  using Error::Error;
};

struct RepAction {
  AtomBasis source;
  AtomBasis target;
  Eigen::VectorXcd phases;  // one per atom; the vacuum phase is 1

  /// Diagonal of the unitary in (source -> target) index alignment.
  Eigen::VectorXcd diagonal() const {
    Eigen::VectorXcd d(phases.size() + 1);
    d(0) = 1.0;
    d.tail(phases.size()) = phases;
    return d;
  }

  Operator apply(const Operator& rho) const;
  BasisState apply(const BasisState& s) const { return {target, apply(s.rho)}; }
};

inline AtomBasis transform_basis(const LorentzTransform& lambda, const AtomBasis& basis) {
  std::vector<MassShellMomentum> atoms;
  atoms.reserve(basis.size());
  for (const auto& p : basis.atoms()) atoms.push_back(lambda.apply(p));
  return {basis.mass(), std::move(atoms)};
}

/// Position in `into` of every atom of `from`, or nullopt if some atom has
/// no match.
inline std::optional<std::vector<std::size_t>> match_atoms(const AtomBasis& from, const AtomBasis& into) {
  if (from.size() != into.size()) return std::nullopt;
  std::vector<std::size_t> map(from.size());
  for (std::size_t i = 0; i < from.size(); ++i) {
    const long j = into.find(from[i]);
    if (j < 0) return std::nullopt;
    map[i] = static_cast<std::size_t>(j);
  }
  return map;
}

/// Re-expresses an operator written in `from` in the ordering of `into`.
inline Operator align(const BasisState& s, const AtomBasis& into) {
  const auto map = match_atoms(s.basis, into);
  if (!map) throw BasisMismatch("bases are not related by a relabeling of atoms");
  Eigen::VectorXi perm(s.rho.rows());
  perm(0) = 0;
  for (std::size_t i = 0; i < map->size(); ++i) perm(particle(i)) = static_cast<int>(particle((*map)[i]));
  Operator out = Operator::Zero(s.rho.rows(), s.rho.cols());
  for (Eigen::Index r = 0; r < s.rho.rows(); ++r)
    for (Eigen::Index c = 0; c < s.rho.cols(); ++c) out(perm(r), perm(c)) = s.rho(r, c);
  return out;
}

inline Eigen::VectorXcd translation_phases(const FourVector& a, const AtomBasis& basis) {
  Eigen::VectorXcd ph(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i)
    ph(static_cast<Eigen::Index>(i)) = std::exp(-kI * contract(basis[i].four(), a));
  return ph;
}

/// exp(-i E_p dt) per atom.
inline Eigen::VectorXcd evolution_phases(double dt, const AtomBasis& basis) {
  Eigen::VectorXcd ph(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i)
    ph(static_cast<Eigen::Index>(i)) = std::exp(-kI * basis[i].energy() * dt);
  return ph;
}

/// D rho D^dagger with D = diag(1, atom_phases).
inline Operator conjugate_diagonal(const Eigen::VectorXcd& atom_phases, const Operator& rho) {
  Eigen::VectorXcd d(atom_phases.size() + 1);
  d(0) = 1.0;
  d.tail(atom_phases.size()) = atom_phases;
  return d.asDiagonal() * rho * d.conjugate().asDiagonal();
}

inline Operator RepAction::apply(const Operator& rho) const { return conjugate_diagonal(phases, rho); }

inline Operator act_translation(const FourVector& a, const AtomBasis& basis, const Operator& rho) {
  return conjugate_diagonal(translation_phases(a, basis), rho);
}

/// V(L) rho V(L)^dagger. The matrix entries are unchanged; the atoms move.
/// When the image atoms coincide with the original set the result is
/// returned in the original basis, permuted.
inline BasisState act_lorentz(const LorentzTransform& lambda, const AtomBasis& basis, const Operator& rho) {
  BasisState moved{transform_basis(lambda, basis), rho};
  if (match_atoms(moved.basis, basis)) return {basis, align(moved, basis)};
  return moved;
}

/// e^{-iH(t-t0)} rho e^{iH(t-t0)}
inline Operator time_evolve(double t, double t0, const AtomBasis& basis, const Operator& rho) {
  return conjugate_diagonal(evolution_phases(t - t0, basis), rho);
}

/// U_t(g) = e^{-iHt} T(a) V(L) e^{iHt} as a phase-and-relabel action.
inline RepAction u_t_action(const PoincareElement& g, double t, const AtomBasis& basis) {
  AtomBasis target = transform_basis(g.lambda, basis);
  Eigen::VectorXcd ph(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const double phase = basis[i].energy() * t - contract(target[i].four(), g.a) - target[i].energy() * t;
    ph(static_cast<Eigen::Index>(i)) = std::exp(kI * phase);
  }
  return {basis, std::move(target), std::move(ph)};
}

inline BasisState u_t(const PoincareElement& g, double t, const AtomBasis& basis, const Operator& rho) {
  return u_t_action(g, t, basis).apply(BasisState{basis, rho});
}

/// The same action composed from its factors, in the order of the
/// definition: evolve back by t, V, T, evolve forward by t.
inline BasisState u_t_composed(const PoincareElement& g, double t, const AtomBasis& basis, const Operator& rho) {
  Operator r = time_evolve(0.0, t, basis, rho);
  BasisState s{transform_basis(g.lambda, basis), r};
  s.rho = act_translation(g.a, s.basis, s.rho);
  s.rho = time_evolve(t, 0.0, s.basis, s.rho);
  return s;
}

}  // namespace relchan
