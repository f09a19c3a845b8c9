#pragma once

// Four-vectors, the mass shell, canonical boosts and Wigner rotations.
//
// Metric signature is (-,+,+,+) throughout the library: a massive particle
// at rest has p = (m,0,0,0) and p.p = -m^2.

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace relchan {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FourVector {
  std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};

  constexpr FourVector() = default;
  constexpr FourVector(double t, double x, double y, double z) : c{t, x, y, z} {}

  static FourVector from_eigen(const Eigen::Vector4d& v) { return {v(0), v(1), v(2), v(3)}; }
  Eigen::Vector4d eigen() const { return {c[0], c[1], c[2], c[3]}; }

  constexpr double operator[](int mu) const { return c[mu]; }
  constexpr double& operator[](int mu) { return c[mu]; }

  Eigen::Vector3d spatial() const { return {c[1], c[2], c[3]}; }

  // Index lowered with eta = diag(-1,1,1,1).
  constexpr double lower(int mu) const { return mu == 0 ? -c[0] : c[mu]; }

  friend constexpr FourVector operator+(const FourVector& a, const FourVector& b) {
    return {a.c[0] + b.c[0], a.c[1] + b.c[1], a.c[2] + b.c[2], a.c[3] + b.c[3]};
  }
  friend constexpr FourVector operator-(const FourVector& a, const FourVector& b) {
    return {a.c[0] - b.c[0], a.c[1] - b.c[1], a.c[2] - b.c[2], a.c[3] - b.c[3]};
  }
  friend constexpr FourVector operator*(double s, const FourVector& a) {
    return {s * a.c[0], s * a.c[1], s * a.c[2], s * a.c[3]};
  }
  friend constexpr FourVector operator-(const FourVector& a) { return -1.0 * a; }
};

/// eta_{mu nu} u^mu v^nu = -u0 v0 + u.v
constexpr double contract(const FourVector& u, const FourVector& v) {
  return -u.c[0] * v.c[0] + u.c[1] * v.c[1] + u.c[2] * v.c[2] + u.c[3] * v.c[3];
}

inline const Eigen::Matrix4d& metric() {
  static const Eigen::Matrix4d eta = Eigen::Vector4d(-1.0, 1.0, 1.0, 1.0).asDiagonal();
  return eta;
}

/// A point on the positive-energy mass shell. Only the spatial momentum and
/// the mass are stored; the energy is always recomputed from them.
class MassShellMomentum {
 public:
  MassShellMomentum(const Eigen::Vector3d& spatial, double mass) : p_(spatial), m_(mass) {
    if (!(mass > 0.0) || !std::isfinite(mass)) throw Error("mass must be positive and finite");
    if (!p_.allFinite()) throw Error("momentum components must be finite");
  }
  MassShellMomentum(double px, double py, double pz, double mass)
      : MassShellMomentum(Eigen::Vector3d(px, py, pz), mass) {}

  static MassShellMomentum at_rest(double mass) { return {Eigen::Vector3d::Zero(), mass}; }

  const Eigen::Vector3d& spatial() const { return p_; }
  double mass() const { return m_; }
  double energy() const { return std::sqrt(p_.squaredNorm() + m_ * m_); }
  FourVector four() const { return {energy(), p_(0), p_(1), p_(2)}; }

 private:
  Eigen::Vector3d p_;
  double m_;
};

/// Two momenta are the same atom when every spatial component agrees to
/// within 1e-9 m.
inline constexpr double kAtomTolerance = 1e-9;

inline bool same_atom(const MassShellMomentum& p, const MassShellMomentum& q) {
  if (std::abs(p.mass() - q.mass()) > kAtomTolerance * p.mass()) return false;
  return ((p.spatial() - q.spatial()).cwiseAbs().maxCoeff()) <= kAtomTolerance * p.mass();
}

enum class LorentzViolation { none, metric, determinant, orthochrony };

inline const char* to_string(LorentzViolation v) {
  switch (v) {
    case LorentzViolation::none: return "none";
    case LorentzViolation::metric: return "metric-preservation";
    case LorentzViolation::determinant: return "determinant";
    case LorentzViolation::orthochrony: return "orthochrony";
  }
  return "unknown";
}

class InvalidLorentz : public Error {
 public:
  InvalidLorentz(LorentzViolation v, double deviation)
      : Error(std::string("not a proper orthochronous Lorentz transform: ") + to_string(v) +
              " violated (deviation " + std::to_string(deviation) + ")"),
        violation_(v),
        deviation_(deviation) {}
  LorentzViolation violation() const { return violation_; }
  double deviation() const { return deviation_; }

 private:
  LorentzViolation violation_;
  double deviation_;
};

struct LorentzCheck {
  LorentzViolation violation = LorentzViolation::none;
  double deviation = 0.0;
  bool ok() const { return violation == LorentzViolation::none; }
};

/// Checks, in order: L^T eta L = eta (1e-10 entrywise), L^0_0 >= 1,
/// det L = 1 (1e-10). The first failed condition is reported.
inline LorentzCheck check_lorentz(const Eigen::Matrix4d& m) {
  constexpr double tol = 1e-10;
  if (!m.allFinite()) return {LorentzViolation::metric, INFINITY};
  const double metric_dev = (m.transpose() * metric() * m - metric()).cwiseAbs().maxCoeff();
  if (metric_dev > tol) return {LorentzViolation::metric, metric_dev};
  if (m(0, 0) < 1.0 - tol) return {LorentzViolation::orthochrony, 1.0 - m(0, 0)};
  const double det_dev = std::abs(m.determinant() - 1.0);
  if (det_dev > tol) return {LorentzViolation::determinant, det_dev};
  return {};
}

/// Proper orthochronous Lorentz transformation Lambda^mu_nu.
class LorentzTransform {
 public:
  LorentzTransform() : m_(Eigen::Matrix4d::Identity()) {}

  /// Validating constructor; throws InvalidLorentz naming the violated condition.
  static LorentzTransform from_matrix(const Eigen::Matrix4d& m) {
    const auto chk = check_lorentz(m);
    if (!chk.ok()) throw InvalidLorentz(chk.violation, chk.deviation);
    return LorentzTransform(m);
  }

  static LorentzTransform identity() { return {}; }

  /// Rotation by `angle` about `axis` (active, right-handed).
  static LorentzTransform rotation(const Eigen::Vector3d& axis, double angle) {
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    m.block<3, 3>(1, 1) = Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
    return LorentzTransform(m);
  }

  static LorentzTransform rotation(const Eigen::Matrix3d& r) {
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    m.block<3, 3>(1, 1) = r;
    return from_matrix(m);
  }

  /// Pure boost with the given rapidity along `direction`; carries the rest
  /// vector (1,0,0,0) to (cosh r, sinh r * direction).
  static LorentzTransform boost(const Eigen::Vector3d& direction, double rapidity) {
    const Eigen::Vector3d n = direction.normalized();
    const double ch = std::cosh(rapidity), sh = std::sinh(rapidity);
    Eigen::Matrix4d m;
    m(0, 0) = ch;
    m.block<1, 3>(0, 1) = sh * n.transpose();
    m.block<3, 1>(1, 0) = sh * n;
    m.block<3, 3>(1, 1) = Eigen::Matrix3d::Identity() + (ch - 1.0) * n * n.transpose();
    return LorentzTransform(m);
  }

  const Eigen::Matrix4d& matrix() const { return m_; }
  double operator()(int mu, int nu) const { return m_(mu, nu); }

  /// eta L^T eta
  LorentzTransform inverse() const { return LorentzTransform(metric() * m_.transpose() * metric()); }

  FourVector apply(const FourVector& v) const { return FourVector::from_eigen(m_ * v.eigen()); }

  /// Image of an on-shell momentum; the energy of the result is recomputed
  /// from its spatial part so the result lies exactly on the shell.
  MassShellMomentum apply(const MassShellMomentum& p) const {
    const Eigen::Vector4d v = m_ * p.four().eigen();
    return {v.tail<3>(), p.mass()};
  }

  friend LorentzTransform operator*(const LorentzTransform& a, const LorentzTransform& b) {
    return LorentzTransform(a.m_ * b.m_);
  }

  bool is_rotation(double tol = 1e-10) const {
    return std::abs(m_(0, 0) - 1.0) <= tol && m_.block<1, 3>(0, 1).cwiseAbs().maxCoeff() <= tol &&
           m_.block<3, 1>(1, 0).cwiseAbs().maxCoeff() <= tol;
  }

 private:
  explicit LorentzTransform(const Eigen::Matrix4d& m) : m_(m) {}
  Eigen::Matrix4d m_;
};

inline LorentzTransform validate_lorentz(const Eigen::Matrix4d& m) { return LorentzTransform::from_matrix(m); }

/// The canonical pure boost S_q with S_q (m,0,0,0) = (E_q, q). Its spatial
/// block is symmetric, so S_q carries no rotation.
inline LorentzTransform standard_boost(const MassShellMomentum& q) {
  const double m = q.mass();
  const double e = q.energy();
  const Eigen::Vector3d& p = q.spatial();
  Eigen::Matrix4d s;
  s(0, 0) = e / m;
  s.block<1, 3>(0, 1) = p.transpose() / m;
  s.block<3, 1>(1, 0) = p / m;
  s.block<3, 3>(1, 1) = Eigen::Matrix3d::Identity() + p * p.transpose() / (m * (e + m));
  return LorentzTransform::from_matrix(s);
}

/// Q(L, q) = S_{Lq}^{-1} L S_q, an element of the little group of (m,0,0,0).
inline LorentzTransform wigner_rotation(const LorentzTransform& lambda, const MassShellMomentum& q) {
  return standard_boost(lambda.apply(q)).inverse() * lambda * standard_boost(q);
}

inline LorentzTransform wigner_rotation(const Eigen::Matrix4d& lambda, const MassShellMomentum& q) {
  return wigner_rotation(LorentzTransform::from_matrix(lambda), q);
}

}  // namespace relchan
