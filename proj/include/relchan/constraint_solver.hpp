#pragma once

// Covariance constraints on the Kraus ansatz
//   E_l = A I + sum_i B(p_i) a_i + sum_jk C(p_j, p_k) a_j^dag a_k
// for a standard momentum l, sampled over translations a and little-group
// elements W (W l = l), solved as a nullspace problem.
//
// Translation rows:   A (e^{-il.a} - 1) = 0
//                     B(p) (e^{-ip.a} - e^{-il.a}) = 0
//                     C(p',p) (e^{i(p'-p).a} - e^{-il.a}) = 0
// Little-group rows:  B(Wp) - B(p) = 0,  C(Wp', Wp) - C(p', p) = 0
// (spinless; in atom normalization W acts as an exact relabeling, and a row
// is only written when both images are atoms of the basis).

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "relchan/fock_sector.hpp"
#include "relchan/minkowski.hpp"
#include "relchan/poincare_rep.hpp"
#include "relchan/random.hpp"

namespace relchan {

enum class Case { I, II, III, IV };

inline const char* to_string(Case c) {
  switch (c) {
    case Case::I: return "I";
    case Case::II: return "II";
    case Case::III: return "III";
    case Case::IV: return "IV";
  }
  return "?";
}

inline std::optional<Case> parse_case(const std::string& s) {
  if (s == "I") return Case::I;
  if (s == "II") return Case::II;
  if (s == "III") return Case::III;
  if (s == "IV") return Case::IV;
  return std::nullopt;
}

class MissingAtoms : public Error {
 public:
  using Error::Error;
};

struct LittleGroupCase {
  Case tag;
  FourVector ell;
  double mass;  // mass of the particle shell, not of l

  /// Table rows: I (M,0,0,0) with M > 0; II (k,0,0,k) with k > 0;
  /// III (0,0,0,w) with w != 0; IV the zero vector.
  static LittleGroupCase make(Case tag, double mass, double scale) {
    switch (tag) {
      case Case::I: return {tag, {scale, 0, 0, 0}, mass};
      case Case::II: return {tag, {scale, 0, 0, scale}, mass};
      case Case::III: return {tag, {0, 0, 0, scale}, mass};
      case Case::IV: return {tag, {0, 0, 0, 0}, mass};
    }
    throw Error("unknown case");
  }

  bool matches_table() const {
    const double l0 = ell[0], l1 = ell[1], l2 = ell[2], l3 = ell[3];
    switch (tag) {
      case Case::I: return l0 != 0.0 && l1 == 0.0 && l2 == 0.0 && l3 == 0.0;
      case Case::II: return l0 != 0.0 && std::abs(l0) == l3 && l3 > 0.0 && l1 == 0.0 && l2 == 0.0;
      case Case::III: return l0 == 0.0 && l1 == 0.0 && l2 == 0.0 && l3 != 0.0;
      case Case::IV: return l0 == 0.0 && l1 == 0.0 && l2 == 0.0 && l3 == 0.0;
    }
    return false;
  }
};

/// Positions of the ansatz coefficients in the unknown vector.
struct AnsatzLayout {
  Eigen::Index m;
  Eigen::Index size() const { return 1 + m + m * m; }
  static constexpr Eigen::Index a() { return 0; }
  Eigen::Index b(Eigen::Index i) const { return 1 + i; }
  Eigen::Index c(Eigen::Index j, Eigen::Index k) const { return 1 + m + j * m + k; }

  std::string label(Eigen::Index idx) const {
    if (idx == 0) return "A";
    if (idx <= m) return "B(" + std::to_string(idx - 1) + ")";
    const Eigen::Index r = idx - 1 - m;
    return "C(" + std::to_string(r / m) + "," + std::to_string(r % m) + ")";
  }
};

struct ConstraintRow {
  Eigen::VectorXcd coeffs;
  std::string origin;  // equation and sample that produced the row
};

struct ConstraintSystem {
  AnsatzLayout layout;
  std::vector<ConstraintRow> rows;

  Eigen::MatrixXcd matrix() const {
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows.size()), layout.size());
    for (std::size_t r = 0; r < rows.size(); ++r) m.row(static_cast<Eigen::Index>(r)) = rows[r].coeffs.transpose();
    return m;
  }
};

inline bool fixes(const LorentzTransform& w, const FourVector& ell, double tol = 1e-10) {
  const FourVector img = w.apply(ell);
  double dev = 0.0, scale = 1.0;
  for (int mu = 0; mu < 4; ++mu) {
    dev = std::max(dev, std::abs(img[mu] - ell[mu]));
    scale = std::max(scale, std::abs(ell[mu]));
  }
  return dev <= tol * scale;
}

inline ConstraintSystem build_constraints(const LittleGroupCase& lc, const AtomBasis& basis,
                                          const std::vector<FourVector>& translations,
                                          const std::vector<LorentzTransform>& little_group) {
  if (lc.tag == Case::I && basis.rest_atom() < 0)
    throw MissingAtoms("case I needs the rest atom (0,0,0) in the basis");
  const auto m = static_cast<Eigen::Index>(basis.size());
  ConstraintSystem sys{{m}, {}};
  const Eigen::Index n = sys.layout.size();
  auto unit_row = [n](Eigen::Index idx, cplx v) {
    Eigen::VectorXcd r = Eigen::VectorXcd::Zero(n);
    r(idx) = v;
    return r;
  };

  for (std::size_t s = 0; s < translations.size(); ++s) {
    const FourVector& a = translations[s];
    const std::string tag = " a#" + std::to_string(s);
    const cplx el = std::exp(-kI * contract(lc.ell, a));
    sys.rows.push_back({unit_row(0, el - 1.0), "TAT" + tag});
    for (Eigen::Index i = 0; i < m; ++i) {
      const cplx ep = std::exp(-kI * contract(basis[static_cast<std::size_t>(i)].four(), a));
      sys.rows.push_back({unit_row(sys.layout.b(i), ep - el), "TBT" + tag + " p" + std::to_string(i)});
    }
    for (Eigen::Index j = 0; j < m; ++j)
      for (Eigen::Index k = 0; k < m; ++k) {
        const FourVector diff = basis[static_cast<std::size_t>(j)].four() - basis[static_cast<std::size_t>(k)].four();
        const cplx ed = std::exp(kI * contract(diff, a));
        sys.rows.push_back({unit_row(sys.layout.c(j, k), ed - el),
                            "TCT" + tag + " p" + std::to_string(j) + ",p" + std::to_string(k)});
      }
  }

  for (std::size_t s = 0; s < little_group.size(); ++s) {
    const LorentzTransform& w = little_group[s];
    if (!fixes(w, lc.ell)) throw Error("little-group sample " + std::to_string(s) + " does not fix the standard momentum");
    const std::string tag = " W#" + std::to_string(s);
    std::vector<long> image(static_cast<std::size_t>(m));
    for (Eigen::Index i = 0; i < m; ++i)
      image[static_cast<std::size_t>(i)] = basis.find(w.apply(basis[static_cast<std::size_t>(i)]));
    for (Eigen::Index i = 0; i < m; ++i) {
      const long wi = image[static_cast<std::size_t>(i)];
      if (wi < 0 || wi == i) continue;
      Eigen::VectorXcd r = Eigen::VectorXcd::Zero(n);
      r(sys.layout.b(wi)) += 1.0;
      r(sys.layout.b(i)) -= 1.0;
      sys.rows.push_back({r, "WBW" + tag + " p" + std::to_string(i)});
    }
    for (Eigen::Index j = 0; j < m; ++j)
      for (Eigen::Index k = 0; k < m; ++k) {
        const long wj = image[static_cast<std::size_t>(j)], wk = image[static_cast<std::size_t>(k)];
        if (wj < 0 || wk < 0 || (wj == j && wk == k)) continue;
        Eigen::VectorXcd r = Eigen::VectorXcd::Zero(n);
        r(sys.layout.c(wj, wk)) += 1.0;
        r(sys.layout.c(j, k)) -= 1.0;
        sys.rows.push_back({r, "WCW" + tag + " p" + std::to_string(j) + ",p" + std::to_string(k)});
      }
  }
  return sys;
}

/// Rows rejecting every C(p', p) that moves the fixed nonzero spatial
/// momentum l while conserving energy (p' = p - l, E_p' = E_p). Such
/// operators are ruled out in the continuum by a delta(0) divergence in
/// E^dag E, which a finite atom set cannot exhibit.
inline std::vector<ConstraintRow> continuum_exclusion_rows(const LittleGroupCase& lc, const AtomBasis& basis) {
  std::vector<ConstraintRow> rows;
  const Eigen::Vector3d lsp(lc.ell[1], lc.ell[2], lc.ell[3]);
  if (lsp.norm() == 0.0) return rows;
  const auto m = static_cast<Eigen::Index>(basis.size());
  const AnsatzLayout layout{m};
  const double tol = kAtomTolerance * basis.mass();
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index k = 0; k < m; ++k) {
      const auto& pj = basis[static_cast<std::size_t>(j)];
      const auto& pk = basis[static_cast<std::size_t>(k)];
      const Eigen::Vector3d transfer = pk.spatial() - pj.spatial();
      if ((transfer - lsp).cwiseAbs().maxCoeff() > tol) continue;
      if (std::abs(pk.energy() - pj.energy()) > tol) continue;
      Eigen::VectorXcd r = Eigen::VectorXcd::Zero(layout.size());
      r(layout.c(j, k)) = 1.0;
      rows.push_back({r, "exclusion p" + std::to_string(j) + ",p" + std::to_string(k)});
    }
  return rows;
}

struct Nullspace {
  Eigen::Index dim = 0;
  Eigen::MatrixXcd vectors;  // orthonormal columns
  Eigen::VectorXd singular_values;
};

inline constexpr double kNullThreshold = 1e-8;

inline Nullspace solve_nullspace(const Eigen::MatrixXcd& a, Eigen::Index unknowns) {
  Nullspace out;
  if (a.rows() == 0) {
    out.dim = unknowns;
    out.vectors = Eigen::MatrixXcd::Identity(unknowns, unknowns);
    return out;
  }
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
  out.singular_values = svd.singularValues();
  const double smax = out.singular_values.size() ? out.singular_values(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < out.singular_values.size(); ++i)
    if (out.singular_values(i) > kNullThreshold * smax) ++rank;
  out.dim = unknowns - rank;
  out.vectors = svd.matrixV().rightCols(out.dim);
  return out;
}

inline Nullspace solve_nullspace(const ConstraintSystem& sys) { return solve_nullspace(sys.matrix(), sys.layout.size()); }

/// Labels of coefficients that are nonzero in some nullspace vector.
inline std::vector<std::string> support_pattern(const Nullspace& ns, const AnsatzLayout& layout, double tol = 1e-8) {
  std::vector<std::string> out;
  if (ns.dim == 0) return out;
  for (Eigen::Index i = 0; i < layout.size(); ++i)
    if (ns.vectors.row(i).cwiseAbs().maxCoeff() > tol) out.push_back(layout.label(i));
  return out;
}

/// The ansatz coefficients as a sector operator.
inline Operator ansatz_operator(const Eigen::VectorXcd& x, const AtomBasis& basis) {
  const auto m = static_cast<Eigen::Index>(basis.size());
  const AnsatzLayout layout{m};
  if (x.size() != layout.size()) throw Error("coefficient vector does not match the basis");
  Operator e = x(0) * Operator::Identity(basis.dim(), basis.dim());
  for (Eigen::Index i = 0; i < m; ++i) e(0, i + 1) += x(layout.b(i));
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index k = 0; k < m; ++k) e(j + 1, k + 1) += x(layout.c(j, k));
  return e;
}

/// V(S_q) E_l V(S_q)^dag: the Case I operator carried to momentum q. The
/// result lives on the boosted basis, where the rest atom has become q.
inline BasisState lift_case_one(const Eigen::VectorXcd& x, const AtomBasis& basis, const MassShellMomentum& q) {
  return {transform_basis(standard_boost(q), basis), ansatz_operator(x, basis)};
}

/// Mean squared deviation of the diagonal C(p,p) and largest off-diagonal
/// |C(p',p)| of one coefficient vector.
struct DiagonalCStats {
  double variance = 0.0;
  double max_off_diagonal = 0.0;
};

inline DiagonalCStats diagonal_c_stats(const Eigen::VectorXcd& x, const AnsatzLayout& layout) {
  DiagonalCStats s;
  if (layout.m == 0) return s;
  cplx mean{0.0, 0.0};
  for (Eigen::Index i = 0; i < layout.m; ++i) mean += x(layout.c(i, i));
  mean /= static_cast<double>(layout.m);
  for (Eigen::Index i = 0; i < layout.m; ++i) s.variance += std::norm(x(layout.c(i, i)) - mean);
  s.variance /= static_cast<double>(layout.m);
  for (Eigen::Index j = 0; j < layout.m; ++j)
    for (Eigen::Index k = 0; k < layout.m; ++k)
      if (j != k) s.max_off_diagonal = std::max(s.max_off_diagonal, std::abs(x(layout.c(j, k))));
  return s;
}

/// The surviving Case IV operator A I + C N normalized by completeness on the
/// vacuum, where only |A|^2 contributes. gamma = C / A.
struct CaseFourNormalization {
  cplx a;
  cplx c;
  cplx gamma;
  double identity_coefficient;  // |A|^2 after normalization
  double number_coefficient;    // A C* + A* C + |C|^2
};

inline CaseFourNormalization normalize_case_four(const Eigen::VectorXcd& x, const AtomBasis& basis) {
  const AnsatzLayout layout{static_cast<Eigen::Index>(basis.size())};
  const Operator e = ansatz_operator(x, basis);
  const Operator ede = e.adjoint() * e;
  const double vac = ede(0, 0).real();
  if (!(vac > 0.0)) throw Error("Case IV vector has no identity component");
  const double scale = 1.0 / std::sqrt(vac);
  const cplx a = x(0) * scale;
  const cplx c = layout.m > 0 ? x(layout.c(0, 0)) * scale : cplx{};
  return {a, c, c / a, std::norm(a), (a * std::conj(c) + std::conj(a) * c).real() + std::norm(c)};
}

// ---------------------------------------------------------------------------
// Sampling and case fixtures

/// Twelve fixed translations with mutually incommensurate components.
inline std::vector<FourVector> fixed_translations() {
  const double r2 = std::numbers::sqrt2, r3 = std::numbers::sqrt3, pi = std::numbers::pi, e = std::numbers::e;
  return {{1, 0, 0, 0},        {0, 1, 0, 0},         {0, 0, 1, 0},           {0, 0, 0, 1},
          {r2, 0, 0, 0},       {0, r3, 0, 0},        {0, 0, std::sqrt(5.0), 0}, {0, 0, 0, std::sqrt(7.0)},
          {0.7, 1.3, -0.4, 0.9}, {-1.1, 0.5, 2.3, -0.6}, {pi / 3, -e / 2, r2 / 2, 1.0 / 3}, {2.9, -1.7, 0.3, 2.1}};
}

inline std::vector<FourVector> translation_samples(Rng& rng, int random_count) {
  auto out = fixed_translations();
  for (int i = 0; i < random_count; ++i) out.push_back(random_four_vector(rng, 3.0));
  return out;
}

/// Null rotation fixing (1,0,0,1), parameterized by (alpha, beta).
inline LorentzTransform null_rotation(double alpha, double beta) {
  const double h = 0.5 * (alpha * alpha + beta * beta);
  Eigen::Matrix4d s;
  s << 1 + h, alpha, beta, -h,  //
      alpha, 1, 0, -alpha,      //
      beta, 0, 1, -beta,        //
      h, alpha, beta, 1 - h;
  return LorentzTransform::from_matrix(s);
}

/// Random elements of the little group of each case.
inline LorentzTransform random_little_group_element(Case tag, Rng& rng) {
  const Eigen::Vector3d z(0, 0, 1);
  switch (tag) {
    case Case::I: return random_rotation(rng);
    case Case::II:
      return LorentzTransform::rotation(z, rng.uniform(0.0, 2.0 * std::numbers::pi)) *
             null_rotation(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    case Case::III: {
      const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
      return LorentzTransform::rotation(z, rng.uniform(0.0, 2.0 * std::numbers::pi)) *
             LorentzTransform::boost({std::cos(phi), std::sin(phi), 0.0}, rng.uniform(-1.0, 1.0));
    }
    case Case::IV: return random_lorentz(rng);
  }
  throw Error("unknown case");
}

struct CaseFixture {
  LittleGroupCase lc;
  AtomBasis basis;
  std::vector<LorentzTransform> closed_samples;  // map the basis into itself
  int expected_dim;
};

inline constexpr int kChainLength = 5;

/// Boost chain {p0, L p0, ..., L^{n-1} p0}.
inline AtomBasis boost_chain(double mass, const Eigen::Vector3d& seed_momentum, const LorentzTransform& step, int length) {
  std::vector<MassShellMomentum> atoms{MassShellMomentum(seed_momentum, mass)};
  for (int k = 1; k < length; ++k) atoms.push_back(step.apply(atoms.back()));
  return {mass, std::move(atoms)};
}

inline CaseFixture case_fixture(Case tag, double mass = 1.0) {
  const Eigen::Vector3d z(0, 0, 1);
  switch (tag) {
    case Case::I: {
      // rest atom plus a ring of three closed under 120 degree turns
      std::vector<Eigen::Vector3d> ps{Eigen::Vector3d::Zero()};
      for (int k = 0; k < 3; ++k) {
        const double phi = 2.0 * std::numbers::pi * k / 3.0;
        ps.emplace_back(0.6 * std::cos(phi), 0.6 * std::sin(phi), 0.0);
      }
      return {LittleGroupCase::make(tag, mass, mass),
              AtomBasis::from_spatial(mass, ps),
              {LorentzTransform::rotation(z, 2.0 * std::numbers::pi / 3.0),
               LorentzTransform::rotation(z, 4.0 * std::numbers::pi / 3.0)},
              1};
    }
    case Case::II: {
      const std::vector<Eigen::Vector3d> ps{
          Eigen::Vector3d::Zero(), {0.0, 0.0, 1.0}, {0.5, 0.0, 0.0}, {-0.5, 0.0, 0.0}, {0.2, -0.3, 0.4}};
      return {LittleGroupCase::make(tag, mass, 1.0),
              AtomBasis::from_spatial(mass, ps),
              {LorentzTransform::rotation(z, std::numbers::pi)},
              0};
    }
    case Case::III: {
      // two resonant pairs (p_perp, +-w/2) related by a half turn about z
      const double w = 1.2;
      const std::vector<Eigen::Vector3d> ps{{0.3, 0.1, w / 2}, {0.3, 0.1, -w / 2}, {-0.3, -0.1, w / 2},
                                            {-0.3, -0.1, -w / 2}, {0.2, -0.5, 0.1}};
      return {LittleGroupCase::make(tag, mass, w),
              AtomBasis::from_spatial(mass, ps),
              {LorentzTransform::rotation(z, std::numbers::pi)},
              0};
    }
    case Case::IV: {
      const LorentzTransform step = LorentzTransform::boost({0.0, 0.0, 1.0}, 0.35);
      std::vector<LorentzTransform> closed;
      LorentzTransform power = LorentzTransform::identity();
      for (int k = 1; k < kChainLength; ++k) {
        power = step * power;
        closed.push_back(power);
        closed.push_back(power.inverse());
      }
      return {LittleGroupCase::make(tag, mass, 0.0),
              boost_chain(mass, {0.3, -0.2, 0.1}, step, kChainLength),
              closed,
              2};
    }
  }
  throw Error("unknown case");
}

struct Budget {
  int random_translations = 8;
  int random_little_group = 6;
  Budget scaled(int factor) const { return {random_translations * factor, random_little_group * factor}; }
};

struct CaseReport {
  Case tag;
  FourVector ell;
  std::uint64_t seed = 0;
  std::size_t atom_count = 0;
  std::size_t translation_samples = 0;
  std::size_t little_group_samples = 0;
  std::size_t rows = 0;
  int expected_dim = 0;
  Eigen::Index raw_dim = 0;    // before continuum exclusion
  Eigen::Index final_dim = 0;  // after continuum exclusion
  bool continuum_excluded = false;
  std::vector<std::string> raw_support;
  std::vector<std::string> support;
  double max_c_variance = 0.0;       // over final nullspace vectors
  double max_c_off_diagonal = 0.0;   // over final nullspace vectors
  Nullspace nullspace;
  AtomBasis basis;

  bool passed() const {
    if (final_dim != expected_dim) return false;
    if (tag == Case::I) return support.size() == 1;
    if (tag == Case::III) return raw_dim >= 1 && continuum_excluded;
    if (tag == Case::IV) return max_c_variance < 1e-16 && max_c_off_diagonal < 1e-8;
    return true;
  }
};

inline CaseReport classify(const CaseFixture& fx, std::uint64_t seed, const Budget& budget = {}) {
  Rng rng(seed);
  const auto translations = translation_samples(rng, budget.random_translations);
  std::vector<LorentzTransform> lg = fx.closed_samples;
  for (int i = 0; i < budget.random_little_group; ++i) lg.push_back(random_little_group_element(fx.lc.tag, rng));

  ConstraintSystem sys = build_constraints(fx.lc, fx.basis, translations, lg);
  const Nullspace raw = solve_nullspace(sys);

  CaseReport rep{fx.lc.tag, fx.lc.ell, seed, fx.basis.size(), translations.size(), lg.size(), sys.rows.size(),
                 fx.expected_dim, raw.dim, raw.dim, false, {}, {}, 0.0, 0.0, raw, fx.basis};
  rep.raw_support = support_pattern(raw, sys.layout);
  if (fx.lc.tag == Case::III) {
    const auto extra = continuum_exclusion_rows(fx.lc, fx.basis);
    sys.rows.insert(sys.rows.end(), extra.begin(), extra.end());
    rep.nullspace = solve_nullspace(sys);
    rep.final_dim = rep.nullspace.dim;
    rep.continuum_excluded = rep.final_dim < rep.raw_dim;
    rep.rows = sys.rows.size();
  }
  rep.support = support_pattern(rep.nullspace, sys.layout);
  for (Eigen::Index k = 0; k < rep.nullspace.dim; ++k) {
    const auto st = diagonal_c_stats(rep.nullspace.vectors.col(k), sys.layout);
    rep.max_c_variance = std::max(rep.max_c_variance, st.variance);
    rep.max_c_off_diagonal = std::max(rep.max_c_off_diagonal, st.max_off_diagonal);
  }
  return rep;
}

inline CaseReport classify(Case tag, std::uint64_t seed, double mass = 1.0, const Budget& budget = {}) {
  return classify(case_fixture(tag, mass), seed, budget);
}

}  // namespace relchan
