#include <gtest/gtest.h>

#include <cmath>

#include "relchan/minkowski.hpp"
#include "relchan/random.hpp"

using namespace relchan;

namespace {

double max_dev(const Eigen::Matrix4d& a, const Eigen::Matrix4d& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Contract, RestFrameShell) { EXPECT_DOUBLE_EQ(contract({1, 0, 0, 0}, {1, 0, 0, 0}), -1.0); }

TEST(Contract, NullVector) { EXPECT_DOUBLE_EQ(contract({1, 1, 0, 0}, {1, 1, 0, 0}), 0.0); }

TEST(Contract, DirectFormula) { EXPECT_DOUBLE_EQ(contract({2, 1, 0, 0}, {1, 0, 1, 0}), -2.0); }

TEST(Contract, InvariantUnderLorentz) {
  Rng rng(1);
  for (int k = 0; k < 100; ++k) {
    const FourVector u = random_four_vector(rng, 3.0);
    const LorentzTransform l = random_lorentz(rng);
    const double before = contract(u, u);
    const double after = contract(l.apply(u), l.apply(u));
    EXPECT_NEAR(after, before, 1e-12 * std::max(1.0, l.matrix().cwiseAbs().maxCoeff() * u.eigen().squaredNorm()));
  }
}

TEST(MassShell, EnergyDerived) {
  const MassShellMomentum p(0.0, 0.0, 0.3, 1.0);
  EXPECT_DOUBLE_EQ(p.energy(), std::sqrt(1.09));
  EXPECT_NEAR(contract(p.four(), p.four()), -1.0, 1e-15);
  EXPECT_GE(p.energy(), p.mass());
}

TEST(MassShell, RejectsBadMass) {
  EXPECT_THROW(MassShellMomentum(0, 0, 0, 0.0), Error);
  EXPECT_THROW(MassShellMomentum(0, 0, 0, -1.0), Error);
}

TEST(StandardBoost, RestIsIdentity) {
  EXPECT_LT(max_dev(standard_boost(MassShellMomentum::at_rest(1.0)).matrix(), Eigen::Matrix4d::Identity()), 1e-15);
}

TEST(StandardBoost, AlongZ) {
  const auto s = standard_boost(MassShellMomentum(0, 0, 0.3, 1.0));
  EXPECT_NEAR(s(0, 0), std::sqrt(1.09), 1e-15);
  EXPECT_NEAR(s(0, 3), 0.3, 1e-15);
  EXPECT_NEAR(s(0, 1), 0.0, 1e-15);
}

TEST(StandardBoost, CarriesRestToMomentum) {
  Rng rng(2);
  for (int k = 0; k < 100; ++k) {
    const double m = rng.uniform(0.5, 2.0);
    const MassShellMomentum q = random_momentum(rng, m, 2.0);
    const auto s = standard_boost(q);
    const FourVector img = s.apply(FourVector{m, 0, 0, 0});
    for (int mu = 0; mu < 4; ++mu) EXPECT_NEAR(img[mu], q.four()[mu], 1e-12 * q.energy());
    // pure boost: symmetric spatial block
    EXPECT_LT((s.matrix().block<3, 3>(1, 1) - s.matrix().block<3, 3>(1, 1).transpose()).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_TRUE(check_lorentz(s.matrix()).ok());
  }
}

TEST(WignerRotation, IdentityGivesIdentity) {
  const MassShellMomentum q(0.3, -0.4, 0.2, 1.0);
  EXPECT_LT(max_dev(wigner_rotation(LorentzTransform::identity(), q).matrix(), Eigen::Matrix4d::Identity()), 1e-12);
}

TEST(WignerRotation, RotationIsItsOwnWignerRotation) {
  Rng rng(3);
  for (int k = 0; k < 50; ++k) {
    const LorentzTransform r = random_rotation(rng);
    const MassShellMomentum q = random_momentum(rng, 1.0, 1.5);
    EXPECT_LT(max_dev(wigner_rotation(r, q).matrix(), r.matrix()), 1e-10);
  }
}

TEST(WignerRotation, CollinearBoostIsTrivial) {
  const LorentzTransform b = LorentzTransform::boost({0, 0, 1}, 0.7);
  const MassShellMomentum q(0, 0, 0.4, 1.0);
  EXPECT_LT(max_dev(wigner_rotation(b, q).matrix(), Eigen::Matrix4d::Identity()), 1e-10);
}

TEST(WignerRotation, FixesRestVectorAndUnwinds) {
  Rng rng(4);
  for (int k = 0; k < 100; ++k) {
    const double m = rng.uniform(0.5, 2.0);
    const LorentzTransform l = random_lorentz(rng);
    const MassShellMomentum q = random_momentum(rng, m, 1.5);
    const LorentzTransform w = wigner_rotation(l, q);
    EXPECT_TRUE(w.is_rotation(1e-10));
    const FourVector ell{m, 0, 0, 0};
    const FourVector img = w.apply(ell);
    for (int mu = 0; mu < 4; ++mu) EXPECT_NEAR(img[mu], ell[mu], 1e-10 * m);
    const Eigen::Matrix4d lhs = (standard_boost(l.apply(q)) * w).matrix();
    const Eigen::Matrix4d rhs = (l * standard_boost(q)).matrix();
    EXPECT_LT(max_dev(lhs, rhs), 1e-10 * std::max(1.0, rhs.cwiseAbs().maxCoeff()));
  }
}

TEST(WignerRotation, RejectsNonOrthochronous) {
  EXPECT_THROW(wigner_rotation(Eigen::Matrix4d(Eigen::Vector4d(-1, 1, 1, 1).asDiagonal()), MassShellMomentum(0, 0, 0, 1)),
               InvalidLorentz);
}

TEST(ValidateLorentz, AcceptsIdentity) { EXPECT_NO_THROW(validate_lorentz(Eigen::Matrix4d::Identity())); }

TEST(ValidateLorentz, RejectsTimeReversal) {
  try {
    validate_lorentz(Eigen::Vector4d(-1, 1, 1, 1).asDiagonal());
    FAIL() << "accepted time reversal";
  } catch (const InvalidLorentz& e) {
    EXPECT_EQ(e.violation(), LorentzViolation::orthochrony);
  }
}

TEST(ValidateLorentz, RejectsParity) {
  try {
    validate_lorentz(Eigen::Vector4d(1, -1, -1, -1).asDiagonal());
    FAIL() << "accepted parity";
  } catch (const InvalidLorentz& e) {
    EXPECT_EQ(e.violation(), LorentzViolation::determinant);
  }
}

TEST(ValidateLorentz, RejectsNonIsometry) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m(1, 1) = 1.01;
  try {
    validate_lorentz(m);
    FAIL() << "accepted a stretch";
  } catch (const InvalidLorentz& e) {
    EXPECT_EQ(e.violation(), LorentzViolation::metric);
  }
}

TEST(ValidateLorentz, RoundTripOfBoostTimesRotation) {
  Rng rng(5);
  for (int k = 0; k < 50; ++k) {
    const LorentzTransform l = LorentzTransform::boost(rng.unit_vector(), 0.5) * random_rotation(rng);
    EXPECT_NO_THROW(validate_lorentz(l.matrix()));
  }
}

TEST(LorentzTransform, InverseAndComposition) {
  Rng rng(6);
  for (int k = 0; k < 50; ++k) {
    const LorentzTransform l = random_lorentz(rng);
    EXPECT_LT(max_dev((l * l.inverse()).matrix(), Eigen::Matrix4d::Identity()), 1e-10);
  }
}

TEST(MassShell, StaysOnShellAfterTenBoosts) {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    MassShellMomentum p = random_momentum(rng, 1.0, 1.0);
    for (int k = 0; k < 10; ++k) {
      p = random_boost(rng, 0.5).apply(p);
      const double e = p.energy();
      EXPECT_LT(std::abs(e * e - p.spatial().squaredNorm() - 1.0), 1e-9);
    }
  }
}

TEST(SameAtom, ToleranceScalesWithMass) {
  const MassShellMomentum p(0.1, 0.2, 0.3, 2.0);
  EXPECT_TRUE(same_atom(p, MassShellMomentum(0.1 + 1e-9, 0.2, 0.3, 2.0)));
  EXPECT_FALSE(same_atom(p, MassShellMomentum(0.1 + 1e-8, 0.2, 0.3, 2.0)));
}
