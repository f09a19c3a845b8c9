#include <gtest/gtest.h>

#include "relchan/fock_sector.hpp"
#include "relchan/random.hpp"

using namespace relchan;

namespace {

AtomBasis two_atoms() { return AtomBasis::from_spatial(1.0, {{0.1, 0.0, 0.0}, {0.0, -0.3, 0.2}}); }

double inf_norm(const Operator& x) { return x.size() ? x.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

TEST(AtomBasis, DimensionAndLookup) {
  const AtomBasis b = two_atoms();
  EXPECT_EQ(b.size(), 2u);
  EXPECT_EQ(b.dim(), 3);
  EXPECT_EQ(b.find(MassShellMomentum(0.0, -0.3, 0.2, 1.0)), 1);
  EXPECT_EQ(b.find(MassShellMomentum(0.5, 0.0, 0.0, 1.0)), -1);
  EXPECT_EQ(b.rest_atom(), -1);
}

TEST(AtomBasis, RejectsDuplicatesAndMixedShells) {
  EXPECT_THROW(AtomBasis::from_spatial(1.0, {{0.1, 0, 0}, {0.1 + 1e-12, 0, 0}}), InvalidBasis);
  EXPECT_THROW(AtomBasis(1.0, {MassShellMomentum(0, 0, 0, 1.0), MassShellMomentum(0.1, 0, 0, 2.0)}), InvalidBasis);
}

TEST(Annihilate, VacuumGivesZero) {
  const AtomBasis b = two_atoms();
  EXPECT_EQ(inf_norm(annihilate(b, 0, vacuum_projector(b))), 0.0);
}

TEST(Annihilate, SingleModeToVacuum) {
  const AtomBasis b = two_atoms();
  const Operator rho = SectorState::one_particle(b, 1).projector();
  EXPECT_EQ(inf_norm(annihilate(b, 1, rho) - vacuum_projector(b)), 0.0);
}

TEST(Annihilate, MixtureKeepsOnlyItsWeight) {
  const AtomBasis b = two_atoms();
  Operator rho = Operator::Zero(3, 3);
  rho(1, 1) = 0.3;
  rho(2, 2) = 0.7;
  Operator expected = Operator::Zero(3, 3);
  expected(0, 0) = 0.3;
  EXPECT_EQ(inf_norm(annihilate(b, 0, rho) - expected), 0.0);
}

TEST(Annihilate, MatchesLadderOperatorAndPreservesPositivity) {
  Rng rng(1);
  const AtomBasis b = AtomBasis::from_spatial(1.0, {{0, 0, 0}, {0.2, 0, 0}, {0, 0.4, 0}, {0, 0, -0.5}});
  for (int k = 0; k < 20; ++k) {
    const Operator rho = random_density(rng, b.dim());
    for (std::size_t i = 0; i < b.size(); ++i) {
      const Operator a = annihilator(b, i);
      const Operator out = annihilate(b, i, rho);
      EXPECT_LT(inf_norm(out - a * rho * a.adjoint()), 1e-15);
      EXPECT_NEAR(out.trace().real(), rho(particle(i), particle(i)).real(), 1e-15);
      EXPECT_GE(min_eigenvalue(out), -1e-10);
    }
  }
}

TEST(Annihilate, IndexOutOfRange) {
  const AtomBasis b = two_atoms();
  EXPECT_THROW(annihilate(b, 2, vacuum_projector(b)), InvalidBasis);
}

TEST(Number, VacuumKilled) {
  const AtomBasis b = two_atoms();
  EXPECT_EQ(inf_norm(apply_number(vacuum_projector(b), Side::both)), 0.0);
}

TEST(Number, OneParticleFixed) {
  const AtomBasis b = two_atoms();
  SectorState s{0.0, Eigen::VectorXcd(2)};
  s.particles << cplx(0.6, 0.0), cplx(0.0, 0.8);
  const Operator rho = s.projector();
  EXPECT_EQ(inf_norm(apply_number(rho, Side::both) - rho), 0.0);
}

TEST(Number, CoherenceKilledFromTheLeft) {
  Operator x = Operator::Zero(3, 3);
  x(0, 1) = 1.0;  // |0><p_0|
  EXPECT_EQ(inf_norm(apply_number(x, Side::both)), 0.0);
  EXPECT_EQ(inf_norm(apply_number(x, Side::left)), 0.0);
  EXPECT_EQ(inf_norm(apply_number(x, Side::right) - x), 0.0);
}

TEST(Number, MatchesOperatorProducts) {
  Rng rng(2);
  const AtomBasis b = two_atoms();
  const Operator n = number_operator(b);
  for (int k = 0; k < 10; ++k) {
    const Operator rho = random_density(rng, b.dim());
    EXPECT_LT(inf_norm(apply_number(rho, Side::left) - n * rho), 1e-15);
    EXPECT_LT(inf_norm(apply_number(rho, Side::right) - rho * n), 1e-15);
    EXPECT_LT(inf_norm(apply_number(rho, Side::both) - n * rho * n), 1e-15);
  }
}

TEST(Number, SectorIdentities) {
  const AtomBasis b = AtomBasis::from_spatial(1.0, {{0, 0, 0}, {0.2, 0, 0}, {0, 0.4, 0}});
  const Operator n = number_operator(b);
  EXPECT_EQ(inf_norm(n * n - n), 0.0);
  Operator sum = Operator::Zero(b.dim(), b.dim());
  for (std::size_t i = 0; i < b.size(); ++i) {
    sum += annihilator(b, i).adjoint() * annihilator(b, i);
    for (std::size_t j = 0; j < b.size(); ++j) {
      const Operator prod = mode_number(b, i) * mode_number(b, j);
      EXPECT_EQ(inf_norm(prod - (i == j ? mode_number(b, i) : Operator::Zero(b.dim(), b.dim()))), 0.0);
      // a_i a_j^dag |0> = delta_ij |0>
      const Eigen::VectorXcd v = annihilator(b, i) * annihilator(b, j).adjoint() * SectorState::vacuum_state(b).vector();
      EXPECT_EQ(std::abs(v(0) - (i == j ? 1.0 : 0.0)), 0.0);
      EXPECT_EQ(v.tail(b.size()).norm(), 0.0);
    }
  }
  EXPECT_EQ(inf_norm(sum - n), 0.0);
}

TEST(SectorState, Normalization) {
  const AtomBasis b = two_atoms();
  SectorState s{cplx(0.6, 0.0), Eigen::VectorXcd(2)};
  s.particles << cplx(0.0, 0.48), cplx(0.64, 0.0);
  EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);
  EXPECT_NEAR(s.projector().trace().real(), 1.0, 1e-12);
}

TEST(ValidateDensity, MaximallyMixedIsValid) {
  EXPECT_TRUE(validate_density(Operator::Identity(3, 3) / 3.0).ok());
}

TEST(ValidateDensity, TraceViolation) {
  const auto d = validate_density(0.99 * Operator::Identity(3, 3) / 3.0);
  EXPECT_FALSE(d.unit_trace);
  EXPECT_TRUE(d.hermitian);
  EXPECT_TRUE(d.positive);
}

TEST(ValidateDensity, NegativeEigenvalue) {
  Operator rho = Operator::Zero(3, 3);
  rho(0, 0) = 1.0 + 1e-6;
  rho(1, 1) = -1e-6;
  const auto d = validate_density(rho);
  EXPECT_FALSE(d.positive);
  EXPECT_TRUE(d.unit_trace);
  EXPECT_NEAR(d.min_eigenvalue, -1e-6, 1e-15);
}

TEST(ValidateDensity, HermiticityViolation) {
  Operator rho = Operator::Identity(2, 2) / 2.0;
  rho(0, 1) = 0.1;
  const auto d = validate_density(rho);
  EXPECT_FALSE(d.hermitian);
  EXPECT_THROW(DensityOperator{rho}, Error);
}

TEST(ValidateDensity, RandomStatesValid) {
  Rng rng(3);
  for (int k = 0; k < 20; ++k) EXPECT_TRUE(validate_density(random_density(rng, 5)).ok());
}
