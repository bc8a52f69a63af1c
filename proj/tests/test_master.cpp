#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "eitmw/master.hpp"
#include "test_support.hpp"

using namespace eitmw;
using namespace eitmw::testing;

TEST(Vectorization, RowMajorRoundTrip) {
  Draws d(51);
  const Matrix3c r = d.random_state();
  const Vector9c v = vectorize(r);
  EXPECT_EQ(v(vec_index(1, 2)), r(1, 2));
  EXPECT_EQ(unvectorize(v), r);
}

TEST(Liouvillian, MatchesEntryByEntryOracle) {
  Draws d(53);
  for (int n = 0; n < 300; ++n) {
    const SystemParams p = validate_params(d.physical());
    const Matrix9c l = build_liouvillian(p).matrix;
    EXPECT_LT((l - oracle_liouvillian(p)).cwiseAbs().maxCoeff(), 1e-13 * std::max(1.0, l.norm()));
  }
}

TEST(Liouvillian, PreservesTraceAndHermiticityOnFullOperatorBasis) {
  Draws d(57);
  for (int n = 0; n < 100; ++n) {
    const Liouvillian l = build_liouvillian(validate_params(d.physical()));
    const double scale = std::max(1.0, l.matrix.norm());
    for (int a = 0; a < 9; ++a) {
      Matrix3c e = Matrix3c::Zero();
      e(a / 3, a % 3) = 1.0;
      EXPECT_LT(std::abs(l.apply(e).trace()), 1e-12 * scale);
      // Hermitian basis: E + E^dag and i(E - E^dag)
      for (const Matrix3c& h : {Matrix3c(e + e.adjoint()), Matrix3c(cd(0.0, 1.0) * (e - e.adjoint()))}) {
        const Matrix3c out = l.apply(h);
        EXPECT_LT((out - out.adjoint()).norm(), 1e-12 * scale);
      }
    }
  }
}

TEST(SteadyState, NullVectorOfTheOracleAndPhysical) {
  Draws d(59);
  for (int n = 0; n < 300; ++n) {
    const SystemParams p = validate_params(d.physical());
    const SteadyStateReport r = steady_state(p);
    EXPECT_EQ(r.null_space_dimension, 1);
    EXPECT_LT(r.residual, 1e-10);
    EXPECT_LT((r.rho.entries() - oracle_steady(oracle_liouvillian(p))).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_NEAR(r.rho.entries().trace().real(), 1.0, 1e-12);
    const Eigen::SelfAdjointEigenSolver<Matrix3c> es(r.rho.entries());
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-9);
  }
}

TEST(SteadyState, PhaseCanonicalizationInvariance) {
  Draws d(61);
  for (int n = 0; n < 100; ++n) {
    SystemParams p = d.physical();
    SystemParams q = p;
    q.phi += 2.0 * kPi * d.integer(-5, 5);
    const Matrix3c a = steady_state(validate_params(p)).rho.entries();
    const Matrix3c b = steady_state(validate_params(q)).rho.entries();
    EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(SteadyState, CoherentTrappingAtTheDarkCondition) {
  const SteadyStateReport r = steady_state({.g = 1.0, .G = 1.0, .omega = 1.0});
  EXPECT_LE(r.rho.population(kExcited), 1e-12);
  EXPECT_GE(r.rho.purity(), 1.0 - 1e-10);
  EXPECT_NEAR(r.rho.population(kGround1), 0.5, 1e-10);
  EXPECT_NEAR(r.rho(0, 1).real(), -0.5, 1e-10);
}

TEST(SteadyState, DegenerateWhenTheExcitedStateIsUncoupled) {
  // no optical fields: every ground-state population is stationary
  try {
    steady_state({.omega = 0.0});
    FAIL() << "expected DegenerateSteadyState";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateSteadyState);
  }
}

TEST(Evolve, ConvergesToTheSteadyState) {
  Draws d(67);
  for (int n = 0; n < 20; ++n) {
    const SystemParams p = validate_params(d.physical());
    const Matrix9c l = build_liouvillian(p).matrix;
    const Eigen::ComplexEigenSolver<Matrix9c> es(l);
    double gap = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 9; ++k) {
      const double re = -es.eigenvalues()(k).real();
      if (std::abs(es.eigenvalues()(k)) > 1e-9) gap = std::min(gap, re);
    }
    const DensityMatrix start = check_density_matrix(Matrix3c::Identity() / 3.0);
    const DensityMatrix end = evolve(start, p, 30.0 / gap, max_stable_step(p));
    const Matrix3c ss = steady_state(p).rho.entries();
    EXPECT_LT((end.entries() - ss).cwiseAbs().maxCoeff(), 1e-6) << "gap " << gap;
  }
}

TEST(Evolve, RejectsUnstableOrInvalidSteps) {
  const SystemParams p{.g = 1.0, .G = 1.0, .omega = 1.0};
  const DensityMatrix rho = check_density_matrix(Matrix3c::Identity() / 3.0);
  EXPECT_EQ(error_of([&] { evolve(rho, p, 1.0, 1.0); }), ErrorCode::StepTooLarge);
  EXPECT_EQ(error_of([&] { evolve(rho, p, -1.0, 1e-3); }), ErrorCode::PreconditionViolation);
  EXPECT_EQ(error_of([&] { evolve(rho, p, 1.0, 0.0); }), ErrorCode::PreconditionViolation);
}

TEST(ResonantDarkPhaseCondition, UnityForEqualCouplingsWithoutDephasing) {
  Draws d(71);
  for (int n = 0; n < 500; ++n) {
    const double g = d.uniform(0.1, 5.0), gamma = d.uniform(0.5, 2.0);
    const SystemParams p{.g = g, .G = g, .omega = d.uniform(0.1, 5.0), .gamma1 = gamma, .gamma2 = gamma};
    EXPECT_NEAR(resonant_dark_phase_condition(p), 1.0, 1e-12);
  }
}

TEST(ResonantDarkPhaseCondition, ExceedsUnityOtherwise) {
  Draws d(73);
  for (int n = 0; n < 1000; ++n) {
    const double gamma = d.uniform(0.5, 2.0);
    SystemParams p{.g = d.uniform(0.1, 5.0), .G = d.uniform(0.1, 5.0), .omega = d.uniform(0.1, 5.0),
                   .gamma1 = gamma, .gamma2 = gamma, .kappa = n % 2 ? d.uniform(0.01, 2.0) : 0.0};
    EXPECT_GT(resonant_dark_phase_condition(p), 1.0);
  }
}

TEST(ResonantDarkPhaseCondition, Preconditions) {
  const SystemParams base{.g = 1.0, .G = 1.0, .omega = 1.0};
  SystemParams p = base;
  p.delta1 = 0.1;
  EXPECT_EQ(error_of([&] { resonant_dark_phase_condition(p); }), ErrorCode::PreconditionViolation);
  p = base;
  p.gamma2 = 2.0;
  EXPECT_EQ(error_of([&] { resonant_dark_phase_condition(p); }), ErrorCode::PreconditionViolation);
  p = base;
  p.omega = 0.0;
  EXPECT_EQ(error_of([&] { resonant_dark_phase_condition(p); }), ErrorCode::PreconditionViolation);
}
