#include "qanneal/pulses.h"

#include <gtest/gtest.h>

#include "oracles.h"

namespace qanneal {
namespace {

PulseContext default_context() { return {Couplings{}, SystemParams{}}; }

TEST(SelectiveRotation, PrintedMatrices) {
  const double t = 0.83;
  const double c = std::cos(t / 2), s = std::sin(t / 2);
  const Complex i(0, 1);

  const SpinMatrix z12 = selective_rotation_local({SiteIndex(1), Transition::T12, SpinAxis::Z, t});
  EXPECT_LT(std::abs(z12(0, 0) - std::polar(1.0, -t / 2)), 1e-15);
  EXPECT_LT(std::abs(z12(1, 1) - std::polar(1.0, t / 2)), 1e-15);
  EXPECT_EQ(z12(2, 2), Complex(1.0));

  const SpinMatrix y23 = selective_rotation_local({SiteIndex(1), Transition::T23, SpinAxis::Y, t});
  EXPECT_EQ(y23(0, 0), Complex(1.0));
  EXPECT_NEAR(y23(1, 2).real(), -s, 1e-15);
  EXPECT_NEAR(y23(2, 1).real(), s, 1e-15);
  EXPECT_NEAR(y23(2, 2).real(), c, 1e-15);

  const SpinMatrix x12 = selective_rotation_local({SiteIndex(1), Transition::T12, SpinAxis::X, t});
  EXPECT_LT(std::abs(x12(0, 1) + i * s), 1e-15);
  EXPECT_LT(std::abs(x12(1, 0) + i * s), 1e-15);
}

TEST(SelectiveRotation, UnitaryAndInvertible) {
  for (Transition tr : {Transition::T12, Transition::T23}) {
    for (SpinAxis ax : {SpinAxis::X, SpinAxis::Y, SpinAxis::Z}) {
      const SelectiveRotation fwd{SiteIndex(2), tr, ax, 1.1};
      SelectiveRotation back = fwd;
      back.angle = -1.1;
      const Operator27 u = selective_rotation_matrix(fwd);
      EXPECT_TRUE(is_unitary(u, 1e-13));
      EXPECT_LT(max_norm(u * selective_rotation_matrix(back) - Operator27::Identity()), 1e-14);
    }
  }
}

TEST(SelectiveRotation, NonFiniteAngleThrows) {
  EXPECT_THROW(selective_rotation_local({SiteIndex(1), Transition::T12, SpinAxis::X, NAN}), NumericalError);
}

TEST(NonSelectiveRotation, IsExponentialOfSpinOperator) {
  const double t = -0.77;
  const oracle::M3 gens[] = {oracle::sx(), oracle::sy(), oracle::sz()};
  const SpinAxis axes[] = {SpinAxis::X, SpinAxis::Y, SpinAxis::Z};
  for (int a = 0; a < 3; ++a) {
    const Operator27 expected = oracle::expm(Complex(0, -t) * oracle::on_site(gens[a], 3));
    EXPECT_LT(max_norm(nonselective_rotation_matrix(SiteIndex(3), axes[a], t) - expected), 1e-13);
  }
}

TEST(FreeEvolution, DiagonalPhases) {
  const Couplings c;
  const SystemParams p;
  const double t = 0.0123;
  const Operator27 ddi = free_evolution_matrix(t, FreeEvolutionModel::DdiOnly, c, p);
  const Operator27 expected = oracle::diag_exp(
      [&](int k) {
        const int a = oracle::m_of(k, 1), b = oracle::m_of(k, 2), d = oracle::m_of(k, 3);
        return c.j12 * a * b + c.j13 * a * d + c.j23 * b * d;
      },
      t);
  EXPECT_LT(max_norm(ddi - expected), 1e-13);
  const Operator27 full = free_evolution_matrix(t, FreeEvolutionModel::Full, c, p);
  EXPECT_LT(max_norm(full - matrix_exp(h_single(p) + h_dipolar(c), Complex(0, -t))), 1e-12);
}

TEST(Inversion, SwapsOuterLevels) {
  const PulseContext ctx = default_context();
  for (int s = 1; s <= 3; ++s) {
    const Operator27 p = evaluate_program(inversion_program(SiteIndex(s)), ctx);
    const Operator27 z = oracle::on_site(oracle::sz(), s);
    EXPECT_LT(max_norm(p.adjoint() * z * p + z), 1e-14);
    EXPECT_LT(max_norm(p * p - Operator27::Identity()), 1e-14);
    EXPECT_TRUE(is_unitary(p, 1e-14));
  }
}

TEST(Program, OrderIsFirstActsFirst) {
  const PulseContext ctx = default_context();
  const SelectiveRotation a{SiteIndex(1), Transition::T12, SpinAxis::X, 0.4};
  const NonSelectiveRotation b{SiteIndex(1), SpinAxis::Y, 0.9};
  PulseProgram prog;
  prog.append(a);
  prog.append(b);
  const Operator27 expected = primitive_matrix(b, ctx) * primitive_matrix(a, ctx);
  EXPECT_LT(max_norm(evaluate_program(prog, ctx) - expected), 1e-14);
}

PulseProgram mixed_program() {
  PulseProgram prog;
  prog.label = "mixed";
  prog.append(SelectiveRotation{SiteIndex(1), Transition::T12, SpinAxis::X, 0.4});
  prog.append(FreeEvolution{0.003, FreeEvolutionModel::DdiOnly});
  prog.append(NonSelectiveRotation{SiteIndex(2), SpinAxis::Y, -1.3});
  prog.append(SelectiveRotation{SiteIndex(3), Transition::T23, SpinAxis::Z, 2.2});
  prog.append(FreeEvolution{-0.0071, FreeEvolutionModel::Full});
  prog.append(GlobalPhase{0.25});
  prog.append(SelectiveRotation{SiteIndex(2), Transition::T23, SpinAxis::Y, -0.6});
  return prog;
}

TEST(Program, InverseEvaluatesToAdjoint) {
  const PulseContext ctx = default_context();
  const PulseProgram prog = mixed_program();
  const Operator27 u = evaluate_program(prog, ctx);
  EXPECT_TRUE(is_unitary(u, 1e-12));
  EXPECT_LT(max_norm(evaluate_program(prog.inverse(), ctx) - u.adjoint()), 1e-12);
  EXPECT_EQ(prog.inverse().inverse().steps, prog.steps);
}

TEST(Program, EmptyIsIdentity) {
  EXPECT_LT(max_norm(evaluate_program({}, default_context()) - Operator27::Identity()), 0.0 + 1e-300);
}

TEST(Program, ApplyMatchesEvaluate) {
  const PulseContext ctx = default_context();
  const PulseProgram prog = mixed_program();
  StateVector psi = oracle::initial_state();
  const StateVector expected = evaluate_program(prog, ctx) * psi;
  apply_program(prog, ctx, psi);
  EXPECT_LT((psi - expected).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Program, GlobalPhaseIsScalar) {
  PulseProgram prog;
  prog.append(GlobalPhase{0.6});
  EXPECT_LT(max_norm(evaluate_program(prog, default_context()) - std::polar(1.0, 0.6) * Operator27::Identity()),
            1e-15);
  PulseProgram bad;
  bad.append(GlobalPhase{INFINITY});
  EXPECT_THROW(evaluate_program(bad, default_context()), NumericalError);
}

TEST(CommonPeriod, DipolarHamiltonianRecurs) {
  const Operator27 hd = h_dipolar(Couplings{});
  const auto period = common_period(hd);
  ASSERT_TRUE(period.has_value());
  ASSERT_GT(*period, 0.0);
  const Operator27 u = matrix_exp(hd, Complex(0, -*period));
  EXPECT_TRUE(equal_up_to_phase(Operator27::Identity(), u, 1e-9).equal);
  // The common period is the smallest: half of it does not recur.
  EXPECT_FALSE(equal_up_to_phase(Operator27::Identity(), matrix_exp(hd, Complex(0, -*period / 2)), 1e-6).equal);
}

TEST(CommonPeriod, ScalarAndIncommensurate) {
  EXPECT_EQ(common_period(3.0 * Operator27::Identity()), 0.0);
  Operator27 h = Operator27::Zero();
  h(1, 1) = 1.0;
  h(2, 2) = std::sqrt(2.0);
  EXPECT_FALSE(common_period(h).has_value());
}

TEST(PhysicalView, NonNegativeDurationsSameUnitary) {
  const PulseContext ctx = default_context();
  const PulseProgram prog = mixed_program();
  const PulseProgram phys = physical_view(prog, ctx);
  for (const auto& step : phys.steps) {
    if (const auto* f = std::get_if<FreeEvolution>(&step)) EXPECT_GE(f->duration, 0.0);
  }
  EXPECT_LT(max_norm(evaluate_program(phys, ctx) - evaluate_program(prog, ctx)), 1e-9);
}

TEST(PhysicalView, IncommensurateFullModelThrows) {
  PulseContext ctx = default_context();
  ctx.params.omega = {1000.0 * std::sqrt(2.0), 4000.0, 6000.0};
  PulseProgram prog;
  prog.append(FreeEvolution{-0.01, FreeEvolutionModel::Full});
  EXPECT_THROW(physical_view(prog, ctx), NumericalError);
}

TEST(Transition, Names) {
  EXPECT_EQ(to_string(Transition::T12), "12");
  EXPECT_EQ(to_string(Transition::T23), "23");
}

}  // namespace
}  // namespace qanneal
