#include "qanneal/compiler.h"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qanneal {

namespace {

constexpr double kPi = std::numbers::pi;

SelectiveRotation rot(SiteIndex site, Transition t, SpinAxis axis, double angle) {
  return SelectiveRotation{site, t, axis, angle};
}

NonSelectiveRotation spin1(SpinAxis axis, double angle) { return NonSelectiveRotation{SiteIndex(1), axis, angle}; }

SiteIndex spectator_of(SiteIndex p, SiteIndex q) { return SiteIndex(6 - p.value() - q.value()); }

// Free dipolar evolution exp(-i duration H_d). Under the full model the
// single-spin part accumulated during the interval is undone with Z pulses.
PulseProgram free_interval(double duration, const CompilerOptions& opts) {
  PulseProgram prog;
  prog.append(FreeEvolution{duration, opts.model});
  if (opts.model == FreeEvolutionModel::Full) {
    // exp(+i duration H_1), H_1 = sum_j -omega_j S_j + q_j (S_j^2 - 2/3).
    double shift = 0.0;
    for (int j = 0; j < kNumSites; ++j) {
      const SiteIndex site(j + 1);
      prog.append(compile_linear(site, duration * opts.params.omega[j]));
      prog.append(compile_quadratic_single(site, -duration * opts.params.q[j]));
      shift += opts.params.q[j];
    }
    prog.append(GlobalPhase{-duration * (2.0 / 3.0) * shift});
  }
  return prog;
}

// Squaring construction: given a program for exp(-i phi X S_q) with X
// acting away from q, builds exp(-i 3 phi X S_q^2) around `outer`, which
// must realize exp(-i 2 phi X).
PulseProgram squaring_sandwich(SiteIndex q, const PulseProgram& x_sq_factor, const PulseProgram& outer) {
  PulseProgram prog;
  prog.append(rot(q, Transition::T23, SpinAxis::Y, kPi));
  prog.append(rot(q, Transition::T12, SpinAxis::Y, kPi));
  prog.append(x_sq_factor);
  prog.append(rot(q, Transition::T12, SpinAxis::Y, -kPi));
  prog.append(x_sq_factor);
  prog.append(rot(q, Transition::T23, SpinAxis::Y, -kPi));
  prog.append(outer);
  return prog;
}

Operator27 diag_product(std::initializer_list<SiteIndex> sites, std::initializer_list<int> powers) {
  Operator27 out = Operator27::Identity();
  auto power = powers.begin();
  for (SiteIndex s : sites) {
    SpinMatrix m = spin_matrix(SpinAxis::Z);
    if (*power == 2) m = m * m;
    out = out * embed(m, s);
    ++power;
  }
  return out;
}

}  // namespace

std::string TermKind::str() const {
  std::ostringstream out;
  switch (shape) {
    case TermShape::Linear: out << "linear(" << first << ")"; break;
    case TermShape::QuadraticSingle: out << "quadratic(" << first << ")"; break;
    case TermShape::PairZZ: out << "zz(" << first << "," << second << ")"; break;
    case TermShape::PairZZsq: out << "z_zsq(" << first << "," << second << ")"; break;
    case TermShape::PairZsqZsq: out << "zsq_zsq(" << first << "," << second << ")"; break;
    case TermShape::TripleZZZ: out << "zzz(1,2,3)"; break;
    case TermShape::TripleZsqZZ: out << "zzzsq(1,2,3)"; break;
    case TermShape::Constant: out << "constant"; break;
  }
  return out.str();
}

const std::vector<ProblemTerm>& problem_terms() {
  using S = TermShape;
  static const std::vector<ProblemTerm> terms = {
      {{S::Linear, 1, 0}, -168},         // a1
      {{S::Linear, 2, 0}, -56},          // a2
      {{S::Linear, 3, 0}, -56},          // b
      {{S::QuadraticSingle, 1, 0}, 36},  // a1^2
      {{S::QuadraticSingle, 2, 0}, 4},   // a2^2
      {{S::QuadraticSingle, 3, 0}, 4},   // b^2
      {{S::PairZZ, 1, 2}, 24},           // a1 a2
      {{S::PairZZ, 1, 3}, -312},         // a1 b
      {{S::PairZZ, 2, 3}, -104},         // a2 b
      {{S::PairZZsq, 1, 3}, 48},         // b^2 a1
      {{S::PairZZsq, 2, 3}, 16},         // b^2 a2
      {{S::PairZZsq, 3, 1}, 144},        // b a1^2
      {{S::PairZZsq, 3, 2}, 16},         // b a2^2
      {{S::PairZsqZsq, 1, 3}, 144},      // b^2 a1^2
      {{S::PairZsqZsq, 2, 3}, 16},       // b^2 a2^2
      {{S::TripleZZZ, 0, 0}, 96},        // b a1 a2
      {{S::TripleZsqZZ, 0, 0}, 96},      // b^2 a1 a2
      {{S::Constant, 0, 0}, 196},
  };
  return terms;
}

Operator27 term_operator(const TermKind& kind) {
  const auto site = [](int v) { return SiteIndex(v); };
  switch (kind.shape) {
    case TermShape::Linear: return diag_product({site(kind.first)}, {1});
    case TermShape::QuadraticSingle: return diag_product({site(kind.first)}, {2});
    case TermShape::PairZZ: return diag_product({site(kind.first), site(kind.second)}, {1, 1});
    case TermShape::PairZZsq: return diag_product({site(kind.first), site(kind.second)}, {1, 2});
    case TermShape::PairZsqZsq: return diag_product({site(kind.first), site(kind.second)}, {2, 2});
    case TermShape::TripleZZZ: return diag_product({site(1), site(2), site(3)}, {1, 1, 1});
    case TermShape::TripleZsqZZ: return diag_product({site(1), site(2), site(3)}, {1, 1, 2});
    case TermShape::Constant: return Operator27::Identity();
  }
  return Operator27::Zero();
}

PulseProgram compile_linear(SiteIndex spin, double phase) {
  PulseProgram prog;
  prog.append(rot(spin, Transition::T12, SpinAxis::Z, 2.0 * phase));
  prog.append(rot(spin, Transition::T23, SpinAxis::Z, 2.0 * phase));
  return prog;
}

PulseProgram compile_quadratic_single(SiteIndex spin, double phase3) {
  const double phi = phase3 / 3.0;
  PulseProgram prog;
  prog.append(rot(spin, Transition::T12, SpinAxis::Z, 2.0 * phi));
  prog.append(rot(spin, Transition::T23, SpinAxis::Z, -2.0 * phi));
  prog.append(GlobalPhase{-2.0 * phi});
  return prog;
}

PulseProgram compile_pair_zz(SiteIndex p, SiteIndex q, double phase, const CompilerOptions& opts) {
  if (p == q) throw std::invalid_argument("compile_pair_zz: spins must differ");
  const double j = opts.couplings.between(p, q);
  if (j == 0.0) {
    throw std::invalid_argument("compile_pair_zz: coupling J" + std::to_string(std::min(p.value(), q.value())) +
                                std::to_string(std::max(p.value(), q.value())) + " is zero");
  }
  const int lo = std::min(p.value(), q.value());
  const int hi = std::max(p.value(), q.value());
  PulseProgram prog;
  if (lo == 1 && hi == 2) {
    // Invert spin 1, then spin 2: the J12 term adds up, J13 and J23 cancel
    // between the two intervals. The sum is -2 J12 S1 S2 per unit duration.
    const double tau = -phase / (2.0 * j);
    const PulseProgram p1 = inversion_program(SiteIndex(1));
    const PulseProgram p2 = inversion_program(SiteIndex(2));
    prog.append(p1);
    prog.append(free_interval(tau, opts));
    prog.append(p1.inverse());
    prog.append(p2);
    prog.append(free_interval(tau, opts));
    prog.append(p2.inverse());
  } else {
    // One interval plain, one with the spectator inverted: only J_pq survives.
    const double tau = phase / (2.0 * j);
    const PulseProgram ps = inversion_program(spectator_of(p, q));
    prog.append(ps);
    prog.append(free_interval(tau, opts));
    prog.append(ps.inverse());
    prog.append(free_interval(tau, opts));
  }
  return prog;
}

PulseProgram compile_pair_z_zsq(SiteIndex spin_z, SiteIndex spin_zsq, double phase3, const CompilerOptions& opts) {
  if (spin_z == spin_zsq) throw std::invalid_argument("compile_pair_z_zsq: spins must differ");
  const double tj = phase3 / 3.0;
  return squaring_sandwich(spin_zsq, compile_pair_zz(spin_z, spin_zsq, tj, opts), compile_linear(spin_z, 2.0 * tj));
}

PulseProgram compile_pair_zsq_zsq(SiteIndex p, SiteIndex q, double phase, const CompilerOptions& opts) {
  if (p == q) throw std::invalid_argument("compile_pair_zsq_zsq: spins must differ");
  const double phi = phase / 3.0;
  // exp(-i phi S_p^2 S_q) by squaring over p, then square over q.
  const PulseProgram inner = compile_pair_z_zsq(q, p, phi, opts);
  return squaring_sandwich(q, inner, compile_quadratic_single(p, 2.0 * phi));
}

double commutator_leg_angle(double phase, int splits) {
  if (splits < 1) throw std::invalid_argument("three-spin split factor must be >= 1");
  return std::sqrt(std::abs(phase) / splits);
}

PulseProgram compile_triple_zzz(double phase, int splits, const CompilerOptions& opts) {
  const double b = commutator_leg_angle(phase, splits);
  // b12 * b13 = -phase / splits; the S1S3 leg carries the sign.
  const double b12 = b;
  const double b13 = phase > 0.0 ? -b : b;
  const SiteIndex s1(1), s2(2), s3(3);

  PulseProgram once;
  once.append(spin1(SpinAxis::X, -kPi / 2));
  once.append(compile_pair_zz(s1, s3, b13, opts));
  once.append(spin1(SpinAxis::Y, -kPi / 2));
  once.append(compile_pair_zz(s1, s2, b12, opts));
  once.append(spin1(SpinAxis::Y, kPi / 2));
  once.append(compile_pair_zz(s1, s3, -b13, opts));
  once.append(spin1(SpinAxis::Y, -kPi / 2));
  once.append(compile_pair_zz(s1, s2, -b12, opts));
  once.append(spin1(SpinAxis::Y, kPi / 2));
  once.append(spin1(SpinAxis::X, kPi / 2));

  PulseProgram prog;
  if (phase == 0.0) return prog;
  for (int k = 0; k < splits; ++k) prog.append(once);
  return prog;
}

PulseProgram compile_triple_zsqzz(double phase, int splits, const CompilerOptions& opts) {
  if (phase == 0.0) return {};
  const double phi = phase / 3.0;
  return squaring_sandwich(SiteIndex(3), compile_triple_zzz(phi, splits, opts),
                           compile_pair_zz(SiteIndex(1), SiteIndex(2), 2.0 * phi, opts));
}

namespace {

CompilerOptions options_of(const AnnealConfig& cfg) { return {cfg.couplings, cfg.params, cfg.model}; }

void check_step(int l, const AnnealConfig& cfg) {
  cfg.validate();
  if (l < 0 || l > cfg.n_steps) throw std::out_of_range("step index l must satisfy 0 <= l <= N");
}

}  // namespace

PulseProgram compile_term(const TermKind& kind, double phase, const AnnealConfig& cfg) {
  const CompilerOptions opts = options_of(cfg);
  const auto site = [](int v) { return SiteIndex(v); };
  switch (kind.shape) {
    case TermShape::Linear: return compile_linear(site(kind.first), phase);
    case TermShape::QuadraticSingle: return compile_quadratic_single(site(kind.first), phase);
    case TermShape::PairZZ: return compile_pair_zz(site(kind.first), site(kind.second), phase, opts);
    case TermShape::PairZZsq: return compile_pair_z_zsq(site(kind.first), site(kind.second), phase, opts);
    case TermShape::PairZsqZsq: return compile_pair_zsq_zsq(site(kind.first), site(kind.second), phase, opts);
    case TermShape::TripleZZZ: return compile_triple_zzz(phase, cfg.split_three_spin, opts);
    case TermShape::TripleZsqZZ: return compile_triple_zsqzz(phase, cfg.split_three_spin, opts);
    case TermShape::Constant: {
      PulseProgram prog;
      prog.append(GlobalPhase{-phase});
      return prog;
    }
  }
  return {};
}

CompiledStep compile_problem_step(int l, const AnnealConfig& cfg) {
  check_step(l, cfg);
  const double scale = cfg.dt * static_cast<double>(l) / cfg.n_steps;
  CompiledStep step;
  step.l = l;
  step.program.label = "problem l=" + std::to_string(l);
  for (const auto& term : problem_terms()) {
    step.term_manifest.emplace_back(term.kind, static_cast<double>(term.coefficient));
    const double phase = term.coefficient * scale;
    if (phase == 0.0) continue;
    step.program.append(compile_term(term.kind, phase, cfg));
  }
  return step;
}

PulseProgram compile_field_step(int l, const AnnealConfig& cfg, double fraction) {
  check_step(l, cfg);
  const double theta = fraction * cfg.field * cfg.dt * (1.0 - static_cast<double>(l) / cfg.n_steps);
  PulseProgram prog;
  prog.label = "field l=" + std::to_string(l);
  if (theta == 0.0) return prog;
  // H_0 = -h sum Sx, so the factor exp(-i (1-l/N) dt H_0) is exp(+i theta Sx) on each spin.
  for (int s = 1; s <= kNumSites; ++s) prog.append(NonSelectiveRotation{SiteIndex(s), SpinAxis::X, -theta});
  return prog;
}

CompiledStep compile_anneal_step(int l, const AnnealConfig& cfg) {
  CompiledStep problem = compile_problem_step(l, cfg);
  CompiledStep step;
  step.l = l;
  step.term_manifest = std::move(problem.term_manifest);
  step.program.label = "U l=" + std::to_string(l);
  if (cfg.mode.symmetrized) {
    const PulseProgram half = compile_field_step(l, cfg, 0.5);
    step.program.append(half);
    step.program.append(problem.program);
    step.program.append(half);
  } else {
    step.program.append(problem.program);
    step.program.append(compile_field_step(l, cfg));
  }
  return step;
}

std::vector<CompiledStep> compile_anneal(const AnnealConfig& cfg) {
  cfg.validate();
  std::vector<CompiledStep> steps;
  steps.reserve(static_cast<std::size_t>(cfg.n_steps) + 1);
  for (int l = 0; l <= cfg.n_steps; ++l) steps.push_back(compile_anneal_step(l, cfg));
  return steps;
}

Operator27 exact_problem_factor(int l, const AnnealConfig& cfg) {
  check_step(l, cfg);
  return matrix_exp(h_problem(), Complex(0.0, -cfg.dt * static_cast<double>(l) / cfg.n_steps));
}

ThreeSpinError three_spin_error(int l, const AnnealConfig& cfg) {
  check_step(l, cfg);
  const CompilerOptions opts = options_of(cfg);
  const PulseContext ctx{cfg.couplings, cfg.params};
  const double scale = cfg.dt * static_cast<double>(l) / cfg.n_steps;
  ThreeSpinError err;
  for (const auto& term : problem_terms()) {
    const double phase = term.coefficient * scale;
    if (term.kind.shape == TermShape::TripleZZZ) {
      const Operator27 exact = matrix_exp(term_operator(term.kind), Complex(0.0, -phase));
      err.zzz = spectral_norm(evaluate_program(compile_triple_zzz(phase, cfg.split_three_spin, opts), ctx) - exact);
    } else if (term.kind.shape == TermShape::TripleZsqZZ) {
      const Operator27 exact = matrix_exp(term_operator(term.kind), Complex(0.0, -phase));
      err.zsqzz =
          spectral_norm(evaluate_program(compile_triple_zsqzz(phase, cfg.split_three_spin, opts), ctx) - exact);
    }
  }
  return err;
}

}  // namespace qanneal
