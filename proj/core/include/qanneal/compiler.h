#pragma once

// Synthesis of the annealing propagators as pulse programs.
//
// Every monomial of the expanded problem Hamiltonian
//
//   (15 - (6 a1 + 2 a2 + 1)(2 b + 1))^2,  a1 = S1^z, a2 = S2^z, b = S3^z
//
// is turned into a sequence of selective rotations, non-selective rotations
// and intervals of free dipolar evolution. All one- and two-spin terms are
// reproduced exactly; the two three-spin terms come from a group commutator
// of two-spin evolutions and carry a third-order error in the commutator
// angle.
//
// Conventions: a "phase" argument is the coefficient c of the target
// exp(-i c O) for the operator O named by the function.

#include <string>
#include <utility>
#include <vector>

#include "qanneal/hamiltonians.h"
#include "qanneal/pulses.h"

namespace qanneal {

enum class TermShape {
  Linear,           // S_p
  QuadraticSingle,  // S_p^2
  PairZZ,           // S_p S_q
  PairZZsq,         // S_p S_q^2  (p = spin_z, q = spin_zsq)
  PairZsqZsq,       // S_p^2 S_q^2
  TripleZZZ,        // S_1 S_2 S_3
  TripleZsqZZ,      // S_1 S_2 S_3^2
  Constant,
};

struct TermKind {
  TermShape shape = TermShape::Constant;
  // Sites the term acts on, meaning depends on shape; unused entries are 0.
  int first = 0;
  int second = 0;

  std::string str() const;
  friend bool operator==(const TermKind&, const TermKind&) = default;
};

struct ProblemTerm {
  TermKind kind;
  // Integer coefficient in the expanded problem Hamiltonian.
  int coefficient = 0;
};

// The 18 monomials of the problem Hamiltonian (constant included), in
// emission order.
const std::vector<ProblemTerm>& problem_terms();

// Diagonal operator of one monomial, without coefficient.
Operator27 term_operator(const TermKind& kind);

struct CompiledStep {
  int l = 0;
  PulseProgram program;
  // (term, coefficient) for every monomial emitted into `program`.
  std::vector<std::pair<TermKind, double>> term_manifest;
};

struct CompilerOptions {
  Couplings couplings;
  SystemParams params;
  FreeEvolutionModel model = FreeEvolutionModel::DdiOnly;
};

// exp(-i phase S_k^z) as {2 phase}z12 {2 phase}z23.
PulseProgram compile_linear(SiteIndex spin, double phase);

// exp(-i phase3 (S_k^z)^2): {2phi}z12 {-2phi}z23 exp(-2 i phi), phi = phase3/3.
PulseProgram compile_quadratic_single(SiteIndex spin, double phase3);

// exp(-i phase S_p^z S_q^z) from free dipolar evolution, refocusing the
// other two couplings with inversion composites. Throws
// std::invalid_argument when J_pq is zero or p == q.
PulseProgram compile_pair_zz(SiteIndex p, SiteIndex q, double phase, const CompilerOptions& opts);

// exp(-i phase3 S_p^z (S_q^z)^2).
PulseProgram compile_pair_z_zsq(SiteIndex spin_z, SiteIndex spin_zsq, double phase3, const CompilerOptions& opts);

// exp(-i phase (S_p^z)^2 (S_q^z)^2), nesting the squaring construction twice.
PulseProgram compile_pair_zsq_zsq(SiteIndex p, SiteIndex q, double phase, const CompilerOptions& opts);

// Approximates exp(-i phase S1^z S2^z S3^z) by `splits` repetitions of a
// group-commutator sandwich with leg angles b = sqrt(|phase| / splits).
PulseProgram compile_triple_zzz(double phase, int splits, const CompilerOptions& opts);

// Approximates exp(-i phase S1^z S2^z (S3^z)^2): squaring construction on
// spin 3 around two commutator-built S1 S2 S3 factors.
PulseProgram compile_triple_zsqzz(double phase, int splits, const CompilerOptions& opts);

// Commutator leg angle used by compile_triple_zzz.
double commutator_leg_angle(double phase, int splits);

// exp(-i phase O) for the monomial O of `kind`, using the synthesis chosen for its shape.
PulseProgram compile_term(const TermKind& kind, double phase, const AnnealConfig& cfg);

// exp(-i dt (l/N) H_p) as a concatenation of per-monomial programs.
CompiledStep compile_problem_step(int l, const AnnealConfig& cfg);

// exp(-i (1 - l/N) dt H_0): one non-selective X rotation per spin by
// h dt (1 - l/N), scaled by `fraction` (0.5 for the symmetrized halves).
PulseProgram compile_field_step(int l, const AnnealConfig& cfg, double fraction = 1.0);

// Full propagator U_l for l = 0..N in acting order. Each step's program is
// problem-then-field, or half-field/problem/half-field when symmetrized.
std::vector<CompiledStep> compile_anneal(const AnnealConfig& cfg);
CompiledStep compile_anneal_step(int l, const AnnealConfig& cfg);

// Exact target exp(-i dt (l/N) H_p).
Operator27 exact_problem_factor(int l, const AnnealConfig& cfg);

// Spectral-norm errors of the two three-spin sub-programs at step l.
struct ThreeSpinError {
  double zzz = 0.0;
  double zsqzz = 0.0;
  double total() const { return zzz + zsqzz; }
};
ThreeSpinError three_spin_error(int l, const AnnealConfig& cfg);

}  // namespace qanneal
