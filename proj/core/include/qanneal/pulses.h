#pragma once

// Pulse-level instruction set for the three-qutrit register and its
// evaluator.
//
// A PulseProgram lists primitives in the order they act on the state: the
// first step is the rightmost factor of the operator product.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qanneal/hamiltonians.h"
#include "qanneal/spinops.h"

namespace qanneal {

enum class Transition { T12, T23 };

std::string to_string(Transition t);

// Rotation by `angle` on the two levels of one transition of one spin.
struct SelectiveRotation {
  SiteIndex site{1};
  Transition transition = Transition::T12;
  SpinAxis axis = SpinAxis::Z;
  double angle = 0.0;

  friend bool operator==(const SelectiveRotation&, const SelectiveRotation&) = default;
};

// exp(-i * angle * S^axis) on one spin.
struct NonSelectiveRotation {
  SiteIndex site{1};
  SpinAxis axis = SpinAxis::X;
  double angle = 0.0;

  friend bool operator==(const NonSelectiveRotation&, const NonSelectiveRotation&) = default;
};

// exp(-i * duration * H) with H = H_d (DdiOnly) or H_1 + H_d (Full). Negative
// durations are allowed.
struct FreeEvolution {
  double duration = 0.0;
  FreeEvolutionModel model = FreeEvolutionModel::DdiOnly;

  friend bool operator==(const FreeEvolution&, const FreeEvolution&) = default;
};

// Scalar factor exp(i * angle).
struct GlobalPhase {
  double angle = 0.0;

  friend bool operator==(const GlobalPhase&, const GlobalPhase&) = default;
};

using PulsePrimitive = std::variant<SelectiveRotation, NonSelectiveRotation, FreeEvolution, GlobalPhase>;

struct PulseProgram {
  std::string label;
  std::vector<PulsePrimitive> steps;

  void append(const PulsePrimitive& p) { steps.push_back(p); }
  void append(const PulseProgram& other) { steps.insert(steps.end(), other.steps.begin(), other.steps.end()); }
  // The program whose evaluation is the adjoint of this one.
  PulseProgram inverse() const;
  bool empty() const { return steps.empty(); }

  friend bool operator==(const PulseProgram&, const PulseProgram&) = default;
};

// Environment a program is evaluated in.
struct PulseContext {
  Couplings couplings;
  SystemParams params;
};

// 3x3 selective rotation matrix on the chosen two levels.
SpinMatrix selective_rotation_local(const SelectiveRotation& p);
Operator27 selective_rotation_matrix(const SelectiveRotation& p);
Operator27 nonselective_rotation_matrix(SiteIndex site, SpinAxis axis, double angle);
Operator27 free_evolution_matrix(double duration, FreeEvolutionModel model, const Couplings& c,
                                 const SystemParams& params);
Operator27 primitive_matrix(const PulsePrimitive& p, const PulseContext& ctx);

// Composite {pi}y12 {pi}y23 {pi}y12 on one spin; its unitary P satisfies
// P^dagger S^z P = -S^z.
PulseProgram inversion_program(SiteIndex site);

Operator27 evaluate_program(const PulseProgram& prog, const PulseContext& ctx);
// Same product applied directly to a state.
void apply_program(const PulseProgram& prog, const PulseContext& ctx, StateVector& state);

// Common period T of exp(-i t H) for a diagonal H: the smallest T > 0 with
// exp(-i T H) a pure global phase. Empty when the level spacings are not
// commensurate within `tol`.
std::optional<double> common_period(const Operator27& diagonal_h, double tol = 1e-9);

// Rewrites every negative free-evolution duration t as t + k*T >= 0, with T
// the common period of the relevant free Hamiltonian, and appends the
// GlobalPhase that keeps the evaluated unitary unchanged. Throws
// NumericalError when no common period exists.
PulseProgram physical_view(const PulseProgram& prog, const PulseContext& ctx);

}  // namespace qanneal
