#include "qanneal/pulses.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qanneal {

namespace {

using Diagonal = Eigen::Matrix<double, kDim, 1>;

Diagonal free_diagonal(FreeEvolutionModel model, const PulseContext& ctx) {
  Operator27 h = h_dipolar(ctx.couplings);
  if (model == FreeEvolutionModel::Full) h += h_single(ctx.params);
  return h.diagonal().real();
}

SpinMatrix nonselective_local(SpinAxis axis, double angle) {
  // exp(-i angle S) via the 3x3 eigendecomposition of the Hermitian generator.
  Eigen::SelfAdjointEigenSolver<SpinMatrix> eig(spin_matrix(axis));
  Eigen::Matrix<Complex, 3, 1> phases;
  for (int k = 0; k < 3; ++k) phases(k) = std::polar(1.0, -angle * eig.eigenvalues()(k));
  return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

// Lazily built diagonals of the free Hamiltonians, shared by one evaluation.
class FreeDiagonals {
 public:
  explicit FreeDiagonals(const PulseContext& ctx) : ctx_(ctx) {}

  const Diagonal& get(FreeEvolutionModel model) {
    auto& slot = model == FreeEvolutionModel::DdiOnly ? ddi_ : full_;
    if (!slot) slot = free_diagonal(model, ctx_);
    return *slot;
  }

 private:
  const PulseContext& ctx_;
  std::optional<Diagonal> ddi_, full_;
};

template <typename Target>
void apply_primitive(const PulsePrimitive& prim, FreeDiagonals& diagonals, Target& target) {
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SelectiveRotation>) {
          apply_local(selective_rotation_local(p), p.site, target);
        } else if constexpr (std::is_same_v<T, NonSelectiveRotation>) {
          apply_local(nonselective_local(p.axis, p.angle), p.site, target);
        } else if constexpr (std::is_same_v<T, FreeEvolution>) {
          if (!std::isfinite(p.duration)) throw NumericalError("free evolution duration is not finite");
          const Diagonal& d = diagonals.get(p.model);
          for (int k = 0; k < kDim; ++k) target.row(k) *= std::polar(1.0, -p.duration * d(k));
        } else {
          if (!std::isfinite(p.angle)) throw NumericalError("global phase is not finite");
          target *= std::polar(1.0, p.angle);
        }
      },
      prim);
}

}  // namespace

std::string to_string(Transition t) { return t == Transition::T12 ? "12" : "23"; }

PulseProgram PulseProgram::inverse() const {
  PulseProgram out;
  out.label = label.empty() ? std::string{} : label + "^-1";
  out.steps.reserve(steps.size());
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    std::visit(
        [&](auto p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, FreeEvolution>) {
            p.duration = -p.duration;
          } else {
            p.angle = -p.angle;
          }
          out.steps.emplace_back(p);
        },
        *it);
  }
  return out;
}

SpinMatrix selective_rotation_local(const SelectiveRotation& p) {
  if (!std::isfinite(p.angle)) throw NumericalError("selective rotation angle is not finite");
  const int lo = p.transition == Transition::T12 ? 0 : 1;
  const int hi = lo + 1;
  const double c = std::cos(p.angle / 2.0);
  const double s = std::sin(p.angle / 2.0);
  const Complex i(0.0, 1.0);
  SpinMatrix m = SpinMatrix::Identity();
  switch (p.axis) {
    case SpinAxis::Z:
      m(lo, lo) = std::polar(1.0, -p.angle / 2.0);
      m(hi, hi) = std::polar(1.0, p.angle / 2.0);
      break;
    case SpinAxis::Y:
      m(lo, lo) = c;
      m(lo, hi) = -s;
      m(hi, lo) = s;
      m(hi, hi) = c;
      break;
    case SpinAxis::X:
      m(lo, lo) = c;
      m(lo, hi) = -i * s;
      m(hi, lo) = -i * s;
      m(hi, hi) = c;
      break;
  }
  return m;
}

Operator27 selective_rotation_matrix(const SelectiveRotation& p) {
  return embed(selective_rotation_local(p), p.site);
}

Operator27 nonselective_rotation_matrix(SiteIndex site, SpinAxis axis, double angle) {
  if (!std::isfinite(angle)) throw NumericalError("rotation angle is not finite");
  return embed(nonselective_local(axis, angle), site);
}

Operator27 free_evolution_matrix(double duration, FreeEvolutionModel model, const Couplings& c,
                                 const SystemParams& params) {
  Operator27 h = h_dipolar(c);
  if (model == FreeEvolutionModel::Full) h += h_single(params);
  return matrix_exp(h, Complex(0.0, -duration));
}

Operator27 primitive_matrix(const PulsePrimitive& p, const PulseContext& ctx) {
  Operator27 out = Operator27::Identity();
  FreeDiagonals diagonals(ctx);
  apply_primitive(p, diagonals, out);
  return out;
}

PulseProgram inversion_program(SiteIndex site) {
  constexpr double pi = std::numbers::pi;
  PulseProgram prog;
  prog.label = "P" + std::to_string(site.value());
  prog.append(SelectiveRotation{site, Transition::T12, SpinAxis::Y, pi});
  prog.append(SelectiveRotation{site, Transition::T23, SpinAxis::Y, pi});
  prog.append(SelectiveRotation{site, Transition::T12, SpinAxis::Y, pi});
  return prog;
}

Operator27 evaluate_program(const PulseProgram& prog, const PulseContext& ctx) {
  Operator27 u = Operator27::Identity();
  FreeDiagonals diagonals(ctx);
  for (const auto& step : prog.steps) apply_primitive(step, diagonals, u);
  return u;
}

void apply_program(const PulseProgram& prog, const PulseContext& ctx, StateVector& state) {
  FreeDiagonals diagonals(ctx);
  for (const auto& step : prog.steps) apply_primitive(step, diagonals, state);
}

std::optional<double> common_period(const Operator27& diagonal_h, double tol) {
  const Diagonal d = diagonal_h.diagonal().real();
  std::vector<double> gaps;
  for (int k = 1; k < kDim; ++k) {
    const double g = std::abs(d(k) - d(0));
    if (g > tol) gaps.push_back(g);
  }
  if (gaps.empty()) return 0.0;
  const double smallest = *std::min_element(gaps.begin(), gaps.end());
  constexpr int kMaxDenominator = 1000;
  for (int k = 1; k <= kMaxDenominator; ++k) {
    const double unit = smallest / k;
    bool commensurate = true;
    for (double g : gaps) {
      const double ratio = g / unit;
      if (std::abs(ratio - std::round(ratio)) > tol * std::max(1.0, ratio)) {
        commensurate = false;
        break;
      }
    }
    if (commensurate) return 2.0 * std::numbers::pi / unit;
  }
  return std::nullopt;
}

PulseProgram physical_view(const PulseProgram& prog, const PulseContext& ctx) {
  PulseProgram out;
  out.label = prog.label;
  for (const auto& step : prog.steps) {
    const auto* free = std::get_if<FreeEvolution>(&step);
    if (free == nullptr || free->duration >= 0.0) {
      out.append(step);
      continue;
    }
    Operator27 h = h_dipolar(ctx.couplings);
    if (free->model == FreeEvolutionModel::Full) h += h_single(ctx.params);
    const auto period = common_period(h);
    if (!period) throw NumericalError("free Hamiltonian has no common period; cannot realize a negative interval");
    const double e0 = h(0, 0).real();
    if (*period == 0.0) {
      // Scalar Hamiltonian: the whole interval is a global phase.
      out.append(GlobalPhase{std::remainder(-free->duration * e0, 2.0 * std::numbers::pi)});
      continue;
    }
    const double k = std::ceil(-free->duration / *period);
    out.append(FreeEvolution{free->duration + k * *period, free->model});
    // exp(-i t H) = exp(-i (t + kT) H) * exp(i k T E0).
    const double turns = k * e0 * (*period / (2.0 * std::numbers::pi));
    out.append(GlobalPhase{2.0 * std::numbers::pi * (turns - std::round(turns))});
  }
  return out;
}

}  // namespace qanneal
