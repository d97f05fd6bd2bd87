#pragma once

// Hamiltonians of the three-qutrit annealer and the ternary encoding of the
// factoring problem 15 = p*q with p = 6*m1 + 2*m2 + 1 and q = 2*m3 + 1.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qanneal/spinops.h"

namespace qanneal {

// Resonance frequencies and crystal-field constants of the three spins, in
// the same dimensionless units as the couplings.
struct SystemParams {
  std::array<double, 3> omega{2000.0, 4000.0, 6000.0};
  std::array<double, 3> q{400.0, 500.0, 600.0};
};

// Dipole-dipole constants J_ij.
struct Couplings {
  double j12 = 24.0;
  double j13 = 312.0;
  double j23 = 104.0;

  double between(SiteIndex a, SiteIndex b) const;
};

enum class FreeEvolutionModel { DdiOnly, Full };

enum class Propagation { Ideal, Compiled };

struct RunMode {
  Propagation propagation = Propagation::Compiled;
  bool symmetrized = false;

  friend bool operator==(const RunMode&, const RunMode&) = default;
};

std::string to_string(RunMode mode);
std::string to_string(FreeEvolutionModel model);

struct AnnealConfig {
  int n_steps = 10;
  double dt = 0.01;
  double field = 100.0;
  Couplings couplings;
  SystemParams params;
  RunMode mode;
  int split_three_spin = 7;
  FreeEvolutionModel model = FreeEvolutionModel::DdiOnly;

  double total_time() const { return n_steps * dt; }
  // Throws std::invalid_argument on N < 1, dt <= 0, splits < 1 or non-finite values.
  void validate() const;
};

// Computational basis label |m1, m2, m3>, each m in {1, 0, -1}.
struct BasisLabel {
  int m1 = 0, m2 = 0, m3 = 0;

  int index() const;
  static BasisLabel from_index(int index);
  int factor_p() const { return 6 * m1 + 2 * m2 + 1; }
  int factor_q() const { return 2 * m3 + 1; }
  std::string str() const;

  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

// The solution state p = 5, q = 3.
inline constexpr int kTargetIndex = 6;  // |1, -1, 1>
BasisLabel target_label();

// Single-spin Zeeman plus crystal-field part, constant shifts included.
Operator27 h_single(const SystemParams& params);
Operator27 h_dipolar(const Couplings& c);
// Transverse field -h * sum_j S_j^x.
Operator27 h_field(double h);
// (15 - p*q)^2 on the diagonal.
Operator27 h_problem();
std::int64_t problem_energy(const BasisLabel& label);
// (1 - l/N) * h_field + (l/N) * h_problem.
Operator27 h_total(int l, const AnnealConfig& cfg);

struct SpectrumEntry {
  BasisLabel label;
  std::int64_t energy;
};

// All 27 problem energies, ascending; ties keep basis order.
std::vector<SpectrumEntry> problem_spectrum();

// Smallest separation between any two distinct single-spin transition
// frequencies, compared against the largest |J|. Returns human-readable
// warnings when selective addressing is doubtful; never throws.
std::vector<std::string> selective_control_warnings(const SystemParams& params, const Couplings& c);

}  // namespace qanneal
