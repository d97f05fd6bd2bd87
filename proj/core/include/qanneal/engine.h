#pragma once

// Time-ordered propagation of the annealing schedule and the fidelity of the
// final state with the factoring solution |1, -1, 1>.

#include <optional>
#include <string>
#include <vector>

#include "qanneal/hamiltonians.h"

namespace qanneal {

struct RunResult {
  double fidelity = 0.0;
  StateVector final_state;
  AnnealConfig config_echo;
  RunMode mode;
  // Fidelity after each U_l, l = 0..N, when requested.
  std::optional<std::vector<double>> per_step_overlap;
};

struct RunOptions {
  bool record_overlaps = false;
};

// Product of the +1 eigenvectors of S_j^x, (1/2, 1/sqrt 2, 1/2) per spin.
StateVector initial_state();

// |<target|psi>|^2 for the solution state.
double fidelity(const StateVector& state);

// Applies U_0, U_1, ..., U_N to initial_state(). Throws NumericalError if the
// final norm deviates from 1 by more than 1e-8.
RunResult run(const AnnealConfig& cfg, const RunOptions& options = {});
RunResult run(AnnealConfig cfg, RunMode mode, const RunOptions& options = {});

enum class SweepAxis { Steps, Dt, Field };

std::string to_string(SweepAxis axis);
SweepAxis parse_sweep_axis(const std::string& text);

// Copy of `base` with the swept parameter set to `value` (rounded for N).
AnnealConfig with_axis_value(const AnnealConfig& base, SweepAxis axis, double value);

struct SweepPoint {
  double value = 0.0;
  std::optional<RunResult> result;
  // Set when the run failed; result is empty then.
  std::string error;
};

// One independent run per value, results in input order. Runs are spread
// over `threads` workers (0 picks the hardware concurrency).
std::vector<SweepPoint> run_sweep(const AnnealConfig& base, SweepAxis axis, const std::vector<double>& values,
                                  RunMode mode, unsigned threads = 0);

}  // namespace qanneal
