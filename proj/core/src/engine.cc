#include "qanneal/engine.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "qanneal/compiler.h"
#include "qanneal/pulses.h"

namespace qanneal {

StateVector initial_state() {
  const double r = 1.0 / std::sqrt(2.0);
  const double single[3] = {0.5, r, 0.5};
  StateVector psi;
  for (int k = 0; k < kDim; ++k) psi(k) = single[k / 9] * single[(k / 3) % 3] * single[k % 3];
  return psi;
}

double fidelity(const StateVector& state) { return std::norm(state(kTargetIndex)); }

RunResult run(const AnnealConfig& cfg, const RunOptions& options) {
  cfg.validate();
  const PulseContext ctx{cfg.couplings, cfg.params};
  const Operator27 h0 = h_field(cfg.field);
  const Operator27 hp = h_problem();
  const int n = cfg.n_steps;

  StateVector psi = initial_state();
  std::vector<double> overlaps;
  for (int l = 0; l <= n; ++l) {
    const double s = static_cast<double>(l) / n;
    if (cfg.mode.propagation == Propagation::Compiled) {
      apply_program(compile_anneal_step(l, cfg).program, ctx, psi);
    } else {
      const double field_time = (1.0 - s) * cfg.dt;
      const Operator27 problem = matrix_exp(hp, Complex(0.0, -s * cfg.dt));
      if (cfg.mode.symmetrized) {
        const Operator27 half = matrix_exp(h0, Complex(0.0, -0.5 * field_time));
        psi = half * (problem * (half * psi)).eval();
      } else {
        psi = matrix_exp(h0, Complex(0.0, -field_time)) * (problem * psi).eval();
      }
    }
    if (options.record_overlaps) overlaps.push_back(fidelity(psi));
  }

  const double norm = psi.norm();
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > 1e-8) {
    throw NumericalError("final state norm " + std::to_string(norm) + " deviates from 1");
  }
  RunResult result;
  result.fidelity = fidelity(psi);
  result.final_state = psi;
  result.config_echo = cfg;
  result.mode = cfg.mode;
  if (options.record_overlaps) result.per_step_overlap = std::move(overlaps);
  return result;
}

RunResult run(AnnealConfig cfg, RunMode mode, const RunOptions& options) {
  cfg.mode = mode;
  return run(cfg, options);
}

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Steps: return "N";
    case SweepAxis::Dt: return "dt";
    case SweepAxis::Field: return "h";
  }
  return "?";
}

SweepAxis parse_sweep_axis(const std::string& text) {
  if (text == "N" || text == "n" || text == "steps") return SweepAxis::Steps;
  if (text == "dt") return SweepAxis::Dt;
  if (text == "h" || text == "field") return SweepAxis::Field;
  throw std::invalid_argument("unknown sweep axis '" + text + "' (expected N, dt or h)");
}

AnnealConfig with_axis_value(const AnnealConfig& base, SweepAxis axis, double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("sweep value must be finite");
  AnnealConfig cfg = base;
  switch (axis) {
    case SweepAxis::Steps: cfg.n_steps = static_cast<int>(std::lround(value)); break;
    case SweepAxis::Dt: cfg.dt = value; break;
    case SweepAxis::Field: cfg.field = value; break;
  }
  return cfg;
}

std::vector<SweepPoint> run_sweep(const AnnealConfig& base, SweepAxis axis, const std::vector<double>& values,
                                  RunMode mode, unsigned threads) {
  if (values.empty()) throw std::invalid_argument("sweep needs at least one value");
  std::vector<SweepPoint> points(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) points[i].value = values[i];

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        points[i].result = run(with_axis_value(base, axis, values[i]), mode);
      } catch (const std::exception& e) {
        points[i].error = e.what();
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(points.size()));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  return points;
}

}  // namespace qanneal
