#include "qanneal/verification.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "qanneal/compiler.h"
#include "qanneal/pulses.h"

namespace qanneal {

namespace {

Operator27 exp_diag(const Operator27& op, double phase) { return matrix_exp(op, Complex(0.0, -phase)); }

Operator27 z_power(SiteIndex s, int power) {
  SpinMatrix z = spin_matrix(SpinAxis::Z);
  if (power == 2) z = z * z;
  return embed(z, s);
}

// Worst max-norm deviation of `build(phase)` from `target(phase)` over the probes.
CheckRow exact_row(const std::string& name, const VerifyOptions& opt, double magnitude,
                   const std::function<Operator27(double)>& build, const std::function<Operator27(double)>& target) {
  double worst = 0.0;
  for (double phase : probe_phases(opt.samples, magnitude)) {
    worst = std::max(worst, max_norm(build(phase) - target(phase)));
  }
  std::ostringstream detail;
  detail << opt.samples << " phases in [-" << magnitude << ", " << magnitude << "]";
  return {name, worst < opt.tol, worst, opt.tol, detail.str()};
}

const std::pair<int, int> kOrderedPairs[] = {{1, 2}, {2, 1}, {1, 3}, {3, 1}, {2, 3}, {3, 2}};

}  // namespace

std::vector<double> probe_phases(int count, double magnitude) {
  // Golden-ratio sequence; avoids hitting special angles like 0 or pi.
  constexpr double kGolden = 0.6180339887498949;
  std::vector<double> out;
  out.reserve(count);
  for (int k = 1; k <= count; ++k) {
    const double u = std::fmod(k * kGolden, 1.0);
    out.push_back(magnitude * (2.0 * u - 1.0));
  }
  return out;
}

double loglog_slope(const std::vector<double>& b, const std::vector<double>& err) {
  const std::size_t n = b.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(b[i]);
    const double y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<CheckRow> run_identity_suite(const VerifyOptions& opt) {
  const CompilerOptions copts;
  const PulseContext ctx{copts.couplings, copts.params};
  const auto eval = [&](const PulseProgram& p) { return evaluate_program(p, ctx); };
  std::vector<CheckRow> rows;

  for (int k = 1; k <= 3; ++k) {
    const SiteIndex s(k);
    rows.push_back(exact_row(
        "linear exp(-i W S" + std::to_string(k) + "z)", opt, 3.0,
        [&](double w) { return eval(compile_linear(s, w)); }, [&](double w) { return exp_diag(z_power(s, 1), w); }));
  }
  for (int k = 1; k <= 3; ++k) {
    const SiteIndex s(k);
    rows.push_back(exact_row(
        "quadratic exp(-i 3phi S" + std::to_string(k) + "z^2)", opt, 3.0,
        [&](double w) { return eval(compile_quadratic_single(s, w)); },
        [&](double w) { return exp_diag(z_power(s, 2), w); }));
  }
  for (int k = 1; k <= 3; ++k) {
    const SiteIndex s(k);
    const Operator27 p = eval(inversion_program(s));
    const Operator27 z = z_power(s, 1);
    const double dev = max_norm(p.adjoint() * z * p + z);
    rows.push_back({"inversion P" + std::to_string(k) + "^-1 S" + std::to_string(k) + "z P = -S" +
                        std::to_string(k) + "z",
                    dev < opt.tol, dev, opt.tol, "conjugation"});
  }
  for (auto [a, b] : {std::pair{2, 3}, std::pair{1, 3}, std::pair{1, 2}}) {
    const SiteIndex p(a), q(b);
    const std::string name = "pair exp(-i W S" + std::to_string(a) + "z S" + std::to_string(b) + "z)" +
                             (a == 1 && b == 2 ? " [two inversions]" : " [spectator inversion]");
    rows.push_back(exact_row(
        name, opt, 3.0, [&](double w) { return eval(compile_pair_zz(p, q, w, copts)); },
        [&](double w) { return exp_diag(z_power(p, 1) * z_power(q, 1), w); }));
  }
  for (auto [a, b] : kOrderedPairs) {
    const SiteIndex p(a), q(b);
    rows.push_back(exact_row(
        "squaring exp(-i 3tJ S" + std::to_string(a) + "z S" + std::to_string(b) + "z^2)", opt, 3.0,
        [&](double w) { return eval(compile_pair_z_zsq(p, q, w, copts)); },
        [&](double w) { return exp_diag(z_power(p, 1) * z_power(q, 2), w); }));
  }
  for (auto [a, b] : kOrderedPairs) {
    const SiteIndex p(a), q(b);
    rows.push_back(exact_row(
        "double squaring exp(-i W S" + std::to_string(a) + "z^2 S" + std::to_string(b) + "z^2)", opt, 3.0,
        [&](double w) { return eval(compile_pair_zsq_zsq(p, q, w, copts)); },
        [&](double w) { return exp_diag(z_power(p, 2) * z_power(q, 2), w); }));
  }
  {
    AnnealConfig cfg;
    cfg.n_steps = 10;
    double worst = 0.0;
    for (int l = 0; l <= cfg.n_steps; ++l) {
      const Operator27 target = matrix_exp(h_field(cfg.field), Complex(0.0, -(1.0 - l / 10.0) * cfg.dt));
      worst = std::max(worst, max_norm(eval(compile_field_step(l, cfg)) - target));
    }
    rows.push_back({"field step = exp(-i (1-l/N) dt H0)", worst < opt.tol, worst, opt.tol, "l = 0..10, h=100, dt=0.01"});
  }
  {
    // Problem step with the two commutator-built terms removed is exact.
    AnnealConfig cfg;
    cfg.split_three_spin = 7;
    double worst = 0.0;
    for (int l = 0; l <= cfg.n_steps; ++l) {
      const double s = cfg.dt * l / cfg.n_steps;
      Operator27 exact_sum = Operator27::Zero();
      Operator27 compiled = Operator27::Identity();
      for (const auto& term : problem_terms()) {
        if (term.kind.shape == TermShape::TripleZZZ || term.kind.shape == TermShape::TripleZsqZZ) continue;
        exact_sum += static_cast<double>(term.coefficient) * term_operator(term.kind);
        compiled = eval(compile_term(term.kind, term.coefficient * s, cfg)) * compiled;
      }
      worst = std::max(worst, max_norm(compiled - exp_diag(exact_sum, s)));
    }
    rows.push_back({"problem step minus three-spin terms is exact", worst < opt.tol, worst, opt.tol,
                    "l = 0..10, N=10, dt=0.01"});
  }
  {
    // Third-order remainder of the commutator sandwich.
    const std::vector<double> bs = {0.4, 0.2, 0.1};
    std::vector<double> errs, errs_sq;
    const Operator27 zzz = z_power(SiteIndex(1), 1) * z_power(SiteIndex(2), 1) * z_power(SiteIndex(3), 1);
    const Operator27 zsqzz = zzz * z_power(SiteIndex(3), 1);
    for (double b : bs) {
      const double phase = b * b;
      errs.push_back(spectral_norm(eval(compile_triple_zzz(phase, 1, copts)) - exp_diag(zzz, phase)));
      errs_sq.push_back(
          spectral_norm(eval(compile_triple_zsqzz(3.0 * phase, 1, copts)) - exp_diag(zsqzz, 3.0 * phase)));
    }
    const double slope = loglog_slope(bs, errs);
    const double slope_sq = loglog_slope(bs, errs_sq);
    std::ostringstream d1, d2;
    d1 << "errors " << errs[0] << ", " << errs[1] << ", " << errs[2] << " at b = 0.4, 0.2, 0.1";
    d2 << "errors " << errs_sq[0] << ", " << errs_sq[1] << ", " << errs_sq[2] << " at b = 0.4, 0.2, 0.1";
    rows.push_back({"three-spin S1z S2z S3z error order (log-log slope)", slope >= 2.5, slope, 2.5, d1.str()});
    rows.push_back({"three-spin S1z S2z S3z^2 error order (log-log slope)", slope_sq >= 2.5, slope_sq, 2.5, d2.str()});
  }
  {
    // Seven-fold splitting at the largest phase of the default schedule.
    const double phase = 96.0 * 0.01;
    const Operator27 zzz = z_power(SiteIndex(1), 1) * z_power(SiteIndex(2), 1) * z_power(SiteIndex(3), 1);
    const double e1 = spectral_norm(eval(compile_triple_zzz(phase, 1, copts)) - exp_diag(zzz, phase));
    const double e7 = spectral_norm(eval(compile_triple_zzz(phase, 7, copts)) - exp_diag(zzz, phase));
    std::ostringstream d;
    d << "error(1 split) = " << e1 << ", error(7 splits) = " << e7;
    rows.push_back({"seven-fold split reduces three-spin error (ratio)", e1 / e7 >= 1.5, e1 / e7, 1.5, d.str()});
  }
  {
    // Full free-evolution model with refocusing pulses matches the dipolar-only model.
    CompilerOptions full = copts;
    full.model = FreeEvolutionModel::Full;
    rows.push_back(exact_row(
        "full-model intervals with refocusing = dipolar-only", opt, 3.0,
        [&](double w) { return eval(compile_pair_z_zsq(SiteIndex(3), SiteIndex(2), w, full)); },
        [&](double w) { return eval(compile_pair_z_zsq(SiteIndex(3), SiteIndex(2), w, copts)); }));
  }
  {
    AnnealConfig cfg;
    double worst = 0.0;
    for (int l : {1, 5, 10}) {
      const PulseProgram prog = compile_problem_step(l, cfg).program;
      worst = std::max(worst, max_norm(eval(physical_view(prog, ctx)) - eval(prog)));
    }
    rows.push_back({"physical view (nonnegative intervals) preserves the unitary", worst < 1e-9, worst, 1e-9,
                    "problem steps l = 1, 5, 10"});
  }
  return rows;
}

}  // namespace qanneal
