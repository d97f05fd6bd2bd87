// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.h"
#include "oracles.h"
#include "qanneal/compiler.h"
#include "qanneal/engine.h"

namespace {

using namespace qanneal;

struct Outcome {
  bool passed;
  std::string detail;
};

int g_failures = 0;

void report(int id, const std::string& name, const Outcome& o) {
  std::cout << (o.passed ? "[PASS] " : "[FAIL] ") << id << ". " << name << " :: " << o.detail << std::endl;
  if (!o.passed) ++g_failures;
}

std::string fmt(double v, int digits = 4) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

RunResult run_at(int n, double dt, double h, Propagation p, bool sym = false, int splits = 7) {
  AnnealConfig cfg;
  cfg.n_steps = n;
  cfg.dt = dt;
  cfg.field = h;
  cfg.split_three_spin = splits;
  cfg.mode = {p, sym};
  return run(cfg);
}

const char* name_of(Propagation p) { return p == Propagation::Ideal ? "IDEAL" : "COMPILED"; }

// Mode whose headline fidelity is closest to the reference value; shared by criteria 1-3.
Propagation g_mode = Propagation::Ideal;

Outcome headline() {
  const auto t0 = std::chrono::steady_clock::now();
  const double ri = run_at(10, 0.01, 100, Propagation::Ideal).fidelity;
  const double rc = run_at(10, 0.01, 100, Propagation::Compiled).fidelity;
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  g_mode = std::abs(ri - 0.37) <= std::abs(rc - 0.37) ? Propagation::Ideal : Propagation::Compiled;
  const bool ok = (std::abs(ri - 0.37) <= 0.05 || std::abs(rc - 0.37) <= 0.05) && secs < 10.0;
  return {ok, "R(IDEAL)=" + fmt(ri) + " R(COMPILED)=" + fmt(rc) + " required 0.37+-0.05 in either; closest mode " +
                  name_of(g_mode) + "; runtime " + fmt(secs, 2) + " s"};
}

Outcome tuned_point() {
  const double r = run_at(10, 0.0087, 160, g_mode).fidelity;
  return {std::abs(r - 0.45) <= 0.05, std::string("R(") + name_of(g_mode) + ")=" + fmt(r) + " required 0.45+-0.05"};
}

Outcome symmetrization() {
  const double plain = run_at(10, 0.0087, 160, g_mode).fidelity;
  const double sym = run_at(10, 0.0087, 160, g_mode, true).fidelity;
  return {std::abs(sym - 0.48) <= 0.05 && sym > plain, std::string("mode ") + name_of(g_mode) + ": R(sym)=" +
                                                          fmt(sym) + " R(plain)=" + fmt(plain) +
                                                          " required R(sym)=0.48+-0.05 and R(sym)>R(plain)"};
}

Outcome adiabatic_limit() {
  std::vector<int> ns = {10, 50, 200, 1000};
  std::vector<double> rs;
  for (int n : ns) rs.push_back(run_at(n, 0.01, 100, Propagation::Ideal).fidelity);
  bool increasing = true;
  for (std::size_t i = 1; i < rs.size(); ++i) increasing = increasing && rs[i] > rs[i - 1];
  std::string detail = "dt=0.01 IDEAL:";
  for (std::size_t i = 0; i < ns.size(); ++i) detail += " N=" + std::to_string(ns[i]) + " R=" + fmt(rs[i]);
  bool reached = rs.back() >= 0.9;
  if (!reached) {
    // Extend N as far as is practical and record what happens.
    for (int n : {2000, 5000, 10000, 20000}) {
      const double r = run_at(n, 0.01, 100, Propagation::Ideal).fidelity;
      detail += " | N=" + std::to_string(n) + " R=" + fmt(r);
      if (r >= 0.9) {
        reached = true;
        break;
      }
    }
  }
  detail += increasing ? " (increasing)" : " (not monotone)";
  detail += reached ? "" : " (0.9 never reached)";
  return {increasing && reached, detail};
}

// Exact constructions against independently built diagonal exponentials.
Outcome identity_suite() {
  const CompilerOptions opts;
  const PulseContext ctx{opts.couplings, opts.params};
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> phase_dist(-3.0, 3.0);
  std::vector<double> phases;
  for (int i = 0; i < 6; ++i) phases.push_back(phase_dist(rng));

  const auto mono = [](int pa, int pb, int pc, double w) {
    return oracle::diag_exp(
        [&](int k) {
          return std::pow(oracle::m_of(k, 1), pa) * std::pow(oracle::m_of(k, 2), pb) *
                 std::pow(oracle::m_of(k, 3), pc);
        },
        w);
  };
  const auto pw = [](int site, int power, std::array<int, 3> base = {0, 0, 0}) {
    base[site - 1] += power;
    return base;
  };
  double worst = 0.0;
  int checks = 0;
  const auto check = [&](const PulseProgram& prog, const oracle::M27& target) {
    worst = std::max(worst, max_norm(evaluate_program(prog, ctx) - target));
    ++checks;
  };
  for (double w : phases) {
    for (int s = 1; s <= 3; ++s) {
      const auto l = pw(s, 1);
      const auto q = pw(s, 2);
      check(compile_linear(SiteIndex(s), w), mono(l[0], l[1], l[2], w));
      check(compile_quadratic_single(SiteIndex(s), w), mono(q[0], q[1], q[2], w));
    }
    for (auto [a, b] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 3}}) {
      const auto p = pw(b, 1, pw(a, 1));
      check(compile_pair_zz(SiteIndex(a), SiteIndex(b), w, opts), mono(p[0], p[1], p[2], w));
    }
    for (int a = 1; a <= 3; ++a) {
      for (int b = 1; b <= 3; ++b) {
        if (a == b) continue;
        const auto p = pw(b, 2, pw(a, 1));
        const auto pp = pw(b, 2, pw(a, 2));
        check(compile_pair_z_zsq(SiteIndex(a), SiteIndex(b), w, opts), mono(p[0], p[1], p[2], w));
        check(compile_pair_zsq_zsq(SiteIndex(a), SiteIndex(b), w, opts), mono(pp[0], pp[1], pp[2], w));
      }
    }
  }
  // Inversion: P^dagger Sz P = -Sz for each spin.
  for (int s = 1; s <= 3; ++s) {
    const Operator27 p = evaluate_program(inversion_program(SiteIndex(s)), ctx);
    const oracle::M27 z = oracle::on_site(oracle::sz(), s);
    worst = std::max(worst, max_norm(p.adjoint() * z * p + z));
    ++checks;
  }
  return {worst <= 1e-10, std::to_string(checks) + " matrix identities at " + std::to_string(phases.size()) +
                              " random phases; worst max-norm deviation " + fmt(worst, 3) + " (tol 1e-10)"};
}

double zzz_error(double phase, int splits) {
  const CompilerOptions opts;
  const PulseContext ctx{opts.couplings, opts.params};
  const oracle::M27 target = oracle::diag_exp(
      [](int k) { return oracle::m_of(k, 1) * oracle::m_of(k, 2) * oracle::m_of(k, 3); }, phase);
  return spectral_norm(evaluate_program(compile_triple_zzz(phase, splits, opts), ctx) - target);
}

Outcome three_spin_order() {
  const std::vector<double> bs = {0.4, 0.2, 0.1};
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::string detail = "errors:";
  for (double b : bs) {
    const double e = zzz_error(b * b, 1);
    detail += " b=" + fmt(b, 2) + ":" + fmt(e, 3);
    const double x = std::log(b), y = std::log(e);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(bs.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {slope >= 2.5, detail + "; log-log slope " + fmt(slope) + " (required >= 2.5)"};
}

Outcome split_benefit() {
  // Largest three-spin phase of the default schedule: 96 * dt at l = N.
  const double phase = 96 * 0.01;
  const double e1 = zzz_error(phase, 1);
  const double e7 = zzz_error(phase, 7);
  return {e7 <= e1 / 1.5, "phase " + fmt(phase) + ": error(1)=" + fmt(e1) + " error(7)=" + fmt(e7) + " ratio " +
                              fmt(e1 / e7) + " (required >= 1.5; 1/sqrt(7) scaling gives 2.65)"};
}

Outcome spectrum_oracle() {
  int zeros = 0, mismatches = 0;
  int zero_index = -1;
  for (int k = 0; k < 27; ++k) {
    const int a = oracle::m_of(k, 1), b = oracle::m_of(k, 2), c = oracle::m_of(k, 3);
    const auto e = oracle::expanded_energy(a, b, c);
    if (e != oracle::factoring_energy(a, b, c)) ++mismatches;
    if (e != problem_energy(BasisLabel::from_index(k))) ++mismatches;
    if (e == 0) {
      ++zeros;
      zero_index = k;
    }
  }
  const auto spectrum = problem_spectrum();
  const bool ok = mismatches == 0 && zeros == 1 && zero_index == kTargetIndex && spectrum.front().energy == 0 &&
                  spectrum.front().label == target_label();
  return {ok, std::to_string(mismatches) + " mismatches over 27 states; " + std::to_string(zeros) +
                  " zero-energy state(s) at index " + std::to_string(zero_index) + " (target " +
                  std::to_string(kTargetIndex) + ")"};
}

struct CsvRow {
  double value;
  double r;
};

std::vector<CsvRow> sweep_csv(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  if (cli::run(args, out, err) != 0) throw std::runtime_error("sweep failed: " + err.str());
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);  // header
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    std::vector<std::string> cols;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cols.push_back(c);
    rows.push_back({std::stod(cols.at(1)), std::stod(cols.at(7))});
  }
  return rows;
}

std::size_t argmax(const std::vector<CsvRow>& rows) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].r > rows[best].r) best = i;
  }
  return best;
}

Outcome sweep_shapes() {
  constexpr double kHalfPi = 1.5707963267948966;
  const double dt = 0.01;
  // Field sweep at N = 10, dt = 0.01.
  const auto h_rows = sweep_csv({"sweep", "--axis", "h", "--start", "10", "--stop", "300", "--count", "30", "--mode",
                                 "ideal", "--threads", "0"});
  const std::size_t hp = argmax(h_rows);
  const double peak_angle = h_rows[hp].value * dt;
  bool rises = hp > 0;
  for (std::size_t i = 1; i <= hp; ++i) rises = rises && h_rows[i].r > h_rows[i - 1].r;
  // R at the first field where h dt reaches pi/2 is already below the peak, and keeps falling overall.
  std::size_t quarter = hp;
  while (quarter + 1 < h_rows.size() && h_rows[quarter].value * dt < kHalfPi) ++quarter;
  const bool falls = hp + 1 < h_rows.size() && h_rows[quarter].r < h_rows[hp].r &&
                     h_rows.back().r < 0.5 * h_rows[hp].r;
  const bool h_ok = rises && falls && peak_angle <= kHalfPi;

  // Time-step sweep at N = 10, h = 100.
  const auto d_rows = sweep_csv({"sweep", "--axis", "dt", "--start", "0.001", "--stop", "0.03", "--count", "30",
                                 "--mode", "ideal"});
  const std::size_t dp = argmax(d_rows);
  const double peak = d_rows[dp].r;
  const bool d_ok = dp > 0 && dp + 1 < d_rows.size() && d_rows.front().r < 0.5 * peak && d_rows.back().r < 0.5 * peak;

  std::string detail = "h-sweep: peak R=" + fmt(h_rows[hp].r) + " at h=" + fmt(h_rows[hp].value) +
                       " (h dt=" + fmt(peak_angle) + " <= pi/2), monotone rise " + (rises ? "yes" : "no") +
                       ", R(h dt~pi/2)=" + fmt(h_rows[quarter].r) + ", R(h=300)=" + fmt(h_rows.back().r) +
                       "; dt-sweep: peak R=" + fmt(peak) + " at dt=" + fmt(d_rows[dp].value) +
                       ", R(dt=0.001)=" + fmt(d_rows.front().r) + ", R(dt=0.03)=" + fmt(d_rows.back().r);
  return {h_ok && d_ok, detail};
}

Outcome mode_gap() {
  AnnealConfig cfg;
  const StateVector ideal = run(cfg, RunMode{Propagation::Ideal, false}).final_state;
  const StateVector c7 = run(cfg, RunMode{Propagation::Compiled, false}).final_state;
  cfg.split_three_spin = 21;
  const StateVector c21 = run(cfg, RunMode{Propagation::Compiled, false}).final_state;
  cfg.split_three_spin = 7;
  double max_step = 0.0;
  for (int l = 0; l <= cfg.n_steps; ++l) max_step = std::max(max_step, three_spin_error(l, cfg).total());
  const double gap7 = (c7 - ideal).norm();
  const double gap21 = (c21 - ideal).norm();
  const double bound = cfg.n_steps * max_step;
  return {gap7 <= bound && gap21 < gap7, "gap(splits=7)=" + fmt(gap7) + " <= N*max per-step error=" + fmt(bound) +
                                             "; gap(splits=21)=" + fmt(gap21)};
}

}  // namespace

int main() {
  report(1, "headline fidelity N=10 dt=0.01 h=100", headline());
  report(2, "tuned point dt=0.0087 h=160", tuned_point());
  report(3, "symmetrization gain at tuned point", symmetrization());
  report(4, "adiabatic limit at dt=0.01", adiabatic_limit());
  report(5, "exact identity suite", identity_suite());
  report(6, "three-spin construction is third order", three_spin_order());
  report(7, "seven-fold split reduces three-spin error", split_benefit());
  report(8, "spectrum oracle (15 - pq)^2", spectrum_oracle());
  report(9, "field and time-step sweep shapes", sweep_shapes());
  report(10, "compiled/ideal gap bounded by three-spin error", mode_gap());
  std::cout << (g_failures == 0 ? "all acceptance criteria passed" : std::to_string(g_failures) + " criteria failed")
            << std::endl;
  return g_failures == 0 ? 0 : 1;
}
