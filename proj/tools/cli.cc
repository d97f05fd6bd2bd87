#include "cli.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <memory>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qanneal/compiler.h"
#include "qanneal/engine.h"
#include "qanneal/pulse_io.h"
#include "qanneal/verification.h"

namespace qanneal::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string sig(double value, int digits) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

struct CommonFlags {
  int steps = 10;
  double dt = 0.01;
  double field = 100.0;
  std::string mode = "compiled";
  bool symmetrized = false;
  int splits = 7;
  std::string model = "ddi";
  bool json = false;
  std::string out_file;

  void attach(CLI::App& app, bool with_mode = true) {
    app.add_option("-N,--steps", steps, "Number of time steps N")->capture_default_str();
    app.add_option("--dt", dt, "Time step")->capture_default_str();
    app.add_option("--field,--h-field", field, "Transverse field h")->capture_default_str();
    if (with_mode) {
      app.add_option("--mode", mode, "Propagation mode")
          ->check(CLI::IsMember({"ideal", "compiled"}))
          ->capture_default_str();
      app.add_flag("--symmetrized", symmetrized, "Half-field / problem / half-field step");
    }
    app.add_option("--splits", splits, "Repetitions of the three-spin commutator")->capture_default_str();
    app.add_option("--model", model, "Free-evolution model")
        ->check(CLI::IsMember({"ddi", "full"}))
        ->capture_default_str();
    app.add_flag("--json", json, "Structured output");
    app.add_option("--out", out_file, "Write the main output to FILE");
  }

  AnnealConfig config() const {
    AnnealConfig cfg;
    cfg.n_steps = steps;
    cfg.dt = dt;
    cfg.field = field;
    cfg.split_three_spin = splits;
    cfg.model = model == "full" ? FreeEvolutionModel::Full : FreeEvolutionModel::DdiOnly;
    cfg.mode.propagation = mode == "ideal" ? Propagation::Ideal : Propagation::Compiled;
    cfg.mode.symmetrized = symmetrized;
    try {
      cfg.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return cfg;
  }
};

// Writes to --out when given, otherwise to the command's stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot open output file '" + path + "'");
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

json config_json(const AnnealConfig& cfg) {
  return {{"N", cfg.n_steps},
          {"dt", cfg.dt},
          {"h", cfg.field},
          {"T", cfg.total_time()},
          {"splits", cfg.split_three_spin},
          {"model", to_string(cfg.model)},
          {"couplings", {{"J12", cfg.couplings.j12}, {"J13", cfg.couplings.j13}, {"J23", cfg.couplings.j23}}},
          {"omega", cfg.params.omega},
          {"q", cfg.params.q}};
}

void warn_params(const AnnealConfig& cfg, std::ostream& err) {
  for (const auto& w : selective_control_warnings(cfg.params, cfg.couplings)) err << "warning: " << w << '\n';
}

// ---------------------------------------------------------------------------
// anneal

int cmd_anneal(const CommonFlags& flags, std::ostream& out, std::ostream& err) {
  const AnnealConfig cfg = flags.config();
  warn_params(cfg, err);
  const RunResult result = run(cfg);
  Sink sink(flags.out_file, out);
  std::ostream& os = sink.get();

  if (flags.json) {
    json amps = json::array();
    for (int k = 0; k < kDim; ++k) {
      const BasisLabel b = BasisLabel::from_index(k);
      const Complex c = result.final_state(k);
      amps.push_back({{"m1", b.m1},
                      {"m2", b.m2},
                      {"m3", b.m3},
                      {"re", c.real()},
                      {"im", c.imag()},
                      {"probability", std::norm(c)},
                      {"phase", std::arg(c)}});
    }
    json doc = {{"fidelity", result.fidelity},
                {"target", target_label().str()},
                {"mode", to_string(result.mode)},
                {"config", config_json(result.config_echo)},
                {"final_norm", result.final_state.norm()},
                {"amplitudes", std::move(amps)}};
    os << doc.dump(2) << '\n';
    return kExitOk;
  }

  os << "fidelity R = |C(1,-1,1)|^2 = " << sig(result.fidelity, 12) << '\n';
  os << "mode        " << to_string(result.mode) << '\n';
  os << "config      N=" << cfg.n_steps << " dt=" << sig(cfg.dt, 12) << " h=" << sig(cfg.field, 12)
     << " T=" << sig(cfg.total_time(), 12) << " splits=" << cfg.split_three_spin << " model=" << to_string(cfg.model)
     << '\n';
  os << "couplings   J12=" << cfg.couplings.j12 << " J13=" << cfg.couplings.j13 << " J23=" << cfg.couplings.j23
     << '\n';
  os << "final norm  " << sig(result.final_state.norm(), 15) << '\n';
  os << "\n  m1  m2  m3   |C|^2            phase\n";
  for (int k = 0; k < kDim; ++k) {
    const BasisLabel b = BasisLabel::from_index(k);
    const Complex c = result.final_state(k);
    os << std::setw(4) << b.m1 << std::setw(4) << b.m2 << std::setw(4) << b.m3 << "   " << std::left
       << std::setw(16) << sig(std::norm(c), 10) << ' ' << sig(std::arg(c), 10) << std::right
       << (k == kTargetIndex ? "   <- p=5, q=3" : "") << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepSpec {
  std::string axis = "h";
  double start = 0.0;
  double stop = 0.0;
  int count = 1;
  std::string scale = "linear";

  std::vector<double> values() const {
    if (count < 1) throw UsageError("--count must be >= 1");
    if (!std::isfinite(start) || !std::isfinite(stop)) throw UsageError("sweep bounds must be finite");
    if (start > stop) throw UsageError("--start must not exceed --stop");
    if (scale == "log" && start <= 0.0) throw UsageError("log scale requires --start > 0");
    std::vector<double> v;
    for (int i = 0; i < count; ++i) {
      const double f = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
      v.push_back(scale == "log" ? start * std::pow(stop / start, f) : start + f * (stop - start));
    }
    return v;
  }
};

int cmd_sweep(const CommonFlags& flags, const SweepSpec& spec, unsigned threads, std::ostream& out,
              std::ostream& err) {
  const AnnealConfig base = flags.config();
  SweepAxis axis;
  try {
    axis = parse_sweep_axis(spec.axis);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  warn_params(base, err);
  const auto values = spec.values();
  const auto points = run_sweep(base, axis, values, base.mode, threads);
  Sink sink(flags.out_file, out);
  std::ostream& os = sink.get();

  bool any_failed = false;
  if (flags.json) {
    json rows = json::array();
    for (const auto& p : points) {
      const AnnealConfig cfg = with_axis_value(base, axis, p.value);
      json row = {{"axis", to_string(axis)}, {"value", p.value},          {"N", cfg.n_steps},
                  {"dt", cfg.dt},            {"h", cfg.field},            {"mode", to_string(base.mode)},
                  {"splits", cfg.split_three_spin}};
      if (p.result) {
        row["R"] = p.result->fidelity;
        row["final_norm"] = p.result->final_state.norm();
      } else {
        row["R"] = nullptr;
        row["error"] = p.error;
        any_failed = true;
      }
      rows.push_back(std::move(row));
    }
    os << json{{"points", std::move(rows)}}.dump(2) << '\n';
  } else {
    os << "axis,value,N,dt,h,mode,splits,R,final_norm,error\n";
    for (const auto& p : points) {
      const AnnealConfig cfg = with_axis_value(base, axis, p.value);
      os << to_string(axis) << ',' << sig(p.value, 12) << ',' << cfg.n_steps << ',' << sig(cfg.dt, 12) << ','
         << sig(cfg.field, 12) << ',' << to_string(base.mode) << ',' << cfg.split_three_spin << ',';
      if (p.result) {
        os << sig(p.result->fidelity, 12) << ',' << sig(p.result->final_state.norm(), 12) << ",\n";
      } else {
        std::string msg = p.error;
        std::replace(msg.begin(), msg.end(), ',', ';');
        std::replace(msg.begin(), msg.end(), '\n', ' ');
        os << ",," << msg << '\n';
        any_failed = true;
      }
    }
  }
  if (any_failed) err << "warning: some sweep points failed; see the error column\n";
  return any_failed ? kExitFailure : kExitOk;
}

// ---------------------------------------------------------------------------
// compile

int cmd_compile(const CommonFlags& flags, int l, bool verify, bool physical, double tol, std::ostream& out,
                std::ostream& err) {
  AnnealConfig cfg = flags.config();
  if (l < 0 || l > cfg.n_steps) throw UsageError("step index -l must satisfy 0 <= l <= N");
  warn_params(cfg, err);
  const PulseContext ctx{cfg.couplings, cfg.params};
  CompiledStep step = compile_problem_step(l, cfg);
  if (physical) step.program = physical_view(step.program, ctx);

  json verification;
  bool failed = false;
  if (verify) {
    const Operator27 compiled = evaluate_program(step.program, ctx);
    const Operator27 exact = exact_problem_factor(l, cfg);
    const double deviation = max_norm(compiled - exact);
    const ThreeSpinError bound = three_spin_error(l, cfg);
    const double threshold = tol > 0.0 ? tol : bound.total() + 1e-10;
    failed = !(deviation <= threshold);
    verification = {{"max_norm_deviation", deviation},
                    {"three_spin_error_zzz", bound.zzz},
                    {"three_spin_error_zsqzz", bound.zsqzz},
                    {"threshold", threshold},
                    {"unitary", is_unitary(compiled, 1e-10)},
                    {"passed", !failed}};
  }

  Sink sink(flags.out_file, out);
  std::ostream& os = sink.get();
  if (flags.json) {
    json manifest = json::array();
    for (const auto& [kind, coeff] : step.term_manifest) manifest.push_back({{"term", kind.str()}, {"coefficient", coeff}});
    json doc = {{"l", l}, {"config", config_json(cfg)}, {"program", to_json(step.program)}, {"manifest", manifest}};
    if (verify) doc["verify"] = verification;
    os << doc.dump(2) << '\n';
  } else {
    write_text(os, step.program);
    std::ostream& report = flags.out_file.empty() ? os : out;
    for (const auto& [kind, coeff] : step.term_manifest) {
      report << "# term " << kind.str() << ' ' << format_double(coeff) << '\n';
    }
    if (verify) {
      report << "# verify max_norm_deviation=" << format_double(verification["max_norm_deviation"].get<double>())
             << " three_spin_bound=" << format_double(verification["threshold"].get<double>())
             << (failed ? " FAILED" : " ok") << '\n';
    }
  }
  if (failed) err << "verification failed: deviation exceeds the three-spin error bound\n";
  return failed ? kExitFailure : kExitOk;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(double tol, bool as_json, std::ostream& out) {
  VerifyOptions opt;
  opt.tol = tol;
  const auto rows = run_identity_suite(opt);
  const bool all_pass = std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.passed; });
  if (as_json) {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back({{"check", r.name},
                     {"passed", r.passed},
                     {"measured", r.measured},
                     {"threshold", r.threshold},
                     {"detail", r.detail}});
    }
    out << json{{"checks", arr}, {"all_passed", all_pass}}.dump(2) << '\n';
  } else {
    for (const auto& r : rows) {
      out << (r.passed ? "PASS " : "FAIL ") << std::left << std::setw(66) << r.name << std::right
          << " measured=" << sig(r.measured, 6) << " threshold=" << sig(r.threshold, 6) << "  (" << r.detail << ")\n";
    }
    out << (all_pass ? "all checks passed" : "some checks FAILED") << '\n';
  }
  return all_pass ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------------------
// spectrum

int cmd_spectrum(bool as_json, std::ostream& out) {
  const auto spectrum = problem_spectrum();
  if (as_json) {
    json rows = json::array();
    for (const auto& e : spectrum) {
      rows.push_back({{"m1", e.label.m1},
                      {"m2", e.label.m2},
                      {"m3", e.label.m3},
                      {"p", e.label.factor_p()},
                      {"q", e.label.factor_q()},
                      {"energy", e.energy},
                      {"ground", e.energy == 0}});
    }
    out << json{{"states", rows}}.dump(2) << '\n';
    return kExitOk;
  }
  out << "  m1  m2  m3    p   q   energy\n";
  for (const auto& e : spectrum) {
    out << std::setw(4) << e.label.m1 << std::setw(4) << e.label.m2 << std::setw(4) << e.label.m3 << std::setw(5)
        << e.label.factor_p() << std::setw(4) << e.label.factor_q() << std::setw(9) << e.energy
        << (e.energy == 0 ? "   ground state (5 x 3 = 15)" : "") << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum annealing of 15 = p*q on three spin-1 qutrits", "qanneal"};
  app.require_subcommand(1);

  CommonFlags anneal_flags, sweep_flags, compile_flags;
  auto* anneal = app.add_subcommand("anneal", "Run one anneal and report the fidelity and final amplitudes");
  anneal_flags.attach(*anneal);

  SweepSpec spec;
  unsigned threads = 0;
  auto* sweep = app.add_subcommand("sweep", "Sweep N, dt or h and write CSV");
  sweep_flags.attach(*sweep);
  sweep->add_option("--axis", spec.axis, "Swept parameter")->check(CLI::IsMember({"N", "dt", "h"}))->required();
  sweep->add_option("--start", spec.start, "First value")->required();
  sweep->add_option("--stop", spec.stop, "Last value")->required();
  sweep->add_option("--count", spec.count, "Number of points")->capture_default_str();
  sweep->add_option("--scale", spec.scale, "Spacing")->check(CLI::IsMember({"linear", "log"}))->capture_default_str();
  sweep->add_option("--threads", threads, "Worker threads (0 = hardware)")->capture_default_str();

  int step_index = 0;
  bool do_verify = false, physical = false;
  double compile_tol = 0.0;
  auto* compile = app.add_subcommand("compile", "Emit the pulse program for the problem factor of step l");
  compile_flags.attach(*compile, false);
  compile->add_option("-l,--step-index", step_index, "Discrete time l")->capture_default_str();
  compile->add_flag("--verify", do_verify, "Evaluate and compare with the exact factor");
  compile->add_flag("--physical", physical, "Rewrite negative intervals as nonnegative ones");
  compile->add_option("--tol", compile_tol, "Absolute max-norm tolerance for --verify (default: three-spin bound)");

  double verify_tol = 1e-10;
  bool verify_json = false;
  auto* verify = app.add_subcommand("verify", "Run the pulse-synthesis identity suite");
  verify->add_option("--tol", verify_tol, "Tolerance for exact identities")->capture_default_str();
  verify->add_flag("--json", verify_json, "Structured output");

  bool spectrum_json = false;
  auto* spectrum = app.add_subcommand("spectrum", "Print the problem Hamiltonian spectrum");
  spectrum->add_flag("--json", spectrum_json, "Structured output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*anneal) return cmd_anneal(anneal_flags, out, err);
    if (*sweep) return cmd_sweep(sweep_flags, spec, threads, out, err);
    if (*compile) return cmd_compile(compile_flags, step_index, do_verify, physical, compile_tol, out, err);
    if (*verify) return cmd_verify(verify_tol, verify_json, out);
    if (*spectrum) return cmd_spectrum(spectrum_json, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace qanneal::cli
