#include "qanneal/hamiltonians.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qanneal {

namespace {

bool finite(double x) { return std::isfinite(x); }

template <typename Fn>
Operator27 diagonal_from(Fn&& value_at) {
  Operator27 out = Operator27::Zero();
  for (int k = 0; k < kDim; ++k) out(k, k) = value_at(BasisLabel::from_index(k));
  return out;
}

}  // namespace

double Couplings::between(SiteIndex a, SiteIndex b) const {
  const int lo = std::min(a.value(), b.value());
  const int hi = std::max(a.value(), b.value());
  if (lo == 1 && hi == 2) return j12;
  if (lo == 1 && hi == 3) return j13;
  if (lo == 2 && hi == 3) return j23;
  throw std::invalid_argument("coupling requested between a site and itself");
}

std::string to_string(RunMode mode) {
  std::string out = mode.propagation == Propagation::Ideal ? "ideal" : "compiled";
  if (mode.symmetrized) out += "+symmetrized";
  return out;
}

std::string to_string(FreeEvolutionModel model) {
  return model == FreeEvolutionModel::DdiOnly ? "ddi" : "full";
}

void AnnealConfig::validate() const {
  if (n_steps < 1) throw std::invalid_argument("number of steps must be >= 1");
  if (!finite(dt) || dt <= 0.0) throw std::invalid_argument("time step dt must be finite and > 0");
  if (!finite(field)) throw std::invalid_argument("field h must be finite");
  if (split_three_spin < 1) throw std::invalid_argument("three-spin split factor must be >= 1");
  for (double v : {couplings.j12, couplings.j13, couplings.j23}) {
    if (!finite(v)) throw std::invalid_argument("couplings must be finite");
  }
  for (int j = 0; j < 3; ++j) {
    if (!finite(params.omega[j]) || !finite(params.q[j])) {
      throw std::invalid_argument("system parameters must be finite");
    }
  }
}

int BasisLabel::index() const {
  for (int m : {m1, m2, m3}) {
    if (m < -1 || m > 1) throw std::out_of_range("magnetic number must be in {1, 0, -1}");
  }
  return 9 * (1 - m1) + 3 * (1 - m2) + (1 - m3);
}

BasisLabel BasisLabel::from_index(int index) {
  if (index < 0 || index >= kDim) throw std::out_of_range("basis index must be in [0, 27)");
  return {magnetic_number(index / 9), magnetic_number((index / 3) % 3), magnetic_number(index % 3)};
}

std::string BasisLabel::str() const {
  std::ostringstream out;
  out << '|' << m1 << ',' << m2 << ',' << m3 << '>';
  return out.str();
}

BasisLabel target_label() { return {1, -1, 1}; }

Operator27 h_single(const SystemParams& params) {
  return diagonal_from([&](const BasisLabel& b) {
    const int m[3] = {b.m1, b.m2, b.m3};
    double e = 0.0;
    for (int j = 0; j < 3; ++j) {
      e += -params.omega[j] * m[j] + params.q[j] * (m[j] * m[j] - 2.0 / 3.0);
    }
    return Complex(e);
  });
}

Operator27 h_dipolar(const Couplings& c) {
  return diagonal_from([&](const BasisLabel& b) {
    return Complex(c.j12 * b.m1 * b.m2 + c.j13 * b.m1 * b.m3 + c.j23 * b.m2 * b.m3);
  });
}

Operator27 h_field(double h) {
  const SpinMatrix sx = spin_matrix(SpinAxis::X);
  Operator27 sum = Operator27::Zero();
  for (int s = 1; s <= kNumSites; ++s) sum += embed(sx, SiteIndex(s));
  return -h * sum;
}

std::int64_t problem_energy(const BasisLabel& label) {
  const std::int64_t residual = 15 - std::int64_t{label.factor_p()} * label.factor_q();
  return residual * residual;
}

Operator27 h_problem() {
  return diagonal_from([](const BasisLabel& b) { return Complex(static_cast<double>(problem_energy(b))); });
}

Operator27 h_total(int l, const AnnealConfig& cfg) {
  if (l < 0 || l > cfg.n_steps) throw std::out_of_range("step index l must satisfy 0 <= l <= N");
  const double s = static_cast<double>(l) / cfg.n_steps;
  return (1.0 - s) * h_field(cfg.field) + s * h_problem();
}

std::vector<SpectrumEntry> problem_spectrum() {
  std::vector<SpectrumEntry> out;
  out.reserve(kDim);
  for (int k = 0; k < kDim; ++k) {
    const BasisLabel b = BasisLabel::from_index(k);
    out.push_back({b, problem_energy(b)});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.energy < b.energy; });
  return out;
}

std::vector<std::string> selective_control_warnings(const SystemParams& params, const Couplings& c) {
  // Transition frequencies eps_2 - eps_1 = omega - q and eps_3 - eps_2 = omega + q.
  std::vector<double> freqs;
  for (int j = 0; j < 3; ++j) {
    freqs.push_back(params.omega[j] - params.q[j]);
    freqs.push_back(params.omega[j] + params.q[j]);
  }
  const double jmax = std::max({std::abs(c.j12), std::abs(c.j13), std::abs(c.j23)});
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < freqs.size(); ++a) {
    for (std::size_t b = a + 1; b < freqs.size(); ++b) gap = std::min(gap, std::abs(freqs[a] - freqs[b]));
  }
  std::vector<std::string> warnings;
  if (gap <= jmax) {
    std::ostringstream msg;
    msg << "transition frequencies separated by only " << gap << " (max |J| = " << jmax
        << "); selective pulses would not resolve individual transitions";
    warnings.push_back(msg.str());
  }
  return warnings;
}

}  // namespace qanneal
