#pragma once

// Self-check of the pulse synthesis: every exact construction compared
// against the matrix exponential of its target, plus the error-scaling laws
// of the three-spin construction.

#include <string>
#include <vector>

namespace qanneal {

struct CheckRow {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct VerifyOptions {
  // Max-norm tolerance for the exact identities.
  double tol = 1e-10;
  // Number of phase values each exact identity is checked at.
  int samples = 7;
};

// Deterministic phases spread over [-magnitude, magnitude].
std::vector<double> probe_phases(int count, double magnitude);

// Least-squares slope of log(err) against log(b).
double loglog_slope(const std::vector<double>& b, const std::vector<double>& err);

std::vector<CheckRow> run_identity_suite(const VerifyOptions& options = {});

}  // namespace qanneal
