#include "qanneal/spinops.h"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace qanneal {

namespace {

constexpr int kStride[kNumSites] = {9, 3, 1};

bool all_finite(const Operator27& a) {
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) {
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
    }
  }
  return true;
}

template <typename Columns>
void apply_local_impl(const SpinMatrix& op, SiteIndex site, Columns& target) {
  const int stride = kStride[site.slot()];
  const auto cols = target.cols();
  for (int base = 0; base < kDim; ++base) {
    if ((base / stride) % kLocalDim != 0) continue;
    const int r0 = base, r1 = base + stride, r2 = base + 2 * stride;
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Complex a0 = target(r0, c), a1 = target(r1, c), a2 = target(r2, c);
      target(r0, c) = op(0, 0) * a0 + op(0, 1) * a1 + op(0, 2) * a2;
      target(r1, c) = op(1, 0) * a0 + op(1, 1) * a1 + op(1, 2) * a2;
      target(r2, c) = op(2, 0) * a0 + op(2, 1) * a1 + op(2, 2) * a2;
    }
  }
}

}  // namespace

std::string to_string(SpinAxis axis) {
  switch (axis) {
    case SpinAxis::X: return "x";
    case SpinAxis::Y: return "y";
    case SpinAxis::Z: return "z";
  }
  return "?";
}

SpinAxis parse_axis(const std::string& text) {
  if (text == "x" || text == "X") return SpinAxis::X;
  if (text == "y" || text == "Y") return SpinAxis::Y;
  if (text == "z" || text == "Z") return SpinAxis::Z;
  throw std::invalid_argument("unknown spin axis '" + text + "'");
}

SpinMatrix spin_matrix(SpinAxis axis) {
  const double r = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  SpinMatrix m = SpinMatrix::Zero();
  switch (axis) {
    case SpinAxis::X:
      m(0, 1) = m(1, 0) = m(1, 2) = m(2, 1) = r;
      break;
    case SpinAxis::Y:
      m(0, 1) = m(1, 2) = -i * r;
      m(1, 0) = m(2, 1) = i * r;
      break;
    case SpinAxis::Z:
      m(0, 0) = 1.0;
      m(2, 2) = -1.0;
      break;
  }
  return m;
}

Operator27 embed(const SpinMatrix& op, SiteIndex site) {
  Operator27 out = Operator27::Identity();
  apply_local(op, site, out);
  return out;
}

void apply_local(const SpinMatrix& op, SiteIndex site, Operator27& target) {
  apply_local_impl(op, site, target);
}

void apply_local(const SpinMatrix& op, SiteIndex site, StateVector& target) {
  apply_local_impl(op, site, target);
}

bool is_diagonal(const Operator27& a, double tol) {
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) {
      if (i != j && std::abs(a(i, j)) > tol) return false;
    }
  }
  return true;
}

bool is_hermitian(const Operator27& a, double tol) {
  return max_norm(a - a.adjoint()) < tol;
}

bool is_unitary(const Operator27& a, double tol) {
  return max_norm(a.adjoint() * a - Operator27::Identity()) < tol;
}

double max_norm(const Operator27& a) { return a.cwiseAbs().maxCoeff(); }

double spectral_norm(const Operator27& a) {
  Eigen::JacobiSVD<Operator27> svd(a);
  return svd.singularValues()(0);
}

Operator27 matrix_exp(const Operator27& a, Complex scale) {
  if (!all_finite(a) || !std::isfinite(scale.real()) || !std::isfinite(scale.imag())) {
    throw NumericalError("matrix_exp: non-finite input");
  }
  if (scale == Complex(0.0)) return Operator27::Identity();

  if (is_diagonal(a)) {
    Operator27 out = Operator27::Zero();
    for (int k = 0; k < kDim; ++k) out(k, k) = std::exp(scale * a(k, k));
    return out;
  }

  const double scale_tol = 1e-14 * std::max(1.0, max_norm(a));
  if (is_hermitian(a, scale_tol)) {
    const Operator27 herm = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<Operator27> eig(herm);
    if (eig.info() != Eigen::Success) throw NumericalError("matrix_exp: eigensolver failed");
    const auto& vecs = eig.eigenvectors();
    Eigen::Matrix<Complex, kDim, 1> phases;
    for (int k = 0; k < kDim; ++k) phases(k) = std::exp(scale * eig.eigenvalues()(k));
    return vecs * phases.asDiagonal() * vecs.adjoint();
  }

  const Operator27 scaled = scale * a;
  return scaled.exp();
}

PhaseComparison equal_up_to_phase(const Operator27& u, const Operator27& v, double tol) {
  Eigen::Index row = 0, col = 0;
  const double vmax = v.cwiseAbs().maxCoeff(&row, &col);
  if (vmax == 0.0) throw std::invalid_argument("equal_up_to_phase: reference operator is zero");
  const Complex uref = u(row, col);
  if (std::abs(uref) == 0.0) {
    return {false, 0.0, max_norm(u - v)};
  }
  const double phase = std::arg(v(row, col) / uref);
  const double residual = max_norm(std::polar(1.0, phase) * u - v);
  return {residual < tol, phase, residual};
}

Operator27 commutator(const Operator27& a, const Operator27& b) { return a * b - b * a; }

}  // namespace qanneal
