#pragma once

// Spin-1 operator algebra on a register of three qutrits.
//
// Local basis order is m = +1, 0, -1 (indices 0, 1, 2). The full register
// index is 9*i1 + 3*i2 + i3, so site 1 is the most significant tensor factor.

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qanneal {

using Complex = std::complex<double>;
using SpinMatrix = Eigen::Matrix<Complex, 3, 3>;
using Operator27 = Eigen::Matrix<Complex, 27, 27>;
using StateVector = Eigen::Matrix<Complex, 27, 1>;

inline constexpr int kLocalDim = 3;
inline constexpr int kDim = 27;
inline constexpr int kNumSites = 3;

enum class SpinAxis { X, Y, Z };

// Thrown when a numerical routine receives non-finite input or loses unitarity.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One of the three qutrit sites, numbered 1..3.
class SiteIndex {
 public:
  constexpr explicit SiteIndex(int value) : value_(value) {
    if (value < 1 || value > kNumSites) {
      throw std::out_of_range("site index must be 1, 2 or 3, got " + std::to_string(value));
    }
  }
  constexpr int value() const { return value_; }
  // Zero-based position in the tensor product.
  constexpr int slot() const { return value_ - 1; }
  friend constexpr bool operator==(SiteIndex a, SiteIndex b) = default;

 private:
  int value_;
};

std::string to_string(SpinAxis axis);
SpinAxis parse_axis(const std::string& text);

// Standard spin-1 generator in the (m = 1, 0, -1) basis.
SpinMatrix spin_matrix(SpinAxis axis);

// Local magnetic quantum number for local index 0..2.
constexpr int magnetic_number(int local_index) { return 1 - local_index; }

// Local digit of `site` in a full register index.
constexpr int local_digit(int full_index, SiteIndex site) {
  constexpr int kStride[kNumSites] = {9, 3, 1};
  return (full_index / kStride[site.slot()]) % kLocalDim;
}

// op acting on `site`, identity on the other two sites.
Operator27 embed(const SpinMatrix& op, SiteIndex site);

// Left-multiplies `target` in place by embed(op, site) without forming the
// 27x27 embedding.
void apply_local(const SpinMatrix& op, SiteIndex site, Operator27& target);
void apply_local(const SpinMatrix& op, SiteIndex site, StateVector& target);

// exp(scale * a).
//
// Diagonal inputs are exponentiated entrywise, Hermitian inputs through an
// eigendecomposition, anything else by Pade scaling-and-squaring.
Operator27 matrix_exp(const Operator27& a, Complex scale);

bool is_hermitian(const Operator27& a, double tol = 1e-12);
bool is_unitary(const Operator27& a, double tol = 1e-12);
bool is_diagonal(const Operator27& a, double tol = 0.0);

double max_norm(const Operator27& a);

// Largest singular value.
double spectral_norm(const Operator27& a);

struct PhaseComparison {
  bool equal;
  // v is approximately exp(i*phase) * u.
  double phase;
  // max-norm residual after removing the phase.
  double residual;
};

// Compares two operators modulo a global phase, aligning on the
// largest-magnitude entry of v. Throws std::invalid_argument if v is zero.
PhaseComparison equal_up_to_phase(const Operator27& u, const Operator27& v, double tol);

Operator27 commutator(const Operator27& a, const Operator27& b);

}  // namespace qanneal
