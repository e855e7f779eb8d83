#pragma once

#include <array>

#include "skewcoh/linalg.hpp"

namespace skewcoh {

namespace pauli {
ComplexMatrix identity();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
/// sigma_1, sigma_2, sigma_3 for i = 1, 2, 3; identity for i = 0.
ComplexMatrix sigma(int i);
}  // namespace pauli

/// Tolerance shared by every state-validity check.
inline constexpr double kStateTol = 1e-10;

/// A validated quantum state: Hermitian, unit trace, positive semidefinite,
/// each to within kStateTol.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m);

  const ComplexMatrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

  /// Empty string when `m` is a valid state, otherwise the reason it is not.
  static std::string validation_error(const ComplexMatrix& m);

 private:
  ComplexMatrix m_;
};

/// Correlation coefficients of (I + sum_i c_i sigma_i x sigma_i) / 4.
struct BellDiagonalParams {
  double c1 = 0;
  double c2 = 0;
  double c3 = 0;

  /// 4x the eigenvalues of the Bell-diagonal state, in the order
  /// (1-c1-c2-c3, 1+c1+c2-c3, 1+c1-c2+c3, 1-c1+c2+c3).
  std::array<double, 4> scaled_eigenvalues() const {
    return {1 - c1 - c2 - c3, 1 + c1 + c2 - c3, 1 + c1 - c2 + c3, 1 - c1 + c2 + c3};
  }

  /// Inside the correlation tetrahedron.
  bool is_physical(double tol = 1e-12) const;

  std::array<double, 3> as_array() const { return {c1, c2, c3}; }
};

/// Z-aligned X state (I + r sz x I + s I x sz + sum_i c_i sigma_i x sigma_i) / 4.
struct XStateZParams {
  double r = 0;
  double s = 0;
  BellDiagonalParams c;
};

class WernerParam {
 public:
  explicit WernerParam(double p);
  double value() const { return p_; }

  /// All three correlation coefficients equal this value.
  double correlation() const { return 0.75 * p_ - 1.0; }

 private:
  double p_;
};

class IsotropicParam {
 public:
  explicit IsotropicParam(double fidelity);
  double value() const { return f_; }

 private:
  double f_;
};

ComplexMatrix bell_diagonal_matrix(const BellDiagonalParams& params);
ComplexMatrix x_state_z_matrix(const XStateZParams& params);

/// Throws InvalidState outside the tetrahedron.
DensityMatrix bell_diagonal(const BellDiagonalParams& params);
/// Throws InvalidState when the matrix is not positive semidefinite.
DensityMatrix x_state_z(const XStateZParams& params);
DensityMatrix werner(WernerParam p);
DensityMatrix isotropic(IsotropicParam f);

BellDiagonalParams werner_params(WernerParam p);
BellDiagonalParams isotropic_params(IsotropicParam f);

/// c_i = Tr(rho sigma_i x sigma_i). Requires a two-qubit state.
BellDiagonalParams correlation_coefficients(const DensityMatrix& rho);

/// Local Bloch vectors r_i = Tr(rho sigma_i x I) and s_i = Tr(rho I x sigma_i).
struct LocalBlochVectors {
  std::array<double, 3> r;
  std::array<double, 3> s;
};
LocalBlochVectors local_bloch_vectors(const DensityMatrix& rho);

/// Smallest eigenvalue of the X state, used as a physicality margin.
double x_state_z_min_eigenvalue(const XStateZParams& params);

}  // namespace skewcoh
