#include "skewcoh/states.hpp"

#include <fmt/format.h>

namespace skewcoh {

namespace pauli {

using C = std::complex<double>;

ComplexMatrix identity() { return ComplexMatrix::Identity(2, 2); }

ComplexMatrix x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix y() {
  ComplexMatrix m(2, 2);
  m << 0, C(0, -1), C(0, 1), 0;
  return m;
}

ComplexMatrix z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

ComplexMatrix sigma(int i) {
  switch (i) {
    case 0: return identity();
    case 1: return x();
    case 2: return y();
    case 3: return z();
    default: throw InvalidParameter(fmt::format("pauli::sigma: index {} not in 0..3", i));
  }
}

}  // namespace pauli

std::string DensityMatrix::validation_error(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    return fmt::format("not a non-empty square matrix ({}x{})", m.rows(), m.cols());
  }
  if (const double d = hermitian_defect(m); d > kStateTol) {
    return fmt::format("not Hermitian (defect {:.3g})", d);
  }
  if (const double t = std::abs(m.trace() - 1.0); t > kStateTol) {
    return fmt::format("trace deviates from 1 by {:.3g}", t);
  }
  const double min_eig = hermitian_eig(m).eigenvalues(0);
  if (min_eig < -kStateTol) {
    return fmt::format("not positive semidefinite (min eigenvalue {:.6g})", min_eig);
  }
  return {};
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (auto err = validation_error(m_); !err.empty()) {
    throw InvalidState("DensityMatrix: " + err);
  }
}

bool BellDiagonalParams::is_physical(double tol) const {
  for (double v : scaled_eigenvalues())
    if (v < -tol) return false;
  return true;
}

WernerParam::WernerParam(double p) : p_(p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvalidParameter(fmt::format("Werner parameter p={} outside [0,1]", p));
  }
}

IsotropicParam::IsotropicParam(double fidelity) : f_(fidelity) {
  if (!(fidelity >= 0.0 && fidelity <= 1.0)) {
    throw InvalidParameter(fmt::format("isotropic fidelity F={} outside [0,1]", fidelity));
  }
}

ComplexMatrix bell_diagonal_matrix(const BellDiagonalParams& params) {
  return x_state_z_matrix({0.0, 0.0, params});
}

ComplexMatrix x_state_z_matrix(const XStateZParams& params) {
  const auto& [c1, c2, c3] = params.c;
  ComplexMatrix m = kron(pauli::identity(), pauli::identity());
  m += params.r * kron(pauli::z(), pauli::identity());
  m += params.s * kron(pauli::identity(), pauli::z());
  m += c1 * kron(pauli::x(), pauli::x());
  m += c2 * kron(pauli::y(), pauli::y());
  m += c3 * kron(pauli::z(), pauli::z());
  return m / 4.0;
}

DensityMatrix bell_diagonal(const BellDiagonalParams& params) {
  if (!params.is_physical()) {
    const auto e = params.scaled_eigenvalues();
    throw InvalidState(fmt::format(
        "Bell-diagonal c=({}, {}, {}) lies outside the tetrahedron (4*eigenvalues {}, {}, {}, {})",
        params.c1, params.c2, params.c3, e[0], e[1], e[2], e[3]));
  }
  return DensityMatrix(bell_diagonal_matrix(params));
}

DensityMatrix x_state_z(const XStateZParams& params) {
  ComplexMatrix m = x_state_z_matrix(params);
  if (auto err = DensityMatrix::validation_error(m); !err.empty()) {
    throw InvalidState(fmt::format("X state r={} s={} c=({}, {}, {}): {}", params.r, params.s,
                                   params.c.c1, params.c.c2, params.c.c3, err));
  }
  return DensityMatrix(std::move(m));
}

BellDiagonalParams werner_params(WernerParam p) {
  const double c = p.correlation();
  return {c, c, c};
}

BellDiagonalParams isotropic_params(IsotropicParam f) {
  const double c = (4.0 * f.value() - 1.0) / 3.0;
  return {c, -c, c};
}

DensityMatrix werner(WernerParam p) { return bell_diagonal(werner_params(p)); }

DensityMatrix isotropic(IsotropicParam f) { return bell_diagonal(isotropic_params(f)); }

namespace {

double expectation(const DensityMatrix& rho, const ComplexMatrix& op) {
  const std::complex<double> v = (rho.matrix() * op).trace();
  if (std::abs(v.imag()) > kStateTol) {
    throw InternalError(fmt::format("expectation value has imaginary part {:.3g}", v.imag()));
  }
  return v.real();
}

void require_two_qubit(const DensityMatrix& rho, const char* what) {
  if (rho.dim() != 4) {
    throw DimensionError(fmt::format("{}: expected a 4x4 state, got dim {}", what, rho.dim()));
  }
}

}  // namespace

BellDiagonalParams correlation_coefficients(const DensityMatrix& rho) {
  require_two_qubit(rho, "correlation_coefficients");
  std::array<double, 3> c{};
  for (int i = 1; i <= 3; ++i) {
    c[i - 1] = expectation(rho, kron(pauli::sigma(i), pauli::sigma(i)));
  }
  return {c[0], c[1], c[2]};
}

LocalBlochVectors local_bloch_vectors(const DensityMatrix& rho) {
  require_two_qubit(rho, "local_bloch_vectors");
  LocalBlochVectors out{};
  for (int i = 1; i <= 3; ++i) {
    out.r[i - 1] = expectation(rho, kron(pauli::sigma(i), pauli::identity()));
    out.s[i - 1] = expectation(rho, kron(pauli::identity(), pauli::sigma(i)));
  }
  return out;
}

double x_state_z_min_eigenvalue(const XStateZParams& params) {
  // Two decoupled 2x2 blocks: {|01>,|10>} and {|00>,|11>}.
  const auto& [c1, c2, c3] = params.c;
  const double inner = std::hypot(c1 + c2, params.r - params.s);
  const double outer = std::hypot(c1 - c2, params.r + params.s);
  return std::min(1.0 - c3 - inner, 1.0 + c3 - outer) / 4.0;
}

}  // namespace skewcoh
