#pragma once

// Dense complex linear algebra for the small (dim <= 8) operators used
// throughout the toolkit. Everything is templated on the real scalar and
// accepts arbitrary Eigen expressions.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "skewcoh/errors.hpp"

namespace skewcoh {

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using ComplexMatrix = CMatrix<double>;
using ComplexVector = CVector<double>;

/// Eigenpairs of a Hermitian matrix. Eigenvalues ascend; column i of
/// `eigenvectors` belongs to `eigenvalues(i)`.
template <typename Real>
struct HermitianEigenDecomposition {
  RVector<Real> eigenvalues;
  CMatrix<Real> eigenvectors;

  CMatrix<Real> reconstruct() const {
    return eigenvectors * eigenvalues.template cast<std::complex<Real>>().asDiagonal() *
           eigenvectors.adjoint();
  }
};

namespace detail {

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw DimensionError(std::string(what) + ": expected a non-empty square matrix, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

template <typename A, typename B>
void require_same_dim(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b,
                      const char* what) {
  require_square(a, what);
  require_square(b, what);
  if (a.rows() != b.rows()) {
    throw DimensionError(std::string(what) + ": dimension mismatch " + std::to_string(a.rows()) +
                         " vs " + std::to_string(b.rows()));
  }
}

}  // namespace detail

/// Largest |a(i,j) - conj(a(j,i))|.
template <typename Derived>
typename Derived::RealScalar hermitian_defect(const Eigen::MatrixBase<Derived>& a) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& a,
                  typename Derived::RealScalar tol = typename Derived::RealScalar(1e-10)) {
  return a.rows() == a.cols() && hermitian_defect(a) <= tol;
}

template <typename Derived>
typename Derived::RealScalar max_abs_diff(const Eigen::MatrixBase<Derived>& a,
                                          const Eigen::MatrixBase<Derived>& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

template <typename A, typename B>
CMatrix<typename A::RealScalar> multiply(const Eigen::MatrixBase<A>& a,
                                         const Eigen::MatrixBase<B>& b) {
  detail::require_same_dim(a, b, "multiply");
  return a * b;
}

/// Kronecker product; block (i,j) of the result is a(i,j) * b.
template <typename A, typename B>
CMatrix<typename A::RealScalar> kron(const Eigen::MatrixBase<A>& a,
                                     const Eigen::MatrixBase<B>& b) {
  const Eigen::Index br = b.rows();
  const Eigen::Index bc = b.cols();
  CMatrix<typename A::RealScalar> out(a.rows() * br, a.cols() * bc);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * br, j * bc, br, bc) = a(i, j) * b;
    }
  }
  return out;
}

template <typename Derived>
typename Derived::Scalar trace(const Eigen::MatrixBase<Derived>& a) {
  return a.trace();
}

template <typename A, typename B>
CMatrix<typename A::RealScalar> commutator(const Eigen::MatrixBase<A>& a,
                                           const Eigen::MatrixBase<B>& b) {
  detail::require_same_dim(a, b, "commutator");
  return a * b - b * a;
}

struct JacobiSettings {
  double off_diagonal_tol = 1e-13;
  int max_sweeps = 100;
  double hermitian_tol = 1e-10;
};

/// Cyclic complex Jacobi diagonalisation.
///
/// Each rotation first removes the phase of the pivot a(p,q) and then applies
/// a real Givens rotation, so the accumulated transform stays unitary. Sweeps
/// stop once the off-diagonal Frobenius norm drops below
/// `off_diagonal_tol * max(1, ||a||_F)`.
template <typename Derived>
HermitianEigenDecomposition<typename Derived::RealScalar> hermitian_eig(
    const Eigen::MatrixBase<Derived>& input, const JacobiSettings& settings = {}) {
  using Real = typename Derived::RealScalar;
  using Complex = std::complex<Real>;
  detail::require_square(input, "hermitian_eig");
  const Real defect = hermitian_defect(input);
  if (defect > Real(settings.hermitian_tol)) {
    throw NotHermitianError("hermitian_eig: input is not Hermitian (defect " +
                            std::to_string(double(defect)) + ")");
  }

  const Eigen::Index n = input.rows();
  // Symmetrise so rounding asymmetry does not leak into the rotations.
  CMatrix<Real> a = (input + input.adjoint()) / Real(2);
  CMatrix<Real> v = CMatrix<Real>::Identity(n, n);

  auto off_norm = [&a, n] {
    Real s = 0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  const Real threshold = Real(settings.off_diagonal_tol) * std::max(Real(1), a.norm());
  bool converged = off_norm() < threshold;
  for (int sweep = 0; sweep < settings.max_sweeps && !converged; ++sweep) {
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const Real mag = std::abs(apq);
        if (mag == Real(0)) continue;
        const Complex phase = apq / mag;
        const Real app = a(p, p).real();
        const Real aqq = a(q, q).real();
        const Real tau = (aqq - app) / (Real(2) * mag);
        const Real t = (tau >= 0 ? Real(1) : Real(-1)) / (std::abs(tau) + std::sqrt(Real(1) + tau * tau));
        const Real c = Real(1) / std::sqrt(Real(1) + t * t);
        const Real s = t * c;
        // G = diag(1, conj(phase)) * [[c, s], [-s, c]] restricted to (p,q).
        const Complex gpp = c;
        const Complex gpq = s;
        const Complex gqp = -s * std::conj(phase);
        const Complex gqq = c * std::conj(phase);

        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * gpp + akq * gqp;
          a(k, q) = akp * gpq + akq * gqq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
          a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
        }
        a(p, q) = a(q, p) = Complex(0);
        a(p, p) = Complex(a(p, p).real());
        a(q, q) = Complex(a(q, q).real());

        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * gpp + vkq * gqp;
          v(k, q) = vkp * gpq + vkq * gqq;
        }
      }
    }
    converged = off_norm() < threshold;
  }
  if (!converged) {
    throw ConvergenceError("hermitian_eig: no convergence within " +
                           std::to_string(settings.max_sweeps) + " sweeps");
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index(0));
  std::stable_sort(order.begin(), order.end(), [&a](Eigen::Index i, Eigen::Index j) {
    return a(i, i).real() < a(j, j).real();
  });

  HermitianEigenDecomposition<Real> result;
  result.eigenvalues.resize(n);
  result.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    result.eigenvalues(k) = a(src, src).real();
    result.eigenvectors.col(k) = v.col(src);
  }
  return result;
}

/// Principal square root of a positive semidefinite matrix. Eigenvalues in
/// [-clamp_tol, 0) are treated as zero; anything lower is rejected. Positive
/// eigenvalues at rounding level (below 8 n eps max|lambda|) are zeroed too:
/// their square roots are ~1e-8 and pure noise.
template <typename Derived>
CMatrix<typename Derived::RealScalar> sqrt_psd(const Eigen::MatrixBase<Derived>& a,
                                               double clamp_tol = 1e-10) {
  using Real = typename Derived::RealScalar;
  const auto eig = hermitian_eig(a);
  if (eig.eigenvalues(0) < Real(-clamp_tol)) {
    throw NotPositiveError("sqrt_psd: eigenvalue " + std::to_string(double(eig.eigenvalues(0))) +
                           " below -" + std::to_string(clamp_tol));
  }
  const Real scale = std::max(std::abs(eig.eigenvalues(0)), std::abs(eig.eigenvalues(eig.eigenvalues.size() - 1)));
  const Real floor = Real(8) * Real(a.rows()) * std::numeric_limits<Real>::epsilon() * scale;
  const RVector<Real> roots =
      eig.eigenvalues.unaryExpr([floor](Real v) { return v <= floor ? Real(0) : std::sqrt(v); });
  CMatrix<Real> r =
      eig.eigenvectors * roots.template cast<std::complex<Real>>().asDiagonal() *
      eig.eigenvectors.adjoint();
  return (r + r.adjoint()) / Real(2);
}

}  // namespace skewcoh
