#include "skewcoh/coherence.hpp"

#include <limits>

#include <fmt/format.h>

namespace skewcoh {

namespace {

// Radicands here are 4x eigenvalues built from O(1) sums, so anything below a
// few dozen ulps is a rounded zero. Snapping matches sqrt_psd, which drops
// rounding-level eigenvalues; otherwise the two routes differ by ~sqrt(eps).
constexpr double kRadicandFloor = 64 * std::numeric_limits<double>::epsilon();

double clamped_sqrt(double x) { return x <= kRadicandFloor ? 0.0 : std::sqrt(x); }

void require_basis_dim(const DensityMatrix& rho, const OrthonormalBasis& basis, const char* what) {
  if (rho.dim() != basis.dim()) {
    throw DimensionError(
        fmt::format("{}: state dim {} vs basis dim {}", what, rho.dim(), basis.dim()));
  }
}

void require_physical(const BellDiagonalParams& c, const char* what) {
  if (!c.is_physical()) {
    throw InvalidState(
        fmt::format("{}: c=({}, {}, {}) lies outside the tetrahedron", what, c.c1, c.c2, c.c3));
  }
}

double entropy_bits(const RVector<double>& probabilities) {
  double h = 0;
  for (double p : probabilities) {
    if (p > 0) h -= p * std::log2(p);
  }
  return h;
}

// Square roots of 4x the X-state eigenvalues: sqrt(1 - c3 -+ R) for the
// {|01>,|10>} block and sqrt(1 + c3 -+ R') for the {|00>,|11>} block.
struct XStateRoots {
  double inner_radius;  // R
  double outer_radius;  // R'
  double inner_minus, inner_plus;
  double outer_minus, outer_plus;
};

XStateRoots x_state_roots(const XStateZParams& p) {
  XStateRoots roots{};
  roots.inner_radius = std::hypot(p.c.c1 + p.c.c2, p.r - p.s);
  roots.outer_radius = std::hypot(p.c.c1 - p.c.c2, p.r + p.s);
  roots.inner_minus = clamped_sqrt(1 - p.c.c3 - roots.inner_radius);
  roots.inner_plus = clamped_sqrt(1 - p.c.c3 + roots.inner_radius);
  roots.outer_minus = clamped_sqrt(1 + p.c.c3 - roots.outer_radius);
  roots.outer_plus = clamped_sqrt(1 + p.c.c3 + roots.outer_radius);
  return roots;
}

constexpr double kRemovableSingularity = 1e-12;

}  // namespace

double skew_information(const DensityMatrix& rho, const ComplexMatrix& observable) {
  if (observable.rows() != rho.dim() || observable.cols() != rho.dim()) {
    throw DimensionError(fmt::format("skew_information: observable {}x{} vs state dim {}",
                                     observable.rows(), observable.cols(), rho.dim()));
  }
  if (!is_hermitian(observable)) {
    throw NotHermitianError("skew_information: observable is not Hermitian");
  }
  const ComplexMatrix c = commutator(sqrt_psd(rho.matrix()), observable);
  const double value = -0.5 * (c * c).trace().real();
  return std::max(value, 0.0);
}

double coherence_numeric(const DensityMatrix& rho, const OrthonormalBasis& basis) {
  require_basis_dim(rho, basis, "coherence_numeric");
  const ComplexMatrix root = sqrt_psd(rho.matrix());
  double sum = 0;
  for (const auto& k : basis.vectors()) {
    const double d = k.dot(root * k).real();
    sum += d * d;
  }
  return std::max(1.0 - sum, 0.0);
}

std::array<double, 3> coherence_numeric_amubs(const DensityMatrix& rho) {
  require_basis_dim(rho, qubit_amub(Amub::a1), "coherence_numeric_amubs");
  const ComplexMatrix root = sqrt_psd(rho.matrix());
  std::array<double, 3> out{};
  for (Amub a : kAllAmubs) {
    double sum = 0;
    for (const auto& k : qubit_amub(a).vectors()) {
      const double d = k.dot(root * k).real();
      sum += d * d;
    }
    out[static_cast<std::size_t>(a)] = std::max(1.0 - sum, 0.0);
  }
  return out;
}

double coherence_skew_sum(const DensityMatrix& rho, const OrthonormalBasis& basis) {
  require_basis_dim(rho, basis, "coherence_skew_sum");
  double sum = 0;
  for (const auto& k : basis.vectors()) sum += skew_information(rho, k * k.adjoint());
  return sum;
}

double cf_bd(const BellDiagonalParams& c, Amub basis) {
  require_physical(c, "cf_bd");
  const auto e = c.scaled_eigenvalues();
  const double p1 = clamped_sqrt(e[0]);
  const double p2 = clamped_sqrt(e[1]);
  const double p3 = clamped_sqrt(e[2]);
  const double p4 = clamped_sqrt(e[3]);
  switch (basis) {
    case Amub::a1: return (2 - p1 * p2 - p3 * p4) / 4;
    case Amub::a2: return (2 - p2 * p3 - p1 * p4) / 4;
    case Amub::a3: return (2 - p1 * p3 - p2 * p4) / 4;
  }
  throw InvalidParameter("cf_bd: unknown basis");
}

double cf_bd_sum(const BellDiagonalParams& c) {
  return cf_bd(c, Amub::a1) + cf_bd(c, Amub::a2) + cf_bd(c, Amub::a3);
}

double cf_werner(WernerParam param) {
  const double p = param.value();
  return (8 - std::sqrt(p * (48 - 27 * p)) - 3 * p) / 16;
}

double cf_isotropic(IsotropicParam param) {
  const double f = param.value();
  return (1 + 2 * f - 2 * std::sqrt(3 * f * (1 - f))) / 6;
}

double cf_xz_a1(const XStateZParams& params) {
  const DensityMatrix rho = x_state_z(params);
  const XStateRoots k = x_state_roots(params);
  if (k.inner_radius < kRemovableSingularity || k.outer_radius < kRemovableSingularity) {
    return coherence_numeric(rho, qubit_amub(Amub::a1));
  }
  // Diagonal of sqrt(block) for (alpha I + delta sz + beta sx)/4 with radius R:
  // [sqrt(alpha+R)(R +- delta) + sqrt(alpha-R)(R -+ delta)] / (4R).
  const double dx = params.r - params.s;
  const double R = k.inner_radius;
  const double d01 = (k.inner_plus * (R + dx) + k.inner_minus * (R - dx)) / (4 * R);
  const double d10 = (k.inner_plus * (R - dx) + k.inner_minus * (R + dx)) / (4 * R);

  const double dy = params.r + params.s;
  const double Q = k.outer_radius;
  const double d00 = (k.outer_plus * (Q + dy) + k.outer_minus * (Q - dy)) / (4 * Q);
  const double d11 = (k.outer_plus * (Q - dy) + k.outer_minus * (Q + dy)) / (4 * Q);

  return std::max(1 - (d00 * d00 + d01 * d01 + d10 * d10 + d11 * d11), 0.0);
}

double cf_xz_sum(const XStateZParams& params) {
  (void)x_state_z(params);
  const XStateRoots k = x_state_roots(params);
  const std::array<double, 4> roots{k.inner_minus, k.inner_plus, k.outer_minus, k.outer_plus};
  double pairwise = 0;
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j) pairwise += roots[i] * roots[j];
  return (6 - pairwise) / 4;
}

std::optional<double> cf_xz_a1_printed(const XStateZParams& params) {
  const XStateRoots k = x_state_roots(params);
  const double R = k.inner_radius;
  const double Q = k.outer_radius;
  if (R < kRemovableSingularity || Q < kRemovableSingularity) return std::nullopt;
  const double dx = params.r - params.s;
  const double dy = params.r + params.s;

  const double t1 = k.inner_plus * (dx + R) + k.inner_minus * (-dx + R);
  const double t2 = k.inner_minus * (dx + R) + k.inner_plus * (-dx + R);
  // Uncorrected: the second summand of u1 repeats sqrt(1 + c3 + R').
  const double u1 = k.outer_plus * (-dy + Q) + k.outer_plus * (dy + Q);
  const double u2 = k.outer_minus * (dy - Q) - k.outer_plus * (dy + Q);

  return 1 - (t1 * t1 + t2 * t2) / (16 * R * R) - (u1 * u1 + u2 * u2) / (16 * Q * Q);
}

double cf_xz_sum_printed(const XStateZParams& params) {
  const XStateRoots k = x_state_roots(params);
  const double am = k.inner_minus, ap = k.inner_plus;
  const double bm = k.outer_minus, bp = k.outer_plus;
  // The unsigned third line multiplies the second one as typeset.
  return (6 - am * ap - (bm * ap) * (bm * ap) - am * bm - am * bp - bm * bp) / 4;
}

double l1_coherence(const DensityMatrix& rho, const OrthonormalBasis& basis) {
  require_basis_dim(rho, basis, "l1_coherence");
  const ComplexMatrix m = represent_in_basis(rho, basis);
  return m.cwiseAbs().sum() - m.diagonal().cwiseAbs().sum();
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return entropy_bits(hermitian_eig(rho.matrix()).eigenvalues);
}

double relative_entropy_coherence(const DensityMatrix& rho, const OrthonormalBasis& basis) {
  require_basis_dim(rho, basis, "relative_entropy_coherence");
  const ComplexMatrix m = represent_in_basis(rho, basis);
  const RVector<double> diag = m.diagonal().real();
  return std::max(entropy_bits(diag) - von_neumann_entropy(rho), 0.0);
}

}  // namespace skewcoh
