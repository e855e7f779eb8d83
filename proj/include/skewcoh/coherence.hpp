#pragma once

// Skew-information-based coherence C(rho) = sum_k I(rho, |k><k|)
//                                         = 1 - sum_k <k|sqrt(rho)|k>^2,
// evaluated numerically and through closed forms for the Bell-diagonal and
// z-aligned X-state families in the two-qubit AMUB bases.

#include <optional>

#include "skewcoh/bases.hpp"

namespace skewcoh {

/// Wigner-Yanase skew information -Tr([sqrt(rho), K]^2) / 2, clamped at 0.
double skew_information(const DensityMatrix& rho, const ComplexMatrix& observable);

/// 1 - sum_k <k|sqrt(rho)|k>^2. This is the normative route.
double coherence_numeric(const DensityMatrix& rho, const OrthonormalBasis& basis);

/// coherence_numeric in a1, a2, a3 sharing one matrix square root.
std::array<double, 3> coherence_numeric_amubs(const DensityMatrix& rho);

/// sum_k I(rho, |k><k|), the definition evaluated projector by projector.
double coherence_skew_sum(const DensityMatrix& rho, const OrthonormalBasis& basis);

/// Closed forms for Bell-diagonal states; throws InvalidState outside the
/// tetrahedron.
double cf_bd(const BellDiagonalParams& c, Amub basis);
double cf_bd_sum(const BellDiagonalParams& c);

/// (8 - sqrt(p(48 - 27p)) - 3p) / 16, identical in a1, a2, a3.
double cf_werner(WernerParam p);
/// (1 + 2F - 2 sqrt(3F(1-F))) / 6, identical in a1, a2, a3.
double cf_isotropic(IsotropicParam f);

/// Coherence of the z-aligned X state in a1 from the square roots of its two
/// 2x2 blocks. Falls back to coherence_numeric when a block is proportional
/// to the identity (vanishing denominator).
double cf_xz_a1(const XStateZParams& params);

/// Sum over a1, a2, a3: (6 - sum of pairwise products of the four
/// sqrt-eigenvalues sqrt(1 - c3 +- R), sqrt(1 + c3 +- R')) / 4.
double cf_xz_sum(const XStateZParams& params);
/// Uncorrected long-form X-state expressions (the "printed" forms), kept only to
/// Literal transcriptions of the published X-state displays, kept only to
/// report how far they sit from the numeric route. Radicands are clamped
/// at zero; std::nullopt when a denominator vanishes.
std::optional<double> cf_xz_a1_printed(const XStateZParams& params);
double cf_xz_sum_printed(const XStateZParams& params);

/// sum_{i != j} |rho_ij| in `basis`.
double l1_coherence(const DensityMatrix& rho, const OrthonormalBasis& basis);
/// S(diag(rho)) - S(rho) in `basis`, entropies in bits.
double relative_entropy_coherence(const DensityMatrix& rho, const OrthonormalBasis& basis);

/// Von Neumann entropy in bits.
double von_neumann_entropy(const DensityMatrix& rho);

}  // namespace skewcoh
