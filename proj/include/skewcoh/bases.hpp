#pragma once

#include <string_view>
#include <vector>

#include "skewcoh/states.hpp"

namespace skewcoh {

inline constexpr double kBasisTol = 1e-12;

class OrthonormalBasis {
 public:
  /// Throws DimensionError on ragged input and InvalidParameter if the
  /// vectors are not orthonormal to within kBasisTol.
  explicit OrthonormalBasis(std::vector<ComplexVector> vectors);

  static OrthonormalBasis computational(Eigen::Index dim);

  Eigen::Index dim() const { return static_cast<Eigen::Index>(vectors_.size()); }
  const ComplexVector& operator[](std::size_t i) const { return vectors_[i]; }
  const std::vector<ComplexVector>& vectors() const { return vectors_; }

  /// Unitary whose columns are the basis vectors.
  ComplexMatrix as_columns() const;

 private:
  std::vector<ComplexVector> vectors_;
};

/// Bases of a common dimension. Unbiasedness is reported by verify_mub, not
/// enforced here, so that candidate sets can be inspected.
class MubSet {
 public:
  explicit MubSet(std::vector<OrthonormalBasis> bases);
  Eigen::Index dim() const { return bases_.front().dim(); }
  std::size_t size() const { return bases_.size(); }
  const OrthonormalBasis& operator[](std::size_t k) const { return bases_[k]; }
  const std::vector<OrthonormalBasis>& bases() const { return bases_; }

 private:
  std::vector<OrthonormalBasis> bases_;
};

/// Two-party bases whose k-th member is {e_ki (x) e_kj}. `local_dim` is the
/// single-party dimension d, so every basis has d^2 vectors.
class AmubSet {
 public:
  AmubSet(std::vector<OrthonormalBasis> bases, Eigen::Index local_dim);
  Eigen::Index local_dim() const { return local_dim_; }
  std::size_t size() const { return bases_.size(); }
  const OrthonormalBasis& operator[](std::size_t k) const { return bases_[k]; }
  const std::vector<OrthonormalBasis>& bases() const { return bases_; }

 private:
  std::vector<OrthonormalBasis> bases_;
  Eigen::Index local_dim_;
};

struct PairDeviation {
  std::size_t first;
  std::size_t second;
  double max_deviation;
};

struct UnbiasednessReport {
  double target_overlap = 0;  // 1/sqrt(d) for MUBs, 1/d for AMUBs
  double max_deviation = 0;
  std::vector<PairDeviation> pairs;

  bool passed(double tol = kBasisTol) const { return max_deviation <= tol; }
};

/// {e1, e2, e3}: computational, (|0> +- |1>)/sqrt2, (|0> +- i|1>)/sqrt2.
MubSet qubit_mubs();

/// a_k = {e_k1 e_k1, e_k1 e_k2, e_k2 e_k1, e_k2 e_k2} (generalised to any d
/// in row-major (i, j) order). Throws InvalidParameter if `mubs` fails
/// verify_mub.
AmubSet amub_from_mubs(const MubSet& mubs);

UnbiasednessReport verify_mub(const MubSet& mubs);
UnbiasednessReport verify_amub(const AmubSet& amubs);

/// Selector for the three two-qubit AMUB bases built from qubit_mubs().
enum class Amub { a1 = 0, a2 = 1, a3 = 2 };

inline constexpr std::array<Amub, 3> kAllAmubs{Amub::a1, Amub::a2, Amub::a3};

const OrthonormalBasis& qubit_amub(Amub which);
const char* to_string(Amub which);
/// Accepts "a1", "a2", "a3"; throws InvalidParameter otherwise.
Amub parse_amub(std::string_view name);

/// Entry (i,j) = <b_i| rho |b_j>.
ComplexMatrix represent_in_basis(const ComplexMatrix& rho, const OrthonormalBasis& basis);
ComplexMatrix represent_in_basis(const DensityMatrix& rho, const OrthonormalBasis& basis);

}  // namespace skewcoh
