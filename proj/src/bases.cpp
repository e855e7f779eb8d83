#include "skewcoh/bases.hpp"

#include <fmt/format.h>

namespace skewcoh {

OrthonormalBasis::OrthonormalBasis(std::vector<ComplexVector> vectors)
    : vectors_(std::move(vectors)) {
  const auto n = static_cast<Eigen::Index>(vectors_.size());
  if (n == 0) throw DimensionError("OrthonormalBasis: no vectors");
  for (const auto& v : vectors_) {
    if (v.size() != n) {
      throw DimensionError(
          fmt::format("OrthonormalBasis: {} vectors but a vector has length {}", n, v.size()));
    }
  }
  for (std::size_t i = 0; i < vectors_.size(); ++i) {
    for (std::size_t j = i; j < vectors_.size(); ++j) {
      const double overlap = std::abs(vectors_[i].dot(vectors_[j]));
      const double expected = (i == j) ? 1.0 : 0.0;
      if (std::abs(overlap - expected) > kBasisTol) {
        throw InvalidParameter(fmt::format(
            "OrthonormalBasis: |<b{}|b{}>| = {:.17g}, expected {}", i, j, overlap, expected));
      }
    }
  }
}

OrthonormalBasis OrthonormalBasis::computational(Eigen::Index dim) {
  std::vector<ComplexVector> vs;
  for (Eigen::Index i = 0; i < dim; ++i) vs.push_back(ComplexVector::Unit(dim, i));
  return OrthonormalBasis(std::move(vs));
}

ComplexMatrix OrthonormalBasis::as_columns() const {
  ComplexMatrix u(dim(), dim());
  for (Eigen::Index k = 0; k < dim(); ++k) u.col(k) = vectors_[static_cast<std::size_t>(k)];
  return u;
}

MubSet::MubSet(std::vector<OrthonormalBasis> bases) : bases_(std::move(bases)) {
  if (bases_.empty()) throw InvalidParameter("MubSet: no bases");
  for (const auto& b : bases_) {
    if (b.dim() != bases_.front().dim()) throw DimensionError("MubSet: bases differ in dimension");
  }
}

AmubSet::AmubSet(std::vector<OrthonormalBasis> bases, Eigen::Index local_dim)
    : bases_(std::move(bases)), local_dim_(local_dim) {
  if (bases_.empty()) throw InvalidParameter("AmubSet: no bases");
  for (const auto& b : bases_) {
    if (b.dim() != local_dim * local_dim) {
      throw DimensionError(fmt::format("AmubSet: basis of dim {} does not match local dim {}^2",
                                       b.dim(), local_dim));
    }
  }
}

namespace {

UnbiasednessReport cross_overlaps(const std::vector<OrthonormalBasis>& bases, double target) {
  UnbiasednessReport report;
  report.target_overlap = target;
  for (std::size_t k = 0; k < bases.size(); ++k) {
    for (std::size_t l = k + 1; l < bases.size(); ++l) {
      double worst = 0;
      for (const auto& u : bases[k].vectors())
        for (const auto& v : bases[l].vectors())
          worst = std::max(worst, std::abs(std::abs(u.dot(v)) - target));
      report.pairs.push_back({k, l, worst});
      report.max_deviation = std::max(report.max_deviation, worst);
    }
  }
  return report;
}

}  // namespace

UnbiasednessReport verify_mub(const MubSet& mubs) {
  return cross_overlaps(mubs.bases(), 1.0 / std::sqrt(double(mubs.dim())));
}

UnbiasednessReport verify_amub(const AmubSet& amubs) {
  return cross_overlaps(amubs.bases(), 1.0 / double(amubs.local_dim()));
}

MubSet qubit_mubs() {
  using C = std::complex<double>;
  const double h = 1.0 / std::sqrt(2.0);
  auto vec = [](C a, C b) {
    ComplexVector v(2);
    v << a, b;
    return v;
  };
  return MubSet({
      OrthonormalBasis({vec(1, 0), vec(0, 1)}),
      OrthonormalBasis({vec(h, h), vec(h, -h)}),
      OrthonormalBasis({vec(h, C(0, h)), vec(h, C(0, -h))}),
  });
}

AmubSet amub_from_mubs(const MubSet& mubs) {
  if (const auto report = verify_mub(mubs); !report.passed()) {
    throw InvalidParameter(fmt::format(
        "amub_from_mubs: input is not mutually unbiased (max deviation {:.3g})",
        report.max_deviation));
  }
  std::vector<OrthonormalBasis> out;
  for (const auto& basis : mubs.bases()) {
    std::vector<ComplexVector> vs;
    for (const auto& ei : basis.vectors())
      for (const auto& ej : basis.vectors()) vs.push_back(kron(ei, ej));
    out.emplace_back(std::move(vs));
  }
  return AmubSet(std::move(out), mubs.dim());
}

const OrthonormalBasis& qubit_amub(Amub which) {
  static const AmubSet amubs = amub_from_mubs(qubit_mubs());
  return amubs[static_cast<std::size_t>(which)];
}

const char* to_string(Amub which) {
  switch (which) {
    case Amub::a1: return "a1";
    case Amub::a2: return "a2";
    case Amub::a3: return "a3";
  }
  return "?";
}

Amub parse_amub(std::string_view name) {
  for (Amub a : kAllAmubs)
    if (name == to_string(a)) return a;
  throw InvalidParameter(fmt::format("unknown basis '{}' (expected a1, a2 or a3)", name));
}

ComplexMatrix represent_in_basis(const ComplexMatrix& rho, const OrthonormalBasis& basis) {
  if (rho.rows() != basis.dim() || rho.cols() != basis.dim()) {
    throw DimensionError(fmt::format("represent_in_basis: operator dim {} vs basis dim {}",
                                     rho.rows(), basis.dim()));
  }
  const ComplexMatrix u = basis.as_columns();
  return u.adjoint() * rho * u;
}

ComplexMatrix represent_in_basis(const DensityMatrix& rho, const OrthonormalBasis& basis) {
  return represent_in_basis(rho.matrix(), basis);
}

}  // namespace skewcoh
