#include "skewcoh/channels.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>

#include "skewcoh/coherence.hpp"

namespace skewcoh {

const char* to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::BF: return "BF";
    case ChannelKind::PF: return "PF";
    case ChannelKind::BPF: return "BPF";
    case ChannelKind::GAD: return "GAD";
  }
  return "?";
}

ChannelKind parse_channel_kind(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
  for (ChannelKind k : kAllChannels)
    if (upper == to_string(k)) return k;
  throw InvalidParameter(fmt::format("unknown channel '{}' (expected BF, PF, BPF or GAD)", name));
}

KrausChannel::KrausChannel(ChannelKind kind, double p, std::optional<double> gamma,
                           std::vector<ComplexMatrix> operators)
    : kind_(kind), p_(p), gamma_(gamma), operators_(std::move(operators)) {
  for (const auto& e : operators_) {
    if (e.rows() != 2 || e.cols() != 2) throw DimensionError("KrausChannel: operators must be 2x2");
  }
  if (const double d = completeness_defect(); d > kCompletenessTol) {
    throw InvalidParameter(fmt::format("KrausChannel: completeness violated by {:.3g}", d));
  }
}

double KrausChannel::completeness_defect() const {
  ComplexMatrix sum = ComplexMatrix::Zero(2, 2);
  for (const auto& e : operators_) sum += e.adjoint() * e;
  return (sum - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff();
}

namespace {

void require_probability(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw InvalidParameter(fmt::format("{}={} outside [0,1]", name, v));
  }
}

}  // namespace

KrausChannel make_channel(ChannelKind kind, double p, std::optional<double> gamma) {
  require_probability(p, "p");
  if (kind != ChannelKind::GAD) {
    if (gamma) throw InvalidParameter(fmt::format("{} takes no gamma", to_string(kind)));
    const int flip = kind == ChannelKind::BF ? 1 : kind == ChannelKind::PF ? 3 : 2;
    return KrausChannel(kind, p, std::nullopt,
                        {std::sqrt(1 - p / 2) * pauli::identity(),
                         std::sqrt(p / 2) * pauli::sigma(flip)});
  }
  if (!gamma) throw InvalidParameter("GAD requires gamma");
  const double g = *gamma;
  require_probability(g, "gamma");
  const double keep = std::sqrt(1 - g);
  const double jump = std::sqrt(g);
  ComplexMatrix e0(2, 2), e1(2, 2), e2(2, 2), e3(2, 2);
  e0 << 1, 0, 0, keep;
  e1 << 0, jump, 0, 0;
  e2 << keep, 0, 0, 1;
  e3 << 0, 0, jump, 0;
  const double a = std::sqrt(p);
  const double b = std::sqrt(1 - p);
  return KrausChannel(kind, p, g, {a * e0, a * e1, b * e2, b * e3});
}

KrausChannel make_reduced_channel(ChannelKind kind, double p) {
  if (kind == ChannelKind::GAD) return make_channel(kind, 0.5, p);
  return make_channel(kind, p);
}

DensityMatrix apply_product_channel(const KrausChannel& channel, const DensityMatrix& rho) {
  if (rho.dim() != 4) {
    throw DimensionError(fmt::format("apply_product_channel: expected a 4x4 state, got dim {}",
                                     rho.dim()));
  }
  ComplexMatrix out = ComplexMatrix::Zero(4, 4);
  for (const auto& ei : channel.operators()) {
    for (const auto& ej : channel.operators()) {
      const ComplexMatrix k = kron(ei, ej);
      out += k * rho.matrix() * k.adjoint();
    }
  }
  return DensityMatrix((out + out.adjoint()) / 2.0);
}

const CoefficientMap& coefficient_map(ChannelKind kind) {
  static const std::array<CoefficientMap, 4> table{{
      {ChannelKind::BF, {0, 2, 2}},
      {ChannelKind::PF, {2, 2, 0}},
      {ChannelKind::BPF, {2, 0, 2}},
      {ChannelKind::GAD, {1, 1, 2}},
  }};
  return table[static_cast<std::size_t>(kind)];
}

BellDiagonalParams predicted_coefficients(const CoefficientMap& map, const BellDiagonalParams& c,
                                          double p) {
  require_probability(p, "p");
  const double q = 1 - p;
  auto scale = [q](int exponent) { return std::pow(q, exponent); };
  return {c.c1 * scale(map.exponents[0]), c.c2 * scale(map.exponents[1]),
          c.c3 * scale(map.exponents[2])};
}

std::vector<DynamicsSample> dynamics_curve(ChannelKind kind, const BellDiagonalParams& c,
                                           Amub basis, std::span<const double> p_grid) {
  const DensityMatrix input = bell_diagonal(c);
  const OrthonormalBasis& b = qubit_amub(basis);
  std::vector<DynamicsSample> out;
  out.reserve(p_grid.size());
  for (double p : p_grid) {
    const BellDiagonalParams predicted = predicted_coefficients(coefficient_map(kind), c, p);
    const double value = coherence_numeric(bell_diagonal(predicted), b);
    const double check = coherence_numeric(apply_product_channel(make_reduced_channel(kind, p), input), b);
    if (std::abs(value - check) > 1e-10) {
      throw InternalError(fmt::format("dynamics_curve: {} at p={} disagrees with Kraus evaluation "
                                      "({:.12g} vs {:.12g})",
                                      to_string(kind), p, value, check));
    }
    out.push_back({p, value});
  }
  return out;
}

}  // namespace skewcoh
