#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "skewcoh/bases.hpp"

namespace skewcoh {

/// Bit flip, phase flip, bit-phase flip, generalised amplitude damping.
enum class ChannelKind { BF, PF, BPF, GAD };

inline constexpr std::array<ChannelKind, 4> kAllChannels{ChannelKind::BF, ChannelKind::PF,
                                                         ChannelKind::BPF, ChannelKind::GAD};

const char* to_string(ChannelKind kind);
/// Case-insensitive "BF", "PF", "BPF", "GAD"; throws InvalidParameter otherwise.
ChannelKind parse_channel_kind(std::string_view name);

inline constexpr double kCompletenessTol = 1e-12;

/// Single-qubit Kraus set. Completeness sum E^dagger E = I is checked on
/// construction.
class KrausChannel {
 public:
  KrausChannel(ChannelKind kind, double p, std::optional<double> gamma,
               std::vector<ComplexMatrix> operators);

  ChannelKind kind() const { return kind_; }
  double p() const { return p_; }
  std::optional<double> gamma() const { return gamma_; }
  const std::vector<ComplexMatrix>& operators() const { return operators_; }

  /// max-abs entry of sum_k E_k^dagger E_k - I.
  double completeness_defect() const;

 private:
  ChannelKind kind_;
  double p_;
  std::optional<double> gamma_;
  std::vector<ComplexMatrix> operators_;
};

/// Builds the Kraus operators. `gamma` is required for GAD and rejected
/// otherwise; p and gamma must lie in [0, 1].
KrausChannel make_channel(ChannelKind kind, double p, std::optional<double> gamma = {});

/// Single-parameter form: for GAD the damping probability is fixed at 1/2 and
/// `p` plays the role of gamma. Other kinds are unchanged.
KrausChannel make_reduced_channel(ChannelKind kind, double p);

/// sum_ij (E_i x E_j) rho (E_i x E_j)^dagger on a two-qubit state.
DensityMatrix apply_product_channel(const KrausChannel& channel, const DensityMatrix& rho);

/// c_i' = c_i (1 - p)^exponent_i for the reduced single-parameter channels.
struct CoefficientMap {
  ChannelKind kind;
  std::array<int, 3> exponents;
};

const CoefficientMap& coefficient_map(ChannelKind kind);

BellDiagonalParams predicted_coefficients(const CoefficientMap& map, const BellDiagonalParams& c,
                                          double p);

struct DynamicsSample {
  double p;
  double coherence;
};

/// Coherence of the reduced channel's output over `p_grid`. Each point is
/// computed from the predicted coefficients and cross-checked against the
/// Kraus evaluation; a mismatch beyond 1e-10 throws InternalError.
std::vector<DynamicsSample> dynamics_curve(ChannelKind kind, const BellDiagonalParams& c,
                                           Amub basis, std::span<const double> p_grid);

}  // namespace skewcoh
