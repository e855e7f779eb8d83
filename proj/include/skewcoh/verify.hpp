#pragma once

// Invariant suites behind `skewcoh verify`. Each suite samples with a seeded
// Rng and reports max deviations against fixed tolerances. Reports contain
// no timings, so identical options give byte-identical output.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "skewcoh/surfaces.hpp"

namespace skewcoh {

namespace reference {
// Hand-entered closed-form matrices of the Bell-diagonal and z-aligned X
// states in the AMUB bases, used as fixed references for represent_in_basis.
ComplexMatrix bell_diagonal_in(Amub basis, const BellDiagonalParams& c);
ComplexMatrix x_state_z_in(Amub basis, const XStateZParams& p);
}  // namespace reference

struct Metric {
  enum class Bound { AtMost, AtLeast, Report };

  std::string name;
  double value = 0;
  double threshold = 0;
  Bound bound = Bound::AtMost;

  bool passed() const {
    switch (bound) {
      case Bound::AtMost: return value <= threshold;
      case Bound::AtLeast: return value >= threshold;
      case Bound::Report: return true;
    }
    return false;
  }
};

struct SuiteResult {
  std::string name;
  std::vector<Metric> metrics;
  std::vector<std::string> notes;

  bool passed() const;
  void at_most(std::string name, double value, double threshold);
  void at_least(std::string name, double value, double threshold);
  void report(std::string name, double value);
};

struct VerifyOptions {
  std::uint64_t seed = 20200417;
  int samples = 0;  // 0 selects each suite's default
  int resolution = kDefaultResolution;
};

const std::vector<std::string>& suite_names();

/// Throws InvalidParameter for an unknown suite name.
SuiteResult run_suite(std::string_view name, const VerifyOptions& options);

std::string format_report(std::span<const SuiteResult> results);

/// A printed X-state closed form that deviates from the numeric route.
struct XStateDeviation {
  XStateZParams params;
  std::string form;  // "a1" or "sum"
  double printed;
  double numeric;
};

/// Evaluates the printed displays on `samples` seeded physical parameter
/// sets and returns every deviation above `threshold`.
std::vector<XStateDeviation> printed_x_state_deviations(std::uint64_t seed, int samples,
                                                        double threshold = 1e-8);

}  // namespace skewcoh
