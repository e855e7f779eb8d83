#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "skewcoh/channels.hpp"

namespace skewcoh {

/// Regular n^3 grid over [lo, hi]^3 in (c1, c2, c3). Each node stores a
/// value (NaN outside the physical region) and a physicality margin (the
/// minimum eigenvalue of the state; negative outside).
class ScalarField3D {
 public:
  ScalarField3D(int resolution, double lo, double hi);

  int resolution() const { return n_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  double spacing() const { return (hi_ - lo_) / (n_ - 1); }
  double coordinate(int i) const;
  Eigen::Vector3d point(int i, int j, int k) const {
    return {coordinate(i), coordinate(j), coordinate(k)};
  }

  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * n_ + j) * n_ + k;
  }
  double value(int i, int j, int k) const { return values_[index(i, j, k)]; }
  double margin(int i, int j, int k) const { return margins_[index(i, j, k)]; }
  bool is_physical(int i, int j, int k) const { return !std::isnan(value(i, j, k)); }

  void set(int i, int j, int k, double value, double margin) {
    values_[index(i, j, k)] = value;
    margins_[index(i, j, k)] = margin;
  }

  const std::vector<double>& values() const { return values_; }

  /// Maximum over physical nodes; NaN when there are none.
  double max_value() const;
  std::size_t physical_count() const;

 private:
  int n_;
  double lo_;
  double hi_;
  std::vector<double> values_;
  std::vector<double> margins_;
};

inline constexpr double kNotAState = std::numeric_limits<double>::quiet_NaN();

struct FieldSample {
  double value;   // kNotAState outside the physical region
  double margin;  // minimum eigenvalue of the state at this point
};

using PointEvaluator = std::function<FieldSample(const Eigen::Vector3d&)>;

/// Evaluates `f` at every node. Work is split over `threads` workers
/// (0 = hardware concurrency); the result does not depend on the split.
ScalarField3D sample_field(int resolution, double lo, double hi, const PointEvaluator& f,
                           unsigned threads = 0);

enum class BdMeasure { a1, a2, a3, sum };
enum class XzMeasure { a1, sum };

inline constexpr int kDefaultResolution = 101;

/// Closed-form Bell-diagonal coherence over [-1, 1]^3.
ScalarField3D sample_bd_field(BdMeasure measure, int resolution = kDefaultResolution,
                              unsigned threads = 0);
/// Numeric-route coherence of the z-aligned X state with fixed r, s.
ScalarField3D sample_xz_field(double r, double s, XzMeasure measure,
                              int resolution = kDefaultResolution, unsigned threads = 0);
/// a1 coherence of the reduced channel's output, via the coefficient map.
ScalarField3D sample_channel_field(ChannelKind kind, double p, int resolution = kDefaultResolution,
                                   unsigned threads = 0);

/// Point evaluators behind the samplers, exposed for re-evaluating mesh
/// vertices.
FieldSample evaluate_bd(BdMeasure measure, const Eigen::Vector3d& c);
FieldSample evaluate_xz(double r, double s, XzMeasure measure, const Eigen::Vector3d& c);
FieldSample evaluate_channel(ChannelKind kind, double p, const Eigen::Vector3d& c);

struct IsoSurfaceMesh {
  double level = 0;
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::array<std::uint32_t, 3>> triangles;
  /// True for vertices placed on the physical-region boundary of a clipped
  /// cell rather than by interpolating the level.
  std::vector<bool> on_boundary;

  bool empty() const { return triangles.empty(); }
  /// Number of vertex-connected triangle groups.
  std::size_t connected_components() const;
  /// Triangle count of each vertex-connected group, largest first.
  std::vector<std::size_t> component_sizes() const;
  /// Groups holding at least `fraction` of all triangles; drops the
  /// single-node bubbles that thin features leave at finite resolution.
  std::size_t major_components(double fraction = 0.01) const;
};

/// Marching cubes over physical cells. Corners outside the physical region
/// count as below the level; their edges end on the region's boundary.
IsoSurfaceMesh extract_isosurface(const ScalarField3D& field, double level);

IsoSurfaceMesh channel_surface(ChannelKind kind, double p, double level,
                               int resolution = kDefaultResolution, unsigned threads = 0);

struct Curve1D {
  std::string parameter;
  std::vector<std::pair<double, double>> samples;
};

/// n evenly spaced points from lo to hi inclusive.
std::vector<double> uniform_grid(double lo, double hi, int n);

Curve1D werner_curve(std::span<const double> p_grid);
Curve1D isotropic_curve(std::span<const double> f_grid);

const char* to_string(BdMeasure m);
const char* to_string(XzMeasure m);

}  // namespace skewcoh
