#include "skewcoh/surfaces.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "marching_cubes.hpp"
#include "skewcoh/coherence.hpp"

namespace skewcoh {

ScalarField3D::ScalarField3D(int resolution, double lo, double hi)
    : n_(resolution), lo_(lo), hi_(hi) {
  if (resolution < 2) {
    throw InvalidParameter(fmt::format("field resolution {} must be at least 2", resolution));
  }
  if (!(lo < hi)) throw InvalidParameter(fmt::format("empty axis range [{}, {}]", lo, hi));
  const auto size = static_cast<std::size_t>(n_) * n_ * n_;
  values_.assign(size, kNotAState);
  margins_.assign(size, -1.0);
}

double ScalarField3D::coordinate(int i) const {
  if (i == n_ - 1) return hi_;
  return lo_ + (hi_ - lo_) * double(i) / double(n_ - 1);
}

double ScalarField3D::max_value() const {
  double best = kNotAState;
  for (double v : values_)
    if (!std::isnan(v) && !(v <= best)) best = v;
  return best;
}

std::size_t ScalarField3D::physical_count() const {
  return static_cast<std::size_t>(
      std::count_if(values_.begin(), values_.end(), [](double v) { return !std::isnan(v); }));
}

ScalarField3D sample_field(int resolution, double lo, double hi, const PointEvaluator& f,
                           unsigned threads) {
  ScalarField3D field(resolution, lo, hi);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(resolution));

  // Slab i is owned by worker i % threads; every node is written exactly once.
  auto work = [&field, &f, resolution, threads](unsigned worker) {
    for (int i = static_cast<int>(worker); i < resolution; i += static_cast<int>(threads)) {
      for (int j = 0; j < resolution; ++j) {
        for (int k = 0; k < resolution; ++k) {
          const FieldSample s = f(field.point(i, j, k));
          field.set(i, j, k, s.value, s.margin);
        }
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
  }
  return field;
}

namespace {

constexpr double kTetraTol = 1e-12;

double tetra_margin(const BellDiagonalParams& c) {
  const auto e = c.scaled_eigenvalues();
  return *std::min_element(e.begin(), e.end()) / 4;
}

BellDiagonalParams to_params(const Eigen::Vector3d& c) { return {c.x(), c.y(), c.z()}; }

}  // namespace

FieldSample evaluate_bd(BdMeasure measure, const Eigen::Vector3d& point) {
  const BellDiagonalParams c = to_params(point);
  const double margin = tetra_margin(c);
  if (!c.is_physical(kTetraTol)) return {kNotAState, margin};
  switch (measure) {
    case BdMeasure::a1: return {cf_bd(c, Amub::a1), margin};
    case BdMeasure::a2: return {cf_bd(c, Amub::a2), margin};
    case BdMeasure::a3: return {cf_bd(c, Amub::a3), margin};
    case BdMeasure::sum: return {cf_bd_sum(c), margin};
  }
  return {kNotAState, margin};
}

FieldSample evaluate_xz(double r, double s, XzMeasure measure, const Eigen::Vector3d& point) {
  const XStateZParams params{r, s, to_params(point)};
  const double margin = x_state_z_min_eigenvalue(params);
  if (margin < -kTetraTol / 4) return {kNotAState, margin};
  try {
    const DensityMatrix rho = x_state_z(params);
    if (measure == XzMeasure::a1) return {coherence_numeric(rho, qubit_amub(Amub::a1)), margin};
    const auto all = coherence_numeric_amubs(rho);
    return {all[0] + all[1] + all[2], margin};
  } catch (const InvalidState&) {
    return {kNotAState, margin};
  }
}

FieldSample evaluate_channel(ChannelKind kind, double p, const Eigen::Vector3d& point) {
  const BellDiagonalParams c = to_params(point);
  const double margin = tetra_margin(c);
  if (!c.is_physical(kTetraTol)) return {kNotAState, margin};
  const BellDiagonalParams out = predicted_coefficients(coefficient_map(kind), c, p);
  return {cf_bd(out, Amub::a1), margin};
}

ScalarField3D sample_bd_field(BdMeasure measure, int resolution, unsigned threads) {
  return sample_field(
      resolution, -1.0, 1.0, [measure](const Eigen::Vector3d& c) { return evaluate_bd(measure, c); },
      threads);
}

ScalarField3D sample_xz_field(double r, double s, XzMeasure measure, int resolution,
                              unsigned threads) {
  if (!(std::abs(r) <= 1.0 && std::abs(s) <= 1.0)) {
    throw InvalidParameter(fmt::format("Bloch components r={}, s={} must lie in [-1,1]", r, s));
  }
  return sample_field(
      resolution, -1.0, 1.0,
      [r, s, measure](const Eigen::Vector3d& c) { return evaluate_xz(r, s, measure, c); },
      threads);
}

ScalarField3D sample_channel_field(ChannelKind kind, double p, int resolution, unsigned threads) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidParameter(fmt::format("p={} outside [0,1]", p));
  return sample_field(
      resolution, -1.0, 1.0,
      [kind, p](const Eigen::Vector3d& c) { return evaluate_channel(kind, p, c); }, threads);
}

IsoSurfaceMesh extract_isosurface(const ScalarField3D& field, double level) {
  if (!(level >= 0.0)) throw InvalidParameter(fmt::format("level {} must be >= 0", level));
  IsoSurfaceMesh mesh;
  mesh.level = level;
  const int n = field.resolution();

  // Vertices are keyed by grid edge (lower node, axis) so neighbouring cells share them.
  std::unordered_map<std::uint64_t, std::uint32_t> vertex_of_edge;
  auto above = [&field, level](int i, int j, int k) {
    return field.is_physical(i, j, k) && field.value(i, j, k) > level;
  };

  auto edge_vertex = [&](int i, int j, int k, int edge) -> std::uint32_t {
    const auto [ca, cb] = mc::kEdgeCorners[edge];
    const auto& oa = mc::kCornerOffset[ca];
    const auto& ob = mc::kCornerOffset[cb];
    std::array<int, 3> a{i + oa[0], j + oa[1], k + oa[2]};
    std::array<int, 3> b{i + ob[0], j + ob[1], k + ob[2]};
    if (std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end())) std::swap(a, b);
    const int axis = b[0] != a[0] ? 0 : b[1] != a[1] ? 1 : 2;
    const std::uint64_t key = field.index(a[0], a[1], a[2]) * 3 + static_cast<std::uint64_t>(axis);
    if (auto it = vertex_of_edge.find(key); it != vertex_of_edge.end()) return it->second;

    const bool pa = field.is_physical(a[0], a[1], a[2]);
    const bool pb = field.is_physical(b[0], b[1], b[2]);
    double t;
    bool boundary = false;
    if (pa && pb) {
      const double va = field.value(a[0], a[1], a[2]);
      const double vb = field.value(b[0], b[1], b[2]);
      t = (level - va) / (vb - va);
    } else {
      // One end is outside: stop where the margin crosses zero.
      const double ma = field.margin(a[0], a[1], a[2]);
      const double mb = field.margin(b[0], b[1], b[2]);
      t = ma / (ma - mb);
      boundary = true;
    }
    t = std::clamp(std::isfinite(t) ? t : 0.5, 0.0, 1.0);
    const Eigen::Vector3d pa_pos = field.point(a[0], a[1], a[2]);
    const Eigen::Vector3d pb_pos = field.point(b[0], b[1], b[2]);
    const auto id = static_cast<std::uint32_t>(mesh.vertices.size());
    mesh.vertices.push_back(pa_pos + t * (pb_pos - pa_pos));
    mesh.on_boundary.push_back(boundary);
    vertex_of_edge.emplace(key, id);
    return id;
  };

  for (int i = 0; i + 1 < n; ++i) {
    for (int j = 0; j + 1 < n; ++j) {
      for (int k = 0; k + 1 < n; ++k) {
        int mask = 0;
        bool any_physical = false;
        for (int c = 0; c < 8; ++c) {
          const auto& o = mc::kCornerOffset[c];
          any_physical |= field.is_physical(i + o[0], j + o[1], k + o[2]);
          if (above(i + o[0], j + o[1], k + o[2])) mask |= 1 << c;
        }
        if (!any_physical || mask == 0 || mask == 255) continue;
        // Saddle faces: join the above corners when the face-centre estimate
        // (mean of the physical corner values) is above the level. Both cells
        // sharing a face reach the same decision.
        int joins = 0;
        const int saddles = mc::saddle_faces(mask);
        for (int f = 0; f < 6; ++f) {
          if (!((saddles >> f) & 1)) continue;
          double sum = 0;
          int count = 0;
          for (int c : mc::kFaces[f]) {
            const auto& o = mc::kCornerOffset[c];
            if (!field.is_physical(i + o[0], j + o[1], k + o[2])) continue;
            sum += field.value(i + o[0], j + o[1], k + o[2]);
            ++count;
          }
          if (sum > level * count) joins |= 1 << f;
        }
        // Loop centroids are private to the cell; each is the mean of the
        // loop's edge vertices, which fan around it.
        std::array<std::uint32_t, 4> centre_id{};
        std::array<bool, 4> has_centre{};
        auto vertex = [&](int entry) -> std::uint32_t {
          if (entry < mc::kLoopCentre) return edge_vertex(i, j, k, entry);
          const int loop = entry - mc::kLoopCentre;
          if (!has_centre[loop]) {
            Eigen::Vector3d sum = Eigen::Vector3d::Zero();
            int count = 0;
            for (const auto& t : mc::case_triangles(mask, joins)) {
              if (t[0] != entry) continue;
              sum += mesh.vertices[edge_vertex(i, j, k, t[1])];
              ++count;
            }
            centre_id[loop] = static_cast<std::uint32_t>(mesh.vertices.size());
            mesh.vertices.push_back(sum / count);
            mesh.on_boundary.push_back(false);
            has_centre[loop] = true;
          }
          return centre_id[loop];
        };
        for (const auto& tri : mc::case_triangles(mask, joins)) {
          mesh.triangles.push_back({vertex(tri[0]), vertex(tri[1]), vertex(tri[2])});
        }
      }
    }
  }
  return mesh;
}

std::vector<std::size_t> IsoSurfaceMesh::component_sizes() const {
  std::vector<std::uint32_t> parent(vertices.size());
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&parent](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& t : triangles) {
    parent[find(t[1])] = find(t[0]);
    parent[find(t[2])] = find(t[0]);
  }
  std::unordered_map<std::uint32_t, std::size_t> size_of_root;
  for (const auto& t : triangles) ++size_of_root[find(t[0])];
  std::vector<std::size_t> sizes;
  for (const auto& [root, size] : size_of_root) sizes.push_back(size);
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  return sizes;
}

std::size_t IsoSurfaceMesh::connected_components() const { return component_sizes().size(); }

std::size_t IsoSurfaceMesh::major_components(double fraction) const {
  const auto sizes = component_sizes();
  return std::size_t(std::count_if(sizes.begin(), sizes.end(), [&](std::size_t s) {
    return double(s) >= fraction * double(triangles.size());
  }));
}

IsoSurfaceMesh channel_surface(ChannelKind kind, double p, double level, int resolution,
                               unsigned threads) {
  return extract_isosurface(sample_channel_field(kind, p, resolution, threads), level);
}

std::vector<double> uniform_grid(double lo, double hi, int n) {
  if (n < 2) throw InvalidParameter(fmt::format("grid needs at least 2 points, got {}", n));
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * double(i) / double(n - 1);
  g.back() = hi;
  return g;
}

namespace {

template <typename Param, typename Fn>
Curve1D sample_curve(const char* name, std::span<const double> grid, Fn&& f) {
  Curve1D curve{name, {}};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw InvalidParameter(fmt::format("{} grid must be strictly increasing", name));
    }
    curve.samples.emplace_back(grid[i], f(Param(grid[i])));
  }
  return curve;
}

}  // namespace

Curve1D werner_curve(std::span<const double> p_grid) {
  return sample_curve<WernerParam>("p", p_grid, [](WernerParam p) { return cf_werner(p); });
}

Curve1D isotropic_curve(std::span<const double> f_grid) {
  return sample_curve<IsotropicParam>("F", f_grid, [](IsotropicParam f) { return cf_isotropic(f); });
}

const char* to_string(BdMeasure m) {
  switch (m) {
    case BdMeasure::a1: return "a1";
    case BdMeasure::a2: return "a2";
    case BdMeasure::a3: return "a3";
    case BdMeasure::sum: return "sum";
  }
  return "?";
}

const char* to_string(XzMeasure m) { return m == XzMeasure::a1 ? "a1" : "sum"; }

}  // namespace skewcoh
