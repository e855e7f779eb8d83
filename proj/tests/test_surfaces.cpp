#include <doctest.h>

#include <Eigen/Geometry>
#include <map>
#include <set>

#include "skewcoh/coherence.hpp"
#include "skewcoh/surfaces.hpp"

using namespace skewcoh;

namespace {

long euler_characteristic(const IsoSurfaceMesh& m) {
  std::set<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (const auto& t : m.triangles)
    for (int e = 0; e < 3; ++e) {
      auto a = t[e], b = t[(e + 1) % 3];
      edges.emplace(std::min(a, b), std::max(a, b));
    }
  return long(m.vertices.size()) - long(edges.size()) + long(m.triangles.size());
}

// Every edge of a closed oriented surface is used once in each direction.
bool closed_and_oriented(const IsoSurfaceMesh& m) {
  std::map<std::pair<std::uint32_t, std::uint32_t>, int> directed;
  for (const auto& t : m.triangles)
    for (int e = 0; e < 3; ++e) ++directed[{t[e], t[(e + 1) % 3]}];
  for (const auto& [edge, count] : directed) {
    if (count != 1) return false;
    auto it = directed.find({edge.second, edge.first});
    if (it == directed.end() || it->second != 1) return false;
  }
  return true;
}

double signed_volume(const IsoSurfaceMesh& m) {
  double v = 0;
  for (const auto& t : m.triangles) v += m.vertices[t[0]].dot(m.vertices[t[1]].cross(m.vertices[t[2]])) / 6;
  return v;
}

FieldSample radial(const Eigen::Vector3d& x) { return {x.norm(), 1.0}; }

}  // namespace

TEST_CASE("grid geometry") {
  ScalarField3D f(5, -1, 1);
  CHECK(f.spacing() == 0.5);
  CHECK(f.coordinate(0) == -1.0);
  CHECK(f.coordinate(4) == 1.0);
  CHECK(f.index(1, 2, 3) == (1 * 5 + 2) * 5 + 3);
  CHECK(f.physical_count() == 0);
  CHECK(std::isnan(f.max_value()));
  CHECK_THROWS_AS(ScalarField3D(1, -1, 1), InvalidParameter);
  CHECK_THROWS_AS(ScalarField3D(5, 1, -1), InvalidParameter);

  const auto g = uniform_grid(0, 1, 101);
  CHECK(g.size() == 101);
  CHECK(g[50] == 0.5);
  CHECK(g.back() == 1.0);
}

TEST_CASE("sampling does not depend on the thread count") {
  const auto one = sample_bd_field(BdMeasure::sum, 21, 1);
  const auto three = sample_bd_field(BdMeasure::sum, 21, 3);
  REQUIRE(one.values().size() == three.values().size());
  for (std::size_t i = 0; i < one.values().size(); ++i) {
    const double a = one.values()[i], b = three.values()[i];
    REQUIRE(((std::isnan(a) && std::isnan(b)) || a == b));
  }
}

TEST_CASE("Bell-diagonal field covers a third of the cube") {
  const auto f = sample_bd_field(BdMeasure::a1, 41);
  const double fraction = double(f.physical_count()) / (41.0 * 41 * 41);
  CHECK(fraction == doctest::Approx(1.0 / 3).epsilon(0.05));
  CHECK(f.max_value() == doctest::Approx(0.5).epsilon(1e-9));
  // Nodes agree with the point closed form.
  CHECK(f.value(20, 20, 20) == doctest::Approx(0.0));
  CHECK(f.value(0, 0, 0) == doctest::Approx(cf_bd({-1, -1, -1}, Amub::a1)));
  CHECK_FALSE(f.is_physical(40, 40, 40));
}

TEST_CASE("X-state field at r = s = 0 matches the Bell-diagonal one") {
  const auto xz = sample_xz_field(0, 0, XzMeasure::a1, 21);
  const auto bd = sample_bd_field(BdMeasure::a1, 21);
  CHECK(xz.physical_count() == bd.physical_count());
  double worst = 0;
  for (std::size_t i = 0; i < xz.values().size(); ++i)
    if (!std::isnan(bd.values()[i])) worst = std::max(worst, std::abs(xz.values()[i] - bd.values()[i]));
  CHECK(worst <= 1e-7);
}

TEST_CASE("marching cubes: sphere") {
  const int n = 41;
  const auto field = sample_field(n, -1, 1, radial);
  const auto mesh = extract_isosurface(field, 0.5);
  REQUIRE_FALSE(mesh.empty());
  CHECK(mesh.connected_components() == 1);
  CHECK(euler_characteristic(mesh) == 2);
  CHECK(closed_and_oriented(mesh));
  double worst = 0;
  for (const auto& v : mesh.vertices) worst = std::max(worst, std::abs(v.norm() - 0.5));
  CHECK(worst < field.spacing() * field.spacing());
  // Normals point downhill, so they face into the ball here and the signed
  // volume is negative.
  CHECK(signed_volume(mesh) == doctest::Approx(-4.0 / 3 * M_PI * 0.125).epsilon(0.01));

  // With the field flipped the superlevel set is the ball itself.
  const auto bump = sample_field(n, -1, 1, [](const Eigen::Vector3d& x) -> FieldSample {
    return {1.0 - x.norm(), 1.0};
  });
  CHECK(signed_volume(extract_isosurface(bump, 0.5)) == doctest::Approx(4.0 / 3 * M_PI * 0.125).epsilon(0.01));
}

TEST_CASE("marching cubes: two blobs and saddles") {
  auto two = [](const Eigen::Vector3d& x) -> FieldSample {
    const Eigen::Vector3d l(-0.5, 0, 0), r(0.5, 0, 0);
    return {std::min((x - l).norm(), (x - r).norm()), 1.0};
  };
  const auto field = sample_field(33, -1, 1, two);
  const auto mesh = extract_isosurface(field, 0.3);
  CHECK(mesh.connected_components() == 2);
  CHECK(euler_characteristic(mesh) == 4);
  CHECK(closed_and_oriented(mesh));

  // A noisy field exercises ambiguous faces; the surface must stay manifold.
  auto wavy = [](const Eigen::Vector3d& x) -> FieldSample {
    return {2.0 + std::sin(9 * x.x()) * std::sin(9 * x.y()) * std::sin(9 * x.z()), 1.0};
  };
  const auto wf = sample_field(24, -1, 1, wavy);
  const auto wm = extract_isosurface(wf, 2.0);
  CHECK_FALSE(wm.empty());
  std::map<std::pair<std::uint32_t, std::uint32_t>, int> directed;
  for (const auto& t : wm.triangles)
    for (int e = 0; e < 3; ++e) ++directed[{t[e], t[(e + 1) % 3]}];
  bool no_duplicates = true;
  for (const auto& [edge, count] : directed) no_duplicates &= count == 1;
  CHECK(no_duplicates);
}

TEST_CASE("marching cubes: random fields stay closed and oriented") {
  // Hashed noise, forced below the level on the outer shell so every surface
  // closes inside the grid. Saddle faces are everywhere.
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const int n = 12;
    auto noise = [seed, n](const Eigen::Vector3d& x) -> FieldSample {
      const double h = 2.0 / (n - 1);
      const auto i = std::uint64_t(std::lround((x.x() + 1) / h));
      const auto j = std::uint64_t(std::lround((x.y() + 1) / h));
      const auto k = std::uint64_t(std::lround((x.z() + 1) / h));
      if (x.cwiseAbs().maxCoeff() > 1 - h / 2) return {0.0, 1.0};
      std::uint64_t z = (seed * 0x9E3779B97F4A7C15ull + i * 73856093) ^ (j * 19349663) ^ (k * 83492791);
      z ^= z >> 33;
      z *= 0xff51afd7ed558ccdull;
      z ^= z >> 33;
      return {double(z >> 11) * 0x1.0p-53, 1.0};
    };
    const auto mesh = extract_isosurface(sample_field(n, -1, 1, noise), 0.5);
    REQUIRE_FALSE(mesh.empty());
    CAPTURE(seed);
    REQUIRE(closed_and_oriented(mesh));
  }
}

TEST_CASE("marching cubes: diagonal chains of nodes connect across saddle faces") {
  // Nodes on the face diagonal c1 = c2 are above the level, everything else
  // is below: the surface must be one tube, not a string of bubbles.
  auto diagonal = [](const Eigen::Vector3d& x) -> FieldSample {
    const bool on = std::abs(x.x() - x.y()) < 1e-9 && std::abs(x.z()) < 1e-9 && std::abs(x.x()) < 0.7;
    return {on ? 1.0 : 0.0, 1.0};
  };
  const auto mesh = extract_isosurface(sample_field(21, -1, 1, diagonal), 0.4);
  CHECK(mesh.connected_components() == 1);
  CHECK(closed_and_oriented(mesh));
  CHECK(mesh.major_components() == 1);
}

TEST_CASE("marching cubes: level checks") {
  const auto field = sample_field(11, -1, 1, radial);
  CHECK(extract_isosurface(field, 5.0).empty());
  CHECK_THROWS_AS(extract_isosurface(field, -0.1), InvalidParameter);
}

TEST_CASE("marching cubes: clipped cells end on the physical boundary") {
  auto clipped = [](const Eigen::Vector3d& x) -> FieldSample {
    const double margin = 0.8 - x.norm();
    return {margin >= 0 ? x.x() + 1.0 : kNotAState, margin};
  };
  const auto field = sample_field(31, -1, 1, clipped);
  const auto mesh = extract_isosurface(field, 1.0);
  REQUIRE_FALSE(mesh.empty());
  REQUIRE(mesh.on_boundary.size() == mesh.vertices.size());
  int boundary = 0;
  double worst_plane = 0, worst_sphere = 0;
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    if (mesh.on_boundary[i]) {
      ++boundary;
      worst_sphere = std::max(worst_sphere, std::abs(mesh.vertices[i].norm() - 0.8));
    } else {
      worst_plane = std::max(worst_plane, std::abs(mesh.vertices[i].x()));
    }
  }
  CHECK(boundary > 0);
  CHECK(worst_plane < 1e-12);
  CHECK(worst_sphere < field.spacing() * field.spacing());
}

TEST_CASE("channel surfaces") {
  const auto bf = channel_surface(ChannelKind::BF, 0.3, 0.2, 41);
  CHECK_FALSE(bf.empty());
  CHECK(channel_surface(ChannelKind::BF, 0.3, 0.6, 41).empty());
  // Vertices sit on the requested level.
  double worst = 0;
  for (std::size_t i = 0; i < bf.vertices.size(); ++i) {
    if (bf.on_boundary[i]) continue;
    worst = std::max(worst, std::abs(evaluate_channel(ChannelKind::BF, 0.3, bf.vertices[i]).value - 0.2));
  }
  CHECK(worst < 0.02);
}

TEST_CASE("one-parameter curves") {
  const auto grid = uniform_grid(0, 1, 11);
  const auto w = werner_curve(grid);
  REQUIRE(w.samples.size() == 11);
  CHECK(w.samples.front().second == doctest::Approx(0.5));
  const auto iso = isotropic_curve(grid);
  CHECK(iso.samples[0].second == doctest::Approx(1.0 / 6));
  const std::vector<double> bad{0.5, 0.2};
  CHECK_THROWS_AS(werner_curve(bad), InvalidParameter);
}
