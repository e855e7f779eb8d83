#include "marching_cubes.hpp"

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <algorithm>

namespace skewcoh::mc {

namespace {

int edge_between(int a, int b) {
  for (int e = 0; e < 12; ++e) {
    const auto [u, v] = kEdgeCorners[e];
    if ((u == a && v == b) || (u == b && v == a)) return e;
  }
  return -1;
}

Eigen::Vector3d corner_position(int c) {
  return {double(kCornerOffset[c][0]), double(kCornerOffset[c][1]), double(kCornerOffset[c][2])};
}

Eigen::Vector3d face_centre(int f) {
  Eigen::Vector3d c = Eigen::Vector3d::Zero();
  for (int corner : kFaces[f]) c += corner_position(corner);
  return c / 4;
}

int shared_corner(int ea, int eb) {
  for (int u : kEdgeCorners[ea])
    for (int v : kEdgeCorners[eb])
      if (u == v) return u;
  return -1;
}

int face_of(int ea, int eb) {
  for (int f = 0; f < 6; ++f) {
    int hits = 0;
    for (int i = 0; i < 4; ++i) {
      const int e = edge_between(kFaces[f][i], kFaces[f][(i + 1) % 4]);
      hits += e == ea || e == eb;
    }
    if (hits == 2) return f;
  }
  return -1;
}

Eigen::Vector3d edge_midpoint(int e) {
  return 0.5 * (corner_position(kEdgeCorners[e][0]) + corner_position(kEdgeCorners[e][1]));
}

std::vector<Triangle> triangulate_case(int mask, int joins) {
  auto above = [mask](int c) { return (mask >> c) & 1; };

  // Each crossed edge gets exactly two neighbours, one per adjacent face.
  std::array<std::vector<int>, 12> links;
  for (int f = 0; f < 6; ++f) {
    const auto& face = kFaces[f];
    std::array<int, 4> edges{};
    std::array<bool, 4> crossed{};
    int n_crossed = 0;
    for (int i = 0; i < 4; ++i) {
      const int a = face[i];
      const int b = face[(i + 1) % 4];
      edges[i] = edge_between(a, b);
      crossed[i] = above(a) != above(b);
      n_crossed += crossed[i];
    }
    if (n_crossed == 2) {
      int first = -1, second = -1;
      for (int i = 0; i < 4; ++i) {
        if (!crossed[i]) continue;
        (first < 0 ? first : second) = edges[i];
      }
      links[first].push_back(second);
      links[second].push_back(first);
    } else if (n_crossed == 4) {
      // Saddle face: cut off each corner on the side that is not joined.
      const bool join_above = (joins >> f) & 1;
      for (int i = 0; i < 4; ++i) {
        if (bool(above(face[i])) == join_above) continue;
        const int before = edges[(i + 3) % 4];
        const int after = edges[i];
        links[before].push_back(after);
        links[after].push_back(before);
      }
    }
  }

  std::vector<Triangle> triangles;
  std::array<bool, 12> visited{};
  int loop_count = 0;
  for (int start = 0; start < 12; ++start) {
    if (visited[start] || links[start].empty()) continue;
    std::vector<int> loop{start};
    visited[start] = true;
    int prev = start;
    int cur = links[start][0];
    while (cur != start) {
      loop.push_back(cur);
      visited[cur] = true;
      const int next = links[cur][0] == prev ? links[cur][1] : links[cur][0];
      prev = cur;
      cur = next;
    }

    // Orient by the first link, on the face the two edges share: seen from
    // outside the cell, the above-level side lies to the right of the cut.
    // A neighbouring cell sees the same cut reversed, so orientations agree
    // across faces.
    const int ea = loop[0];
    const int eb = loop[1];
    const int f = face_of(ea, eb);
    const Eigen::Vector3d outward = face_centre(f) - Eigen::Vector3d::Constant(0.5);
    const Eigen::Vector3d ma = edge_midpoint(ea);
    const Eigen::Vector3d dir = edge_midpoint(eb) - ma;
    // Test corner: the one shared by the two edges when the cut clips a
    // corner, else any corner of `ea`, whose side is known from its level.
    int corner = shared_corner(ea, eb);
    if (corner < 0) corner = kEdgeCorners[ea][0];
    const double side = outward.dot(dir.cross(corner_position(corner) - ma));
    if ((side > 0) == bool(above(corner))) std::reverse(loop.begin() + 1, loop.end());

    // A fan chord between two vertices on the same face would lie in that
    // face, where the neighbouring cell may use it too. Pick an apex whose
    // chords all cross the interior; failing that, fan from the centroid.
    const std::size_t m = loop.size();
    int apex = -1;
    for (std::size_t a = 0; a < m && apex < 0; ++a) {
      bool clean = true;
      for (std::size_t i = 2; i + 1 < m && clean; ++i) clean = face_of(loop[a], loop[(a + i) % m]) < 0;
      if (clean) apex = int(a);
    }
    if (apex >= 0) {
      std::rotate(loop.begin(), loop.begin() + apex, loop.end());
      for (std::size_t i = 1; i + 1 < m; ++i) triangles.push_back({loop[0], loop[i], loop[i + 1]});
    } else {
      const int centre = kLoopCentre + loop_count;
      for (std::size_t i = 0; i < m; ++i) triangles.push_back({centre, loop[i], loop[(i + 1) % m]});
    }
    ++loop_count;
  }
  return triangles;
}

}  // namespace

int saddle_faces(int mask) {
  int bits = 0;
  for (int f = 0; f < 6; ++f) {
    const auto& c = kFaces[f];
    const int a0 = (mask >> c[0]) & 1, a1 = (mask >> c[1]) & 1;
    const int a2 = (mask >> c[2]) & 1, a3 = (mask >> c[3]) & 1;
    if (a0 == a2 && a1 == a3 && a0 != a1) bits |= 1 << f;
  }
  return bits;
}

const std::vector<Triangle>& case_triangles(int mask, int joins) {
  // 256 cases x 64 saddle resolutions, built once.
  static const std::vector<std::vector<Triangle>> table = [] {
    std::vector<std::vector<Triangle>> t(256 * 64);
    for (int mask = 0; mask < 256; ++mask) {
      const int saddles = saddle_faces(mask);
      for (int joins = 0; joins < 64; ++joins) {
        if ((joins & ~saddles) == 0) t[mask * 64 + joins] = triangulate_case(mask, joins);
      }
    }
    return t;
  }();
  return table[std::size_t(mask * 64 + (joins & saddle_faces(mask)))];
}

}  // namespace skewcoh::mc
