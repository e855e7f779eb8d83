#pragma once

// Marching-cubes case table, generated from cube topology.
//
// Corner c sits at offset kCornerOffset[c]; edge e joins kEdgeCorners[e].
// Bit c of a case index is set when corner c is above the level.

#include <array>
#include <vector>

namespace skewcoh::mc {

inline constexpr std::array<std::array<int, 3>, 8> kCornerOffset{{
    {0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
    {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1},
}};

inline constexpr std::array<std::array<int, 2>, 12> kEdgeCorners{{
    {0, 1}, {1, 2}, {2, 3}, {3, 0},
    {4, 5}, {5, 6}, {6, 7}, {7, 4},
    {0, 4}, {1, 5}, {2, 6}, {3, 7},
}};

/// Faces as corner cycles; consecutive corners share an edge.
inline constexpr std::array<std::array<int, 4>, 6> kFaces{{
    {0, 1, 2, 3}, {4, 5, 6, 7}, {0, 1, 5, 4},
    {1, 2, 6, 5}, {2, 3, 7, 6}, {3, 0, 4, 7},
}};

using Triangle = std::array<int, 3>;  // edge indices

/// Triangle entries >= kLoopCentre name the centroid of loop
/// (entry - kLoopCentre), in the order loops appear in the case.
inline constexpr int kLoopCentre = 12;

/// Triangles for case `mask`, oriented so that normals point from
/// above-level corners toward below-level ones. Bit f of `joins` decides
/// saddle face f (two diagonal above corners): set joins the above corners
/// across the face, clear separates them. Bits of non-saddle faces are ignored.
const std::vector<Triangle>& case_triangles(int mask, int joins);

/// Bitmask of the faces of `mask` whose corners alternate above/below.
int saddle_faces(int mask);

}  // namespace skewcoh::mc
