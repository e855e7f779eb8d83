#pragma once

// Plain-text exports. Data files carry no commentary; warnings belong on the
// diagnostic stream of the caller.

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "skewcoh/surfaces.hpp"

namespace skewcoh::io {

/// Wavefront OBJ: `v x y z` lines then 1-based `f i j k` lines.
void write_obj(std::ostream& out, const IsoSurfaceMesh& mesh);
/// ASCII PLY with float64 vertices and uint32 face indices.
void write_ply(std::ostream& out, const IsoSurfaceMesh& mesh);

/// `c1,c2,c3,value`, physical nodes only, 9 significant digits.
void write_field_csv(std::ostream& out, const ScalarField3D& field);
/// `x,value` with 9 significant digits.
void write_curve_csv(std::ostream& out, const Curve1D& curve);
/// `p,C` with 12 significant digits.
void write_dynamics_csv(std::ostream& out, std::span<const DynamicsSample> curve);

/// Basis sets as text: one vector per line, whitespace-separated complex
/// tokens (`re`, `re+imi`, `re-imi`, `imi`), bases separated by blank lines.
void write_bases(std::ostream& out, std::span<const OrthonormalBasis> bases);
std::vector<OrthonormalBasis> read_bases(std::istream& in);

/// Parses one complex token; throws InvalidParameter on malformed input.
std::complex<double> parse_complex(std::string_view token);
std::string format_complex(std::complex<double> z);

}  // namespace skewcoh::io
