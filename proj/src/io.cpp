#include "skewcoh/io.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace skewcoh::io {

void write_obj(std::ostream& out, const IsoSurfaceMesh& mesh) {
  for (const auto& v : mesh.vertices) {
    fmt::print(out, "v {:.9g} {:.9g} {:.9g}\n", v.x(), v.y(), v.z());
  }
  for (const auto& t : mesh.triangles) {
    fmt::print(out, "f {} {} {}\n", t[0] + 1, t[1] + 1, t[2] + 1);
  }
}

void write_ply(std::ostream& out, const IsoSurfaceMesh& mesh) {
  fmt::print(out,
             "ply\nformat ascii 1.0\nelement vertex {}\nproperty double x\nproperty double y\n"
             "property double z\nelement face {}\nproperty list uchar uint vertex_indices\n"
             "end_header\n",
             mesh.vertices.size(), mesh.triangles.size());
  for (const auto& v : mesh.vertices) {
    fmt::print(out, "{:.9g} {:.9g} {:.9g}\n", v.x(), v.y(), v.z());
  }
  for (const auto& t : mesh.triangles) fmt::print(out, "3 {} {} {}\n", t[0], t[1], t[2]);
}

void write_field_csv(std::ostream& out, const ScalarField3D& field) {
  out << "c1,c2,c3,value\n";
  const int n = field.resolution();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (!field.is_physical(i, j, k)) continue;
        fmt::print(out, "{:.9g},{:.9g},{:.9g},{:.9g}\n", field.coordinate(i), field.coordinate(j),
                   field.coordinate(k), field.value(i, j, k));
      }
}

void write_curve_csv(std::ostream& out, const Curve1D& curve) {
  out << "x,value\n";
  for (const auto& [x, v] : curve.samples) fmt::print(out, "{:.9g},{:.9g}\n", x, v);
}

void write_dynamics_csv(std::ostream& out, std::span<const DynamicsSample> curve) {
  out << "p,C\n";
  for (const auto& s : curve) fmt::print(out, "{:.12g},{:.12g}\n", s.p, s.coherence);
}

std::string format_complex(std::complex<double> z) {
  return fmt::format("{:.17g}{:+.17g}i", z.real(), z.imag());
}

namespace {

bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const char* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

std::complex<double> parse_complex(std::string_view token) {
  auto fail = [token]() -> std::complex<double> {
    throw InvalidParameter(fmt::format("malformed complex number '{}'", token));
  };
  if (token.empty()) return fail();
  if (token.back() != 'i') {
    double re;
    if (!parse_double(token, re)) return fail();
    return {re, 0.0};
  }
  const std::string_view body = token.substr(0, token.size() - 1);
  // Split at the last sign that is not the leading one and not an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  double re = 0.0;
  double im = 0.0;
  if (split == std::string_view::npos) {
    const std::string_view imag = body;
    if (imag.empty() || imag == "+") return {0.0, 1.0};
    if (imag == "-") return {0.0, -1.0};
    if (!parse_double(imag, im)) return fail();
    return {0.0, im};
  }
  if (!parse_double(body.substr(0, split), re)) return fail();
  const std::string_view imag = body.substr(split);
  if (imag == "+") return {re, 1.0};
  if (imag == "-") return {re, -1.0};
  if (!parse_double(imag, im)) return fail();
  return {re, im};
}

void write_bases(std::ostream& out, std::span<const OrthonormalBasis> bases) {
  for (std::size_t b = 0; b < bases.size(); ++b) {
    if (b > 0) out << '\n';
    for (const auto& v : bases[b].vectors()) {
      for (Eigen::Index i = 0; i < v.size(); ++i) {
        out << (i ? " " : "") << format_complex(v(i));
      }
      out << '\n';
    }
  }
}

std::vector<OrthonormalBasis> read_bases(std::istream& in) {
  std::vector<OrthonormalBasis> bases;
  std::vector<ComplexVector> pending;
  auto flush = [&bases, &pending] {
    if (!pending.empty()) bases.emplace_back(std::move(pending));
    pending.clear();
  };
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream tokens(line);
    std::vector<std::complex<double>> entries;
    for (std::string tok; tokens >> tok;) entries.push_back(parse_complex(tok));
    if (entries.empty()) {
      flush();
      continue;
    }
    ComplexVector v(static_cast<Eigen::Index>(entries.size()));
    for (std::size_t i = 0; i < entries.size(); ++i) v(static_cast<Eigen::Index>(i)) = entries[i];
    pending.push_back(std::move(v));
  }
  flush();
  return bases;
}

}  // namespace skewcoh::io
