#include "skewcoh/verify.hpp"

#include <fmt/format.h>

#include <functional>
#include <map>

#include "skewcoh/coherence.hpp"
#include "skewcoh/random.hpp"

namespace skewcoh {

namespace reference {

namespace {

ComplexMatrix x_pattern(double d0, double d1, double d2, double d3, double corner, double inner) {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = d0;
  m(1, 1) = d1;
  m(2, 2) = d2;
  m(3, 3) = d3;
  m(0, 3) = m(3, 0) = corner;
  m(1, 2) = m(2, 1) = inner;
  return m / 4.0;
}

}  // namespace

ComplexMatrix bell_diagonal_in(Amub basis, const BellDiagonalParams& c) {
  return x_state_z_in(basis, {0.0, 0.0, c});
}

ComplexMatrix x_state_z_in(Amub basis, const XStateZParams& p) {
  const auto [c1, c2, c3] = p.c;
  const double r = p.r;
  const double s = p.s;
  if (basis == Amub::a1) {
    return x_pattern(1 + r + s + c3, 1 + r - s - c3, 1 - r + s - c3, 1 - r - s + c3, c1 - c2,
                     c1 + c2);
  }
  // a2 and a3 share a layout; only the correlation roles change.
  const double diag = basis == Amub::a2 ? c1 : c2;
  const double other = basis == Amub::a2 ? c2 : c1;
  ComplexMatrix m = x_pattern(1 + diag, 1 - diag, 1 - diag, 1 + diag, c3 - other, c3 + other);
  m(0, 1) = m(1, 0) = m(2, 3) = m(3, 2) = s / 4;
  m(0, 2) = m(2, 0) = m(1, 3) = m(3, 1) = r / 4;
  return m;
}

}  // namespace reference

bool SuiteResult::passed() const {
  for (const auto& m : metrics)
    if (!m.passed()) return false;
  return true;
}

void SuiteResult::at_most(std::string metric, double value, double threshold) {
  metrics.push_back({std::move(metric), value, threshold, Metric::Bound::AtMost});
}

void SuiteResult::at_least(std::string metric, double value, double threshold) {
  metrics.push_back({std::move(metric), value, threshold, Metric::Bound::AtLeast});
}

void SuiteResult::report(std::string metric, double value) {
  metrics.push_back({std::move(metric), value, 0.0, Metric::Bound::Report});
}

namespace {

int samples_or(const VerifyOptions& o, int fallback) { return o.samples > 0 ? o.samples : fallback; }

SuiteResult suite_linalg(const VerifyOptions& o) {
  SuiteResult r{"linalg", {}, {}};
  Rng rng(o.seed);
  const int n = samples_or(o, 500);
  double recon = 0, unitarity = 0, root = 0, trace_kron = 0, self_comm = 0;
  for (int t = 0; t < n; ++t) {
    for (Eigen::Index dim : {2, 4}) {
      const ComplexMatrix h = random_hermitian(rng, dim);
      const auto eig = hermitian_eig(h);
      recon = std::max(recon, max_abs_diff(eig.reconstruct(), h));
      const ComplexMatrix gram = eig.eigenvectors.adjoint() * eig.eigenvectors;
      unitarity = std::max(unitarity, max_abs_diff(gram, ComplexMatrix::Identity(dim, dim).eval()));

      const ComplexMatrix psd = random_psd(rng, dim);
      const ComplexMatrix sq = sqrt_psd(psd);
      root = std::max(root, max_abs_diff((sq * sq).eval(), psd));

      const ComplexMatrix other = random_hermitian(rng, 2);
      trace_kron = std::max(trace_kron, std::abs(trace(kron(h, other)) - trace(h) * trace(other)));
      self_comm = std::max(self_comm, commutator(h, h).cwiseAbs().maxCoeff());
    }
  }
  r.at_most("eig_reconstruction_max", recon, 1e-10);
  r.at_most("eig_unitarity_max", unitarity, 1e-10);
  r.at_most("sqrt_psd_square_max", root, 1e-9);
  r.at_most("trace_kron_max", trace_kron, 1e-12);
  r.at_most("self_commutator_max", self_comm, 1e-14);
  return r;
}

SuiteResult suite_states(const VerifyOptions& o) {
  SuiteResult r{"states", {}, {}};
  Rng rng(o.seed + 1);
  const int n = samples_or(o, 1000);
  double round_trip = 0, reduction = 0;
  for (int t = 0; t < n; ++t) {
    const BellDiagonalParams c = random_bell_params(rng);
    const auto back = correlation_coefficients(bell_diagonal(c));
    round_trip = std::max({round_trip, std::abs(back.c1 - c.c1), std::abs(back.c2 - c.c2),
                           std::abs(back.c3 - c.c3)});
    reduction = std::max(reduction,
                         max_abs_diff(x_state_z_matrix({0, 0, c}), bell_diagonal_matrix(c)));
  }
  r.at_most("correlation_round_trip_max", round_trip, 1e-12);
  r.at_most("x_state_reduction_max", reduction, 1e-15);
  return r;
}

SuiteResult suite_bases(const VerifyOptions& o) {
  SuiteResult r{"bases", {}, {}};
  Rng rng(o.seed + 2);
  const int n = samples_or(o, 200);
  r.at_most("mub_max_deviation", verify_mub(qubit_mubs()).max_deviation, 1e-14);
  r.at_most("amub_max_deviation", verify_amub(amub_from_mubs(qubit_mubs())).max_deviation, 1e-14);

  double bd_display = 0, xz_display = 0, spectrum = 0, routes = 0;
  const OrthonormalBasis computational = OrthonormalBasis::computational(4);
  for (int t = 0; t < n; ++t) {
    const BellDiagonalParams c = random_bell_params(rng);
    const XStateZParams x = random_x_state_params(rng);
    const DensityMatrix rho = random_density_matrix(rng);
    const RVector<double> spec = hermitian_eig(rho.matrix()).eigenvalues;
    for (Amub a : kAllAmubs) {
      const auto& basis = qubit_amub(a);
      bd_display = std::max(bd_display, max_abs_diff(represent_in_basis(bell_diagonal(c), basis),
                                                     reference::bell_diagonal_in(a, c)));
      xz_display = std::max(xz_display, max_abs_diff(represent_in_basis(x_state_z(x), basis),
                                                     reference::x_state_z_in(a, x)));
      const ComplexMatrix rotated = represent_in_basis(rho, basis);
      spectrum = std::max(spectrum, (hermitian_eig(rotated).eigenvalues - spec).cwiseAbs().maxCoeff());
      routes = std::max(routes, std::abs(coherence_numeric(rho, basis) -
                                         coherence_numeric(DensityMatrix(rotated), computational)));
    }
  }
  r.at_most("bd_display_max", bd_display, 1e-12);
  r.at_most("xz_display_max", xz_display, 1e-12);
  r.at_most("spectrum_preservation_max", spectrum, 1e-10);
  r.at_most("basis_route_consistency_max", routes, 1e-10);
  return r;
}

SuiteResult suite_closed_forms(const VerifyOptions& o) {
  SuiteResult r{"closed-forms", {}, {}};
  Rng rng(o.seed + 3);
  const int n = samples_or(o, 1000);
  std::array<double, 3> per_basis{};
  double sum_dev = 0, two_route = 0, bound = 0, a1_cap = 0, phase = 0;
  for (int t = 0; t < n; ++t) {
    const BellDiagonalParams c = random_bell_params(rng);
    const DensityMatrix rho = bell_diagonal(c);
    const auto numeric = coherence_numeric_amubs(rho);
    for (Amub a : kAllAmubs) {
      const auto i = static_cast<std::size_t>(a);
      per_basis[i] = std::max(per_basis[i], std::abs(cf_bd(c, a) - numeric[i]));
    }
    sum_dev = std::max(sum_dev, std::abs(cf_bd_sum(c) - (numeric[0] + numeric[1] + numeric[2])));
    a1_cap = std::max(a1_cap, cf_bd(c, Amub::a1));

    const DensityMatrix generic = random_density_matrix(rng);
    const auto& basis = qubit_amub(static_cast<Amub>(t % 3));
    const double value = coherence_numeric(generic, basis);
    two_route = std::max(two_route, std::abs(value - coherence_skew_sum(generic, basis)));
    bound = std::max(bound, value);

    ComplexVector phases(4);
    for (Eigen::Index k = 0; k < 4; ++k) phases(k) = std::polar(1.0, rng.uniform(0, 6.283185307179586));
    const ComplexMatrix u = phases.asDiagonal();
    const DensityMatrix rotated(u * generic.matrix() * u.adjoint());
    const OrthonormalBasis computational = OrthonormalBasis::computational(4);
    phase = std::max(phase, std::abs(coherence_numeric(rotated, computational) -
                                     coherence_numeric(generic, computational)));
  }
  r.at_most("cf_bd_a1_vs_numeric_max", per_basis[0], 1e-9);
  r.at_most("cf_bd_a2_vs_numeric_max", per_basis[1], 1e-9);
  r.at_most("cf_bd_a3_vs_numeric_max", per_basis[2], 1e-9);
  r.at_most("cf_bd_sum_vs_numeric_max", sum_dev, 1e-9);
  r.at_most("cf_bd_a1_max", a1_cap, 0.5 + 1e-12);
  r.at_most("skew_sum_vs_root_form_max", two_route, 1e-10);
  r.at_most("coherence_max_two_qubit", bound, 0.75 + 1e-12);
  r.at_most("diagonal_phase_invariance_max", phase, 1e-10);

  double werner_dev = 0, iso_dev = 0;
  for (double p : uniform_grid(0, 1, 101)) {
    const auto w = coherence_numeric_amubs(werner(WernerParam(p)));
    const auto iso = coherence_numeric_amubs(isotropic(IsotropicParam(p)));
    for (std::size_t i = 0; i < 3; ++i) {
      werner_dev = std::max(werner_dev, std::abs(w[i] - cf_werner(WernerParam(p))));
      iso_dev = std::max(iso_dev, std::abs(iso[i] - cf_isotropic(IsotropicParam(p))));
    }
  }
  r.at_most("werner_grid_max", werner_dev, 1e-9);
  r.at_most("isotropic_grid_max", iso_dev, 1e-9);
  return r;
}

SuiteResult suite_xstate(const VerifyOptions& o) {
  SuiteResult r{"xstate", {}, {}};
  Rng rng(o.seed + 4);
  const int n = samples_or(o, 500);
  double a1_dev = 0, sum_dev = 0, reduction = 0, printed_reduction = 0;
  for (int t = 0; t < n; ++t) {
    const XStateZParams x = random_x_state_params(rng);
    const auto numeric = coherence_numeric_amubs(x_state_z(x));
    a1_dev = std::max(a1_dev, std::abs(cf_xz_a1(x) - numeric[0]));
    sum_dev = std::max(sum_dev, std::abs(cf_xz_sum(x) - (numeric[0] + numeric[1] + numeric[2])));

    const XStateZParams bd{0.0, 0.0, x.c};
    if (bd.c.is_physical()) {
      reduction = std::max(reduction, std::abs(cf_xz_a1(bd) - cf_bd(bd.c, Amub::a1)));
      reduction = std::max(reduction, std::abs(cf_xz_sum(bd) - cf_bd_sum(bd.c)));
      if (const auto printed = cf_xz_a1_printed(bd)) {
        printed_reduction = std::max(printed_reduction, std::abs(*printed - cf_bd(bd.c, Amub::a1)));
      }
    }
  }
  r.at_most("cf_xz_a1_vs_numeric_max", a1_dev, 1e-9);
  r.at_most("cf_xz_sum_vs_numeric_max", sum_dev, 1e-10);
  r.at_most("r_s_zero_reduction_max", reduction, 1e-10);

  const auto deviations = printed_x_state_deviations(o.seed + 4, n);
  std::size_t a1_count = 0;
  double worst_a1 = 0, worst_sum = 0;
  for (const auto& d : deviations) {
    const double dev = std::abs(d.printed - d.numeric);
    if (d.form == "a1") {
      ++a1_count;
      worst_a1 = std::max(worst_a1, dev);
    } else {
      worst_sum = std::max(worst_sum, dev);
    }
  }
  r.report("printed_a1_deviations_over_1e-8", double(a1_count));
  r.report("printed_a1_worst_deviation", worst_a1);
  r.report("printed_sum_deviations_over_1e-8", double(deviations.size() - a1_count));
  r.report("printed_sum_worst_deviation", worst_sum);
  r.report("printed_a1_r_s_zero_reduction_max", printed_reduction);
  return r;
}

SuiteResult suite_table2(const VerifyOptions& o) {
  SuiteResult r{"table2", {}, {}};
  Rng rng(o.seed + 5);
  const int n = samples_or(o, 200);
  for (ChannelKind kind : kAllChannels) {
    double coeff = 0, form = 0;
    for (int t = 0; t < n; ++t) {
      const BellDiagonalParams c = random_bell_params(rng);
      const double p = rng.uniform();
      const DensityMatrix out = apply_product_channel(make_reduced_channel(kind, p), bell_diagonal(c));
      const BellDiagonalParams got = correlation_coefficients(out);
      const BellDiagonalParams want = predicted_coefficients(coefficient_map(kind), c, p);
      coeff = std::max({coeff, std::abs(got.c1 - want.c1), std::abs(got.c2 - want.c2),
                        std::abs(got.c3 - want.c3)});
      form = std::max(form, max_abs_diff(out.matrix(), bell_diagonal_matrix(got)));
      const auto bloch = local_bloch_vectors(out);
      for (std::size_t i = 0; i < 3; ++i) form = std::max({form, std::abs(bloch.r[i]), std::abs(bloch.s[i])});
    }
    r.at_most(fmt::format("{}_coefficients_max", to_string(kind)), coeff, 1e-12);
    r.at_most(fmt::format("{}_form_preservation_max", to_string(kind)), form, 1e-12);
  }

  // GAD away from p = 1/2 is not covered by the coefficient map; report only.
  double gad_off = 0;
  double trace_dev = 0, min_eig = 0, completeness = 0;
  for (int t = 0; t < n; ++t) {
    const BellDiagonalParams c = random_bell_params(rng);
    const double p = rng.uniform();
    const double g = rng.uniform();
    const KrausChannel gad = make_channel(ChannelKind::GAD, p, g);
    const DensityMatrix out = apply_product_channel(gad, bell_diagonal(c));
    const BellDiagonalParams got = correlation_coefficients(out);
    const BellDiagonalParams want = predicted_coefficients(coefficient_map(ChannelKind::GAD), c, g);
    gad_off = std::max({gad_off, std::abs(got.c1 - want.c1), std::abs(got.c2 - want.c2),
                        std::abs(got.c3 - want.c3)});
  }
  const int cptp_samples = samples_or(o, 500);
  for (int t = 0; t < cptp_samples; ++t) {
    const DensityMatrix rho = random_density_matrix(rng);
    const KrausChannel ch = make_channel(kAllChannels[t % 4], rng.uniform(),
                                         t % 4 == 3 ? std::optional<double>(rng.uniform()) : std::nullopt);
    completeness = std::max(completeness, ch.completeness_defect());
    const DensityMatrix out = apply_product_channel(ch, rho);
    trace_dev = std::max(trace_dev, std::abs(out.matrix().trace() - 1.0));
    min_eig = std::min(min_eig, hermitian_eig(out.matrix()).eigenvalues(0));
  }
  r.at_most("kraus_completeness_max", completeness, kCompletenessTol);
  r.at_most("cptp_trace_max", trace_dev, 1e-12);
  r.at_least("cptp_min_eigenvalue", min_eig, -1e-10);
  r.report("GAD_general_p_coefficient_deviation", gad_off);
  return r;
}

SuiteResult suite_dynamics(const VerifyOptions&) {
  SuiteResult r{"dynamics", {}, {}};
  const auto grid = uniform_grid(0, 1, 101);
  const std::array<BellDiagonalParams, 2> inputs{{{-0.2, 0.6, 0.6}, {-0.6, 0.2, 0.2}}};
  for (std::size_t set = 0; set < inputs.size(); ++set) {
    for (ChannelKind kind : kAllChannels) {
      const auto curve = dynamics_curve(kind, inputs[set], Amub::a1, grid);
      double rise = -1;
      for (std::size_t i = 1; i < curve.size(); ++i)
        rise = std::max(rise, curve[i].coherence - curve[i - 1].coherence);
      const std::string tag = fmt::format("set{}_{}", set + 1, to_string(kind));
      r.at_most(tag + "_max_step_increase", rise, 1e-10);
      const double start = coherence_numeric(bell_diagonal(inputs[set]), qubit_amub(Amub::a1));
      r.at_most(tag + "_p0_deviation", std::abs(curve.front().coherence - start), 1e-12);
      if (kind == ChannelKind::PF || kind == ChannelKind::GAD) {
        r.at_most(tag + "_value_at_p1", curve.back().coherence, 1e-12);
      }
    }
  }
  return r;
}

SuiteResult suite_surfaces(const VerifyOptions& o) {
  SuiteResult r{"surfaces", {}, {}};
  const int n = o.resolution;
  const ScalarField3D a1 = sample_bd_field(BdMeasure::a1, n);
  const ScalarField3D sum = sample_bd_field(BdMeasure::sum, n);
  const double fraction = double(a1.physical_count()) / double(std::size_t(n) * n * n);
  r.at_most("tetrahedron_fraction_rel_error", std::abs(fraction * 3 - 1), 0.02);
  r.at_most("a1_field_max", a1.max_value(), 0.5 + 1e-12);
  r.at_most("sum_field_max", sum.max_value(), 1.5 + 1e-9);

  const IsoSurfaceMesh m05 = extract_isosurface(a1, 0.05);
  const IsoSurfaceMesh m20 = extract_isosurface(a1, 0.2);
  r.at_least("a1_level_0.05_triangles", double(m05.triangles.size()), 1);
  r.at_least("a1_level_0.2_triangles", double(m20.triangles.size()), 1);
  r.at_most("a1_level_0.6_triangles", double(extract_isosurface(a1, 0.6).triangles.size()), 0);
  r.at_most("a1_level_1_triangles", double(extract_isosurface(a1, 1.0).triangles.size()), 0);
  r.at_least("sum_level_1_triangles", double(extract_isosurface(sum, 1.0).triangles.size()), 1);

  double vertex_dev = 0, nesting = 0;
  for (std::size_t v = 0; v < m20.vertices.size(); ++v) {
    const FieldSample s = evaluate_bd(BdMeasure::a1, m20.vertices[v]);
    if (!std::isnan(s.value)) nesting = std::max(nesting, 0.05 - s.value);
    if (!m20.on_boundary[v]) vertex_dev = std::max(vertex_dev, std::abs(s.value - m20.level));
  }
  r.at_most("a1_level_0.2_vertex_deviation", vertex_dev, 0.02);
  r.at_most("nesting_violation_0.2_in_0.05", nesting, 0.0);

  for (ChannelKind kind : kAllChannels) {
    const std::string tag = fmt::format("{}_p0.05_level0.4", to_string(kind));
    const IsoSurfaceMesh mesh = channel_surface(kind, 0.05, 0.4, n);
    if (kind != ChannelKind::PF) {
      r.at_least(tag + "_components", double(mesh.connected_components()), kind == ChannelKind::GAD ? 4 : 2);
      r.report(tag + "_major_components", double(mesh.major_components()));
      continue;
    }
    // Phase flip shrinks c1 and c2, which carry all of the a1 coherence; the
    // a1 field peaks at 0.2847 for p = 0.05, so level 0.4 is out of reach.
    r.report(tag + "_components", double(mesh.connected_components()));
    r.at_most(fmt::format("{}_p0.05_field_max", to_string(kind)),
              sample_channel_field(kind, 0.05, n).max_value(), 0.4);
    r.notes.push_back("PF at p=0.05 cannot reach level 0.4 in a1; its component count is reported only");
  }

  const ScalarField3D xz = sample_xz_field(0.0, 0.0, XzMeasure::a1, n);
  double reduction = 0;
  bool same_region = true;
  for (std::size_t i = 0; i < xz.values().size(); ++i) {
    const double u = xz.values()[i];
    const double v = a1.values()[i];
    if (std::isnan(u) != std::isnan(v)) same_region = false;
    if (!std::isnan(u) && !std::isnan(v)) reduction = std::max(reduction, std::abs(u - v));
  }
  r.at_most("xz_r_s_zero_vs_bd_max", reduction, 1e-10);
  r.at_least("xz_r_s_zero_same_region", same_region ? 1 : 0, 1);

  const auto grid = uniform_grid(0, 1, 101);
  const Curve1D w = werner_curve(grid);
  const Curve1D iso = isotropic_curve(grid);
  double werner_rise = -1, iso_left_rise = -1, iso_right_fall = -1;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    werner_rise = std::max(werner_rise, w.samples[i].second - w.samples[i - 1].second);
    const double step = iso.samples[i].second - iso.samples[i - 1].second;
    if (grid[i] <= 0.25) iso_left_rise = std::max(iso_left_rise, step);
    else iso_right_fall = std::max(iso_right_fall, -step);
  }
  r.at_most("werner_max_step_increase", werner_rise, 1e-12);
  r.at_most("isotropic_max_step_increase_below_quarter", iso_left_rise, 1e-12);
  r.at_most("isotropic_max_step_decrease_above_quarter", iso_right_fall, 1e-12);
  return r;
}

using SuiteFn = std::function<SuiteResult(const VerifyOptions&)>;

const std::map<std::string, SuiteFn, std::less<>>& registry() {
  static const std::map<std::string, SuiteFn, std::less<>> suites{
      {"linalg", suite_linalg},   {"states", suite_states},         {"bases", suite_bases},
      {"closed-forms", suite_closed_forms}, {"xstate", suite_xstate}, {"table2", suite_table2},
      {"dynamics", suite_dynamics}, {"surfaces", suite_surfaces},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"linalg", "states",   "bases",    "closed-forms",
                                              "xstate", "table2",   "dynamics", "surfaces"};
  return names;
}

SuiteResult run_suite(std::string_view name, const VerifyOptions& options) {
  const auto& suites = registry();
  const auto it = suites.find(name);
  if (it == suites.end()) throw InvalidParameter(fmt::format("unknown verify suite '{}'", name));
  return it->second(options);
}

std::string format_report(std::span<const SuiteResult> results) {
  std::string out;
  for (const auto& suite : results) {
    out += fmt::format("[{}] {}\n", suite.passed() ? "PASS" : "FAIL", suite.name);
    for (const auto& m : suite.metrics) {
      const char* relation = m.bound == Metric::Bound::AtMost    ? "<="
                             : m.bound == Metric::Bound::AtLeast ? ">="
                                                                 : "  ";
      const std::string limit =
          m.bound == Metric::Bound::Report ? std::string("(report)") : fmt::format("{:.3g}", m.threshold);
      out += fmt::format("  {:<4} {:<48} {:>14.6e} {} {}\n", m.passed() ? "ok" : "FAIL", m.name,
                         m.value, relation, limit);
    }
    for (const auto& note : suite.notes) out += "  note: " + note + "\n";
  }
  return out;
}

std::vector<XStateDeviation> printed_x_state_deviations(std::uint64_t seed, int samples,
                                                        double threshold) {
  Rng rng(seed);
  std::vector<XStateDeviation> out;
  for (int t = 0; t < samples; ++t) {
    const XStateZParams x = random_x_state_params(rng);
    const auto numeric = coherence_numeric_amubs(x_state_z(x));
    if (const auto printed = cf_xz_a1_printed(x); printed && std::abs(*printed - numeric[0]) > threshold) {
      out.push_back({x, "a1", *printed, numeric[0]});
    }
    const double total = numeric[0] + numeric[1] + numeric[2];
    if (const double printed = cf_xz_sum_printed(x); std::abs(printed - total) > threshold) {
      out.push_back({x, "sum", printed, total});
    }
  }
  return out;
}

}  // namespace skewcoh
