// Acceptance gate: one PASS/FAIL line per criterion, exit 1 if any fails.
//   acceptance [--out-dir DIR]

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "skewcoh/coherence.hpp"
#include "skewcoh/io.hpp"
#include "skewcoh/random.hpp"
#include "skewcoh/verify.hpp"

namespace fs = std::filesystem;
using namespace skewcoh;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

constexpr std::uint64_t kSeed = 20200417;

Outcome closed_form_fidelity() {
  const auto t0 = Clock::now();
  Rng rng(kSeed);
  std::array<double, 3> worst{};
  for (int t = 0; t < 1000; ++t) {
    const auto c = random_bell_params(rng);
    const auto rho = bell_diagonal(c);
    for (Amub a : kAllAmubs) {
      const double d = std::abs(cf_bd(c, a) - coherence_numeric(rho, qubit_amub(a)));
      worst[std::size_t(a)] = std::max(worst[std::size_t(a)], d);
    }
  }
  const double secs = seconds_since(t0);
  const bool ok = *std::max_element(worst.begin(), worst.end()) <= 1e-9 && secs < 5;
  return {ok, fmt::format("max dev a1 {:.2e} a2 {:.2e} a3 {:.2e}, {:.2f} s", worst[0], worst[1], worst[2], secs)};
}

Outcome werner_formula() {
  const auto grid = uniform_grid(0, 1, 101);
  double dev = 0, rise = -1;
  double prev = std::numeric_limits<double>::infinity();
  for (double p : grid) {
    const WernerParam w(p);
    const double v = cf_werner(w);
    const auto rho = werner(w);
    for (Amub a : kAllAmubs) dev = std::max(dev, std::abs(v - coherence_numeric(rho, qubit_amub(a))));
    if (std::isfinite(prev)) rise = std::max(rise, v - prev);
    prev = v;
  }
  const double e0 = std::abs(cf_werner(WernerParam(0)) - 0.5);
  const double e1 = std::abs(cf_werner(WernerParam(1)) - (5 - std::sqrt(21.0)) / 16);
  const bool ok = dev <= 1e-9 && e0 <= 1e-12 && e1 <= 1e-12 && rise <= 0;
  return {ok, fmt::format("max dev {:.2e}, endpoint errs {:.1e}/{:.1e}, max step {:.2e}", dev, e0, e1, rise)};
}

Outcome isotropic_formula() {
  const auto grid = uniform_grid(0, 1, 101);
  double dev = 0;
  std::vector<double> v;
  for (double f : grid) {
    const IsotropicParam F(f);
    v.push_back(cf_isotropic(F));
    const auto rho = isotropic(F);
    for (Amub a : kAllAmubs) dev = std::max(dev, std::abs(v.back() - coherence_numeric(rho, qubit_amub(a))));
  }
  const auto argmin = std::size_t(std::min_element(v.begin(), v.end()) - v.begin());
  const double e0 = std::abs(cf_isotropic(IsotropicParam(0)) - 1.0 / 6);
  const double eq = std::abs(cf_isotropic(IsotropicParam(0.25)));
  const double e1 = std::abs(cf_isotropic(IsotropicParam(1)) - 0.5);
  bool down = true, up = true;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (i <= 25) down &= v[i] <= v[i - 1];
    else up &= v[i] >= v[i - 1];
  }
  const bool ok = dev <= 1e-9 && e0 <= 1e-12 && eq <= 1e-12 && e1 <= 1e-12 && argmin == 25 && down && up;
  return {ok, fmt::format("max dev {:.2e}, argmin F={:g}, decreasing then increasing: {}", dev, grid[argmin],
                          down && up)};
}

Outcome x_state_closed_form(const fs::path& dir) {
  const auto devs = printed_x_state_deviations(kSeed, 500);
  const fs::path path = dir / "x_state_printed_deviations.csv";
  {
    std::ofstream f(path);
    f << "r,s,c1,c2,c3,form,printed,numeric\n";
    for (const auto& d : devs)
      fmt::print(f, "{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{},{:.17g},{:.17g}\n", d.params.r, d.params.s,
                 d.params.c.c1, d.params.c.c2, d.params.c.c3, d.form, d.printed, d.numeric);
  }
  const auto a1_count = std::count_if(devs.begin(), devs.end(), [](const auto& d) { return d.form == "a1"; });

  // Reduction identity of the corrected form, plus its agreement with the
  // normative numeric route on the same sample.
  Rng rng(kSeed + 4);
  double reduction = 0;
  for (int t = 0; t < 500; ++t) {
    const auto c = random_bell_params(rng);
    reduction = std::max(reduction, std::abs(cf_xz_a1({0, 0, c}) - cf_bd(c, Amub::a1)));
  }
  Rng rng2(kSeed);
  double agreement = 0;
  for (int t = 0; t < 500; ++t) {
    const auto p = random_x_state_params(rng2);
    agreement = std::max(agreement, std::abs(cf_xz_a1(p) - coherence_numeric(x_state_z(p), qubit_amub(Amub::a1))));
  }
  const bool ok = reduction <= 1e-10 && agreement <= 1e-9 && fs::exists(path);
  return {ok, fmt::format("printed deviations >1e-8: a1 {} sum {} of 500 (see {}); reduction {:.2e}, corrected vs "
                          "numeric {:.2e}",
                          a1_count, devs.size() - std::size_t(a1_count), path.filename().string(), reduction,
                          agreement)};
}

Outcome table2_equivalence() {
  Rng rng(kSeed + 5);
  double coeff = 0, form = 0;
  for (int t = 0; t < 200; ++t) {
    const auto c = random_bell_params(rng);
    const double p = rng.uniform();
    for (auto kind : kAllChannels) {
      const auto out = apply_product_channel(make_reduced_channel(kind, p), bell_diagonal(c));
      const auto& map = coefficient_map(kind);
      const auto in = c.as_array();
      const auto got = correlation_coefficients(out).as_array();
      for (int i = 0; i < 3; ++i)
        coeff = std::max(coeff, std::abs(got[i] - in[i] * std::pow(1 - p, map.exponents[i])));
      const auto b = local_bloch_vectors(out);
      for (int i = 0; i < 3; ++i) form = std::max({form, std::abs(b.r[i]), std::abs(b.s[i])});
      // Off-pattern entries of a Bell-diagonal matrix vanish.
      form = std::max(form, max_abs_diff(out.matrix(), bell_diagonal_matrix(correlation_coefficients(out))));
    }
  }
  return {coeff <= 1e-12 && form <= 1e-12, fmt::format("coefficient dev {:.2e}, form dev {:.2e}", coeff, form)};
}

Outcome dynamics() {
  const auto grid = uniform_grid(0, 1, 101);
  double rise = 0, end_pf = 0, end_gad = 0;
  for (const BellDiagonalParams c : {BellDiagonalParams{-0.2, 0.6, 0.6}, BellDiagonalParams{-0.6, 0.2, 0.2}}) {
    for (auto kind : kAllChannels) {
      const auto curve = dynamics_curve(kind, c, Amub::a1, grid);
      for (std::size_t i = 1; i < curve.size(); ++i)
        rise = std::max(rise, curve[i].coherence - curve[i - 1].coherence);
      if (kind == ChannelKind::PF) end_pf = std::max(end_pf, curve.back().coherence);
      if (kind == ChannelKind::GAD) end_gad = std::max(end_gad, curve.back().coherence);
    }
  }
  const bool ok = rise <= 1e-10 && end_pf <= 1e-12 && end_gad <= 1e-12;
  return {ok, fmt::format("max step increase {:.2e}, C_PF(1) {:.2e}, C_GAD(1) {:.2e}", rise, end_pf, end_gad)};
}

Outcome surfaces() {
  const auto t0 = Clock::now();
  const auto a1 = sample_bd_field(BdMeasure::a1, kDefaultResolution);
  const double sample_secs = seconds_since(t0);
  const auto n05 = extract_isosurface(a1, 0.05).triangles.size();
  const auto n20 = extract_isosurface(a1, 0.2).triangles.size();
  std::size_t above = 0;
  for (double level : {0.5 + 1e-9, 0.51, 0.6, 0.75, 1.0}) above += extract_isosurface(a1, level).triangles.size();

  std::array<std::size_t, 4> comps{}, major{};
  for (auto kind : kAllChannels) {
    const auto mesh = channel_surface(kind, 0.05, 0.4);
    comps[std::size_t(kind)] = mesh.connected_components();
    major[std::size_t(kind)] = mesh.major_components();
  }
  // Phase flip leaves the a1 field below 0.4 everywhere at p = 0.05.
  const double pf_max = sample_channel_field(ChannelKind::PF, 0.05, kDefaultResolution).max_value();

  // X-state fields use the eigendecomposition route at every node.
  const auto t1 = Clock::now();
  const auto xz = sample_xz_field(0.1, 0.1, XzMeasure::a1, kDefaultResolution);
  const double xz_secs = seconds_since(t1);

  const bool ok = n05 > 0 && n20 > 0 && above == 0 && comps[0] > 1 && comps[1] > 1 && comps[2] > 1 &&
                  comps[3] >= 4 && sample_secs < 60 && xz_secs < 60 && xz.physical_count() > 0;
  return {ok, fmt::format("triangles@0.05 {} @0.2 {} @>0.5 {}; components (major) BF {} ({}) PF {} ({}) "
                          "BPF {} ({}) GAD {} ({}); PF field max {:.4f}; 101^3 sampling {:.2f} s (closed form), "
                          "{:.2f} s (numeric)",
                          n05, n20, above, comps[0], major[0], comps[1], major[1], comps[2], major[2], comps[3],
                          major[3], pf_max, sample_secs, xz_secs)};
}

Outcome linear_algebra() {
  Rng rng(kSeed + 8);
  double recon = 0, root = 0;
  for (int t = 0; t < 500; ++t) {
    for (Eigen::Index dim : {2, 4}) {
      const ComplexMatrix h = random_hermitian(rng, dim);
      recon = std::max(recon, max_abs_diff(hermitian_eig(h).reconstruct(), h));
      const ComplexMatrix a = random_psd(rng, dim);
      const ComplexMatrix r = sqrt_psd(a);
      root = std::max(root, max_abs_diff((r * r).eval(), a));
    }
  }
  return {recon <= 1e-10 && root <= 1e-9, fmt::format("reconstruction {:.2e}, sqrt squaring {:.2e}", recon, root)};
}

Outcome bases_certification() {
  const double mub = verify_mub(qubit_mubs()).max_deviation;
  const double amub = verify_amub(amub_from_mubs(qubit_mubs())).max_deviation;
  // Spot-check parameters with distinct, exactly representable entries.
  const std::vector<XStateZParams> spots{{0, 0, {0.5, -0.25, 0.125}},
                                         {0.25, -0.125, {0.375, 0.25, -0.5}},
                                         {-0.25, 0.125, {-0.125, -0.375, 0.25}},
                                         {0, 0, {-1, -1, -1}}};
  double display = 0;
  for (const auto& p : spots) {
    for (Amub a : kAllAmubs) {
      display = std::max(display, max_abs_diff(represent_in_basis(bell_diagonal(p.c), qubit_amub(a)),
                                               reference::bell_diagonal_in(a, p.c)));
      display = std::max(display, max_abs_diff(represent_in_basis(x_state_z(p), qubit_amub(a)),
                                               reference::x_state_z_in(a, p)));
    }
  }
  return {mub < 1e-14 && amub < 1e-14 && display <= 1e-12,
          fmt::format("mub {:.2e}, amub {:.2e}, display matrices {:.2e}", mub, amub, display)};
}

Outcome determinism() {
  VerifyOptions opt;
  opt.resolution = 51;
  auto report = [&] {
    std::vector<SuiteResult> r;
    for (const auto& name : suite_names()) r.push_back(run_suite(name, opt));
    return format_report(r);
  };
  auto mesh = [] {
    std::ostringstream obj, ply;
    const auto m = channel_surface(ChannelKind::GAD, 0.05, 0.4);
    io::write_obj(obj, m);
    io::write_ply(ply, m);
    std::ostringstream field;
    io::write_field_csv(field, sample_xz_field(0.1, -0.2, XzMeasure::sum, 31, 3));
    return obj.str() + ply.str() + field.str();
  };
  auto dyn = [] {
    std::ostringstream out;
    const auto grid = uniform_grid(0, 1, 101);
    for (auto kind : kAllChannels) io::write_dynamics_csv(out, dynamics_curve(kind, {-0.2, 0.6, 0.6}, Amub::a1, grid));
    return out.str();
  };
  const bool same_report = report() == report();
  const bool same_mesh = mesh() == mesh();
  const bool same_dyn = dyn() == dyn();
  // Thread count must not change the sampled field.
  const auto f1 = sample_xz_field(0.1, -0.2, XzMeasure::a1, 31, 1);
  const auto f4 = sample_xz_field(0.1, -0.2, XzMeasure::a1, 31, 4);
  std::ostringstream s1, s4;
  io::write_field_csv(s1, f1);
  io::write_field_csv(s4, f4);
  const bool same_threads = s1.str() == s4.str();
  return {same_report && same_mesh && same_dyn && same_threads,
          fmt::format("verify report {}, surface files {}, dynamics csv {}, thread split {}",
                      same_report ? "identical" : "DIFFERS", same_mesh ? "identical" : "DIFFERS",
                      same_dyn ? "identical" : "DIFFERS", same_threads ? "identical" : "DIFFERS")};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::string out_dir = "acceptance_out";
  app.add_option("--out-dir", out_dir, "Directory for report files");
  std::vector<std::size_t> known;
  app.add_option("--known-failure", known,
                 "Criterion number that cannot pass as stated; its FAIL line is still printed but "
                 "does not set the exit code")
      ->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);
  fs::create_directories(out_dir);

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"closed-form fidelity (Bell-diagonal, 1000 samples)", closed_form_fidelity},
      {"Werner formula", werner_formula},
      {"isotropic formula", isotropic_formula},
      {"X-state closed form: reduction + printed-display report", [&] { return x_state_closed_form(out_dir); }},
      {"channel coefficient table + Bell-diagonal form preservation", table2_equivalence},
      {"channel dynamics monotone, PF/GAD vanish at p=1", dynamics},
      {"level surfaces: emptiness bounds, components, sampling time", surfaces},
      {"linear-algebra kernel", linear_algebra},
      {"MUB/AMUB certification + basis-change matrices", bases_certification},
      {"determinism", determinism},
  };

  int failed = 0, unexpected = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, fmt::format("exception: {}", e.what())};
    }
    const bool is_known = std::find(known.begin(), known.end(), i + 1) != known.end();
    failed += !o.pass;
    unexpected += !o.pass && !is_known;
    fmt::print("[{}] {:2}. {} -- {}{}\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail,
               !o.pass && is_known ? " (known failure)" : "");
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria passed, {} unexpected failure(s)\n", criteria.size() - std::size_t(failed),
             criteria.size(), unexpected);
  return unexpected == 0 ? 0 : 1;
}
