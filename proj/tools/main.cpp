#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "chernform/report.hpp"
#include "chernform/scenario.hpp"

namespace fs = std::filesystem;
using namespace chernform;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumeric = 2;

struct CommonOptions {
  std::string scenario_path;
  std::string out_dir;
  std::string grid_override;
  double tolerance = 0.0;  // 0 = use scenario value
  std::string convention;  // empty = use scenario value
};

fs::path resolve_out_dir(const CommonOptions& opt) {
  if (!opt.out_dir.empty()) return opt.out_dir;
  if (const char* env = std::getenv("CHERNFORM_OUT")) return env;
  return "chernform-out";
}

GridSpec parse_grid_override(const std::string& text) {
  GridSpec g;
  std::array<int, 4> n{};
  char x1, x2, x3;
  std::istringstream in(text);
  if (!(in >> n[0] >> x1 >> n[1] >> x2 >> n[2] >> x3 >> n[3]) || x1 != 'x' || x2 != 'x' ||
      x3 != 'x' || !in.eof()) {
    throw ValidationError("--grid-override must look like n1xn2xn3xn4");
  }
  g.points = n;
  return g;
}

struct LoadedScenario {
  Scenario scenario;
  GridSpec resolution;
  std::vector<int> ladder;
  double tolerance = 1e-6;
  FdConfig fd;
  std::vector<Convention> conventions;
};

LoadedScenario load(const CommonOptions& opt, bool scenario_required = true) {
  LoadedScenario out;
  if (opt.scenario_path.empty()) {
    if (scenario_required) throw ConfigError("--scenario is required for this command");
  } else {
    out.scenario = load_scenario(opt.scenario_path);
  }
  out.resolution = out.scenario.grid.resolution;
  out.ladder = out.scenario.grid.resolutions;
  if (!opt.grid_override.empty()) {
    out.resolution = parse_grid_override(opt.grid_override);
    int finest = *std::max_element(out.resolution.points.begin(), out.resolution.points.end());
    out.ladder = {std::max(2, finest / 4), std::max(2, finest / 2), finest};
  }
  out.tolerance = opt.tolerance > 0 ? opt.tolerance : out.scenario.grid.tolerance;
  out.fd.step_rel = out.scenario.grid.fd_step;
  std::string conv = opt.convention.empty() ? out.scenario.run.convention : opt.convention;
  out.conventions = conventions_from_string(conv);
  return out;
}

const MetricSpec& require_metric(const Scenario& s) {
  if (!s.metric) throw ConfigError("scenario has no [metric] section");
  return *s.metric;
}

const Patch& require_patch(const Scenario& s) {
  if (!s.patch) throw ConfigError("scenario has no [patch] section");
  return *s.patch;
}

/// Sampled Hermiticity / positive-definiteness gate run before curvature work.
MetricValidation gate_metric(const HermitianMetricField& metric, const Patch& patch) {
  MetricValidation v = validate_metric(metric, patch);
  if (!v.hermitian_ok) {
    throw ValidationError("metric is not Hermitian: max deviation " +
                          format_double(v.max_hermitian_deviation));
  }
  if (!v.positive_definite_ok) {
    throw ValidationError("metric is not positive definite: leading minor " +
                          std::to_string(v.failing_minor) + " reaches " +
                          format_double(v.min_leading_minor));
  }
  return v;
}

std::string slot_pair(WirtingerSlot a, WirtingerSlot b) {
  return std::string(slot_name(a)) + "_" + slot_name(b);
}

constexpr Coordinate kAxes[4] = {Coordinate::x1, Coordinate::y1, Coordinate::x2, Coordinate::y2};

std::array<std::vector<double>, 4> grid_nodes(const Patch& patch, const GridSpec& grid,
                                              const FdConfig& fd) {
  std::array<std::vector<double>, 4> nodes;
  for (int a = 0; a < 4; ++a) {
    const CoordinateRange& r = patch.range(kAxes[a]);
    nodes[a] =
        axis_nodes(r.lo, r.hi, grid.points[a], patch.periodic(kAxes[a]), fd.margin(patch, kAxes[a]));
  }
  return nodes;
}

// ---------------------------------------------------------------------------

int run_inspect(const CommonOptions& opt) {
  LoadedScenario ls = load(opt);
  HermitianMetricField metric = require_metric(ls.scenario).field();
  const Patch& patch = require_patch(ls.scenario);
  fs::path out = resolve_out_dir(opt);
  fs::create_directories(out);

  MetricValidation mv = gate_metric(metric, patch);

  CsvWriter csv;
  struct Fold {
    Point4 p;
    double pure_z1 = 0, pure_z2 = 0, mixed = 0;
    bool live = false;
  } fold;
  auto flush = [&] {
    if (!fold.live) return;
    csv.add_sample(fold.p, "flatness_pure_z1", "none", Complex(fold.pure_z1, 0));
    csv.add_sample(fold.p, "flatness_pure_z2", "none", Complex(fold.pure_z2, 0));
    csv.add_sample(fold.p, "flatness_mixed", "none", Complex(fold.mixed, 0));
  };
  auto observer = [&](const Point4& p, int, int, const SecondDerivativeBlock& block) {
    bool same = fold.live && p.x1 == fold.p.x1 && p.y1 == fold.p.y1 && p.x2 == fold.p.x2 &&
                p.y2 == fold.p.y2;
    if (!same) {
      flush();
      fold = Fold{p, 0, 0, 0, true};
    }
    fold.pure_z1 = std::max(fold.pure_z1, block.pure_z1().cwiseAbs().maxCoeff());
    fold.pure_z2 = std::max(fold.pure_z2, block.pure_z2().cwiseAbs().maxCoeff());
    fold.mixed = std::max({fold.mixed, block.upper_right().cwiseAbs().maxCoeff(),
                           block.lower_left().cwiseAbs().maxCoeff()});
  };

  PatternReport report =
      flatness_pattern_report(metric, patch, ls.resolution, ls.tolerance, ls.fd, observer);
  flush();

  csv.add_aggregate("flatness_pure_z1_max", "none", Complex(report.pure_z1.max_abs, 0));
  csv.add_aggregate("flatness_pure_z2_max", "none", Complex(report.pure_z2.max_abs, 0));
  csv.add_aggregate("flatness_mixed_max", "none", Complex(report.mixed.max_abs, 0));
  csv.write(out / "inspect_samples.csv");

  Json j = to_json(report);
  j["metric_validation"] = to_json(mv);
  write_json(j, out / "pattern.json");

  std::cout << "mode: " << (report.mode == MetricMode::product ? "product" : "fibration") << "\n"
            << "pure z1 block max |d2 h|: " << format_double(report.pure_z1.max_abs)
            << (report.pure_z1.checked ? (report.pure_z1.pass ? "  [pass]" : "  [FAIL]") : "")
            << "\n"
            << "pure z2 block max |d2 h|: " << format_double(report.pure_z2.max_abs)
            << (report.pure_z2.checked ? (report.pure_z2.pass ? "  [pass]" : "  [FAIL]") : "")
            << "\n"
            << "mixed block max |d2 h|:   " << format_double(report.mixed.max_abs) << "\n"
            << "flatness pattern: " << (report.pass ? "pass" : "FAIL") << " (tolerance "
            << format_double(report.tolerance) << ")\n";
  return report.pass ? kExitOk : kExitValidation;
}

int run_curvature(const CommonOptions& opt) {
  LoadedScenario ls = load(opt);
  HermitianMetricField metric = require_metric(ls.scenario).field();
  const Patch& patch = require_patch(ls.scenario);
  fs::path out = resolve_out_dir(opt);
  fs::create_directories(out);

  MetricValidation mv = gate_metric(metric, patch);
  CurvatureConfig cfg;
  cfg.fd = ls.fd;
  auto nodes = grid_nodes(patch, ls.resolution, cfg.fd);

  const WirtingerSlot hol[2] = {WirtingerSlot::z1, WirtingerSlot::z2};
  const WirtingerSlot anti[2] = {WirtingerSlot::z1bar, WirtingerSlot::z2bar};
  CsvWriter csv;
  double max_abs = 0.0;
  for (double x1 : nodes[0]) {
    for (double y1 : nodes[1]) {
      for (double x2 : nodes[2]) {
        for (double y2 : nodes[3]) {
          Point4 p{x1, y1, x2, y2};
          CurvatureTensor t = curvature_at(metric, patch, p, cfg);
          for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
              std::string suffix = slot_pair(hol[a], anti[b]);
              for (int i = 0; i < t.rank; ++i) {
                for (int j = 0; j < t.rank; ++j) {
                  std::string ij = std::to_string(i + 1) + std::to_string(j + 1);
                  csv.add_sample(p, "R_low_" + ij + "_" + suffix, "none", t.lowered[a][b](i, j));
                  csv.add_sample(p, "R_raised_" + ij + "_" + suffix, "none", t.raised[a][b](i, j));
                  max_abs = std::max(max_abs, std::abs(t.lowered[a][b](i, j)));
                }
              }
            }
          }
        }
      }
    }
  }
  csv.add_aggregate("R_low_max_abs", "none", Complex(max_abs, 0));
  csv.write(out / "curvature_samples.csv");

  Json j;
  j["max_abs_lowered"] = max_abs;
  j["grid"] = ls.resolution.points;
  j["metric_validation"] = to_json(mv);
  write_json(j, out / "curvature.json");
  std::cout << "curvature tensor dumped on a " << ls.resolution.points[0] << "x"
            << ls.resolution.points[1] << "x" << ls.resolution.points[2] << "x"
            << ls.resolution.points[3] << " grid; max |R_low| = " << format_double(max_abs)
            << "\n";
  return kExitOk;
}

int run_c2(const CommonOptions& opt) {
  LoadedScenario ls = load(opt);
  HermitianMetricField metric = require_metric(ls.scenario).field();
  const Patch& patch = require_patch(ls.scenario);
  fs::path out = resolve_out_dir(opt);
  fs::create_directories(out);

  MetricValidation mv = gate_metric(metric, patch);
  CurvatureConfig cfg;
  cfg.fd = ls.fd;
  auto nodes = grid_nodes(patch, ls.resolution, cfg.fd);

  CsvWriter csv;
  for (double x1 : nodes[0]) {
    for (double y1 : nodes[1]) {
      for (double x2 : nodes[2]) {
        for (double y2 : nodes[3]) {
          Point4 p{x1, y1, x2, y2};
          MatrixForm omega = curvature_form(metric, patch, p, cfg);
          for (Convention conv : ls.conventions) {
            csv.add_sample(p, "c2_density", convention_name(conv),
                           densities_from_form(omega, conv).c2_density);
          }
        }
      }
    }
  }

  Json j;
  j["grid"] = ls.resolution.points;
  j["metric_validation"] = to_json(mv);
  std::cout << "c2 integrals over the patch:\n";
  for (Convention conv : ls.conventions) {
    DensityKind kind =
        conv == Convention::paper ? DensityKind::c2_paper : DensityKind::c2_chernweil;
    Integral integral = integrate_density(metric, patch, ls.resolution, kind, cfg);
    csv.add_aggregate("integral_c2", convention_name(conv), integral.value);
    csv.add_aggregate("integral_c2_error_estimate", convention_name(conv),
                      Complex(integral.error_estimate, 0));
    j[std::string("integral_") + convention_name(conv)] = to_json(integral);
    std::cout << "  " << convention_name(conv) << ": " << format_double(integral.value.real())
              << (integral.value.imag() >= 0 ? " + " : " - ")
              << format_double(std::abs(integral.value.imag())) << "i  (refinement error "
              << format_double(integral.error_estimate) << ")\n";
  }
  csv.write(out / "c2_samples.csv");
  write_json(j, out / "c2.json");
  return kExitOk;
}

int run_verify(const CommonOptions& opt) {
  LoadedScenario ls = load(opt);
  HermitianMetricField metric = require_metric(ls.scenario).field();
  const Patch& patch = require_patch(ls.scenario);
  fs::path out = resolve_out_dir(opt);
  fs::create_directories(out);

  MetricValidation mv = gate_metric(metric, patch);

  IdentityOptions io;
  io.resolutions = ls.ladder;
  io.conventions = ls.conventions;
  io.curvature.fd = ls.fd;
  io.pattern_tolerance = ls.tolerance;
  IdentityReport report = identity_residual(metric, patch, io);

  CsvWriter samples;
  for (const auto& s : report.samples) {
    samples.add_sample(s.point, "det_formula_density", "none", s.det_density);
    for (std::size_t c = 0; c < report.conventions.size(); ++c) {
      samples.add_sample(s.point, "c2_density", convention_name(report.conventions[c]),
                         s.oracle_density[c]);
      samples.add_sample(s.point, "identity_residual", convention_name(report.conventions[c]),
                         Complex(s.residual[c], 0));
    }
  }
  samples.write(out / "verify_samples.csv");

  CsvWriter agg;
  for (const auto& row : report.table) {
    std::string suffix = "@" + std::to_string(row.resolution);
    agg.add_aggregate("integral_det_formula" + suffix, "none", row.det_integral);
    agg.add_aggregate("integral_det_formula_change" + suffix, "none",
                      Complex(row.det_integral_change, 0));
    for (std::size_t c = 0; c < report.conventions.size(); ++c) {
      const char* conv = convention_name(report.conventions[c]);
      agg.add_aggregate("integral_c2" + suffix, conv, row.oracle_integral[c]);
      agg.add_aggregate("integral_c2_change" + suffix, conv,
                        Complex(row.oracle_integral_change[c], 0));
      agg.add_aggregate("max_residual" + suffix, conv, Complex(row.max_residual[c], 0));
    }
  }

  GridSpec finest(report.resolutions.back());
  PositivityOptions po;
  po.curvature.fd = ls.fd;
  po.conventions = ls.conventions;
  PositivityReport positivity = positivity_report(metric, patch, finest, po);
  agg.add_aggregate("positivity_integral", "none", positivity.det_integral.value);
  agg.add_aggregate("positivity_error_estimate", "none",
                    Complex(positivity.det_integral.error_estimate, 0));
  for (const auto& [conv, integral] : positivity.oracle_integrals) {
    agg.add_aggregate("positivity_oracle_integral", convention_name(conv), integral.value);
  }
  agg.write(out / "verify_aggregates.csv");

  Json j = to_json(report);
  j["metric_validation"] = to_json(mv);
  write_json(j, out / "identity.json");
  write_json(to_json(positivity), out / "positivity.json");

  std::cout << "identity measurement ("
            << (report.out_of_hypothesis ? "OUT OF HYPOTHESIS" : "in hypothesis") << ", mode "
            << (report.pattern.mode == MetricMode::product ? "product" : "fibration") << ")\n";
  std::cout << "res | integral det-formula";
  for (Convention c : report.conventions) {
    std::cout << " | integral c2 " << convention_name(c) << " | max residual "
              << convention_name(c);
  }
  std::cout << "\n";
  for (const auto& row : report.table) {
    std::cout << row.resolution << " | " << format_double(row.det_integral.real());
    for (std::size_t c = 0; c < report.conventions.size(); ++c) {
      std::cout << " | " << format_double(row.oracle_integral[c].real()) << " | "
                << format_double(row.max_residual[c]);
    }
    std::cout << "\n";
  }
  std::cout << "positivity: integral = " << format_double(positivity.det_integral.value.real())
            << ", sign " << sign_name(positivity.sign) << ", |imag| "
            << format_double(std::abs(positivity.det_integral.value.imag()))
            << (positivity.imag_ok ? " (ok)" : " (OVER TOLERANCE)") << "\n";
  const auto& last = report.table.back();
  for (std::size_t c = 0; c < report.conventions.size(); ++c) {
    if (last.max_residual[c] > ls.tolerance) {
      std::cout << "note: det-formula density and the " << convention_name(report.conventions[c])
                << " c2 oracle disagree (max residual " << format_double(last.max_residual[c])
                << "); the gap is reported, not reconciled\n";
    }
  }
  return kExitOk;
}

int run_bound(const CommonOptions& opt, long long r, const std::string& big_r,
              const std::string& delta, long long n) {
  LoadedScenario ls = load(opt, /*scenario_required=*/false);
  fs::path out = resolve_out_dir(opt);
  fs::create_directories(out);
  Json j;

  BoundQuery query;
  bool have_query = false;
  if (ls.scenario.lattice) {
    const LatticeSpec& l = *ls.scenario.lattice;
    if (l.rank && l.big_r && l.delta && l.n) {
      query = BoundQuery{*l.rank, *l.big_r, *l.delta, *l.n};
      have_query = true;
    }
  }
  if (r > 0 || !big_r.empty() || !delta.empty() || n > 0) {
    if (!(r > 0 && !big_r.empty() && !delta.empty() && n > 0)) {
      throw ConfigError("bound flags --r --R --delta --n must be given together");
    }
    query = BoundQuery{r, parse_rational(big_r), parse_rational(delta), n};
    have_query = true;
  }
  if (!have_query) {
    throw ConfigError(
        "bound needs --r --R --delta --n flags or a [lattice] section with r/bigr/delta/n");
  }

  BoundResult res = restriction_bound(query);
  std::cout << (res.satisfied ? "satisfied" : "not satisfied") << ", minimalN=" << res.minimal_n
            << "\n";
  j["query"] = Json{{"r", query.rank},
                    {"R", to_double(query.big_r)},
                    {"delta", to_double(query.delta)},
                    {"n", query.n}};
  j["satisfied"] = res.satisfied;
  j["minimal_n"] = res.minimal_n;

  if (ls.scenario.lattice && ls.scenario.lattice->form) {
    const LatticeSpec& l = *ls.scenario.lattice;
    const IntersectionForm& q = *l.form;
    if (l.h) {
      j["norm_h"] = norm(*l.h, q);
      std::cout << "|H| = " << format_double(norm(*l.h, q)) << "\n";
    }
    if (l.hprime) j["norm_hprime"] = norm(*l.hprime, q);
    if (l.h && l.hprime) {
      double beta = hyperbolic_distance(*l.h, *l.hprime, q);
      j["hyperbolic_distance"] = beta;
      std::cout << "beta(H, H') = " << format_double(beta) << "\n";
    }
    if (l.d && !l.ample.empty()) {
      bool in_cone = in_k_plus(*l.d, q, l.ample);
      j["d_in_k_plus"] = in_cone;
      std::cout << "D in K+: " << (in_cone ? "yes" : "no") << "\n";
    }
    if (l.h && l.n) {
      if (l.delta_class) {
        bool ok = discriminant_inequality(*l.delta_class, *l.h, q, static_cast<int>(*l.n));
        j["discriminant_inequality"] = ok;
        std::cout << "delta.H^(n-1) >= 0: " << (ok ? "yes" : "no") << "\n";
      } else if (l.delta) {
        bool ok = discriminant_inequality(*l.delta, *l.h, q, static_cast<int>(*l.n));
        j["discriminant_inequality"] = ok;
        std::cout << "delta >= 0: " << (ok ? "yes" : "no") << "\n";
      }
    }
    if (l.xi_c1a && l.xi_c1b && l.xi_rka && l.xi_rkb) {
      LatticeClass xi = xi_invariant(*l.xi_c1a, *l.xi_rka, *l.xi_c1b, *l.xi_rkb);
      Json coords = Json::array();
      for (const auto& c : xi.coordinates()) coords.push_back(to_double(c));
      j["xi"] = coords;
    }
  }
  write_json(j, out / "bound.json");
  return kExitOk;
}

int run_family(const CommonOptions& opt) {
  LoadedScenario ls = load(opt);
  if (!ls.scenario.family) throw ConfigError("scenario has no [family] section");
  const FamilySpec& spec = *ls.scenario.family;
  fs::path out = resolve_out_dir(opt);
  fs::create_directories(out);

  Json j;
  j["mode"] = family_mode_name(spec.mode);
  j["fibers"] = spec.fibers.size();
  std::vector<std::string> problems;

  CurveFamily family = spec.family();
  std::map<std::string, BundlePoint> assignments;
  for (const auto& f : spec.fibers) assignments[f.lambda] = f.point;

  try {
    ModuliSection section = build_section(family, assignments);
    j["section"] = "valid";
    if (family.mode() == FamilyMode::constant_curve) {
      auto cycle = cycle_from_constant_family(section);
      Json pts = Json::array();
      for (const auto& p : cycle) pts.push_back(p.payload);
      j["cycle"] = pts;
      std::cout << "moduli section valid; cycle has " << cycle.size() << " point(s)\n";
    } else {
      std::cout << "moduli section valid\n";
    }
  } catch (const ValidationError& e) {
    j["section"] = std::string("invalid: ") + e.what();
    problems.push_back(e.what());
  }

  if (spec.max_singularities) {
    auto over = fibers_over_singularity_threshold(family, *spec.max_singularities);
    j["over_singularity_threshold"] = over;
    for (const auto& l : over) {
      problems.push_back("fiber '" + l + "' exceeds the singularity threshold");
    }
  }

  if (spec.parabolic) {
    ParabolicValidation pv = validate_parabolic(*spec.parabolic);
    j["parabolic_valid"] = pv.valid;
    j["parabolic_violations"] = pv.violations;
    for (const auto& v : pv.violations) problems.push_back("parabolic data: " + v);
  }

  j["problems"] = problems;
  write_json(j, out / "family.json");
  for (const auto& p : problems) std::cout << "problem: " << p << "\n";
  return problems.empty() ? kExitOk : kExitValidation;
}

int run_report(const CommonOptions& opt) {
  fs::path out = resolve_out_dir(opt);
  Json bundle;
  bool any = false;
  for (const char* name : {"pattern.json", "curvature.json", "c2.json", "identity.json",
                           "positivity.json", "bound.json", "family.json"}) {
    fs::path p = out / name;
    if (!fs::exists(p)) continue;
    std::ifstream in(p);
    Json j;
    in >> j;
    bundle[fs::path(name).stem().string()] = j;
    any = true;
  }
  if (!any) throw ConfigError("no prior artifacts found in '" + out.string() + "'");
  write_json(bundle, out / "report.json");
  std::cout << "bundled " << bundle.size() << " artifact(s) into "
            << (out / "report.json").string() << "\n";
  for (const auto& [key, value] : bundle.items()) {
    std::cout << "  " << key;
    if (key == "pattern" && value.contains("pass")) {
      std::cout << ": flatness " << (value["pass"].get<bool>() ? "pass" : "FAIL");
    }
    if (key == "positivity" && value.contains("sign")) {
      std::cout << ": sign " << value["sign"].get<std::string>();
    }
    if (key == "bound" && value.contains("satisfied")) {
      std::cout << ": " << (value["satisfied"].get<bool>() ? "satisfied" : "not satisfied");
    }
    std::cout << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature and Chern-class densities for Hermitian metrics on curve families"};
  app.require_subcommand(1);

  CommonOptions common;
  long long bound_r = 0, bound_n = 0;
  std::string bound_big_r, bound_delta;

  auto add_common = [&](CLI::App* cmd, bool needs_scenario) {
    auto* s = cmd->add_option("--scenario", common.scenario_path, "scenario file path");
    if (needs_scenario) s->required();
    cmd->add_option("--out", common.out_dir, "output directory (default $CHERNFORM_OUT)");
    cmd->add_option("--grid-override", common.grid_override, "grid as n1xn2xn3xn4");
    cmd->add_option("--tolerance", common.tolerance, "pattern/report tolerance override");
    cmd->add_option("--convention", common.convention, "paper | chernweil | both");
    return cmd;
  };

  CLI::App* inspect = add_common(app.add_subcommand("inspect", "flatness pattern report"), true);
  CLI::App* curvature = add_common(app.add_subcommand("curvature", "curvature tensor dump"), true);
  CLI::App* c2 = add_common(app.add_subcommand("c2", "integrate c2 densities"), true);
  CLI::App* verify =
      add_common(app.add_subcommand("verify", "det-formula vs c2 oracle measurement"), true);
  CLI::App* bound =
      add_common(app.add_subcommand("bound", "restriction bound and lattice calculators"), false);
  bound->add_option("--r", bound_r, "sheaf rank (>= 2)");
  bound->add_option("--R", bound_big_r, "bound constant R (rational)");
  bound->add_option("--delta", bound_delta, "discriminant delta (rational)");
  bound->add_option("--n", bound_n, "multiple n in [C] = nH");
  CLI::App* family = add_common(app.add_subcommand("family", "validate a curve family"), true);
  CLI::App* report = add_common(app.add_subcommand("report", "bundle prior outputs"), false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (inspect->parsed()) return run_inspect(common);
    if (curvature->parsed()) return run_curvature(common);
    if (c2->parsed()) return run_c2(common);
    if (verify->parsed()) return run_verify(common);
    if (bound->parsed()) return run_bound(common, bound_r, bound_big_r, bound_delta, bound_n);
    if (family->parsed()) return run_family(common);
    if (report->parsed()) return run_report(common);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericError& e) {
    std::cerr << "numerical fault: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitOk;
}
