// sclab: command-line front end for the superposition-code laboratory.
//
// Subcommands map one-to-one onto the library surface: gen-code and certify wrap the
// code constructors and their certificate, welch-check wraps the crosstalk floors,
// experiment runs a configured Monte Carlo sweep and writes its artifacts, scales
// prints the capacity reference table. Exit codes: 0 success, 1 usage or input error,
// 2 a proved floor was breached (a software defect, never a statistical outcome).

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "scl/codes.hpp"
#include "scl/config.hpp"
#include "scl/errors.hpp"
#include "scl/experiments.hpp"
#include "scl/io.hpp"
#include "scl/manifest.hpp"
#include "scl/readouts.hpp"
#include "scl/scales.hpp"
#include "scl/serialize.hpp"
#include "scl/svg.hpp"

namespace {

using scl::Index;
using scl::Scalar;

const char* kind_name(scl::CodeKind kind) {
  switch (kind) {
    case scl::CodeKind::RandomUnit: return "random";
    case scl::CodeKind::TightFrame: return "tight-frame";
    case scl::CodeKind::BasisUnion: return "basis-union";
    case scl::CodeKind::Identity: return "identity";
    case scl::CodeKind::External: return "external";
  }
  return "external";
}

struct CodeFlags {
  std::string kind = "random";
  Index d = 0;
  Index F = 0;
  Index k = 2;
  std::uint64_t seed = 0;
};

void add_generator_flags(CLI::App* sub, CodeFlags& flags, bool require_d) {
  sub->add_option("--kind", flags.kind,
                  "random | tight-frame | basis-union | identity")
      ->check(CLI::IsMember({"random", "tight-frame", "basis-union", "identity"}));
  sub->add_flag_callback("--random", [&flags] { flags.kind = "random"; },
                         "shorthand for --kind random");
  sub->add_flag_callback("--tight-frame", [&flags] { flags.kind = "tight-frame"; },
                         "shorthand for --kind tight-frame");
  sub->add_flag_callback("--basis-union", [&flags] { flags.kind = "basis-union"; },
                         "shorthand for --kind basis-union");
  sub->add_flag_callback("--identity", [&flags] { flags.kind = "identity"; },
                         "shorthand for --kind identity");
  auto* d_opt = sub->add_option("--d", flags.d, "ambient dimension");
  if (require_d) d_opt->required();
  sub->add_option("--F", flags.F, "number of features (random, tight-frame)");
  sub->add_option("--k", flags.k, "bases in the union (basis-union)");
  sub->add_option("--seed", flags.seed, "construction seed");
}

scl::Code build_code(const CodeFlags& flags) {
  if (flags.d <= 0) throw scl::ContractError("--d is required and must be positive");
  if (flags.kind == "identity") return scl::identity_code(flags.d);
  if (flags.kind == "basis-union")
    return scl::basis_union_code(flags.d, flags.k, flags.seed);
  if (flags.F <= 0)
    throw scl::ContractError("--F is required for kind '" + flags.kind + "'");
  if (flags.kind == "random")
    return scl::random_unit_code(flags.d, flags.F, flags.seed);
  return scl::tight_frame_code(flags.d, flags.F, flags.seed);
}

void print_kv(const char* key, const std::string& value) {
  std::cout << key << ": " << value << "\n";
}

int cmd_gen_code(const CodeFlags& flags, const std::string& out_path) {
  const scl::Code code = build_code(flags);
  scl::save_code(code, out_path);
  std::cout << "wrote " << out_path << ": d=" << code.d << " F=" << code.F
            << " kind=" << kind_name(code.kind) << "\n";
  return 0;
}

int cmd_certify(const std::string& code_path, const scl::TilePlan& plan) {
  const scl::Code code = scl::load_code(code_path);
  const scl::CodeCertificate cert = scl::certify(code, plan);
  print_kv("d", std::to_string(cert.d));
  print_kv("F", std::to_string(cert.F));
  print_kv("coherence", scl::format_scalar(cert.coherence));
  print_kv("sum_sq_offdiag", scl::format_scalar(cert.sum_sq_offdiag));
  print_kv("welch_pair_floor", scl::format_scalar(cert.welch_pair_floor));
  print_kv("frame_bound_gap", scl::format_scalar(cert.frame_bound_gap));
  print_kv("is_tight_frame", cert.is_tight_frame ? "true" : "false");
  return 0;
}

int cmd_welch_check(const CodeFlags& flags, const std::string& code_path,
                    const std::string& readout_kind, const scl::TilePlan& plan) {
  const scl::Code code =
      code_path.empty() ? build_code(flags) : scl::load_code(code_path);
  scl::Readout readout = readout_kind == "least-squares"
                             ? scl::rescale_to_unit_diagonal(
                                   scl::least_squares_readout(code), code)
                             : scl::transpose_readout(code);
  const scl::CrosstalkReport report = scl::crosstalk(readout, code, plan);
  print_kv("d", std::to_string(report.d));
  print_kv("F", std::to_string(report.F));
  print_kv("readout", readout_kind);
  print_kv("sum_sq_offdiag", scl::format_scalar(report.sum_sq_offdiag));
  print_kv("mean_sq_offdiag", scl::format_scalar(report.mean_sq_offdiag));
  print_kv("max_abs_offdiag", scl::format_scalar(report.max_abs_offdiag));
  print_kv("floor_sum", scl::format_scalar(report.floor_sum));
  print_kv("floor_mean", scl::format_scalar(report.floor_mean));
  print_kv("floor_max", scl::format_scalar(report.floor_max));
  print_kv("slack_sum", scl::format_scalar(report.slack_sum));

  // The floors are proved for every unit-diagonal readout; only rounding slack is
  // tolerated. A breach here is a defect in this program, not a finding.
  const Scalar sum_tol = 1e-6 * static_cast<Scalar>(report.F);
  const bool sum_ok = report.slack_sum >= -sum_tol;
  const bool max_ok = report.max_abs_offdiag >= report.floor_max - 1e-9;
  if (sum_ok && max_ok) {
    print_kv("status", "floors satisfied");
    return 0;
  }
  print_kv("status", "floor violated");
  if (!sum_ok)
    std::cerr << "error: sum-of-squares floor breached by "
              << scl::format_scalar(-report.slack_sum) << " (defect)\n";
  if (!max_ok)
    std::cerr << "error: max-crosstalk floor breached by "
              << scl::format_scalar(report.floor_max - report.max_abs_offdiag)
              << " (defect)\n";
  return 2;
}

int cmd_scales(Index d, Scalar alpha, Scalar s, Scalar eps,
               const scl::ScaleConstants& constants, bool json) {
  const scl::ScaleReport report = scl::hierarchy_report(d, alpha, s, eps, constants);
  if (json) {
    std::cout << scl::to_json(report) << "\n";
  } else {
    std::cout << scl::to_text_table(report);
  }
  return 0;
}

// ---- experiment artifacts ----------------------------------------------------------

struct Artifact {
  std::string name;  // relative to the output directory
  std::string bytes;
};

void write_artifact(const std::filesystem::path& dir, const Artifact& artifact) {
  const std::filesystem::path path = dir / artifact.name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw scl::FileFormatError("cannot open " + path.string() + " for writing", 0);
  out.write(artifact.bytes.data(),
            static_cast<std::streamsize>(artifact.bytes.size()));
  out.flush();
  if (!out) throw scl::FileFormatError("write failed for " + path.string(), 0);
}

const scl::ResultRow* find_row(const scl::ExperimentResult& result,
                               const std::string& statistic, Index d, Index F, Index s,
                               Scalar noise) {
  for (const auto& row : result.rows)
    if (row.statistic == statistic && row.d == d && row.F == F && row.s == s &&
        row.noise == noise)
      return &row;
  return nullptr;
}

std::string label_dF(Index d, Index F) {
  return "d=" + std::to_string(d) + " F=" + std::to_string(F);
}

bool any_points(const std::vector<scl::Series>& series) {
  for (const auto& s : series)
    if (!s.points.empty()) return true;
  return false;
}

std::vector<Scalar> noise_grid(const scl::ExperimentConfig& config) {
  if (config.noise_values.empty()) return {0.0};
  return config.noise_values;
}

void plot_coherence(const scl::ExperimentConfig& config,
                    const scl::ExperimentResult& result,
                    std::vector<Artifact>& artifacts) {
  std::vector<scl::Series> series;
  for (const scl::FSpec& fspec : config.F_values) {
    scl::Series s;
    s.label = "F=" + scl::to_string(fspec);
    for (Index d : config.d_values) {
      const Index F = fspec.resolve(d);
      if (const auto* row = find_row(result, "coherence_median", d, F, 0, 0.0))
        s.points.emplace_back(static_cast<Scalar>(d), row->value);
    }
    series.push_back(std::move(s));
  }
  if (any_points(series))
    artifacts.push_back({"coherence_median.svg",
                         scl::svg_line_chart("median coherence", "dimension d",
                                             "median max |<phi_i,phi_j>|", series)});
}

void plot_interference(const scl::ExperimentConfig& config,
                       const scl::ExperimentResult& result,
                       std::vector<Artifact>& artifacts) {
  std::vector<scl::Series> ratio_series;
  for (Index d : config.d_values) {
    scl::Series s;
    s.label = "d=" + std::to_string(d);
    for (Index m : config.s_values)
      if (const auto* row = find_row(result, "interference_variance_ratio", d, 0, m, 0.0))
        s.points.emplace_back(static_cast<Scalar>(m), row->value);
    if (!s.points.empty()) ratio_series.push_back(std::move(s));
  }
  if (!ratio_series.empty()) {
    artifacts.push_back(
        {"interference_variance.svg",
         scl::svg_line_chart("interference variance over m/d", "summands m",
                             "empirical variance / (m/d)", ratio_series)});
    return;
  }
  scl::Series zero;
  zero.label = "max |sum|";
  for (const auto& row : result.rows)
    if (row.statistic == "interference_max_abs_sum")
      zero.points.emplace_back(static_cast<Scalar>(row.d), row.value);
  if (!zero.points.empty())
    artifacts.push_back({"interference_zero_sum.svg",
                         scl::svg_line_chart("empty-sum sanity check", "dimension d",
                                             "max |sum|", {zero})});
}

void plot_phase(const scl::ExperimentConfig& config, const scl::ExperimentResult& result,
                std::vector<Artifact>& artifacts) {
  const std::vector<Scalar> noises = noise_grid(config);
  for (std::size_t ni = 0; ni < noises.size(); ++ni) {
    for (std::size_t fi = 0; fi < config.F_values.size(); ++fi) {
      std::vector<Scalar> x_ticks, y_ticks;
      for (Index s : config.s_values) x_ticks.push_back(static_cast<Scalar>(s));
      for (Index d : config.d_values) y_ticks.push_back(static_cast<Scalar>(d));
      scl::Matrix values(static_cast<Index>(y_ticks.size()),
                         static_cast<Index>(x_ticks.size()));
      bool complete = true;
      for (Index i = 0; i < values.rows(); ++i) {
        const Index d = config.d_values[static_cast<std::size_t>(i)];
        const Index F = config.F_values[fi].resolve(d);
        for (Index j = 0; j < values.cols(); ++j) {
          const Index s = config.s_values[static_cast<std::size_t>(j)];
          const auto* row =
              find_row(result, "threshold_success_rate", d, F, s, noises[ni]);
          if (!row) { complete = false; break; }
          values(i, j) = row->value;
        }
        if (!complete) break;
      }
      if (!complete) continue;
      const std::string name = "phase_noise" + std::to_string(ni) + "_F" +
                               std::to_string(fi) + ".svg";
      const std::string title = "threshold recovery success (noise=" +
                                scl::format_scalar(noises[ni]) +
                                ", F=" + scl::to_string(config.F_values[fi]) + ")";
      artifacts.push_back({name, scl::svg_heatmap(title, "active features s",
                                                  "dimension d", x_ticks, y_ticks,
                                                  values)});
    }
  }
}

void plot_energy(const scl::ExperimentConfig& config, const scl::ExperimentResult& result,
                 std::vector<Artifact>& artifacts) {
  std::vector<scl::Series> series;
  for (Index d : config.d_values) {
    for (const scl::FSpec& fspec : config.F_values) {
      const Index F = fspec.resolve(d);
      scl::Series mean, floor;
      mean.label = "mean " + label_dF(d, F);
      floor.label = "floor " + label_dF(d, F);
      for (Index s : config.s_values) {
        if (const auto* row = find_row(result, "energy_mean_over_F", d, F, s, 0.0)) {
          mean.points.emplace_back(static_cast<Scalar>(s), row->value);
          if (row->has_bound)
            floor.points.emplace_back(static_cast<Scalar>(s), row->bound);
        }
      }
      if (!mean.points.empty()) series.push_back(std::move(mean));
      if (!floor.points.empty()) series.push_back(std::move(floor));
    }
  }
  if (any_points(series))
    artifacts.push_back({"energy_floor.svg",
                         scl::svg_line_chart("mean readout energy per feature",
                                             "active features s", "E||G x||^2 / F",
                                             series)});
}

void plot_quadratic(const scl::ExperimentConfig& config,
                    const scl::ExperimentResult& result,
                    std::vector<Artifact>& artifacts) {
  scl::Series success, ratio;
  success.label = "success rate at calibrated s";
  ratio.label = "energy mean / floor";
  for (const auto& row : result.rows) {
    if (row.statistic == "threshold_success_rate_fixed_support")
      success.points.emplace_back(static_cast<Scalar>(row.d), row.value);
    if (row.statistic == "energy_mean_over_F_bernoulli" && row.has_bound &&
        row.bound > 0.0)
      ratio.points.emplace_back(static_cast<Scalar>(row.d), row.value / row.bound);
  }
  std::vector<scl::Series> series;
  if (!success.points.empty()) series.push_back(std::move(success));
  if (!ratio.points.empty()) series.push_back(std::move(ratio));
  if (any_points(series))
    artifacts.push_back({"quadratic_separation.svg",
                         scl::svg_line_chart("quadratic load at F=d^2", "dimension d",
                                             "rate / ratio", series)});
  (void)config;
}

std::vector<Artifact> make_plots(const scl::ExperimentConfig& config,
                                 const scl::ExperimentResult& result) {
  std::vector<Artifact> artifacts;
  switch (config.experiment) {
    case scl::ExperimentKind::CoherenceTail: plot_coherence(config, result, artifacts); break;
    case scl::ExperimentKind::InterferenceTail: plot_interference(config, result, artifacts); break;
    case scl::ExperimentKind::RecoveryPhase: plot_phase(config, result, artifacts); break;
    case scl::ExperimentKind::EnergyFloor: plot_energy(config, result, artifacts); break;
    case scl::ExperimentKind::QuadraticSeparation: plot_quadratic(config, result, artifacts); break;
  }
  return artifacts;
}

int cmd_experiment(const std::string& config_path, const std::string& out_dir) {
  const scl::ExperimentConfig config = scl::load_config(config_path);
  const scl::ExperimentResult result = scl::run_experiment(config);

  std::vector<Artifact> artifacts;
  artifacts.push_back({"results.csv", scl::to_csv(result)});
  artifacts.push_back({"results.json", scl::to_json(result)});
  for (Artifact& plot : make_plots(config, result)) artifacts.push_back(std::move(plot));

  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);

  scl::RunManifest manifest;
  manifest.config_path = config_path;
  manifest.config_json = scl::config_to_json_text(config);
  manifest.output_dir = out_dir;
  manifest.version = result.version;
  manifest.seed = result.seed;
  manifest.wall_time_seconds = result.wall_time_seconds;
  for (const Artifact& artifact : artifacts) {
    write_artifact(dir, artifact);
    manifest.files.push_back({artifact.name, scl::content_digest(artifact.bytes)});
  }
  write_artifact(dir, {"manifest.json", scl::to_json(manifest)});

  std::cout << "experiment: " << scl::to_string(config.experiment) << "\n";
  std::cout << "rows: " << result.rows.size() << "\n";
  for (const std::string& note : result.notes) std::cout << "note: " << note << "\n";
  for (const scl::ManifestEntry& entry : manifest.files)
    std::cout << "wrote " << (dir / entry.name).string() << " " << entry.digest << "\n";
  std::cout << "wrote " << (dir / "manifest.json").string() << "\n";
  std::cout << "wall_time_seconds: " << scl::format_scalar(result.wall_time_seconds)
            << "\n";

  int defects = 0;
  for (const auto& row : result.rows) {
    if (row.has_bound && !row.satisfied && scl::defect_on_violation(row.bound_name)) {
      ++defects;
      std::cerr << "error: proved bound '" << row.bound_name << "' breached: "
                << row.statistic << " d=" << row.d << " F=" << row.F << " s=" << row.s
                << " value=" << scl::format_scalar(row.value)
                << " bound=" << scl::format_scalar(row.bound) << " (defect)\n";
    }
  }
  return defects == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for linear readouts of superposed features"};
  app.require_subcommand(1);

  CodeFlags gen_flags;
  std::string gen_out = "code.sclb";
  auto* gen = app.add_subcommand("gen-code", "generate a code and write it to a file");
  add_generator_flags(gen, gen_flags, /*require_d=*/true);
  gen->add_option("--out", gen_out, "output path");

  std::string certify_path;
  scl::TilePlan certify_plan;
  auto* certify = app.add_subcommand("certify", "print the certificate of a stored code");
  certify->add_option("--code", certify_path, "path to a code file")->required();
  certify->add_option("--tile-cols", certify_plan.tile_cols, "Gram tile width");
  certify->add_flag("--parallel", certify_plan.parallel_tiles, "process tiles in parallel");

  CodeFlags welch_flags;
  std::string welch_code_path;
  std::string welch_readout = "transpose";
  scl::TilePlan welch_plan;
  auto* welch = app.add_subcommand(
      "welch-check", "check readout crosstalk against the proved floors");
  welch->add_option("--code", welch_code_path, "path to a code file (instead of generator flags)");
  add_generator_flags(welch, welch_flags, /*require_d=*/false);
  welch->add_option("--readout", welch_readout, "transpose | least-squares")
      ->check(CLI::IsMember({"transpose", "least-squares"}));
  welch->add_option("--tile-cols", welch_plan.tile_cols, "Gram tile width");
  welch->add_flag("--parallel", welch_plan.parallel_tiles, "process tiles in parallel");

  std::string experiment_config;
  std::string experiment_out = "./out";
  auto* experiment = app.add_subcommand(
      "experiment", "run a configured sweep; write CSV, JSON, SVG and a manifest");
  experiment->add_option("--config", experiment_config, "path to an INI config file")
      ->required();
  experiment->add_option("--out", experiment_out, "output directory");

  Index scales_d = 0;
  Scalar scales_alpha = 0.0;
  Scalar scales_s = 1.0;
  Scalar scales_eps = 0.1;
  scl::ScaleConstants scales_constants;
  bool scales_json = false;
  auto* scales = app.add_subcommand(
      "scales", "print the capacity reference scales at one operating point");
  scales->add_option("--d", scales_d, "ambient dimension (>= 3)")->required();
  scales->add_option("--alpha", scales_alpha, "interaction density in (0,1)")->required();
  scales->add_option("--s", scales_s, "sparsity entering the template scale");
  scales->add_option("--eps", scales_eps, "embedding distortion for the JL row");
  scales->add_option("--gamma", scales_constants.gamma, "interpolation exponent in [0,1/2]");
  scales->add_option("--C1", scales_constants.C1, "template threshold constant");
  scales->add_option("--C2", scales_constants.C2, "template threshold constant");
  scales->add_option("--K", scales_constants.K_gamma, "correction-layer polylog factor");
  scales->add_option("--c", scales_constants.c_gamma, "interpolation prefactor");
  scales->add_flag("--json", scales_json, "emit JSON instead of the text table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) return cmd_gen_code(gen_flags, gen_out);
    if (certify->parsed()) return cmd_certify(certify_path, certify_plan);
    if (welch->parsed())
      return cmd_welch_check(welch_flags, welch_code_path, welch_readout, welch_plan);
    if (experiment->parsed()) return cmd_experiment(experiment_config, experiment_out);
    if (scales->parsed())
      return cmd_scales(scales_d, scales_alpha, scales_s, scales_eps, scales_constants,
                        scales_json);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
