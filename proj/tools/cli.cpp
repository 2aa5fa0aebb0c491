#include "cli.hpp"

#include <filesystem>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "tmdyn/goedel.hpp"
#include "tmdyn/gshift.hpp"
#include "tmdyn/io.hpp"
#include "tmdyn/machine.hpp"
#include "tmdyn/nda.hpp"
#include "tmdyn/render.hpp"
#include "tmdyn/verify.hpp"

namespace tmdyn::cli {

namespace fs = std::filesystem;

Representation parse_representation(const std::string& text) {
  if (text == "tm") return Representation::Tm;
  if (text == "gshift") return Representation::Gshift;
  if (text == "nda-point") return Representation::NdaPoint;
  if (text == "nda-macro") return Representation::NdaMacro;
  if (text == "field") return Representation::Field;
  throw InputError("unknown representation '" + text + "'");
}

std::string to_string(Representation r) {
  switch (r) {
    case Representation::Tm: return "tm";
    case Representation::Gshift: return "gshift";
    case Representation::NdaPoint: return "nda-point";
    case Representation::NdaMacro: return "nda-macro";
    case Representation::Field: return "field";
  }
  return "?";
}

void RunManifest::validate() const {
  if (machine_path.empty()) throw InputError("--machine is required");
  if (configuration.empty()) throw InputError("--config is required");
  if (out_path.empty()) throw InputError("--out is required");
  if (representation == Representation::Field) {
    if (!grid_n) throw InputError("--grid-n is required for --repr field");
    if (*grid_n == 0) throw InputError("--grid-n must be positive");
  } else {
    if (grid_n) throw InputError("--grid-n only applies to --repr field");
    if (!snapshot_dir.empty()) throw InputError("--snapshots only applies to --repr field");
  }
}

namespace {

std::string read_input(const std::string& path) {
  try {
    return read_file(path);
  } catch (const std::runtime_error& e) {
    throw InputError(e.what());
  }
}

std::shared_ptr<const TuringMachine> load_machine(const std::string& path) {
  const std::string text = read_input(path);
  try {
    return std::make_shared<const TuringMachine>(parse_tm(text));
  } catch (const MachineSpecError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string halt_report(bool halted, std::size_t steps) {
  return halted ? "halted at step " + std::to_string(steps) : "not halted after " + std::to_string(steps) + " steps";
}

template <class T>
std::string format_mass(const T& v) {
  if constexpr (std::is_same_v<T, Rational>) {
    return v.str();
  } else {
    std::ostringstream s;
    s << std::setprecision(17) << v;
    return s.str();
  }
}

template <class T>
void run_field(const NdaMachine& nda, const Rect& r0, const RunManifest& manifest, std::ostream& out) {
  const std::size_t n = *manifest.grid_n;
  const auto matrix = build_transfer<T>(nda, n);
  auto u = rasterize_rect<T>(r0, n);
  if (!manifest.snapshot_dir.empty()) fs::create_directories(manifest.snapshot_dir);

  std::ostringstream csv;
  csv << "step,mass\n";
  for (std::size_t t = 0;; ++t) {
    const std::string mass = format_mass(u.total());
    csv << t << ',' << mass << '\n';
    out << "step " << t << " mass " << mass << '\n';
    if (!manifest.snapshot_dir.empty()) {
      char name[32];
      std::snprintf(name, sizeof name, "density_t%03zu", t);
      const fs::path base = fs::path(manifest.snapshot_dir) / name;
      write_file_atomic(base.string() + ".csv", write_density_csv(u));
      if constexpr (std::is_same_v<T, Rational>) {
        write_file_atomic(base.string() + ".pgm", write_density_pgm(to_float(u)));
      } else {
        write_file_atomic(base.string() + ".pgm", write_density_pgm(u));
      }
    }
    if (t == manifest.steps) break;
    u = fp_step(matrix, u);
  }
  write_file_atomic(manifest.out_path, csv.str());
}

}  // namespace

int cmd_compile(const std::string& machine_path, const std::string& out_path, const std::string& rules_path,
                std::ostream& out) {
  const auto m = load_machine(machine_path);
  const auto nda = compile_nda(m, GoedelCoding::standard(*m));
  write_file_atomic(out_path, write_nda_artifact(nda));
  if (!rules_path.empty()) write_file_atomic(rules_path, dump_rules(*m, compile_rules(*m)));
  out << "compiled " << nda.branches().size() << " branches to " << out_path << '\n';
  return kOk;
}

int cmd_run(const RunManifest& manifest, std::ostream& out) {
  manifest.validate();
  const auto m = load_machine(manifest.machine_path);
  TapeConfiguration c0;
  try {
    c0 = parse_configuration(*m, manifest.configuration);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("--config: ") + e.what());
  }

  const std::size_t pad = manifest.pad.value_or(manifest.steps + 1);
  const DottedSequence s0 = pad_blanks(config_to_dotted(c0), pad, pad);

  switch (manifest.representation) {
    case Representation::Tm: {
      const auto run = tm_run(*m, c0, manifest.steps);
      std::ostringstream csv;
      csv << "step,configuration,halted\n";
      for (std::size_t t = 0; t < run.configurations.size(); ++t) {
        const bool halted = run.halted && t == run.steps();
        csv << t << ',' << format_configuration(*m, run.configurations[t]) << ',' << (halted ? 1 : 0) << '\n';
      }
      write_file_atomic(manifest.out_path, csv.str());
      out << halt_report(run.halted, run.steps()) << '\n';
      return kOk;
    }
    case Representation::Gshift: {
      const auto rules = compile_rules(*m);
      std::ostringstream csv;
      csv << "step,sequence,halted\n";
      DottedSequence s = config_to_dotted(c0);
      std::size_t t = 0;
      bool halted = false;
      for (;; ++t) {
        const ShiftRule* rule = rules.match(s);
        halted = !rule || rule->is_identity();
        csv << t << ',' << format_dotted(*m, s) << ',' << (halted ? 1 : 0) << '\n';
        if (halted || t == manifest.steps) break;
        s = *gshift_step(rules, s);
      }
      write_file_atomic(manifest.out_path, csv.str());
      out << halt_report(halted, t) << '\n';
      return kOk;
    }
    case Representation::NdaPoint: {
      const auto nda = compile_nda(m, GoedelCoding::standard(*m));
      const auto run = run_points(nda, encode_point(nda.coding(), s0), manifest.steps);
      write_file_atomic(manifest.out_path, write_point_csv(run));
      out << halt_report(run.halted, run.steps()) << '\n';
      return kOk;
    }
    case Representation::NdaMacro: {
      const auto nda = compile_nda(m, GoedelCoding::standard(*m));
      const auto run = run_macro(nda, config_to_rect(nda.coding(), s0), manifest.steps);
      write_file_atomic(manifest.out_path, write_macro_csv(run));
      out << halt_report(run.halted, run.steps()) << '\n';
      return kOk;
    }
    case Representation::Field: {
      const auto nda = compile_nda(m, GoedelCoding::standard(*m));
      const Rect r0 = config_to_rect(nda.coding(), s0);
      if (manifest.mode == ArithmeticMode::Exact) {
        run_field<Rational>(nda, r0, manifest, out);
      } else {
        run_field<double>(nda, r0, manifest, out);
      }
      return kOk;
    }
  }
  return kRuntimeError;
}

int cmd_verify(const std::string& machine_path, const std::string& artifact_path, std::size_t trials,
               std::uint64_t seed, const std::string& out_path, std::ostream& out) {
  VerifyReport report;
  if (machine_path.empty()) {
    if (!artifact_path.empty()) throw InputError("--artifact needs --machine");
    report = verify_random_machines(trials, seed);
  } else {
    const auto m = load_machine(machine_path);
    if (artifact_path.empty()) {
      report = verify_machine(*m, compile_nda(m, GoedelCoding::standard(*m)), trials, seed);
    } else {
      const auto nda = read_nda_artifact(read_input(artifact_path));
      if (!nda.coding().consistent_with(*m)) {
        throw InputError("artifact " + artifact_path + " was not compiled from " + machine_path);
      }
      report = verify_machine(*m, nda, trials, seed);
    }
  }
  const std::string text = report.str();
  out << text;
  if (!out_path.empty()) write_file_atomic(out_path, text);
  return report.ok() ? kOk : kRuntimeError;
}

int cmd_render(const std::string& artifact_path, const std::string& trajectory_path, const std::string& out_path,
               std::ostream& out) {
  const auto nda = read_nda_artifact(read_input(artifact_path));
  std::vector<MacroRow> rows;
  if (!trajectory_path.empty()) rows = read_macro_csv(read_input(trajectory_path));
  write_file_atomic(out_path, render_svg(nda, rows));
  out << "rendered " << nda.branches().size() << " cells and " << rows.size() << " trajectory rectangles to "
      << out_path << '\n';
  return kOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compile Turing machines into piecewise affine maps and density dynamics", "tmdyn"};
  app.require_subcommand(1);

  std::string machine, config, repr = "tm", mode = "exact", out_path, artifact, trajectory, rules, snapshots;
  std::size_t steps = 10, trials = 1000, grid_n = 0, pad = 0;
  std::uint64_t seed = 1;

  auto* compile = app.add_subcommand("compile", "Compile a machine into an NDA artifact");
  compile->add_option("--machine", machine, "Machine-spec file")->required();
  compile->add_option("--out", out_path, "Artifact path (JSON)")->required();
  compile->add_option("--rules", rules, "Also write the generalized-shift rule dump here");

  auto* run_cmd = app.add_subcommand("run", "Run one representation and write its trajectory");
  run_cmd->add_option("--machine", machine, "Machine-spec file")->required();
  run_cmd->add_option("--config", config, "Initial configuration '<left> <state> <head> <right>'")->required();
  run_cmd->add_option("--repr", repr, "tm | gshift | nda-point | nda-macro | field")
      ->check(CLI::IsMember({"tm", "gshift", "nda-point", "nda-macro", "field"}));
  run_cmd->add_option("--steps", steps, "Maximum number of steps");
  auto* grid_opt = run_cmd->add_option("--grid-n", grid_n, "Grid cells per axis (field only)");
  run_cmd->add_option("--mode", mode, "exact | float (field only)")->check(CLI::IsMember({"exact", "float"}));
  auto* pad_opt = run_cmd->add_option("--pad", pad, "Blanks added on each side of the window (default steps + 1)");
  run_cmd->add_option("--out", out_path, "Trajectory CSV")->required();
  run_cmd->add_option("--snapshots", snapshots, "Directory for per-step density CSV and PGM (field only)");

  auto* verify = app.add_subcommand("verify", "Run the commutation property suites");
  verify->add_option("--machine", machine, "Machine-spec file; random machines when omitted");
  verify->add_option("--artifact", artifact, "Check this compiled artifact instead of a fresh compile");
  verify->add_option("--trials", trials, "Random inputs per suite");
  verify->add_option("--seed", seed, "PRNG seed");
  verify->add_option("--out", out_path, "Also write the report here");

  auto* render = app.add_subcommand("render", "Draw the symbologram as SVG");
  render->add_option("--artifact", artifact, "Compiled artifact")->required();
  render->add_option("--trajectory", trajectory, "Macro trajectory CSV from 'run --repr nda-macro'");
  render->add_option("--out", out_path, "SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*compile) return cmd_compile(machine, out_path, rules, out);
    if (*run_cmd) {
      RunManifest manifest;
      manifest.machine_path = machine;
      manifest.configuration = config;
      manifest.representation = parse_representation(repr);
      manifest.steps = steps;
      if (*grid_opt) manifest.grid_n = grid_n;
      manifest.mode = mode == "float" ? ArithmeticMode::Float : ArithmeticMode::Exact;
      if (*pad_opt) manifest.pad = pad;
      manifest.out_path = out_path;
      manifest.snapshot_dir = snapshots;
      return cmd_run(manifest, out);
    }
    if (*verify) return cmd_verify(machine, artifact, trials, seed, out_path, out);
    if (*render) return cmd_render(artifact, trajectory, out_path, out);
  } catch (const PartitionConsistencyError& e) {
    err << "error: partition consistency: " << e.what() << '\n';
    return kRuntimeError;
  } catch (const TrajectoryMismatchError& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  } catch (const MachineSpecError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kInputError;
}

}  // namespace tmdyn::cli
