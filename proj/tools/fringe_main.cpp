// fringe: Mach-Zehnder interference of quantum channels, from the command
// line. Every subcommand reads channel files, prints a deterministic report
// to stdout (plain text, or JSON with --json), and writes any requested
// artifacts to explicit --out paths. Diagnostics go to stderr only.
//
// Exit codes: 0 success, 2 usage error, 3 invalid input data, 4 numeric
// failure.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fringe/fringe.hpp"

namespace {

using namespace fringe;

// Flag-value problems that CLI11 cannot diagnose itself (e.g. a malformed
// --rho form); reported as usage errors.
struct UsageError {
  std::string message;
};

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::non_finite:
    case Errc::not_psd:
    case Errc::numeric_failure:
      return 4;
    default:
      return 3;
  }
}

std::string echo_command(int argc, char** argv) {
  std::string out;
  for (int i = 1; i < argc; ++i) {
    if (i > 1) out += ' ';
    out += argv[i];
  }
  return out;
}

KrausChannel load_input_channel(RunReport& report, const std::string& role,
                                const std::string& path) {
  std::string text = read_file(path);
  report.add_input(role, path, hex64(fnv1a(text)));
  return parse_channel(text);
}

// --rho accepts `mixed` (the maximally mixed state I/d) or `pure:FILE` with a
// state-vector file.
DensityMatrix resolve_rho(RunReport& report, const std::string& arg, Index dim) {
  if (arg == "mixed") return maximally_mixed(dim);
  if (arg.rfind("pure:", 0) == 0) {
    std::string path = arg.substr(5);
    if (path.empty()) throw UsageError{"--rho pure: requires a file path"};
    std::string text = read_file(path);
    report.add_input("rho", path, hex64(fnv1a(text)));
    DensityMatrix rho = parse_pure_state(text);
    if (rho.dim != dim)
      raise(Errc::dimension_mismatch, "state file: dimension " + std::to_string(rho.dim) +
                                          " does not match channel dimension " +
                                          std::to_string(dim));
    return rho;
  }
  throw UsageError{"--rho must be `mixed` or `pure:FILE`, got `" + arg + "`"};
}

void print_report(const RunReport& report, bool as_json) {
  std::cout << (as_json ? report.render_json() : report.render_text());
}

}  // namespace

int run_command(int argc, char** argv) {
  CLI::App app{"Interference and coherence metrics of quantum channels"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "emit the report as JSON instead of plain text");

  std::string u_path, v_path, ch_path, out_path;
  std::string rho_arg = "mixed";
  std::int64_t samples = 64;
  bool oracle = false, maximize = false, after_maximize = false;
  std::int64_t dim = 0, n_kraus = 0;
  std::uint64_t seed = 0;

  CLI::App* pattern = app.add_subcommand("pattern", "sample the interference fringe to CSV");
  pattern->add_option("--u", u_path, "upper-arm channel file")->required();
  pattern->add_option("--v", v_path, "lower-arm channel file")->required();
  pattern->add_option("--rho", rho_arg, "input state: mixed | pure:FILE");
  pattern->add_option("--samples", samples, "number of phase samples (default 64)");
  pattern->add_flag("--oracle", oracle, "simulate in the full dilation space");
  pattern->add_option("--out", out_path, "CSV output path")->required();

  CLI::App* visibility = app.add_subcommand("visibility", "fringe visibility and shift");
  visibility->add_option("--u", u_path, "upper-arm channel file")->required();
  visibility->add_option("--v", v_path, "lower-arm channel file")->required();
  visibility->add_option("--rho", rho_arg, "input state: mixed | pure:FILE");

  CLI::App* self = app.add_subcommand("self", "self-coherence of a channel");
  self->add_option("--ch", ch_path, "channel file")->required();
  CLI::Option* self_max =
      self->add_flag("--maximize", maximize, "also maximize over decompositions");
  CLI::Option* self_out =
      self->add_option("--out", out_path, "where to write the maximizing decomposition");
  self_max->needs(self_out);
  self_out->needs(self_max);

  CLI::App* closest = app.add_subcommand("closest-unitary", "best unitary approximation");
  closest->add_option("--ch", ch_path, "channel file")->required();
  closest->add_flag("--after-maximize", after_maximize,
                    "act on the maximal-self-coherence decomposition");
  closest->add_option("--out", out_path, "single-operator channel file to write")->required();

  CLI::App* maxfid = app.add_subcommand("max-fidelity", "maximum coherent fidelity");
  maxfid->add_option("--u", u_path, "first channel file")->required();
  maxfid->add_option("--v", v_path, "second channel file")->required();

  CLI::App* raginsky = app.add_subcommand("raginsky", "Uhlmann fidelity of the Choi states");
  raginsky->add_option("--u", u_path, "first channel file")->required();
  raginsky->add_option("--v", v_path, "second channel file")->required();

  CLI::App* distance = app.add_subcommand("distance", "squared distance of unitary channels");
  distance->add_option("--u", u_path, "first channel file (single unitary)")->required();
  distance->add_option("--v", v_path, "second channel file (single unitary)")->required();

  CLI::App* random = app.add_subcommand("random", "deterministic random channel");
  random->add_option("--dim", dim, "Hilbert-space dimension")->required();
  random->add_option("--kraus", n_kraus, "number of Kraus operators")->required();
  random->add_option("--seed", seed, "RNG seed")->required();
  random->add_option("--out", out_path, "channel file to write")->required();

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  RunReport report(echo_command(argc, argv));
  try {
    if (pattern->parsed()) {
      KrausChannel u = load_input_channel(report, "u", u_path);
      KrausChannel v = load_input_channel(report, "v", v_path);
      DensityMatrix rho = resolve_rho(report, rho_arg, u.dim);
      InterferencePattern p =
          oracle ? simulate_pattern_dilated(dilate(u), dilate(v), rho, samples)
                 : simulate_pattern(u, v, rho, samples);
      emit_pattern_csv(p, out_path);
      report.add_text("samples", std::to_string(p.phases.size()));
      report.add_flag("oracle", oracle);
      report.add_text("out", out_path);
    } else if (visibility->parsed()) {
      KrausChannel u = load_input_channel(report, "u", u_path);
      KrausChannel v = load_input_channel(report, "v", v_path);
      DensityMatrix rho = resolve_rho(report, rho_arg, u.dim);
      VisibilityEstimate est = visibility_from_z(complex_visibility(u, v, rho));
      report.add_metric("v", est.v);
      report.add_metric("alpha", est.alpha);
      report.add_flag("degenerate", est.degenerate);
    } else if (self->parsed()) {
      KrausChannel ch = load_input_channel(report, "ch", ch_path);
      report.add_metric("v", self_visibility(ch));
      if (maximize) {
        MaxSelfCoherence msc = max_self_coherence(ch);
        report.add_metric("v_max", msc.v_max);
        write_channel(out_path, msc.realizing);
        report.add_text("out", out_path);
      }
    } else if (closest->parsed()) {
      KrausChannel ch = load_input_channel(report, "ch", ch_path);
      if (after_maximize) ch = max_self_coherence(ch).realizing;
      ClosestUnitaryReport rep = closest_unitary(ch);
      report.add_metric("v_lu", rep.visibility);
      report.add_flag("degenerate", rep.degenerate);
      write_channel(out_path, validate({rep.unitary}, ch.dim));
      report.add_text("out", out_path);
    } else if (maxfid->parsed()) {
      KrausChannel u = load_input_channel(report, "u", u_path);
      KrausChannel v = load_input_channel(report, "v", v_path);
      MaxFidelityReport rep = max_coherent_fidelity(u, v);
      report.add_metric("max_fidelity", rep.max_fidelity);
      report.add_vector("g0", rep.g0);
      report.add_vector("h0", rep.h0);
      report.add_flag("degenerate", rep.degenerate);
    } else if (raginsky->parsed()) {
      KrausChannel u = load_input_channel(report, "u", u_path);
      KrausChannel v = load_input_channel(report, "v", v_path);
      report.add_metric("f_raginsky", raginsky_fidelity(u, v));
    } else if (distance->parsed()) {
      KrausChannel u = load_input_channel(report, "u", u_path);
      KrausChannel v = load_input_channel(report, "v", v_path);
      if (u.ops.size() != 1 || v.ops.size() != 1)
        raise(Errc::not_unitary, "distance: both channels must consist of a single unitary");
      report.add_metric("d_squared", unitary_distance(u.ops[0], v.ops[0]));
    } else if (random->parsed()) {
      KrausChannel ch = random_channel(dim, n_kraus, seed);
      write_channel(out_path, ch);
      report.add_text("out", out_path);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.message << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  print_report(report, as_json);
  return 0;
}

int main(int argc, char** argv) { return run_command(argc, argv); }
