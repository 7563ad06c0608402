// Command-line front end: simulate, spectrum, check, aeg.
//
// Exit codes: 0 success / all checks pass, 1 check failure or numerical
// error, 2 usage or configuration error.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sizepop/checks.hpp"
#include "sizepop/config.hpp"
#include "sizepop/errors.hpp"
#include "sizepop/outputs.hpp"
#include "sizepop/spectral.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

void print_warnings(const sizepop::Trajectory& traj) {
  for (const auto& w : traj.warnings) std::cerr << "warning: " << w << '\n';
}

void print_written(const std::vector<std::filesystem::path>& paths) {
  for (const auto& p : paths) std::cout << "wrote " << p.string() << '\n';
}

int run_simulate(const std::string& config_path, const std::string& out_dir) {
  const auto config = sizepop::load_config(config_path);
  const auto grid = config.grid();
  const auto traj = sizepop::simulate(config.model, grid, sizepop::initial_state(config.initial, grid),
                                      config.simulation_options());
  print_warnings(traj);
  sizepop::RunOutputs out;
  out.config = &config;
  out.trajectory = &traj;
  print_written(sizepop::write_outputs(out, out_dir));
  std::cout << "final mass " << traj.masses.back() << ", min entry " << traj.min_entry << ", balance drift "
            << traj.balance_drift << '\n';
  return kExitOk;
}

int run_spectrum(const std::string& config_path, const std::string& out_dir, double tol, int max_iter) {
  const auto config = sizepop::load_config(config_path);
  const auto g = sizepop::assemble_generator(config.model, config.grid());
  const auto spec = sizepop::spectral_bound(g, tol, max_iter);
  sizepop::RunOutputs out;
  out.config = &config;
  out.spectrum = &spec;
  print_written(sizepop::write_outputs(out, out_dir));
  std::cout.precision(17);
  std::cout << "malthus " << spec.malthus << "\nresidual " << spec.residual << "\nirreducible "
            << (spec.irreducible ? "true" : "false") << "\niterations " << spec.iterations << '\n';
  return kExitOk;
}

int run_check(const std::string& config_path, const std::string& out_dir, int samples,
              std::optional<double> omega) {
  const auto config = sizepop::load_config(config_path);
  sizepop::CheckOptions opts;
  opts.samples = samples;
  opts.omega = omega;
  const auto report = sizepop::run_checks(config, opts);
  print_warnings(report.trajectory);
  for (const auto& p : report.properties) {
    std::cout << (p.passed ? "PASS " : "FAIL ") << p.name << " (" << p.detail << ")\n";
  }
  if (!out_dir.empty()) {
    sizepop::RunOutputs out;
    out.config = &config;
    out.trajectory = &report.trajectory;
    out.dissipativity = &report.dissipativity;
    print_written(sizepop::write_outputs(out, out_dir));
  }
  return report.all_passed() ? kExitOk : kExitFail;
}

int run_aeg(const std::string& config_path, const std::string& out_dir, double tol, int max_iter) {
  const auto config = sizepop::load_config(config_path);
  const auto g = sizepop::assemble_generator(config.model, config.grid());
  const auto spec = sizepop::spectral_bound(g, tol, max_iter);
  const auto traj = sizepop::simulate(config.model, g, sizepop::initial_state(config.initial, config.grid()),
                                      config.simulation_options());
  print_warnings(traj);
  const auto series = sizepop::aeg_diagnostic(traj, spec);
  sizepop::RunOutputs out;
  out.config = &config;
  out.trajectory = &traj;
  out.spectrum = &spec;
  out.aeg = &series;
  print_written(sizepop::write_outputs(out, out_dir));
  std::cout.precision(6);
  std::cout << "malthus " << spec.malthus << ", final distance " << series.back().second << " at t = "
            << series.back().first << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Size-structured population model with dynamic boundary conditions"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  double tol = sizepop::kDefaultSpectralTol;
  int max_iter = sizepop::kDefaultSpectralMaxIter;
  int samples = 100;
  std::optional<double> omega;
  std::string check_out;

  auto* simulate = app.add_subcommand("simulate", "Integrate the model and write the trajectory");
  simulate->add_option("config", config_path, "JSON configuration file")->required();
  simulate->add_option("--out", out_dir, "Output directory")->capture_default_str();

  auto* spectrum = app.add_subcommand("spectrum", "Compute the Malthusian parameter and stable size profile");
  spectrum->add_option("config", config_path, "JSON configuration file")->required();
  spectrum->add_option("--out", out_dir, "Output directory")->capture_default_str();
  spectrum->add_option("--tol", tol, "Relative residual tolerance")->capture_default_str();
  spectrum->add_option("--max-iter", max_iter, "Iteration limit")->capture_default_str();

  auto* check = app.add_subcommand("check", "Verify conservation, positivity and dissipativity");
  check->add_option("config", config_path, "JSON configuration file")->required();
  check->add_option("--samples", samples, "Random right-hand sides per lambda")->capture_default_str();
  check->add_option("--omega", omega, "Resolvent shift (default: omega_min)");
  check->add_option("--out", check_out, "Optional output directory");

  auto* aeg = app.add_subcommand("aeg", "Simulate and measure convergence to the stable size profile");
  aeg->add_option("config", config_path, "JSON configuration file")->required();
  aeg->add_option("--out", out_dir, "Output directory")->capture_default_str();
  aeg->add_option("--tol", tol, "Relative residual tolerance")->capture_default_str();
  aeg->add_option("--max-iter", max_iter, "Iteration limit")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*simulate) return run_simulate(config_path, out_dir);
    if (*spectrum) return run_spectrum(config_path, out_dir, tol, max_iter);
    if (*check) return run_check(config_path, check_out, samples, omega);
    if (*aeg) return run_aeg(config_path, out_dir, tol, max_iter);
  } catch (const sizepop::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const sizepop::AdmissibilityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const sizepop::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const sizepop::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
