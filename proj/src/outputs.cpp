#include "sizepop/outputs.hpp"

#include <fstream>
#include <iomanip>
#include <ios>

#include <json.hpp>

#include "sizepop/errors.hpp"

namespace sizepop {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::ofstream open_for_write(const fs::path& path) {
  std::ofstream out(path, std::ios::out | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << std::setprecision(17);
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void write_timeseries(const Trajectory& traj, const fs::path& path) {
  auto out = open_for_write(path);
  out << "t,total_mass,u_boundary_0,u_boundary_m\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    out << traj.times[k] << ',' << traj.masses[k] << ',' << traj.boundary_series[k].first << ','
        << traj.boundary_series[k].second << '\n';
  }
  finish(out, path);
}

void write_profile(const Grid& grid, const PopulationState* final_state, const PopulationState* eigen,
                   const fs::path& path) {
  auto out = open_for_write(path);
  out << 's';
  if (final_state != nullptr) out << ",u";
  if (eigen != nullptr) out << ",eigenprofile";
  out << '\n';
  for (int i = 0; i <= grid.n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out << grid.node(i);
    if (final_state != nullptr) out << ',' << (*final_state)[k];
    if (eigen != nullptr) out << ',' << (*eigen)[k];
    out << '\n';
  }
  finish(out, path);
}

void write_aeg(const std::vector<std::pair<double, double>>& series, const fs::path& path) {
  auto out = open_for_write(path);
  out << "t,distance\n";
  for (const auto& [t, d] : series) out << t << ',' << d << '\n';
  finish(out, path);
}

void write_summary(const RunOutputs& o, const fs::path& path) {
  json s;
  s["malthus"] = o.spectrum != nullptr ? json(o.spectrum->malthus) : json(nullptr);
  s["residual"] = o.spectrum != nullptr ? json(o.spectrum->residual) : json(nullptr);
  s["irreducible"] = o.spectrum != nullptr ? json(o.spectrum->irreducible) : json(nullptr);
  s["conservation_drift"] = o.trajectory != nullptr ? json(o.trajectory->balance_drift) : json(nullptr);
  s["positivity_min"] = o.trajectory != nullptr ? json(o.trajectory->min_entry) : json(nullptr);
  s["dissipativity_max_ratio"] = o.dissipativity != nullptr ? json(o.dissipativity->max_ratio) : json(nullptr);
  s["config"] = o.config != nullptr ? json::parse(serialize_config(*o.config)) : json(nullptr);
  s["seed"] = o.config != nullptr ? json(o.config->run.seed) : json(nullptr);
  if (o.dissipativity != nullptr) {
    s["dissipativity"] = {{"omega", o.dissipativity->omega},
                          {"omega_min", o.dissipativity->omega_min},
                          {"lambda_at_max", o.dissipativity->lambda},
                          {"samples", o.dissipativity->samples},
                          {"positivity_violations", o.dissipativity->positivity_violations},
                          {"worst_entry", o.dissipativity->worst_entry},
                          {"seed", o.dissipativity->seed},
                          {"below_omega_min", o.dissipativity->below_omega_min()}};
  }
  if (o.spectrum != nullptr) s["spectral_iterations"] = o.spectrum->iterations;
  if (o.trajectory != nullptr) s["warnings"] = o.trajectory->warnings;

  auto out = open_for_write(path);
  out << s.dump(2) << '\n';
  finish(out, path);
}

}  // namespace

std::vector<fs::path> write_outputs(const RunOutputs& outputs, const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + out_dir.string() + "': " + ec.message());

  std::vector<fs::path> written;
  if (outputs.trajectory != nullptr) {
    written.push_back(out_dir / "timeseries.csv");
    write_timeseries(*outputs.trajectory, written.back());
  }
  const PopulationState* final_state =
      outputs.trajectory != nullptr && !outputs.trajectory->snapshots.empty() ? &outputs.trajectory->final_state()
                                                                             : nullptr;
  const PopulationState* eigen = outputs.spectrum != nullptr ? &outputs.spectrum->right_vector : nullptr;
  if ((final_state != nullptr || eigen != nullptr) && outputs.config != nullptr) {
    written.push_back(out_dir / "profile.csv");
    write_profile(outputs.config->grid(), final_state, eigen, written.back());
  }
  if (outputs.aeg != nullptr) {
    written.push_back(out_dir / "aeg.csv");
    write_aeg(*outputs.aeg, written.back());
  }
  written.push_back(out_dir / "summary.json");
  write_summary(outputs, written.back());
  return written;
}

}  // namespace sizepop
