#pragma once

#include <filesystem>
#include <utility>
#include <vector>

#include "sizepop/config.hpp"
#include "sizepop/evolution.hpp"
#include "sizepop/resolvent.hpp"
#include "sizepop/spectral.hpp"

namespace sizepop {

/// Everything a CLI run may emit. Null members are omitted from the output
/// set (CSV files) or written as null (summary keys).
struct RunOutputs {
  const RunConfig* config = nullptr;
  const Trajectory* trajectory = nullptr;
  const SpectralResult* spectrum = nullptr;
  const ResolventReport* dissipativity = nullptr;
  const std::vector<std::pair<double, double>>* aeg = nullptr;
};

/// Writes into `out_dir` (created if needed):
///   timeseries.csv  t,total_mass,u_boundary_0,u_boundary_m   (with a trajectory)
///   profile.csv     s,u[,eigenprofile] or s,eigenprofile      (trajectory and/or spectrum)
///   aeg.csv         t,distance                                 (with an AEG series)
///   summary.json    malthus, residual, irreducible, conservation_drift,
///                   positivity_min, dissipativity_max_ratio, config, seed
/// Numbers in CSV carry 17 significant digits. Returns the written paths.
/// Throws IoError naming the path on failure.
std::vector<std::filesystem::path> write_outputs(const RunOutputs& outputs, const std::filesystem::path& out_dir);

}  // namespace sizepop
