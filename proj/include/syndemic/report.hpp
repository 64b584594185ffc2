#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "syndemic/dynamics.hpp"
#include "syndemic/scenarios.hpp"

namespace syndemic {

/// At least ten significant digits.
std::string format_number(double v);

/// Columns: time, the ten compartments in state order, N.
std::string trajectory_csv(const Trajectory& traj);

/// Columns: name, expected, actual, tolerance, mode, result, scenario, variant, note.
std::string summary_csv(const std::vector<Check>& checks);

/// Columns: label, then table.columns.
std::string table_csv(const Table& table);

/// Line plot of the selected compartments against time: one polyline each,
/// labelled axis ticks and a legend. Throws std::invalid_argument for an empty
/// selection or trajectory.
std::string emit_svg(const Trajectory& traj, const std::vector<Compartment>& selection,
                     const std::string& title = {});

/// Writes through a temporary file in the same directory followed by a rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// SYNDEMIC_OUT_DIR when set and non-empty, otherwise `requested`.
std::filesystem::path resolve_out_dir(const std::string& requested);

/// Writes <name>_summary.csv, <name>_table.csv and one trajectory CSV per
/// simulated variant into `dir`. Returns the paths written.
std::vector<std::filesystem::path> write_scenario(const ScenarioResult& result,
                                                  const std::filesystem::path& dir);

}  // namespace syndemic
