#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "planarep/cohomology.hpp"
#include "planarep/components.hpp"
#include "planarep/symplectic.hpp"

namespace planarep {

/// Everything a command needs; filled from flags by the CLI.
struct RunConfig {
  std::string presentation;           // either form; overrides genus/torsion
  int genus = -1;
  std::string torsion;                // comma list
  std::string group = "SU2";
  Tolerances tol;
  std::uint64_t seed = 0;
  bool timestamp = true;

  // point source: explicit point file, solver spec file, or a seeded solve
  std::string point_path;
  std::string spec_path;
  std::string classes;                // "1;1;1" (SU2 k) or "0,1;1,2" (eigenvalue exponents); / also separates
  std::string target = "e";           // "e" or "-e"

  std::string calibration_path;       // read if present; written after --recalibrate
  bool recalibrate = false;

  int order = 0;                      // components --order
  int samples = 20;                   // momenttest / symplectic probes

  /// Throws MalformedInput on nonpositive tolerances.
  void validate() const;
  PlanarPresentation resolve_presentation() const;
  nlohmann::json to_json() const;
};

struct CommandResult {
  nlohmann::json report;
  int exit_code = 0;  // 0 iff every requested check passed
};

/// Runs one of analyze, cohomology, symplectic, components, solve, momenttest.
/// Library errors propagate; the CLI maps their category to the exit code.
CommandResult run_command(const std::string& command, const RunConfig& cfg);

/// Report serialization used for stdout and --json-out.
std::string dump_report(const nlohmann::json& report);

/// "1;1;1" or "0,1;1,2" into classes for the torsion orders of p; empty text
/// selects the identity class everywhere.
std::vector<TorsionClass> parse_classes(const std::string& text, const PlanarPresentation& p,
                                        const LieModel& model);

}  // namespace planarep
