#pragma once

#include <string>
#include <vector>

#include "csopt/domain.hpp"
#include "csopt/instance_gen.hpp"

namespace csopt {

// JSON (de)serialization. Top-level instance keys: zones, customers, vehicles,
// alternatives, carsharing, feeLadder, costs, sigma. A scenario object has keys
// draws (draws[k][mode], mode 0 = carsharing then alternatives in order) and
// weight. Scenario files hold a JSON array of scenario objects.

std::string instanceToJson(const Instance& inst, int indent = 1);
Instance instanceFromJson(const std::string& text);

std::string scenariosToJson(const std::vector<Scenario>& scenarios, int indent = 1);
std::vector<Scenario> scenariosFromJson(const std::string& text);

std::string solutionToJson(const Instance& inst, const FirstStageSolution& sol, int indent = 1);
FirstStageSolution solutionFromJson(const std::string& text);

std::string reportToJson(const SolveReport& report, int indent = 1);

// Generator configuration. Keys: zones, customers, vehicles, scenarios,
// alphaFrom, alphaTo, alphaV, individualProfiles, feeLadder, seed. Missing keys
// keep the built-in defaults, unknown keys are rejected.
std::string genConfigToJson(const GenConfig& cfg, int indent = 1);
GenConfig genConfigFromJson(const std::string& text);

// Diagnostic dump of the deterministic per-scenario request sets.
std::string requestSetToJson(const RequestSet& rs, int indent = 1);

void writeTextFile(const std::string& path, const std::string& content);
std::string readTextFile(const std::string& path);

} // namespace csopt
