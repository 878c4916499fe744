#pragma once

#include <string>
#include <vector>

#include "csopt/domain.hpp"
#include "csopt/lp.hpp"

namespace csopt {

// Deterministic-equivalent MILP over all scenarios: first-stage columns plus
// one assignment column y per (scenario, request, vehicle, admissible level).
// The lp field holds the continuous relaxation; binaryCols marks the 0/1
// columns for export.
struct SaaModel {
    lp::LinearProgram lp;
    std::vector<std::string> colNames; // unique, at most 8 characters
    std::vector<std::string> rowNames;
    std::vector<int> binaryCols;
    long zColumns = 0;
    long lambdaColumns = 0;
    long yColumns = 0;
};

SaaModel buildSAA(const Instance& inst, const std::vector<Scenario>& scenarios);

struct BruteResult {
    double objective = 0.0;
    FirstStageSolution solution;
};

// Global oracle: enumerates every placement and every off-diagonal fee matrix
// (diagonal ODs pinned to the first level — no same-zone demand exists) and
// evaluates each candidate exactly. Guard: zones^vehicles *
// levels^(offdiagonal ODs) must not exceed 1e6. Ties broken toward the
// lexicographically smallest (placement, fees).
BruteResult bruteForceSolve(const Instance& inst, const std::vector<Scenario>& scenarios,
                            int threads = 1);

// Same outer enumeration, but the per-scenario assignment value comes from the
// recursive assignment enumeration instead of the greedy; micro instances only
// (inherits that oracle's size guard).
BruteResult bruteForceSolveNested(const Instance& inst, const std::vector<Scenario>& scenarios,
                                  int threads = 1);

// Fixed-format MPS with ROWS/COLUMNS/RHS/BOUNDS; binaries as BOUNDS BV; the
// maximization sense is recorded as a "* OBJSENSE MAXIMIZE" comment line.
void exportMPS(const SaaModel& model, const std::string& path);

} // namespace csopt
