#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "csopt/domain.hpp"
#include "csopt/lp.hpp"

namespace csopt {

struct SolverParams {
    double timeLimit = 1800.0;    // seconds
    double targetRelGap = 1e-4;   // relative optimality gap (0.01%)
    double integralityTol = 1e-6;
    double cutViolationTol = 1e-6;
    bool useVI = true;                 // symmetry-breaking valid inequality rows
    bool useRelaxationCuts = true;     // dual-based cuts next to the exact ones
    bool relaxationCutsAtRoot = false; // also seed relaxation cuts at the root
    bool cutAllScenarios = false;      // add cuts for every scenario at integer
                                       // nodes, not only the violated ones
    long relaxationCutRowLimit = 2000; // skip dual cuts when the scenario LP
                                       // would exceed this many rows
    int threads = 1;                   // scenario evaluations fan out; results
                                       // are reduced in scenario order
    std::uint64_t seed = 0;            // recorded in the report

    // Optional restrictions / hints used by the studies.
    std::optional<FirstStageSolution> warmStart;
    std::optional<std::vector<int>> fixPlacement; // pin every vehicle's zone
    std::optional<int> fixAllFeesToLevel;         // pin every OD fee to one level
                                                  // (disables the VI rows, whose
                                                  // validity needs free fees)
};

// Master LP skeleton. Column layout: z_{v,i} at v*I+i, lambda_{i,j,l} at
// V*I + (i*I+j)*L + l, phi_s at V*I + I*I*L + s. z and lambda are the binary
// columns; phi_s is continuous in [worst-case revenue, scenario upper bound].
struct MasterModel {
    lp::LinearProgram lp;
    int numZones = 0, numVehicles = 0, numLevels = 0, numScenarios = 0;
    std::vector<double> phiUpper; // per-scenario recourse bound U_s
    std::vector<double> phiLower;
    long viRowCount = 0;

    int zCol(int v, int i) const { return v * numZones + i; }
    int lambdaCol(int i, int j, int l) const {
        return numVehicles * numZones + (i * numZones + j) * numLevels + l;
    }
    int phiCol(int s) const {
        return numVehicles * numZones + numZones * numZones * numLevels + s;
    }
    int numBinaryCols() const {
        return numVehicles * numZones + numZones * numZones * numLevels;
    }
};

MasterModel buildMaster(const Instance& inst, const std::vector<Scenario>& scenarios,
                        const SolverParams& params);

// Exact scenario cut anchored at a binary point: tight there (RHS = qS) and
// never below uS at any other binary point. Throws if qS exceeds uS beyond
// floating-point noise.
Cut optimalityCut(const Instance& inst, const FirstStageSolution& point, double qS, double uS,
                  int scenario);

// Exact objective of a first-stage decision: negative relocation cost plus the
// probability-weighted recourse values (computed by the exact greedy).
double evaluateFirstStage(const Instance& inst, const std::vector<Scenario>& scenarios,
                          const FirstStageSolution& firstStage);

// 100*|bestBound - bestInteger| / |bestInteger|; infinity when bestInteger is
// zero or no incumbent exists.
double gapPercent(double bestBound, double bestInteger);

// Branch-and-cut on the master relaxation with lazy scenario cuts at integer
// nodes. Never throws on timeout; returns the best-so-far report, including
// the incumbent solution.
SolveReport solve(const Instance& inst, const std::vector<Scenario>& scenarios,
                  const SolverParams& params);

} // namespace csopt
