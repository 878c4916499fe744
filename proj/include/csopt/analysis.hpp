#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "csopt/domain.hpp"
#include "csopt/instance_gen.hpp"
#include "csopt/lshaped.hpp"

namespace csopt {

// One study cell: solver outcome plus the demand/service metrics of its best
// solution. Request counts come in two readings: `minRequests`/`maxRequests`
// count every scenario request regardless of the posted fee (fee-independent
// preprocessing), while the `admissible*` pair counts only requests whose OD
// posts a fee level the customer accepts under the row's solution.
struct StudyRow {
    std::string label;
    double expectedProfit = 0.0;
    double profitPctOfDynamic = 100.0; // filled by comparison studies
    double pctVehiclesRelocated = 0.0;
    long minRequests = 0;
    long maxRequests = 0;
    long minAdmissibleRequests = 0;
    long maxAdmissibleRequests = 0;
    double expectedPctRequestsSatisfied = 0.0;
    double gapPercent = 0.0;
    double gapRootPercent = 0.0;
    std::optional<double> gapHalfTimePercent;
    double elapsedSec = 0.0;
    long nodeCount = 0;
    std::string status;
    std::uint64_t seed = 0;
};

// Metrics of one solve outcome (shared by the studies and the tests).
StudyRow studyMetrics(const Instance& inst, const std::vector<Scenario>& scenarios,
                      const SolveReport& report, const std::string& label);

struct PricingComparison {
    StudyRow dynamicPricing; // fees free
    StudyRow fixedPricing;   // every OD pinned to the zero-value fee level
};

// Solves the restricted (fixed-fee) model first and warm-starts the free model
// with its solution, so the dynamic row's profit dominates the fixed row's
// even under a shared time budget. Throws when the ladder has no zero value.
PricingComparison comparePricing(const Instance& inst, const std::vector<Scenario>& scenarios,
                                 const SolverParams& params);

struct NoRelocationResult {
    StudyRow unrestricted;
    StudyRow fixedPlacement; // vehicles pinned to their initial zones
    // fixedPlacement profit / unrestricted profit; 1 when both are zero,
    // infinity sentinel when only the denominator vanishes
    double profitRatio = 1.0;
};

NoRelocationResult noRelocationStudy(const Instance& inst,
                                     const std::vector<Scenario>& scenarios,
                                     const SolverParams& params);

struct SweepRow {
    int nScenarios = 0;
    double bestInteger = 0.0;
    double bestBound = 0.0;
    double gapPercent = 0.0;
    double gapRootPercent = 0.0;
    double elapsedSec = 0.0;
    long nodeCount = 0;
    std::string status;
    std::uint64_t scenarioSeed = 0; // stream id used for this row's sample
};

// Generates one instance from the config, then for each requested sample size
// draws a fresh iid scenario set (derived stream per row) and solves it.
std::vector<SweepRow> scenarioSweep(const GenConfig& cfg, const std::vector<int>& sampleSizes,
                                    const SolverParams& params,
                                    const MobilityParams& mobility = {});

struct AlphaTriple {
    double alphaV = 0.0, alphaFrom = 0.0, alphaTo = 0.0;
};

// Named demand/supply centrality presets: D1=(0.2,0.8,0.2), D2=(0.8,0.2,0.8),
// D3=(0.8,0.8,0.2), D4=(0.2,0.2,0.8) as (vehicles, origins, destinations).
AlphaTriple presetDistribution(const std::string& tag);

std::string studyRowsToCsv(const std::vector<StudyRow>& rows);
std::string sweepToCsv(const std::vector<SweepRow>& rows);

} // namespace csopt
