#pragma once

#include <cstdint>
#include <vector>

#include "csopt/domain.hpp"
#include "csopt/rng.hpp"

namespace csopt {

// Search encoding: vehicle positions (one zone per vehicle) and the posted fee
// level per OD cell. Bijective with FirstStageSolution.
struct EncodedSolution {
    std::vector<int> positions;          // length |V|
    std::vector<std::vector<int>> fees;  // |I| x |I|
};

EncodedSolution encode(const FirstStageSolution& fs);
FirstStageSolution decode(const EncodedSolution& enc);

enum class MoveKind { Position, Fee };

struct IlsParams {
    int maxRestartsWithoutImprovement = 3;
    double timeLimit = 1800.0; // seconds
    double perturbPercent = 30.0;
    std::uint64_t seed = 1;
    int threads = 1; // neighborhood fitness evaluations may fan out
};

struct IlsResult {
    EncodedSolution best;
    double objective = 0.0;
    long iterations = 0;   // outer search rounds completed
    double elapsedSec = 0.0;
    std::uint64_t seed = 0;
};

// Exact objective of the encoded solution (identical to the solver's
// first-stage evaluation on the decoded solution).
double fitness(const Instance& inst, const std::vector<Scenario>& scenarios,
               const EncodedSolution& enc);

// First-improvement hill climb over single-entry changes of either the
// position vector or the fee matrix. Scan order: positions by (vehicle, zone),
// fees by (origin, destination, level). Returns a solution no worse than the
// start; a 1-change local optimum unless the time budget ran out.
EncodedSolution localSearch(const Instance& inst, const std::vector<Scenario>& scenarios,
                            const EncodedSolution& start, MoveKind op, double timeLimitSec,
                            int threads = 1);

// Redraws max(1, round(r% of |V|)) distinct positions and max(1, round(r% of
// |I|^2)) distinct fee cells uniformly; a redraw may repeat the old value.
EncodedSolution perturb(const EncodedSolution& enc, double rPercent, int numZones, int numLevels,
                        Rng& rng);

// Iterated local search: random start, then rounds of fee-then-position local
// search, best-so-far tracking, and perturbation; stops on the time limit or
// when the restart counter passes its cap. Deterministic per seed.
IlsResult ils(const Instance& inst, const std::vector<Scenario>& scenarios,
              const IlsParams& params);

// 100 * |ilsObjective - lsBestBound| / (|ilsObjective| + 1e-10).
double ilsGap(double ilsObjective, double lsBestBound);

} // namespace csopt
