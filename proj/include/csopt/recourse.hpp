#pragma once

#include "csopt/domain.hpp"
#include "csopt/lp.hpp"

namespace csopt {

// Exact second-stage evaluation: requests in arrival order; a request is served
// when its OD's posted fee is admissible (value at most the value at maxLevel)
// and an unassigned vehicle sits at the origin; the lowest-id vehicle is taken
// and revenue at the posted level is collected (even when negative — forced
// service semantics).
RecourseSolution greedyRecourse(const Instance& inst, const RequestSet& requests,
                                const FirstStageSolution& firstStage);

// Scenario revenue bound: sum of positive top-level request revenues.
double upperBound(const RequestSet& requests);

// LP relaxation of the scenario subproblem with one column per admissible
// (vehicle, request, level). Row metadata tags the dual blocks.
struct SubproblemLP {
    struct Col { int request, vehicle, level; };
    enum class RowKind { PerRequest, PerVehicle, Placement, ForcedService, PostedLevel };
    struct RowMeta { RowKind kind; int request, vehicle, level; };

    lp::LinearProgram lp;
    std::vector<Col> cols;
    std::vector<RowMeta> rowMeta;
};

SubproblemLP buildSubproblemLP(const Instance& inst, const RequestSet& requests,
                               const FirstStageSolution& firstStage);

// Benders-style scenario cut assembled from the signed row duals of a solved
// subproblem LP; globally valid upper bound on the scenario value over (z, λ).
Cut relaxationCut(const Instance& inst, const RequestSet& requests, const SubproblemLP& model,
                  const std::vector<double>& rowDuals, int scenarioIndex);

// Enumeration oracle over all second-stage solutions feasible for the scenario
// subproblem; guarded to at most 8 requests and 4 vehicles.
RecourseSolution bruteForceRecourse(const Instance& inst, const RequestSet& requests,
                                    const FirstStageSolution& firstStage);

// Evaluate a cut's right-hand side at a binary first-stage point.
double cutRhsAt(const Cut& cut, const Instance& inst, const FirstStageSolution& firstStage);

} // namespace csopt
