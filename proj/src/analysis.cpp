#include "csopt/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "csopt/choice.hpp"
#include "csopt/recourse.hpp"

namespace csopt {

StudyRow studyMetrics(const Instance& inst, const std::vector<Scenario>& scenarios,
                      const SolveReport& report, const std::string& label) {
    StudyRow row;
    row.label = label;
    row.expectedProfit = report.bestInteger;
    row.gapPercent = report.gapPercent;
    row.gapRootPercent = report.gapRootPercent;
    row.gapHalfTimePercent = report.gapHalfTimePercent;
    row.elapsedSec = report.elapsedSec;
    row.nodeCount = report.nodeCount;
    row.status = report.status;
    row.seed = report.seed;

    const bool haveSolution = !report.incumbent.placement.empty();
    if (haveSolution) {
        long moved = 0;
        for (int v = 0; v < inst.numVehicles(); ++v)
            if (report.incumbent.placement[v] != inst.vehicles[v].initialZone) ++moved;
        row.pctVehiclesRelocated =
            inst.numVehicles() > 0 ? 100.0 * static_cast<double>(moved) / inst.numVehicles() : 0.0;
    }

    bool first = true;
    for (const Scenario& sc : scenarios) {
        const RequestSet rs = computeRequests(inst, sc);
        const long total = rs.size();
        long admissible = 0;
        double satisfiedShare = 0.0;
        if (haveSolution) {
            for (const Request& r : rs.requests)
                if (report.incumbent.fees[r.origin][r.destination] <= r.maxLevel) ++admissible;
            if (total > 0) {
                const RecourseSolution q = greedyRecourse(inst, rs, report.incumbent);
                satisfiedShare =
                    static_cast<double>(q.assignments.size()) / static_cast<double>(total);
            }
        }
        row.expectedPctRequestsSatisfied += sc.weight * 100.0 * satisfiedShare;
        if (first) {
            row.minRequests = row.maxRequests = total;
            row.minAdmissibleRequests = row.maxAdmissibleRequests = admissible;
            first = false;
        } else {
            row.minRequests = std::min(row.minRequests, total);
            row.maxRequests = std::max(row.maxRequests, total);
            row.minAdmissibleRequests = std::min(row.minAdmissibleRequests, admissible);
            row.maxAdmissibleRequests = std::max(row.maxAdmissibleRequests, admissible);
        }
    }
    return row;
}

namespace {

double pctOf(double value, double reference) {
    if (std::abs(reference) < 1e-12)
        return std::abs(value) < 1e-12 ? 100.0 : std::numeric_limits<double>::infinity();
    return 100.0 * value / reference;
}

} // namespace

PricingComparison comparePricing(const Instance& inst, const std::vector<Scenario>& scenarios,
                                 const SolverParams& params) {
    int zeroLevel = -1;
    for (int l = 0; l < inst.numLevels(); ++l)
        if (std::abs(inst.feeLadder[l]) < 1e-12) zeroLevel = l;
    if (zeroLevel < 0)
        throw std::invalid_argument("comparePricing: fee ladder has no zero-value level");

    SolverParams fixed = params;
    fixed.fixAllFeesToLevel = zeroLevel;
    const SolveReport fixedReport = solve(inst, scenarios, fixed);

    SolverParams dynamic = params;
    if (!fixedReport.incumbent.placement.empty()) dynamic.warmStart = fixedReport.incumbent;
    const SolveReport dynamicReport = solve(inst, scenarios, dynamic);

    PricingComparison out;
    out.dynamicPricing = studyMetrics(inst, scenarios, dynamicReport, "dynamic-pricing");
    out.fixedPricing = studyMetrics(inst, scenarios, fixedReport, "fixed-zero-fee");
    out.dynamicPricing.profitPctOfDynamic = 100.0;
    out.fixedPricing.profitPctOfDynamic =
        pctOf(out.fixedPricing.expectedProfit, out.dynamicPricing.expectedProfit);
    return out;
}

NoRelocationResult noRelocationStudy(const Instance& inst,
                                     const std::vector<Scenario>& scenarios,
                                     const SolverParams& params) {
    SolverParams restricted = params;
    std::vector<int> initial(static_cast<std::size_t>(inst.numVehicles()));
    for (int v = 0; v < inst.numVehicles(); ++v) initial[v] = inst.vehicles[v].initialZone;
    restricted.fixPlacement = initial;
    const SolveReport restrictedReport = solve(inst, scenarios, restricted);

    SolverParams free = params;
    if (!restrictedReport.incumbent.placement.empty())
        free.warmStart = restrictedReport.incumbent;
    const SolveReport freeReport = solve(inst, scenarios, free);

    NoRelocationResult out;
    out.unrestricted = studyMetrics(inst, scenarios, freeReport, "with-relocation");
    out.fixedPlacement = studyMetrics(inst, scenarios, restrictedReport, "no-relocation");
    out.unrestricted.profitPctOfDynamic = 100.0;
    out.fixedPlacement.profitPctOfDynamic =
        pctOf(out.fixedPlacement.expectedProfit, out.unrestricted.expectedProfit);
    if (std::abs(out.unrestricted.expectedProfit) < 1e-12)
        out.profitRatio = std::abs(out.fixedPlacement.expectedProfit) < 1e-12
                              ? 1.0
                              : std::numeric_limits<double>::infinity();
    else
        out.profitRatio = out.fixedPlacement.expectedProfit / out.unrestricted.expectedProfit;
    return out;
}

std::vector<SweepRow> scenarioSweep(const GenConfig& cfg, const std::vector<int>& sampleSizes,
                                    const SolverParams& params, const MobilityParams& mobility) {
    auto [inst, baseScenarios] = generate(cfg, mobility);
    (void)baseScenarios; // each row draws its own fresh sample below

    std::vector<SweepRow> rows;
    rows.reserve(sampleSizes.size());
    for (std::size_t t = 0; t < sampleSizes.size(); ++t) {
        const std::uint64_t streamId = 1000 + t;
        Rng rng = Rng::stream(cfg.seed, streamId);
        const std::vector<Scenario> scenarios =
            sampleScenarios(inst, sampleSizes[t], rng);
        const SolveReport report = solve(inst, scenarios, params);
        SweepRow row;
        row.nScenarios = sampleSizes[t];
        row.bestInteger = report.bestInteger;
        row.bestBound = report.bestBound;
        row.gapPercent = report.gapPercent;
        row.gapRootPercent = report.gapRootPercent;
        row.elapsedSec = report.elapsedSec;
        row.nodeCount = report.nodeCount;
        row.status = report.status;
        row.scenarioSeed = streamId;
        rows.push_back(std::move(row));
    }
    return rows;
}

AlphaTriple presetDistribution(const std::string& tag) {
    if (tag == "D1") return {0.2, 0.8, 0.2};
    if (tag == "D2") return {0.8, 0.2, 0.8};
    if (tag == "D3") return {0.8, 0.8, 0.2};
    if (tag == "D4") return {0.2, 0.2, 0.8};
    throw std::invalid_argument("presetDistribution: unknown tag " + tag);
}

namespace {

std::string csvNum(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream s;
    s.precision(10);
    s << v;
    return s.str();
}

} // namespace

std::string studyRowsToCsv(const std::vector<StudyRow>& rows) {
    std::ostringstream out;
    out << "label,expectedProfit,profitPctOfDynamic,pctVehiclesRelocated,minRequests,"
           "maxRequests,minAdmissibleRequests,maxAdmissibleRequests,"
           "expectedPctRequestsSatisfied,gapPercent,gapRootPercent,gapHalfTimePercent,"
           "elapsedSec,nodeCount,status,seed\n";
    for (const StudyRow& r : rows) {
        out << r.label << ',' << csvNum(r.expectedProfit) << ',' << csvNum(r.profitPctOfDynamic)
            << ',' << csvNum(r.pctVehiclesRelocated) << ',' << r.minRequests << ','
            << r.maxRequests << ',' << r.minAdmissibleRequests << ',' << r.maxAdmissibleRequests
            << ',' << csvNum(r.expectedPctRequestsSatisfied) << ',' << csvNum(r.gapPercent) << ','
            << csvNum(r.gapRootPercent) << ','
            << (r.gapHalfTimePercent ? csvNum(*r.gapHalfTimePercent) : std::string())
            << ',' << csvNum(r.elapsedSec) << ',' << r.nodeCount << ',' << r.status << ','
            << r.seed << '\n';
    }
    return out.str();
}

std::string sweepToCsv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "nScenarios,bestInteger,bestBound,gapPercent,gapRootPercent,elapsedSec,nodeCount,"
           "status,scenarioSeed\n";
    for (const SweepRow& r : rows) {
        out << r.nScenarios << ',' << csvNum(r.bestInteger) << ',' << csvNum(r.bestBound) << ','
            << csvNum(r.gapPercent) << ',' << csvNum(r.gapRootPercent) << ','
            << csvNum(r.elapsedSec) << ',' << r.nodeCount << ',' << r.status << ','
            << r.scenarioSeed << '\n';
    }
    return out.str();
}

} // namespace csopt
