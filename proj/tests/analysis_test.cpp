#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "csopt/analysis.hpp"
#include "csopt/choice.hpp"
#include "csopt/extensive.hpp"
#include "csopt/instance_gen.hpp"
#include "csopt/lshaped.hpp"
#include "csopt/rng.hpp"
#include "test_util.hpp"

using namespace csopt;

namespace {

SolverParams quickParams() {
    SolverParams p;
    p.targetRelGap = 0.0;
    p.timeLimit = 60.0;
    return p;
}

std::string firstLine(const std::string& text) {
    return text.substr(0, text.find('\n'));
}

} // namespace

TEST_CASE("distribution presets carry the documented centrality triples") {
    const AlphaTriple d1 = presetDistribution("D1");
    CHECK(d1.alphaV == doctest::Approx(0.2));
    CHECK(d1.alphaFrom == doctest::Approx(0.8));
    CHECK(d1.alphaTo == doctest::Approx(0.2));
    const AlphaTriple d2 = presetDistribution("D2");
    CHECK(d2.alphaV == doctest::Approx(0.8));
    CHECK(d2.alphaFrom == doctest::Approx(0.2));
    CHECK(d2.alphaTo == doctest::Approx(0.8));
    const AlphaTriple d3 = presetDistribution("D3");
    CHECK(d3.alphaV == doctest::Approx(0.8));
    CHECK(d3.alphaFrom == doctest::Approx(0.8));
    CHECK(d3.alphaTo == doctest::Approx(0.2));
    const AlphaTriple d4 = presetDistribution("D4");
    CHECK(d4.alphaV == doctest::Approx(0.2));
    CHECK(d4.alphaFrom == doctest::Approx(0.2));
    CHECK(d4.alphaTo == doctest::Approx(0.8));
    CHECK_THROWS_AS(presetDistribution("D5"), std::invalid_argument);
    CHECK_THROWS_AS(presetDistribution(""), std::invalid_argument);
}

TEST_CASE("study metrics summarize a solved instance faithfully") {
    Rng rng(81);
    const Instance inst = testutil::randomInstance(rng, {2, 5, 2, 2});
    const auto scenarios = testutil::randomScenarios(rng, inst, 3);
    const SolveReport report = solve(inst, scenarios, quickParams());
    REQUIRE(report.status == "optimal");
    const StudyRow row = studyMetrics(inst, scenarios, report, "base");

    CHECK(row.label == "base");
    CHECK(row.expectedProfit == report.bestInteger);
    CHECK(row.gapPercent == report.gapPercent);
    CHECK(row.gapRootPercent == report.gapRootPercent);
    CHECK(row.elapsedSec == report.elapsedSec);
    CHECK(row.nodeCount == report.nodeCount);
    CHECK(row.status == report.status);
    CHECK(row.seed == report.seed);

    // relocation share matches a hand count over the incumbent placement
    int moved = 0;
    for (int v = 0; v < inst.numVehicles(); ++v)
        if (report.incumbent.placement[static_cast<std::size_t>(v)] !=
            inst.vehicles[static_cast<std::size_t>(v)].initialZone)
            ++moved;
    CHECK(row.pctVehiclesRelocated ==
          doctest::Approx(100.0 * moved / inst.numVehicles()));

    // request extremes are fee-independent; admissible counts never exceed them
    long lo = 0, hi = 0;
    bool first = true;
    for (const Scenario& s : scenarios) {
        const long n = computeRequests(inst, s).size();
        lo = first ? n : std::min(lo, n);
        hi = first ? n : std::max(hi, n);
        first = false;
    }
    CHECK(row.minRequests == lo);
    CHECK(row.maxRequests == hi);
    CHECK(row.minAdmissibleRequests <= row.maxAdmissibleRequests);
    CHECK(row.maxAdmissibleRequests <= row.maxRequests);
    CHECK(row.minAdmissibleRequests >= 0);

    // an admissible hand count for one scenario
    {
        const RequestSet rs = computeRequests(inst, scenarios[0]);
        long adm = 0;
        for (const Request& r : rs.requests)
            if (report.incumbent.fees[static_cast<std::size_t>(r.origin)]
                                     [static_cast<std::size_t>(r.destination)] <= r.maxLevel)
                ++adm;
        CHECK(adm >= row.minAdmissibleRequests);
        CHECK(adm <= row.maxAdmissibleRequests);
    }

    CHECK(row.expectedPctRequestsSatisfied >= 0.0);
    CHECK(row.expectedPctRequestsSatisfied <= 100.0 + 1e-9);
}

TEST_CASE("dynamic pricing dominates the pinned zero-fee policy") {
    Rng rng(82);
    for (int rep = 0; rep < 6; ++rep) {
        const Instance inst = testutil::randomInstance(
            rng, {2, 2 + rng.below(4), 1 + rng.below(2), 3}, /*includeZeroFee=*/true);
        const auto scenarios = testutil::randomScenarios(rng, inst, 1 + rng.below(2));
        const PricingComparison cmp = comparePricing(inst, scenarios, quickParams());
        CHECK(cmp.dynamicPricing.expectedProfit >=
              cmp.fixedPricing.expectedProfit - 1e-9);
        CHECK(cmp.dynamicPricing.profitPctOfDynamic == doctest::Approx(100.0));
        CHECK(cmp.dynamicPricing.label == "dynamic-pricing");
        CHECK(cmp.fixedPricing.label == "fixed-zero-fee");

        // the factory ladder really offers a zero level for the pinned row
        int zeroLevel = -1;
        for (int l = 0; l < inst.numLevels(); ++l)
            if (std::abs(inst.feeLadder[static_cast<std::size_t>(l)]) < 1e-12) zeroLevel = l;
        REQUIRE(zeroLevel >= 0);

        // cross-check both rows against exhaustive enumeration: the free model
        // attains the global optimum, the pinned model never exceeds it
        const BruteResult exact = bruteForceSolve(inst, scenarios);
        CHECK(cmp.dynamicPricing.expectedProfit == doctest::Approx(exact.objective));
        CHECK(cmp.fixedPricing.expectedProfit <= exact.objective + 1e-9);
    }
}

TEST_CASE("a ladder without a zero value is rejected by the pricing study") {
    Rng rng(83);
    const Instance inst =
        testutil::randomInstance(rng, {2, 3, 1, 3}, /*includeZeroFee=*/false);
    const auto scenarios = testutil::randomScenarios(rng, inst, 1);
    CHECK_THROWS_AS(comparePricing(inst, scenarios, quickParams()), std::invalid_argument);
}

TEST_CASE("allowing relocation never hurts and can strictly help") {
    Rng rng(84);
    for (int rep = 0; rep < 5; ++rep) {
        const Instance inst =
            testutil::randomInstance(rng, {2, 2 + rng.below(4), 1 + rng.below(2), 2});
        const auto scenarios = testutil::randomScenarios(rng, inst, 1 + rng.below(2));
        const NoRelocationResult res = noRelocationStudy(inst, scenarios, quickParams());
        CHECK(res.unrestricted.expectedProfit >= res.fixedPlacement.expectedProfit - 1e-9);
        CHECK(res.unrestricted.label == "with-relocation");
        CHECK(res.fixedPlacement.label == "no-relocation");
        if (res.unrestricted.expectedProfit > 1e-9)
            CHECK(res.profitRatio <= 1.0 + 1e-9);
        CHECK(res.fixedPlacement.pctVehiclesRelocated == doctest::Approx(0.0));
    }

    // crafted case: the single vehicle starts in a zone nobody requests from,
    // all demand originates in the other zone, and relocation is cheap
    Instance inst = testutil::randomInstance(rng, {2, 2, 1, 2});
    inst.vehicles[0].initialZone = 1;
    for (std::size_t k = 0; k < inst.customers.size(); ++k) {
        CustomerProfile& c = inst.customers[k];
        c.k = static_cast<int>(k);
        c.origin = 0;
        c.destination = 1;
        c.betaPrice = -0.1;
        c.betaCs = -0.01;
        c.betaPt = c.betaBike = c.betaWalk = c.betaWait = -1.0;
    }
    inst.feeLadder = {0.0, 1.0};
    inst.carsharing.perMinuteFee = 1.0;
    for (auto& row : inst.carsharing.driveTime)
        for (double& v : row) v = 10.0;
    inst.carsharing.driveTime[0][0] = inst.carsharing.driveTime[1][1] = 0.0;
    for (auto& row : inst.carsharing.walkTime)
        for (double& v : row) v = 0.0;
    for (auto& row : inst.carsharing.waitTime)
        for (double& v : row) v = 0.0;
    for (auto& alt : inst.alternatives) { // every outside option is grim
        alt.available.assign(2, 1);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                alt.price[i][j] = 5.0;
                alt.inVehicleTime[i][j] = 60.0;
                alt.bikeTime[i][j] = 60.0;
                alt.walkTime[i][j] = 0.0;
                alt.waitTime[i][j] = 0.0;
            }
    }
    for (auto& row : inst.costs.usage)
        for (double& v : row) v = 1.0;
    inst.costs.usage[0][0] = inst.costs.usage[1][1] = 0.0;
    for (auto& row : inst.costs.relocation)
        for (double& v : row) v = 0.5;
    inst.costs.relocation[0][0] = inst.costs.relocation[1][1] = 0.0;
    validate(inst);

    // two equally weighted scenarios with zero taste shocks: choices are the
    // deterministic utility ranking, so both customers always request 0 -> 1
    std::vector<Scenario> scen(2);
    for (Scenario& s : scen) {
        s.weight = 0.5;
        s.draws.assign(inst.customers.size(),
                       std::vector<double>(1 + inst.alternatives.size(), 0.0));
    }
    for (const Scenario& s : scen) REQUIRE(computeRequests(inst, s).size() == 2);

    const NoRelocationResult res = noRelocationStudy(inst, scen, quickParams());
    // pinned in zone 1 the vehicle serves nothing; free it relocates for 0.5
    // and sells one ride at the top fee: 1.0 * 10 - 1.0 + 1.0 = 10 per scenario
    CHECK(res.fixedPlacement.expectedProfit == doctest::Approx(0.0));
    CHECK(res.unrestricted.expectedProfit == doctest::Approx(9.5));
    CHECK(res.unrestricted.expectedProfit > res.fixedPlacement.expectedProfit + 1e-9);
    CHECK(res.profitRatio < 1.0 - 1e-9);
}

TEST_CASE("the scenario sweep draws fresh samples per size and stays ordered") {
    GenConfig cfg;
    cfg.nZones = 2;
    cfg.nCustomers = 4;
    cfg.nVehicles = 2;
    cfg.nScenarios = 2; // ignored by the sweep rows themselves
    cfg.alphaV = 0.5;
    cfg.alphaFrom = 0.5;
    cfg.alphaTo = 0.5;
    cfg.seed = 91;
    cfg.feeLadder = {-1.0, 0.0, 1.0};

    const std::vector<int> sizes = {1, 3, 5};
    const auto rows = scenarioSweep(cfg, sizes, quickParams());
    REQUIRE(rows.size() == sizes.size());
    for (std::size_t t = 0; t < rows.size(); ++t) {
        CHECK(rows[t].nScenarios == sizes[t]);
        CHECK(rows[t].bestBound >= rows[t].bestInteger - 1e-9);
        CHECK(rows[t].scenarioSeed == 1000 + t);
        CHECK(std::isfinite(rows[t].bestInteger));
        CHECK(!rows[t].status.empty());
    }

    // same config, same rows: the sweep is deterministic
    const auto again = scenarioSweep(cfg, sizes, quickParams());
    REQUIRE(again.size() == rows.size());
    for (std::size_t t = 0; t < rows.size(); ++t) {
        CHECK(again[t].bestInteger == rows[t].bestInteger);
        CHECK(again[t].bestBound == rows[t].bestBound);
        CHECK(again[t].nodeCount == rows[t].nodeCount);
    }
}

TEST_CASE("CSV output carries the documented headers and sentinel spellings") {
    std::vector<StudyRow> rows(1);
    rows[0].label = "demo";
    rows[0].expectedProfit = 12.5;
    rows[0].gapHalfTimePercent.reset(); // absent optional -> empty cell
    const std::string studyCsv = studyRowsToCsv(rows);
    CHECK(firstLine(studyCsv) ==
          "label,expectedProfit,profitPctOfDynamic,pctVehiclesRelocated,minRequests,"
          "maxRequests,minAdmissibleRequests,maxAdmissibleRequests,"
          "expectedPctRequestsSatisfied,gapPercent,gapRootPercent,gapHalfTimePercent,"
          "elapsedSec,nodeCount,status,seed");
    CHECK(studyCsv.find("demo,12.5,") != std::string::npos);
    CHECK(studyCsv.find(",,") != std::string::npos); // the empty optional cell

    rows[0].gapHalfTimePercent = 7.25;
    CHECK(studyRowsToCsv(rows).find("7.25") != std::string::npos);

    rows[0].gapPercent = std::numeric_limits<double>::infinity();
    CHECK(studyRowsToCsv(rows).find("inf") != std::string::npos);

    std::vector<SweepRow> sweep(1);
    sweep[0].nScenarios = 5;
    sweep[0].bestInteger = -3.25;
    sweep[0].status = "optimal";
    const std::string sweepCsv = sweepToCsv(sweep);
    CHECK(firstLine(sweepCsv) ==
          "nScenarios,bestInteger,bestBound,gapPercent,gapRootPercent,elapsedSec,"
          "nodeCount,status,scenarioSeed");
    CHECK(sweepCsv.find("5,-3.25,") != std::string::npos);
    CHECK(sweepCsv.find("optimal") != std::string::npos);
}
