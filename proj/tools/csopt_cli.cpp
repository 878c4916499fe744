// Command-line front end: instance generation, the exact and heuristic
// solvers, the comparison studies, and report pretty-printing.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "csopt/analysis.hpp"
#include "csopt/choice.hpp"
#include "csopt/extensive.hpp"
#include "csopt/heuristic_ils.hpp"
#include "csopt/instance_gen.hpp"
#include "csopt/json_io.hpp"
#include "csopt/lshaped.hpp"
#include "csopt/recourse.hpp"

namespace {

constexpr const char* kToolVersion = "1.0.0";

using nlohmann::json;

double nowSec() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point t0 = clock::now();
    return std::chrono::duration<double>(clock::now() - t0).count();
}

// ---- generator configuration shared by `generate` and `sweep-scenarios` ----

struct GenCli {
    std::string configPath;
    std::string preset;
    int zones = 0, customers = 0, vehicles = 0, scenarios = 0;
    double alphaFrom = 0.0, alphaTo = 0.0, alphaV = 0.0;
    bool individual = false;
    std::vector<double> feeLadder;
    std::uint64_t seed = 0;

    CLI::Option* oZones = nullptr;
    CLI::Option* oCustomers = nullptr;
    CLI::Option* oVehicles = nullptr;
    CLI::Option* oScenarios = nullptr;
    CLI::Option* oAlphaFrom = nullptr;
    CLI::Option* oAlphaTo = nullptr;
    CLI::Option* oAlphaV = nullptr;
    CLI::Option* oIndividual = nullptr;
    CLI::Option* oLadder = nullptr;
    CLI::Option* oSeed = nullptr;

    void attach(CLI::App* app) {
        app->add_option("--config", configPath,
                        "generator config JSON; explicit flags override its values");
        app->add_option("--preset", preset, "centrality preset D1|D2|D3|D4 for the alphas")
            ->check(CLI::IsMember({"D1", "D2", "D3", "D4"}));
        oZones = app->add_option("--zones", zones, "number of zones");
        oCustomers = app->add_option("--customers", customers, "number of customers");
        oVehicles = app->add_option("--vehicles", vehicles, "fleet size");
        oScenarios = app->add_option("--scenarios", scenarios, "number of sampled scenarios");
        oAlphaFrom = app->add_option("--alpha-from", alphaFrom,
                                     "origin centrality weight in [0,1]");
        oAlphaTo = app->add_option("--alpha-to", alphaTo,
                                   "destination centrality weight in [0,1]");
        oAlphaV = app->add_option("--alpha-v", alphaV,
                                  "vehicle placement centrality weight in [0,1]");
        oIndividual = app->add_flag("--individual", individual,
                                    "draw one taste profile per customer instead of a "
                                    "shared profile pair");
        oLadder = app->add_option("--fee-ladder", feeLadder,
                                  "comma-separated fee values, strictly increasing")
                      ->delimiter(',');
        oSeed = app->add_option("--seed", seed, "generator seed");
    }

    csopt::GenConfig build() const {
        csopt::GenConfig cfg;
        if (!configPath.empty())
            cfg = csopt::genConfigFromJson(csopt::readTextFile(configPath));
        if (!preset.empty()) {
            const csopt::AlphaTriple a = csopt::presetDistribution(preset);
            cfg.alphaV = a.alphaV;
            cfg.alphaFrom = a.alphaFrom;
            cfg.alphaTo = a.alphaTo;
        }
        if (oZones->count() > 0) cfg.nZones = zones;
        if (oCustomers->count() > 0) cfg.nCustomers = customers;
        if (oVehicles->count() > 0) cfg.nVehicles = vehicles;
        if (oScenarios->count() > 0) cfg.nScenarios = scenarios;
        if (oAlphaFrom->count() > 0) cfg.alphaFrom = alphaFrom;
        if (oAlphaTo->count() > 0) cfg.alphaTo = alphaTo;
        if (oAlphaV->count() > 0) cfg.alphaV = alphaV;
        if (oIndividual->count() > 0) cfg.individualProfiles = individual;
        if (oLadder->count() > 0) cfg.feeLadder = feeLadder;
        if (oSeed->count() > 0) cfg.seed = seed;
        return cfg;
    }
};

// ---- solver parameters shared by `solve` and the studies ----

struct SolveCli {
    double timeLimit = 1800.0;
    double gap = 1e-4;
    bool vi = true;
    bool relaxCuts = true;
    bool relaxCutsAtRoot = false;
    bool cutAllScenarios = false;
    int threads = 1;
    std::uint64_t seed = 0;

    // seedFlag is configurable because `sweep-scenarios` reserves --seed
    // for its embedded generator options
    void attach(CLI::App* app, const std::string& seedFlag = "--seed") {
        app->add_option("--time-limit", timeLimit, "wall-clock budget in seconds");
        app->add_option("--gap", gap, "target relative optimality gap (e.g. 1e-4)");
        app->add_flag("--vi,!--no-vi", vi, "symmetry-breaking valid inequality rows");
        app->add_flag("--relax-cuts,!--no-relax-cuts", relaxCuts,
                      "dual-based relaxation cuts next to the exact ones");
        app->add_flag("--relax-cuts-at-root", relaxCutsAtRoot,
                      "also seed relaxation cuts at the root node");
        app->add_flag("--cut-all-scenarios", cutAllScenarios,
                      "cut every scenario at integer points, not only violated ones");
        app->add_option("--threads", threads, "worker threads");
        app->add_option(seedFlag, seed, "seed recorded in the report");
    }

    csopt::SolverParams build() const {
        csopt::SolverParams p;
        p.timeLimit = timeLimit;
        p.targetRelGap = gap;
        p.useVI = vi;
        p.useRelaxationCuts = relaxCuts;
        p.relaxationCutsAtRoot = relaxCutsAtRoot;
        p.cutAllScenarios = cutAllScenarios;
        p.threads = threads;
        p.seed = seed;
        return p;
    }

    json toJson() const {
        return {{"timeLimit", timeLimit},
                {"gap", gap},
                {"vi", vi},
                {"relaxCuts", relaxCuts},
                {"relaxCutsAtRoot", relaxCutsAtRoot},
                {"cutAllScenarios", cutAllScenarios},
                {"threads", threads},
                {"seed", seed}};
    }
};

csopt::Instance loadInstance(const std::string& path) {
    csopt::Instance inst = csopt::instanceFromJson(csopt::readTextFile(path));
    const std::vector<std::string> problems = csopt::validate(inst);
    if (!problems.empty())
        throw std::runtime_error("invalid instance " + path + ": " + problems.front());
    return inst;
}

void writeManifest(const std::string& path, json manifest) {
    manifest["tool"] = "csopt";
    manifest["version"] = kToolVersion;
    csopt::writeTextFile(path, manifest.dump(1) + "\n");
}

void emitCsv(const std::string& csv, const std::string& outPath) {
    std::cout << csv;
    if (!outPath.empty()) csopt::writeTextFile(outPath, csv);
}

std::string fmtOrNa(const json& v) {
    if (v.is_null()) return "n/a";
    std::ostringstream s;
    s.precision(10);
    s << v.get<double>();
    return s.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"carsharing pricing & relocation solver toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    // ------------------------------------------------------------ generate
    auto* cmdGen = app.add_subcommand(
        "generate", "synthesize an instance + scenario sample, write them as JSON");
    GenCli genCli;
    genCli.attach(cmdGen);
    std::string genOut = "instance";
    cmdGen->add_option("--out", genOut,
                       "output prefix: writes <out>.instance.json, <out>.scenarios.json "
                       "and <out>.manifest.json");
    cmdGen->callback([&] {
        const csopt::GenConfig cfg = genCli.build();
        const auto [inst, scenarios] = csopt::generate(cfg);
        csopt::writeTextFile(genOut + ".instance.json", csopt::instanceToJson(inst));
        csopt::writeTextFile(genOut + ".scenarios.json", csopt::scenariosToJson(scenarios));
        json manifest{{"command", "generate"},
                      {"genConfig", json::parse(csopt::genConfigToJson(cfg))},
                      {"outputs",
                       {genOut + ".instance.json", genOut + ".scenarios.json"}}};
        writeManifest(genOut + ".manifest.json", std::move(manifest));
        std::cout << "wrote " << genOut << ".instance.json (" << inst.numZones() << " zones, "
                  << inst.numCustomers() << " customers, " << inst.numVehicles()
                  << " vehicles) and " << genOut << ".scenarios.json (" << scenarios.size()
                  << " scenarios)\n";
    });

    // --------------------------------------------------------------- solve
    auto* cmdSolve = app.add_subcommand("solve", "solve an instance with a chosen method");
    std::string slvInstance, slvScenarios, slvMethod;
    std::string slvReportPath, slvSolutionPath, slvMpsPath, slvDumpRequests, slvWarmStart;
    int slvIlsRestarts = 3;
    double slvIlsR = 30.0;
    double slvBound = std::numeric_limits<double>::quiet_NaN();
    int slvFixFeesLevel = -1;
    bool slvFixPlacement = false;
    SolveCli solveCli;
    cmdSolve->add_option("--instance", slvInstance, "instance JSON path")->required();
    cmdSolve->add_option("--scenarios", slvScenarios, "scenario JSON path")->required();
    cmdSolve->add_option("--method", slvMethod, "lshaped | bruteforce | saa-export | ils")
        ->required()
        ->check(CLI::IsMember({"lshaped", "bruteforce", "saa-export", "ils"}));
    solveCli.attach(cmdSolve);
    cmdSolve->add_option("--report", slvReportPath, "write the run report JSON here");
    cmdSolve->add_option("--solution", slvSolutionPath, "write the best solution JSON here");
    cmdSolve->add_option("--mps", slvMpsPath, "MPS output path (saa-export)");
    cmdSolve->add_option("--ils-restarts", slvIlsRestarts,
                         "restart cap without improvement (ils)");
    cmdSolve->add_option("--ils-r", slvIlsR, "perturbation strength R in percent (ils)");
    cmdSolve->add_option("--bound", slvBound,
                         "known upper bound; ils prints its gap against it");
    cmdSolve->add_option("--warm-start", slvWarmStart, "solution JSON used as warm start");
    cmdSolve->add_option("--fix-fees-level", slvFixFeesLevel,
                         "pin every OD fee to this ladder index (lshaped)");
    cmdSolve->add_flag("--fix-placement", slvFixPlacement,
                       "pin every vehicle to its initial zone (lshaped)");
    cmdSolve->add_option("--dump-requests", slvDumpRequests,
                         "write the deterministic per-scenario request sets to this JSON");
    cmdSolve->callback([&] {
        const csopt::Instance inst = loadInstance(slvInstance);
        const std::vector<csopt::Scenario> scenarios =
            csopt::scenariosFromJson(csopt::readTextFile(slvScenarios));

        if (!slvDumpRequests.empty()) {
            json arr = json::array();
            for (std::size_t s = 0; s < scenarios.size(); ++s) {
                const csopt::RequestSet rs = csopt::computeRequests(inst, scenarios[s]);
                json entry = json::parse(csopt::requestSetToJson(rs));
                entry["scenario"] = s;
                arr.push_back(std::move(entry));
            }
            csopt::writeTextFile(slvDumpRequests, arr.dump(1) + "\n");
        }

        if (slvMethod == "lshaped") {
            csopt::SolverParams params = solveCli.build();
            if (!slvWarmStart.empty())
                params.warmStart =
                    csopt::solutionFromJson(csopt::readTextFile(slvWarmStart));
            if (slvFixFeesLevel >= 0) params.fixAllFeesToLevel = slvFixFeesLevel;
            if (slvFixPlacement) {
                std::vector<int> initial(static_cast<std::size_t>(inst.numVehicles()));
                for (int v = 0; v < inst.numVehicles(); ++v)
                    initial[v] = inst.vehicles[v].initialZone;
                params.fixPlacement = std::move(initial);
            }
            const csopt::SolveReport report = csopt::solve(inst, scenarios, params);
            if (!slvReportPath.empty())
                csopt::writeTextFile(slvReportPath, csopt::reportToJson(report) + "\n");
            if (!slvSolutionPath.empty() && !report.incumbent.placement.empty())
                csopt::writeTextFile(slvSolutionPath,
                                     csopt::solutionToJson(inst, report.incumbent) + "\n");
            std::cout << "status=" << report.status << " bestInteger=" << report.bestInteger
                      << " bestBound=" << report.bestBound << " gap%=" << report.gapPercent
                      << " nodes=" << report.nodeCount << " elapsed=" << report.elapsedSec
                      << "s\n";
        } else if (slvMethod == "bruteforce") {
            const double t0 = nowSec();
            const csopt::BruteResult res =
                csopt::bruteForceSolve(inst, scenarios, solveCli.threads);
            const double elapsed = nowSec() - t0;
            if (!slvReportPath.empty()) {
                json rep{{"method", "bruteforce"},
                         {"objective", res.objective},
                         {"status", "optimal"},
                         {"elapsedSec", elapsed}};
                csopt::writeTextFile(slvReportPath, rep.dump(1) + "\n");
            }
            if (!slvSolutionPath.empty())
                csopt::writeTextFile(slvSolutionPath,
                                     csopt::solutionToJson(inst, res.solution) + "\n");
            std::cout << "status=optimal objective=" << res.objective
                      << " elapsed=" << elapsed << "s\n";
        } else if (slvMethod == "saa-export") {
            if (slvMpsPath.empty())
                throw std::runtime_error("saa-export requires --mps <path>");
            const csopt::SaaModel model = csopt::buildSAA(inst, scenarios);
            csopt::exportMPS(model, slvMpsPath);
            std::cout << "wrote " << slvMpsPath << " (" << model.lp.rows.size() << " rows, "
                      << model.lp.numCols << " cols, " << model.binaryCols.size()
                      << " binaries: z=" << model.zColumns << " fee=" << model.lambdaColumns
                      << " assign=" << model.yColumns << ")\n";
        } else { // ils
            csopt::IlsParams params;
            params.maxRestartsWithoutImprovement = slvIlsRestarts;
            params.timeLimit = solveCli.timeLimit;
            params.perturbPercent = slvIlsR;
            params.seed = solveCli.seed;
            params.threads = solveCli.threads;
            const csopt::IlsResult res = csopt::ils(inst, scenarios, params);
            json rep{{"method", "ils"},
                     {"objective", res.objective},
                     {"iterations", res.iterations},
                     {"elapsedSec", res.elapsedSec},
                     {"seed", res.seed}};
            if (!std::isnan(slvBound))
                rep["gapPercentVsBound"] = csopt::ilsGap(res.objective, slvBound);
            if (!slvReportPath.empty())
                csopt::writeTextFile(slvReportPath, rep.dump(1) + "\n");
            if (!slvSolutionPath.empty())
                csopt::writeTextFile(
                    slvSolutionPath,
                    csopt::solutionToJson(inst, csopt::decode(res.best)) + "\n");
            std::cout << "objective=" << res.objective << " iterations=" << res.iterations
                      << " elapsed=" << res.elapsedSec << "s";
            if (!std::isnan(slvBound))
                std::cout << " gap%=" << csopt::ilsGap(res.objective, slvBound);
            std::cout << "\n";
        }
    });

    // ------------------------------------------------------ compare-pricing
    auto* cmdCmp = app.add_subcommand(
        "compare-pricing", "dynamic pricing vs all fees pinned to the zero value");
    std::string cmpInstance, cmpScenarios, cmpOut, cmpManifest;
    SolveCli cmpCli;
    cmdCmp->add_option("--instance", cmpInstance, "instance JSON path")->required();
    cmdCmp->add_option("--scenarios", cmpScenarios, "scenario JSON path")->required();
    cmpCli.attach(cmdCmp);
    cmdCmp->add_option("--out", cmpOut, "also write the CSV here");
    cmdCmp->add_option("--manifest", cmpManifest, "write a JSON run manifest here");
    cmdCmp->callback([&] {
        const csopt::Instance inst = loadInstance(cmpInstance);
        const std::vector<csopt::Scenario> scenarios =
            csopt::scenariosFromJson(csopt::readTextFile(cmpScenarios));
        const csopt::PricingComparison cmp =
            csopt::comparePricing(inst, scenarios, cmpCli.build());
        emitCsv(csopt::studyRowsToCsv({cmp.dynamicPricing, cmp.fixedPricing}), cmpOut);
        if (!cmpManifest.empty())
            writeManifest(cmpManifest, {{"command", "compare-pricing"},
                                        {"instance", cmpInstance},
                                        {"scenarios", cmpScenarios},
                                        {"params", cmpCli.toJson()}});
    });

    // -------------------------------------------------------- no-relocation
    auto* cmdNoRel = app.add_subcommand(
        "no-relocation", "free placement vs vehicles pinned to their initial zones");
    std::string nrInstance, nrScenarios, nrOut, nrManifest;
    SolveCli nrCli;
    cmdNoRel->add_option("--instance", nrInstance, "instance JSON path")->required();
    cmdNoRel->add_option("--scenarios", nrScenarios, "scenario JSON path")->required();
    nrCli.attach(cmdNoRel);
    cmdNoRel->add_option("--out", nrOut, "also write the CSV here");
    cmdNoRel->add_option("--manifest", nrManifest, "write a JSON run manifest here");
    cmdNoRel->callback([&] {
        const csopt::Instance inst = loadInstance(nrInstance);
        const std::vector<csopt::Scenario> scenarios =
            csopt::scenariosFromJson(csopt::readTextFile(nrScenarios));
        const csopt::NoRelocationResult res =
            csopt::noRelocationStudy(inst, scenarios, nrCli.build());
        emitCsv(csopt::studyRowsToCsv({res.unrestricted, res.fixedPlacement}), nrOut);
        std::cout << "# profitRatio=" << res.profitRatio << "\n";
        if (!nrManifest.empty())
            writeManifest(nrManifest, {{"command", "no-relocation"},
                                       {"instance", nrInstance},
                                       {"scenarios", nrScenarios},
                                       {"profitRatio", res.profitRatio},
                                       {"params", nrCli.toJson()}});
    });

    // ------------------------------------------------------ sweep-scenarios
    auto* cmdSweep = app.add_subcommand(
        "sweep-scenarios", "solve one generated instance under growing scenario samples");
    GenCli sweepGen;
    SolveCli sweepCli;
    std::vector<int> sweepSizes;
    std::string sweepOut, sweepManifest;
    sweepGen.attach(cmdSweep);
    sweepCli.attach(cmdSweep, "--solver-seed");
    cmdSweep->add_option("--sizes", sweepSizes, "comma-separated scenario sample sizes")
        ->delimiter(',')
        ->required();
    cmdSweep->add_option("--out", sweepOut, "also write the CSV here");
    cmdSweep->add_option("--manifest", sweepManifest, "write a JSON run manifest here");
    cmdSweep->callback([&] {
        const csopt::GenConfig cfg = sweepGen.build();
        const std::vector<csopt::SweepRow> rows =
            csopt::scenarioSweep(cfg, sweepSizes, sweepCli.build());
        emitCsv(csopt::sweepToCsv(rows), sweepOut);
        if (!sweepManifest.empty())
            writeManifest(sweepManifest,
                          {{"command", "sweep-scenarios"},
                           {"genConfig", json::parse(csopt::genConfigToJson(cfg))},
                           {"sizes", sweepSizes},
                           {"params", sweepCli.toJson()}});
    });

    // --------------------------------------------------------------- report
    auto* cmdReport =
        app.add_subcommand("report", "pretty-print a run report JSON written by `solve`");
    std::string repPath;
    cmdReport->add_option("file", repPath, "report JSON path")->required();
    cmdReport->callback([&] {
        const json j = json::parse(csopt::readTextFile(repPath));
        if (j.contains("method") && j["method"] != "lshaped") {
            // compact reports from the bruteforce / ils methods
            std::cout << "method        " << j["method"].get<std::string>() << "\n"
                      << "objective     " << fmtOrNa(j.value("objective", json())) << "\n";
            if (j.contains("status"))
                std::cout << "status        " << j["status"].get<std::string>() << "\n";
            if (j.contains("iterations"))
                std::cout << "iterations    " << j["iterations"].get<long>() << "\n";
            if (j.contains("gapPercentVsBound"))
                std::cout << "gap vs bound  " << fmtOrNa(j["gapPercentVsBound"]) << " %\n";
            std::cout << "elapsed       " << fmtOrNa(j.value("elapsedSec", json())) << " s\n";
            return;
        }
        std::cout << "status        " << j.value("status", std::string("?")) << "\n"
                  << "best integer  " << fmtOrNa(j.value("bestInteger", json())) << "\n"
                  << "best bound    " << fmtOrNa(j.value("bestBound", json())) << "\n"
                  << "gap           " << fmtOrNa(j.value("gapPercent", json())) << " %\n"
                  << "root gap      " << fmtOrNa(j.value("gapRootPercent", json())) << " %\n"
                  << "half-time gap " << fmtOrNa(j.value("gapHalfTimePercent", json()))
                  << " %\n"
                  << "nodes         " << j.value("nodeCount", 0L) << "\n";
        if (j.contains("cuts"))
            std::cout << "cuts          optimality=" << j["cuts"].value("optimality", 0L)
                      << " relaxation=" << j["cuts"].value("relaxation", 0L)
                      << " vi-rows=" << j["cuts"].value("validInequality", 0L) << "\n";
        std::cout << "elapsed       " << fmtOrNa(j.value("elapsedSec", json())) << " s\n"
                  << "seed          " << j.value("seed", 0UL) << "\n";
        if (j.contains("incumbentTrace") && !j["incumbentTrace"].empty()) {
            std::cout << "incumbents    ";
            bool first = true;
            for (const auto& v : j["incumbentTrace"]) {
                if (!first) std::cout << " -> ";
                std::cout << v.get<double>();
                first = false;
            }
            std::cout << "\n";
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
