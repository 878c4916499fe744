#include "csopt/lshaped.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <thread>

#include "csopt/choice.hpp"
#include "csopt/recourse.hpp"

namespace csopt {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kPosInf = std::numeric_limits<double>::infinity();

struct Node {
    long id = 0;
    double bound = kPosInf; // parent LP value; valid upper bound on the subtree
    std::vector<std::pair<int, int>> fixings; // (column, 0/1)
};

struct NodeOrder { // best bound first, FIFO on ties
    bool operator()(const Node& a, const Node& b) const {
        if (a.bound != b.bound) return a.bound < b.bound;
        return a.id > b.id;
    }
};

long subproblemRowCount(const RequestSet& rs, int numVehicles) {
    long levels = 0;
    for (const Request& r : rs.requests) levels += r.maxLevel + 1;
    return rs.size() + numVehicles + static_cast<long>(rs.size()) * numVehicles +
           static_cast<long>(numVehicles) * levels + levels;
}

// Static fan-out over [0, n); f(i) may only touch slot i of shared state.
template <typename F>
void parallelFor(int n, int threads, F&& f) {
    const int workers = std::min(threads, n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&f, w, n, workers] {
            for (int i = w; i < n; i += workers) f(i);
        });
    for (std::thread& t : pool) t.join();
}

} // namespace

MasterModel buildMaster(const Instance& inst, const std::vector<Scenario>& scenarios,
                        const SolverParams& params) {
    if (scenarios.empty()) throw std::invalid_argument("buildMaster: scenarios must be nonempty");
    MasterModel m;
    m.numZones = inst.numZones();
    m.numVehicles = inst.numVehicles();
    m.numLevels = inst.numLevels();
    m.numScenarios = static_cast<int>(scenarios.size());
    const int I = m.numZones, V = m.numVehicles, L = m.numLevels;

    for (int v = 0; v < V; ++v)
        for (int i = 0; i < I; ++i)
            m.lp.addColumn(0.0, 1.0, -inst.costs.relocation[inst.vehicles[v].initialZone][i]);
    for (int i = 0; i < I; ++i)
        for (int j = 0; j < I; ++j)
            for (int l = 0; l < L; ++l) m.lp.addColumn(0.0, 1.0, 0.0);
    for (const Scenario& sc : scenarios) {
        const RequestSet rs = computeRequests(inst, sc);
        const double hi = upperBound(rs);
        double lo = 0.0; // worst case: everything force-served at the lowest fee
        for (const Request& r : rs.requests) lo += std::min(0.0, r.revenue[0]);
        m.phiUpper.push_back(hi);
        m.phiLower.push_back(lo);
        m.lp.addColumn(lo, hi, sc.weight);
    }

    for (int v = 0; v < V; ++v) { // one zone per vehicle
        lp::RowDef row;
        for (int i = 0; i < I; ++i) row.coeffs.push_back({m.zCol(v, i), 1.0});
        row.rel = lp::Rel::EQ;
        row.rhs = 1.0;
        m.lp.addRow(std::move(row));
    }
    for (int i = 0; i < I; ++i) // one fee level per OD
        for (int j = 0; j < I; ++j) {
            lp::RowDef row;
            for (int l = 0; l < L; ++l) row.coeffs.push_back({m.lambdaCol(i, j, l), 1.0});
            row.rel = lp::Rel::EQ;
            row.rhs = 1.0;
            m.lp.addRow(std::move(row));
        }
    if (params.useVI && !params.fixAllFeesToLevel) {
        // symmetry breaker: either some vehicle sits in i or the OD posts the
        // cheapest fee; removes only solutions with an equal-value twin.
        // Pinned fees void its validity argument, so it is dropped with them.
        for (int i = 0; i < I; ++i)
            for (int j = 0; j < I; ++j) {
                lp::RowDef row;
                for (int v = 0; v < V; ++v) row.coeffs.push_back({m.zCol(v, i), 1.0});
                row.coeffs.push_back({m.lambdaCol(i, j, 0), 1.0});
                row.rel = lp::Rel::GE;
                row.rhs = 1.0;
                m.lp.addRow(std::move(row));
                ++m.viRowCount;
            }
    }
    return m;
}

Cut optimalityCut(const Instance& inst, const FirstStageSolution& point, double qS, double uS,
                  int scenario) {
    if (qS > uS + 1e-7 * (1.0 + std::abs(uS)))
        throw std::logic_error("optimalityCut: recourse value exceeds the scenario upper bound");
    const int I = inst.numZones(), V = inst.numVehicles(), L = inst.numLevels();
    const double slope = std::min(qS - uS, 0.0); // clamp fp noise at qS ~ uS

    Cut cut;
    cut.kind = CutKind::Optimality;
    cut.scenario = scenario;
    // |Z+| = V and |Lambda+| = I*I at any feasible point
    cut.constant = uS - slope * (V + I * I - 1);
    if (slope != 0.0) {
        cut.zTerms.reserve(static_cast<std::size_t>(V) * I);
        for (int v = 0; v < V; ++v)
            for (int i = 0; i < I; ++i)
                cut.zTerms.push_back({v * I + i, point.placement[v] == i ? slope : -slope});
        cut.lambdaTerms.reserve(static_cast<std::size_t>(I) * I * L);
        for (int i = 0; i < I; ++i)
            for (int j = 0; j < I; ++j)
                for (int l = 0; l < L; ++l)
                    cut.lambdaTerms.push_back(
                        {(i * I + j) * L + l, point.fees[i][j] == l ? slope : -slope});
    }
    return cut;
}

double evaluateFirstStage(const Instance& inst, const std::vector<Scenario>& scenarios,
                          const FirstStageSolution& firstStage) {
    double obj = 0.0;
    for (int v = 0; v < inst.numVehicles(); ++v)
        obj -= inst.costs.relocation[inst.vehicles[v].initialZone][firstStage.placement[v]];
    for (const Scenario& sc : scenarios) {
        const RequestSet rs = computeRequests(inst, sc);
        obj += sc.weight * greedyRecourse(inst, rs, firstStage).value;
    }
    return obj;
}

double gapPercent(double bestBound, double bestInteger) {
    if (!std::isfinite(bestInteger) || bestInteger == 0.0)
        return std::numeric_limits<double>::infinity();
    return 100.0 * std::abs(bestBound - bestInteger) / std::abs(bestInteger);
}

SolveReport solve(const Instance& inst, const std::vector<Scenario>& scenarios,
                  const SolverParams& params) {
    using Clock = std::chrono::steady_clock;
    const auto t0 = Clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - t0).count(); };

    SolveReport report;
    report.seed = params.seed;

    const int S = static_cast<int>(scenarios.size());
    const int V = inst.numVehicles(), I = inst.numZones(), L = inst.numLevels();

    std::vector<RequestSet> requests(static_cast<std::size_t>(S));
    std::vector<double> uS(static_cast<std::size_t>(S));
    for (int s = 0; s < S; ++s) {
        requests[s] = computeRequests(inst, scenarios[s]);
        uS[s] = upperBound(requests[s]);
    }

    SolverParams eff = params;
    if (params.fixAllFeesToLevel) eff.useVI = false; // VI needs freedom over fees

    MasterModel master = buildMaster(inst, scenarios, eff);
    report.cuts.validInequality = master.viRowCount;
    lp::LinearProgram work = master.lp; // grows as cuts accumulate

    if (params.fixPlacement) {
        for (int v = 0; v < V; ++v)
            for (int i = 0; i < I; ++i) {
                const double val = ((*params.fixPlacement)[v] == i) ? 1.0 : 0.0;
                work.lower[master.zCol(v, i)] = work.upper[master.zCol(v, i)] = val;
            }
    }
    if (params.fixAllFeesToLevel) {
        for (int i = 0; i < I; ++i)
            for (int j = 0; j < I; ++j)
                for (int l = 0; l < L; ++l) {
                    const double val = (l == *params.fixAllFeesToLevel) ? 1.0 : 0.0;
                    work.lower[master.lambdaCol(i, j, l)] =
                        work.upper[master.lambdaCol(i, j, l)] = val;
                }
    }

    const lp::SimplexOptions lpOpts;

    double bestInteger = kNegInf;
    FirstStageSolution incumbent;

    auto evalQ = [&](const FirstStageSolution& fs) {
        std::vector<double> q(static_cast<std::size_t>(S), 0.0);
        parallelFor(S, params.threads,
                    [&](int s) { q[s] = greedyRecourse(inst, requests[s], fs).value; });
        return q;
    };
    auto tryIncumbent = [&](const FirstStageSolution& fs, const std::vector<double>& q) {
        double obj = 0.0;
        for (int v = 0; v < V; ++v)
            obj -= inst.costs.relocation[inst.vehicles[v].initialZone][fs.placement[v]];
        for (int s = 0; s < S; ++s) obj += scenarios[s].weight * q[s];
        if (obj > bestInteger) {
            bestInteger = obj;
            incumbent = fs;
            report.incumbentTrace.push_back(obj);
        }
    };
    if (params.warmStart) tryIncumbent(*params.warmStart, evalQ(*params.warmStart));
    {
        // cheap baseline incumbents: leave the fleet in place and post one
        // uniform fee level; the root LP is indifferent over fee columns, so
        // rounding alone can start from an arbitrary (often losing) fee grid
        FirstStageSolution base;
        base.placement.resize(static_cast<std::size_t>(V));
        for (int v = 0; v < V; ++v)
            base.placement[static_cast<std::size_t>(v)] =
                params.fixPlacement ? (*params.fixPlacement)[static_cast<std::size_t>(v)]
                                    : inst.vehicles[static_cast<std::size_t>(v)].initialZone;
        const int lFrom = params.fixAllFeesToLevel ? *params.fixAllFeesToLevel : 0;
        const int lTo = params.fixAllFeesToLevel ? *params.fixAllFeesToLevel : L - 1;
        for (int l = lFrom; l <= lTo; ++l) {
            base.fees.assign(static_cast<std::size_t>(I),
                             std::vector<int>(static_cast<std::size_t>(I), l));
            tryIncumbent(base, evalQ(base));
        }
    }

    auto addCutRow = [&](const Cut& cut) {
        lp::RowDef row;
        row.coeffs.push_back({master.phiCol(cut.scenario), 1.0});
        for (const auto& [code, coef] : cut.zTerms) row.coeffs.push_back({code, -coef});
        for (const auto& [code, coef] : cut.lambdaTerms)
            row.coeffs.push_back({V * I + code, -coef});
        row.rel = lp::Rel::LE;
        row.rhs = cut.constant;
        work.addRow(std::move(row));
        if (cut.kind == CutKind::Optimality)
            ++report.cuts.optimality;
        else
            ++report.cuts.relaxation;
    };

    auto solveWithFixings = [&](const std::vector<std::pair<int, int>>& fixings) {
        std::vector<std::pair<double, double>> saved(fixings.size());
        for (std::size_t i = 0; i < fixings.size(); ++i) {
            const int col = fixings[i].first;
            saved[i] = {work.lower[col], work.upper[col]};
            work.lower[col] = work.upper[col] = fixings[i].second;
        }
        lp::LpResult res = lp::solve(work, lpOpts);
        for (std::size_t i = 0; i < fixings.size(); ++i) {
            const int col = fixings[i].first;
            work.lower[col] = saved[i].first;
            work.upper[col] = saved[i].second;
        }
        if (res.status == lp::LpStatus::Unbounded || res.status == lp::LpStatus::IterationLimit)
            throw std::runtime_error("master relaxation did not solve cleanly");
        return res;
    };

    auto isIntegral = [&](const std::vector<double>& x) {
        for (int c = 0; c < master.numBinaryCols(); ++c)
            if (std::abs(x[c] - std::round(x[c])) > params.integralityTol) return false;
        return true;
    };
    auto roundPoint = [&](const std::vector<double>& x) {
        FirstStageSolution fs;
        fs.placement.assign(static_cast<std::size_t>(V), 0);
        for (int v = 0; v < V; ++v) {
            int best = 0;
            for (int i = 1; i < I; ++i)
                if (x[master.zCol(v, i)] > x[master.zCol(v, best)]) best = i;
            fs.placement[v] = best;
        }
        fs.fees.assign(static_cast<std::size_t>(I), std::vector<int>(static_cast<std::size_t>(I), 0));
        for (int i = 0; i < I; ++i)
            for (int j = 0; j < I; ++j) {
                int best = 0;
                for (int l = 1; l < L; ++l)
                    if (x[master.lambdaCol(i, j, l)] > x[master.lambdaCol(i, j, best)]) best = l;
                fs.fees[i][j] = best;
            }
        return fs;
    };

    // Cuts for one integral point; returns the number of scenarios whose phi
    // actually violated its recourse value (the re-solve trigger).
    auto generateCuts = [&](const FirstStageSolution& P, const std::vector<double>& x,
                            const std::vector<double>& q) {
        std::vector<char> make(static_cast<std::size_t>(S), 0);
        int violations = 0;
        for (int s = 0; s < S; ++s) {
            const bool violated = x[master.phiCol(s)] > q[s] + params.cutViolationTol;
            violations += violated ? 1 : 0;
            make[s] = (violated || params.cutAllScenarios) ? 1 : 0;
        }
        std::vector<std::optional<Cut>> oc(static_cast<std::size_t>(S));
        std::vector<std::optional<Cut>> rc(static_cast<std::size_t>(S));
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(S));
        parallelFor(S, params.threads, [&](int s) {
            if (!make[s]) return;
            try {
                oc[s] = optimalityCut(inst, P, q[s], uS[s], s);
                if (eff.useRelaxationCuts &&
                    subproblemRowCount(requests[s], V) <= params.relaxationCutRowLimit) {
                    SubproblemLP sub = buildSubproblemLP(inst, requests[s], P);
                    lp::LpResult res = lp::solve(sub.lp, lpOpts);
                    if (res.status == lp::LpStatus::Optimal)
                        rc[s] = relaxationCut(inst, requests[s], sub, res.rowDuals, s);
                }
            } catch (...) {
                errors[s] = std::current_exception();
            }
        });
        for (int s = 0; s < S; ++s) { // deterministic reduction in scenario order
            if (errors[s]) std::rethrow_exception(errors[s]);
            if (oc[s]) addCutRow(*oc[s]);
            if (rc[s]) addCutRow(*rc[s]);
        }
        return violations;
    };

    std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
    open.push(Node{});
    long nextId = 1;
    auto queueBound = [&] { return open.empty() ? kNegInf : open.top().bound; };
    auto snapshotHalfTime = [&](double bb) {
        if (!report.gapHalfTimePercent && elapsed() >= params.timeLimit / 2.0)
            report.gapHalfTimePercent = gapPercent(bb, bestInteger);
    };

    std::string status;
    double finalBound = kPosInf;

    while (true) {
        const double bb = std::max(queueBound(), bestInteger);
        snapshotHalfTime(bb);
        if (elapsed() >= params.timeLimit) {
            status = std::isfinite(bestInteger) ? "timeLimit" : "noIncumbent";
            finalBound = bb;
            break;
        }
        if (open.empty()) {
            status = std::isfinite(bestInteger) ? "optimal" : "noIncumbent";
            finalBound = bestInteger;
            break;
        }
        if (std::isfinite(bestInteger) && std::isfinite(bb)) {
            const double rel = std::abs(bb - bestInteger) / std::max(std::abs(bestInteger), 1e-10);
            if (rel <= params.targetRelGap) {
                // a gap of numerically zero is a proof, not an early stop
                status = rel <= 1e-12 ? "optimal" : "gapLimit";
                finalBound = bb;
                break;
            }
        }

        Node node = open.top();
        open.pop();
        const bool isRoot = node.id == 0;
        if (node.bound <= bestInteger + 1e-9) continue;

        lp::LpResult res = solveWithFixings(node.fixings);
        ++report.nodeCount;
        if (res.status == lp::LpStatus::Infeasible) {
            if (isRoot) {
                status = "noIncumbent"; // master infeasible only under bad fixings
                finalBound = kNegInf;
                break;
            }
            continue;
        }
        double nodeObj = res.objective;
        if (!isRoot && nodeObj <= bestInteger + 1e-9) continue;

        if (isRoot && params.relaxationCutsAtRoot && eff.useRelaxationCuts) {
            // seed dual cuts once from the rounded root point (their validity
            // does not depend on where they were generated)
            const FirstStageSolution P = roundPoint(res.x);
            std::vector<std::optional<Cut>> rc(static_cast<std::size_t>(S));
            parallelFor(S, params.threads, [&](int s) {
                if (subproblemRowCount(requests[s], V) > params.relaxationCutRowLimit) return;
                SubproblemLP sub = buildSubproblemLP(inst, requests[s], P);
                lp::LpResult sres = lp::solve(sub.lp, lpOpts);
                if (sres.status == lp::LpStatus::Optimal)
                    rc[s] = relaxationCut(inst, requests[s], sub, sres.rowDuals, s);
            });
            bool added = false;
            for (int s = 0; s < S; ++s)
                if (rc[s]) {
                    addCutRow(*rc[s]);
                    added = true;
                }
            if (added) {
                res = solveWithFixings(node.fixings);
                if (res.status == lp::LpStatus::Infeasible)
                    throw std::logic_error("valid root cuts made the master infeasible");
                nodeObj = res.objective;
            }
        }

        bool fathomed = false;
        bool timedOut = false;
        while (true) { // lazy-cut loop at an integral node
            if (elapsed() >= params.timeLimit) {
                timedOut = true;
                break;
            }
            if (!isIntegral(res.x)) break;
            const FirstStageSolution P = roundPoint(res.x);
            const std::vector<double> q = evalQ(P);
            const int violations = generateCuts(P, res.x, q);
            if (violations == 0) { // phi honest here: candidate is exact
                tryIncumbent(P, q);
                fathomed = true;
                break;
            }
            res = solveWithFixings(node.fixings);
            if (res.status == lp::LpStatus::Infeasible) {
                fathomed = true;
                break;
            }
            nodeObj = res.objective;
            snapshotHalfTime(std::max({queueBound(), nodeObj, bestInteger}));
            if (!isRoot && nodeObj <= bestInteger + 1e-9) {
                fathomed = true;
                break;
            }
        }

        if (isRoot) {
            if (!timedOut && !fathomed && !isIntegral(res.x)) {
                // rounding heuristic: guarantees an incumbent and a finite root gap
                const FirstStageSolution P = roundPoint(res.x);
                tryIncumbent(P, evalQ(P));
            }
            report.gapRootPercent = gapPercent(nodeObj, bestInteger);
        }
        if (timedOut) {
            status = std::isfinite(bestInteger) ? "timeLimit" : "noIncumbent";
            finalBound = std::max({queueBound(), nodeObj, bestInteger});
            break;
        }
        if (fathomed) continue;
        if (nodeObj <= bestInteger + 1e-9) continue;

        int branchCol = -1; // most fractional binary, lowest index on ties
        double branchScore = -1.0;
        for (int c = 0; c < master.numBinaryCols(); ++c) {
            const double dist = 0.5 - std::abs(res.x[c] - 0.5);
            if (dist > params.integralityTol && dist > branchScore) {
                branchScore = dist;
                branchCol = c;
            }
        }
        if (branchCol < 0) continue; // defensive: integral after all

        Node down{nextId++, nodeObj, node.fixings};
        down.fixings.push_back({branchCol, 0});
        Node up{nextId++, nodeObj, node.fixings};
        up.fixings.push_back({branchCol, 1});
        open.push(std::move(down));
        open.push(std::move(up));
    }

    report.bestInteger = bestInteger;
    report.bestBound = finalBound;
    report.gapPercent = gapPercent(finalBound, bestInteger);
    if (!report.gapHalfTimePercent && elapsed() >= params.timeLimit / 2.0)
        report.gapHalfTimePercent = report.gapPercent;
    report.elapsedSec = elapsed();
    report.status = status;
    report.incumbent = incumbent;
    return report;
}

} // namespace csopt
