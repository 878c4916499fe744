#include "csopt/heuristic_ils.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "csopt/choice.hpp"
#include "csopt/lshaped.hpp"
#include "csopt/recourse.hpp"

namespace csopt {

EncodedSolution encode(const FirstStageSolution& fs) { return {fs.placement, fs.fees}; }

FirstStageSolution decode(const EncodedSolution& enc) { return {enc.positions, enc.fees}; }

double fitness(const Instance& inst, const std::vector<Scenario>& scenarios,
               const EncodedSolution& enc) {
    return evaluateFirstStage(inst, scenarios, decode(enc));
}

namespace {

using Clock = std::chrono::steady_clock;

// Same arithmetic as the solver's first-stage evaluation, with the
// scenario-independent request preprocessing hoisted out of the search loop.
struct Evaluator {
    const Instance* inst;
    const std::vector<Scenario>* scenarios;
    std::vector<RequestSet> requests;

    Evaluator(const Instance& instance, const std::vector<Scenario>& scen)
        : inst(&instance), scenarios(&scen) {
        requests.reserve(scen.size());
        for (const Scenario& s : scen) requests.push_back(computeRequests(instance, s));
    }

    double operator()(const EncodedSolution& enc) const {
        const FirstStageSolution fs = decode(enc);
        double obj = 0.0;
        for (int v = 0; v < inst->numVehicles(); ++v)
            obj -= inst->costs.relocation[inst->vehicles[v].initialZone][fs.placement[v]];
        for (std::size_t s = 0; s < scenarios->size(); ++s)
            obj += (*scenarios)[s].weight * greedyRecourse(*inst, requests[s], fs).value;
        return obj;
    }
};

struct Move {
    int a = 0, b = 0, value = 0; // position move: (v, -, zone); fee move: (i, j, level)
};

// All single-entry changes in scan order: positions by (vehicle, zone), fees
// by (origin, destination, level); the no-op entries are skipped.
std::vector<Move> neighborhood(const EncodedSolution& enc, MoveKind op, int numZones,
                               int numLevels) {
    std::vector<Move> moves;
    if (op == MoveKind::Position) {
        for (int v = 0; v < static_cast<int>(enc.positions.size()); ++v)
            for (int i = 0; i < numZones; ++i)
                if (i != enc.positions[static_cast<std::size_t>(v)]) moves.push_back({v, 0, i});
    } else {
        const int I = static_cast<int>(enc.fees.size());
        for (int i = 0; i < I; ++i)
            for (int j = 0; j < I; ++j)
                for (int l = 0; l < numLevels; ++l)
                    if (l != enc.fees[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
                        moves.push_back({i, j, l});
    }
    return moves;
}

EncodedSolution applyMove(const EncodedSolution& enc, MoveKind op, const Move& m) {
    EncodedSolution out = enc;
    if (op == MoveKind::Position)
        out.positions[static_cast<std::size_t>(m.a)] = m.value;
    else
        out.fees[static_cast<std::size_t>(m.a)][static_cast<std::size_t>(m.b)] = m.value;
    return out;
}

// First-improvement pass: the accepted move is the scan-order-first improving
// neighbor even when fitness evaluations fan out over threads.
bool firstImprovement(const Evaluator& eval, const EncodedSolution& cur, double curFit,
                      MoveKind op, int numZones, int numLevels, int threads,
                      Clock::time_point deadline, EncodedSolution& out, double& outFit) {
    const std::vector<Move> moves = neighborhood(cur, op, numZones, numLevels);
    const int chunk = std::max(1, threads) * 4;
    std::vector<double> values(static_cast<std::size_t>(chunk));
    for (std::size_t base = 0; base < moves.size(); base += static_cast<std::size_t>(chunk)) {
        if (Clock::now() >= deadline) return false;
        const int count = static_cast<int>(
            std::min<std::size_t>(static_cast<std::size_t>(chunk), moves.size() - base));
        if (threads <= 1) {
            for (int t = 0; t < count; ++t)
                values[t] = eval(applyMove(cur, op, moves[base + static_cast<std::size_t>(t)]));
        } else {
            const int workers = std::min(threads, count);
            std::vector<std::thread> pool;
            pool.reserve(static_cast<std::size_t>(workers));
            for (int w = 0; w < workers; ++w)
                pool.emplace_back([&, w] {
                    for (int t = w; t < count; t += workers)
                        values[t] =
                            eval(applyMove(cur, op, moves[base + static_cast<std::size_t>(t)]));
                });
            for (std::thread& t : pool) t.join();
        }
        for (int t = 0; t < count; ++t) {
            if (values[t] > curFit) {
                out = applyMove(cur, op, moves[base + static_cast<std::size_t>(t)]);
                outFit = values[t];
                return true;
            }
        }
    }
    return false;
}

EncodedSolution localSearchImpl(const Evaluator& eval, EncodedSolution start, double& fit,
                                MoveKind op, int numZones, int numLevels, int threads,
                                Clock::time_point deadline) {
    while (Clock::now() < deadline) {
        EncodedSolution next;
        double nextFit = 0.0;
        if (!firstImprovement(eval, start, fit, op, numZones, numLevels, threads, deadline, next,
                              nextFit))
            break; // local optimum (or out of time mid-scan): keep current
        start = std::move(next);
        fit = nextFit;
    }
    return start;
}

} // namespace

EncodedSolution localSearch(const Instance& inst, const std::vector<Scenario>& scenarios,
                            const EncodedSolution& start, MoveKind op, double timeLimitSec,
                            int threads) {
    const Evaluator eval(inst, scenarios);
    const auto deadline =
        Clock::now() + std::chrono::duration_cast<Clock::duration>(
                           std::chrono::duration<double>(timeLimitSec));
    double fit = eval(start);
    EncodedSolution cur = start;
    return localSearchImpl(eval, std::move(cur), fit, op, inst.numZones(), inst.numLevels(),
                           threads, deadline);
}

EncodedSolution perturb(const EncodedSolution& enc, double rPercent, int numZones, int numLevels,
                        Rng& rng) {
    if (!(rPercent > 0.0) || rPercent > 100.0)
        throw std::invalid_argument("perturb: percentage must be in (0, 100]");
    EncodedSolution out = enc;

    auto redrawCount = [&](std::size_t n) {
        const long c = static_cast<long>(std::floor(rPercent * static_cast<double>(n) / 100.0 + 0.5));
        return std::max<long>(1, c); // round half up, at least one entry
    };
    auto pickDistinct = [&](std::size_t n, long count) {
        std::vector<int> idx(n);
        for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<int>(i);
        for (long i = 0; i < count; ++i) { // partial Fisher-Yates
            const int j = i + rng.below(static_cast<int>(n) - static_cast<int>(i));
            std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
        }
        idx.resize(static_cast<std::size_t>(count));
        return idx;
    };

    const std::size_t V = enc.positions.size();
    for (int slot : pickDistinct(V, std::min<long>(redrawCount(V), static_cast<long>(V))))
        out.positions[static_cast<std::size_t>(slot)] = rng.below(numZones);

    const std::size_t cells = enc.fees.size() * enc.fees.size();
    const int I = static_cast<int>(enc.fees.size());
    for (int slot : pickDistinct(cells, std::min<long>(redrawCount(cells),
                                                       static_cast<long>(cells))))
        out.fees[static_cast<std::size_t>(slot / I)][static_cast<std::size_t>(slot % I)] =
            rng.below(numLevels);
    return out;
}

IlsResult ils(const Instance& inst, const std::vector<Scenario>& scenarios,
              const IlsParams& params) {
    const auto t0 = Clock::now();
    const auto deadline =
        t0 + std::chrono::duration_cast<Clock::duration>(
                 std::chrono::duration<double>(params.timeLimit));
    auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - t0).count(); };

    const Evaluator eval(inst, scenarios);
    const int I = inst.numZones(), L = inst.numLevels();
    Rng rng(params.seed);

    EncodedSolution current;
    current.positions.resize(static_cast<std::size_t>(inst.numVehicles()));
    for (int& p : current.positions) p = rng.below(I);
    current.fees.assign(static_cast<std::size_t>(I), std::vector<int>(static_cast<std::size_t>(I)));
    for (auto& row : current.fees)
        for (int& f : row) f = rng.below(L);

    IlsResult result;
    result.seed = params.seed;
    result.best = current;
    result.objective = eval(current);

    int restarts = 0;
    while (restarts <= params.maxRestartsWithoutImprovement && elapsed() <= params.timeLimit) {
        const double currentFit = eval(current);
        double fit = currentFit;
        EncodedSolution n = localSearchImpl(eval, current, fit, MoveKind::Fee, I, L,
                                            params.threads, deadline);
        n = localSearchImpl(eval, std::move(n), fit, MoveKind::Position, I, L, params.threads,
                            deadline);
        if (fit < currentFit)
            ++restarts; // unreachable: local search never worsens (kept verbatim)
        else
            restarts = 0;
        if (fit > result.objective) {
            result.best = n;
            result.objective = fit;
        }
        current = perturb(n, params.perturbPercent, I, L, rng);
        ++result.iterations;
    }
    result.elapsedSec = elapsed();
    return result;
}

double ilsGap(double ilsObjective, double lsBestBound) {
    return 100.0 * std::abs(ilsObjective - lsBestBound) / (std::abs(ilsObjective) + 1e-10);
}

} // namespace csopt
