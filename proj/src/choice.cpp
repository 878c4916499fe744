#include "csopt/choice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace csopt {

double tau(double minutes) {
    if (minutes < 0.0) throw std::invalid_argument("tau: negative time");
    return std::ceil(minutes / 10.0);
}

double carsharingPrice(const Instance& inst, int i, int j, int levelIndex) {
    if (levelIndex < 0 || levelIndex >= inst.numLevels())
        throw std::invalid_argument("carsharingPrice: bad level index");
    return inst.carsharing.perMinuteFee * inst.carsharing.driveTime[i][j] +
           inst.feeLadder[levelIndex];
}

double deterministicUtility(const Instance& inst, const CustomerProfile& c, int mode,
                            double price) {
    const int i = c.origin, j = c.destination;
    double tCs = 0.0, tPt = 0.0, tBike = 0.0, tWalk = 0.0, tWait = 0.0;
    if (mode == kCarsharingMode) {
        tCs = inst.carsharing.driveTime[i][j];
        tWalk = inst.carsharing.walkTime[i][j];
        tWait = inst.carsharing.waitTime[i][j];
    } else {
        const AlternativeMode& alt = inst.alternatives.at(static_cast<std::size_t>(mode));
        tPt = alt.inVehicleTime[i][j];
        tBike = alt.bikeTime[i][j];
        tWalk = alt.walkTime[i][j];
        tWait = alt.waitTime[i][j];
    }
    return c.betaPrice * price + c.betaCs * tCs + c.betaPt * tPt +
           tau(tBike) * c.betaBike * tBike + tau(tWalk) * c.betaWalk * tWalk +
           c.betaWait * tWait;
}

double scenarioUtility(const Instance& inst, const Scenario& scenario,
                       const CustomerProfile& c, int mode, double price) {
    const int modeIdx = (mode == kCarsharingMode) ? 0 : 1 + mode;
    return deterministicUtility(inst, c, mode, price) +
           scenario.draws[static_cast<std::size_t>(c.k)][static_cast<std::size_t>(modeIdx)];
}

double bestAlternativeUtility(const Instance& inst, const Scenario& scenario,
                              const CustomerProfile& c) {
    double best = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < inst.numAlternatives(); ++a) {
        const AlternativeMode& alt = inst.alternatives[a];
        if (!alt.available[c.origin]) continue;
        double u = scenarioUtility(inst, scenario, c, a, alt.price[c.origin][c.destination]);
        best = std::max(best, u);
    }
    return best;
}

RequestSet computeRequests(const Instance& inst, const Scenario& scenario) {
    RequestSet set;
    for (const CustomerProfile& c : inst.customers) {
        const double bestAlt = bestAlternativeUtility(inst, scenario, c);
        int maxLevel = -1;
        for (int l = 0; l < inst.numLevels(); ++l) {
            double uCs = scenarioUtility(inst, scenario, c, kCarsharingMode,
                                         carsharingPrice(inst, c.origin, c.destination, l));
            if (uCs > bestAlt) maxLevel = std::max(maxLevel, l); // strict preference only
        }
        if (maxLevel < 0) continue;
        Request r;
        r.kOf = c.k;
        r.origin = c.origin;
        r.destination = c.destination;
        r.maxLevel = maxLevel;
        const double base = inst.carsharing.perMinuteFee * inst.carsharing.driveTime[r.origin][r.destination] -
                            inst.costs.usage[r.origin][r.destination];
        for (int l = 0; l <= maxLevel; ++l) r.revenue.push_back(base + inst.feeLadder[l]);
        set.requests.push_back(std::move(r));
    }
    set.precedingSameOrigin.resize(set.requests.size());
    for (std::size_t r = 0; r < set.requests.size(); ++r)
        for (std::size_t q = 0; q < r; ++q)
            if (set.requests[q].origin == set.requests[r].origin)
                set.precedingSameOrigin[r].push_back(static_cast<int>(q));
    return set;
}

ChoiceOutcome simulateChoices(const Instance& inst, const Scenario& scenario,
                              const FirstStageSolution& firstStage) {
    ChoiceOutcome out;
    const int K = inst.numCustomers();
    out.chosenMode.assign(K, 0);
    out.vehicleUsed.assign(K, -1);
    out.utility.assign(K, 0.0);

    // remaining vehicle stock per zone, lowest id first
    std::vector<std::vector<int>> stock(static_cast<std::size_t>(inst.numZones()));
    for (int v = inst.numVehicles() - 1; v >= 0; --v)
        stock[static_cast<std::size_t>(firstStage.placement[v])].push_back(v);
    for (auto& zs : stock) std::sort(zs.begin(), zs.end(), std::greater<int>()); // pop lowest from back

    for (const CustomerProfile& c : inst.customers) {
        int bestMode = 0;
        double bestU = -std::numeric_limits<double>::infinity();
        for (int a = 0; a < inst.numAlternatives(); ++a) {
            const AlternativeMode& alt = inst.alternatives[a];
            if (!alt.available[c.origin]) continue;
            double u = scenarioUtility(inst, scenario, c, a, alt.price[c.origin][c.destination]);
            if (u > bestU) { bestU = u; bestMode = a; }
        }
        auto& zoneStock = stock[static_cast<std::size_t>(c.origin)];
        if (!zoneStock.empty()) {
            const int posted = firstStage.fees[c.origin][c.destination];
            double uCs = scenarioUtility(inst, scenario, c, kCarsharingMode,
                                         carsharingPrice(inst, c.origin, c.destination, posted));
            if (uCs > bestU) { // ties go against carsharing
                int v = zoneStock.back();
                zoneStock.pop_back();
                out.chosenMode[c.k] = kCarsharingMode;
                out.vehicleUsed[c.k] = v;
                out.utility[c.k] = uCs;
                out.pickups.push_back({v, c.k, posted});
                continue;
            }
        }
        out.chosenMode[c.k] = bestMode;
        out.utility[c.k] = bestU;
    }
    return out;
}

} // namespace csopt
