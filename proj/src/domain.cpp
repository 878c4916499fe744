#include "csopt/domain.hpp"

#include <cmath>
#include <sstream>

namespace csopt {

double zoneDistanceKm(const Zone& a, const Zone& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

namespace {

bool matrixShaped(const Matrix& m, int n) {
    if (static_cast<int>(m.size()) != n) return false;
    for (const auto& row : m)
        if (static_cast<int>(row.size()) != n) return false;
    return true;
}

bool matrixNonNegative(const Matrix& m) {
    for (const auto& row : m)
        for (double v : row)
            if (v < 0.0) return false;
    return true;
}

} // namespace

std::vector<std::string> validate(const Instance& inst) {
    std::vector<std::string> issues;
    auto flag = [&issues](const std::string& msg) { issues.push_back(msg); };
    const int n = inst.numZones();

    if (n == 0) flag("instance has no zones");
    for (int i = 0; i < n; ++i) {
        const Zone& z = inst.zones[i];
        if (z.id != i) flag("zone ids must be contiguous 0..n-1 in order (zone " + std::to_string(i) + ")");
        if (!(z.centerDistanceKm > 0.0))
            flag("non-positive center distance (zone " + std::to_string(i) + ")");
    }

    // carsharing service
    if (!(inst.carsharing.perMinuteFee > 0.0)) flag("carsharing per-minute fee must be positive");
    if (!matrixShaped(inst.carsharing.driveTime, n)) flag("carsharing driveTime matrix shape mismatch");
    if (!matrixShaped(inst.carsharing.walkTime, n)) flag("carsharing walkTime matrix shape mismatch");
    if (!matrixShaped(inst.carsharing.waitTime, n)) flag("carsharing waitTime matrix shape mismatch");
    if (matrixShaped(inst.carsharing.driveTime, n) && !matrixNonNegative(inst.carsharing.driveTime))
        flag("negative carsharing drive time");

    // fee ladder strictly increasing
    if (inst.feeLadder.empty()) flag("fee ladder is empty");
    for (std::size_t l = 1; l < inst.feeLadder.size(); ++l)
        if (!(inst.feeLadder[l] > inst.feeLadder[l - 1]))
            flag("fee ladder must be strictly increasing");

    // alternatives
    for (std::size_t a = 0; a < inst.alternatives.size(); ++a) {
        const AlternativeMode& alt = inst.alternatives[a];
        const std::string who = "alternative " + (alt.tag.empty() ? std::to_string(a) : alt.tag);
        if (static_cast<int>(alt.available.size()) != n) flag(who + ": availability vector shape mismatch");
        for (const Matrix* m : {&alt.price, &alt.inVehicleTime, &alt.bikeTime, &alt.walkTime, &alt.waitTime}) {
            if (!matrixShaped(*m, n)) { flag(who + ": matrix shape mismatch"); break; }
        }
        if (matrixShaped(alt.price, n) && !matrixNonNegative(alt.price)) flag(who + ": negative price");
        for (const Matrix* m : {&alt.inVehicleTime, &alt.bikeTime, &alt.walkTime, &alt.waitTime})
            if (matrixShaped(*m, n) && !matrixNonNegative(*m)) { flag(who + ": negative time"); break; }
    }

    // customers
    for (int k = 0; k < inst.numCustomers(); ++k) {
        const CustomerProfile& c = inst.customers[k];
        const std::string who = "customer " + std::to_string(k);
        if (c.k != k) flag(who + ": arrival index must equal array position");
        if (c.origin < 0 || c.origin >= n) flag(who + ": origin out of range");
        if (c.destination < 0 || c.destination >= n) flag(who + ": destination out of range");
        if (c.origin == c.destination) flag(who + ": round trip forbidden (A10)");
        for (double b : {c.betaPrice, c.betaCs, c.betaPt, c.betaBike, c.betaWalk, c.betaWait})
            if (b > 0.0) { flag(who + ": positive taste coefficient"); break; }
        // closed market: some alternative must be usable at the origin, because a
        // shared vehicle is not guaranteed to be there
        if (c.origin >= 0 && c.origin < n) {
            bool any = false;
            for (const AlternativeMode& alt : inst.alternatives)
                if (static_cast<int>(alt.available.size()) == n && alt.available[c.origin] != 0) any = true;
            if (!any) flag(who + ": no alternative mode available at origin (closed market violated)");
        }
    }

    // vehicles
    for (int v = 0; v < inst.numVehicles(); ++v) {
        const Vehicle& veh = inst.vehicles[v];
        if (veh.id != v) flag("vehicle ids must be contiguous 0..m-1 in order (vehicle " + std::to_string(v) + ")");
        if (veh.initialZone < 0 || veh.initialZone >= n)
            flag("vehicle " + std::to_string(v) + ": initial zone out of range");
    }

    // costs
    if (!matrixShaped(inst.costs.relocation, n)) flag("relocation cost matrix shape mismatch");
    else {
        if (!matrixNonNegative(inst.costs.relocation)) flag("negative relocation cost");
        for (int i = 0; i < n; ++i)
            if (inst.costs.relocation[i][i] != 0.0) flag("relocation cost diagonal must be zero");
    }
    if (!matrixShaped(inst.costs.usage, n)) flag("usage cost matrix shape mismatch");
    else if (!matrixNonNegative(inst.costs.usage)) flag("negative usage cost");

    if (inst.sigma < 0.0) flag("negative sigma");

    return issues;
}

} // namespace csopt
