#include "csopt/instance_gen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "csopt/choice.hpp"

namespace csopt {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEulerMascheroni = 0.5772156649015329;

void checkConfig(const GenConfig& cfg) {
    auto alphaOk = [](double a) { return a >= 0.0 && a <= 1.0; };
    if (!alphaOk(cfg.alphaFrom) || !alphaOk(cfg.alphaTo) || !alphaOk(cfg.alphaV))
        throw std::invalid_argument("GenConfig: alpha values must lie in [0,1]");
    if (cfg.nZones < 2) throw std::invalid_argument("GenConfig: need at least 2 zones");
    if (cfg.nCustomers <= 0 || cfg.nVehicles <= 0 || cfg.nScenarios <= 0)
        throw std::invalid_argument("GenConfig: counts must be positive");
    if (cfg.feeLadder.empty()) throw std::invalid_argument("GenConfig: empty fee ladder");
    for (std::size_t l = 1; l < cfg.feeLadder.size(); ++l)
        if (!(cfg.feeLadder[l - 1] < cfg.feeLadder[l]))
            throw std::invalid_argument("GenConfig: fee ladder must be strictly increasing");
}

std::vector<double> centerDistances(const std::vector<Zone>& zones) {
    std::vector<double> d;
    d.reserve(zones.size());
    for (const Zone& z : zones) d.push_back(z.centerDistanceKm);
    return d;
}

Matrix zeroMatrix(int n) { return Matrix(n, std::vector<double>(n, 0.0)); }

} // namespace

std::vector<double> zoneProbabilities(const std::vector<double>& distances, double alpha) {
    if (distances.empty()) throw std::invalid_argument("zoneProbabilities: empty distances");
    double mean = 0.0;
    for (double d : distances) {
        if (d <= 0.0) throw std::invalid_argument("zoneProbabilities: non-positive distance");
        mean += d;
    }
    mean /= static_cast<double>(distances.size());
    std::vector<double> p(distances.size());
    double total = 0.0;
    for (std::size_t i = 0; i < distances.size(); ++i) {
        p[i] = std::exp(-alpha * (distances[i] - mean)) * distances[i];
        total += p[i];
    }
    for (double& v : p) v /= total;
    return p;
}

std::vector<Zone> synthesizeZones(const GenConfig& cfg, const MobilityParams& params, Rng& rng) {
    std::vector<Zone> zones(static_cast<std::size_t>(cfg.nZones));
    for (int i = 0; i < cfg.nZones; ++i) {
        double r = params.diskRadiusKm * std::sqrt(rng.uniform01());
        double theta = 2.0 * kPi * rng.uniform01();
        Zone& z = zones[static_cast<std::size_t>(i)];
        z.id = i;
        z.x = r * std::cos(theta);
        z.y = r * std::sin(theta);
        z.centerDistanceKm = std::max(std::hypot(z.x, z.y), params.minCenterDistanceKm);
    }
    return zones;
}

std::vector<std::pair<int, int>> partitionCustomers(const GenConfig& cfg,
                                                    const std::vector<Zone>& zones, Rng& rng) {
    if (zones.size() < 2) throw std::invalid_argument("partitionCustomers: need at least 2 zones");
    const std::vector<double> d = centerDistances(zones);
    const std::vector<double> pFrom = zoneProbabilities(d, cfg.alphaFrom);
    const std::vector<double> pTo = zoneProbabilities(d, cfg.alphaTo);
    std::vector<std::pair<int, int>> od;
    od.reserve(static_cast<std::size_t>(cfg.nCustomers));
    for (int k = 0; k < cfg.nCustomers; ++k) {
        int i = rng.categorical(pFrom);
        std::vector<double> w = pTo;
        w[static_cast<std::size_t>(i)] = 0.0; // one-way trips only; renormalized inside the draw
        int j = rng.categorical(w);
        od.emplace_back(i, j);
    }
    return od;
}

std::vector<int> placeVehicles(const GenConfig& cfg, const std::vector<Zone>& zones, Rng& rng) {
    const std::vector<double> p = zoneProbabilities(centerDistances(zones), cfg.alphaV);
    std::vector<int> placement;
    placement.reserve(static_cast<std::size_t>(cfg.nVehicles));
    for (int v = 0; v < cfg.nVehicles; ++v) placement.push_back(rng.categorical(p));
    return placement;
}

void synthesizeMobility(Instance& inst, const MobilityParams& params) {
    const int I = inst.numZones();
    auto minutes = [](double km, double kmh) { return km / kmh * 60.0; };

    Matrix dist = zeroMatrix(I);
    for (int i = 0; i < I; ++i)
        for (int j = 0; j < I; ++j)
            if (i != j) dist[i][j] = zoneDistanceKm(inst.zones[i], inst.zones[j]);

    CarsharingService cs;
    cs.perMinuteFee = params.perMinuteFee;
    cs.driveTime = zeroMatrix(I);
    cs.walkTime = zeroMatrix(I);
    cs.waitTime = zeroMatrix(I);
    for (int i = 0; i < I; ++i)
        for (int j = 0; j < I; ++j)
            if (i != j) {
                cs.driveTime[i][j] = minutes(dist[i][j], params.speedKmH);
                cs.walkTime[i][j] = params.csAccessWalkMin;
                cs.waitTime[i][j] = params.csWaitMin;
            }
    inst.carsharing = cs;

    AlternativeMode pt;
    pt.tag = "PT";
    pt.available.assign(static_cast<std::size_t>(I), 1);
    pt.price = zeroMatrix(I);
    pt.inVehicleTime = zeroMatrix(I);
    pt.bikeTime = zeroMatrix(I);
    pt.walkTime = zeroMatrix(I);
    pt.waitTime = zeroMatrix(I);
    AlternativeMode bike = pt, walk = pt;
    bike.tag = "B";
    walk.tag = "Walk";
    for (int i = 0; i < I; ++i)
        for (int j = 0; j < I; ++j)
            if (i != j) {
                pt.price[i][j] = params.ptFareEur;
                pt.inVehicleTime[i][j] = minutes(dist[i][j], params.ptSpeedKmH);
                pt.walkTime[i][j] = params.ptAccessWalkMin;
                pt.waitTime[i][j] = params.ptWaitMin;
                bike.bikeTime[i][j] = minutes(dist[i][j], params.bikeSpeedKmH);
                walk.walkTime[i][j] = minutes(dist[i][j], params.walkSpeedKmH);
            }
    inst.alternatives = {pt, bike, walk};

    CostModel costs;
    costs.fuelPriceEurPerLiter = params.fuelPriceEurPerLiter;
    costs.consumptionLiterPerKm = params.consumptionLiterPerKm;
    costs.driverSalaryEurPerMin = params.driverSalaryEurPerMin;
    costs.speedKmH = params.speedKmH;
    costs.usage = zeroMatrix(I);
    costs.relocation = zeroMatrix(I);
    for (int a = 0; a < I; ++a)
        for (int i = 0; i < I; ++i)
            if (a != i) {
                costs.usage[a][i] =
                    dist[a][i] * params.consumptionLiterPerKm * params.fuelPriceEurPerLiter;
                costs.relocation[a][i] =
                    costs.usage[a][i] + params.driverSalaryEurPerMin * cs.driveTime[a][i];
            }
    inst.costs = costs;
}

std::vector<CustomerProfile> drawProfiles(const GenConfig& cfg, Rng& rng) {
    // Base coefficients (per EUR / per minute); price sensitivity spans the
    // historical low/high value-of-money pair.
    constexpr double kPriceLow = -188.33, kPriceHigh = -70.63;
    constexpr double kCs = -1.0, kPt = -2.0, kBike = -2.5, kWalk = -3.0, kWait = -6.0;
    auto around = [&](double base) {
        // +-20% band; endpoints ordered by value (base is negative)
        return rng.uniform(1.2 * base, 0.8 * base);
    };
    std::vector<CustomerProfile> profiles(static_cast<std::size_t>(cfg.nCustomers));
    for (int k = 0; k < cfg.nCustomers; ++k) {
        CustomerProfile& c = profiles[static_cast<std::size_t>(k)];
        c.k = k;
        if (cfg.individualProfiles) {
            c.betaPrice = rng.uniform(kPriceLow, kPriceHigh);
            c.betaCs = around(kCs);
            c.betaPt = around(kPt);
            c.betaBike = around(kBike);
            c.betaWalk = around(kWalk);
            c.betaWait = around(kWait);
        } else {
            c.betaPrice = (rng.uniform01() < 0.5) ? kPriceHigh : kPriceLow;
            c.betaCs = kCs;
            c.betaPt = kPt;
            c.betaBike = kBike;
            c.betaWalk = kWalk;
            c.betaWait = kWait;
        }
    }
    return profiles;
}

double calibrateSigma(const Instance& inst) {
    std::vector<double> utilities;
    for (const CustomerProfile& c : inst.customers) {
        // carsharing priced with a zero drop-off fee
        double csPrice = inst.carsharing.perMinuteFee *
                         inst.carsharing.driveTime[c.origin][c.destination];
        utilities.push_back(deterministicUtility(inst, c, kCarsharingMode, csPrice));
        for (int a = 0; a < inst.numAlternatives(); ++a) {
            const AlternativeMode& alt = inst.alternatives[a];
            if (!alt.available[c.origin]) continue;
            utilities.push_back(
                deterministicUtility(inst, c, a, alt.price[c.origin][c.destination]));
        }
    }
    if (utilities.empty()) return 1e-9;
    const double n = static_cast<double>(utilities.size());
    const double mean = std::accumulate(utilities.begin(), utilities.end(), 0.0) / n;
    double var = 0.0;
    for (double u : utilities) var += (u - mean) * (u - mean);
    var /= n; // population variance
    return std::max(std::sqrt(var), 1e-9);
}

std::vector<Scenario> sampleScenarios(const Instance& inst, int nScenarios, Rng& rng) {
    if (nScenarios <= 0) throw std::invalid_argument("sampleScenarios: need nScenarios > 0");
    const double scale = inst.sigma * std::sqrt(6.0) / kPi;
    const double location = -kEulerMascheroni * scale; // mean 0
    const int K = inst.numCustomers();
    const int M = 1 + inst.numAlternatives(); // mode 0 = carsharing
    std::vector<Scenario> scenarios(static_cast<std::size_t>(nScenarios));
    for (Scenario& s : scenarios) {
        s.weight = 1.0 / static_cast<double>(nScenarios);
        s.draws.assign(static_cast<std::size_t>(K), std::vector<double>(M, 0.0));
        for (int k = 0; k < K; ++k)
            for (int m = 0; m < M; ++m) s.draws[k][m] = rng.gumbel(location, scale);
    }
    return scenarios;
}

std::pair<Instance, std::vector<Scenario>> generate(const GenConfig& cfg,
                                                    const MobilityParams& params) {
    checkConfig(cfg);
    Instance inst;
    inst.feeLadder = cfg.feeLadder;

    Rng zoneRng = Rng::stream(cfg.seed, 0);
    inst.zones = synthesizeZones(cfg, params, zoneRng);
    synthesizeMobility(inst, params);

    Rng customerRng = Rng::stream(cfg.seed, 1);
    const auto od = partitionCustomers(cfg, inst.zones, customerRng);
    Rng vehicleRng = Rng::stream(cfg.seed, 2);
    const auto placement = placeVehicles(cfg, inst.zones, vehicleRng);
    Rng profileRng = Rng::stream(cfg.seed, 3);
    inst.customers = drawProfiles(cfg, profileRng);
    for (int k = 0; k < cfg.nCustomers; ++k) {
        inst.customers[static_cast<std::size_t>(k)].origin = od[static_cast<std::size_t>(k)].first;
        inst.customers[static_cast<std::size_t>(k)].destination =
            od[static_cast<std::size_t>(k)].second;
    }
    inst.vehicles.resize(static_cast<std::size_t>(cfg.nVehicles));
    for (int v = 0; v < cfg.nVehicles; ++v)
        inst.vehicles[static_cast<std::size_t>(v)] = {v, placement[static_cast<std::size_t>(v)]};

    inst.sigma = calibrateSigma(inst);

    Rng scenarioRng = Rng::stream(cfg.seed, 4);
    std::vector<Scenario> scenarios = sampleScenarios(inst, cfg.nScenarios, scenarioRng);

    const auto violations = validate(inst);
    if (!violations.empty())
        throw std::logic_error("generate: produced an invalid instance: " + violations.front());
    return {std::move(inst), std::move(scenarios)};
}

} // namespace csopt
