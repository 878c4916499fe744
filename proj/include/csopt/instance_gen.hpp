#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "csopt/domain.hpp"
#include "csopt/rng.hpp"

namespace csopt {

// Knobs of the synthetic-city generator.
struct GenConfig {
    int nZones = 10;
    int nCustomers = 200;
    int nVehicles = 50;
    int nScenarios = 10;
    double alphaFrom = 0.2; // centrality pull of trip origins
    double alphaTo = 0.2;   // centrality pull of trip destinations
    double alphaV = 0.2;    // centrality pull of initial vehicle placement
    bool individualProfiles = false;
    FeeLadder feeLadder = {-2.0, -1.0, 0.0, 1.0, 2.0};
    std::uint64_t seed = 1;
};

// Physical / tariff parameters of the synthesized mobility system. Defaults
// model a mid-size European city: 50 km/h shared-car speed, 1.60 EUR/l fuel,
// 0.058 l/km consumption, 0.20 EUR/min relocation driver salary, 2 EUR flat
// transit fare, 0.265 EUR/min rental fee.
struct MobilityParams {
    double speedKmH = 50.0;   // shared car
    double ptSpeedKmH = 25.0; // public transport
    double bikeSpeedKmH = 15.0;
    double walkSpeedKmH = 4.5;
    double ptFareEur = 2.0;
    double ptWaitMin = 5.0;
    double ptAccessWalkMin = 5.0;
    double csAccessWalkMin = 3.0; // walk to reach the shared car
    double csWaitMin = 0.0;       // shared cars are ready on arrival
    double perMinuteFee = 0.265;
    double fuelPriceEurPerLiter = 1.60;
    double consumptionLiterPerKm = 0.058;
    double driverSalaryEurPerMin = 0.20;
    double diskRadiusKm = 5.0;        // zones are scattered in this disk
    double minCenterDistanceKm = 0.15; // keeps center distances positive
};

// Centrality-weighted zone distribution: pi_i = gamma_i d_i / sum, with
// gamma_i = exp(-alpha * (d_i - mean d)). Throws on non-positive distances.
std::vector<double> zoneProbabilities(const std::vector<double>& distances, double alpha);

// Zone coordinates scattered uniformly in a disk around the city center.
std::vector<Zone> synthesizeZones(const GenConfig& cfg, const MobilityParams& params, Rng& rng);

// One (origin, destination) pair per customer; origin weighted by alphaFrom,
// destination by alphaTo with the origin excluded and weights renormalized.
std::vector<std::pair<int, int>> partitionCustomers(const GenConfig& cfg,
                                                    const std::vector<Zone>& zones, Rng& rng);

// Initial zone per vehicle, weighted by alphaV.
std::vector<int> placeVehicles(const GenConfig& cfg, const std::vector<Zone>& zones, Rng& rng);

// Fills inst.carsharing, inst.alternatives (PT, bicycle, walk; all available
// everywhere) and inst.costs from inst.zones and the parameters.
void synthesizeMobility(Instance& inst, const MobilityParams& params);

// Taste coefficients per customer (origin/destination left to the caller).
// Identical mode: fixed betas, price sensitivity -70.63 or -188.33 with equal
// probability. Individual mode: price uniform on [-188.33, -70.63], every
// other beta uniform within +-20% of its base value.
std::vector<CustomerProfile> drawProfiles(const GenConfig& cfg, Rng& rng);

// Population standard deviation of the deterministic utilities over every
// (customer, mode available at the customer's origin) combination, carsharing
// priced at a zero drop-off fee; floored at 1e-9.
double calibrateSigma(const Instance& inst);

// iid Gumbel taste shocks with mean 0 and std inst.sigma, one per
// (customer, mode); mode 0 is carsharing. Every scenario has weight 1/n.
std::vector<Scenario> sampleScenarios(const Instance& inst, int nScenarios, Rng& rng);

// Full pipeline: zones -> mobility -> customers -> vehicles -> profiles ->
// sigma -> scenarios, each stage on its own derived random stream.
std::pair<Instance, std::vector<Scenario>> generate(const GenConfig& cfg,
                                                    const MobilityParams& params = {});

} // namespace csopt
