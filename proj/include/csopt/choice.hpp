#pragma once

#include "csopt/domain.hpp"

namespace csopt {

// Mode handle: kCarsharingMode or an index into Instance::alternatives.
constexpr int kCarsharingMode = -1;

// Walking/biking discomfort grows in 10-minute blocks.
double tau(double minutes);

// Rental price of a carsharing trip i -> j at the given fee ladder index:
// per-minute fee times drive time plus the drop-off fee (possibly negative).
double carsharingPrice(const Instance& inst, int i, int j, int levelIndex);

// Deterministic part of the customer's utility for one mode at the given price.
double deterministicUtility(const Instance& inst, const CustomerProfile& profile, int mode,
                            double price);

// Utility including the scenario's taste shock for (customer, mode).
double scenarioUtility(const Instance& inst, const Scenario& scenario,
                       const CustomerProfile& profile, int mode, double price);

// Best taste-shocked utility among alternatives available at the customer's
// origin; -infinity if none (rejected by the validator).
double bestAlternativeUtility(const Instance& inst, const Scenario& scenario,
                              const CustomerProfile& profile);

// Preprocesses the scenario into the request set: a customer requests iff some
// fee level makes carsharing strictly better than every available alternative;
// maxLevel is the highest such level, revenues filled for levels 0..maxLevel.
// Independent of the first-stage decision.
RequestSet computeRequests(const Instance& inst, const Scenario& scenario);

struct ChoiceOutcome {
    std::vector<int> chosenMode;    // per customer: kCarsharingMode or alternative index
    std::vector<int> vehicleUsed;   // per customer: vehicle id, -1 if not carsharing
    std::vector<double> utility;    // attained taste-shocked utility
    // carsharing pickups as (vehicle, customer k, posted level) triples
    std::vector<Assignment> pickups;
};

// Direct simulation oracle: customers arrive in index order, pick the best
// taste-shocked option among available alternatives plus carsharing when a
// vehicle remains in their origin zone (at the posted fee; strict preference
// required), and the lowest-id vehicle is taken.
ChoiceOutcome simulateChoices(const Instance& inst, const Scenario& scenario,
                              const FirstStageSolution& firstStage);

} // namespace csopt
