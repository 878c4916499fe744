#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace csopt {

using Matrix = std::vector<std::vector<double>>; // row-major, indexed by zone id

struct Zone {
    int id = 0;
    double x = 0.0, y = 0.0;      // km, planar
    double centerDistanceKm = 0.0; // distance from the city reference point, > 0
};

// A mobility alternative (public transport, bicycle, ...). Times in minutes,
// prices in EUR, all matrices indexed [origin][destination].
struct AlternativeMode {
    std::string tag;                 // e.g. "PT", "B"
    std::vector<int> available;      // per origin zone, 0/1
    Matrix price;
    Matrix inVehicleTime;            // the mode-specific in-vehicle / ride time
    Matrix bikeTime;                 // riding time when the mode is a bicycle
    Matrix walkTime;
    Matrix waitTime;
};

struct CarsharingService {
    double perMinuteFee = 0.0;       // EUR per rental minute
    Matrix driveTime;                // minutes
    Matrix walkTime;                 // minutes to reach the vehicle
    Matrix waitTime;                 // minutes
};

// Drop-off fee ladder, strictly increasing EUR values (may be negative = rebate).
using FeeLadder = std::vector<double>;

struct CustomerProfile {
    int k = 0;                       // arrival index, 0-based, also the array position
    int origin = 0;
    int destination = 0;
    double betaPrice = 0.0;          // all betas <= 0
    double betaCs = 0.0;
    double betaPt = 0.0;
    double betaBike = 0.0;
    double betaWalk = 0.0;
    double betaWait = 0.0;
};

struct Vehicle {
    int id = 0;
    int initialZone = 0;
};

struct CostModel {
    Matrix relocation;               // EUR, [from zone][to zone], diagonal 0
    Matrix usage;                    // EUR, operator cost of a customer trip [i][j]
    double fuelPriceEurPerLiter = 0.0;
    double consumptionLiterPerKm = 0.0;
    double driverSalaryEurPerMin = 0.0;
    double speedKmH = 0.0;
};

struct Instance {
    std::vector<Zone> zones;
    std::vector<CustomerProfile> customers;
    std::vector<Vehicle> vehicles;
    std::vector<AlternativeMode> alternatives;
    CarsharingService carsharing;
    FeeLadder feeLadder;
    CostModel costs;
    double sigma = 0.0;              // calibrated taste-shock std deviation

    int numZones() const { return static_cast<int>(zones.size()); }
    int numCustomers() const { return static_cast<int>(customers.size()); }
    int numVehicles() const { return static_cast<int>(vehicles.size()); }
    int numLevels() const { return static_cast<int>(feeLadder.size()); }
    int numAlternatives() const { return static_cast<int>(alternatives.size()); }
};

// One scenario: a taste-shock draw per (customer, mode). Mode index 0 is
// carsharing, then the alternatives in instance order. weight is the
// probability mass of the scenario.
struct Scenario {
    std::vector<std::vector<double>> draws; // [customer][mode]
    double weight = 0.0;
};

// A carsharing request revealed by a scenario: customer kOf wants to ride
// (origin -> destination) and accepts any fee level with value <= the value at
// maxLevel. revenue[l] is the operator profit of serving it at ladder index l,
// defined for l = 0..maxLevel.
struct Request {
    int kOf = 0;
    int origin = 0;
    int destination = 0;
    int maxLevel = 0;
    std::vector<double> revenue;
};

struct RequestSet {
    std::vector<Request> requests;               // sorted by kOf ascending
    // earlier-request indices with the same origin, per request (arrival precedence)
    std::vector<std::vector<int>> precedingSameOrigin;

    int size() const { return static_cast<int>(requests.size()); }
};

struct FirstStageSolution {
    std::vector<int> placement;        // vehicle -> zone
    std::vector<std::vector<int>> fees; // [i][j] -> fee ladder index posted on the OD
};

struct Assignment {
    int vehicle = 0;
    int request = 0;   // index into RequestSet::requests
    int level = 0;     // fee ladder index the ride is billed at
};

struct RecourseSolution {
    std::vector<Assignment> assignments;
    double value = 0.0;
};

enum class CutKind { Optimality, Relaxation };

// A scenario cut phi_s <= sum coefZ.z + sum coefLambda.lambda + constant, stored
// sparsely over first-stage columns.
struct Cut {
    CutKind kind = CutKind::Optimality;
    int scenario = 0;
    std::vector<std::pair<int, double>> zTerms;      // (vehicle*I + zone, coeff)
    std::vector<std::pair<int, double>> lambdaTerms; // ((i*I + j)*L + l, coeff)
    double constant = 0.0;
};

struct CutCounts {
    long optimality = 0;
    long relaxation = 0;
    long validInequality = 0;
};

struct SolveReport {
    double bestInteger = -std::numeric_limits<double>::infinity();
    double bestBound = std::numeric_limits<double>::infinity();
    double gapPercent = std::numeric_limits<double>::infinity();
    double gapRootPercent = std::numeric_limits<double>::infinity();
    std::optional<double> gapHalfTimePercent; // absent when solved before timeLimit/2
    double elapsedSec = 0.0;
    long nodeCount = 0;
    CutCounts cuts;
    std::uint64_t seed = 0;
    std::string status;                // "optimal", "gapLimit", "timeLimit", "noIncumbent"
    FirstStageSolution incumbent;
    std::vector<double> incumbentTrace; // successive incumbent values, nondecreasing
};

// Structural validation; returns one message per violation, empty when valid.
std::vector<std::string> validate(const Instance& inst);

// Euclidean helper used by generation and tests.
double zoneDistanceKm(const Zone& a, const Zone& b);

} // namespace csopt
