#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <string>

#include "csopt/domain.hpp"
#include "csopt/rng.hpp"
#include "test_util.hpp"

using namespace csopt;

namespace {

bool mentions(const std::vector<std::string>& issues, const std::string& needle) {
    return std::any_of(issues.begin(), issues.end(), [&](const std::string& s) {
        return s.find(needle) != std::string::npos;
    });
}

Instance valid() {
    Rng rng(100);
    return testutil::randomInstance(rng, {3, 4, 2, 3});
}

} // namespace

TEST_CASE("factory instances validate cleanly") {
    Rng rng(1);
    for (int rep = 0; rep < 20; ++rep) {
        const Instance inst = testutil::randomInstance(
            rng, {2 + rng.below(4), 1 + rng.below(8), 1 + rng.below(5), 1 + rng.below(4)});
        CHECK(validate(inst).empty());
    }
}

TEST_CASE("zone distance is Euclidean") {
    Zone a, b;
    a.x = 1.0;
    a.y = 2.0;
    b.x = 4.0;
    b.y = 6.0;
    CHECK(zoneDistanceKm(a, b) == doctest::Approx(5.0));
    CHECK(zoneDistanceKm(a, a) == doctest::Approx(0.0));
}

TEST_CASE("round trips are flagged") {
    Instance inst = valid();
    inst.customers[0].destination = inst.customers[0].origin;
    CHECK(mentions(validate(inst), "round trip forbidden"));
}

TEST_CASE("non-positive center distance is flagged") {
    Instance inst = valid();
    inst.zones[1].centerDistanceKm = 0.0;
    CHECK(mentions(validate(inst), "non-positive center distance"));
}

TEST_CASE("fee ladder must increase strictly") {
    Instance inst = valid();
    inst.feeLadder[1] = inst.feeLadder[0];
    CHECK(mentions(validate(inst), "strictly increasing"));
    inst.feeLadder.clear();
    CHECK(mentions(validate(inst), "empty"));
}

TEST_CASE("positive taste coefficients are flagged") {
    Instance inst = valid();
    inst.customers[2].betaWalk = 0.3;
    CHECK(mentions(validate(inst), "positive taste coefficient"));
}

TEST_CASE("closed market: some alternative must exist at every origin") {
    Instance inst = valid();
    for (AlternativeMode& alt : inst.alternatives)
        alt.available[static_cast<std::size_t>(inst.customers[0].origin)] = 0;
    CHECK(mentions(validate(inst), "closed market"));
}

TEST_CASE("relocation diagonal and sign are checked") {
    Instance inst = valid();
    inst.costs.relocation[1][1] = 0.5;
    CHECK(mentions(validate(inst), "diagonal must be zero"));
    inst = valid();
    inst.costs.relocation[0][1] = -1.0;
    CHECK(mentions(validate(inst), "negative relocation cost"));
}

TEST_CASE("id ordering is checked") {
    Instance inst = valid();
    std::swap(inst.vehicles[0], inst.vehicles[1]);
    CHECK(mentions(validate(inst), "vehicle ids must be contiguous"));
    inst = valid();
    inst.zones[0].id = 7;
    CHECK(mentions(validate(inst), "zone ids must be contiguous"));
}

TEST_CASE("matrix shape mismatches are flagged") {
    Instance inst = valid();
    inst.carsharing.driveTime.pop_back();
    CHECK(mentions(validate(inst), "driveTime matrix shape mismatch"));
    inst = valid();
    inst.alternatives[0].price[0].pop_back();
    CHECK(mentions(validate(inst), "matrix shape mismatch"));
}

TEST_CASE("negative sigma is flagged") {
    Instance inst = valid();
    inst.sigma = -0.1;
    CHECK(mentions(validate(inst), "negative sigma"));
}
