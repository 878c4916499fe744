#include "csopt/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace csopt {

using nlohmann::json;

namespace {

json matrixToJson(const Matrix& m) {
    json out = json::array();
    for (const auto& row : m) out.push_back(row);
    return out;
}

Matrix matrixFromJson(const json& j) {
    Matrix m;
    for (const auto& row : j) m.push_back(row.get<std::vector<double>>());
    return m;
}

} // namespace

std::string instanceToJson(const Instance& inst, int indent) {
    json j;
    j["zones"] = json::array();
    for (const Zone& z : inst.zones)
        j["zones"].push_back({{"id", z.id}, {"coord", {z.x, z.y}}, {"centerDistanceKm", z.centerDistanceKm}});

    j["customers"] = json::array();
    for (const CustomerProfile& c : inst.customers)
        j["customers"].push_back({{"k", c.k},
                                  {"origin", c.origin},
                                  {"destination", c.destination},
                                  {"beta", {{"price", c.betaPrice},
                                            {"cs", c.betaCs},
                                            {"pt", c.betaPt},
                                            {"bike", c.betaBike},
                                            {"walk", c.betaWalk},
                                            {"wait", c.betaWait}}}});

    j["vehicles"] = json::array();
    for (const Vehicle& v : inst.vehicles)
        j["vehicles"].push_back({{"id", v.id}, {"initialZone", v.initialZone}});

    j["alternatives"] = json::array();
    for (const AlternativeMode& a : inst.alternatives)
        j["alternatives"].push_back({{"tag", a.tag},
                                     {"available", a.available},
                                     {"price", matrixToJson(a.price)},
                                     {"inVehicleTime", matrixToJson(a.inVehicleTime)},
                                     {"bikeTime", matrixToJson(a.bikeTime)},
                                     {"walkTime", matrixToJson(a.walkTime)},
                                     {"waitTime", matrixToJson(a.waitTime)}});

    j["carsharing"] = {{"perMinuteFee", inst.carsharing.perMinuteFee},
                       {"driveTime", matrixToJson(inst.carsharing.driveTime)},
                       {"walkTime", matrixToJson(inst.carsharing.walkTime)},
                       {"waitTime", matrixToJson(inst.carsharing.waitTime)}};

    j["feeLadder"] = inst.feeLadder;

    j["costs"] = {{"relocation", matrixToJson(inst.costs.relocation)},
                  {"usage", matrixToJson(inst.costs.usage)},
                  {"fuelPriceEurPerLiter", inst.costs.fuelPriceEurPerLiter},
                  {"consumptionLiterPerKm", inst.costs.consumptionLiterPerKm},
                  {"driverSalaryEurPerMin", inst.costs.driverSalaryEurPerMin},
                  {"speedKmH", inst.costs.speedKmH}};

    j["sigma"] = inst.sigma;
    return j.dump(indent);
}

Instance instanceFromJson(const std::string& text) {
    json j = json::parse(text);
    Instance inst;

    for (const auto& jz : j.at("zones")) {
        Zone z;
        z.id = jz.at("id").get<int>();
        z.x = jz.at("coord").at(0).get<double>();
        z.y = jz.at("coord").at(1).get<double>();
        z.centerDistanceKm = jz.at("centerDistanceKm").get<double>();
        inst.zones.push_back(z);
    }

    for (const auto& jc : j.at("customers")) {
        CustomerProfile c;
        c.k = jc.at("k").get<int>();
        c.origin = jc.at("origin").get<int>();
        c.destination = jc.at("destination").get<int>();
        const auto& b = jc.at("beta");
        c.betaPrice = b.at("price").get<double>();
        c.betaCs = b.at("cs").get<double>();
        c.betaPt = b.at("pt").get<double>();
        c.betaBike = b.at("bike").get<double>();
        c.betaWalk = b.at("walk").get<double>();
        c.betaWait = b.at("wait").get<double>();
        inst.customers.push_back(c);
    }

    for (const auto& jv : j.at("vehicles")) {
        Vehicle v;
        v.id = jv.at("id").get<int>();
        v.initialZone = jv.at("initialZone").get<int>();
        inst.vehicles.push_back(v);
    }

    for (const auto& ja : j.at("alternatives")) {
        AlternativeMode a;
        a.tag = ja.at("tag").get<std::string>();
        a.available = ja.at("available").get<std::vector<int>>();
        a.price = matrixFromJson(ja.at("price"));
        a.inVehicleTime = matrixFromJson(ja.at("inVehicleTime"));
        a.bikeTime = matrixFromJson(ja.at("bikeTime"));
        a.walkTime = matrixFromJson(ja.at("walkTime"));
        a.waitTime = matrixFromJson(ja.at("waitTime"));
        inst.alternatives.push_back(a);
    }

    const auto& jcs = j.at("carsharing");
    inst.carsharing.perMinuteFee = jcs.at("perMinuteFee").get<double>();
    inst.carsharing.driveTime = matrixFromJson(jcs.at("driveTime"));
    inst.carsharing.walkTime = matrixFromJson(jcs.at("walkTime"));
    inst.carsharing.waitTime = matrixFromJson(jcs.at("waitTime"));

    inst.feeLadder = j.at("feeLadder").get<std::vector<double>>();

    const auto& jco = j.at("costs");
    inst.costs.relocation = matrixFromJson(jco.at("relocation"));
    inst.costs.usage = matrixFromJson(jco.at("usage"));
    inst.costs.fuelPriceEurPerLiter = jco.at("fuelPriceEurPerLiter").get<double>();
    inst.costs.consumptionLiterPerKm = jco.at("consumptionLiterPerKm").get<double>();
    inst.costs.driverSalaryEurPerMin = jco.at("driverSalaryEurPerMin").get<double>();
    inst.costs.speedKmH = jco.at("speedKmH").get<double>();

    inst.sigma = j.at("sigma").get<double>();
    return inst;
}

std::string scenariosToJson(const std::vector<Scenario>& scenarios, int indent) {
    json arr = json::array();
    for (const Scenario& s : scenarios) {
        json js;
        js["draws"] = json::array();
        for (const auto& perMode : s.draws) js["draws"].push_back(perMode);
        js["weight"] = s.weight;
        arr.push_back(std::move(js));
    }
    return arr.dump(indent);
}

std::vector<Scenario> scenariosFromJson(const std::string& text) {
    json arr = json::parse(text);
    std::vector<Scenario> out;
    for (const auto& js : arr) {
        Scenario s;
        for (const auto& row : js.at("draws")) s.draws.push_back(row.get<std::vector<double>>());
        s.weight = js.at("weight").get<double>();
        out.push_back(std::move(s));
    }
    return out;
}

std::string solutionToJson(const Instance& inst, const FirstStageSolution& sol, int indent) {
    json j;
    j["placement"] = sol.placement;
    j["fees"] = json::array();
    json feeValues = json::array();
    for (const auto& row : sol.fees) {
        j["fees"].push_back(row);
        std::vector<double> vals;
        for (int l : row) vals.push_back(inst.feeLadder.at(static_cast<std::size_t>(l)));
        feeValues.push_back(vals);
    }
    j["feeValues"] = feeValues; // convenience mirror of fees through the ladder
    return j.dump(indent);
}

FirstStageSolution solutionFromJson(const std::string& text) {
    json j = json::parse(text);
    FirstStageSolution sol;
    sol.placement = j.at("placement").get<std::vector<int>>();
    for (const auto& row : j.at("fees")) sol.fees.push_back(row.get<std::vector<int>>());
    return sol;
}

std::string reportToJson(const SolveReport& report, int indent) {
    json j;
    auto finiteOrNull = [](double v) -> json {
        if (std::isfinite(v)) return v;
        return nullptr; // JSON has no infinity; null is the documented sentinel
    };
    j["bestInteger"] = finiteOrNull(report.bestInteger);
    j["bestBound"] = finiteOrNull(report.bestBound);
    j["gapPercent"] = finiteOrNull(report.gapPercent);
    j["gapRootPercent"] = finiteOrNull(report.gapRootPercent);
    j["gapHalfTimePercent"] =
        report.gapHalfTimePercent ? finiteOrNull(*report.gapHalfTimePercent) : json(nullptr);
    j["elapsedSec"] = report.elapsedSec;
    j["nodeCount"] = report.nodeCount;
    j["cuts"] = {{"optimality", report.cuts.optimality},
                 {"relaxation", report.cuts.relaxation},
                 {"validInequality", report.cuts.validInequality}};
    j["seed"] = report.seed;
    j["status"] = report.status;
    j["incumbentTrace"] = report.incumbentTrace;
    if (!report.incumbent.placement.empty()) {
        j["incumbent"] = {{"placement", report.incumbent.placement}, {"fees", report.incumbent.fees}};
    }
    return j.dump(indent);
}

std::string genConfigToJson(const GenConfig& cfg, int indent) {
    json j;
    j["zones"] = cfg.nZones;
    j["customers"] = cfg.nCustomers;
    j["vehicles"] = cfg.nVehicles;
    j["scenarios"] = cfg.nScenarios;
    j["alphaFrom"] = cfg.alphaFrom;
    j["alphaTo"] = cfg.alphaTo;
    j["alphaV"] = cfg.alphaV;
    j["individualProfiles"] = cfg.individualProfiles;
    j["feeLadder"] = cfg.feeLadder;
    j["seed"] = cfg.seed;
    return j.dump(indent);
}

GenConfig genConfigFromJson(const std::string& text) {
    json j = json::parse(text);
    GenConfig cfg;
    static const char* known[] = {"zones",  "customers",          "vehicles",  "scenarios",
                                  "alphaFrom", "alphaTo",         "alphaV",
                                  "individualProfiles", "feeLadder", "seed"};
    for (const auto& [key, value] : j.items()) {
        (void)value;
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw std::invalid_argument("genConfigFromJson: unknown key " + key);
    }
    if (j.contains("zones")) cfg.nZones = j.at("zones").get<int>();
    if (j.contains("customers")) cfg.nCustomers = j.at("customers").get<int>();
    if (j.contains("vehicles")) cfg.nVehicles = j.at("vehicles").get<int>();
    if (j.contains("scenarios")) cfg.nScenarios = j.at("scenarios").get<int>();
    if (j.contains("alphaFrom")) cfg.alphaFrom = j.at("alphaFrom").get<double>();
    if (j.contains("alphaTo")) cfg.alphaTo = j.at("alphaTo").get<double>();
    if (j.contains("alphaV")) cfg.alphaV = j.at("alphaV").get<double>();
    if (j.contains("individualProfiles"))
        cfg.individualProfiles = j.at("individualProfiles").get<bool>();
    if (j.contains("feeLadder")) cfg.feeLadder = j.at("feeLadder").get<std::vector<double>>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    return cfg;
}

std::string requestSetToJson(const RequestSet& rs, int indent) {
    json arr = json::array();
    for (const Request& r : rs.requests) {
        json jr;
        jr["customer"] = r.kOf;
        jr["origin"] = r.origin;
        jr["destination"] = r.destination;
        jr["maxLevel"] = r.maxLevel;
        jr["revenue"] = r.revenue;
        arr.push_back(std::move(jr));
    }
    json j;
    j["requests"] = std::move(arr);
    return j.dump(indent);
}

void writeTextFile(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string readTextFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace csopt
