#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "csopt/choice.hpp"
#include "csopt/extensive.hpp"
#include "csopt/recourse.hpp"
#include "csopt/rng.hpp"
#include "test_util.hpp"

using namespace csopt;

namespace {

// Minimal reference MPS reader used to round-trip the export. Token-based:
// the writer never puts blanks inside names, so whitespace splitting is exact.
struct MpsData {
    std::string name;
    bool sawMaximizeComment = false;
    bool sawEndata = false;
    std::vector<std::pair<char, std::string>> rows; // excluding the N row
    std::string objRow;
    std::map<std::string, std::map<std::string, double>> cols; // col -> row -> coef
    std::map<std::string, double> rhs;
    std::set<std::string> binary;
    std::map<std::string, double> lower, upper;
    std::set<std::string> freeBelow; // MI bounds
};

MpsData readMps(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    MpsData data;
    std::string line, section;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '*') {
            if (line.find("OBJSENSE MAXIMIZE") != std::string::npos)
                data.sawMaximizeComment = true;
            continue;
        }
        std::istringstream ss(line);
        if (line[0] != ' ') {
            std::string head;
            ss >> head;
            if (head == "NAME") {
                ss >> data.name;
            } else if (head == "ENDATA") {
                data.sawEndata = true;
            } else {
                section = head;
            }
            continue;
        }
        std::vector<std::string> tok;
        for (std::string t; ss >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        if (section == "ROWS") {
            REQUIRE(tok.size() == 2);
            if (tok[0] == "N")
                data.objRow = tok[1];
            else
                data.rows.push_back({tok[0][0], tok[1]});
        } else if (section == "COLUMNS") {
            REQUIRE(tok.size() >= 3);
            REQUIRE(tok.size() % 2 == 1);
            for (std::size_t e = 1; e + 1 <= tok.size(); e += 2)
                data.cols[tok[0]][tok[e]] = std::stod(tok[e + 1]);
        } else if (section == "RHS") {
            REQUIRE(tok.size() >= 3);
            REQUIRE(tok.size() % 2 == 1);
            for (std::size_t e = 1; e + 1 <= tok.size(); e += 2)
                data.rhs[tok[e]] = std::stod(tok[e + 1]);
        } else if (section == "BOUNDS") {
            REQUIRE(tok.size() >= 3);
            const std::string& kind = tok[0];
            REQUIRE(tok[1] == "BND");
            if (kind == "BV")
                data.binary.insert(tok[2]);
            else if (kind == "UP")
                data.upper[tok[2]] = std::stod(tok[3]);
            else if (kind == "LO")
                data.lower[tok[2]] = std::stod(tok[3]);
            else if (kind == "MI")
                data.freeBelow.insert(tok[2]);
            else
                FAIL("unexpected bound kind ", kind);
        } else {
            FAIL("tokens outside a known section: ", line);
        }
    }
    return data;
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-5 * (1.0 + std::abs(b)); }

} // namespace

TEST_CASE("scenario-expanded model has the documented shape") {
    Rng rng(61);
    const Instance inst = testutil::randomInstance(rng, {2, 3, 2, 2});
    const auto scenarios = testutil::randomScenarios(rng, inst, 2);
    const SaaModel m = buildSAA(inst, scenarios);

    const int I = 2, V = 2, L = 2;
    CHECK(m.zColumns == V * I);
    CHECK(m.lambdaColumns == I * I * L);

    long wantY = 0, extraRows = 0;
    for (const Scenario& s : scenarios) {
        const RequestSet rs = computeRequests(inst, s);
        long levels = 0;
        for (const Request& r : rs.requests) levels += r.maxLevel + 1;
        wantY += V * levels;
        extraRows += rs.size()        // request served at most once
                     + V              // vehicle used at most once
                     + rs.size() * V  // placement / precedence
                     + V * levels     // forced service
                     + levels;        // posted level only
    }
    CHECK(m.yColumns == wantY);
    CHECK(m.lp.numCols == m.zColumns + m.lambdaColumns + m.yColumns);
    CHECK(static_cast<long>(m.lp.rows.size()) == V + I * I + extraRows);
    CHECK(static_cast<long>(m.binaryCols.size()) == m.lp.numCols); // all-binary model
    CHECK(m.colNames.size() == static_cast<std::size_t>(m.lp.numCols));
    CHECK(m.rowNames.size() == m.lp.rows.size());

    // names unique and at most 8 characters
    std::set<std::string> names(m.colNames.begin(), m.colNames.end());
    names.insert(m.rowNames.begin(), m.rowNames.end());
    CHECK(names.size() == m.colNames.size() + m.rowNames.size());
    for (const std::string& n : names) CHECK(n.size() <= 8);

    // first-stage objective carries the relocation cost, y columns the revenue
    for (int v = 0; v < V; ++v)
        for (int i = 0; i < I; ++i)
            CHECK(m.lp.objective[static_cast<std::size_t>(v * I + i)] ==
                  doctest::Approx(-inst.costs.relocation[inst.vehicles[static_cast<std::size_t>(v)]
                                                             .initialZone][i]));
    for (long c = m.zColumns; c < m.zColumns + m.lambdaColumns; ++c)
        CHECK(m.lp.objective[static_cast<std::size_t>(c)] == 0.0);
}

TEST_CASE("a greedy schedule is feasible for the scenario-expanded rows") {
    Rng rng(62);
    for (int rep = 0; rep < 40; ++rep) {
        const Instance inst =
            testutil::randomInstance(rng, {2, 1 + rng.below(4), 1 + rng.below(2), 1 + rng.below(2)});
        const auto scenarios = testutil::randomScenarios(rng, inst, 1 + rng.below(2));
        const SaaModel m = buildSAA(inst, scenarios);
        const FirstStageSolution fs = testutil::randomFirstStage(rng, inst);
        const int I = inst.numZones(), V = inst.numVehicles(), L = inst.numLevels();

        std::vector<double> x(static_cast<std::size_t>(m.lp.numCols), 0.0);
        for (int v = 0; v < V; ++v)
            x[static_cast<std::size_t>(v * I + fs.placement[static_cast<std::size_t>(v)])] = 1.0;
        for (int i = 0; i < I; ++i)
            for (int j = 0; j < I; ++j)
                x[static_cast<std::size_t>(V * I + (i * I + j) * L +
                                           fs.fees[static_cast<std::size_t>(i)]
                                                  [static_cast<std::size_t>(j)])] = 1.0;

        double objective = 0.0;
        long yCursor = V * I + I * I * L;
        for (const Scenario& s : scenarios) {
            const RequestSet rs = computeRequests(inst, s);
            std::vector<long> base(static_cast<std::size_t>(rs.size()));
            for (int r = 0; r < rs.size(); ++r) {
                base[static_cast<std::size_t>(r)] = yCursor;
                yCursor += static_cast<long>(V) *
                           (rs.requests[static_cast<std::size_t>(r)].maxLevel + 1);
            }
            const RecourseSolution greedy = greedyRecourse(inst, rs, fs);
            objective += s.weight * greedy.value;
            for (const Assignment& a : greedy.assignments) {
                const Request& req = rs.requests[static_cast<std::size_t>(a.request)];
                x[static_cast<std::size_t>(base[static_cast<std::size_t>(a.request)] +
                                           static_cast<long>(a.vehicle) * (req.maxLevel + 1) +
                                           a.level)] = 1.0;
            }
        }
        REQUIRE(yCursor == m.lp.numCols);

        for (const auto& row : m.lp.rows) {
            double act = 0.0;
            for (const auto& [c, v] : row.coeffs) act += v * x[static_cast<std::size_t>(c)];
            if (row.rel == lp::Rel::LE) CHECK(act <= row.rhs + 1e-9);
            if (row.rel == lp::Rel::GE) CHECK(act >= row.rhs - 1e-9);
            if (row.rel == lp::Rel::EQ) CHECK(act == doctest::Approx(row.rhs).epsilon(1e-9));
        }

        for (int v = 0; v < V; ++v)
            objective -= inst.costs.relocation[inst.vehicles[static_cast<std::size_t>(v)]
                                                   .initialZone]
                                              [fs.placement[static_cast<std::size_t>(v)]];
        double lpObjective = 0.0;
        for (int c = 0; c < m.lp.numCols; ++c)
            lpObjective += m.lp.objective[static_cast<std::size_t>(c)] *
                           x[static_cast<std::size_t>(c)];
        CHECK(lpObjective == doctest::Approx(objective).epsilon(1e-9));
    }
}

TEST_CASE("the continuous relaxation bounds the enumerated optimum") {
    Rng rng(63);
    for (int rep = 0; rep < 8; ++rep) {
        const Instance inst = testutil::randomInstance(rng, {2, 1 + rng.below(3), 1, 2});
        const auto scenarios = testutil::randomScenarios(rng, inst, 1 + rng.below(2));
        const SaaModel m = buildSAA(inst, scenarios);
        const lp::LpResult relax = lp::solve(m.lp);
        REQUIRE(relax.status == lp::LpStatus::Optimal);
        const BruteResult exact = bruteForceSolveNested(inst, scenarios);
        CHECK(relax.objective >= exact.objective - 1e-6);
    }
}

TEST_CASE("greedy-backed and recursion-backed enumeration agree") {
    Rng rng(64);
    for (int rep = 0; rep < 12; ++rep) {
        const Instance inst =
            testutil::randomInstance(rng, {2, 1 + rng.below(5), 1 + rng.below(2), 1 + rng.below(2)});
        const auto scenarios = testutil::randomScenarios(rng, inst, 1 + rng.below(3));
        const BruteResult a = bruteForceSolve(inst, scenarios);
        const BruteResult b = bruteForceSolveNested(inst, scenarios);
        CHECK(a.objective == doctest::Approx(b.objective).epsilon(1e-12));
        CHECK(a.solution.placement == b.solution.placement);
        CHECK(a.solution.fees == b.solution.fees);
    }
}

TEST_CASE("multithreaded enumeration returns the identical argmin key") {
    Rng rng(65);
    const Instance inst = testutil::randomInstance(rng, {3, 5, 2, 2});
    const auto scenarios = testutil::randomScenarios(rng, inst, 2);
    const BruteResult a = bruteForceSolve(inst, scenarios, 1);
    const BruteResult b = bruteForceSolve(inst, scenarios, 7);
    CHECK(a.objective == doctest::Approx(b.objective).epsilon(1e-12));
    CHECK(a.solution.placement == b.solution.placement);
    CHECK(a.solution.fees == b.solution.fees);
}

TEST_CASE("ties resolve to the lexicographically smallest decision") {
    Rng rng(66);
    Instance inst = testutil::randomInstance(rng, {3, 1, 2, 2});
    inst.customers.clear(); // no demand: every decision is worth -relocation
    for (auto& row : inst.costs.relocation)
        for (double& v : row) v = 0.0; // now every decision is worth exactly 0
    std::vector<Scenario> scenarios(1);
    scenarios[0].weight = 1.0;
    const BruteResult res = bruteForceSolve(inst, scenarios);
    CHECK(res.objective == doctest::Approx(0.0));
    for (int p : res.solution.placement) CHECK(p == 0);
    for (const auto& row : res.solution.fees)
        for (int f : row) CHECK(f == 0);
}

TEST_CASE("oversized enumeration spaces are rejected") {
    Rng rng(67);
    const Instance inst = testutil::randomInstance(rng, {4, 2, 10, 5});
    const auto scenarios = testutil::randomScenarios(rng, inst, 1);
    CHECK_THROWS_AS(bruteForceSolve(inst, scenarios), std::invalid_argument);
}

TEST_CASE("MPS export round-trips through a reference reader") {
    Rng rng(68);
    const Instance inst = testutil::randomInstance(rng, {2, 3, 2, 2});
    const auto scenarios = testutil::randomScenarios(rng, inst, 2);
    const SaaModel m = buildSAA(inst, scenarios);
    const std::string path = "saa_roundtrip_test.mps";
    exportMPS(m, path);
    const MpsData data = readMps(path);
    std::remove(path.c_str());

    CHECK(data.name == "SAA");
    CHECK(data.sawMaximizeComment);
    CHECK(data.sawEndata);
    CHECK(data.objRow == "OBJ");
    REQUIRE(data.rows.size() == m.lp.rows.size());
    for (std::size_t r = 0; r < m.lp.rows.size(); ++r) {
        const char want = m.lp.rows[r].rel == lp::Rel::LE
                              ? 'L'
                              : (m.lp.rows[r].rel == lp::Rel::GE ? 'G' : 'E');
        CHECK(data.rows[r].first == want);
        CHECK(data.rows[r].second == m.rowNames[r]);
    }

    // every nonzero coefficient survives, nothing extra appears
    long wantEntries = 0;
    for (int c = 0; c < m.lp.numCols; ++c)
        if (m.lp.objective[static_cast<std::size_t>(c)] != 0.0) ++wantEntries;
    for (std::size_t r = 0; r < m.lp.rows.size(); ++r) {
        for (const auto& [c, v] : m.lp.rows[r].coeffs) {
            if (v == 0.0) continue;
            ++wantEntries;
            const auto colIt = data.cols.find(m.colNames[static_cast<std::size_t>(c)]);
            REQUIRE(colIt != data.cols.end());
            const auto cellIt = colIt->second.find(m.rowNames[r]);
            REQUIRE(cellIt != colIt->second.end());
            CHECK(close(cellIt->second, v));
        }
    }
    for (int c = 0; c < m.lp.numCols; ++c) {
        const double obj = m.lp.objective[static_cast<std::size_t>(c)];
        if (obj == 0.0) continue;
        const auto colIt = data.cols.find(m.colNames[static_cast<std::size_t>(c)]);
        REQUIRE(colIt != data.cols.end());
        CHECK(close(colIt->second.at("OBJ"), obj));
    }
    long gotEntries = 0;
    for (const auto& [col, cells] : data.cols) gotEntries += static_cast<long>(cells.size());
    CHECK(gotEntries == wantEntries);

    // nonzero right-hand sides only
    for (std::size_t r = 0; r < m.lp.rows.size(); ++r) {
        const double rhs = m.lp.rows[r].rhs;
        const auto it = data.rhs.find(m.rowNames[r]);
        if (rhs == 0.0) {
            CHECK(it == data.rhs.end());
        } else {
            REQUIRE(it != data.rhs.end());
            CHECK(close(it->second, rhs));
        }
    }

    // every column of this model is binary
    CHECK(data.binary.size() == static_cast<std::size_t>(m.lp.numCols));
    for (const std::string& n : m.colNames) CHECK(data.binary.count(n) == 1);
    CHECK(data.upper.empty());
    CHECK(data.lower.empty());
}

TEST_CASE("MPS bound section covers generic continuous columns") {
    SaaModel m;
    m.lp.addColumn(0.0, lp::kInf, 1.0);   // default bounds: no BOUNDS lines
    m.lp.addColumn(-2.5, 4.0, 1.0);       // LO + UP
    m.lp.addColumn(-lp::kInf, 3.0, -1.0); // MI + UP
    m.colNames = {"X0", "X1", "X2"};
    lp::RowDef row;
    row.coeffs = {{0, 1.0}, {1, 2.0}, {2, -1.0}};
    row.rel = lp::Rel::LE;
    row.rhs = 7.5;
    m.lp.addRow(row);
    m.rowNames = {"R0"};

    const std::string path = "bounds_roundtrip_test.mps";
    exportMPS(m, path);
    const MpsData data = readMps(path);
    std::remove(path.c_str());

    CHECK(data.binary.empty());
    CHECK(data.lower.at("X1") == doctest::Approx(-2.5));
    CHECK(data.upper.at("X1") == doctest::Approx(4.0));
    CHECK(data.freeBelow.count("X2") == 1);
    CHECK(data.upper.at("X2") == doctest::Approx(3.0));
    CHECK(data.lower.count("X0") == 0);
    CHECK(data.upper.count("X0") == 0);
    CHECK(close(data.cols.at("X1").at("R0"), 2.0));
    CHECK(close(data.rhs.at("R0"), 7.5));
}

TEST_CASE("name tables out of sync are rejected") {
    SaaModel m;
    m.lp.addColumn(0.0, 1.0, 1.0);
    // colNames left empty on purpose
    CHECK_THROWS_AS(exportMPS(m, "never_written.mps"), std::invalid_argument);
}
