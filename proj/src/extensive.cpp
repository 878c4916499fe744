#include "csopt/extensive.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "csopt/choice.hpp"
#include "csopt/recourse.hpp"

namespace csopt {

namespace {

std::string base36(long n) {
    static const char* digits = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ";
    if (n == 0) return "0";
    std::string out;
    while (n > 0) {
        out.push_back(digits[n % 36]);
        n /= 36;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::string shortName(const char* prefix, long index) {
    std::string name = prefix + base36(index);
    if (name.size() > 8) throw std::logic_error("shortName: exceeds the 8-character limit");
    return name;
}

} // namespace

SaaModel buildSAA(const Instance& inst, const std::vector<Scenario>& scenarios) {
    SaaModel m;
    const int I = inst.numZones(), V = inst.numVehicles(), L = inst.numLevels();
    const int S = static_cast<int>(scenarios.size());

    auto zCol = [&](int v, int i) { return v * I + i; };
    auto lambdaCol = [&](int i, int j, int l) { return V * I + (i * I + j) * L + l; };

    for (int v = 0; v < V; ++v)
        for (int i = 0; i < I; ++i) {
            int c = m.lp.addColumn(0.0, 1.0,
                                   -inst.costs.relocation[inst.vehicles[v].initialZone][i]);
            m.colNames.push_back(shortName("Z", c));
            m.binaryCols.push_back(c);
            ++m.zColumns;
        }
    for (int i = 0; i < I; ++i)
        for (int j = 0; j < I; ++j)
            for (int l = 0; l < L; ++l) {
                int c = m.lp.addColumn(0.0, 1.0, 0.0);
                m.colNames.push_back(shortName("F", c - V * I));
                m.binaryCols.push_back(c);
                ++m.lambdaColumns;
            }

    auto addRow = [&](lp::RowDef row, const char* prefix) {
        const long idx = static_cast<long>(m.rowNames.size());
        m.lp.addRow(std::move(row));
        m.rowNames.push_back(shortName(prefix, idx));
    };

    for (int v = 0; v < V; ++v) { // one zone per vehicle
        lp::RowDef row;
        for (int i = 0; i < I; ++i) row.coeffs.push_back({zCol(v, i), 1.0});
        row.rel = lp::Rel::EQ;
        row.rhs = 1.0;
        addRow(std::move(row), "V");
    }
    for (int i = 0; i < I; ++i) // one fee level per OD
        for (int j = 0; j < I; ++j) {
            lp::RowDef row;
            for (int l = 0; l < L; ++l) row.coeffs.push_back({lambdaCol(i, j, l), 1.0});
            row.rel = lp::Rel::EQ;
            row.rhs = 1.0;
            addRow(std::move(row), "P");
        }

    for (int s = 0; s < S; ++s) {
        const RequestSet rs = computeRequests(inst, scenarios[s]);
        const double w = scenarios[s].weight;
        const int R = rs.size();

        // y columns for this scenario, grouped (request, vehicle, level)
        std::vector<std::vector<int>> yBase(static_cast<std::size_t>(R));
        for (int r = 0; r < R; ++r) {
            const Request& req = rs.requests[static_cast<std::size_t>(r)];
            yBase[r].assign(static_cast<std::size_t>(V) * (req.maxLevel + 1), 0);
            for (int v = 0; v < V; ++v)
                for (int l = 0; l <= req.maxLevel; ++l) {
                    int c = m.lp.addColumn(0.0, 1.0,
                                           w * req.revenue[static_cast<std::size_t>(l)]);
                    m.colNames.push_back(shortName("Y", m.yColumns));
                    m.binaryCols.push_back(c);
                    yBase[r][static_cast<std::size_t>(v) * (req.maxLevel + 1) + l] = c;
                    ++m.yColumns;
                }
        }
        auto y = [&](int r, int v, int l) {
            return yBase[r][static_cast<std::size_t>(v) *
                                (rs.requests[static_cast<std::size_t>(r)].maxLevel + 1) + l];
        };

        for (int r = 0; r < R; ++r) { // each request served at most once
            lp::RowDef row;
            const Request& req = rs.requests[static_cast<std::size_t>(r)];
            for (int v = 0; v < V; ++v)
                for (int l = 0; l <= req.maxLevel; ++l) row.coeffs.push_back({y(r, v, l), 1.0});
            row.rel = lp::Rel::LE;
            row.rhs = 1.0;
            addRow(std::move(row), "A");
        }
        for (int v = 0; v < V; ++v) { // each vehicle used at most once
            lp::RowDef row;
            for (int r = 0; r < R; ++r) {
                const Request& req = rs.requests[static_cast<std::size_t>(r)];
                for (int l = 0; l <= req.maxLevel; ++l) row.coeffs.push_back({y(r, v, l), 1.0});
            }
            row.rel = lp::Rel::LE;
            row.rhs = 1.0;
            addRow(std::move(row), "B");
        }
        for (int r = 0; r < R; ++r) { // placement and arrival precedence
            const Request& req = rs.requests[static_cast<std::size_t>(r)];
            for (int v = 0; v < V; ++v) {
                lp::RowDef row;
                for (int l = 0; l <= req.maxLevel; ++l) row.coeffs.push_back({y(r, v, l), 1.0});
                for (int q : rs.precedingSameOrigin[static_cast<std::size_t>(r)]) {
                    const Request& pre = rs.requests[static_cast<std::size_t>(q)];
                    for (int l = 0; l <= pre.maxLevel; ++l)
                        row.coeffs.push_back({y(q, v, l), 1.0});
                }
                row.coeffs.push_back({zCol(v, req.origin), -1.0});
                row.rel = lp::Rel::LE;
                row.rhs = 0.0;
                addRow(std::move(row), "C");
            }
        }
        for (int r = 0; r < R; ++r) { // forced service
            const Request& req = rs.requests[static_cast<std::size_t>(r)];
            for (int v = 0; v < V; ++v)
                for (int l1 = 0; l1 <= req.maxLevel; ++l1) {
                    lp::RowDef row;
                    row.coeffs.push_back({y(r, v, l1), 1.0});
                    for (int q : rs.precedingSameOrigin[static_cast<std::size_t>(r)]) {
                        const Request& pre = rs.requests[static_cast<std::size_t>(q)];
                        for (int l2 = 0; l2 <= pre.maxLevel; ++l2)
                            row.coeffs.push_back({y(q, v, l2), 1.0});
                    }
                    for (int v1 = 0; v1 < V; ++v1)
                        if (v1 != v) row.coeffs.push_back({y(r, v1, l1), 1.0});
                    row.coeffs.push_back({lambdaCol(req.origin, req.destination, l1), -1.0});
                    row.coeffs.push_back({zCol(v, req.origin), -1.0});
                    row.rel = lp::Rel::GE;
                    row.rhs = -1.0;
                    addRow(std::move(row), "D");
                }
        }
        for (int r = 0; r < R; ++r) { // only the posted level can serve
            const Request& req = rs.requests[static_cast<std::size_t>(r)];
            for (int l = 0; l <= req.maxLevel; ++l) {
                lp::RowDef row;
                for (int v = 0; v < V; ++v) row.coeffs.push_back({y(r, v, l), 1.0});
                row.coeffs.push_back({lambdaCol(req.origin, req.destination, l), -1.0});
                row.rel = lp::Rel::LE;
                row.rhs = 0.0;
                addRow(std::move(row), "E");
            }
        }
    }
    return m;
}

namespace {

struct Enumeration {
    long zTotal = 1;      // zones^vehicles
    long lambdaTotal = 1; // levels^(off-diagonal ODs)
    std::vector<std::pair<int, int>> offDiagonal;
};

Enumeration enumerationSpace(const Instance& inst) {
    const int I = inst.numZones(), V = inst.numVehicles(), L = inst.numLevels();
    const double combos = std::pow(static_cast<double>(I), V) *
                          std::pow(static_cast<double>(L), I * I - I);
    if (!(combos <= 1e6))
        throw std::invalid_argument("bruteForceSolve: enumeration space exceeds the 1e6 guard");
    Enumeration e;
    for (int v = 0; v < V; ++v) e.zTotal *= I;
    for (int i = 0; i < I; ++i)
        for (int j = 0; j < I; ++j)
            if (i != j) {
                e.offDiagonal.emplace_back(i, j);
                e.lambdaTotal *= L;
            }
    return e;
}

// digit v0 most significant, so ascending index = lexicographic placement
void decodePlacement(long zIdx, int numZones, std::vector<int>& placement) {
    for (int v = static_cast<int>(placement.size()) - 1; v >= 0; --v) {
        placement[static_cast<std::size_t>(v)] = static_cast<int>(zIdx % numZones);
        zIdx /= numZones;
    }
}

void decodeFees(long lambdaIdx, int numLevels, const std::vector<std::pair<int, int>>& ods,
                std::vector<std::vector<int>>& fees) {
    for (auto& row : fees) std::fill(row.begin(), row.end(), 0); // diagonal stays at level 0
    for (int p = static_cast<int>(ods.size()) - 1; p >= 0; --p) {
        const auto [i, j] = ods[static_cast<std::size_t>(p)];
        fees[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            static_cast<int>(lambdaIdx % numLevels);
        lambdaIdx /= numLevels;
    }
}

template <typename Recourse>
BruteResult enumerateAll(const Instance& inst, const std::vector<Scenario>& scenarios,
                         int threads, Recourse&& recourseValue) {
    const Enumeration space = enumerationSpace(inst);
    const int I = inst.numZones(), V = inst.numVehicles(), L = inst.numLevels();
    const int S = static_cast<int>(scenarios.size());

    std::vector<RequestSet> requests(static_cast<std::size_t>(S));
    for (int s = 0; s < S; ++s) requests[s] = computeRequests(inst, scenarios[s]);

    struct Best {
        bool any = false;
        double value = 0.0;
        long key = 0; // placementIdx * lambdaTotal + feeIdx: (z, lambda) lexicographic
    };
    const int workers =
        std::max(1, static_cast<int>(std::min<long>(threads, space.lambdaTotal)));
    std::vector<Best> best(static_cast<std::size_t>(workers));

    auto run = [&](int w) {
        FirstStageSolution fs;
        fs.placement.assign(static_cast<std::size_t>(V), 0);
        fs.fees.assign(static_cast<std::size_t>(I),
                       std::vector<int>(static_cast<std::size_t>(I), 0));
        Best& mine = best[static_cast<std::size_t>(w)];
        for (long lIdx = w; lIdx < space.lambdaTotal; lIdx += workers) {
            decodeFees(lIdx, L, space.offDiagonal, fs.fees);
            for (long zIdx = 0; zIdx < space.zTotal; ++zIdx) {
                decodePlacement(zIdx, I, fs.placement);
                double value = 0.0;
                for (int v = 0; v < V; ++v)
                    value -= inst.costs.relocation[inst.vehicles[v].initialZone][fs.placement[v]];
                for (int s = 0; s < S; ++s)
                    value += scenarios[s].weight * recourseValue(requests[s], fs);
                const long key = zIdx * space.lambdaTotal + lIdx;
                if (!mine.any || value > mine.value ||
                    (value == mine.value && key < mine.key)) {
                    mine.any = true;
                    mine.value = value;
                    mine.key = key;
                }
            }
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (std::thread& t : pool) t.join();
    }

    Best overall;
    for (const Best& b : best) {
        if (!b.any) continue;
        if (!overall.any || b.value > overall.value ||
            (b.value == overall.value && b.key < overall.key))
            overall = b;
    }
    if (!overall.any) throw std::logic_error("bruteForceSolve: empty enumeration");

    BruteResult result;
    result.objective = overall.value;
    result.solution.placement.assign(static_cast<std::size_t>(V), 0);
    result.solution.fees.assign(static_cast<std::size_t>(I),
                                std::vector<int>(static_cast<std::size_t>(I), 0));
    decodePlacement(overall.key / space.lambdaTotal, I, result.solution.placement);
    decodeFees(overall.key % space.lambdaTotal, L, space.offDiagonal, result.solution.fees);
    return result;
}

} // namespace

BruteResult bruteForceSolve(const Instance& inst, const std::vector<Scenario>& scenarios,
                            int threads) {
    return enumerateAll(inst, scenarios, threads,
                        [&](const RequestSet& rs, const FirstStageSolution& fs) {
                            return greedyRecourse(inst, rs, fs).value;
                        });
}

BruteResult bruteForceSolveNested(const Instance& inst, const std::vector<Scenario>& scenarios,
                                  int threads) {
    return enumerateAll(inst, scenarios, threads,
                        [&](const RequestSet& rs, const FirstStageSolution& fs) {
                            return bruteForceRecourse(inst, rs, fs).value;
                        });
}

namespace {

std::string num12(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void writePair(std::string& line, const std::string& name, const std::string& value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%-8s  %-12s", name.c_str(), value.c_str());
    line += buf;
}

} // namespace

void exportMPS(const SaaModel& model, const std::string& path) {
    const lp::LinearProgram& p = model.lp;
    if (static_cast<std::size_t>(p.numCols) != model.colNames.size() ||
        p.rows.size() != model.rowNames.size())
        throw std::invalid_argument("exportMPS: name tables out of sync with the model");

    std::ofstream out(path);
    if (!out) throw std::runtime_error("exportMPS: cannot open " + path);

    out << "* Scenario-expanded carsharing pricing/relocation model\n";
    out << "NAME          SAA\n";
    out << "* OBJSENSE MAXIMIZE\n";
    out << "ROWS\n";
    out << " N  OBJ\n";
    for (std::size_t r = 0; r < p.rows.size(); ++r) {
        char rel = p.rows[r].rel == lp::Rel::LE ? 'L' : (p.rows[r].rel == lp::Rel::GE ? 'G' : 'E');
        out << ' ' << rel << "  " << model.rowNames[r] << '\n';
    }

    // per-column entries: objective first, then rows in index order
    std::vector<std::vector<std::pair<int, double>>> colEntries(
        static_cast<std::size_t>(p.numCols));
    for (std::size_t r = 0; r < p.rows.size(); ++r)
        for (const auto& [col, coef] : p.rows[r].coeffs)
            if (coef != 0.0) colEntries[static_cast<std::size_t>(col)].push_back(
                {static_cast<int>(r), coef});

    out << "COLUMNS\n";
    for (int c = 0; c < p.numCols; ++c) {
        std::vector<std::pair<std::string, double>> entries;
        if (p.objective[static_cast<std::size_t>(c)] != 0.0)
            entries.push_back({"OBJ", p.objective[static_cast<std::size_t>(c)]});
        for (const auto& [r, coef] : colEntries[static_cast<std::size_t>(c)])
            entries.push_back({model.rowNames[static_cast<std::size_t>(r)], coef});
        for (std::size_t e = 0; e < entries.size(); e += 2) {
            std::string line = "    " + model.colNames[static_cast<std::size_t>(c)];
            line.resize(14, ' '); // column name field, then (row, value) pairs
            writePair(line, entries[e].first, num12(entries[e].second));
            if (e + 1 < entries.size()) {
                line += "   ";
                writePair(line, entries[e + 1].first, num12(entries[e + 1].second));
            }
            while (!line.empty() && line.back() == ' ') line.pop_back();
            out << line << '\n';
        }
    }

    out << "RHS\n";
    {
        std::vector<std::pair<std::string, double>> entries;
        for (std::size_t r = 0; r < p.rows.size(); ++r)
            if (p.rows[r].rhs != 0.0) entries.push_back({model.rowNames[r], p.rows[r].rhs});
        for (std::size_t e = 0; e < entries.size(); e += 2) {
            std::string line = "    RHS";
            line.resize(14, ' ');
            writePair(line, entries[e].first, num12(entries[e].second));
            if (e + 1 < entries.size()) {
                line += "   ";
                writePair(line, entries[e + 1].first, num12(entries[e + 1].second));
            }
            while (!line.empty() && line.back() == ' ') line.pop_back();
            out << line << '\n';
        }
    }

    out << "BOUNDS\n";
    std::vector<char> isBinary(static_cast<std::size_t>(p.numCols), 0);
    for (int c : model.binaryCols) isBinary[static_cast<std::size_t>(c)] = 1;
    for (int c = 0; c < p.numCols; ++c) {
        const std::string& name = model.colNames[static_cast<std::size_t>(c)];
        if (isBinary[static_cast<std::size_t>(c)]) {
            std::string line = " BV BND";
            line.resize(14, ' ');
            line += name;
            out << line << '\n';
            continue;
        }
        const double lo = p.lower[static_cast<std::size_t>(c)];
        const double hi = p.upper[static_cast<std::size_t>(c)];
        if (lo != 0.0) {
            std::string line = std::isfinite(lo) ? " LO BND" : " MI BND";
            line.resize(14, ' ');
            writePair(line, name, std::isfinite(lo) ? num12(lo) : "");
            while (!line.empty() && line.back() == ' ') line.pop_back();
            out << line << '\n';
        }
        if (std::isfinite(hi)) {
            std::string line = " UP BND";
            line.resize(14, ' ');
            writePair(line, name, num12(hi));
            while (!line.empty() && line.back() == ' ') line.pop_back();
            out << line << '\n';
        }
    }
    out << "ENDATA\n";
    if (!out) throw std::runtime_error("exportMPS: write failure on " + path);
}

} // namespace csopt
