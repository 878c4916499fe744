#include "csopt/recourse.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace csopt {

RecourseSolution greedyRecourse(const Instance& inst, const RequestSet& requests,
                                const FirstStageSolution& firstStage) {
    RecourseSolution sol;
    const int V = inst.numVehicles();
    std::vector<char> used(static_cast<std::size_t>(V), 0);
    for (int r = 0; r < requests.size(); ++r) {
        const Request& req = requests.requests[static_cast<std::size_t>(r)];
        const int posted = firstStage.fees[req.origin][req.destination];
        if (posted > req.maxLevel) continue; // ladder ascending: index order = value order
        int pick = -1;
        for (int v = 0; v < V; ++v) {
            if (!used[v] && firstStage.placement[v] == req.origin) { pick = v; break; }
        }
        if (pick < 0) continue;
        used[pick] = 1;
        sol.assignments.push_back({pick, r, posted});
        sol.value += req.revenue[static_cast<std::size_t>(posted)];
    }
    return sol;
}

double upperBound(const RequestSet& requests) {
    double total = 0.0;
    for (const Request& r : requests.requests)
        total += std::max(r.revenue[static_cast<std::size_t>(r.maxLevel)], 0.0);
    return total;
}

SubproblemLP buildSubproblemLP(const Instance& inst, const RequestSet& requests,
                               const FirstStageSolution& firstStage) {
    SubproblemLP model;
    const int V = inst.numVehicles();
    const int R = requests.size();

    // Column layout: grouped by request, then vehicle, then admissible level.
    // Upper bounds stay +inf: the per-request row already implies y <= 1, and
    // leaving the unit bound off keeps the returned row duals dual-feasible on
    // their own, which the cut assembly depends on.
    std::vector<std::vector<int>> colOf(static_cast<std::size_t>(R)); // [r][v*(L_r)+l]
    for (int r = 0; r < R; ++r) {
        const Request& req = requests.requests[static_cast<std::size_t>(r)];
        colOf[r].assign(static_cast<std::size_t>(V) * (req.maxLevel + 1), -1);
        for (int v = 0; v < V; ++v)
            for (int l = 0; l <= req.maxLevel; ++l) {
                int c = model.lp.addColumn(0.0, lp::kInf, req.revenue[static_cast<std::size_t>(l)]);
                model.cols.push_back({r, v, l});
                colOf[r][static_cast<std::size_t>(v) * (req.maxLevel + 1) + l] = c;
            }
    }
    auto yCol = [&](int r, int v, int l) {
        return colOf[r][static_cast<std::size_t>(v) *
                            (requests.requests[static_cast<std::size_t>(r)].maxLevel + 1) + l];
    };

    auto z = [&](int v, int zone) { return firstStage.placement[v] == zone ? 1.0 : 0.0; };

    // c1: each request satisfied at most once
    for (int r = 0; r < R; ++r) {
        lp::RowDef row;
        const Request& req = requests.requests[static_cast<std::size_t>(r)];
        for (int v = 0; v < V; ++v)
            for (int l = 0; l <= req.maxLevel; ++l) row.coeffs.push_back({yCol(r, v, l), 1.0});
        row.rel = lp::Rel::LE;
        row.rhs = 1.0;
        model.lp.addRow(std::move(row));
        model.rowMeta.push_back({SubproblemLP::RowKind::PerRequest, r, -1, -1});
    }
    // c2: each vehicle serves at most one request
    for (int v = 0; v < V; ++v) {
        lp::RowDef row;
        for (int r = 0; r < R; ++r) {
            const Request& req = requests.requests[static_cast<std::size_t>(r)];
            for (int l = 0; l <= req.maxLevel; ++l) row.coeffs.push_back({yCol(r, v, l), 1.0});
        }
        row.rel = lp::Rel::LE;
        row.rhs = 1.0;
        model.lp.addRow(std::move(row));
        model.rowMeta.push_back({SubproblemLP::RowKind::PerVehicle, -1, v, -1});
    }
    // c4: placement and arrival precedence, RHS z_{v,i(r1)}
    for (int r = 0; r < R; ++r) {
        const Request& req = requests.requests[static_cast<std::size_t>(r)];
        for (int v = 0; v < V; ++v) {
            lp::RowDef row;
            for (int l = 0; l <= req.maxLevel; ++l) row.coeffs.push_back({yCol(r, v, l), 1.0});
            for (int q : requests.precedingSameOrigin[static_cast<std::size_t>(r)]) {
                const Request& pre = requests.requests[static_cast<std::size_t>(q)];
                for (int l = 0; l <= pre.maxLevel; ++l) row.coeffs.push_back({yCol(q, v, l), 1.0});
            }
            row.rel = lp::Rel::LE;
            row.rhs = z(v, req.origin);
            model.lp.addRow(std::move(row));
            model.rowMeta.push_back({SubproblemLP::RowKind::Placement, r, v, -1});
        }
    }
    // c5: forced service, RHS λ_{i(r1) j(r1) l1} + z_{v,i(r1)} − 1
    for (int r = 0; r < R; ++r) {
        const Request& req = requests.requests[static_cast<std::size_t>(r)];
        for (int v = 0; v < V; ++v) {
            for (int l1 = 0; l1 <= req.maxLevel; ++l1) {
                lp::RowDef row;
                row.coeffs.push_back({yCol(r, v, l1), 1.0});
                for (int q : requests.precedingSameOrigin[static_cast<std::size_t>(r)]) {
                    const Request& pre = requests.requests[static_cast<std::size_t>(q)];
                    for (int l2 = 0; l2 <= pre.maxLevel; ++l2)
                        row.coeffs.push_back({yCol(q, v, l2), 1.0});
                }
                for (int v1 = 0; v1 < V; ++v1)
                    if (v1 != v) row.coeffs.push_back({yCol(r, v1, l1), 1.0});
                row.rel = lp::Rel::GE;
                double lambda = (firstStage.fees[req.origin][req.destination] == l1) ? 1.0 : 0.0;
                row.rhs = lambda + z(v, req.origin) - 1.0;
                model.lp.addRow(std::move(row));
                model.rowMeta.push_back({SubproblemLP::RowKind::ForcedService, r, v, l1});
            }
        }
    }
    // c7: only the posted level can serve, RHS λ_{i(r) j(r) l}
    for (int r = 0; r < R; ++r) {
        const Request& req = requests.requests[static_cast<std::size_t>(r)];
        for (int l = 0; l <= req.maxLevel; ++l) {
            lp::RowDef row;
            for (int v = 0; v < V; ++v) row.coeffs.push_back({yCol(r, v, l), 1.0});
            row.rel = lp::Rel::LE;
            row.rhs = (firstStage.fees[req.origin][req.destination] == l) ? 1.0 : 0.0;
            model.lp.addRow(std::move(row));
            model.rowMeta.push_back({SubproblemLP::RowKind::PostedLevel, r, -1, l});
        }
    }
    return model;
}

Cut relaxationCut(const Instance& inst, const RequestSet& requests, const SubproblemLP& model,
                  const std::vector<double>& rowDuals, int scenarioIndex) {
    if (rowDuals.size() != model.rowMeta.size())
        throw std::invalid_argument("relaxationCut: dual vector length mismatch");
    const int I = inst.numZones();
    const int L = inst.numLevels();

    Cut cut;
    cut.kind = CutKind::Relaxation;
    cut.scenario = scenarioIndex;
    std::map<int, double> zAcc, lambdaAcc;

    for (std::size_t row = 0; row < model.rowMeta.size(); ++row) {
        const auto& meta = model.rowMeta[row];
        const double pi = rowDuals[row];
        if (pi == 0.0) continue;
        switch (meta.kind) {
            case SubproblemLP::RowKind::PerRequest: // π^A: constant Σ_r π^A_r
            case SubproblemLP::RowKind::PerVehicle: // π^B: constant Σ_v π^B_v
                cut.constant += pi;
                break;
            case SubproblemLP::RowKind::Placement: { // π^C_{rv} · z_{v,i(r)}
                const Request& req = requests.requests[static_cast<std::size_t>(meta.request)];
                zAcc[meta.vehicle * I + req.origin] += pi;
                break;
            }
            case SubproblemLP::RowKind::ForcedService: { // π^D_{rvl}(λ + z − 1)
                const Request& req = requests.requests[static_cast<std::size_t>(meta.request)];
                lambdaAcc[(req.origin * I + req.destination) * L + meta.level] += pi;
                zAcc[meta.vehicle * I + req.origin] += pi;
                cut.constant -= pi;
                break;
            }
            case SubproblemLP::RowKind::PostedLevel: { // π^E_{rl} · λ
                const Request& req = requests.requests[static_cast<std::size_t>(meta.request)];
                lambdaAcc[(req.origin * I + req.destination) * L + meta.level] += pi;
                break;
            }
        }
    }
    cut.zTerms.assign(zAcc.begin(), zAcc.end());
    cut.lambdaTerms.assign(lambdaAcc.begin(), lambdaAcc.end());
    return cut;
}

namespace {

struct BruteState {
    const Instance* inst;
    const RequestSet* requests;
    const FirstStageSolution* firstStage;
    std::vector<char> used;
    std::vector<Assignment> current;
    double value = 0.0;
    double bestValue = 0.0;
    std::vector<Assignment> bestAssign;
    bool any = false;

    void consider() {
        if (!any || value > bestValue) {
            any = true;
            bestValue = value;
            bestAssign = current;
        }
    }

    void recurse(int r) {
        if (r == requests->size()) { consider(); return; }
        const Request& req = requests->requests[static_cast<std::size_t>(r)];
        const int posted = firstStage->fees[req.origin][req.destination];
        if (posted > req.maxLevel) { recurse(r + 1); return; } // inadmissible fee: stays unserved
        bool anyFree = false;
        for (int v = 0; v < inst->numVehicles(); ++v) {
            if (used[v] || firstStage->placement[v] != req.origin) continue;
            anyFree = true;
            used[v] = 1;
            current.push_back({v, r, posted});
            value += req.revenue[static_cast<std::size_t>(posted)];
            recurse(r + 1);
            value -= req.revenue[static_cast<std::size_t>(posted)];
            current.pop_back();
            used[v] = 0;
        }
        // leaving the request unserved is only feasible when no vehicle at its
        // origin is still free at its arrival (forced-service rows)
        if (!anyFree) recurse(r + 1);
    }
};

} // namespace

RecourseSolution bruteForceRecourse(const Instance& inst, const RequestSet& requests,
                                    const FirstStageSolution& firstStage) {
    if (requests.size() > 8 || inst.numVehicles() > 4)
        throw std::invalid_argument("bruteForceRecourse: size guard exceeded");
    BruteState st;
    st.inst = &inst;
    st.requests = &requests;
    st.firstStage = &firstStage;
    st.used.assign(static_cast<std::size_t>(inst.numVehicles()), 0);
    st.recurse(0);
    RecourseSolution sol;
    sol.assignments = st.bestAssign;
    sol.value = st.bestValue;
    return sol;
}

double cutRhsAt(const Cut& cut, const Instance& inst, const FirstStageSolution& firstStage) {
    const int I = inst.numZones();
    const int L = inst.numLevels();
    double rhs = cut.constant;
    for (const auto& [code, coef] : cut.zTerms) {
        int v = code / I, zone = code % I;
        if (firstStage.placement[v] == zone) rhs += coef;
    }
    for (const auto& [code, coef] : cut.lambdaTerms) {
        int l = code % L;
        int od = code / L;
        int i = od / I, j = od % I;
        if (firstStage.fees[i][j] == l) rhs += coef;
    }
    return rhs;
}

} // namespace csopt
