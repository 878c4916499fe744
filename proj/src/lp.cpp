#include "csopt/lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace csopt {
namespace lp {

namespace {

constexpr double kPivTol = 1e-9;

enum class ColState : char { Basic, AtLower, AtUpper, FixedBound };

struct Tableau {
    int m = 0;      // rows
    int nTotal = 0; // structural + slack + artificial columns
    std::vector<double> T;   // m x nTotal, row-major: B^{-1} A
    std::vector<double> d;   // reduced costs, length nTotal
    std::vector<double> cost;
    std::vector<double> lo, hi, val; // val meaningful for nonbasic columns
    std::vector<ColState> state;
    std::vector<int> basicCol;  // per row
    std::vector<int> basicPos;  // per column, -1 if nonbasic

    double& at(int i, int j) { return T[static_cast<std::size_t>(i) * nTotal + j]; }
    double atc(int i, int j) const { return T[static_cast<std::size_t>(i) * nTotal + j]; }
};

void computeReducedCosts(Tableau& tb) {
    tb.d = tb.cost;
    for (int i = 0; i < tb.m; ++i) {
        double cb = tb.cost[tb.basicCol[i]];
        if (cb == 0.0) continue;
        const double* row = &tb.T[static_cast<std::size_t>(i) * tb.nTotal];
        for (int j = 0; j < tb.nTotal; ++j) tb.d[j] -= cb * row[j];
    }
}

double currentObjective(const Tableau& tb, const std::vector<double>& xB) {
    double obj = 0.0;
    for (int j = 0; j < tb.nTotal; ++j) {
        if (tb.state[j] == ColState::Basic) continue;
        if (tb.cost[j] != 0.0) obj += tb.cost[j] * tb.val[j];
    }
    for (int i = 0; i < tb.m; ++i) obj += tb.cost[tb.basicCol[i]] * xB[i];
    return obj;
}

// One simplex phase. Returns Optimal when no improving column remains.
LpStatus runPhase(Tableau& tb, std::vector<double>& xB, const SimplexOptions& opt,
                  long maxIter, long& iterations) {
    computeReducedCosts(tb);
    bool bland = false;
    int stall = 0;
    double lastObj = currentObjective(tb, xB);

    while (true) {
        if (iterations >= maxIter) return LpStatus::IterationLimit;

        // Pricing: pick the entering column and its direction of movement.
        int q = -1;
        int dir = 0;
        double bestScore = opt.optTol;
        for (int j = 0; j < tb.nTotal; ++j) {
            ColState st = tb.state[j];
            if (st == ColState::Basic || st == ColState::FixedBound) continue;
            double dj = tb.d[j];
            int dj_dir = 0;
            if (st == ColState::AtLower && dj > opt.optTol) dj_dir = +1;
            else if (st == ColState::AtUpper && dj < -opt.optTol) dj_dir = -1;
            if (dj_dir == 0) continue;
            if (bland) { q = j; dir = dj_dir; break; }
            if (std::fabs(dj) > bestScore) { bestScore = std::fabs(dj); q = j; dir = dj_dir; }
        }
        if (q < 0) return LpStatus::Optimal;

        ++iterations;

        // Ratio test over basic rows plus the entering column's own span.
        double tOwn = kInf;
        if (std::isfinite(tb.lo[q]) && std::isfinite(tb.hi[q])) tOwn = tb.hi[q] - tb.lo[q];

        double tBest = tOwn;
        int rowBest = -1;       // -1 = bound flip
        bool leaveAtLower = true;
        double pivBest = 0.0;
        for (int i = 0; i < tb.m; ++i) {
            double y = tb.atc(i, q);
            double denom = dir * y;
            int b = tb.basicCol[i];
            double t;
            bool toLower;
            if (denom > kPivTol) {
                if (!std::isfinite(tb.lo[b])) continue;
                t = (xB[i] - tb.lo[b]) / denom;
                toLower = true;
            } else if (denom < -kPivTol) {
                if (!std::isfinite(tb.hi[b])) continue;
                t = (tb.hi[b] - xB[i]) / (-denom);
                toLower = false;
            } else {
                continue;
            }
            if (t < 0.0) t = 0.0; // degenerate, slightly out of bounds
            bool better;
            if (t < tBest - 1e-12) better = true;
            else if (t > tBest + 1e-12) better = false;
            else if (rowBest < 0) better = (t < tBest);
            else if (bland) better = (b < tb.basicCol[rowBest]);
            else better = (std::fabs(y) > std::fabs(pivBest));
            if (better) { tBest = t; rowBest = i; leaveAtLower = toLower; pivBest = y; }
        }

        if (!std::isfinite(tBest)) return LpStatus::Unbounded;

        if (rowBest < 0) {
            // Bound flip: entering moves across its whole range, basis unchanged.
            for (int i = 0; i < tb.m; ++i) xB[i] -= dir * tBest * tb.atc(i, q);
            tb.val[q] = (dir > 0) ? tb.hi[q] : tb.lo[q];
            tb.state[q] = (dir > 0) ? ColState::AtUpper : ColState::AtLower;
        } else {
            const int r = rowBest;
            const int p = tb.basicCol[r];
            double enteringVal = tb.val[q] + dir * tBest;
            for (int i = 0; i < tb.m; ++i)
                if (i != r) xB[i] -= dir * tBest * tb.atc(i, q);
            // leaving column parks at the bound it hit
            tb.val[p] = leaveAtLower ? tb.lo[p] : tb.hi[p];
            tb.state[p] = (tb.lo[p] == tb.hi[p]) ? ColState::FixedBound
                          : (leaveAtLower ? ColState::AtLower : ColState::AtUpper);
            tb.basicPos[p] = -1;
            tb.basicCol[r] = q;
            tb.basicPos[q] = r;
            tb.state[q] = ColState::Basic;
            xB[r] = enteringVal;

            // pivot tableau and reduced-cost row
            double piv = tb.at(r, q);
            double* rowR = &tb.T[static_cast<std::size_t>(r) * tb.nTotal];
            double invPiv = 1.0 / piv;
            for (int j = 0; j < tb.nTotal; ++j) rowR[j] *= invPiv;
            for (int i = 0; i < tb.m; ++i) {
                if (i == r) continue;
                double f = tb.at(i, q);
                if (f == 0.0) continue;
                double* rowI = &tb.T[static_cast<std::size_t>(i) * tb.nTotal];
                for (int j = 0; j < tb.nTotal; ++j) rowI[j] -= f * rowR[j];
                tb.at(i, q) = 0.0;
            }
            double f = tb.d[q];
            if (f != 0.0) {
                for (int j = 0; j < tb.nTotal; ++j) tb.d[j] -= f * rowR[j];
                tb.d[q] = 0.0;
            }
        }

        // Degeneracy watch: long objective stall switches pricing to Bland's rule.
        double obj = currentObjective(tb, xB);
        if (obj > lastObj + 1e-12) {
            stall = 0;
            lastObj = obj;
        } else if (!bland && ++stall > 64) {
            bland = true;
        }
    }
}

} // namespace

LpResult solve(const LinearProgram& lp, const SimplexOptions& options) {
    const int n = lp.numCols;
    const int m = static_cast<int>(lp.rows.size());

    for (int j = 0; j < n; ++j) {
        if (!std::isfinite(lp.lower[j]))
            throw std::invalid_argument("lp::solve: columns need finite lower bounds");
        if (lp.upper[j] < lp.lower[j]) throw std::invalid_argument("lp::solve: empty column range");
    }
    for (const RowDef& row : lp.rows)
        for (const auto& [col, coef] : row.coeffs) {
            (void)coef;
            if (col < 0 || col >= n) throw std::invalid_argument("lp::solve: row references bad column");
        }

    // Column layout: structural | slack (one per row) | artificial (as needed).
    // Slack bounds by relation: LE [0,inf), GE (-inf,0], EQ fixed 0.
    std::vector<double> dense(static_cast<std::size_t>(m) * n, 0.0);
    for (int i = 0; i < m; ++i)
        for (const auto& [col, coef] : lp.rows[i].coeffs)
            dense[static_cast<std::size_t>(i) * n + col] += coef;

    // initial nonbasic structural values: at the lower bound
    std::vector<double> residual(m);
    for (int i = 0; i < m; ++i) {
        double acc = lp.rows[i].rhs;
        for (const auto& [col, coef] : lp.rows[i].coeffs) acc -= coef * lp.lower[col];
        residual[i] = acc;
    }

    // decide which rows need an artificial column
    std::vector<int> artOf(m, -1);
    std::vector<double> artSign(m, 1.0);
    int nArt = 0;
    for (int i = 0; i < m; ++i) {
        double r = residual[i];
        bool slackCanHost;
        switch (lp.rows[i].rel) {
            case Rel::LE: slackCanHost = (r >= 0.0); break;
            case Rel::GE: slackCanHost = (r <= 0.0); break;
            default: slackCanHost = (r == 0.0); break;
        }
        if (!slackCanHost) {
            artOf[i] = nArt++;
            artSign[i] = (r >= 0.0) ? 1.0 : -1.0;
        }
    }

    Tableau tb;
    tb.m = m;
    tb.nTotal = n + m + nArt;
    tb.T.assign(static_cast<std::size_t>(m) * tb.nTotal, 0.0);
    tb.cost.assign(tb.nTotal, 0.0);
    tb.lo.resize(tb.nTotal);
    tb.hi.resize(tb.nTotal);
    tb.val.assign(tb.nTotal, 0.0);
    tb.state.assign(tb.nTotal, ColState::AtLower);
    tb.basicCol.assign(m, -1);
    tb.basicPos.assign(tb.nTotal, -1);

    for (int j = 0; j < n; ++j) {
        tb.lo[j] = lp.lower[j];
        tb.hi[j] = lp.upper[j];
        tb.val[j] = lp.lower[j];
        tb.state[j] = (tb.lo[j] == tb.hi[j]) ? ColState::FixedBound : ColState::AtLower;
    }
    for (int i = 0; i < m; ++i) {
        int sc = n + i;
        switch (lp.rows[i].rel) {
            case Rel::LE: tb.lo[sc] = 0.0; tb.hi[sc] = kInf; break;
            case Rel::GE: tb.lo[sc] = -kInf; tb.hi[sc] = 0.0; break;
            default: tb.lo[sc] = 0.0; tb.hi[sc] = 0.0; break;
        }
    }
    for (int a = 0; a < nArt; ++a) {
        int ac = n + m + a;
        tb.lo[ac] = 0.0;
        tb.hi[ac] = kInf;
        tb.cost[ac] = -1.0; // phase-1 objective: maximize -sum(artificials)
    }

    std::vector<double> xB(m, 0.0);
    for (int i = 0; i < m; ++i) {
        double sign = (artOf[i] >= 0) ? artSign[i] : 1.0;
        for (int j = 0; j < n; ++j) tb.at(i, j) = sign * dense[static_cast<std::size_t>(i) * n + j];
        tb.at(i, n + i) = sign * 1.0;
        if (artOf[i] >= 0) {
            int ac = n + m + artOf[i];
            tb.at(i, ac) = 1.0; // sign * artSign = 1
            tb.basicCol[i] = ac;
            tb.basicPos[ac] = i;
            tb.state[ac] = ColState::Basic;
            xB[i] = sign * residual[i]; // = |residual| >= 0
            // slack parks at the bound nearest the residual
            int sc = n + i;
            tb.val[sc] = 0.0;
            tb.state[sc] = (tb.lo[sc] == tb.hi[sc]) ? ColState::FixedBound : ColState::AtLower;
            if (lp.rows[i].rel == Rel::GE) tb.state[sc] = ColState::AtUpper;
        } else {
            int sc = n + i;
            tb.basicCol[i] = sc;
            tb.basicPos[sc] = i;
            tb.state[sc] = ColState::Basic;
            xB[i] = residual[i];
        }
    }

    SimplexOptions opt = options;
    long maxIter = opt.maxIterations > 0 ? opt.maxIterations
                                         : 2000 + 25L * (static_cast<long>(m) + n);
    LpResult result;

    double bScale = 1.0;
    for (int i = 0; i < m; ++i) bScale = std::max(bScale, std::fabs(lp.rows[i].rhs));

    if (nArt > 0) {
        LpStatus st = runPhase(tb, xB, opt, maxIter, result.iterations);
        if (st == LpStatus::IterationLimit) { result.status = st; return result; }
        if (st == LpStatus::Unbounded) { result.status = LpStatus::IterationLimit; return result; }
        double infeas = 0.0;
        for (int a = 0; a < nArt; ++a) {
            int ac = n + m + a;
            infeas += (tb.basicPos[ac] >= 0) ? std::fabs(xB[tb.basicPos[ac]]) : tb.val[ac];
        }
        if (infeas > opt.feasTol * (1.0 + bScale) * 10.0) {
            result.status = LpStatus::Infeasible;
            return result;
        }
        // drive artificials out of the basis where possible (degenerate swaps)
        for (int i = 0; i < m; ++i) {
            int b = tb.basicCol[i];
            if (b < n + m) continue;
            int pick = -1;
            double best = 1e-7;
            for (int j = 0; j < n + m; ++j) {
                if (tb.state[j] == ColState::Basic) continue;
                double a = std::fabs(tb.atc(i, j));
                if (a > best) { best = a; pick = j; }
            }
            if (pick < 0) continue; // redundant row; artificial stays basic at ~0
            double piv = tb.at(i, pick);
            double enteringVal = tb.val[pick];
            tb.basicPos[b] = -1;
            tb.val[b] = 0.0;
            tb.state[b] = ColState::FixedBound;
            tb.basicCol[i] = pick;
            tb.basicPos[pick] = i;
            tb.state[pick] = ColState::Basic;
            // values are unchanged by this degenerate swap
            xB[i] = enteringVal;
            double* rowR = &tb.T[static_cast<std::size_t>(i) * tb.nTotal];
            double invPiv = 1.0 / piv;
            for (int j = 0; j < tb.nTotal; ++j) rowR[j] *= invPiv;
            for (int k = 0; k < m; ++k) {
                if (k == i) continue;
                double f = tb.at(k, pick);
                if (f == 0.0) continue;
                double* rowK = &tb.T[static_cast<std::size_t>(k) * tb.nTotal];
                for (int j = 0; j < tb.nTotal; ++j) rowK[j] -= f * rowR[j];
                tb.at(k, pick) = 0.0;
            }
        }
        // freeze artificials for phase 2
        for (int a = 0; a < nArt; ++a) {
            int ac = n + m + a;
            tb.cost[ac] = 0.0;
            tb.hi[ac] = 0.0;
            if (tb.state[ac] != ColState::Basic) {
                tb.state[ac] = ColState::FixedBound;
                tb.val[ac] = 0.0;
            }
        }
    }

    for (int j = 0; j < n; ++j) tb.cost[j] = lp.objective[j];
    for (int i = 0; i < m; ++i) tb.cost[n + i] = 0.0;

    LpStatus st = runPhase(tb, xB, opt, maxIter, result.iterations);
    result.status = st;
    if (st != LpStatus::Optimal) return result;

    result.x.assign(n, 0.0);
    for (int j = 0; j < n; ++j)
        result.x[j] = (tb.basicPos[j] >= 0) ? xB[tb.basicPos[j]] : tb.val[j];
    result.objective = 0.0;
    for (int j = 0; j < n; ++j) result.objective += lp.objective[j] * result.x[j];

    // row duals from y = c_B^T B^{-1}; the slack block of the tableau is B^{-1}
    result.rowDuals.assign(m, 0.0);
    for (int k = 0; k < m; ++k) {
        double cb = tb.cost[tb.basicCol[k]];
        if (cb == 0.0) continue;
        const double* rowK = &tb.T[static_cast<std::size_t>(k) * tb.nTotal];
        for (int i = 0; i < m; ++i) result.rowDuals[i] += cb * rowK[n + i];
    }
    return result;
}

} // namespace lp
} // namespace csopt
