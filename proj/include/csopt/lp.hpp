#pragma once

#include <limits>
#include <utility>
#include <vector>

namespace csopt {
namespace lp {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Rel { LE, EQ, GE };

struct RowDef {
    std::vector<std::pair<int, double>> coeffs; // sparse (column, value)
    Rel rel = Rel::LE;
    double rhs = 0.0;
};

// Maximization LP with bounded columns. Lower bounds must be finite; upper
// bounds may be +inf.
struct LinearProgram {
    int numCols = 0;
    std::vector<double> lower, upper, objective;
    std::vector<RowDef> rows;

    int addColumn(double lo, double hi, double obj) {
        lower.push_back(lo);
        upper.push_back(hi);
        objective.push_back(obj);
        return numCols++;
    }
    // Appending a row then solving is equivalent to building the LP with the
    // row from scratch (the solver holds no incremental state).
    void addRow(RowDef row) { rows.push_back(std::move(row)); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct SimplexOptions {
    double feasTol = 1e-7;
    double optTol = 1e-7;     // reduced-cost tolerance
    long maxIterations = 0;   // 0 = automatic (scales with problem size)
};

struct LpResult {
    LpStatus status = LpStatus::IterationLimit;
    double objective = 0.0;
    std::vector<double> x;        // structural column values
    std::vector<double> rowDuals; // signed: <= rows give >= 0, >= rows give <= 0
    long iterations = 0;
};

// Two-phase bounded-variable primal simplex on a dense tableau. Dantzig pricing
// with a Bland's-rule fallback after a degeneracy stall; deterministic.
LpResult solve(const LinearProgram& lp, const SimplexOptions& options = {});

} // namespace lp
} // namespace csopt
