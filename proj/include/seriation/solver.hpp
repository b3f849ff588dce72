#pragma once

#include <string>

#include "seriation/matrix.hpp"
#include "seriation/measures.hpp"
#include "seriation/path_solver.hpp"

namespace seriation {

enum class SolveStatus { Optimal, FeasibleWithGap, Infeasible, LimitReached };

std::string to_string(SolveStatus s);

struct SeriationResult {
    Permutation row_perm = Permutation::identity(1);
    Permutation col_perm = Permutation::identity(1);
    double objective = 0.0;
    double bound = 0.0;  // lower bound for stress, upper bound for ME
    double gap = 0.0;    // |objective - bound| / max(1e-10, |objective|)
    SolveStatus status = SolveStatus::Optimal;
    bool has_incumbent = true;
    MeasureReport measures;       // evaluated on the reordered matrix
    DeviationReport deviations;   // reordered vs. original
    std::string solver_name;
    double runtime_seconds = 0.0;
};

enum class Engine { Brute, HeldKarp, BranchAndBound, Auto };
enum class MooreMode { ExactTiny, Alternating, MilpBridge };

struct ExternalSolverConfig;  // milp.hpp

// Exhaustive enumeration over permutation pairs (or single permutations when
// coordinated); the independent oracle every other engine is verified
// against. Refuses search spaces above 10^7. Ties resolve to the
// lexicographically smallest (row_perm, col_perm).
SeriationResult brute_force(const DenseMatrix& a, const MeasureSpec& measure, bool coordinated);

// Von Neumann stress / ME via one or two Hamiltonian path problems.
SeriationResult solve_separable(const DenseMatrix& a, const MeasureSpec& measure,
                                bool coordinated, Engine engine, const SolveLimits& limits = {});

// Moore stress: joint brute force (ExactTiny), row/column coordinate descent
// with exact inner path solves (Alternating), or delegation to the MILP
// bridge (MilpBridge requires an external solver configuration).
SeriationResult solve_moore(const DenseMatrix& a, int p, MooreMode mode,
                            const SolveLimits& limits = {},
                            const ExternalSolverConfig* config = nullptr);

// Fills measures/deviations/objective of `result` from the final
// permutations, re-evaluating the measure on the reordered matrix. Throws
// IntegrityError if `claimed` (the solver's objective) disagrees beyond
// 1e-9 * max(1, |objective|).
void finalize_result(SeriationResult& result, const DenseMatrix& a, const MeasureSpec& measure,
                     double claimed);

}  // namespace seriation
