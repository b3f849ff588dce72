#include "seriation/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "seriation/errors.hpp"
#include "seriation/heuristics.hpp"
#include "seriation/milp.hpp"

namespace seriation {

namespace {

constexpr double kBruteGuard = 1e7;

double relative_gap(double objective, double bound) {
    return std::fabs(objective - bound) / std::max(1e-10, std::fabs(objective));
}

double search_space(int n, int m, bool coordinated) {
    double space = 1.0;
    for (int i = 2; i <= n; ++i) space *= i;
    if (!coordinated) {
        double mf = 1.0;
        for (int j = 2; j <= m; ++j) mf *= j;
        space *= mf;
    }
    return space;
}

std::vector<int> best_warm_order(const PathGraph& g) {
    std::vector<int> identity(g.size());
    for (int i = 0; i < g.size(); ++i) identity[i] = i;
    std::vector<std::vector<int>> candidates;
    candidates.push_back(two_opt_path(g, identity));
    candidates.push_back(two_opt_path(g, nearest_neighbor_order(g)));
    if (g.sense() == Sense::Maximize)
        candidates.push_back(two_opt_path(g, bea_axis_order(g, 0)));
    candidates.push_back(std::move(identity));
    const double sign = g.sense() == Sense::Minimize ? 1.0 : -1.0;
    std::size_t best = 0;
    for (std::size_t i = 1; i < candidates.size(); ++i)
        if (sign * g.path_value(candidates[i]) < sign * g.path_value(candidates[best]))
            best = i;
    return candidates[best];
}

PathResult solve_path(const PathGraph& g, Engine engine, const SolveLimits& limits) {
    if (g.size() == 1) {
        PathResult r;
        r.order = {0};
        r.optimal = true;
        return r;
    }
    if (engine == Engine::Auto) engine = g.size() <= 20 ? Engine::HeldKarp : Engine::BranchAndBound;
    switch (engine) {
        case Engine::HeldKarp:
            return held_karp_path(g);
        case Engine::BranchAndBound: {
            const auto warm = best_warm_order(g);
            return branch_and_bound_path(g, &warm, limits);
        }
        default:
            throw std::invalid_argument("solve_path: unsupported engine");
    }
}

}  // namespace

std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::FeasibleWithGap: return "feasible_with_gap";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::LimitReached: return "limit_reached";
    }
    return "?";
}

void finalize_result(SeriationResult& result, const DenseMatrix& a, const MeasureSpec& measure,
                     double claimed) {
    const DenseMatrix reordered = apply_permutations(a, result.row_perm, result.col_perm);
    result.objective = measure.evaluate(reordered);
    if (std::fabs(result.objective - claimed) > 1e-9 * std::max(1.0, std::fabs(result.objective)))
        throw IntegrityError("solver objective " + std::to_string(claimed) +
                             " does not match re-evaluated measure " +
                             std::to_string(result.objective));
    result.measures = measure_report(reordered);
    result.deviations = deviation_report(a, reordered, measure.kind == MeasureSpec::Kind::ME
                                                           ? 1
                                                           : measure.p);
    result.gap = result.status == SolveStatus::Optimal ? 0.0
                                                       : relative_gap(result.objective, result.bound);
}

SeriationResult brute_force(const DenseMatrix& a, const MeasureSpec& measure, bool coordinated) {
    const int n = a.rows(), m = a.cols();
    if (coordinated && n != m)
        throw std::invalid_argument("brute_force: coordinated seriation needs a square matrix");
    if (search_space(n, m, coordinated) > kBruteGuard)
        throw std::invalid_argument("brute_force: search space exceeds 10^7 reorderings; "
                                    "use an exact engine or the MILP bridge");
    const auto start = std::chrono::steady_clock::now();
    const double sign = measure.maximize() ? -1.0 : 1.0;

    std::vector<int> row_map(n), col_map(m);
    DenseMatrix buffer(n, m, 0.0);
    double best_value = std::numeric_limits<double>::infinity();
    std::vector<int> best_rows, best_cols;

    for (int i = 0; i < n; ++i) row_map[i] = i;
    do {
        for (int j = 0; j < m; ++j) col_map[j] = j;
        do {
            const std::vector<int>& cols = coordinated ? row_map : col_map;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < m; ++j) buffer(row_map[i], cols[j]) = a(i, j);
            const double value = sign * measure.evaluate(buffer);
            if (value < best_value) {
                best_value = value;
                best_rows = row_map;
                best_cols = cols;
            }
            if (coordinated) break;
        } while (std::next_permutation(col_map.begin(), col_map.end()));
    } while (std::next_permutation(row_map.begin(), row_map.end()));

    SeriationResult res;
    res.row_perm = Permutation(best_rows);
    res.col_perm = Permutation(best_cols);
    res.status = SolveStatus::Optimal;
    res.bound = sign * best_value;
    res.solver_name = coordinated ? "brute_force_coordinated" : "brute_force";
    finalize_result(res, a, measure, sign * best_value);
    res.bound = res.objective;
    res.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

SeriationResult solve_separable(const DenseMatrix& a, const MeasureSpec& measure,
                                bool coordinated, Engine engine, const SolveLimits& limits) {
    if (measure.kind != MeasureSpec::Kind::VN && measure.kind != MeasureSpec::Kind::ME)
        throw std::invalid_argument("solve_separable: only von Neumann stress and ME decompose "
                                    "into independent Hamiltonian paths");
    if (coordinated && a.rows() != a.cols())
        throw std::invalid_argument("solve_separable: coordinated seriation needs a square matrix");
    if (engine == Engine::Brute) return brute_force(a, measure, coordinated);

    const auto start = std::chrono::steady_clock::now();
    const auto [row_graph, col_graph] = measure.kind == MeasureSpec::Kind::VN
                                            ? vn_weights(a, measure.p)
                                            : me_weights(a);
    if (engine == Engine::Auto)
        engine = std::max(row_graph.size(), col_graph.size()) <= 20 ? Engine::HeldKarp
                                                                    : Engine::BranchAndBound;
    SeriationResult res;
    double claimed = 0.0, bound = 0.0;
    bool optimal = true;
    if (coordinated) {
        const PathGraph merged = coordinated_merge(row_graph, col_graph);
        const PathResult pr = solve_path(merged, engine, limits);
        res.row_perm = Permutation::from_order(pr.order);
        res.col_perm = res.row_perm;
        claimed = pr.value;
        bound = pr.bound;
        optimal = pr.optimal;
    } else {
        const PathResult pr = solve_path(row_graph, engine, limits);
        const PathResult pc = solve_path(col_graph, engine, limits);
        res.row_perm = Permutation::from_order(pr.order);
        res.col_perm = Permutation::from_order(pc.order);
        claimed = pr.value + pc.value;
        bound = pr.bound + pc.bound;
        optimal = pr.optimal && pc.optimal;
    }
    res.status = optimal ? SolveStatus::Optimal : SolveStatus::LimitReached;
    res.bound = bound;
    res.solver_name = engine == Engine::HeldKarp ? "held_karp" : "branch_and_bound";
    finalize_result(res, a, measure, claimed);
    if (res.status == SolveStatus::Optimal) res.bound = res.objective;
    res.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

SeriationResult solve_moore(const DenseMatrix& a, int p, MooreMode mode,
                            const SolveLimits& limits, const ExternalSolverConfig* config) {
    const MeasureSpec measure = MeasureSpec::moore(p);
    if (mode == MooreMode::ExactTiny) {
        SeriationResult res = brute_force(a, measure, false);
        res.solver_name = "moore_exact_tiny";
        return res;
    }
    if (mode == MooreMode::MilpBridge) {
        if (!config)
            throw SolverConfigError(
                "solve_moore: the MILP bridge needs an external solver configuration");
        return solve_with_external(a, measure, Formulation::HpmMoore, false, *config);
    }

    const auto start = std::chrono::steady_clock::now();
    const int n = a.rows(), m = a.cols();
    const auto [row_vn, col_vn] = vn_weights(a, p);
    const MooreCoupling coupling = moore_coupling(a, p);

    std::vector<int> row_order(n), col_order(m);
    for (int i = 0; i < n; ++i) row_order[i] = i;
    for (int j = 0; j < m; ++j) col_order[j] = j;

    auto moore_value = [&](const std::vector<int>& rows, const std::vector<int>& cols) {
        return row_vn.path_value(rows) + col_vn.path_value(cols) +
               moore_coupling_value(coupling, rows, cols);
    };

    auto effective_row_graph = [&](const std::vector<int>& cols) {
        PathGraph g(n, Sense::Minimize);
        for (int i = 0; i < n; ++i)
            for (int k = i + 1; k < n; ++k) {
                double w = row_vn.weight(i, k);
                for (std::size_t u = 0; u + 1 < cols.size(); ++u)
                    w += 2.0 * coupling.cost(i, k, cols[u], cols[u + 1]);
                g.set_weight(i, k, w);
            }
        return g;
    };
    auto effective_col_graph = [&](const std::vector<int>& rows) {
        PathGraph g(m, Sense::Minimize);
        for (int j = 0; j < m; ++j)
            for (int l = j + 1; l < m; ++l) {
                double w = col_vn.weight(j, l);
                for (std::size_t t = 0; t + 1 < rows.size(); ++t)
                    w += 2.0 * coupling.cost(rows[t], rows[t + 1], j, l);
                g.set_weight(j, l, w);
            }
        return g;
    };

    double current = moore_value(row_order, col_order);
    for (int pass = 0; pass < 100; ++pass) {
        const PathGraph rg = effective_row_graph(col_order);
        std::vector<int> new_rows =
            n == 1 ? row_order
                   : (rg.size() <= 20 ? held_karp_path(rg).order
                                      : branch_and_bound_path(rg, &row_order, limits).order);
        const PathGraph cg = effective_col_graph(new_rows);
        std::vector<int> new_cols =
            m == 1 ? col_order
                   : (cg.size() <= 20 ? held_karp_path(cg).order
                                      : branch_and_bound_path(cg, &col_order, limits).order);
        const double value = moore_value(new_rows, new_cols);
        if (value < current) {
            current = value;
            row_order = std::move(new_rows);
            col_order = std::move(new_cols);
        } else {
            break;
        }
    }

    // VN path optima lower-bound the Moore stress (the coupling is >= 0).
    double lower = 0.0;
    if (n > 1)
        lower += (n <= 20 ? held_karp_path(row_vn) : branch_and_bound_path(row_vn, nullptr, limits))
                     .bound;
    if (m > 1)
        lower += (m <= 20 ? held_karp_path(col_vn) : branch_and_bound_path(col_vn, nullptr, limits))
                     .bound;

    SeriationResult res;
    res.row_perm = Permutation::from_order(row_order);
    res.col_perm = Permutation::from_order(col_order);
    res.bound = lower;
    res.status = current <= lower ? SolveStatus::Optimal : SolveStatus::FeasibleWithGap;
    res.solver_name = "moore_alternating";
    finalize_result(res, a, measure, current);
    if (res.status == SolveStatus::Optimal) res.bound = res.objective;
    res.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

}  // namespace seriation
