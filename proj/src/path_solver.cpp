#include "seriation/path_solver.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace seriation {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Clock = std::chrono::steady_clock;

// Internally everything minimizes; a maximize graph is negated on entry and
// the value/bound negated on exit.
struct MinimizedWeights {
    int n;
    bool negated;
    std::vector<double> w;

    explicit MinimizedWeights(const PathGraph& g)
        : n(g.size()), negated(g.sense() == Sense::Maximize),
          w(static_cast<std::size_t>(g.size()) * g.size()) {
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                w[static_cast<std::size_t>(i) * n + k] =
                    negated ? -g.weight(i, k) : g.weight(i, k);
    }

    double at(int i, int k) const { return w[static_cast<std::size_t>(i) * n + k]; }
};

void validate_order(const PathGraph& g, const std::vector<int>& order, const char* who) {
    if (static_cast<int>(order.size()) != g.size())
        throw std::invalid_argument(std::string(who) + ": order size does not match graph");
    std::vector<char> seen(order.size(), 0);
    for (int v : order) {
        if (v < 0 || v >= g.size() || seen[v])
            throw std::invalid_argument(std::string(who) + ": order is not a permutation");
        seen[v] = 1;
    }
}

// Prim MST over the nodes selected in `mask` (bitmask over [0,n)).
double mst_value(const MinimizedWeights& mw, std::uint32_t mask) {
    if (mask == 0) return 0.0;
    const int n = mw.n;
    double total = 0.0;
    std::uint32_t in_tree = mask & (~mask + 1);  // lowest set bit
    std::vector<double> dist(n, kInf);
    const int first = std::countr_zero(in_tree);
    for (int v = 0; v < n; ++v)
        if ((mask >> v) & 1) dist[v] = mw.at(first, v);
    std::uint32_t rest = mask & ~in_tree;
    while (rest != 0) {
        int best = -1;
        double best_d = kInf;
        for (std::uint32_t s = rest; s != 0; s &= s - 1) {
            const int v = std::countr_zero(s);
            if (dist[v] < best_d) {
                best_d = dist[v];
                best = v;
            }
        }
        total += best_d;
        rest &= ~(1u << best);
        for (std::uint32_t s = rest; s != 0; s &= s - 1) {
            const int v = std::countr_zero(s);
            dist[v] = std::min(dist[v], mw.at(best, v));
        }
    }
    return total;
}

std::vector<int> lex_min_direction(std::vector<int> order) {
    std::vector<int> rev(order.rbegin(), order.rend());
    return rev < order ? rev : order;
}

}  // namespace

void SolveLimits::validate() const {
    if (time_limit_s && *time_limit_s <= 0.0)
        throw std::invalid_argument("SolveLimits: time limit must be positive");
    if (node_limit && *node_limit <= 0)
        throw std::invalid_argument("SolveLimits: node limit must be positive");
}

std::vector<int> nearest_neighbor_order(const PathGraph& g) {
    MinimizedWeights mw(g);
    const int n = g.size();
    std::vector<int> order{0};
    std::vector<char> used(n, 0);
    used[0] = 1;
    for (int step = 1; step < n; ++step) {
        const int cur = order.back();
        int best = -1;
        double best_w = kInf;
        for (int v = 0; v < n; ++v)
            if (!used[v] && mw.at(cur, v) < best_w) {
                best_w = mw.at(cur, v);
                best = v;
            }
        used[best] = 1;
        order.push_back(best);
    }
    return order;
}

PathResult held_karp_path(const PathGraph& g) {
    const int n = g.size();
    if (n > 20)
        throw std::invalid_argument("held_karp_path: refusing instances above 20 nodes "
                                    "(2^n state table); use branch_and_bound_path");
    PathResult res;
    if (n == 1) {
        res.order = {0};
        res.optimal = true;
        return res;
    }
    MinimizedWeights mw(g);
    const std::size_t full = (std::size_t{1} << n) - 1;
    // dp[S*n + v] = min cost of a path visiting exactly S, starting at v in S.
    std::vector<double> dp((full + 1) * n, kInf);
    for (int v = 0; v < n; ++v) dp[(std::size_t{1} << v) * n + v] = 0.0;
    for (std::size_t s = 1; s <= full; ++s) {
        if ((s & (s - 1)) == 0) continue;  // singletons are seeded
        for (std::size_t bits = s; bits != 0; bits &= bits - 1) {
            const int v = std::countr_zero(bits);
            const std::size_t without = s & ~(std::size_t{1} << v);
            double best = kInf;
            for (std::size_t b2 = without; b2 != 0; b2 &= b2 - 1) {
                const int u = std::countr_zero(b2);
                const double cand = mw.at(v, u) + dp[without * n + u];
                if (cand < best) best = cand;
            }
            dp[s * n + v] = best;
        }
    }
    double best = kInf;
    for (int v = 0; v < n; ++v) best = std::min(best, dp[full * n + v]);

    // Greedy lexicographically-smallest reconstruction: at each step take the
    // smallest next node that still completes to the optimal value. Exact
    // double comparisons are safe because both sides were computed from the
    // same expressions.
    std::vector<int> order;
    std::size_t s = full;
    int cur = -1;
    for (int v = 0; v < n; ++v)
        if (dp[full * n + v] == best) {
            cur = v;
            break;
        }
    order.push_back(cur);
    while (order.size() < static_cast<std::size_t>(n)) {
        const std::size_t without = s & ~(std::size_t{1} << cur);
        const double need = dp[s * n + cur];
        for (std::size_t b2 = without; b2 != 0; b2 &= b2 - 1) {
            const int u = std::countr_zero(b2);
            if (mw.at(cur, u) + dp[without * n + u] == need) {
                order.push_back(u);
                s = without;
                cur = u;
                break;
            }
        }
    }
    // Floating-point sums are direction-sensitive, so the reversal of an
    // optimal order may miss the dp equality by an ulp; normalize the
    // direction explicitly.
    res.order = lex_min_direction(std::move(order));
    res.value = mw.negated ? -best : best;
    res.bound = res.value;
    res.optimal = true;
    res.nodes_explored = static_cast<long long>(full) + 1;
    return res;
}

PathResult branch_and_bound_path(const PathGraph& g, const std::vector<int>* warm,
                                 const SolveLimits& limits) {
    const int n = g.size();
    if (n < 2) throw std::invalid_argument("branch_and_bound_path: needs at least 2 nodes");
    limits.validate();
    MinimizedWeights mw(g);

    auto order_value = [&](const std::vector<int>& order) {
        double v = 0.0;
        for (std::size_t t = 0; t + 1 < order.size(); ++t) v += mw.at(order[t], order[t + 1]);
        return v;
    };

    std::vector<int> incumbent = warm ? *warm : nearest_neighbor_order(g);
    if (warm) validate_order(g, *warm, "branch_and_bound_path");
    double incumbent_value = order_value(incumbent);

    struct Frame {
        std::uint32_t visited;
        double cost;
        double bound;
        std::vector<int> path;
    };

    const std::uint32_t full = (n >= 32) ? 0 : ((1u << n) - 1);
    if (n >= 32)
        throw std::invalid_argument("branch_and_bound_path: instances above 31 nodes unsupported");

    std::vector<Frame> stack;
    stack.reserve(static_cast<std::size_t>(n) * n);
    // Root children: each possible start node, largest pushed first so the
    // smallest is explored first.
    for (int v = n - 1; v >= 0; --v) {
        Frame f;
        f.visited = 1u << v;
        f.cost = 0.0;
        f.bound = mst_value(mw, full);  // path covers all nodes; MST bounds it
        f.path = {v};
        stack.push_back(std::move(f));
    }

    const auto start_time = Clock::now();
    long long nodes = 0;
    bool interrupted = false;

    while (!stack.empty()) {
        if (limits.node_limit && nodes >= *limits.node_limit) {
            interrupted = true;
            break;
        }
        if (limits.time_limit_s && (nodes & 0xff) == 0) {
            const double elapsed =
                std::chrono::duration<double>(Clock::now() - start_time).count();
            if (elapsed >= *limits.time_limit_s) {
                interrupted = true;
                break;
            }
        }
        Frame f = std::move(stack.back());
        stack.pop_back();
        ++nodes;
        if (f.bound >= incumbent_value) continue;  // cannot strictly improve
        if (f.path.size() == static_cast<std::size_t>(n)) {
            if (f.cost < incumbent_value) {
                incumbent_value = f.cost;
                incumbent = f.path;
            }
            continue;
        }
        const int cur = f.path.back();
        for (int v = n - 1; v >= 0; --v) {
            if ((f.visited >> v) & 1) continue;
            Frame child;
            child.visited = f.visited | (1u << v);
            child.cost = f.cost + mw.at(cur, v);
            // Completion is a Hamiltonian path on the unvisited nodes plus the
            // new endpoint v, hence at least their MST.
            child.bound = child.cost + mst_value(mw, full & ~f.visited);
            if (child.bound >= incumbent_value) continue;
            child.path = f.path;
            child.path.push_back(v);
            stack.push_back(std::move(child));
        }
    }

    double global_bound = incumbent_value;
    if (interrupted)
        for (const Frame& f : stack) global_bound = std::min(global_bound, f.bound);

    PathResult res;
    res.order = lex_min_direction(std::move(incumbent));
    res.value = mw.negated ? -incumbent_value : incumbent_value;
    res.bound = mw.negated ? -global_bound : global_bound;
    res.optimal = !interrupted;
    res.nodes_explored = nodes;
    return res;
}

}  // namespace seriation
