#pragma once

#include <optional>
#include <vector>

#include "seriation/weights.hpp"

namespace seriation {

struct SolveLimits {
    std::optional<double> time_limit_s;
    std::optional<long long> node_limit;

    void validate() const;
};

struct PathResult {
    std::vector<int> order;  // node ids in path order
    double value = 0.0;      // sum of consecutive edge weights
    double bound = 0.0;      // valid lower (minimize) / upper (maximize) bound
    bool optimal = false;
    long long nodes_explored = 0;
};

// Exact dynamic program over (subset, endpoint) states. Guarded at 20 nodes
// (the state table is 2^size * size). Ties resolve to the lexicographically
// smallest optimal order, which always has first endpoint < last endpoint.
PathResult held_karp_path(const PathGraph& g);

// Depth-first branch-and-bound with a spanning-tree completion bound. The
// warm order, when given, seeds the incumbent; limits turn the result into a
// feasible-with-valid-bound answer instead of a proof.
PathResult branch_and_bound_path(const PathGraph& g, const std::vector<int>* warm,
                                 const SolveLimits& limits);

// Nearest-neighbor construction from node 0; used to seed the incumbent.
std::vector<int> nearest_neighbor_order(const PathGraph& g);

}  // namespace seriation
