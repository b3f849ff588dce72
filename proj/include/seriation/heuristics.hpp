#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "seriation/matrix.hpp"
#include "seriation/weights.hpp"

namespace seriation {

// Bond energy of a reordering: sum over consecutive rows of the reordered
// matrix of their dot products, plus the analogous column term. Equal to
// effectiveness(apply_permutations(a, row_perm, col_perm)).
double bond_energy(const DenseMatrix& a, const Permutation& row_perm,
                   const Permutation& col_perm);

// Bond Energy Algorithm: greedy insertion of rows, then columns, each into
// the gap that maximizes the incremental bond energy, alternating until a
// full row+column pass leaves both orders unchanged (at most 50 alternations).
// Deterministic given seed_index (the first element placed; defaults to 0).
std::pair<Permutation, Permutation> bea(const DenseMatrix& a,
                                        std::optional<int> seed_index = std::nullopt);

// Greedy insertion order for a single axis; exposed for warm starts.
std::vector<int> bea_axis_order(const PathGraph& me_graph, int seed_index);

// Repeated first-improvement segment reversals until none improves the path
// value (for the graph's sense). Never returns a worse order.
std::vector<int> two_opt_path(const PathGraph& g, std::vector<int> order);

}  // namespace seriation
