#pragma once

#include <string>
#include <utility>
#include <vector>

namespace seriation {

using CellOffset = std::pair<int, int>;  // (row delta, col delta)
using Cell = std::pair<int, int>;        // (row, col), 0-based

// Parameterized family of cell neighborhoods. The epsilon family is the
// Euclidean ball of radius eps around a cell; von Neumann and Moore are its
// eps=1 and eps=1.5 members. cross2 reaches two steps along the same row or
// column. The cell itself is never its own neighbor.
class NeighborhoodSpec {
public:
    enum class Kind { Epsilon, VonNeumann, Moore, Cross2, Custom };

    static NeighborhoodSpec von_neumann() { return NeighborhoodSpec(Kind::VonNeumann, 1.0); }
    static NeighborhoodSpec moore() { return NeighborhoodSpec(Kind::Moore, 1.5); }
    static NeighborhoodSpec cross2() { return NeighborhoodSpec(Kind::Cross2, 0.0); }
    static NeighborhoodSpec epsilon(double eps);
    static NeighborhoodSpec custom(std::vector<CellOffset> offsets);

    Kind kind() const { return kind_; }
    double eps() const { return eps_; }

    // Offsets defining the neighborhood on an unbounded grid, sorted.
    const std::vector<CellOffset>& offsets() const { return offsets_; }

    std::string name() const;

private:
    NeighborhoodSpec(Kind kind, double eps);

    Kind kind_;
    double eps_;
    std::vector<CellOffset> offsets_;
};

// Neighbor cells of `cell` inside an n x m grid, sorted by (row, col).
// Throws std::invalid_argument if the cell is outside the grid.
std::vector<Cell> neighbors(const NeighborhoodSpec& spec, Cell cell, int n, int m);

// Exact test for dr^2 + dc^2 <= eps^2 treating eps as the rational number its
// floating-point representation denotes, so boundary offsets never
// misclassify.
bool offset_within_epsilon(int dr, int dc, double eps);

// Parses "dr,dc;dr,dc;..." (used for CLI/config custom neighborhoods).
std::vector<CellOffset> parse_offsets(const std::string& text);

}  // namespace seriation
