#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "seriation/matrix.hpp"

namespace seriation {

enum class Family { Easy, Sqr, Nsq, BinSquare, BinNonsquare };

Family family_from_name(const std::string& name);
std::string family_name(Family family);

struct GenSpec {
    Family family = Family::Easy;
    int n = 0;
    int m = 0;            // square families require m == n
    double density = 0.0; // binary families only, in (0,1)
    std::uint64_t seed = 0;

    void validate() const;
};

// Points are logged so instances can be audited and the optimal order of an
// easy instance compared against the generating geometry. 1D families store
// one coordinate per point; planar families store x,y interleaved.
struct GeneratedInstance {
    GenSpec spec;
    DenseMatrix matrix = DenseMatrix(1, 1);
    std::vector<double> row_points;
    std::vector<double> col_points;  // equals row_points for square families
};

// Deterministic given the spec: easy = pairwise |p_i - p_j| of n points in
// [0,100]; sqr/nsq = planar Euclidean distances; binary = i.i.d.
// Bernoulli(density).
GeneratedInstance generate(const GenSpec& spec);

}  // namespace seriation
