#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "seriation/errors.hpp"
#include "seriation/neighborhood.hpp"

using namespace seriation;

TEST_CASE("interior and border neighbor counts") {
    // 7x7 grid, interior cell (3,3).
    CHECK(neighbors(NeighborhoodSpec::von_neumann(), {3, 3}, 7, 7).size() == 4);
    CHECK(neighbors(NeighborhoodSpec::moore(), {3, 3}, 7, 7).size() == 8);
    CHECK(neighbors(NeighborhoodSpec::epsilon(2.0), {3, 3}, 7, 7).size() == 12);
    CHECK(neighbors(NeighborhoodSpec::cross2(), {3, 3}, 7, 7).size() == 8);
    // Corner cells keep 3 of the 8 Moore neighbors.
    CHECK(neighbors(NeighborhoodSpec::moore(), {0, 0}, 7, 7).size() == 3);
    CHECK(neighbors(NeighborhoodSpec::von_neumann(), {0, 0}, 7, 7).size() == 2);
}

TEST_CASE("cross2 interior offsets") {
    const auto cells = neighbors(NeighborhoodSpec::cross2(), {3, 3}, 7, 7);
    const std::set<Cell> expect{{1, 3}, {2, 3}, {4, 3}, {5, 3}, {3, 1}, {3, 2}, {3, 4}, {3, 5}};
    CHECK(std::set<Cell>(cells.begin(), cells.end()) == expect);
}

TEST_CASE("1x1 grid has no neighbors under any spec") {
    for (const auto& spec :
         {NeighborhoodSpec::von_neumann(), NeighborhoodSpec::moore(), NeighborhoodSpec::cross2(),
          NeighborhoodSpec::epsilon(3.0)})
        CHECK(neighbors(spec, {0, 0}, 1, 1).empty());
}

TEST_CASE("out-of-range cells are rejected") {
    CHECK_THROWS_AS(neighbors(NeighborhoodSpec::von_neumann(), {3, 0}, 3, 3),
                    std::invalid_argument);
    CHECK_THROWS_AS(neighbors(NeighborhoodSpec::von_neumann(), {-1, 0}, 3, 3),
                    std::invalid_argument);
}

TEST_CASE("epsilon(1) == von Neumann and epsilon(1.5) == Moore, exhaustively") {
    const auto vn = NeighborhoodSpec::von_neumann();
    const auto e1 = NeighborhoodSpec::epsilon(1.0);
    const auto mo = NeighborhoodSpec::moore();
    const auto e15 = NeighborhoodSpec::epsilon(1.5);
    for (int n = 1; n <= 10; ++n)
        for (int m = 1; m <= 10; ++m)
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < m; ++c) {
                    CHECK(neighbors(vn, {r, c}, n, m) == neighbors(e1, {r, c}, n, m));
                    CHECK(neighbors(mo, {r, c}, n, m) == neighbors(e15, {r, c}, n, m));
                }
}

TEST_CASE("neighbor symmetry for all built-in families") {
    for (const auto& spec :
         {NeighborhoodSpec::von_neumann(), NeighborhoodSpec::moore(), NeighborhoodSpec::cross2(),
          NeighborhoodSpec::epsilon(2.0), NeighborhoodSpec::epsilon(2.5)}) {
        const int n = 6, m = 5;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < m; ++c)
                for (const auto& cell : neighbors(spec, {r, c}, n, m)) {
                    const auto back = neighbors(spec, cell, n, m);
                    CHECK(std::find(back.begin(), back.end(), Cell{r, c}) != back.end());
                }
    }
}

TEST_CASE("truncation: constant interior counts, strictly smaller at borders") {
    struct Case {
        NeighborhoodSpec spec;
        std::size_t interior;
    };
    const Case cases[] = {{NeighborhoodSpec::von_neumann(), 4},
                          {NeighborhoodSpec::moore(), 8},
                          {NeighborhoodSpec::cross2(), 8},
                          {NeighborhoodSpec::epsilon(2.0), 12}};
    for (const auto& [spec, interior] : cases) {
        for (int r = 2; r < 5; ++r)
            for (int c = 2; c < 5; ++c) CHECK(neighbors(spec, {r, c}, 7, 7).size() == interior);
        CHECK(neighbors(spec, {0, 0}, 7, 7).size() < interior);
        CHECK(neighbors(spec, {0, 3}, 7, 7).size() < interior);
    }
}

TEST_CASE("exact epsilon boundary classification") {
    // sqrt(2.0) rounds to a double just above the real sqrt(2), so the
    // diagonal offset (squared norm 2) is inside that ball but outside the
    // ball one ulp smaller. The comparison must be exact to get this right.
    const double root2 = std::sqrt(2.0);
    CHECK(offset_within_epsilon(1, 1, root2));
    CHECK_FALSE(offset_within_epsilon(1, 1, std::nextafter(root2, 0.0)));
    CHECK(offset_within_epsilon(2, 0, 2.0));
    CHECK(offset_within_epsilon(0, 0, 0.0));
    CHECK_FALSE(offset_within_epsilon(1, 0, 0.0));
    CHECK(offset_within_epsilon(1, 0, root2));
}

TEST_CASE("custom offsets reject (0,0) and parse from text") {
    CHECK_THROWS_AS(NeighborhoodSpec::custom({{0, 0}}), std::invalid_argument);
    const auto offs = parse_offsets("1,0;-1,0;0,3");
    const auto spec = NeighborhoodSpec::custom(offs);
    CHECK(spec.offsets().size() == 3);
    CHECK(neighbors(spec, {1, 0}, 3, 4) == std::vector<Cell>{{0, 0}, {1, 3}, {2, 0}});
    CHECK_THROWS_AS(parse_offsets("1;2"), ParseError);
    CHECK_THROWS_AS(parse_offsets("a,b"), ParseError);
}
