#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "seriation/measures.hpp"
#include "seriation/rng.hpp"

using namespace seriation;

namespace {

DenseMatrix chessboard(int n) {
    DenseMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = (i + j) % 2;
    return a;
}

DenseMatrix random01(int n, int m, Rng& rng) {
    DenseMatrix a(n, m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) a(i, j) = rng.next_double();
    return a;
}

Permutation reversal(int size) {
    std::vector<int> mapping(size);
    for (int i = 0; i < size; ++i) mapping[i] = size - 1 - i;
    return Permutation(std::move(mapping));
}

const StressParams kVn1{1, NeighborhoodSpec::von_neumann()};
const StressParams kVn2{2, NeighborhoodSpec::von_neumann()};
const StressParams kMo1{1, NeighborhoodSpec::moore()};

}  // namespace

TEST_CASE("cell stress by hand") {
    const DenseMatrix chess2(2, 2, {0, 1, 1, 0});
    CHECK(cell_stress(DenseMatrix(3, 3, 0.7), kVn1, {1, 1}) == 0.0);
    CHECK(cell_stress(chess2, kVn1, {0, 0}) == 2.0);
    CHECK(cell_stress(chess2, kVn2, {0, 0}) == 2.0);
    CHECK_THROWS_AS(cell_stress(chess2, kVn1, {2, 0}), std::invalid_argument);
}

TEST_CASE("total stress counts each unordered pair twice") {
    const DenseMatrix chess2(2, 2, {0, 1, 1, 0});
    CHECK(total_stress(DenseMatrix(4, 4, 0.3), kVn1) == 0.0);
    CHECK(total_stress(chess2, kVn1) == 8.0);
    // Moore adds the two diagonal pairs, both with difference 0 here.
    CHECK(total_stress(chess2, kMo1) == 8.0);
    // Cross-check: sum of per-cell stresses equals total_stress.
    Rng rng(5);
    const DenseMatrix a = random01(5, 6, rng);
    for (const auto& params : {kVn1, kVn2, kMo1}) {
        double sum = 0.0;
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < a.cols(); ++j) sum += cell_stress(a, params, {i, j});
        CHECK(sum == doctest::Approx(total_stress(a, params)).epsilon(1e-12));
    }
}

TEST_CASE("homogeneity endpoints and hand value") {
    CHECK(homogeneity(DenseMatrix(3, 4, 0.5), kVn1) == 0.0);
    CHECK(homogeneity(chessboard(4), kVn1) == 1.0);
    CHECK(homogeneity(chessboard(4), kVn2) == 1.0);
    CHECK(homogeneity(DenseMatrix(2, 2, {0, 1, 0, 1}), kVn1) == doctest::Approx(0.5));
    CHECK(homogeneity(DenseMatrix(1, 1, 0.4), kVn1) == 0.0);  // empty neighborhood
}

TEST_CASE("homogeneity stays in [0,1] on [0,1] matrices") {
    Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const DenseMatrix a = random01(3 + trial % 4, 3 + trial % 3, rng);
        for (const auto& spec : {NeighborhoodSpec::von_neumann(), NeighborhoodSpec::moore(),
                                 NeighborhoodSpec::cross2(), NeighborhoodSpec::epsilon(2.0)})
            for (int p : {1, 2}) {
                const double h = homogeneity(a, {p, spec});
                CHECK(h >= 0.0);
                CHECK(h <= 1.0);
            }
    }
}

TEST_CASE("effectiveness examples and transpose invariance") {
    CHECK(effectiveness(DenseMatrix(3, 3, 0.0)) == 0.0);
    CHECK(effectiveness(DenseMatrix(2, 2, 1.0)) == 4.0);
    CHECK(effectiveness(DenseMatrix(1, 3, {1, 2, 3})) == 8.0);
    Rng rng(31);
    const DenseMatrix a = random01(6, 6, rng);
    DenseMatrix at(6, 6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) at(j, i) = a(i, j);
    CHECK(effectiveness(a) == doctest::Approx(effectiveness(at)).epsilon(1e-12));
}

TEST_CASE("stress is invariant under row/column order reversal") {
    Rng rng(37);
    const DenseMatrix a = random01(6, 7, rng);
    const Permutation rev_r = reversal(6), rev_c = reversal(7);
    const Permutation id_r = Permutation::identity(6), id_c = Permutation::identity(7);
    for (const auto& params : {kVn1, kVn2, kMo1,
                               StressParams{1, NeighborhoodSpec::cross2()},
                               StressParams{2, NeighborhoodSpec::epsilon(2.0)}}) {
        const double base = total_stress(a, params);
        CHECK(total_stress(apply_permutations(a, rev_r, id_c), params) == doctest::Approx(base));
        CHECK(total_stress(apply_permutations(a, id_r, rev_c), params) == doctest::Approx(base));
        CHECK(total_stress(apply_permutations(a, rev_r, rev_c), params) == doctest::Approx(base));
    }
}

TEST_CASE("deviation report") {
    Rng rng(43);
    const DenseMatrix a = random01(5, 5, rng);
    const DeviationReport same = deviation_report(a, a);
    CHECK(same.dev_n == 0.0);
    CHECK(same.dev_mo == 0.0);
    CHECK(same.dev_me == 0.0);
    CHECK(same.dev_hom == 0.0);
    // Reference ratios: a VN drop 230 -> 78 is a 66.1% improvement and an
    // ME rise 36 -> 63 a 75% gain.
    CHECK((230.0 - 78.0) / 230.0 == doctest::Approx(0.66087));
    CHECK((63.0 - 36.0) / 36.0 == doctest::Approx(0.75));
    // Zero denominators yield zero deviations.
    const DenseMatrix flat(3, 3, 0.0);
    const DeviationReport z = deviation_report(flat, flat);
    CHECK(z.dev_n == 0.0);
    CHECK(z.dev_me == 0.0);
}

TEST_CASE("measure spec dispatch") {
    const DenseMatrix chess2(2, 2, {0, 1, 1, 0});
    CHECK(MeasureSpec::vn(1).evaluate(chess2) == 8.0);
    CHECK(MeasureSpec::moore(1).evaluate(chess2) == 8.0);
    CHECK(MeasureSpec::me().evaluate(DenseMatrix(2, 2, 1.0)) == 4.0);
    CHECK(MeasureSpec::vn(1).maximize() == false);
    CHECK(MeasureSpec::me().maximize() == true);
    CHECK(MeasureSpec::eps_ball(2.0, 2).name() == "eps2.000000_p2");
}
