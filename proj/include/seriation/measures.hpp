#pragma once

#include <string>

#include "seriation/matrix.hpp"
#include "seriation/neighborhood.hpp"

namespace seriation {

struct StressParams {
    int p = 1;  // norm exponent, 1 or 2
    NeighborhoodSpec spec = NeighborhoodSpec::von_neumann();
};

// Sum over the cell's neighbors of |a_cell - a_neighbor|^p.
double cell_stress(const DenseMatrix& a, const StressParams& params, Cell cell);

// Sum of cell_stress over all cells; every unordered neighbor pair is counted
// twice, once from each endpoint.
double total_stress(const DenseMatrix& a, const StressParams& params);

// Neighborhood-size-normalized average stress, in [0,1] for matrices with
// entries in [0,1]. 0 iff the matrix is constant; 1 for the binary chessboard
// under von Neumann. Warns on stderr if entries fall outside [0,1].
double homogeneity(const DenseMatrix& a, const StressParams& params);

// McCormick's Measure of Effectiveness with out-of-range neighbors read as 0
// and the one-half factor applied to both the horizontal and vertical terms,
// so every unordered adjacent pair contributes its product exactly once.
double effectiveness(const DenseMatrix& a);

struct DeviationReport {
    double dev_n = 0.0;    // von Neumann stress, (orig - new) / orig
    double dev_mo = 0.0;   // Moore stress, (orig - new) / orig
    double dev_me = 0.0;   // effectiveness, (new - orig) / orig
    double dev_hom = 0.0;  // homogeneity, (orig - new) / orig
};

// Relative improvements of `reordered` over `original`; 0 wherever the
// original measure is 0. Homogeneity is evaluated on min-max normalized
// copies (same affine map for both, so ratios are unaffected).
DeviationReport deviation_report(const DenseMatrix& original, const DenseMatrix& reordered,
                                 int p = 1);

struct MeasureReport {
    double vn_p1 = 0.0;
    double vn_p2 = 0.0;
    double moore_p1 = 0.0;
    double moore_p2 = 0.0;
    double me = 0.0;
    double homogeneity = 0.0;  // von Neumann, p=1, on the normalized matrix
};

MeasureReport measure_report(const DenseMatrix& a);

// The objective a solver run optimizes: a stress family member or ME.
struct MeasureSpec {
    enum class Kind { VN, Moore, Cross2, Eps, ME };

    Kind kind = Kind::VN;
    int p = 1;
    double eps = 0.0;  // used by Kind::Eps

    static MeasureSpec vn(int p) { return {Kind::VN, p, 0.0}; }
    static MeasureSpec moore(int p) { return {Kind::Moore, p, 0.0}; }
    static MeasureSpec cross2(int p) { return {Kind::Cross2, p, 0.0}; }
    static MeasureSpec eps_ball(double eps, int p) { return {Kind::Eps, p, eps}; }
    static MeasureSpec me() { return {Kind::ME, 1, 0.0}; }

    bool maximize() const { return kind == Kind::ME; }
    bool is_stress() const { return kind != Kind::ME; }
    NeighborhoodSpec neighborhood() const;
    // total_stress for stress kinds, effectiveness for ME.
    double evaluate(const DenseMatrix& a) const;
    std::string name() const;
    // Inverse of name(); throws ParseError on unknown names.
    static MeasureSpec from_name(const std::string& name);
};

}  // namespace seriation
