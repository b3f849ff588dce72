#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace seriation {

// Dense real matrix in row-major order. Entries must be finite; dimensions
// are at least 1x1. Immutable use is the norm: functions return new matrices.
class DenseMatrix {
public:
    DenseMatrix(int n_rows, int n_cols, double fill = 0.0);
    DenseMatrix(int n_rows, int n_cols, std::vector<double> entries);

    int rows() const { return n_rows_; }
    int cols() const { return n_cols_; }

    double operator()(int i, int j) const { return entries_[static_cast<std::size_t>(i) * n_cols_ + j]; }
    double& operator()(int i, int j) { return entries_[static_cast<std::size_t>(i) * n_cols_ + j]; }

    // Bounds-checked access; throws std::invalid_argument on out-of-range.
    double at(int i, int j) const;

    const std::vector<double>& entries() const { return entries_; }

    bool same_shape(const DenseMatrix& other) const {
        return n_rows_ == other.n_rows_ && n_cols_ == other.n_cols_;
    }

private:
    int n_rows_;
    int n_cols_;
    std::vector<double> entries_;
};

// Bijection original index -> assigned position, 0-based.
class Permutation {
public:
    explicit Permutation(std::vector<int> mapping);
    static Permutation identity(int size);
    // Builds the permutation that sends order[t] to position t.
    static Permutation from_order(const std::vector<int>& order);

    int size() const { return static_cast<int>(mapping_.size()); }
    int operator()(int i) const { return mapping_[i]; }
    const std::vector<int>& mapping() const { return mapping_; }

    Permutation inverse() const;
    // order()[t] = original index placed at position t (inverse mapping).
    std::vector<int> order() const;

    bool operator==(const Permutation& other) const { return mapping_ == other.mapping_; }

private:
    std::vector<int> mapping_;
};

// compose(outer, inner)(i) = outer(inner(i)): applying inner first, then
// outer, equals applying the composition once.
Permutation compose(const Permutation& outer, const Permutation& inner);

struct NormalizationInfo {
    double a_min = 0.0;
    double a_max = 0.0;
    double scale = 0.0;  // a_max - a_min
};

// Min-max normalization onto [0,1]. A constant matrix maps to all zeros with
// scale = 0 (every seriation of it is optimal with stress 0).
std::pair<DenseMatrix, NormalizationInfo> normalize(const DenseMatrix& a);

// Stress computed on the normalized matrix, scaled back to the original:
// rho = scale^p * rho_tilde.
double denormalize_objective(double rho_tilde, const NormalizationInfo& info, int p);

// out[sigma_r(i)][sigma_c(j)] = a[i][j].
DenseMatrix apply_permutations(const DenseMatrix& a, const Permutation& sigma_r,
                               const Permutation& sigma_c);

// Binary matrix M with M[sigma(i)][i] = 1, so M*A permutes rows by sigma.
// The column side enters transposed: permutation_matrix(sigma_r) * A *
// permutation_matrix(sigma_c.inverse()) == apply_permutations(A, sigma_r, sigma_c).
DenseMatrix permutation_matrix(const Permutation& sigma);

// Plain product, used to cross-check permutation_matrix against
// apply_permutations.
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);

}  // namespace seriation
