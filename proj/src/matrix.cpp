#include "seriation/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace seriation {

namespace {

void check_dims(int n_rows, int n_cols) {
    if (n_rows < 1 || n_cols < 1)
        throw std::invalid_argument("DenseMatrix: dimensions must be at least 1x1, got " +
                                    std::to_string(n_rows) + "x" + std::to_string(n_cols));
}

void check_finite(const std::vector<double>& entries) {
    for (double v : entries)
        if (!std::isfinite(v)) throw std::invalid_argument("DenseMatrix: entries must be finite");
}

}  // namespace

DenseMatrix::DenseMatrix(int n_rows, int n_cols, double fill)
    : n_rows_(n_rows), n_cols_(n_cols),
      entries_(static_cast<std::size_t>(n_rows) * static_cast<std::size_t>(n_cols), fill) {
    check_dims(n_rows, n_cols);
    if (!std::isfinite(fill)) throw std::invalid_argument("DenseMatrix: entries must be finite");
}

DenseMatrix::DenseMatrix(int n_rows, int n_cols, std::vector<double> entries)
    : n_rows_(n_rows), n_cols_(n_cols), entries_(std::move(entries)) {
    check_dims(n_rows, n_cols);
    if (entries_.size() != static_cast<std::size_t>(n_rows) * static_cast<std::size_t>(n_cols))
        throw std::invalid_argument("DenseMatrix: entry count does not match dimensions");
    check_finite(entries_);
}

double DenseMatrix::at(int i, int j) const {
    if (i < 0 || i >= n_rows_ || j < 0 || j >= n_cols_)
        throw std::invalid_argument("DenseMatrix: index (" + std::to_string(i) + "," +
                                    std::to_string(j) + ") out of range for " +
                                    std::to_string(n_rows_) + "x" + std::to_string(n_cols_));
    return (*this)(i, j);
}

Permutation::Permutation(std::vector<int> mapping) : mapping_(std::move(mapping)) {
    if (mapping_.empty()) throw std::invalid_argument("Permutation: empty mapping");
    std::vector<char> seen(mapping_.size(), 0);
    for (int p : mapping_) {
        if (p < 0 || p >= static_cast<int>(mapping_.size()) || seen[p])
            throw std::invalid_argument("Permutation: mapping is not a bijection");
        seen[p] = 1;
    }
}

Permutation Permutation::identity(int size) {
    std::vector<int> m(size);
    for (int i = 0; i < size; ++i) m[i] = i;
    return Permutation(std::move(m));
}

Permutation Permutation::from_order(const std::vector<int>& order) {
    std::vector<int> m(order.size(), -1);
    for (int t = 0; t < static_cast<int>(order.size()); ++t) {
        int node = order[t];
        if (node < 0 || node >= static_cast<int>(order.size()) || m[node] != -1)
            throw std::invalid_argument("Permutation::from_order: not a permutation of indices");
        m[node] = t;
    }
    return Permutation(std::move(m));
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(mapping_.size());
    for (int i = 0; i < size(); ++i) inv[mapping_[i]] = i;
    return Permutation(std::move(inv));
}

std::vector<int> Permutation::order() const { return inverse().mapping(); }

Permutation compose(const Permutation& outer, const Permutation& inner) {
    if (outer.size() != inner.size())
        throw std::invalid_argument("compose: size mismatch");
    std::vector<int> m(inner.size());
    for (int i = 0; i < inner.size(); ++i) m[i] = outer(inner(i));
    return Permutation(std::move(m));
}

std::pair<DenseMatrix, NormalizationInfo> normalize(const DenseMatrix& a) {
    const auto& e = a.entries();
    NormalizationInfo info;
    info.a_min = *std::min_element(e.begin(), e.end());
    info.a_max = *std::max_element(e.begin(), e.end());
    info.scale = info.a_max - info.a_min;
    std::vector<double> out(e.size(), 0.0);
    if (info.scale > 0.0)
        for (std::size_t i = 0; i < e.size(); ++i) out[i] = (e[i] - info.a_min) / info.scale;
    return {DenseMatrix(a.rows(), a.cols(), std::move(out)), info};
}

double denormalize_objective(double rho_tilde, const NormalizationInfo& info, int p) {
    if (p != 1 && p != 2) throw std::invalid_argument("denormalize_objective: p must be 1 or 2");
    if (info.scale < 0.0) throw std::invalid_argument("denormalize_objective: negative scale");
    double factor = p == 1 ? info.scale : info.scale * info.scale;
    return factor * rho_tilde;
}

DenseMatrix apply_permutations(const DenseMatrix& a, const Permutation& sigma_r,
                               const Permutation& sigma_c) {
    if (sigma_r.size() != a.rows() || sigma_c.size() != a.cols())
        throw std::invalid_argument("apply_permutations: permutation sizes do not match matrix");
    DenseMatrix out(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) out(sigma_r(i), sigma_c(j)) = a(i, j);
    return out;
}

DenseMatrix permutation_matrix(const Permutation& sigma) {
    DenseMatrix p(sigma.size(), sigma.size(), 0.0);
    for (int i = 0; i < sigma.size(); ++i) p(sigma(i), i) = 1.0;
    return p;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: inner dimensions differ");
    DenseMatrix out(a.rows(), b.cols(), 0.0);
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

}  // namespace seriation
