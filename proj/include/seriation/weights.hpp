#pragma once

#include <utility>
#include <vector>

#include "seriation/matrix.hpp"

namespace seriation {

enum class Sense { Minimize, Maximize };

// Complete undirected graph with symmetric edge weights and zero diagonal.
// Optimal Hamiltonian paths on these graphs solve the separable seriation
// problems.
class PathGraph {
public:
    PathGraph(int size, Sense sense);

    int size() const { return size_; }
    Sense sense() const { return sense_; }

    double weight(int i, int k) const { return w_[static_cast<std::size_t>(i) * size_ + k]; }
    void set_weight(int i, int k, double w);

    // Sum of weights along consecutive nodes of `order`.
    double path_value(const std::vector<int>& order) const;

private:
    int size_;
    Sense sense_;
    std::vector<double> w_;
};

// Row and column graphs whose minimum-weight Hamiltonian paths give the
// optimal von Neumann stress seriation:
//   omega[i][k] = 2 sum_j |a_ij - a_kj|^p,  tau[j][l] = 2 sum_i |a_ij - a_il|^p.
std::pair<PathGraph, PathGraph> vn_weights(const DenseMatrix& a, int p);

// Maximum-weight counterparts for the Measure of Effectiveness:
//   omega[i][k] = sum_j a_ij a_kj,  tau[j][l] = sum_i a_ij a_il.
std::pair<PathGraph, PathGraph> me_weights(const DenseMatrix& a);

// Four-index coupling costs of the Moore neighborhood:
//   c[i][k][j][l] = |a_ij - a_kl|^p + |a_il - a_kj|^p  (i != k, j != l).
// Moore total stress of a reordering = VN path weights + 2 * sum over
// (row edge, col edge) pairs of c.
class MooreCoupling {
public:
    MooreCoupling(int n, int m);

    int n() const { return n_; }
    int m() const { return m_; }
    double cost(int i, int k, int j, int l) const {
        return c_[((static_cast<std::size_t>(i) * n_ + k) * m_ + j) * m_ + l];
    }
    void set_cost(int i, int k, int j, int l, double v) {
        c_[((static_cast<std::size_t>(i) * n_ + k) * m_ + j) * m_ + l] = v;
    }

private:
    int n_, m_;
    std::vector<double> c_;
};

MooreCoupling moore_coupling(const DenseMatrix& a, int p);

// Coupling part of the Moore stress for the given orders: 2 * sum over
// consecutive row pairs and consecutive column pairs of c.
double moore_coupling_value(const MooreCoupling& c, const std::vector<int>& row_order,
                            const std::vector<int>& col_order);

// Weight sum for the coordinated (single permutation) problem.
PathGraph coordinated_merge(const PathGraph& g1, const PathGraph& g2);

}  // namespace seriation
