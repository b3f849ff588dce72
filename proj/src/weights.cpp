#include "seriation/weights.hpp"

#include <cmath>
#include <stdexcept>

namespace seriation {

namespace {

inline double pow_p(double d, int p) {
    d = std::fabs(d);
    return p == 1 ? d : d * d;
}

void check_p(int p) {
    if (p != 1 && p != 2) throw std::invalid_argument("weights: p must be 1 or 2");
}

}  // namespace

PathGraph::PathGraph(int size, Sense sense)
    : size_(size), sense_(sense),
      w_(static_cast<std::size_t>(size) * static_cast<std::size_t>(size), 0.0) {
    if (size < 1) throw std::invalid_argument("PathGraph: size must be at least 1");
}

void PathGraph::set_weight(int i, int k, double w) {
    if (i == k) throw std::invalid_argument("PathGraph: diagonal weights are fixed at 0");
    if (!std::isfinite(w)) throw std::invalid_argument("PathGraph: weights must be finite");
    w_[static_cast<std::size_t>(i) * size_ + k] = w;
    w_[static_cast<std::size_t>(k) * size_ + i] = w;
}

double PathGraph::path_value(const std::vector<int>& order) const {
    double sum = 0.0;
    for (std::size_t t = 0; t + 1 < order.size(); ++t) sum += weight(order[t], order[t + 1]);
    return sum;
}

std::pair<PathGraph, PathGraph> vn_weights(const DenseMatrix& a, int p) {
    check_p(p);
    PathGraph rows(a.rows(), Sense::Minimize), cols(a.cols(), Sense::Minimize);
    for (int i = 0; i < a.rows(); ++i)
        for (int k = i + 1; k < a.rows(); ++k) {
            double sum = 0.0;
            for (int j = 0; j < a.cols(); ++j) sum += pow_p(a(i, j) - a(k, j), p);
            rows.set_weight(i, k, 2.0 * sum);
        }
    for (int j = 0; j < a.cols(); ++j)
        for (int l = j + 1; l < a.cols(); ++l) {
            double sum = 0.0;
            for (int i = 0; i < a.rows(); ++i) sum += pow_p(a(i, j) - a(i, l), p);
            cols.set_weight(j, l, 2.0 * sum);
        }
    return {rows, cols};
}

std::pair<PathGraph, PathGraph> me_weights(const DenseMatrix& a) {
    PathGraph rows(a.rows(), Sense::Maximize), cols(a.cols(), Sense::Maximize);
    for (int i = 0; i < a.rows(); ++i)
        for (int k = i + 1; k < a.rows(); ++k) {
            double sum = 0.0;
            for (int j = 0; j < a.cols(); ++j) sum += a(i, j) * a(k, j);
            rows.set_weight(i, k, sum);
        }
    for (int j = 0; j < a.cols(); ++j)
        for (int l = j + 1; l < a.cols(); ++l) {
            double sum = 0.0;
            for (int i = 0; i < a.rows(); ++i) sum += a(i, j) * a(i, l);
            cols.set_weight(j, l, sum);
        }
    return {rows, cols};
}

MooreCoupling::MooreCoupling(int n, int m)
    : n_(n), m_(m),
      c_(static_cast<std::size_t>(n) * n * m * m, 0.0) {
    if (n < 1 || m < 1) throw std::invalid_argument("MooreCoupling: dimensions must be positive");
}

MooreCoupling moore_coupling(const DenseMatrix& a, int p) {
    check_p(p);
    MooreCoupling c(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.rows(); ++k) {
            if (i == k) continue;
            for (int j = 0; j < a.cols(); ++j)
                for (int l = 0; l < a.cols(); ++l) {
                    if (j == l) continue;
                    c.set_cost(i, k, j, l,
                               pow_p(a(i, j) - a(k, l), p) + pow_p(a(i, l) - a(k, j), p));
                }
        }
    return c;
}

double moore_coupling_value(const MooreCoupling& c, const std::vector<int>& row_order,
                            const std::vector<int>& col_order) {
    double sum = 0.0;
    for (std::size_t t = 0; t + 1 < row_order.size(); ++t)
        for (std::size_t u = 0; u + 1 < col_order.size(); ++u)
            sum += c.cost(row_order[t], row_order[t + 1], col_order[u], col_order[u + 1]);
    return 2.0 * sum;
}

PathGraph coordinated_merge(const PathGraph& g1, const PathGraph& g2) {
    if (g1.size() != g2.size())
        throw std::invalid_argument("coordinated_merge: size mismatch");
    if (g1.sense() != g2.sense())
        throw std::invalid_argument("coordinated_merge: sense mismatch");
    PathGraph out(g1.size(), g1.sense());
    for (int i = 0; i < g1.size(); ++i)
        for (int k = i + 1; k < g1.size(); ++k)
            out.set_weight(i, k, g1.weight(i, k) + g2.weight(i, k));
    return out;
}

}  // namespace seriation
