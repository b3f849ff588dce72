#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "seriation/errors.hpp"
#include "seriation/milp.hpp"
#include "seriation/weights.hpp"

namespace seriation {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string idx(int a) { return std::to_string(a + 1); }
std::string idx2(const std::string& stem, int a, int b) {
    return stem + '_' + idx(a) + '_' + idx(b);
}
std::string idx4(const std::string& stem, int a, int b, int c, int d) {
    return stem + '_' + idx(a) + '_' + idx(b) + '_' + idx(c) + '_' + idx(d);
}

void check_normalized(const DenseMatrix& a) {
    for (double v : a.entries())
        if (v < -1e-12 || v > 1.0 + 1e-12)
            throw std::invalid_argument(
                "build_pam: entries must lie in [0,1]; normalize the matrix first");
}

// Binary assignment block: stem_i_k = 1 iff element i goes to position k.
std::vector<std::vector<int>> add_assignment_block(MilpModel& model, const std::string& stem,
                                                   int size) {
    std::vector<std::vector<int>> vars(size, std::vector<int>(size));
    for (int i = 0; i < size; ++i)
        for (int k = 0; k < size; ++k)
            vars[i][k] = model.add_variable(idx2(stem, i, k), 0.0, 1.0, VarKind::Binary);
    for (int i = 0; i < size; ++i) {
        LinearConstraint c;
        c.name = stem + "row_" + idx(i);
        for (int k = 0; k < size; ++k) c.terms.push_back({vars[i][k], 1.0});
        c.rel = Relation::Equal;
        c.rhs = 1.0;
        model.add_linear(std::move(c));
    }
    for (int k = 0; k < size; ++k) {
        LinearConstraint c;
        c.name = stem + "pos_" + idx(k);
        for (int i = 0; i < size; ++i) c.terms.push_back({vars[i][k], 1.0});
        c.rel = Relation::Equal;
        c.rhs = 1.0;
        model.add_linear(std::move(c));
    }
    return vars;
}

void add_symmetry_breaking(MilpModel& model, const std::vector<std::vector<int>>& x, int n) {
    if (n < 2) return;
    if (n <= 30) {
        // Binary position encoding: position(row 1) < position(row 2).
        LinearConstraint c;
        c.name = "symbreak";
        for (int k = 0; k < n; ++k) {
            const double w = std::ldexp(1.0, k + 1);  // 2^(k+1), exact
            c.terms.push_back({x[0][k], w});
            c.terms.push_back({x[1][k], -w});
        }
        c.rel = Relation::LessEqual;
        c.rhs = 0.0;
        model.add_linear(std::move(c));
        return;
    }
    // Same restriction without huge coefficients: the prefix sums of row 1's
    // position indicator dominate row 2's.
    for (int k = 0; k < n - 1; ++k) {
        LinearConstraint c;
        c.name = "symbreak_" + idx(k);
        for (int k2 = 0; k2 <= k; ++k2) {
            c.terms.push_back({x[1][k2], 1.0});
            c.terms.push_back({x[0][k2], -1.0});
        }
        c.rel = Relation::LessEqual;
        c.rhs = 0.0;
        model.add_linear(std::move(c));
    }
}

}  // namespace

MilpModel build_pam(const DenseMatrix& a, const StressParams& params,
                    Linearization linearization, bool coordinated, bool symmetry_breaking) {
    if (params.p != 1 && params.p != 2)
        throw std::invalid_argument("build_pam: p must be 1 or 2");
    check_normalized(a);
    const int n = a.rows(), m = a.cols();
    if (coordinated && n != m)
        throw std::invalid_argument("build_pam: coordinated seriation needs a square matrix");

    MilpModel model;
    model.meta.kind = linearization == Linearization::L1 ? ModelKind::PamL1 : ModelKind::PamL2;
    model.meta.n = n;
    model.meta.m = m;
    model.meta.coordinated = coordinated;
    model.meta.me = false;
    model.meta.p = params.p;
    model.meta.spec = params.spec;
    model.set_objective(false);

    const auto x = add_assignment_block(model, "x", n);
    const auto y = coordinated ? x : add_assignment_block(model, "y", m);

    if (linearization == Linearization::L1) {
        // z_ijkl = x_ik * y_jl.
        std::vector<int> z(static_cast<std::size_t>(n) * m * n * m);
        auto zat = [&](int i, int j, int k, int l) -> int& {
            return z[((static_cast<std::size_t>(i) * m + j) * n + k) * m + l];
        };
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < m; ++l)
                        zat(i, j, k, l) =
                            model.add_variable(idx4("z", i, j, k, l), 0.0, 1.0, VarKind::Continuous);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < m; ++l) {
                        const int zv = zat(i, j, k, l);
                        model.add_linear({idx4("zlb", i, j, k, l),
                                          {{zv, 1.0}, {x[i][k], -1.0}, {y[j][l], -1.0}},
                                          Relation::GreaterEqual,
                                          -1.0});
                        model.add_linear({idx4("zux", i, j, k, l),
                                          {{zv, 1.0}, {x[i][k], -1.0}},
                                          Relation::LessEqual,
                                          0.0});
                        model.add_linear({idx4("zuy", i, j, k, l),
                                          {{zv, 1.0}, {y[j][l], -1.0}},
                                          Relation::LessEqual,
                                          0.0});
                    }
        // One |difference| pair per ordered (cell, neighbor) pair, written on
        // the transformed entries sum_ij a_ij z_ijkl.
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < m; ++l) {
                std::vector<int> cell_ws;
                for (const auto& [k2, l2] : neighbors(params.spec, {k, l}, n, m)) {
                    const std::string suffix =
                        '_' + idx(k) + '_' + idx(l) + '_' + idx(k2) + '_' + idx(l2);
                    const int v = model.add_variable("v" + suffix, 0.0, kInf, VarKind::Continuous);
                    LinearConstraint pos, neg;
                    pos.name = "vpos" + suffix;
                    neg.name = "vneg" + suffix;
                    pos.terms.push_back({v, 1.0});
                    neg.terms.push_back({v, 1.0});
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < m; ++j) {
                            const double aij = a(i, j);
                            if (aij == 0.0) continue;
                            pos.terms.push_back({zat(i, j, k, l), -aij});
                            pos.terms.push_back({zat(i, j, k2, l2), aij});
                            neg.terms.push_back({zat(i, j, k, l), aij});
                            neg.terms.push_back({zat(i, j, k2, l2), -aij});
                        }
                    pos.rel = neg.rel = Relation::GreaterEqual;
                    pos.rhs = neg.rhs = 0.0;
                    model.add_linear(std::move(pos));
                    model.add_linear(std::move(neg));
                    if (params.p == 1) {
                        model.add_objective_term(v, 1.0);
                    } else {
                        const int w = model.add_variable("w" + suffix, 0.0, kInf,
                                                         VarKind::Continuous);
                        QuadConstraint q;
                        q.name = "wq" + suffix;
                        q.lin_terms.push_back({w, -1.0});
                        q.quad_terms.push_back({v, v, 1.0});
                        q.rel = Relation::LessEqual;
                        q.rhs = 0.0;
                        model.add_quadratic(std::move(q));
                        cell_ws.push_back(w);
                    }
                }
                if (params.p == 2) {
                    const int th = model.add_variable(idx2("th", k, l), 0.0, kInf,
                                                      VarKind::Continuous);
                    LinearConstraint c;
                    c.name = idx2("thc", k, l);
                    c.terms.push_back({th, 1.0});
                    for (int w : cell_ws) c.terms.push_back({w, -1.0});
                    c.rel = Relation::GreaterEqual;
                    c.rhs = 0.0;
                    model.add_linear(std::move(c));
                    model.add_objective_term(th, 1.0);
                }
            }
    } else {
        // L2: continuous transformed entries s_kl pinned by big-M rows.
        std::vector<std::vector<int>> s(n, std::vector<int>(m));
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < m; ++l)
                s[k][l] = model.add_variable(idx2("s", k, l), 0.0, 1.0, VarKind::Continuous);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < m; ++l) {
                    LinearConstraint lb, ub;
                    lb.name = "slb_" + idx(i) + '_' + idx(k) + '_' + idx(l);
                    ub.name = "sub_" + idx(i) + '_' + idx(k) + '_' + idx(l);
                    lb.terms.push_back({s[k][l], 1.0});
                    lb.terms.push_back({x[i][k], -1.0});
                    ub.terms.push_back({s[k][l], 1.0});
                    ub.terms.push_back({x[i][k], 1.0});
                    for (int j = 0; j < m; ++j) {
                        const double aij = a(i, j);
                        if (aij == 0.0) continue;
                        lb.terms.push_back({y[j][l], -aij});
                        ub.terms.push_back({y[j][l], -aij});
                    }
                    lb.rel = Relation::GreaterEqual;
                    lb.rhs = -1.0;
                    ub.rel = Relation::LessEqual;
                    ub.rhs = 1.0;
                    model.add_linear(std::move(lb));
                    model.add_linear(std::move(ub));
                }
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < m; ++l) {
                std::vector<int> cell_nus;
                for (const auto& [k2, l2] : neighbors(params.spec, {k, l}, n, m)) {
                    const std::string suffix =
                        '_' + idx(k) + '_' + idx(l) + '_' + idx(k2) + '_' + idx(l2);
                    const int nu = model.add_variable("nu" + suffix, 0.0, kInf,
                                                      VarKind::Continuous);
                    model.add_linear({"nupos" + suffix,
                                      {{nu, 1.0}, {s[k][l], -1.0}, {s[k2][l2], 1.0}},
                                      Relation::GreaterEqual,
                                      0.0});
                    model.add_linear({"nuneg" + suffix,
                                      {{nu, 1.0}, {s[k][l], 1.0}, {s[k2][l2], -1.0}},
                                      Relation::GreaterEqual,
                                      0.0});
                    if (params.p == 1)
                        model.add_objective_term(nu, 1.0);
                    else
                        cell_nus.push_back(nu);
                }
                if (params.p == 2) {
                    const int rho = model.add_variable(idx2("rho", k, l), 0.0, kInf,
                                                       VarKind::Continuous);
                    QuadConstraint q;
                    q.name = idx2("rhoq", k, l);
                    q.lin_terms.push_back({rho, -1.0});
                    for (int nu : cell_nus) q.quad_terms.push_back({nu, nu, 1.0});
                    q.rel = Relation::LessEqual;
                    q.rhs = 0.0;
                    model.add_quadratic(std::move(q));
                    model.add_objective_term(rho, 1.0);
                }
            }
        // Valid inequalities: row/column mass balances and the transposed
        // big-M family.
        for (int k = 0; k < n; ++k) {
            LinearConstraint c;
            c.name = "virow_" + idx(k);
            for (int l = 0; l < m; ++l) c.terms.push_back({s[k][l], 1.0});
            for (int i = 0; i < n; ++i) {
                double row_sum = 0.0;
                for (int j = 0; j < m; ++j) row_sum += a(i, j);
                if (row_sum != 0.0) c.terms.push_back({x[i][k], -row_sum});
            }
            c.rel = Relation::Equal;
            c.rhs = 0.0;
            model.add_linear(std::move(c));
        }
        for (int l = 0; l < m; ++l) {
            LinearConstraint c;
            c.name = "vicol_" + idx(l);
            for (int k = 0; k < n; ++k) c.terms.push_back({s[k][l], 1.0});
            for (int j = 0; j < m; ++j) {
                double col_sum = 0.0;
                for (int i = 0; i < n; ++i) col_sum += a(i, j);
                if (col_sum != 0.0) c.terms.push_back({y[j][l], -col_sum});
            }
            c.rel = Relation::Equal;
            c.rhs = 0.0;
            model.add_linear(std::move(c));
        }
        for (int j = 0; j < m; ++j)
            for (int l = 0; l < m; ++l)
                for (int k = 0; k < n; ++k) {
                    LinearConstraint lb, ub;
                    lb.name = "vi3_" + idx(j) + '_' + idx(l) + '_' + idx(k);
                    ub.name = "vi4_" + idx(j) + '_' + idx(l) + '_' + idx(k);
                    lb.terms.push_back({s[k][l], 1.0});
                    lb.terms.push_back({y[j][l], -1.0});
                    ub.terms.push_back({s[k][l], 1.0});
                    ub.terms.push_back({y[j][l], 1.0});
                    for (int i = 0; i < n; ++i) {
                        const double aij = a(i, j);
                        if (aij == 0.0) continue;
                        lb.terms.push_back({x[i][k], -aij});
                        ub.terms.push_back({x[i][k], -aij});
                    }
                    lb.rel = Relation::GreaterEqual;
                    lb.rhs = -1.0;
                    ub.rel = Relation::LessEqual;
                    ub.rhs = 1.0;
                    model.add_linear(std::move(lb));
                    model.add_linear(std::move(ub));
                }
    }

    if (symmetry_breaking) add_symmetry_breaking(model, x, n);
    return model;
}

namespace {

// One Hamiltonian-path block: z (arcs), t (last flags), g (arc positions).
struct HpmBlock {
    std::vector<std::vector<int>> z;
    std::vector<int> t;
    std::vector<std::vector<int>> g;
};

HpmBlock add_hpm_block(MilpModel& model, const std::string& suffix, int size) {
    HpmBlock b;
    b.z.assign(size, std::vector<int>(size, -1));
    b.g.assign(size, std::vector<int>(size, -1));
    b.t.assign(size, -1);
    for (int i = 0; i < size; ++i)
        for (int k = 0; k < size; ++k) {
            if (i == k) continue;
            b.z[i][k] = model.add_variable(idx2("z" + suffix, i, k), 0.0, 1.0, VarKind::Binary);
        }
    for (int i = 0; i < size; ++i)
        b.t[i] = model.add_variable("t" + suffix + '_' + idx(i), 0.0, 1.0, VarKind::Binary);
    for (int i = 0; i < size; ++i)
        for (int k = 0; k < size; ++k) {
            if (i == k) continue;
            b.g[i][k] = model.add_variable(idx2("g" + suffix, i, k), 0.0,
                                           static_cast<double>(size - 1), VarKind::Integer);
        }
    for (int i = 0; i < size; ++i) {
        LinearConstraint c;
        c.name = "succ" + suffix + '_' + idx(i);
        for (int k = 0; k < size; ++k)
            if (k != i) c.terms.push_back({b.z[i][k], 1.0});
        c.terms.push_back({b.t[i], 1.0});
        c.rel = Relation::Equal;
        c.rhs = 1.0;
        model.add_linear(std::move(c));
    }
    {
        LinearConstraint c;
        c.name = "last" + suffix;
        for (int i = 0; i < size; ++i) c.terms.push_back({b.t[i], 1.0});
        c.rel = Relation::Equal;
        c.rhs = 1.0;
        model.add_linear(std::move(c));
    }
    for (int k = 0; k < size; ++k) {
        LinearConstraint c;
        c.name = "pred" + suffix + '_' + idx(k);
        for (int i = 0; i < size; ++i)
            if (i != k) c.terms.push_back({b.z[i][k], 1.0});
        c.rel = Relation::LessEqual;
        c.rhs = 1.0;
        model.add_linear(std::move(c));
    }
    // Outgoing arc position exceeds the incoming one unless the node is last.
    for (int r = 0; r < size; ++r) {
        LinearConstraint c;
        c.name = "flow" + suffix + '_' + idx(r);
        for (int s = 0; s < size; ++s) {
            if (s == r) continue;
            c.terms.push_back({b.g[r][s], 1.0});
            c.terms.push_back({b.g[s][r], -1.0});
        }
        c.terms.push_back({b.t[r], static_cast<double>(size)});
        c.rel = Relation::GreaterEqual;
        c.rhs = 1.0;
        model.add_linear(std::move(c));
    }
    for (int i = 0; i < size; ++i)
        for (int k = 0; k < size; ++k) {
            if (i == k) continue;
            model.add_linear({idx2("gub" + suffix, i, k),
                              {{b.g[i][k], 1.0}, {b.z[i][k], -static_cast<double>(size - 1)}},
                              Relation::LessEqual,
                              0.0});
            model.add_linear({idx2("glb" + suffix, i, k),
                              {{b.g[i][k], 1.0}, {b.z[i][k], -1.0}},
                              Relation::GreaterEqual,
                              0.0});
        }
    return b;
}

void add_path_objective(MilpModel& model, const HpmBlock& b, const PathGraph& g) {
    for (int i = 0; i < g.size(); ++i)
        for (int k = 0; k < g.size(); ++k) {
            if (i == k) continue;
            const double w = g.weight(i, k);
            if (w != 0.0) model.add_objective_term(b.z[i][k], w);
        }
}

}  // namespace

MilpModel build_hpm(const DenseMatrix& a, const MeasureSpec& measure, bool coordinated) {
    if (measure.kind != MeasureSpec::Kind::VN && measure.kind != MeasureSpec::Kind::ME)
        throw std::invalid_argument("build_hpm: only von Neumann stress and ME are separable");
    const int n = a.rows(), m = a.cols();
    if (coordinated && n != m)
        throw std::invalid_argument("build_hpm: coordinated seriation needs a square matrix");

    MilpModel model;
    model.meta.kind = ModelKind::Hpm;
    model.meta.n = n;
    model.meta.m = m;
    model.meta.coordinated = coordinated;
    model.meta.me = measure.kind == MeasureSpec::Kind::ME;
    model.meta.p = measure.p;
    model.meta.spec = NeighborhoodSpec::von_neumann();
    model.set_objective(model.meta.me);

    const auto [row_graph, col_graph] =
        model.meta.me ? me_weights(a) : vn_weights(a, measure.p);
    if (coordinated) {
        const HpmBlock block = add_hpm_block(model, "R", n);
        add_path_objective(model, block, coordinated_merge(row_graph, col_graph));
    } else {
        const HpmBlock rows = add_hpm_block(model, "R", n);
        const HpmBlock cols = add_hpm_block(model, "C", m);
        add_path_objective(model, rows, row_graph);
        add_path_objective(model, cols, col_graph);
    }
    return model;
}

MilpModel build_hpm_moore(const DenseMatrix& a, int p) {
    const int n = a.rows(), m = a.cols();
    MilpModel model;
    model.meta.kind = ModelKind::HpmMoore;
    model.meta.n = n;
    model.meta.m = m;
    model.meta.coordinated = false;
    model.meta.me = false;
    model.meta.p = p;
    model.meta.spec = NeighborhoodSpec::moore();
    model.set_objective(false);

    const auto [row_graph, col_graph] = vn_weights(a, p);
    const HpmBlock rows = add_hpm_block(model, "R", n);
    const HpmBlock cols = add_hpm_block(model, "C", m);
    add_path_objective(model, rows, row_graph);
    add_path_objective(model, cols, col_graph);

    const MooreCoupling coupling = moore_coupling(a, p);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            if (i == k) continue;
            for (int j = 0; j < m; ++j)
                for (int l = 0; l < m; ++l) {
                    if (j == l) continue;
                    const int h = model.add_variable(idx4("h", i, k, j, l), 0.0, 1.0,
                                                     VarKind::Binary);
                    model.add_linear({idx4("hlb", i, k, j, l),
                                      {{h, 1.0}, {rows.z[i][k], -1.0}, {cols.z[j][l], -1.0}},
                                      Relation::GreaterEqual,
                                      -1.0});
                    model.add_linear({idx4("hux", i, k, j, l),
                                      {{h, 1.0}, {rows.z[i][k], -1.0}},
                                      Relation::LessEqual,
                                      0.0});
                    model.add_linear({idx4("huy", i, k, j, l),
                                      {{h, 1.0}, {cols.z[j][l], -1.0}},
                                      Relation::LessEqual,
                                      0.0});
                    const double c = 2.0 * coupling.cost(i, k, j, l);
                    if (c != 0.0) model.add_objective_term(h, c);
                }
        }
    return model;
}

MilpModel build_hpm_cross2(const DenseMatrix& a, int p) {
    const int n = a.rows(), m = a.cols();
    MilpModel model;
    model.meta.kind = ModelKind::HpmCross2;
    model.meta.n = n;
    model.meta.m = m;
    model.meta.coordinated = false;
    model.meta.me = false;
    model.meta.p = p;
    model.meta.spec = NeighborhoodSpec::cross2();
    model.set_objective(false);

    const auto [row_graph, col_graph] = vn_weights(a, p);
    const HpmBlock rows = add_hpm_block(model, "R", n);
    const HpmBlock cols = add_hpm_block(model, "C", m);
    add_path_objective(model, rows, row_graph);
    add_path_objective(model, cols, col_graph);

    // u_r picks up the weight to the node two ahead of r in the path:
    // u_r >= sum_t w_rt z_st - Delta_r (1 - z_rs) for every s.
    auto add_lookahead = [&](const std::string& stem, const HpmBlock& b, const PathGraph& g) {
        const int size = g.size();
        for (int r = 0; r < size; ++r) {
            const int u = model.add_variable(stem + '_' + idx(r), 0.0, kInf, VarKind::Continuous);
            model.add_objective_term(u, 1.0);
            double delta = 0.0;
            for (int s = 0; s < size; ++s)
                if (s != r) delta = std::max(delta, g.weight(r, s));
            for (int s = 0; s < size; ++s) {
                if (s == r) continue;
                LinearConstraint c;
                c.name = idx2(stem + "c", r, s);
                c.terms.push_back({u, 1.0});
                for (int t = 0; t < size; ++t) {
                    if (t == s) continue;
                    const double w = g.weight(r, t);
                    if (w != 0.0) c.terms.push_back({b.z[s][t], -w});
                }
                c.terms.push_back({b.z[r][s], -delta});
                c.rel = Relation::GreaterEqual;
                c.rhs = -delta;
                model.add_linear(std::move(c));
            }
        }
    };
    add_lookahead("uR", rows, row_graph);
    add_lookahead("uC", cols, col_graph);
    return model;
}

void add_cluster_constraint(MilpModel& model, const std::vector<int>& cluster, int kappa) {
    if (model.meta.kind != ModelKind::Hpm && model.meta.kind != ModelKind::HpmMoore &&
        model.meta.kind != ModelKind::HpmCross2)
        throw CapabilityError("cluster constraints attach to HPM-family models only");
    const int n = model.meta.n;
    if (kappa < 1 || kappa >= n)
        throw std::invalid_argument("add_cluster_constraint: kappa must be in [1, n)");
    for (int i : cluster)
        if (i < 0 || i >= n) throw std::invalid_argument("add_cluster_constraint: index out of range");
    for (int i : cluster)
        for (int j : cluster) {
            if (i == j) continue;
            LinearConstraint c;
            c.name = idx2("clu", i, j);
            for (int k = 0; k < n; ++k) {
                if (k != i) c.terms.push_back({model.variable_index(idx2("gR", i, k)), 1.0});
                if (k != j) c.terms.push_back({model.variable_index(idx2("gR", j, k)), -1.0});
            }
            c.rel = Relation::LessEqual;
            c.rhs = static_cast<double>(kappa);
            model.add_linear(std::move(c));
        }
}

void add_position_constraint(MilpModel& model, const std::vector<int>& observations,
                             const std::vector<int>& positions) {
    if (model.meta.kind != ModelKind::PamL1 && model.meta.kind != ModelKind::PamL2)
        throw CapabilityError("position constraints attach to PAM-family models only");
    const int n = model.meta.n;
    if (positions.size() < observations.size())
        throw std::invalid_argument("add_position_constraint: fewer positions than observations; "
                                    "the model would be infeasible");
    for (int k : positions)
        if (k < 0 || k >= n) throw std::invalid_argument("add_position_constraint: position out of range");
    for (int i : observations) {
        if (i < 0 || i >= n)
            throw std::invalid_argument("add_position_constraint: observation out of range");
        LinearConstraint c;
        c.name = "pin_" + idx(i);
        for (int k : positions) c.terms.push_back({model.variable_index(idx2("x", i, k)), 1.0});
        c.rel = Relation::Equal;
        c.rhs = 1.0;
        model.add_linear(std::move(c));
    }
}

}  // namespace seriation
