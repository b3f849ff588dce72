#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "seriation/errors.hpp"
#include "seriation/milp.hpp"
#include "seriation/weights.hpp"

#include "json.hpp"

namespace seriation {

namespace {

bool valid_name(const std::string& name) {
    if (name.empty() || name.size() > 255) return false;
    if (!std::isalpha(static_cast<unsigned char>(name[0]))) return false;
    for (char c : name)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

int MilpModel::add_variable(const std::string& name, double lb, double ub, VarKind kind) {
    if (!valid_name(name))
        throw std::invalid_argument("MilpModel: invalid variable name '" + name + "'");
    if (index_.count(name))
        throw std::invalid_argument("MilpModel: duplicate variable name '" + name + "'");
    if (lb > ub) throw std::invalid_argument("MilpModel: lb > ub for '" + name + "'");
    variables_.push_back({name, lb, ub, kind});
    const int idx = static_cast<int>(variables_.size()) - 1;
    index_[name] = idx;
    return idx;
}

int MilpModel::variable_index(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

void MilpModel::check_terms(const std::vector<LinTerm>& terms) const {
    for (const auto& t : terms)
        if (t.var < 0 || t.var >= static_cast<int>(variables_.size()))
            throw std::invalid_argument("MilpModel: constraint references undeclared variable");
}

void MilpModel::add_linear(LinearConstraint c) {
    if (!valid_name(c.name))
        throw std::invalid_argument("MilpModel: invalid constraint name '" + c.name + "'");
    check_terms(c.terms);
    linear_.push_back(std::move(c));
}

void MilpModel::add_quadratic(QuadConstraint c) {
    if (!valid_name(c.name))
        throw std::invalid_argument("MilpModel: invalid constraint name '" + c.name + "'");
    check_terms(c.lin_terms);
    for (const auto& q : c.quad_terms)
        if (q.var1 < 0 || q.var1 >= static_cast<int>(variables_.size()) || q.var2 < 0 ||
            q.var2 >= static_cast<int>(variables_.size()))
            throw std::invalid_argument("MilpModel: quadratic term references undeclared variable");
    quadratic_.push_back(std::move(c));
}

void MilpModel::add_objective_term(int var, double coef) {
    if (var < 0 || var >= static_cast<int>(variables_.size()))
        throw std::invalid_argument("MilpModel: objective references undeclared variable");
    objective_.push_back({var, coef});
}

void MilpModel::add_objective_quad(int var1, int var2, double coef) {
    if (var1 < 0 || var1 >= static_cast<int>(variables_.size()) || var2 < 0 ||
        var2 >= static_cast<int>(variables_.size()))
        throw std::invalid_argument("MilpModel: objective references undeclared variable");
    objective_quad_.push_back({var1, var2, coef});
}

// ---- LP emission ------------------------------------------------------------

namespace {

// Appends "sign coef name" tokens, wrapping lines well below the classic
// 255-character LP line limit.
class LineWriter {
public:
    explicit LineWriter(std::string& out) : out_(out) {}

    void token(const std::string& t) {
        if (line_len_ + t.size() + 1 > 200) {
            out_ += "\n ";
            line_len_ = 1;
        }
        out_ += ' ';
        out_ += t;
        line_len_ += t.size() + 1;
    }

    void finish() {
        out_ += '\n';
        line_len_ = 0;
    }

private:
    std::string& out_;
    std::size_t line_len_ = 1;
};

void write_terms(LineWriter& w, const MilpModel& model, const std::vector<LinTerm>& terms,
                 bool* first) {
    for (const auto& t : terms) {
        const double c = t.coef;
        std::string tok;
        if (*first) {
            tok = (c < 0 ? "-" : "") + fmt(std::fabs(c));
            *first = false;
        } else {
            w.token(c < 0 ? "-" : "+");
            tok = fmt(std::fabs(c));
        }
        w.token(tok);
        w.token(model.variables()[t.var].name);
    }
}

void write_quad_block(LineWriter& w, const MilpModel& model, const std::vector<QuadTerm>& terms,
                      bool* first) {
    if (!*first) w.token("+");
    *first = false;
    w.token("[");
    bool qfirst = true;
    for (const auto& q : terms) {
        if (!qfirst)
            w.token(q.coef < 0 ? "-" : "+");
        else if (q.coef < 0)
            w.token("-");
        qfirst = false;
        w.token(fmt(std::fabs(q.coef)));
        if (q.var1 == q.var2) {
            w.token(model.variables()[q.var1].name);
            w.token("^");
            w.token("2");
        } else {
            w.token(model.variables()[q.var1].name);
            w.token("*");
            w.token(model.variables()[q.var2].name);
        }
    }
    w.token("]");
}

const char* relation_text(Relation r) {
    switch (r) {
        case Relation::LessEqual: return "<=";
        case Relation::Equal: return "=";
        case Relation::GreaterEqual: return ">=";
    }
    return "?";
}

}  // namespace

std::string emit_lp_string(const MilpModel& model) {
    std::string out;
    out += model.maximize() ? "Maximize\n" : "Minimize\n";
    {
        LineWriter w(out);
        w.token("obj:");
        bool first = true;
        write_terms(w, model, model.objective_terms(), &first);
        if (!model.objective_quad_terms().empty())
            write_quad_block(w, model, model.objective_quad_terms(), &first);
        if (first) w.token("0");
        w.finish();
    }
    out += "Subject To\n";
    for (const auto& c : model.linear_constraints()) {
        LineWriter w(out);
        w.token(c.name + ":");
        bool first = true;
        write_terms(w, model, c.terms, &first);
        if (first) w.token("0");
        w.token(relation_text(c.rel));
        w.token(fmt(c.rhs));
        w.finish();
    }
    for (const auto& c : model.quadratic_constraints()) {
        LineWriter w(out);
        w.token(c.name + ":");
        bool first = true;
        write_terms(w, model, c.lin_terms, &first);
        write_quad_block(w, model, c.quad_terms, &first);
        w.token(relation_text(c.rel));
        w.token(fmt(c.rhs));
        w.finish();
    }
    // Bounds: continuous and integer variables with non-default ranges (the
    // LP default is [0, +inf)); binaries are implied by their section.
    std::string bounds;
    constexpr double kInf = std::numeric_limits<double>::infinity();
    for (const auto& v : model.variables()) {
        if (v.kind == VarKind::Binary) continue;
        if (v.lb == 0.0 && v.ub == kInf) continue;
        bounds += ' ';
        if (v.lb == -kInf && v.ub == kInf) {
            bounds += v.name + " free";
        } else {
            bounds += fmt(v.lb) + " <= " + v.name;
            if (v.ub != kInf) bounds += " <= " + fmt(v.ub);
        }
        bounds += '\n';
    }
    if (!bounds.empty()) out += "Bounds\n" + bounds;
    std::string generals, binaries;
    for (const auto& v : model.variables()) {
        if (v.kind == VarKind::Integer) generals += ' ' + v.name + '\n';
        if (v.kind == VarKind::Binary) binaries += ' ' + v.name + '\n';
    }
    if (!generals.empty()) out += "Generals\n" + generals;
    if (!binaries.empty()) out += "Binaries\n" + binaries;
    out += "End\n";
    return out;
}

void emit_lp(const MilpModel& model, const std::string& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("emit_lp: cannot open '" + path + "' for writing");
    file << emit_lp_string(model);
    if (!file) throw std::runtime_error("emit_lp: write failed for '" + path + "'");
}

// ---- Solution files ----------------------------------------------------------

SolutionValues parse_solution_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw ParseError("solution file '" + path + "' cannot be opened");
    SolutionValues out;
    std::string line;
    int lineno = 0;
    while (std::getline(file, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ss(line);
        std::string name;
        if (!(ss >> name)) continue;  // blank
        if (name[0] == '#') continue;
        std::string value_text;
        if (!(ss >> value_text))
            throw ParseError("solution file line " + std::to_string(lineno) +
                             ": expected 'name value'");
        if (name == "status") {
            out.status = value_text;
            continue;
        }
        double value = 0.0;
        const auto* begin = value_text.data();
        const auto* end = begin + value_text.size();
        auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc{} || ptr != end)
            throw ParseError("solution file line " + std::to_string(lineno) +
                             ": non-numeric value '" + value_text + "'");
        if (name == "objective")
            out.objective = value;
        else if (name == "bound")
            out.bound = value;
        else
            out.values[name] = value;
    }
    return out;
}

// ---- Reading permutations back ------------------------------------------------

namespace {

double value_or_zero(const std::map<std::string, double>& values, const std::string& name) {
    auto it = values.find(name);
    return it == values.end() ? 0.0 : it->second;
}

int as_binary(double v, const std::string& name) {
    if (std::fabs(v) <= 1e-4) return 0;
    if (std::fabs(v - 1.0) <= 1e-4) return 1;
    throw IntegrityError("solution value for " + name + " is not integral: " + std::to_string(v));
}

std::string idx2(const std::string& stem, int a, int b) {
    return stem + '_' + std::to_string(a + 1) + '_' + std::to_string(b + 1);
}

Permutation assignment_permutation(const std::map<std::string, double>& values,
                                   const std::string& stem, int size) {
    std::vector<int> mapping(size, -1);
    for (int i = 0; i < size; ++i)
        for (int k = 0; k < size; ++k)
            if (as_binary(value_or_zero(values, idx2(stem, i, k)), idx2(stem, i, k)) == 1) {
                if (mapping[i] != -1)
                    throw IntegrityError("row/column " + std::to_string(i + 1) +
                                         " assigned to two positions");
                mapping[i] = k;
            }
    for (int i = 0; i < size; ++i)
        if (mapping[i] == -1)
            throw IntegrityError("row/column " + std::to_string(i + 1) + " has no position");
    return Permutation(mapping);  // bijection check inside
}

Permutation path_permutation(const std::map<std::string, double>& values, const std::string& z,
                             const std::string& t, int size) {
    if (size == 1) return Permutation::identity(1);
    std::vector<int> succ(size, -1);
    std::vector<char> has_pred(size, 0);
    for (int i = 0; i < size; ++i)
        for (int k = 0; k < size; ++k) {
            if (i == k) continue;
            if (as_binary(value_or_zero(values, idx2(z, i, k)), idx2(z, i, k)) == 1) {
                if (succ[i] != -1) throw IntegrityError("node has two outgoing arcs");
                if (has_pred[k]) throw IntegrityError("node has two incoming arcs");
                succ[i] = k;
                has_pred[k] = 1;
            }
        }
    int start = -1;
    for (int i = 0; i < size; ++i)
        if (!has_pred[i]) {
            if (start != -1) throw IntegrityError("path has two start nodes");
            start = i;
        }
    if (start == -1) throw IntegrityError("path has no start node (subtour)");
    std::vector<int> order;
    order.reserve(size);
    int cur = start;
    while (cur != -1 && static_cast<int>(order.size()) < size) {
        order.push_back(cur);
        cur = succ[cur];
    }
    if (static_cast<int>(order.size()) != size)
        throw IntegrityError("broken path: visits " + std::to_string(order.size()) + " of " +
                             std::to_string(size) + " nodes");
    const std::string t_last = t + '_' + std::to_string(order.back() + 1);
    if (as_binary(value_or_zero(values, t_last), t_last) != 1)
        throw IntegrityError("last path node is not flagged as last");
    return Permutation::from_order(order);
}

}  // namespace

std::pair<Permutation, Permutation> extract_permutations(
    const std::map<std::string, double>& solution, const MilpModel& model) {
    const ModelMeta& meta = model.meta;
    if (meta.kind == ModelKind::PamL1 || meta.kind == ModelKind::PamL2) {
        Permutation rows = assignment_permutation(solution, "x", meta.n);
        Permutation cols = meta.coordinated ? rows : assignment_permutation(solution, "y", meta.m);
        return {rows, cols};
    }
    Permutation rows = path_permutation(solution, "zR", "tR", meta.n);
    Permutation cols = meta.coordinated ? rows : path_permutation(solution, "zC", "tC", meta.m);
    return {rows, cols};
}

double native_objective(const ModelMeta& meta, const DenseMatrix& reordered) {
    if (meta.me) return effectiveness(reordered);
    return total_stress(reordered, StressParams{meta.p, meta.spec});
}

// ---- Assignment embedding and evaluation --------------------------------------

namespace {

void set_value(std::map<std::string, double>& out, const std::string& name, double v) {
    out[name] = v;
}

}  // namespace

std::map<std::string, double> assignment_for_permutations(const MilpModel& model,
                                                          const DenseMatrix& a,
                                                          const Permutation& row_perm,
                                                          const Permutation& col_perm) {
    const ModelMeta& meta = model.meta;
    if (row_perm.size() != meta.n || col_perm.size() != meta.m)
        throw std::invalid_argument("assignment_for_permutations: permutation sizes do not match");
    if (meta.coordinated && !(row_perm == col_perm))
        throw std::invalid_argument("assignment_for_permutations: coordinated model needs equal "
                                    "permutations");
    std::map<std::string, double> out;
    const DenseMatrix reordered = apply_permutations(a, row_perm, col_perm);

    if (meta.kind == ModelKind::PamL1 || meta.kind == ModelKind::PamL2) {
        for (int i = 0; i < meta.n; ++i)
            for (int k = 0; k < meta.n; ++k)
                set_value(out, idx2("x", i, k), row_perm(i) == k ? 1.0 : 0.0);
        if (!meta.coordinated)
            for (int j = 0; j < meta.m; ++j)
                for (int l = 0; l < meta.m; ++l)
                    set_value(out, idx2("y", j, l), col_perm(j) == l ? 1.0 : 0.0);
        const std::string prod_stem = meta.coordinated ? "x" : "y";
        if (meta.kind == ModelKind::PamL1) {
            for (int i = 0; i < meta.n; ++i)
                for (int j = 0; j < meta.m; ++j)
                    for (int k = 0; k < meta.n; ++k)
                        for (int l = 0; l < meta.m; ++l) {
                            const double v = (row_perm(i) == k && col_perm(j) == l) ? 1.0 : 0.0;
                            set_value(out,
                                      "z_" + std::to_string(i + 1) + '_' + std::to_string(j + 1) +
                                          '_' + std::to_string(k + 1) + '_' + std::to_string(l + 1),
                                      v);
                        }
        } else {
            for (int k = 0; k < meta.n; ++k)
                for (int l = 0; l < meta.m; ++l) set_value(out, idx2("s", k, l), reordered(k, l));
        }
        // One auxiliary per ordered (cell, neighbor) pair, at its tight value.
        const std::string abs_stem = meta.kind == ModelKind::PamL1 ? "v" : "nu";
        for (int k = 0; k < meta.n; ++k)
            for (int l = 0; l < meta.m; ++l) {
                double cell_sum = 0.0;
                for (const auto& [k2, l2] : neighbors(meta.spec, {k, l}, meta.n, meta.m)) {
                    const double diff = std::fabs(reordered(k, l) - reordered(k2, l2));
                    const std::string suffix = '_' + std::to_string(k + 1) + '_' +
                                               std::to_string(l + 1) + '_' + std::to_string(k2 + 1) +
                                               '_' + std::to_string(l2 + 1);
                    set_value(out, abs_stem + suffix, diff);
                    if (meta.p == 2 && meta.kind == ModelKind::PamL1)
                        set_value(out, "w" + suffix, diff * diff);
                    cell_sum += meta.p == 2 ? diff * diff : diff;
                }
                if (meta.p == 2) {
                    const std::string agg = meta.kind == ModelKind::PamL1 ? "th" : "rho";
                    set_value(out, idx2(agg, k, l), cell_sum);
                }
            }
        return out;
    }

    // HPM family: arcs, last flags, arc positions, and the coupled extras.
    const std::vector<int> row_order = row_perm.order();
    const std::vector<int> col_order = col_perm.order();
    auto fill_block = [&](const std::string& suffix, const std::vector<int>& order, int size) {
        for (int i = 0; i < size; ++i)
            for (int k = 0; k < size; ++k) {
                if (i == k) continue;
                set_value(out, idx2("z" + suffix, i, k), 0.0);
                set_value(out, idx2("g" + suffix, i, k), 0.0);
            }
        for (int i = 0; i < size; ++i) set_value(out, "t" + suffix + '_' + std::to_string(i + 1), 0.0);
        for (std::size_t t = 0; t + 1 < order.size(); ++t) {
            set_value(out, idx2("z" + suffix, order[t], order[t + 1]), 1.0);
            set_value(out, idx2("g" + suffix, order[t], order[t + 1]), static_cast<double>(t + 1));
        }
        set_value(out, "t" + suffix + '_' + std::to_string(order.back() + 1), 1.0);
    };
    fill_block("R", row_order, meta.n);
    if (!meta.coordinated) fill_block("C", col_order, meta.m);

    if (meta.kind == ModelKind::HpmMoore) {
        for (int i = 0; i < meta.n; ++i)
            for (int k = 0; k < meta.n; ++k) {
                if (i == k) continue;
                const bool row_arc = value_or_zero(out, idx2("zR", i, k)) == 1.0;
                for (int j = 0; j < meta.m; ++j)
                    for (int l = 0; l < meta.m; ++l) {
                        if (j == l) continue;
                        const bool col_arc = value_or_zero(out, idx2("zC", j, l)) == 1.0;
                        set_value(out,
                                  "h_" + std::to_string(i + 1) + '_' + std::to_string(k + 1) + '_' +
                                      std::to_string(j + 1) + '_' + std::to_string(l + 1),
                                  row_arc && col_arc ? 1.0 : 0.0);
                    }
            }
    }
    if (meta.kind == ModelKind::HpmCross2) {
        const auto [row_graph, col_graph] = vn_weights(a, meta.p);
        auto fill_u = [&](const std::string& stem, const PathGraph& g,
                          const std::vector<int>& order) {
            for (int r = 0; r < g.size(); ++r) set_value(out, stem + '_' + std::to_string(r + 1), 0.0);
            for (std::size_t t = 0; t + 2 < order.size(); ++t)
                set_value(out, stem + '_' + std::to_string(order[t] + 1),
                          g.weight(order[t], order[t + 2]));
        };
        fill_u("uR", row_graph, row_order);
        if (!meta.coordinated) fill_u("uC", col_graph, col_order);
    }
    return out;
}

double objective_value(const MilpModel& model, const std::map<std::string, double>& values) {
    double sum = 0.0;
    for (const auto& t : model.objective_terms())
        sum += t.coef * value_or_zero(values, model.variables()[t.var].name);
    for (const auto& q : model.objective_quad_terms())
        sum += q.coef * value_or_zero(values, model.variables()[q.var1].name) *
               value_or_zero(values, model.variables()[q.var2].name);
    return sum;
}

bool check_feasible(const MilpModel& model, const std::map<std::string, double>& values,
                    double tol, std::string* violation) {
    auto fail = [&](const std::string& what) {
        if (violation) *violation = what;
        return false;
    };
    for (const auto& v : model.variables()) {
        const double x = value_or_zero(values, v.name);
        if (x < v.lb - tol || x > v.ub + tol) return fail("bounds of " + v.name);
        if (v.kind != VarKind::Continuous && std::fabs(x - std::round(x)) > tol)
            return fail("integrality of " + v.name);
    }
    auto check_relation = [&](double lhs, Relation rel, double rhs) {
        switch (rel) {
            case Relation::LessEqual: return lhs <= rhs + tol;
            case Relation::Equal: return std::fabs(lhs - rhs) <= tol;
            case Relation::GreaterEqual: return lhs >= rhs - tol;
        }
        return false;
    };
    for (const auto& c : model.linear_constraints()) {
        double lhs = 0.0;
        for (const auto& t : c.terms) lhs += t.coef * value_or_zero(values, model.variables()[t.var].name);
        if (!check_relation(lhs, c.rel, c.rhs)) return fail(c.name);
    }
    for (const auto& c : model.quadratic_constraints()) {
        double lhs = 0.0;
        for (const auto& t : c.lin_terms)
            lhs += t.coef * value_or_zero(values, model.variables()[t.var].name);
        for (const auto& q : c.quad_terms)
            lhs += q.coef * value_or_zero(values, model.variables()[q.var1].name) *
                   value_or_zero(values, model.variables()[q.var2].name);
        if (!check_relation(lhs, c.rel, c.rhs)) return fail(c.name);
    }
    return true;
}

// ---- Configuration -------------------------------------------------------------

void ExternalSolverConfig::validate() const {
    if (command_template.find("{model}") == std::string::npos ||
        command_template.find("{solution}") == std::string::npos)
        throw SolverConfigError("solver command template must contain {model} and {solution}");
    if (timeout_seconds < 0.0) throw SolverConfigError("timeout_seconds must be >= 0");
}

ExternalSolverConfig load_solver_config(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw SolverConfigError("cannot open solver config '" + path + "'");
    nlohmann::json doc;
    try {
        file >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw SolverConfigError("solver config '" + path + "': " + e.what());
    }
    ExternalSolverConfig cfg;
    if (!doc.contains("solver_command") || !doc["solver_command"].is_string())
        throw SolverConfigError("solver config needs a string key 'solver_command'");
    cfg.command_template = doc["solver_command"].get<std::string>();
    if (doc.contains("timeout_seconds")) cfg.timeout_seconds = doc["timeout_seconds"].get<double>();
    if (doc.contains("work_dir")) cfg.work_dir = doc["work_dir"].get<std::string>();
    cfg.validate();
    return cfg;
}

}  // namespace seriation
