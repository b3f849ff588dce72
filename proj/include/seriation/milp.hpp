#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "seriation/matrix.hpp"
#include "seriation/measures.hpp"
#include "seriation/solver.hpp"

namespace seriation {

enum class VarKind { Continuous, Binary, Integer };
enum class Relation { LessEqual, Equal, GreaterEqual };

struct MilpVariable {
    std::string name;
    double lb = 0.0;
    double ub = 0.0;
    VarKind kind = VarKind::Continuous;
};

struct LinTerm {
    int var = 0;
    double coef = 0.0;
};

struct QuadTerm {
    int var1 = 0;
    int var2 = 0;
    double coef = 0.0;
};

struct LinearConstraint {
    std::string name;
    std::vector<LinTerm> terms;
    Relation rel = Relation::LessEqual;
    double rhs = 0.0;
};

// Quadratic constraints carry both a linear and a quadratic part
// (PAM p=2 cone terms: v^2 - w <= 0).
struct QuadConstraint {
    std::string name;
    std::vector<LinTerm> lin_terms;
    std::vector<QuadTerm> quad_terms;
    Relation rel = Relation::LessEqual;
    double rhs = 0.0;
};

enum class ModelKind { PamL1, PamL2, Hpm, HpmMoore, HpmCross2 };
enum class Linearization { L1, L2 };

// What the model optimizes and how to read its solution back.
struct ModelMeta {
    ModelKind kind = ModelKind::Hpm;
    int n = 0;
    int m = 0;
    bool coordinated = false;
    bool me = false;  // objective is the (maximized) Measure of Effectiveness
    int p = 1;
    NeighborhoodSpec spec = NeighborhoodSpec::von_neumann();
};

class MilpModel {
public:
    // Throws std::invalid_argument on duplicate or malformed names
    // ([A-Za-z][A-Za-z0-9_]*, at most 255 characters).
    int add_variable(const std::string& name, double lb, double ub, VarKind kind);
    int variable_index(const std::string& name) const;  // -1 when absent

    void add_linear(LinearConstraint c);
    void add_quadratic(QuadConstraint c);

    void set_objective(bool maximize) { maximize_ = maximize; }
    void add_objective_term(int var, double coef);
    void add_objective_quad(int var1, int var2, double coef);

    const std::vector<MilpVariable>& variables() const { return variables_; }
    const std::vector<LinearConstraint>& linear_constraints() const { return linear_; }
    const std::vector<QuadConstraint>& quadratic_constraints() const { return quadratic_; }
    const std::vector<LinTerm>& objective_terms() const { return objective_; }
    const std::vector<QuadTerm>& objective_quad_terms() const { return objective_quad_; }
    bool maximize() const { return maximize_; }

    ModelMeta meta;

private:
    void check_terms(const std::vector<LinTerm>& terms) const;

    std::vector<MilpVariable> variables_;
    std::map<std::string, int> index_;
    std::vector<LinearConstraint> linear_;
    std::vector<QuadConstraint> quadratic_;
    std::vector<LinTerm> objective_;
    std::vector<QuadTerm> objective_quad_;
    bool maximize_ = false;
};

// ---- Formulation builders -------------------------------------------------

// Position assignment model for any neighborhood. Requires entries in [0,1]
// (the L2 big-M constants and L1 difference bounds depend on it). p=1 yields
// a pure MILP; p=2 adds quadratic constraints.
MilpModel build_pam(const DenseMatrix& a, const StressParams& params,
                    Linearization linearization, bool coordinated, bool symmetry_breaking);

// Hamiltonian path model (arc-position subtour prevention) for von Neumann
// stress or ME; weights absorb p so the model is always linear.
MilpModel build_hpm(const DenseMatrix& a, const MeasureSpec& measure, bool coordinated);

// HPM plus linearized path-coupling products for the Moore neighborhood.
MilpModel build_hpm_moore(const DenseMatrix& a, int p);

// HPM plus two-step lookahead terms for the 2-step cross neighborhood.
MilpModel build_hpm_cross2(const DenseMatrix& a, int p);

// |rank(i) - rank(j)| <= kappa for all i,j in cluster (HPM-family models;
// rank(i) is the arc position sum of i's outgoing arc).
void add_cluster_constraint(MilpModel& model, const std::vector<int>& cluster, int kappa);

// Each observation must land in one of `positions` (PAM-family models).
void add_position_constraint(MilpModel& model, const std::vector<int>& observations,
                             const std::vector<int>& positions);

// ---- LP emission and solution handling ------------------------------------

// Deterministic fixed-keyword LP text (Minimize/Maximize, Subject To, Bounds,
// Generals, Binaries, End); variables in declaration order, coefficients with
// 17 significant digits, quadratic parts in bracketed expressions.
std::string emit_lp_string(const MilpModel& model);
void emit_lp(const MilpModel& model, const std::string& path);

struct ExternalSolverConfig {
    std::string command_template;  // must contain {model} and {solution}
    double timeout_seconds = 0.0;  // 0 = none
    std::string work_dir;          // empty = fresh temp directory

    void validate() const;
};

// JSON file with keys solver_command, timeout_seconds (optional work_dir).
ExternalSolverConfig load_solver_config(const std::string& path);

struct SolutionValues {
    std::map<std::string, double> values;
    std::optional<double> objective;
    std::optional<double> bound;
    std::string status;  // optimal | feasible | infeasible | limit (free-form)
};

// "name value" lines; '#' comments; special names: status, objective, bound.
SolutionValues parse_solution_file(const std::string& path);

// Reads the permutations out of an integral solution (1e-4 tolerance); throws
// IntegrityError on fractional values, broken paths, or duplicate positions.
std::pair<Permutation, Permutation> extract_permutations(
    const std::map<std::string, double>& solution, const MilpModel& model);

// Full variable assignment induced by a permutation pair, with all auxiliary
// variables at their tight values; the assignment is feasible and its
// objective equals the native measure of the induced reordering.
std::map<std::string, double> assignment_for_permutations(const MilpModel& model,
                                                          const DenseMatrix& a,
                                                          const Permutation& row_perm,
                                                          const Permutation& col_perm);

double objective_value(const MilpModel& model, const std::map<std::string, double>& values);

// True when every constraint, bound, and integrality requirement holds within
// tol; the first violated name is reported through `violation` when given.
bool check_feasible(const MilpModel& model, const std::map<std::string, double>& values,
                    double tol, std::string* violation = nullptr);

// Native evaluation of the model's objective measure on a reordered matrix.
double native_objective(const ModelMeta& meta, const DenseMatrix& reordered);

// ---- External solver bridge ------------------------------------------------

// Emits the model, runs the configured command, parses the solution, rebuilds
// the permutations, and cross-checks the objective against the native measure
// (mismatch beyond 1e-6 raises IntegrityError). `a` must be the matrix the
// model was built from.
SeriationResult run_external_solver(const DenseMatrix& a, const MilpModel& model,
                                    const ExternalSolverConfig& config);

enum class Formulation { PamL1, PamL2, Hpm, HpmMoore, HpmCross2 };

Formulation formulation_from_name(const std::string& name);
std::string formulation_name(Formulation f);

// Optional tailoring applied before solving: clusters go to HPM-family
// models, pins to PAM-family models (the wrong pairing raises
// CapabilityError).
struct Tailoring {
    std::vector<std::pair<std::vector<int>, int>> clusters;             // indices, kappa
    std::vector<std::pair<std::vector<int>, std::vector<int>>> pins;    // observations, positions
};

void apply_tailoring(MilpModel& model, const Tailoring& tailoring);

// Convenience bridge used by the CLI and by solve_moore's milp mode: builds
// the requested formulation (normalizing first for PAM and scaling the
// objective back), solves externally, and finalizes the result against the
// raw matrix.
SeriationResult solve_with_external(const DenseMatrix& a, const MeasureSpec& measure,
                                    Formulation formulation, bool coordinated,
                                    const ExternalSolverConfig& config,
                                    bool symmetry_breaking = false,
                                    const Tailoring* tailoring = nullptr);

}  // namespace seriation
