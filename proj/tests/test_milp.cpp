#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "seriation/errors.hpp"
#include "seriation/milp.hpp"
#include "seriation/rng.hpp"
#include "seriation/solver.hpp"

using namespace seriation;
namespace fs = std::filesystem;

namespace {

DenseMatrix random01(int n, int m, Rng& rng) {
    DenseMatrix a(n, m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) a(i, j) = rng.next_double();
    return a;
}

Permutation random_permutation(int size, Rng& rng) {
    std::vector<int> mapping(size);
    for (int i = 0; i < size; ++i) mapping[i] = i;
    rng.shuffle(mapping);
    return Permutation(std::move(mapping));
}

std::size_t count_vars_with_prefix(const MilpModel& model, const std::string& prefix) {
    std::size_t count = 0;
    for (const auto& v : model.variables())
        if (v.name.rfind(prefix, 0) == 0) ++count;
    return count;
}

// External reference solver, available when scipy's HiGHS backend imports.
struct ExternalFixture {
    bool available = false;
    ExternalSolverConfig config;

    ExternalFixture() {
        const char* project_dir = std::getenv("SERIATION_PROJECT_DIR");
        if (!project_dir) return;
        if (std::system("python3 -c 'from scipy.optimize import milp' >/dev/null 2>&1") != 0)
            return;
        config.command_template = std::string("python3 ") + project_dir +
                                  "/tools/solve_lp.py --time-limit {timeout} {model} {solution}";
        config.timeout_seconds = 120.0;
        available = true;
    }
};

const ExternalFixture& external() {
    static ExternalFixture fixture;
    return fixture;
}

}  // namespace

TEST_CASE("model construction rules") {
    MilpModel model;
    model.add_variable("x1", 0, 1, VarKind::Binary);
    CHECK_THROWS_AS(model.add_variable("x1", 0, 1, VarKind::Binary), std::invalid_argument);
    CHECK_THROWS_AS(model.add_variable("1bad", 0, 1, VarKind::Binary), std::invalid_argument);
    CHECK_THROWS_AS(model.add_variable("with space", 0, 1, VarKind::Binary),
                    std::invalid_argument);
    CHECK_THROWS_AS(model.add_linear({"c1", {{5, 1.0}}, Relation::LessEqual, 0.0}),
                    std::invalid_argument);
}

TEST_CASE("pam variable counts match the formulation") {
    const DenseMatrix chess2(2, 2, {0, 1, 1, 0});
    const MilpModel l1 =
        build_pam(chess2, {1, NeighborhoodSpec::von_neumann()}, Linearization::L1, false, false);
    CHECK(count_vars_with_prefix(l1, "x_") == 4);
    CHECK(count_vars_with_prefix(l1, "y_") == 4);
    CHECK(count_vars_with_prefix(l1, "z_") == 16);
    CHECK(count_vars_with_prefix(l1, "v_") == 8);  // 4 cells x 2 von Neumann neighbors

    Rng rng(501);
    const MilpModel coord = build_pam(random01(3, 3, rng), {1, NeighborhoodSpec::von_neumann()},
                                      Linearization::L1, true, false);
    CHECK(count_vars_with_prefix(coord, "x_") == 9);
    CHECK(count_vars_with_prefix(coord, "y_") == 0);

    CHECK_THROWS_AS(build_pam(DenseMatrix(2, 2, {0.0, 2.0, 1.0, 0.5}),
                              {1, NeighborhoodSpec::von_neumann()}, Linearization::L1, false,
                              false),
                    std::invalid_argument);
}

TEST_CASE("symmetry breaking constraint uses binary position weights") {
    Rng rng(503);
    const DenseMatrix a = random01(3, 3, rng);
    const MilpModel plain =
        build_pam(a, {1, NeighborhoodSpec::von_neumann()}, Linearization::L2, false, false);
    const MilpModel with_sb =
        build_pam(a, {1, NeighborhoodSpec::von_neumann()}, Linearization::L2, false, true);
    CHECK(with_sb.linear_constraints().size() == plain.linear_constraints().size() + 1);
    const auto& sb = with_sb.linear_constraints().back();
    CHECK(sb.name == "symbreak");
    CHECK(sb.terms.size() == 6);
    CHECK(sb.terms[0].coef == 2.0);   // 2^1 on x_1_1
    CHECK(sb.terms[1].coef == -2.0);  // -2^1 on x_2_1
    CHECK(sb.terms[4].coef == 8.0);   // 2^3 on x_1_3
}

TEST_CASE("hpm variable counts") {
    Rng rng(509);
    const DenseMatrix a = random01(3, 3, rng);
    const MilpModel hpm = build_hpm(a, MeasureSpec::vn(1), false);
    CHECK(hpm.variables().size() == 30);  // 2 * (6 z + 3 t + 6 g)
    CHECK(count_vars_with_prefix(hpm, "zR_") == 6);
    CHECK(count_vars_with_prefix(hpm, "tR_") == 3);
    CHECK(count_vars_with_prefix(hpm, "gR_") == 6);
    CHECK_FALSE(hpm.maximize());

    const MilpModel me = build_hpm(a, MeasureSpec::me(), false);
    CHECK(me.maximize());

    const MilpModel moore = build_hpm_moore(a, 1);
    CHECK(count_vars_with_prefix(moore, "h_") == 36);  // 6 row arcs x 6 col arcs

    const MilpModel cross = build_hpm_cross2(a, 1);
    CHECK(count_vars_with_prefix(cross, "uR_") == 3);
    CHECK(count_vars_with_prefix(cross, "uC_") == 3);
}

TEST_CASE("model-measure consistency for every formulation") {
    Rng rng(521);
    const DenseMatrix a = random01(3, 4, rng);
    const auto [normalized, info] = normalize(a);
    (void)info;
    for (int p : {1, 2}) {
        const StressParams params{p, NeighborhoodSpec::von_neumann()};
        for (Linearization lin : {Linearization::L1, Linearization::L2}) {
            const MilpModel model = build_pam(normalized, params, lin, false, false);
            for (int trial = 0; trial < 5; ++trial) {
                const Permutation rp = random_permutation(3, rng), cp = random_permutation(4, rng);
                const auto values = assignment_for_permutations(model, normalized, rp, cp);
                std::string violation;
                CHECK_MESSAGE(check_feasible(model, values, 1e-9, &violation), violation);
                const double native =
                    native_objective(model.meta, apply_permutations(normalized, rp, cp));
                CHECK(objective_value(model, values) == doctest::Approx(native).epsilon(1e-9));
            }
        }
        for (const MilpModel& model :
             {build_hpm(a, MeasureSpec::vn(p), false), build_hpm_moore(a, p),
              build_hpm_cross2(a, p)}) {
            for (int trial = 0; trial < 5; ++trial) {
                const Permutation rp = random_permutation(3, rng), cp = random_permutation(4, rng);
                const auto values = assignment_for_permutations(model, a, rp, cp);
                std::string violation;
                CHECK_MESSAGE(check_feasible(model, values, 1e-9, &violation), violation);
                const double native =
                    native_objective(model.meta, apply_permutations(a, rp, cp));
                CHECK(objective_value(model, values) == doctest::Approx(native).epsilon(1e-9));
            }
        }
    }
    // ME models decompose the same way.
    const MilpModel me_model = build_hpm(a, MeasureSpec::me(), false);
    const Permutation rp = random_permutation(3, rng), cp = random_permutation(4, rng);
    const auto values = assignment_for_permutations(me_model, a, rp, cp);
    CHECK(check_feasible(me_model, values, 1e-9));
    CHECK(objective_value(me_model, values) ==
          doctest::Approx(effectiveness(apply_permutations(a, rp, cp))).epsilon(1e-9));
}

TEST_CASE("coordinated models accept only equal permutations") {
    Rng rng(523);
    const DenseMatrix a = random01(4, 4, rng);
    const MilpModel model = build_hpm(a, MeasureSpec::vn(1), true);
    const Permutation perm = random_permutation(4, rng);
    const auto values = assignment_for_permutations(model, a, perm, perm);
    CHECK(check_feasible(model, values, 1e-9));
    CHECK(objective_value(model, values) ==
          doctest::Approx(MeasureSpec::vn(1).evaluate(apply_permutations(a, perm, perm))));
}

TEST_CASE("cross2 lookahead variables vanish at the path tail") {
    Rng rng(527);
    const DenseMatrix a = random01(4, 4, rng);
    const MilpModel model = build_hpm_cross2(a, 1);
    const Permutation rp = random_permutation(4, rng), cp = random_permutation(4, rng);
    const auto values = assignment_for_permutations(model, a, rp, cp);
    const auto row_order = rp.order();
    // The last two nodes have no two-ahead successor.
    CHECK(values.at("uR_" + std::to_string(row_order[3] + 1)) == 0.0);
    CHECK(values.at("uR_" + std::to_string(row_order[2] + 1)) == 0.0);
}

TEST_CASE("cluster constraints") {
    Rng rng(531);
    const DenseMatrix a = random01(5, 5, rng);
    MilpModel vacuous = build_hpm(a, MeasureSpec::vn(1), false);
    const std::size_t before = vacuous.linear_constraints().size();
    add_cluster_constraint(vacuous, {0, 4}, 4);  // kappa = n-1 never binds
    CHECK(vacuous.linear_constraints().size() == before + 2);
    for (int trial = 0; trial < 10; ++trial) {
        const Permutation rp = random_permutation(5, rng), cp = random_permutation(5, rng);
        CHECK(check_feasible(vacuous, assignment_for_permutations(vacuous, a, rp, cp), 1e-9));
    }

    MilpModel tight = build_hpm(a, MeasureSpec::vn(1), false);
    add_cluster_constraint(tight, {0, 4}, 1);
    // Node 0 first (rank 1) and node 4 second-to-last (rank 4): |1-4| > 1.
    const Permutation far_rows({0, 1, 2, 4, 3});
    const Permutation any_cols = random_permutation(5, rng);
    CHECK_FALSE(check_feasible(tight, assignment_for_permutations(tight, a, far_rows, any_cols),
                               1e-9));
    // Adjacent placement satisfies it.
    const Permutation near_rows({0, 2, 3, 4, 1});  // order 0,4,1,2,3: ranks 1 and 2
    CHECK(check_feasible(tight, assignment_for_permutations(tight, a, near_rows, any_cols), 1e-9));

    MilpModel single = build_hpm(a, MeasureSpec::vn(1), false);
    const std::size_t base = single.linear_constraints().size();
    add_cluster_constraint(single, {2}, 2);
    CHECK(single.linear_constraints().size() == base);  // singleton adds nothing

    MilpModel pam = build_pam(normalize(a).first, {1, NeighborhoodSpec::von_neumann()},
                              Linearization::L2, false, false);
    CHECK_THROWS_AS(add_cluster_constraint(pam, {0, 1}, 2), CapabilityError);
    MilpModel bad = build_hpm(a, MeasureSpec::vn(1), false);
    CHECK_THROWS_AS(add_cluster_constraint(bad, {0, 1}, 5), std::invalid_argument);
}

TEST_CASE("position constraints") {
    Rng rng(541);
    const DenseMatrix a = normalize(random01(4, 4, rng)).first;
    MilpModel model = build_pam(a, {1, NeighborhoodSpec::von_neumann()}, Linearization::L2, false,
                                false);
    const std::size_t before = model.linear_constraints().size();
    add_position_constraint(model, {0}, {0, 1, 2, 3});  // vacuous
    CHECK(model.linear_constraints().size() == before + 1);
    for (int trial = 0; trial < 5; ++trial) {
        const Permutation rp = random_permutation(4, rng), cp = random_permutation(4, rng);
        CHECK(check_feasible(model, assignment_for_permutations(model, a, rp, cp), 1e-9));
    }
    MilpModel pinned = build_pam(a, {1, NeighborhoodSpec::von_neumann()}, Linearization::L2,
                                 false, false);
    add_position_constraint(pinned, {1}, {0});
    const Permutation wrong({1, 2, 3, 0});  // row 1 at position 2
    CHECK_FALSE(
        check_feasible(pinned, assignment_for_permutations(pinned, a, wrong, wrong), 1e-9));
    const Permutation right({1, 0, 2, 3});  // row 1 at position 0
    CHECK(check_feasible(pinned, assignment_for_permutations(pinned, a, right, right), 1e-9));

    CHECK_THROWS_AS(add_position_constraint(pinned, {0, 1}, {2}), std::invalid_argument);
    MilpModel hpm = build_hpm(a, MeasureSpec::vn(1), false);
    CHECK_THROWS_AS(add_position_constraint(hpm, {0}, {0, 1}), CapabilityError);
}

TEST_CASE("lp emission is deterministic and structured") {
    Rng rng(547);
    const DenseMatrix a = random01(3, 3, rng);
    const MilpModel model = build_hpm(a, MeasureSpec::vn(1), false);
    const std::string text1 = emit_lp_string(model);
    const std::string text2 = emit_lp_string(model);
    CHECK(text1 == text2);
    CHECK(text1.rfind("Minimize\n", 0) == 0);
    CHECK(text1.find("Subject To\n") != std::string::npos);
    CHECK(text1.find("Binaries\n") != std::string::npos);
    CHECK(text1.find("Generals\n") != std::string::npos);
    CHECK(text1.find("End\n") != std::string::npos);

    MilpModel empty;
    empty.add_variable("x1", 0, 1, VarKind::Binary);
    const std::string empty_text = emit_lp_string(empty);
    CHECK(empty_text.find("obj: 0") != std::string::npos);

    // Quadratic constraints appear as bracketed expressions.
    const MilpModel quad = build_pam(normalize(a).first, {2, NeighborhoodSpec::von_neumann()},
                                     Linearization::L2, false, false);
    const std::string quad_text = emit_lp_string(quad);
    CHECK(quad_text.find("[") != std::string::npos);
    CHECK(quad_text.find("^") != std::string::npos);

    // Distinct models emit distinct files (names encode indices).
    const MilpModel other = build_hpm(a, MeasureSpec::vn(2), false);
    CHECK(emit_lp_string(other) != text1);
}

TEST_CASE("solution file parsing") {
    const fs::path dir = fs::temp_directory_path() / "seriation_test_sol";
    fs::create_directories(dir);
    const fs::path path = dir / "a.sol";
    {
        std::ofstream out(path);
        out << "# comment line\n"
            << "status optimal\n"
            << "objective 12.5\n"
            << "bound 12.5\n"
            << "x_1_1 1\n"
            << "x_1_2 0.0000001\n\n";
    }
    const SolutionValues sol = parse_solution_file(path.string());
    CHECK(sol.status == "optimal");
    CHECK(sol.objective == 12.5);
    CHECK(sol.values.at("x_1_1") == 1.0);
    CHECK(sol.values.size() == 2);
    {
        std::ofstream out(path);
        out << "x_1_1 not_a_number\n";
    }
    CHECK_THROWS_AS(parse_solution_file(path.string()), ParseError);
    CHECK_THROWS_AS(parse_solution_file((dir / "missing.sol").string()), ParseError);
}

TEST_CASE("extract_permutations reads assignments and paths") {
    Rng rng(557);
    const DenseMatrix a = normalize(random01(3, 3, rng)).first;
    const MilpModel pam =
        build_pam(a, {1, NeighborhoodSpec::von_neumann()}, Linearization::L2, false, false);
    const auto identity_values =
        assignment_for_permutations(pam, a, Permutation::identity(3), Permutation::identity(3));
    const auto [pr, pc] = extract_permutations(identity_values, pam);
    CHECK(pr == Permutation::identity(3));
    CHECK(pc == Permutation::identity(3));

    // Hand-built path 2 -> 0 -> 1: node 0 at position 1, node 1 at 2, node 2 at 0.
    const MilpModel hpm = build_hpm(a, MeasureSpec::vn(1), true);
    std::map<std::string, double> path_values;
    path_values["zR_3_1"] = 1.0;
    path_values["zR_1_2"] = 1.0;
    path_values["tR_2"] = 1.0;
    const auto [hr, hc] = extract_permutations(path_values, hpm);
    CHECK(hr.mapping() == std::vector<int>{1, 2, 0});
    CHECK(hc == hr);

    auto fractional = identity_values;
    fractional["x_1_1"] = 0.5;
    CHECK_THROWS_AS(extract_permutations(fractional, pam), IntegrityError);

    // Broken path: 1 -> 2 and 3 -> ... nothing, two starts.
    std::map<std::string, double> broken;
    broken["zR_1_2"] = 1.0;
    broken["tR_3"] = 1.0;
    CHECK_THROWS_AS(extract_permutations(broken, hpm), IntegrityError);
}

TEST_CASE("extraction inverts the permutation embedding for every model kind") {
    Rng rng(593);
    const DenseMatrix a = random01(4, 5, rng);
    const DenseMatrix norm = normalize(a).first;
    const DenseMatrix square = random01(4, 4, rng);
    struct Case {
        MilpModel model;
        const DenseMatrix* matrix;
        bool coordinated;
    };
    std::vector<Case> cases;
    cases.push_back({build_pam(norm, {1, NeighborhoodSpec::von_neumann()}, Linearization::L1,
                               false, false),
                     &norm, false});
    cases.push_back({build_pam(norm, {2, NeighborhoodSpec::moore()}, Linearization::L2, false,
                               false),
                     &norm, false});
    cases.push_back({build_hpm(a, MeasureSpec::me(), false), &a, false});
    cases.push_back({build_hpm_moore(a, 1), &a, false});
    cases.push_back({build_hpm_cross2(a, 2), &a, false});
    cases.push_back({build_hpm(square, MeasureSpec::vn(1), true), &square, true});
    for (auto& [model, matrix, coordinated] : cases) {
        for (int trial = 0; trial < 4; ++trial) {
            const Permutation rp = random_permutation(model.meta.n, rng);
            const Permutation cp =
                coordinated ? rp : random_permutation(model.meta.m, rng);
            const auto values = assignment_for_permutations(model, *matrix, rp, cp);
            const auto [er, ec] = extract_permutations(values, model);
            CHECK(er == rp);
            CHECK(ec == cp);
        }
    }
}

TEST_CASE("external solver config validation") {
    ExternalSolverConfig cfg;
    cfg.command_template = "solver {model}";
    CHECK_THROWS_AS(cfg.validate(), SolverConfigError);
    cfg.command_template = "solver {model} {solution}";
    CHECK_NOTHROW(cfg.validate());
    ExternalSolverConfig absent;
    absent.command_template = "definitely_missing_solver_binary {model} {solution}";
    Rng rng(561);
    const DenseMatrix a = random01(3, 3, rng);
    const MilpModel model = build_hpm(a, MeasureSpec::vn(1), false);
    CHECK_THROWS_AS(run_external_solver(a, model, absent), SolverConfigError);
}

TEST_CASE("external reference solver agrees with brute force" *
          doctest::skip(!external().available)) {
    Rng rng(563);
    for (int trial = 0; trial < 3; ++trial) {
        const DenseMatrix a = random01(4, 4, rng);
        const SeriationResult oracle = brute_force(a, MeasureSpec::vn(1), false);
        const SeriationResult ext = solve_with_external(a, MeasureSpec::vn(1), Formulation::Hpm,
                                                        false, external().config);
        CHECK(ext.status == SolveStatus::Optimal);
        CHECK(ext.objective == doctest::Approx(oracle.objective).epsilon(1e-9));
    }
    // PAM with a quadratic block is rejected by the linear backend.
    const DenseMatrix b = normalize(random01(3, 3, rng)).first;
    const MilpModel quad =
        build_pam(b, {2, NeighborhoodSpec::von_neumann()}, Linearization::L2, false, false);
    CHECK_THROWS_AS(run_external_solver(b, quad, external().config), CapabilityError);
}

TEST_CASE("symmetry breaking leaves the optimal objective unchanged" *
          doctest::skip(!external().available)) {
    Rng rng(571);
    const DenseMatrix a = random01(4, 4, rng);
    const SeriationResult plain = solve_with_external(a, MeasureSpec::vn(1), Formulation::PamL2,
                                                      false, external().config, false);
    const SeriationResult broken = solve_with_external(a, MeasureSpec::vn(1), Formulation::PamL2,
                                                       false, external().config, true);
    CHECK(plain.status == SolveStatus::Optimal);
    CHECK(broken.status == SolveStatus::Optimal);
    CHECK(plain.objective == doctest::Approx(broken.objective).epsilon(1e-9));
}

TEST_CASE("binding cluster constraints strictly worsen an easy optimum" *
          doctest::skip(!external().available)) {
    // 5 collinear points; the optimum orders them monotonically. Clustering
    // the leftmost point with the median forces a different order.
    const std::vector<double> pts{0.0, 10.0, 20.0, 30.0, 40.0};
    DenseMatrix a(5, 5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) a(i, j) = std::fabs(pts[i] - pts[j]);
    MilpModel plain = build_hpm(a, MeasureSpec::vn(1), false);
    const SeriationResult base = run_external_solver(a, plain, external().config);
    MilpModel constrained = build_hpm(a, MeasureSpec::vn(1), false);
    add_cluster_constraint(constrained, {0, 2}, 1);
    const SeriationResult tight = run_external_solver(a, constrained, external().config);
    CHECK(base.status == SolveStatus::Optimal);
    CHECK(tight.status == SolveStatus::Optimal);
    CHECK(tight.objective > base.objective + 1e-9);
}

TEST_CASE("pinning a row restricts without breaking feasibility" *
          doctest::skip(!external().available)) {
    Rng rng(577);
    const DenseMatrix a = normalize(random01(4, 4, rng)).first;
    MilpModel plain =
        build_pam(a, {1, NeighborhoodSpec::von_neumann()}, Linearization::L2, false, false);
    const SeriationResult base = run_external_solver(a, plain, external().config);
    MilpModel pinned =
        build_pam(a, {1, NeighborhoodSpec::von_neumann()}, Linearization::L2, false, false);
    add_position_constraint(pinned, {0}, {0});
    const SeriationResult res = run_external_solver(a, pinned, external().config);
    CHECK(res.status == SolveStatus::Optimal);
    CHECK(res.row_perm(0) == 0);
    CHECK(res.objective >= base.objective - 1e-9);
}

TEST_CASE("all formulations of one instance agree on the optimum" *
          doctest::skip(!external().available)) {
    Rng rng(583);
    for (const auto& [n, m] : {std::pair{4, 4}, std::pair{4, 5}}) {
        const DenseMatrix a = random01(n, m, rng);
        const double oracle = brute_force(a, MeasureSpec::vn(1), false).objective;
        for (Formulation f : {Formulation::PamL1, Formulation::PamL2, Formulation::Hpm}) {
            const SeriationResult res =
                solve_with_external(a, MeasureSpec::vn(1), f, false, external().config);
            CHECK_MESSAGE(res.objective == doctest::Approx(oracle).epsilon(1e-9),
                          formulation_name(f));
        }
    }
}

TEST_CASE("solve_moore milp bridge equals the brute Moore optimum" *
          doctest::skip(!external().available)) {
    Rng rng(587);
    const DenseMatrix a = random01(4, 4, rng);
    const SeriationResult oracle = brute_force(a, MeasureSpec::moore(1), false);
    const SeriationResult bridged =
        solve_moore(a, 1, MooreMode::MilpBridge, {}, &external().config);
    CHECK(bridged.status == SolveStatus::Optimal);
    CHECK(bridged.objective == doctest::Approx(oracle.objective).epsilon(1e-9));
    CHECK_THROWS_AS(solve_moore(a, 1, MooreMode::MilpBridge, {}, nullptr), SolverConfigError);
}

TEST_CASE("pam-l2 solves the eps(2) neighborhood to the brute optimum" *
          doctest::skip(!external().available)) {
    Rng rng(579);
    const DenseMatrix a = normalize(random01(4, 4, rng)).first;
    const SeriationResult oracle = brute_force(a, MeasureSpec::eps_ball(2.0, 1), false);
    const SeriationResult ext = solve_with_external(a, MeasureSpec::eps_ball(2.0, 1),
                                                    Formulation::PamL2, false, external().config);
    CHECK(ext.status == SolveStatus::Optimal);
    CHECK(ext.objective == doctest::Approx(oracle.objective).epsilon(1e-9));
}

TEST_CASE("coordinated external solves match coordinated brute force" *
          doctest::skip(!external().available)) {
    Rng rng(599);
    const DenseMatrix a = random01(4, 4, rng);
    const SeriationResult oracle = brute_force(a, MeasureSpec::vn(1), true);
    for (Formulation f : {Formulation::Hpm, Formulation::PamL1}) {
        const SeriationResult ext =
            solve_with_external(a, MeasureSpec::vn(1), f, true, external().config);
        CHECK(ext.status == SolveStatus::Optimal);
        CHECK(ext.objective == doctest::Approx(oracle.objective).epsilon(1e-9));
        CHECK(ext.row_perm == ext.col_perm);
    }
}

TEST_CASE("external solver reports infeasibility distinctly" *
          doctest::skip(!external().available)) {
    Rng rng(569);
    const DenseMatrix a = normalize(random01(3, 3, rng)).first;
    MilpModel model =
        build_pam(a, {1, NeighborhoodSpec::von_neumann()}, Linearization::L2, false, false);
    // Two distinct rows pinned to the same single position.
    add_position_constraint(model, {0}, {0});
    add_position_constraint(model, {1}, {0});
    const SeriationResult res = run_external_solver(a, model, external().config);
    CHECK(res.status == SolveStatus::Infeasible);
    CHECK_FALSE(res.has_incumbent);
}
