#include <sys/types.h>
#include <sys/wait.h>

#include <atomic>
#include <csignal>
#include <cstdlib>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <thread>
#include <unistd.h>

#include <stdexcept>

#include "seriation/errors.hpp"
#include "seriation/milp.hpp"

namespace seriation {

namespace fs = std::filesystem;

namespace {

std::string substitute(std::string text, const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    while ((pos = text.find(key, pos)) != std::string::npos) {
        text.replace(pos, key.size(), value);
        pos += value.size();
    }
    return text;
}

struct CommandResult {
    int exit_code = -1;
    bool timed_out = false;
    std::string stderr_tail;
};

// Runs `command` through /bin/sh in its own process group; kills the whole
// group if the deadline passes.
CommandResult run_command(const std::string& command, double timeout_s,
                          const fs::path& stderr_path) {
    const pid_t pid = fork();
    if (pid < 0) throw ExternalSolverError("fork failed");
    if (pid == 0) {
        setpgid(0, 0);
        if (FILE* err = std::fopen(stderr_path.c_str(), "w")) dup2(fileno(err), 2);
        execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }
    setpgid(pid, pid);  // both sides set it so the group kill cannot race the exec
    const auto deadline = std::chrono::steady_clock::now() +
                          std::chrono::duration<double>(timeout_s > 0 ? timeout_s : 1e9);
    CommandResult res;
    int status = 0;
    for (;;) {
        const pid_t done = waitpid(pid, &status, WNOHANG);
        if (done == pid) break;
        if (done < 0) throw ExternalSolverError("waitpid failed");
        if (std::chrono::steady_clock::now() >= deadline) {
            kill(-pid, SIGKILL);
            waitpid(pid, &status, 0);
            res.timed_out = true;
            break;
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
    if (WIFEXITED(status)) res.exit_code = WEXITSTATUS(status);
    std::ifstream err(stderr_path);
    if (err) {
        std::string line, tail;
        while (std::getline(err, line)) {
            tail += line + '\n';
            if (tail.size() > 2000) tail.erase(0, tail.size() - 2000);
        }
        res.stderr_tail = tail;
    }
    std::error_code ec;
    fs::remove(stderr_path, ec);
    return res;
}

fs::path make_work_dir(const ExternalSolverConfig& config) {
    if (!config.work_dir.empty()) {
        fs::create_directories(config.work_dir);
        return config.work_dir;
    }
    static std::atomic<unsigned> counter{0};
    const fs::path base = fs::temp_directory_path();
    for (int attempt = 0; attempt < 10000; ++attempt) {
        fs::path dir = base / ("seriation_milp_" + std::to_string(::getpid()) + "_" +
                               std::to_string(counter.fetch_add(1)));
        std::error_code ec;
        if (fs::create_directory(dir, ec)) return dir;
    }
    throw ExternalSolverError("could not create a working directory under " + base.string());
}

// Temp dirs we created are removed after a successful run; on errors the
// emitted model stays behind for diagnosis (and nothing else).
struct WorkDirGuard {
    fs::path dir;
    bool owned;
    bool keep_model = true;

    ~WorkDirGuard() {
        if (!owned) return;
        std::error_code ec;
        if (keep_model) {
            fs::remove(dir / "solution.sol", ec);
            fs::remove(dir / "stderr.log", ec);
        } else {
            fs::remove_all(dir, ec);
        }
    }
};

}  // namespace

SeriationResult run_external_solver(const DenseMatrix& a, const MilpModel& model,
                                    const ExternalSolverConfig& config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();
    const fs::path work_dir = make_work_dir(config);
    WorkDirGuard guard{work_dir, config.work_dir.empty()};
    const fs::path model_path = work_dir / "model.lp";
    const fs::path solution_path = work_dir / "solution.sol";
    emit_lp(model, model_path.string());
    std::error_code ec;
    fs::remove(solution_path, ec);

    std::string command = substitute(config.command_template, "{model}", model_path.string());
    command = substitute(command, "{solution}", solution_path.string());
    command = substitute(command, "{timeout}",
                         config.timeout_seconds > 0
                             ? std::to_string(config.timeout_seconds)
                             : "0");

    // Grace period on top of the solver's own limit before the hard kill.
    const double hard_timeout =
        config.timeout_seconds > 0 ? config.timeout_seconds * 1.5 + 30.0 : 0.0;
    const CommandResult cmd = run_command(command, hard_timeout, work_dir / "stderr.log");
    if (cmd.timed_out)
        throw ExternalSolverError("external solver exceeded the hard timeout: " + command);
    if (cmd.exit_code == 127)
        throw SolverConfigError("solver command not found: " + command);
    if (cmd.exit_code != 0) {
        if (cmd.stderr_tail.find("quadratic") != std::string::npos)
            throw CapabilityError("external solver rejected the model: " + cmd.stderr_tail);
        throw ExternalSolverError("solver command failed (exit " + std::to_string(cmd.exit_code) +
                                  "): " + command +
                                  (cmd.stderr_tail.empty() ? "" : "\n" + cmd.stderr_tail));
    }
    if (!fs::exists(solution_path))
        throw ExternalSolverError("solver produced no solution file: " + command);

    const SolutionValues sol = parse_solution_file(solution_path.string());
    guard.keep_model = false;
    SeriationResult res;
    res.solver_name = "external_milp";
    res.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (sol.status == "infeasible") {
        res.status = SolveStatus::Infeasible;
        res.has_incumbent = false;
        return res;
    }
    if (sol.values.empty()) {
        // Limit hit before any incumbent: bound (when given) is still valid.
        res.status = SolveStatus::LimitReached;
        res.has_incumbent = false;
        if (sol.bound) res.bound = *sol.bound;
        return res;
    }

    auto [row_perm, col_perm] = extract_permutations(sol.values, model);
    res.row_perm = std::move(row_perm);
    res.col_perm = std::move(col_perm);

    const DenseMatrix reordered = apply_permutations(a, res.row_perm, res.col_perm);
    const double native = native_objective(model.meta, reordered);
    if (sol.objective && std::fabs(*sol.objective - native) >
                             1e-6 * std::max(1.0, std::fabs(native)))
        throw IntegrityError("external objective " + std::to_string(*sol.objective) +
                             " does not match native evaluation " + std::to_string(native));
    res.objective = native;
    if (sol.status == "optimal" || sol.status.empty()) {
        res.status = SolveStatus::Optimal;
        res.bound = native;
        res.gap = 0.0;
    } else {
        res.status = sol.status == "feasible" ? SolveStatus::FeasibleWithGap
                                              : SolveStatus::LimitReached;
        res.bound = sol.bound.value_or(native);
        res.gap = std::fabs(native - res.bound) / std::max(1e-10, std::fabs(native));
    }
    return res;
}

Formulation formulation_from_name(const std::string& name) {
    if (name == "pam-l1") return Formulation::PamL1;
    if (name == "pam-l2") return Formulation::PamL2;
    if (name == "hpm") return Formulation::Hpm;
    if (name == "hpm-moore") return Formulation::HpmMoore;
    if (name == "hpm-cross2") return Formulation::HpmCross2;
    throw std::invalid_argument("unknown formulation '" + name + "'");
}

std::string formulation_name(Formulation f) {
    switch (f) {
        case Formulation::PamL1: return "pam-l1";
        case Formulation::PamL2: return "pam-l2";
        case Formulation::Hpm: return "hpm";
        case Formulation::HpmMoore: return "hpm-moore";
        case Formulation::HpmCross2: return "hpm-cross2";
    }
    return "?";
}

void apply_tailoring(MilpModel& model, const Tailoring& tailoring) {
    for (const auto& [indices, kappa] : tailoring.clusters)
        add_cluster_constraint(model, indices, kappa);
    for (const auto& [observations, positions] : tailoring.pins)
        add_position_constraint(model, observations, positions);
}

SeriationResult solve_with_external(const DenseMatrix& a, const MeasureSpec& measure,
                                    Formulation formulation, bool coordinated,
                                    const ExternalSolverConfig& config, bool symmetry_breaking,
                                    const Tailoring* tailoring) {
    const auto start = std::chrono::steady_clock::now();
    SeriationResult res;
    if (formulation == Formulation::PamL1 || formulation == Formulation::PamL2) {
        const auto [normalized, info] = normalize(a);
        const StressParams params{measure.p, measure.neighborhood()};
        MilpModel model = build_pam(normalized, params,
                                    formulation == Formulation::PamL1 ? Linearization::L1
                                                                      : Linearization::L2,
                                    coordinated, symmetry_breaking);
        if (tailoring) apply_tailoring(model, *tailoring);
        res = run_external_solver(normalized, model, config);
        if (!res.has_incumbent) return res;
        res.bound = denormalize_objective(res.bound, info, measure.p);
        const double claimed = denormalize_objective(res.objective, info, measure.p);
        finalize_result(res, a, measure, claimed);
        res.solver_name = formulation == Formulation::PamL1 ? "external_pam_l1"
                                                            : "external_pam_l2";
    } else {
        MilpModel model;
        switch (formulation) {
            case Formulation::Hpm: model = build_hpm(a, measure, coordinated); break;
            case Formulation::HpmMoore:
                if (measure.kind != MeasureSpec::Kind::Moore)
                    throw std::invalid_argument("hpm-moore optimizes the Moore stress");
                model = build_hpm_moore(a, measure.p);
                break;
            case Formulation::HpmCross2:
                if (measure.kind != MeasureSpec::Kind::Cross2)
                    throw std::invalid_argument("hpm-cross2 optimizes the 2-step cross stress");
                model = build_hpm_cross2(a, measure.p);
                break;
            default: break;
        }
        if (tailoring) apply_tailoring(model, *tailoring);
        res = run_external_solver(a, model, config);
        if (!res.has_incumbent) return res;
        const double claimed = res.objective;
        const double bound = res.bound;
        finalize_result(res, a, measure, claimed);
        res.bound = bound;
        res.solver_name = formulation == Formulation::Hpm        ? "external_hpm"
                          : formulation == Formulation::HpmMoore ? "external_hpm_moore"
                                                                 : "external_hpm_cross2";
    }
    if (res.status == SolveStatus::Optimal) {
        res.bound = res.objective;
        res.gap = 0.0;
    } else {
        res.gap = std::fabs(res.objective - res.bound) / std::max(1e-10, std::fabs(res.objective));
    }
    res.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

}  // namespace seriation
