// Command-line surface: seriate / evaluate / generate / emit-model / render /
// bench subcommands over the seriation library.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "seriation/errors.hpp"
#include "seriation/heuristics.hpp"
#include "seriation/io.hpp"
#include "seriation/milp.hpp"
#include "seriation/solver.hpp"

namespace fs = std::filesystem;
using namespace seriation;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitLimitNoIncumbent = 3;

MeasureSpec measure_from_flags(const std::string& name, int p, double eps) {
    if (name == "vn") return MeasureSpec::vn(p);
    if (name == "moore") return MeasureSpec::moore(p);
    if (name == "cross2") return MeasureSpec::cross2(p);
    if (name == "me") return MeasureSpec::me();
    if (name == "eps") {
        if (eps <= 0.0) throw CLI::ValidationError("--eps must be positive for --measure eps");
        return MeasureSpec::eps_ball(eps, p);
    }
    throw CLI::ValidationError("unknown measure '" + name + "'");
}

double factorial_cap(int n, int cap_exponent = 8) {
    double f = 1.0;
    for (int i = 2; i <= n && f < std::pow(10.0, cap_exponent); ++i) f *= i;
    return f;
}

bool within_brute_auto_guard(int n, int m, bool coordinated) {
    // auto picks brute force while the search space is at most 5! * 5!.
    const double space = coordinated ? factorial_cap(n) : factorial_cap(n) * factorial_cap(m);
    return space <= 14400.0;
}

std::optional<ExternalSolverConfig> optional_solver_config(const std::string& flag_path) {
    std::string path = flag_path;
    if (path.empty())
        if (const char* env = std::getenv("SERIATION_SOLVER_CONFIG")) path = env;
    if (path.empty()) return std::nullopt;
    return load_solver_config(path);
}

// "--cluster 1,4,5:2" -> indices {0,3,4}, kappa 2 (flags are 1-based).
std::pair<std::vector<int>, int> parse_cluster(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw CLI::ValidationError("--cluster expects 'i,j,...:kappa'");
    std::vector<int> indices;
    std::stringstream ss(text.substr(0, colon));
    std::string item;
    while (std::getline(ss, item, ',')) indices.push_back(std::stoi(item) - 1);
    return {indices, std::stoi(text.substr(colon + 1))};
}

// "--pin 3:1,2" -> observation {2}, positions {0,1}.
std::pair<std::vector<int>, std::vector<int>> parse_pin(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw CLI::ValidationError("--pin expects 'i:pos,pos,...'");
    std::vector<int> obs, positions;
    std::stringstream so(text.substr(0, colon));
    std::string item;
    while (std::getline(so, item, ',')) obs.push_back(std::stoi(item) - 1);
    std::stringstream sp(text.substr(colon + 1));
    while (std::getline(sp, item, ',')) positions.push_back(std::stoi(item) - 1);
    return {obs, positions};
}

Tailoring parse_tailoring(const std::vector<std::string>& clusters,
                          const std::vector<std::string>& pins) {
    Tailoring t;
    for (const auto& c : clusters) t.clusters.push_back(parse_cluster(c));
    for (const auto& p : pins) t.pins.push_back(parse_pin(p));
    return t;
}

HeatmapFormat format_for(const std::string& flag, const std::string& path) {
    if (flag == "svg") return HeatmapFormat::Svg;
    if (flag == "pgm") return HeatmapFormat::Pgm;
    if (!flag.empty()) throw CLI::ValidationError("unknown image format '" + flag + "'");
    return path.size() >= 4 && path.substr(path.size() - 4) == ".pgm" ? HeatmapFormat::Pgm
                                                                      : HeatmapFormat::Svg;
}

void write_heatmap_of(const DenseMatrix& a, const std::string& path, const std::string& format,
                      const std::vector<std::string>& row_labels,
                      const std::vector<std::string>& col_labels) {
    render_heatmap(normalize(a).first, path, format_for(format, path), row_labels, col_labels);
}

std::vector<std::string> permuted_labels(const std::vector<std::string>& labels,
                                         const Permutation& perm) {
    if (labels.empty()) return labels;
    std::vector<std::string> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) out[perm(static_cast<int>(i))] = labels[i];
    return out;
}

// Permutations for evaluate: either a result JSON or a two-line text file of
// 1-based positions (rows, then columns).
std::pair<Permutation, Permutation> read_permutation_file(const std::string& path, int n, int m) {
    std::ifstream probe(path);
    if (!probe) throw ParseError("cannot open permutation file '" + path + "'");
    char first = 0;
    probe >> first;
    probe.close();
    auto to_perm = [](const std::vector<int>& one_based) {
        std::vector<int> mapping;
        mapping.reserve(one_based.size());
        for (int v : one_based) mapping.push_back(v - 1);
        return Permutation(std::move(mapping));
    };
    if (first == '{') {
        const ResultDocument doc = load_result_json(path);
        return {to_perm(doc.row_permutation), to_perm(doc.col_permutation)};
    }
    std::ifstream file(path);
    std::string line;
    std::vector<std::vector<int>> rows;
    while (std::getline(file, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<int> values;
        std::stringstream ss(line);
        int v = 0;
        while (ss >> v) values.push_back(v);
        rows.push_back(std::move(values));
    }
    if (rows.size() != 2 || static_cast<int>(rows[0].size()) != n ||
        static_cast<int>(rows[1].size()) != m)
        throw ParseError("permutation file '" + path + "' must hold two lines of 1-based "
                         "positions (rows, then columns)");
    return {to_perm(rows[0]), to_perm(rows[1])};
}

int exit_code_for(const SeriationResult& result) {
    if (result.status == SolveStatus::Infeasible) return kExitInfeasible;
    if (!result.has_incumbent) return kExitLimitNoIncumbent;
    return kExitOk;
}

void print_summary(const SeriationResult& r, const MeasureSpec& measure) {
    std::printf("solver=%s status=%s objective=%.10g bound=%.10g gap=%.4g\n",
                r.solver_name.c_str(), to_string(r.status).c_str(), r.objective, r.bound, r.gap);
    std::printf("measures: vn_p1=%.10g moore_p1=%.10g me=%.10g homogeneity=%.6g\n",
                r.measures.vn_p1, r.measures.moore_p1, r.measures.me, r.measures.homogeneity);
    std::printf("deviations: dev_n=%.4g%% dev_mo=%.4g%% dev_me=%.4g%% dev_hom=%.4g%%\n",
                100.0 * r.deviations.dev_n, 100.0 * r.deviations.dev_mo,
                100.0 * r.deviations.dev_me, 100.0 * r.deviations.dev_hom);
    (void)measure;
}

// ---- seriate ----------------------------------------------------------------

struct SeriateArgs {
    std::string in, out, heatmap, heatmap_format, measure = "vn", engine = "auto";
    std::string solver_config, formulation;
    std::vector<std::string> clusters, pins;
    int p = 1;
    double eps = 0.0;
    bool coordinated = false;
    bool timing = false;
    bool symmetry_breaking = false;
    double time_limit = 0.0;
    long long node_limit = 0;
};

int run_seriate(const SeriateArgs& args) {
    const CsvMatrix input = read_matrix_csv(args.in);
    const DenseMatrix& a = input.matrix;
    const MeasureSpec measure = measure_from_flags(args.measure, args.p, args.eps);
    if (args.coordinated && a.rows() != a.cols()) {
        std::fprintf(stderr, "error: --coordinated requires a square matrix (got %dx%d)\n",
                     a.rows(), a.cols());
        return kExitUsage;
    }
    SolveLimits limits;
    if (args.time_limit > 0) limits.time_limit_s = args.time_limit;
    if (args.node_limit > 0) limits.node_limit = args.node_limit;

    const auto config = optional_solver_config(args.solver_config);
    const Tailoring tailoring = parse_tailoring(args.clusters, args.pins);
    const bool has_tailoring = !tailoring.clusters.empty() || !tailoring.pins.empty();

    std::string engine = args.engine;
    if (engine == "auto") {
        if (has_tailoring) {
            engine = "milp";  // tailoring constraints live in the MILP models
        } else if (measure.kind == MeasureSpec::Kind::VN || measure.kind == MeasureSpec::Kind::ME) {
            engine = within_brute_auto_guard(a.rows(), a.cols(), args.coordinated) ? "brute"
                     : std::max(a.rows(), a.cols()) <= 20                          ? "heldkarp"
                                                                                   : "bnb";
        } else if (measure.kind == MeasureSpec::Kind::Moore) {
            engine = within_brute_auto_guard(a.rows(), a.cols(), args.coordinated) ? "brute"
                                                                                   : "alternating";
        } else {
            if (within_brute_auto_guard(a.rows(), a.cols(), args.coordinated))
                engine = "brute";
            else if (config)
                engine = "milp";
            else {
                std::fprintf(stderr,
                             "error: %s stress beyond the brute-force guard needs the MILP "
                             "engine; configure an external solver\n",
                             measure.name().c_str());
                return kExitUsage;
            }
        }
    }

    SeriationResult result;
    if (engine == "brute") {
        result = brute_force(a, measure, args.coordinated);
    } else if (engine == "heldkarp" || engine == "bnb") {
        if (measure.kind != MeasureSpec::Kind::VN && measure.kind != MeasureSpec::Kind::ME) {
            std::fprintf(stderr, "error: engine %s handles measures vn and me only\n",
                         engine.c_str());
            return kExitUsage;
        }
        result = solve_separable(a, measure, args.coordinated,
                                 engine == "heldkarp" ? Engine::HeldKarp : Engine::BranchAndBound,
                                 limits);
    } else if (engine == "alternating") {
        if (measure.kind != MeasureSpec::Kind::Moore) {
            std::fprintf(stderr, "error: engine alternating handles the moore measure only\n");
            return kExitUsage;
        }
        result = solve_moore(a, args.p, MooreMode::Alternating, limits);
    } else if (engine == "milp") {
        if (!config) {
            std::fprintf(stderr,
                         "error: engine milp needs --solver-config or SERIATION_SOLVER_CONFIG\n");
            return kExitUsage;
        }
        Formulation formulation = Formulation::Hpm;
        if (!args.formulation.empty()) {
            formulation = formulation_from_name(args.formulation);
        } else {
            switch (measure.kind) {
                case MeasureSpec::Kind::VN:
                case MeasureSpec::Kind::ME: formulation = Formulation::Hpm; break;
                case MeasureSpec::Kind::Moore: formulation = Formulation::HpmMoore; break;
                case MeasureSpec::Kind::Cross2: formulation = Formulation::HpmCross2; break;
                case MeasureSpec::Kind::Eps: formulation = Formulation::PamL2; break;
            }
        }
        ExternalSolverConfig cfg = *config;
        if (args.time_limit > 0) cfg.timeout_seconds = args.time_limit;
        result = solve_with_external(a, measure, formulation, args.coordinated, cfg,
                                     args.symmetry_breaking,
                                     has_tailoring ? &tailoring : nullptr);
    } else {
        std::fprintf(stderr, "error: unknown engine '%s'\n", engine.c_str());
        return kExitUsage;
    }

    const int code = exit_code_for(result);
    if (code != kExitOk) {
        std::fprintf(stderr, "no incumbent: status %s\n", to_string(result.status).c_str());
        return code;
    }
    print_summary(result, measure);
    if (!args.out.empty()) {
        ResultDocument doc = make_result_document(a, result, measure, args.coordinated,
                                                  fs::path(args.in).filename().string(),
                                                  args.timing);
        doc.row_labels = input.row_labels;
        doc.col_labels = input.col_labels;
        write_result_json(doc, args.out);
    }
    if (!args.heatmap.empty()) {
        const DenseMatrix reordered = apply_permutations(a, result.row_perm, result.col_perm);
        write_heatmap_of(reordered, args.heatmap, args.heatmap_format,
                         permuted_labels(input.row_labels, result.row_perm),
                         permuted_labels(input.col_labels, result.col_perm));
    }
    return kExitOk;
}

// ---- evaluate ----------------------------------------------------------------

int run_evaluate(const std::string& in, const std::string& perm_path, int p,
                 const std::string& offsets, const std::string& out) {
    const CsvMatrix input = read_matrix_csv(in);
    const DenseMatrix& a = input.matrix;
    Permutation rows = Permutation::identity(a.rows());
    Permutation cols = Permutation::identity(a.cols());
    if (!perm_path.empty())
        std::tie(rows, cols) = read_permutation_file(perm_path, a.rows(), a.cols());
    const DenseMatrix reordered = apply_permutations(a, rows, cols);
    const MeasureReport m = measure_report(reordered);
    const DeviationReport dev = deviation_report(a, reordered, p);
    std::printf("vn_p1=%.10g vn_p2=%.10g moore_p1=%.10g moore_p2=%.10g me=%.10g "
                "homogeneity=%.6g\n",
                m.vn_p1, m.vn_p2, m.moore_p1, m.moore_p2, m.me, m.homogeneity);
    if (!offsets.empty()) {
        const NeighborhoodSpec custom = NeighborhoodSpec::custom(parse_offsets(offsets));
        std::printf("custom_p%d=%.10g\n", p, total_stress(reordered, {p, custom}));
    }
    std::printf("deviations vs original: dev_n=%.4g%% dev_mo=%.4g%% dev_me=%.4g%% "
                "dev_hom=%.4g%%\n",
                100.0 * dev.dev_n, 100.0 * dev.dev_mo, 100.0 * dev.dev_me, 100.0 * dev.dev_hom);
    if (!out.empty()) {
        SeriationResult pseudo;
        pseudo.row_perm = rows;
        pseudo.col_perm = cols;
        pseudo.objective = total_stress(reordered, {p, NeighborhoodSpec::von_neumann()});
        pseudo.bound = pseudo.objective;
        pseudo.status = SolveStatus::Optimal;
        pseudo.solver_name = "evaluate";
        pseudo.measures = m;
        pseudo.deviations = dev;
        ResultDocument doc = make_result_document(a, pseudo, MeasureSpec::vn(p), false,
                                                  fs::path(in).filename().string(), false);
        doc.row_labels = input.row_labels;
        doc.col_labels = input.col_labels;
        write_result_json(doc, out);
    }
    return kExitOk;
}

// ---- generate ------------------------------------------------------------------

int run_generate(const std::string& family, int n, int m, double density, std::uint64_t seed,
                 const std::string& out, std::string sidecar) {
    GenSpec spec;
    spec.family = family_from_name(family);
    spec.n = n;
    spec.m = m;
    spec.density = density;
    spec.seed = seed;
    const GeneratedInstance inst = generate(spec);
    write_matrix_csv(inst.matrix, out);
    if (sidecar.empty()) sidecar = out + ".json";
    write_instance_sidecar(inst, sidecar);
    std::printf("wrote %dx%d %s instance to %s (sidecar %s)\n", inst.matrix.rows(),
                inst.matrix.cols(), family_name(inst.spec.family).c_str(), out.c_str(),
                sidecar.c_str());
    return kExitOk;
}

// ---- emit-model ------------------------------------------------------------------

int run_emit_model(const std::string& in, const std::string& formulation_name,
                   const std::string& measure_name, int p, double eps,
                   const std::string& offsets, bool coordinated, bool symmetry_breaking,
                   const std::vector<std::string>& clusters,
                   const std::vector<std::string>& pins, const std::string& out) {
    const CsvMatrix input = read_matrix_csv(in);
    const Formulation formulation = formulation_from_name(formulation_name);
    MilpModel model;
    switch (formulation) {
        case Formulation::PamL1:
        case Formulation::PamL2: {
            // PAM takes any neighborhood, including custom offset lists.
            const NeighborhoodSpec spec =
                measure_name == "custom"
                    ? NeighborhoodSpec::custom(parse_offsets(offsets))
                    : measure_from_flags(measure_name, p, eps).neighborhood();
            const auto [normalized, info] = normalize(input.matrix);
            (void)info;
            model = build_pam(normalized, {p, spec},
                              formulation == Formulation::PamL1 ? Linearization::L1
                                                                : Linearization::L2,
                              coordinated, symmetry_breaking);
            break;
        }
        case Formulation::Hpm:
            model = build_hpm(input.matrix, measure_from_flags(measure_name, p, eps),
                              coordinated);
            break;
        case Formulation::HpmMoore: model = build_hpm_moore(input.matrix, p); break;
        case Formulation::HpmCross2: model = build_hpm_cross2(input.matrix, p); break;
    }
    const Tailoring tailoring = parse_tailoring(clusters, pins);
    apply_tailoring(model, tailoring);
    emit_lp(model, out);
    std::printf("wrote %s model (%zu variables, %zu constraints) to %s\n",
                formulation_name.c_str(), model.variables().size(),
                model.linear_constraints().size() + model.quadratic_constraints().size(),
                out.c_str());
    return kExitOk;
}

// ---- bench --------------------------------------------------------------------

struct BenchRow {
    int n = 0, m = 0;
    std::string type;
    DeviationReport dev;
    double runtime = 0.0;
    std::string status;
    double gap = 0.0;
    bool solved_to_optimality = false;
};

int run_bench(const std::vector<std::string>& families, const std::vector<int>& sizes,
              int repeats, const std::vector<std::string>& measures, int p, double time_limit,
              const std::string& out_dir, std::uint64_t seed_base, int jobs) {
    fs::create_directories(out_dir);
    struct Task {
        GenSpec spec;
        MeasureSpec measure;
        std::string name;
    };
    std::vector<Task> tasks;
    for (const auto& family_str : families) {
        const Family family = family_from_name(family_str);
        const bool square = family == Family::Easy || family == Family::Sqr ||
                            family == Family::BinSquare;
        const bool binary = family == Family::BinSquare || family == Family::BinNonsquare;
        for (std::size_t si = 0; si < sizes.size(); ++si) {
            for (int rep = 0; rep < repeats; ++rep) {
                GenSpec spec;
                spec.family = family;
                spec.n = sizes[si];
                if (square) {
                    spec.m = spec.n;
                } else {
                    // Nonsquare pairs n < m from consecutive size entries.
                    if (si + 1 >= sizes.size()) continue;
                    spec.m = sizes[si + 1];
                }
                spec.density = binary ? 0.5 : 0.0;
                spec.seed = seed_base + tasks.size();
                for (const auto& measure_str : measures) {
                    Task t;
                    t.spec = spec;
                    t.measure = measure_from_flags(measure_str, p, 0.0);
                    t.name = family_name(family) + "_n" + std::to_string(spec.n) + "_m" +
                             std::to_string(spec.m) + "_s" + std::to_string(rep) + "_" +
                             t.measure.name();
                    tasks.push_back(std::move(t));
                }
            }
        }
    }

    std::vector<BenchRow> rows(tasks.size());
    std::vector<std::string> errors(tasks.size());
    auto run_task = [&](std::size_t idx) {
        const Task& task = tasks[idx];
        BenchRow row;
        row.n = task.spec.n;
        row.m = task.spec.m;
        row.type = family_name(task.spec.family);
        try {
            const GeneratedInstance inst = generate(task.spec);
            SolveLimits limits;
            if (time_limit > 0) limits.time_limit_s = time_limit;
            SeriationResult result;
            if (task.measure.kind == MeasureSpec::Kind::Moore)
                result = solve_moore(inst.matrix, task.measure.p, MooreMode::Alternating, limits);
            else
                result = solve_separable(inst.matrix, task.measure, false, Engine::Auto, limits);
            row.dev = result.deviations;
            row.runtime = result.runtime_seconds;
            row.status = to_string(result.status);
            row.gap = result.gap;
            row.solved_to_optimality = result.status == SolveStatus::Optimal;
            ResultDocument doc = make_result_document(inst.matrix, result, task.measure, false,
                                                      task.name, true);
            write_result_json(doc, (fs::path(out_dir) / (task.name + ".json")).string());
        } catch (const std::exception& e) {
            row.status = "error";
            errors[idx] = e.what();
        }
        rows[idx] = std::move(row);
    };

    if (jobs <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) run_task(i);
    } else {
        std::vector<std::future<void>> pending;
        std::size_t next = 0;
        while (next < tasks.size() || !pending.empty()) {
            while (static_cast<int>(pending.size()) < jobs && next < tasks.size())
                pending.push_back(std::async(std::launch::async, run_task, next++));
            pending.front().get();
            pending.erase(pending.begin());
        }
    }

    std::ofstream agg((fs::path(out_dir) / "aggregate.csv").string(), std::ios::binary);
    agg << "n,m,type,dev_n,dev_mo,dev_me,dev_hom,runtime,status,gap\n";
    for (const auto& row : rows) {
        char line[256];
        std::snprintf(line, sizeof(line), "%d,%d,%s,%.6f,%.6f,%.6f,%.6f,%.6f,%s,%.6g\n", row.n,
                      row.m, row.type.c_str(), row.dev.dev_n, row.dev.dev_mo, row.dev.dev_me,
                      row.dev.dev_hom, row.runtime, row.status.c_str(), row.gap);
        agg << line;
    }
    agg.close();

    std::vector<double> solved_times;
    for (const auto& row : rows)
        if (row.solved_to_optimality) solved_times.push_back(row.runtime);
    std::sort(solved_times.begin(), solved_times.end());
    std::ofstream profile((fs::path(out_dir) / "profile.csv").string(), std::ios::binary);
    profile << "time,fraction_solved\n";
    for (std::size_t i = 0; i < solved_times.size(); ++i) {
        char line[64];
        std::snprintf(line, sizeof(line), "%.6f,%.6f\n", solved_times[i],
                      static_cast<double>(i + 1) / static_cast<double>(rows.size()));
        profile << line;
    }
    profile.close();

    int failures = 0;
    for (std::size_t i = 0; i < tasks.size(); ++i)
        if (!errors[i].empty()) {
            ++failures;
            std::fprintf(stderr, "bench: %s failed: %s\n", tasks[i].name.c_str(),
                         errors[i].c_str());
        }
    std::printf("bench: %zu runs, %d failures; aggregate at %s/aggregate.csv\n", tasks.size(),
                failures, out_dir.c_str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact matrix seriation toolkit: stress/ME-optimal row and column orders"};
    app.require_subcommand(1);

    // seriate
    SeriateArgs sa;
    auto* cmd_seriate = app.add_subcommand("seriate", "Reorder a matrix optimally");
    cmd_seriate->add_option("--in", sa.in, "input matrix CSV")->required();
    cmd_seriate->add_option("--measure", sa.measure, "vn|moore|cross2|eps|me (default vn)");
    cmd_seriate->add_option("--p", sa.p, "stress exponent, 1 or 2")->check(CLI::IsMember({1, 2}));
    cmd_seriate->add_option("--eps", sa.eps, "radius for --measure eps");
    cmd_seriate->add_flag("--coordinated", sa.coordinated, "same permutation for rows and columns");
    cmd_seriate->add_option("--engine", sa.engine,
                            "brute|heldkarp|bnb|alternating|milp|auto (default auto: brute while "
                            "the search space is at most 5!*5!, then heldkarp up to 20 nodes, "
                            "then bnb)");
    cmd_seriate->add_option("--time-limit", sa.time_limit, "seconds per solve");
    cmd_seriate->add_option("--node-limit", sa.node_limit, "branch-and-bound node limit");
    cmd_seriate->add_option("--out", sa.out, "result JSON path");
    cmd_seriate->add_option("--heatmap", sa.heatmap, "reordered heatmap path (.svg or .pgm)");
    cmd_seriate->add_option("--heatmap-format", sa.heatmap_format, "svg|pgm (default: by extension)");
    cmd_seriate->add_flag("--timing", sa.timing, "include runtime_seconds in the result JSON");
    cmd_seriate->add_option("--solver-config", sa.solver_config,
                            "external solver config JSON (or SERIATION_SOLVER_CONFIG)");
    cmd_seriate->add_option("--formulation", sa.formulation,
                            "pam-l1|pam-l2|hpm|hpm-moore|hpm-cross2 (milp engine)");
    cmd_seriate->add_flag("--symmetry-breaking", sa.symmetry_breaking,
                          "add the PAM symmetry-breaking constraint");
    cmd_seriate->add_option("--cluster", sa.clusters, "'i,j,...:kappa' (1-based, HPM models)");
    cmd_seriate->add_option("--pin", sa.pins, "'i:pos,pos,...' (1-based, PAM models)");

    // evaluate
    std::string ev_in, ev_perm, ev_out, ev_offsets;
    int ev_p = 1;
    auto* cmd_evaluate = app.add_subcommand("evaluate", "Evaluate all measures on a matrix");
    cmd_evaluate->add_option("--in", ev_in, "input matrix CSV")->required();
    cmd_evaluate->add_option("--perm", ev_perm,
                             "permutation file (result JSON or two lines of 1-based positions)");
    cmd_evaluate->add_option("--p", ev_p, "stress exponent for deviations")
        ->check(CLI::IsMember({1, 2}));
    cmd_evaluate->add_option("--offsets", ev_offsets,
                             "also report stress over a custom neighborhood, 'dr,dc;dr,dc;...'");
    cmd_evaluate->add_option("--out", ev_out, "result JSON path");

    // generate
    std::string g_family, g_out, g_sidecar;
    int g_n = 0, g_m = 0;
    double g_density = 0.0;
    std::uint64_t g_seed = 0;
    auto* cmd_generate = app.add_subcommand("generate", "Generate a synthetic instance");
    cmd_generate->add_option("--family", g_family, "easy|sqr|nsq|bin_square|bin_nonsquare")
        ->required();
    cmd_generate->add_option("--n", g_n, "rows")->required();
    cmd_generate->add_option("--m", g_m, "columns (nonsquare families)");
    cmd_generate->add_option("--density", g_density, "Bernoulli density (binary families)");
    cmd_generate->add_option("--seed", g_seed, "64-bit seed")->required();
    cmd_generate->add_option("--out", g_out, "output CSV")->required();
    cmd_generate->add_option("--sidecar", g_sidecar, "sidecar JSON (default <out>.json)");

    // emit-model
    std::string em_in, em_formulation, em_measure = "vn", em_out, em_offsets;
    int em_p = 1;
    double em_eps = 0.0;
    bool em_coordinated = false, em_symmetry = false;
    std::vector<std::string> em_clusters, em_pins;
    auto* cmd_emit = app.add_subcommand("emit-model", "Write a MILP model as an LP file");
    cmd_emit->add_option("--in", em_in, "input matrix CSV")->required();
    cmd_emit->add_option("--formulation", em_formulation,
                         "pam-l1|pam-l2|hpm|hpm-moore|hpm-cross2")
        ->required();
    cmd_emit->add_option("--measure", em_measure, "vn|moore|cross2|eps|me|custom (PAM only)");
    cmd_emit->add_option("--offsets", em_offsets,
                         "custom neighborhood offsets 'dr,dc;dr,dc;...' for --measure custom");
    cmd_emit->add_option("--p", em_p, "stress exponent")->check(CLI::IsMember({1, 2}));
    cmd_emit->add_option("--eps", em_eps, "radius for --measure eps");
    cmd_emit->add_flag("--coordinated", em_coordinated, "single permutation (square matrices)");
    cmd_emit->add_flag("--symmetry-breaking", em_symmetry, "PAM symmetry breaking");
    cmd_emit->add_option("--cluster", em_clusters, "'i,j,...:kappa'");
    cmd_emit->add_option("--pin", em_pins, "'i:pos,pos,...'");
    cmd_emit->add_option("--out", em_out, "output LP path")->required();

    // render
    std::string r_in, r_out, r_format;
    auto* cmd_render = app.add_subcommand("render", "Render a matrix heatmap");
    cmd_render->add_option("--in", r_in, "input matrix CSV")->required();
    cmd_render->add_option("--out", r_out, "output image path")->required();
    cmd_render->add_option("--format", r_format, "svg|pgm (default: by extension)");

    // bench
    std::vector<std::string> b_families{"easy", "sqr", "nsq", "bin_square", "bin_nonsquare"};
    std::vector<int> b_sizes{10, 15, 20};
    std::vector<std::string> b_measures{"vn", "me"};
    int b_repeats = 5, b_p = 1, b_jobs = 1;
    double b_time_limit = 60.0;
    std::string b_out_dir = "bench_out";
    std::uint64_t b_seed_base = 1;
    auto* cmd_bench = app.add_subcommand("bench", "Generate-and-solve benchmark harness");
    cmd_bench->add_option("--families", b_families, "instance families")->delimiter(',');
    cmd_bench->add_option("--sizes", b_sizes, "sizes (nonsquare pairs use consecutive entries)")
        ->delimiter(',');
    cmd_bench->add_option("--repeats", b_repeats, "seeds per configuration");
    cmd_bench->add_option("--measures", b_measures, "measures to optimize")->delimiter(',');
    cmd_bench->add_option("--p", b_p, "stress exponent")->check(CLI::IsMember({1, 2}));
    cmd_bench->add_option("--time-limit", b_time_limit, "seconds per instance");
    cmd_bench->add_option("--out-dir", b_out_dir, "output directory");
    cmd_bench->add_option("--seed-base", b_seed_base, "base seed");
    cmd_bench->add_option("--jobs", b_jobs, "parallel workers");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*cmd_seriate) return run_seriate(sa);
        if (*cmd_evaluate) return run_evaluate(ev_in, ev_perm, ev_p, ev_offsets, ev_out);
        if (*cmd_generate)
            return run_generate(g_family, g_n, g_m, g_density, g_seed, g_out, g_sidecar);
        if (*cmd_emit)
            return run_emit_model(em_in, em_formulation, em_measure, em_p, em_eps, em_offsets,
                                  em_coordinated, em_symmetry, em_clusters, em_pins, em_out);
        if (*cmd_render) {
            // Values are expected in [0,1] here; out-of-range cells clamp
            // with a warning. Use `seriate --heatmap` for normalized views.
            const CsvMatrix input = read_matrix_csv(r_in);
            render_heatmap(input.matrix, r_out, format_for(r_format, r_out), input.row_labels,
                           input.col_labels);
            return kExitOk;
        }
        if (*cmd_bench)
            return run_bench(b_families, b_sizes, b_repeats, b_measures, b_p, b_time_limit,
                             b_out_dir, b_seed_base, b_jobs);
    } catch (const CLI::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
