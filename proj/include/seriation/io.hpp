#pragma once

#include <optional>
#include <string>
#include <vector>

#include "seriation/instances.hpp"
#include "seriation/matrix.hpp"
#include "seriation/measures.hpp"
#include "seriation/solver.hpp"

namespace seriation {

struct CsvMatrix {
    DenseMatrix matrix = DenseMatrix(1, 1);
    std::vector<std::string> row_labels;  // empty when the file has none
    std::vector<std::string> col_labels;
};

// Rectangular comma-separated numeric grid; a header row and a label column
// are auto-detected by a non-numeric first cell. Parse errors name the line.
CsvMatrix read_matrix_csv(const std::string& path);

// Values use shortest round-trip formatting; labels are written when given.
void write_matrix_csv(const DenseMatrix& a, const std::string& path,
                      const std::vector<std::string>& row_labels = {},
                      const std::vector<std::string>& col_labels = {});

// Everything a solver run reports, as serialized to result JSON (schema "1").
// Permutations are 1-based in the file.
struct ResultDocument {
    std::string schema_version = "1";
    std::string instance;
    int n_rows = 1;
    int n_cols = 1;
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    std::string measure;
    bool coordinated = false;
    std::string solver;
    std::string status;
    double gap = 0.0;
    std::optional<double> runtime_seconds;  // absent unless timing was requested
    std::vector<int> row_permutation;
    std::vector<int> col_permutation;
    double objective = 0.0;
    double bound = 0.0;
    MeasureReport reordered_measures;
    MeasureReport original_measures;
    DeviationReport deviations;
};

ResultDocument make_result_document(const DenseMatrix& original, const SeriationResult& result,
                                    const MeasureSpec& measure, bool coordinated,
                                    const std::string& instance_name, bool include_runtime);

// Stable key order, floats with 17 significant digits.
void write_result_json(const ResultDocument& doc, const std::string& path);
std::string result_json_string(const ResultDocument& doc);

ResultDocument load_result_json(const std::string& path);

// Recomputes objective and measures from the original matrix and the stored
// permutations; throws IntegrityError when the document does not reproduce.
void validate_result_document(const ResultDocument& doc, const DenseMatrix& original);

enum class HeatmapFormat { Svg, Pgm };

// Grayscale heatmap, value 1 = black, 0 = white; values outside [0,1] are
// clamped with a warning. SVG gets one rect per cell (with label tooltips);
// PGM is binary P5 with one pixel per cell.
void render_heatmap(const DenseMatrix& a, const std::string& path, HeatmapFormat format,
                    const std::vector<std::string>& row_labels = {},
                    const std::vector<std::string>& col_labels = {});

// Instance sidecar: spec, generator constants, and the generating points.
void write_instance_sidecar(const GeneratedInstance& inst, const std::string& path);
GeneratedInstance load_instance_sidecar(const std::string& path);

}  // namespace seriation
