#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "seriation/errors.hpp"
#include "seriation/io.hpp"
#include "seriation/rng.hpp"
#include "seriation/solver.hpp"

using namespace seriation;
namespace fs = std::filesystem;

namespace {

fs::path test_dir() {
    const fs::path dir = fs::temp_directory_path() / "seriation_test_io";
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("csv parsing: plain, header, labels, errors") {
    const fs::path dir = test_dir();
    write_file(dir / "plain.csv", "0,1\n1,0\n");
    const CsvMatrix plain = read_matrix_csv((dir / "plain.csv").string());
    CHECK(plain.matrix.rows() == 2);
    CHECK(plain.matrix.entries() == std::vector<double>{0, 1, 1, 0});
    CHECK(plain.row_labels.empty());

    write_file(dir / "labeled.csv", "id,alpha,beta\nrow1,0.5,1\nrow2,2,3.25\n");
    const CsvMatrix labeled = read_matrix_csv((dir / "labeled.csv").string());
    CHECK(labeled.matrix.rows() == 2);
    CHECK(labeled.matrix.cols() == 2);
    CHECK(labeled.col_labels == std::vector<std::string>{"alpha", "beta"});
    CHECK(labeled.row_labels == std::vector<std::string>{"row1", "row2"});
    CHECK(labeled.matrix(1, 1) == 3.25);

    write_file(dir / "ragged.csv", "1,2\n3\n");
    CHECK_THROWS_WITH_AS(read_matrix_csv((dir / "ragged.csv").string()),
                         doctest::Contains("line 2"), ParseError);
    write_file(dir / "alpha.csv", "1,2\n3,x\n");
    CHECK_THROWS_AS(read_matrix_csv((dir / "alpha.csv").string()), ParseError);
    write_file(dir / "empty.csv", "");
    CHECK_THROWS_AS(read_matrix_csv((dir / "empty.csv").string()), ParseError);
}

TEST_CASE("csv write/read round-trips values and labels") {
    const fs::path dir = test_dir();
    Rng rng(601);
    DenseMatrix a(3, 4);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 4; ++j) a(i, j) = rng.next_double() * 100.0 - 50.0;
    const std::string path = (dir / "roundtrip.csv").string();
    write_matrix_csv(a, path, {"r1", "r2", "r3"}, {"c1", "c2", "c3", "c4"});
    const CsvMatrix back = read_matrix_csv(path);
    CHECK(back.matrix.entries() == a.entries());  // shortest repr round-trips exactly
    CHECK(back.row_labels == std::vector<std::string>{"r1", "r2", "r3"});
    CHECK(back.col_labels == std::vector<std::string>{"c1", "c2", "c3", "c4"});
    // Byte-stable modulo float formatting: a second write is identical.
    const std::string copy = (dir / "roundtrip2.csv").string();
    write_matrix_csv(back.matrix, copy, back.row_labels, back.col_labels);
    CHECK(read_file(path) == read_file(copy));
}

TEST_CASE("result documents round-trip and self-validate") {
    const fs::path dir = test_dir();
    Rng rng(607);
    DenseMatrix a(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) a(i, j) = rng.next_double();
    const SeriationResult res = brute_force(a, MeasureSpec::vn(1), false);
    ResultDocument doc = make_result_document(a, res, MeasureSpec::vn(1), false, "unit", false);
    const std::string path = (dir / "result.json").string();
    write_result_json(doc, path);

    const ResultDocument back = load_result_json(path);
    CHECK(back.schema_version == "1");
    CHECK(back.measure == "vn_p1");
    CHECK(back.objective == doc.objective);
    CHECK(back.row_permutation.size() == 4);
    for (int v : back.row_permutation) {
        CHECK(v >= 1);
        CHECK(v <= 4);
    }
    CHECK_FALSE(back.runtime_seconds.has_value());
    CHECK_NOTHROW(validate_result_document(back, a));

    // Tampering with a stored measure is caught on validation.
    ResultDocument tampered = back;
    tampered.reordered_measures.me += 0.5;
    CHECK_THROWS_AS(validate_result_document(tampered, a), IntegrityError);

    // Identical documents serialize to identical bytes.
    const std::string again = (dir / "result2.json").string();
    write_result_json(doc, again);
    CHECK(read_file(path) == read_file(again));
}

TEST_CASE("heatmap rendering") {
    const fs::path dir = test_dir();
    const std::string ones_path = (dir / "ones.pgm").string();
    render_heatmap(DenseMatrix(2, 3, 1.0), ones_path, HeatmapFormat::Pgm);
    const std::string ones = read_file(ones_path);
    CHECK(ones.substr(0, 3) == "P5\n");
    const std::string pixels = ones.substr(ones.find("255\n") + 4);
    CHECK(pixels.size() == 6);
    for (char c : pixels) CHECK(c == '\0');  // value 1 renders black

    const std::string chess_path = (dir / "chess.pgm").string();
    render_heatmap(DenseMatrix(2, 2, {0, 1, 1, 0}), chess_path, HeatmapFormat::Pgm);
    const std::string chess = read_file(chess_path);
    const std::string body = chess.substr(chess.find("255\n") + 4);
    CHECK(body.size() == 4);
    CHECK(static_cast<unsigned char>(body[0]) == 255);
    CHECK(static_cast<unsigned char>(body[1]) == 0);
    CHECK(static_cast<unsigned char>(body[2]) == 0);
    CHECK(static_cast<unsigned char>(body[3]) == 255);

    // Deterministic bytes.
    const std::string chess2_path = (dir / "chess2.pgm").string();
    render_heatmap(DenseMatrix(2, 2, {0, 1, 1, 0}), chess2_path, HeatmapFormat::Pgm);
    CHECK(read_file(chess_path) == read_file(chess2_path));

    const std::string svg_path = (dir / "map.svg").string();
    render_heatmap(DenseMatrix(2, 2, {0, 1, 1, 0}), svg_path, HeatmapFormat::Svg, {"a", "b"},
                   {"x", "y"});
    const std::string svg = read_file(svg_path);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("rgb(0,0,0)") != std::string::npos);
    CHECK(svg.find("rgb(255,255,255)") != std::string::npos);
    CHECK(svg.find("<title>a / y") != std::string::npos);
}

TEST_CASE("instance sidecars regenerate the instance") {
    const fs::path dir = test_dir();
    GenSpec spec;
    spec.family = Family::Sqr;
    spec.n = 6;
    spec.seed = 31337;
    const GeneratedInstance inst = generate(spec);
    const std::string path = (dir / "inst.json").string();
    write_instance_sidecar(inst, path);
    const GeneratedInstance back = load_instance_sidecar(path);
    CHECK(back.matrix.entries() == inst.matrix.entries());
    CHECK(back.row_points == inst.row_points);
}
