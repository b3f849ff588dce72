#include <charconv>
#include <fstream>
#include <optional>
#include <string>

#include "seriation/errors.hpp"
#include "seriation/io.hpp"

namespace seriation {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t pos = 0;
    for (;;) {
        std::size_t comma = line.find(',', pos);
        if (comma == std::string::npos) {
            fields.push_back(trim(line.substr(pos)));
            break;
        }
        fields.push_back(trim(line.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return fields;
}

std::optional<double> parse_number(const std::string& text) {
    if (text.empty()) return std::nullopt;
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) return std::nullopt;
    return value;
}

std::string shortest(double v) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

}  // namespace

CsvMatrix read_matrix_csv(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw ParseError("cannot open CSV file '" + path + "'");
    std::vector<std::vector<std::string>> grid;
    std::string line;
    int lineno = 0;
    while (std::getline(file, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        grid.push_back(split_csv_line(line));
    }
    if (grid.empty()) throw ParseError("CSV file '" + path + "' is empty");

    // A non-numeric first cell of the first row signals a header; a
    // non-numeric first cell of the first data row signals a label column.
    bool has_header = !parse_number(grid[0][0]).has_value() && grid.size() > 1;
    std::size_t first_data = has_header ? 1 : 0;
    bool has_labels = !parse_number(grid[first_data][0]).has_value();
    if (!has_header && has_labels && grid[0].size() > 1 && !parse_number(grid[0][1]).has_value() &&
        grid.size() > 1 && parse_number(grid[1][1]).has_value()) {
        has_header = true;  // header made of labels only, e.g. ",c1,c2"
        first_data = 1;
        has_labels = !parse_number(grid[1][0]).has_value();
    }

    CsvMatrix out;
    const std::size_t col_offset = has_labels ? 1 : 0;
    const std::size_t n_rows = grid.size() - first_data;
    if (grid[first_data].size() <= col_offset)
        throw ParseError(path + ": no numeric columns found");
    const std::size_t n_cols = grid[first_data].size() - col_offset;

    if (has_header) {
        const auto& header = grid[0];
        for (std::size_t j = col_offset; j < header.size(); ++j) out.col_labels.push_back(header[j]);
        if (out.col_labels.size() != n_cols) out.col_labels.clear();
    }
    std::vector<double> entries;
    entries.reserve(n_rows * n_cols);
    for (std::size_t r = 0; r < n_rows; ++r) {
        const auto& row = grid[first_data + r];
        if (row.size() != n_cols + col_offset)
            throw ParseError(path + " line " + std::to_string(first_data + r + 1) + ": expected " +
                             std::to_string(n_cols + col_offset) + " fields, got " +
                             std::to_string(row.size()));
        if (has_labels) out.row_labels.push_back(row[0]);
        for (std::size_t j = col_offset; j < row.size(); ++j) {
            const auto value = parse_number(row[j]);
            if (!value)
                throw ParseError(path + " line " + std::to_string(first_data + r + 1) +
                                 ": non-numeric cell '" + row[j] + "'");
            entries.push_back(*value);
        }
    }
    out.matrix = DenseMatrix(static_cast<int>(n_rows), static_cast<int>(n_cols), std::move(entries));
    return out;
}

void write_matrix_csv(const DenseMatrix& a, const std::string& path,
                      const std::vector<std::string>& row_labels,
                      const std::vector<std::string>& col_labels) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
    const bool labels = !row_labels.empty();
    if (!col_labels.empty()) {
        if (labels) file << "id,";
        for (int j = 0; j < a.cols(); ++j)
            file << col_labels[j] << (j + 1 < a.cols() ? "," : "\n");
    }
    for (int i = 0; i < a.rows(); ++i) {
        if (labels) file << row_labels[i] << ',';
        for (int j = 0; j < a.cols(); ++j) file << shortest(a(i, j)) << (j + 1 < a.cols() ? "," : "\n");
    }
    if (!file) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace seriation
