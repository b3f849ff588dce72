#include <cmath>
#include <cstdio>
#include <fstream>

#include "seriation/io.hpp"

namespace seriation {

namespace {

// value 1 -> black (0), value 0 -> white (255), linear in between.
int gray_level(double v, bool* clamped) {
    if (v < 0.0) {
        v = 0.0;
        *clamped = true;
    } else if (v > 1.0) {
        v = 1.0;
        *clamped = true;
    }
    return static_cast<int>(std::lround(255.0 * (1.0 - v)));
}

void render_pgm(const DenseMatrix& a, const std::string& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
    file << "P5\n" << a.cols() << ' ' << a.rows() << "\n255\n";
    bool clamped = false;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            file.put(static_cast<char>(gray_level(a(i, j), &clamped)));
    if (clamped) std::fprintf(stderr, "warning: heatmap values clamped to [0,1]\n");
    if (!file) throw std::runtime_error("write failed for '" + path + "'");
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

void render_svg(const DenseMatrix& a, const std::string& path,
                const std::vector<std::string>& row_labels,
                const std::vector<std::string>& col_labels) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
    constexpr int cell = 10;
    const int width = a.cols() * cell, height = a.rows() * cell;
    file << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
         << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    bool clamped = false;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const int g = gray_level(a(i, j), &clamped);
            file << "<rect x=\"" << j * cell << "\" y=\"" << i * cell << "\" width=\"" << cell
                 << "\" height=\"" << cell << "\" fill=\"rgb(" << g << ',' << g << ',' << g
                 << ")\">";
            file << "<title>";
            if (!row_labels.empty() && !col_labels.empty())
                file << xml_escape(row_labels[i]) << " / " << xml_escape(col_labels[j]);
            else
                file << (i + 1) << ',' << (j + 1);
            char buf[48];
            std::snprintf(buf, sizeof(buf), ": %.6g", a(i, j));
            file << buf << "</title></rect>\n";
        }
    file << "</svg>\n";
    if (clamped) std::fprintf(stderr, "warning: heatmap values clamped to [0,1]\n");
    if (!file) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace

void render_heatmap(const DenseMatrix& a, const std::string& path, HeatmapFormat format,
                    const std::vector<std::string>& row_labels,
                    const std::vector<std::string>& col_labels) {
    if (format == HeatmapFormat::Pgm)
        render_pgm(a, path);
    else
        render_svg(a, path, row_labels, col_labels);
}

}  // namespace seriation
