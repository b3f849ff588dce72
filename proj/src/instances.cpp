#include "seriation/instances.hpp"

#include <cmath>
#include <stdexcept>

#include "seriation/rng.hpp"

namespace seriation {

Family family_from_name(const std::string& name) {
    if (name == "easy" || name == "eas") return Family::Easy;
    if (name == "sqr") return Family::Sqr;
    if (name == "nsq") return Family::Nsq;
    if (name == "bin_square" || name == "bin") return Family::BinSquare;
    if (name == "bin_nonsquare") return Family::BinNonsquare;
    throw std::invalid_argument("unknown instance family '" + name + "'");
}

std::string family_name(Family family) {
    switch (family) {
        case Family::Easy: return "easy";
        case Family::Sqr: return "sqr";
        case Family::Nsq: return "nsq";
        case Family::BinSquare: return "bin_square";
        case Family::BinNonsquare: return "bin_nonsquare";
    }
    return "?";
}

void GenSpec::validate() const {
    const bool binary = family == Family::BinSquare || family == Family::BinNonsquare;
    const bool square = family == Family::Easy || family == Family::Sqr ||
                        family == Family::BinSquare;
    if (n < 1) throw std::invalid_argument("GenSpec: n must be positive");
    if (square && m != n && m != 0)
        throw std::invalid_argument("GenSpec: " + family_name(family) + " instances are square");
    if (!square && !(n < m))
        throw std::invalid_argument("GenSpec: " + family_name(family) + " instances need n < m");
    if (binary) {
        if (!(density > 0.0 && density < 1.0))
            throw std::invalid_argument("GenSpec: binary density must lie in (0,1)");
    } else if (density != 0.0) {
        throw std::invalid_argument("GenSpec: density applies to binary families only");
    }
}

GeneratedInstance generate(const GenSpec& spec) {
    spec.validate();
    const int n = spec.n;
    const int m = (spec.family == Family::Easy || spec.family == Family::Sqr ||
                   spec.family == Family::BinSquare)
                      ? spec.n
                      : spec.m;
    Rng rng(spec.seed);
    GeneratedInstance inst;
    inst.spec = spec;
    inst.spec.m = m;

    switch (spec.family) {
        case Family::Easy: {
            std::vector<double> pts(n);
            for (double& p : pts) p = 100.0 * rng.next_double();
            DenseMatrix a(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) a(i, j) = std::fabs(pts[i] - pts[j]);
            inst.matrix = std::move(a);
            inst.row_points = pts;
            inst.col_points = std::move(pts);
            break;
        }
        case Family::Sqr: {
            std::vector<double> pts(2 * n);  // x,y interleaved
            for (double& p : pts) p = 100.0 * rng.next_double();
            DenseMatrix a(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    a(i, j) = std::hypot(pts[2 * i] - pts[2 * j], pts[2 * i + 1] - pts[2 * j + 1]);
            inst.matrix = std::move(a);
            inst.row_points = pts;
            inst.col_points = std::move(pts);
            break;
        }
        case Family::Nsq: {
            std::vector<double> rows(2 * n), cols(2 * m);
            for (double& p : rows) p = 100.0 * rng.next_double();
            for (double& p : cols) p = 100.0 * rng.next_double();
            DenseMatrix a(n, m);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < m; ++j)
                    a(i, j) =
                        std::hypot(rows[2 * i] - cols[2 * j], rows[2 * i + 1] - cols[2 * j + 1]);
            inst.matrix = std::move(a);
            inst.row_points = std::move(rows);
            inst.col_points = std::move(cols);
            break;
        }
        case Family::BinSquare:
        case Family::BinNonsquare: {
            DenseMatrix a(n, m);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < m; ++j)
                    a(i, j) = rng.next_double() < spec.density ? 1.0 : 0.0;
            inst.matrix = std::move(a);
            break;
        }
    }
    return inst;
}

}  // namespace seriation
