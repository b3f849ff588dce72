#include "seriation/measures.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "seriation/errors.hpp"

namespace seriation {

namespace {

inline double pow_p(double d, int p) {
    d = std::fabs(d);
    return p == 1 ? d : d * d;
}

void check_p(int p) {
    if (p != 1 && p != 2) throw std::invalid_argument("StressParams: p must be 1 or 2");
}

}  // namespace

double cell_stress(const DenseMatrix& a, const StressParams& params, Cell cell) {
    check_p(params.p);
    const double v = a.at(cell.first, cell.second);
    double sum = 0.0;
    for (const auto& [r, c] : neighbors(params.spec, cell, a.rows(), a.cols()))
        sum += pow_p(v - a(r, c), params.p);
    return sum;
}

double total_stress(const DenseMatrix& a, const StressParams& params) {
    check_p(params.p);
    double sum = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const double v = a(i, j);
            for (const auto& [dr, dc] : params.spec.offsets()) {
                const int r = i + dr, c = j + dc;
                if (r >= 0 && r < a.rows() && c >= 0 && c < a.cols())
                    sum += pow_p(v - a(r, c), params.p);
            }
        }
    return sum;
}

double homogeneity(const DenseMatrix& a, const StressParams& params) {
    check_p(params.p);
    static bool warned = false;
    for (double v : a.entries())
        if (v < 0.0 || v > 1.0) {
            if (!warned) {
                std::fprintf(stderr,
                             "warning: homogeneity expects entries in [0,1]; "
                             "normalize the matrix first\n");
                warned = true;
            }
            break;
        }
    double sum = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const double v = a(i, j);
            double cell_sum = 0.0;
            int count = 0;
            for (const auto& [dr, dc] : params.spec.offsets()) {
                const int r = i + dr, c = j + dc;
                if (r >= 0 && r < a.rows() && c >= 0 && c < a.cols()) {
                    cell_sum += pow_p(v - a(r, c), params.p);
                    ++count;
                }
            }
            if (count > 0) sum += cell_sum / count;  // empty neighborhoods contribute 0
        }
    return sum / (static_cast<double>(a.rows()) * a.cols());
}

double effectiveness(const DenseMatrix& a) {
    double horizontal = 0.0, vertical = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j + 1 < a.cols(); ++j) horizontal += a(i, j) * a(i, j + 1);
    for (int i = 0; i + 1 < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) vertical += a(i, j) * a(i + 1, j);
    return horizontal + vertical;
}

namespace {

double ratio_or_zero(double delta, double denom) { return denom == 0.0 ? 0.0 : delta / denom; }

}  // namespace

DeviationReport deviation_report(const DenseMatrix& original, const DenseMatrix& reordered,
                                 int p) {
    if (!original.same_shape(reordered))
        throw std::invalid_argument("deviation_report: dimension mismatch");
    const StressParams vn{p, NeighborhoodSpec::von_neumann()};
    const StressParams mo{p, NeighborhoodSpec::moore()};
    DeviationReport dev;
    const double n0 = total_stress(original, vn), n1 = total_stress(reordered, vn);
    const double m0 = total_stress(original, mo), m1 = total_stress(reordered, mo);
    const double e0 = effectiveness(original), e1 = effectiveness(reordered);
    // Same affine normalization for both matrices (a reordering preserves the
    // entry multiset, but be safe for arbitrary pairs).
    const auto [norm_orig, info] = normalize(original);
    DenseMatrix norm_new = reordered;
    if (info.scale > 0.0)
        for (int i = 0; i < norm_new.rows(); ++i)
            for (int j = 0; j < norm_new.cols(); ++j)
                norm_new(i, j) = (norm_new(i, j) - info.a_min) / info.scale;
    else
        norm_new = DenseMatrix(reordered.rows(), reordered.cols(), 0.0);
    const double h0 = homogeneity(norm_orig, vn), h1 = homogeneity(norm_new, vn);
    dev.dev_n = ratio_or_zero(n0 - n1, n0);
    dev.dev_mo = ratio_or_zero(m0 - m1, m0);
    dev.dev_me = ratio_or_zero(e1 - e0, e0);
    dev.dev_hom = ratio_or_zero(h0 - h1, h0);
    return dev;
}

MeasureReport measure_report(const DenseMatrix& a) {
    MeasureReport r;
    r.vn_p1 = total_stress(a, {1, NeighborhoodSpec::von_neumann()});
    r.vn_p2 = total_stress(a, {2, NeighborhoodSpec::von_neumann()});
    r.moore_p1 = total_stress(a, {1, NeighborhoodSpec::moore()});
    r.moore_p2 = total_stress(a, {2, NeighborhoodSpec::moore()});
    r.me = effectiveness(a);
    r.homogeneity = homogeneity(normalize(a).first, {1, NeighborhoodSpec::von_neumann()});
    return r;
}

NeighborhoodSpec MeasureSpec::neighborhood() const {
    switch (kind) {
        case Kind::VN: return NeighborhoodSpec::von_neumann();
        case Kind::Moore: return NeighborhoodSpec::moore();
        case Kind::Cross2: return NeighborhoodSpec::cross2();
        case Kind::Eps: return NeighborhoodSpec::epsilon(eps);
        case Kind::ME: break;
    }
    throw std::invalid_argument("MeasureSpec: ME has no neighborhood");
}

double MeasureSpec::evaluate(const DenseMatrix& a) const {
    if (kind == Kind::ME) return effectiveness(a);
    return total_stress(a, {p, neighborhood()});
}

std::string MeasureSpec::name() const {
    switch (kind) {
        case Kind::VN: return "vn_p" + std::to_string(p);
        case Kind::Moore: return "moore_p" + std::to_string(p);
        case Kind::Cross2: return "cross2_p" + std::to_string(p);
        case Kind::Eps: return "eps" + std::to_string(eps) + "_p" + std::to_string(p);
        case Kind::ME: return "me";
    }
    return "?";
}

MeasureSpec MeasureSpec::from_name(const std::string& name) {
    if (name == "me") return me();
    const auto split = name.rfind("_p");
    if (split != std::string::npos && split + 2 < name.size()) {
        const std::string stem = name.substr(0, split);
        const int p = name[split + 2] - '0';
        if (p == 1 || p == 2) {
            if (stem == "vn") return vn(p);
            if (stem == "moore") return moore(p);
            if (stem == "cross2") return cross2(p);
            if (stem.rfind("eps", 0) == 0) {
                try {
                    return eps_ball(std::stod(stem.substr(3)), p);
                } catch (const std::exception&) {
                }
            }
        }
    }
    throw ParseError("unknown measure name '" + name + "'");
}

}  // namespace seriation
