#include "seriation/neighborhood.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "seriation/errors.hpp"

namespace seriation {

bool offset_within_epsilon(int dr, int dc, double eps) {
    if (eps < 0.0 || !std::isfinite(eps)) return false;
    const unsigned __int128 k =
        static_cast<unsigned __int128>(static_cast<long long>(dr) * dr) +
        static_cast<unsigned __int128>(static_cast<long long>(dc) * dc);
    if (k == 0) return true;
    // eps = m * 2^(e-53) exactly, with m a 53-bit integer.
    int e = 0;
    const double frac = std::frexp(eps, &e);
    const auto m = static_cast<unsigned long long>(std::ldexp(frac, 53));
    const unsigned __int128 m2 = static_cast<unsigned __int128>(m) * m;  // eps^2 = m2 * 2^(2e-106)
    const int shift = 106 - 2 * e;
    // Compare k <= m2 * 2^(-shift) without rounding.
    if (shift >= 0) {
        if (shift >= 128) return false;  // eps < 1 ulp territory, k >= 1 cannot fit
        // k * 2^shift may overflow 128 bits only when k is already far too big.
        if (shift > 0 && k > (static_cast<unsigned __int128>(1) << (127 - shift))) return false;
        return (k << shift) <= m2;
    }
    const int left = -shift;
    if (left >= 128) return true;  // eps^2 is astronomically large
    return k <= (m2 << left) || (m2 >> (128 - left)) != 0;
}

namespace {

std::vector<CellOffset> epsilon_offsets(double eps) {
    std::vector<CellOffset> offs;
    const int reach = static_cast<int>(std::floor(eps)) + 1;
    for (int dr = -reach; dr <= reach; ++dr)
        for (int dc = -reach; dc <= reach; ++dc) {
            if (dr == 0 && dc == 0) continue;
            if (offset_within_epsilon(dr, dc, eps)) offs.emplace_back(dr, dc);
        }
    return offs;
}

std::vector<CellOffset> cross2_offsets() {
    return {{-2, 0}, {-1, 0}, {0, -2}, {0, -1}, {0, 1}, {0, 2}, {1, 0}, {2, 0}};
}

}  // namespace

NeighborhoodSpec::NeighborhoodSpec(Kind kind, double eps) : kind_(kind), eps_(eps) {
    switch (kind) {
        case Kind::VonNeumann:
        case Kind::Moore:
        case Kind::Epsilon:
            offsets_ = epsilon_offsets(eps_);
            break;
        case Kind::Cross2:
            offsets_ = cross2_offsets();
            break;
        case Kind::Custom:
            break;
    }
    std::sort(offsets_.begin(), offsets_.end());
}

NeighborhoodSpec NeighborhoodSpec::epsilon(double eps) {
    if (!(eps > 0.0) || !std::isfinite(eps))
        throw std::invalid_argument("NeighborhoodSpec: epsilon must be positive and finite");
    return NeighborhoodSpec(Kind::Epsilon, eps);
}

NeighborhoodSpec NeighborhoodSpec::custom(std::vector<CellOffset> offsets) {
    NeighborhoodSpec spec(Kind::Custom, 0.0);
    std::sort(offsets.begin(), offsets.end());
    offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());
    for (const auto& [dr, dc] : offsets)
        if (dr == 0 && dc == 0)
            throw std::invalid_argument("NeighborhoodSpec: custom offsets must not contain (0,0)");
    spec.offsets_ = std::move(offsets);
    return spec;
}

std::string NeighborhoodSpec::name() const {
    switch (kind_) {
        case Kind::VonNeumann: return "von_neumann";
        case Kind::Moore: return "moore";
        case Kind::Cross2: return "cross2";
        case Kind::Epsilon: return "epsilon(" + std::to_string(eps_) + ")";
        case Kind::Custom: return "custom";
    }
    return "?";
}

std::vector<Cell> neighbors(const NeighborhoodSpec& spec, Cell cell, int n, int m) {
    const auto [r, c] = cell;
    if (r < 0 || r >= n || c < 0 || c >= m)
        throw std::invalid_argument("neighbors: cell (" + std::to_string(r) + "," +
                                    std::to_string(c) + ") outside " + std::to_string(n) + "x" +
                                    std::to_string(m) + " grid");
    std::vector<Cell> out;
    out.reserve(spec.offsets().size());
    for (const auto& [dr, dc] : spec.offsets()) {
        const int rr = r + dr, cc = c + dc;
        if (rr >= 0 && rr < n && cc >= 0 && cc < m) out.emplace_back(rr, cc);
    }
    return out;  // offsets are sorted, so cells come out sorted
}

std::vector<CellOffset> parse_offsets(const std::string& text) {
    std::vector<CellOffset> offs;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find(';', pos);
        if (end == std::string::npos) end = text.size();
        const std::string item = text.substr(pos, end - pos);
        const std::size_t comma = item.find(',');
        if (comma == std::string::npos)
            throw ParseError("offset list: expected 'dr,dc', got '" + item + "'");
        try {
            offs.emplace_back(std::stoi(item.substr(0, comma)), std::stoi(item.substr(comma + 1)));
        } catch (const std::exception&) {
            throw ParseError("offset list: non-integer offset in '" + item + "'");
        }
        pos = end + 1;
    }
    return offs;
}

}  // namespace seriation
