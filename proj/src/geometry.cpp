#include "girg/geometry.hpp"

#include <cmath>

#include "girg/errors.hpp"

namespace girg {

namespace {

void check_dim(int d) {
    if (d < 1 || d > kMaxDim) throw UsageError("dimension must be in [1, 8]");
}

void check_level(int level, int d) {
    if (level < 0) throw UsageError("cell level must be >= 0");
    if (level * d > 62) throw UsageError("cell level too deep for this dimension");
}

} // namespace

PointSet::PointSet(int d, std::vector<double> flat) : d_(d), data_(std::move(flat)) {
    check_dim(d);
    if (data_.size() % d_ != 0) throw UsageError("flat coordinate array not a multiple of dim");
}

double torus_distance(std::span<const double> x, std::span<const double> y) {
    if (x.empty() || x.size() != y.size())
        throw UsageError("torus_distance: points must share a positive dimension");
    return detail::torus_distance_raw(x.data(), y.data(), static_cast<int>(x.size()));
}

CellId cell_of_point(std::span<const double> x, int level) {
    const int d = static_cast<int>(x.size());
    check_dim(d);
    check_level(level, d);
    for (double v : x)
        if (!(v >= 0.0) || !(v <= 1.0)) throw UsageError("torus coordinate outside [0, 1]");
    CellId c;
    c.level = level;
    c.dim = d;
    for (int k = 0; k < d; ++k) c.idx[k] = detail::axis_index(x[k], level);
    return c;
}

double ceil_cell_volume(double x, int d) {
    check_dim(d);
    if (!(x > 0.0) || x > 1.0) throw UsageError("ceil_cell_volume: argument must be in (0, 1]");
    return std::ldexp(1.0, -base_level_for(x, d) * d);
}

int base_level_for(double nu, int d) {
    check_dim(d);
    if (!(nu > 0.0) || nu > 1.0) throw UsageError("base_level_for: argument must be in (0, 1]");
    int level = 0;
    while (std::ldexp(1.0, -(level + 1) * d) >= nu) ++level;
    return level;
}

double cell_volume(const CellId& c) {
    return std::ldexp(1.0, -c.level * c.dim);
}

CellId parent(const CellId& c) {
    if (c.level < 1) throw UsageError("root cell has no parent");
    CellId p;
    p.level = c.level - 1;
    p.dim = c.dim;
    for (int k = 0; k < c.dim; ++k) p.idx[k] = c.idx[k] >> 1;
    return p;
}

double cell_distance(const CellId& a, const CellId& b) {
    if (a.level != b.level || a.dim != b.dim)
        throw UsageError("cell_distance: cells must share level and dimension");
    check_dim(a.dim);
    check_level(a.level, a.dim);
    const std::uint32_t m = 1u << a.level;
    const double side = std::ldexp(1.0, -a.level);
    double best = 0.0;
    for (int k = 0; k < a.dim; ++k) {
        std::uint32_t delta = a.idx[k] >= b.idx[k] ? a.idx[k] - b.idx[k] : b.idx[k] - a.idx[k];
        if (m - delta < delta) delta = m - delta;
        if (delta > 1) {
            const double gap = (delta - 1) * side;
            if (gap > best) best = gap;
        }
    }
    return best;
}

namespace detail {

namespace {

// Insert one zero between consecutive bits (supports 32 input bits).
inline std::uint64_t spread2(std::uint64_t v) {
    v &= 0xffffffffull;
    v = (v | (v << 16)) & 0x0000ffff0000ffffull;
    v = (v | (v << 8)) & 0x00ff00ff00ff00ffull;
    v = (v | (v << 4)) & 0x0f0f0f0f0f0f0f0full;
    v = (v | (v << 2)) & 0x3333333333333333ull;
    v = (v | (v << 1)) & 0x5555555555555555ull;
    return v;
}

inline std::uint64_t compact2(std::uint64_t v) {
    v &= 0x5555555555555555ull;
    v = (v | (v >> 1)) & 0x3333333333333333ull;
    v = (v | (v >> 2)) & 0x0f0f0f0f0f0f0f0full;
    v = (v | (v >> 4)) & 0x00ff00ff00ff00ffull;
    v = (v | (v >> 8)) & 0x0000ffff0000ffffull;
    v = (v | (v >> 16)) & 0x00000000ffffffffull;
    return v;
}

// Insert two zeros between consecutive bits (supports 21 input bits).
inline std::uint64_t spread3(std::uint64_t v) {
    v &= 0x1fffffull;
    v = (v | (v << 32)) & 0x001f00000000ffffull;
    v = (v | (v << 16)) & 0x001f0000ff0000ffull;
    v = (v | (v << 8)) & 0x100f00f00f00f00full;
    v = (v | (v << 4)) & 0x10c30c30c30c30c3ull;
    v = (v | (v << 2)) & 0x1249249249249249ull;
    return v;
}

inline std::uint64_t compact3(std::uint64_t v) {
    v &= 0x1249249249249249ull;
    v = (v | (v >> 2)) & 0x10c30c30c30c30c3ull;
    v = (v | (v >> 4)) & 0x100f00f00f00f00full;
    v = (v | (v >> 8)) & 0x001f0000ff0000ffull;
    v = (v | (v >> 16)) & 0x001f00000000ffffull;
    v = (v | (v >> 32)) & 0x00000000001fffffull;
    return v;
}

} // namespace

std::uint64_t interleave(const std::uint32_t* idx, int d, int level) {
    switch (d) {
    case 1:
        return idx[0];
    case 2:
        return spread2(idx[0]) | (spread2(idx[1]) << 1);
    case 3:
        return spread3(idx[0]) | (spread3(idx[1]) << 1) | (spread3(idx[2]) << 2);
    default: {
        std::uint64_t r = 0;
        for (int b = 0; b < level; ++b)
            for (int k = 0; k < d; ++k)
                r |= static_cast<std::uint64_t>((idx[k] >> b) & 1u) << (b * d + k);
        return r;
    }
    }
}

void deinterleave(std::uint64_t rank, int d, int level, std::uint32_t* out) {
    switch (d) {
    case 1:
        out[0] = static_cast<std::uint32_t>(rank);
        return;
    case 2:
        out[0] = static_cast<std::uint32_t>(compact2(rank));
        out[1] = static_cast<std::uint32_t>(compact2(rank >> 1));
        return;
    case 3:
        out[0] = static_cast<std::uint32_t>(compact3(rank));
        out[1] = static_cast<std::uint32_t>(compact3(rank >> 1));
        out[2] = static_cast<std::uint32_t>(compact3(rank >> 2));
        return;
    default:
        for (int k = 0; k < d; ++k) out[k] = 0;
        for (int b = 0; b < level; ++b)
            for (int k = 0; k < d; ++k)
                out[k] |= static_cast<std::uint32_t>((rank >> (b * d + k)) & 1u) << b;
    }
}

} // namespace detail

std::uint64_t geometric_rank(const CellId& c) {
    check_dim(c.dim);
    check_level(c.level, c.dim);
    return detail::interleave(c.idx.data(), c.dim, c.level);
}

CellId cell_at_rank(int level, int d, std::uint64_t rank) {
    check_dim(d);
    check_level(level, d);
    if (rank >= (1ull << (level * d))) throw UsageError("cell rank out of range for level");
    CellId c;
    c.level = level;
    c.dim = d;
    detail::deinterleave(rank, d, level, c.idx.data());
    return c;
}

std::optional<CellId> successor(const CellId& c) {
    const std::uint64_t rank = geometric_rank(c);
    if (rank + 1 >= (1ull << (c.level * c.dim))) return std::nullopt;
    return cell_at_rank(c.level, c.dim, rank + 1);
}

std::vector<CellId> geometric_order(int level, int d) {
    check_dim(d);
    check_level(level, d);
    if (level * d > 26) throw UsageError("geometric_order: level too large to materialize");
    std::vector<CellId> cells;
    cells.reserve(1ull << (level * d));
    std::optional<CellId> cur = cell_at_rank(level, d, 0);
    while (cur) {
        cells.push_back(*cur);
        cur = successor(*cur);
    }
    return cells;
}

} // namespace girg
