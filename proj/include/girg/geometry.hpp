#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "girg/rng.hpp"

namespace girg {

inline constexpr int kMaxDim = 8;

// A dyadic cube of the unit torus: at `level` l each axis is split into 2^l
// half-open intervals, so the cell covers [idx_k/2^l, (idx_k+1)/2^l) per axis.
struct CellId {
    int level = 0;
    int dim = 1;
    std::array<std::uint32_t, kMaxDim> idx{};

    bool operator==(const CellId&) const = default;
};

// Flat storage for n points on the d-dimensional unit torus.
class PointSet {
public:
    PointSet() = default;
    PointSet(int d, std::uint64_t n) : d_(d), data_(n * static_cast<std::size_t>(d)) {}
    PointSet(int d, std::vector<double> flat);

    template <class Gen>
    static PointSet uniform(std::uint64_t n, int d, Gen& g) {
        PointSet p(d, n);
        for (auto& v : p.data_) v = uniform01(g);
        return p;
    }

    int dim() const { return d_; }
    std::uint64_t size() const { return d_ ? data_.size() / d_ : 0; }
    std::span<const double> operator[](std::uint64_t i) const {
        return {data_.data() + i * d_, static_cast<std::size_t>(d_)};
    }
    std::span<double> mutable_point(std::uint64_t i) {
        return {data_.data() + i * d_, static_cast<std::size_t>(d_)};
    }
    std::span<const double> flat() const { return data_; }

private:
    int d_ = 0;
    std::vector<double> data_;
};

// Torus metric: per axis the shorter way around the circle, combined by max.
double torus_distance(std::span<const double> x, std::span<const double> y);

// The level-`level` cell containing x.  Coordinates at the upper boundary 1.0
// are clamped into the last cell.
CellId cell_of_point(std::span<const double> x, int level);

// Smallest cell volume 2^(-l*d) that is >= x.  Requires 0 < x <= 1.
double ceil_cell_volume(double x, int d);

// Deepest level whose cells still have volume >= nu.
int base_level_for(double nu, int d);

double cell_volume(const CellId& c);

CellId parent(const CellId& c);

// Distance between two same-level cells: per axis the gap between the index
// intervals on the circle of 2^level slots, combined by max.  Touching or
// identical cells have distance 0.
double cell_distance(const CellId& a, const CellId& b);

// Position of a cell in the recursive enumeration of its level (children of a
// cell are visited consecutively, from the child smallest in every coordinate
// to the one largest in every coordinate).  Descendants of any cell occupy a
// contiguous rank range.
std::uint64_t geometric_rank(const CellId& c);
CellId cell_at_rank(int level, int d, std::uint64_t rank);

// Next cell in the level's enumeration; empty for the last one.
std::optional<CellId> successor(const CellId& c);

// All cells of a level, in enumeration order (follows the successor chain).
std::vector<CellId> geometric_order(int level, int d);

namespace detail {

// Raw-pointer variant for hot loops; no validation.
inline double torus_distance_raw(const double* x, const double* y, int d) {
    double best = 0.0;
    for (int k = 0; k < d; ++k) {
        double t = x[k] - y[k];
        if (t < 0) t = -t;
        if (t > 0.5) t = 1.0 - t;
        if (t > best) best = t;
    }
    return best;
}

inline std::uint32_t axis_index(double v, int level) {
    auto i = static_cast<std::int64_t>(v * static_cast<double>(1ull << level));
    const std::int64_t last = (1ll << level) - 1;
    if (i < 0) i = 0;
    if (i > last) i = last;  // v == 1.0 lands here
    return static_cast<std::uint32_t>(i);
}

std::uint64_t interleave(const std::uint32_t* idx, int d, int level);
void deinterleave(std::uint64_t rank, int d, int level, std::uint32_t* out);

// Rank of the base cell containing a point, without materializing a CellId.
inline std::uint64_t point_cell_rank(const double* x, int d, int level) {
    std::uint32_t idx[kMaxDim];
    for (int k = 0; k < d; ++k) idx[k] = axis_index(x[k], level);
    return interleave(idx, d, level);
}

} // namespace detail

} // namespace girg
