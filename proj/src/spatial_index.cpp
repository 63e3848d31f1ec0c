#include "girg/spatial_index.hpp"

#include <algorithm>
#include <cmath>

#include "girg/errors.hpp"

namespace girg {

PointIndex::PointIndex(int d, std::span<const double> coords,
                       std::span<const std::uint32_t> ids, double nu)
    : d_(d) {
    if (d < 1 || d > kMaxDim) throw UsageError("PointIndex: dimension must be in [1, 8]");
    if (!(nu > 0.0) || nu > 1.0) throw UsageError("PointIndex: nu must be in (0, 1]");
    if (coords.size() != ids.size() * static_cast<std::size_t>(d))
        throw UsageError("PointIndex: coordinate array does not match id count");

    base_level_ = base_level_for(nu, d);
    if (base_level_ * d > 40) throw UsageError("PointIndex: nu too small");
    base_volume_ = std::ldexp(1.0, -base_level_ * d);

    const std::uint64_t num_base = 1ull << (base_level_ * d);
    const std::uint32_t n = static_cast<std::uint32_t>(ids.size());

    // Bucket-count points by base cell, in enumeration order.
    std::vector<std::uint32_t> cell_of(n);
    std::vector<std::uint32_t> counts(num_base, 0);
    for (std::uint32_t p = 0; p < n; ++p) {
        const std::uint64_t r = detail::point_cell_rank(coords.data() + p * d, d, base_level_);
        cell_of[p] = static_cast<std::uint32_t>(r);
        ++counts[r];
        ++point_ops_;
    }
    std::vector<std::uint32_t> offsets(num_base + 1, 0);
    for (std::uint64_t r = 0; r < num_base; ++r) offsets[r + 1] = offsets[r] + counts[r];
    cell_ops_ += num_base;

    ordered_.resize(n);
    std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
    for (std::uint32_t p = 0; p < n; ++p) { // stable within a cell
        ordered_[cursor[cell_of[p]]++] = ids[p];
        ++point_ops_;
    }

    // Per-cell ranges for every level from the base up to the root; ranges of
    // coarser cells are unions of their (contiguous) children.
    ranges_.resize(base_level_ + 1);
    ranges_[base_level_].resize(num_base);
    for (std::uint64_t r = 0; r < num_base; ++r)
        ranges_[base_level_][r] = Range{offsets[r], counts[r]};
    stored_cells_ += num_base;
    for (int level = base_level_ - 1; level >= 0; --level) {
        const std::uint64_t cells = 1ull << (level * d);
        auto& row = ranges_[level];
        const auto& below = ranges_[level + 1];
        row.resize(cells);
        const std::uint32_t fan = 1u << d;
        for (std::uint64_t r = 0; r < cells; ++r) {
            const std::uint64_t first = r << d;
            std::uint32_t total = 0;
            for (std::uint32_t c = 0; c < fan; ++c) total += below[first + c].count;
            row[r] = Range{below[first].begin, total};
            ++cell_ops_;
        }
        stored_cells_ += cells;
    }
}

std::uint32_t PointIndex::count_in_cell(const CellId& c) const {
    if (ranges_.empty()) throw UsageError("PointIndex: not built");
    if (c.dim != d_) throw UsageError("PointIndex: cell dimension mismatch");
    if (c.level < 0 || c.level > base_level_)
        throw UsageError("PointIndex: cell volume below index resolution");
    return ranges_[c.level][geometric_rank(c)].count;
}

std::uint32_t PointIndex::kth_in_cell(const CellId& c, std::uint32_t k) const {
    if (ranges_.empty()) throw UsageError("PointIndex: not built");
    if (c.dim != d_) throw UsageError("PointIndex: cell dimension mismatch");
    if (c.level < 0 || c.level > base_level_)
        throw UsageError("PointIndex: cell volume below index resolution");
    const Range r = ranges_[c.level][geometric_rank(c)];
    if (k < 1 || k > r.count) throw UsageError("PointIndex: k out of range for cell");
    return ordered_[r.begin + k - 1];
}

namespace detail {

int touching_cell_ranks(int level, int d, std::uint64_t rank, std::uint64_t* out) {
    const std::uint32_t m = 1u << level;
    std::uint32_t base[kMaxDim];
    deinterleave(rank, d, level, base);

    // Per-axis candidate indices on the circle of m slots, without duplicates.
    std::uint32_t cand[kMaxDim][3];
    int cand_cnt[kMaxDim];
    for (int k = 0; k < d; ++k) {
        if (m == 1) {
            cand[k][0] = 0;
            cand_cnt[k] = 1;
        } else if (m == 2) {
            cand[k][0] = base[k];
            cand[k][1] = base[k] ^ 1u;
            cand_cnt[k] = 2;
        } else {
            cand[k][0] = (base[k] + m - 1) & (m - 1);
            cand[k][1] = base[k];
            cand[k][2] = (base[k] + 1) & (m - 1);
            cand_cnt[k] = 3;
        }
    }

    int cnt = 0;
    std::uint32_t pick[kMaxDim];
    int sel[kMaxDim] = {0};
    for (;;) {
        for (int k = 0; k < d; ++k) pick[k] = cand[k][sel[k]];
        out[cnt++] = interleave(pick, d, level);
        int k = 0;
        while (k < d && ++sel[k] == cand_cnt[k]) sel[k++] = 0;
        if (k == d) break;
    }
    std::sort(out, out + cnt);
    return cnt;
}

} // namespace detail

std::vector<PartitionPair> build_partition(double nu, int d) {
    if (d < 1 || d > kMaxDim) throw UsageError("build_partition: dimension must be in [1, 8]");
    if (!(nu > 0.0) || nu > 1.0) throw UsageError("build_partition: nu must be in (0, 1]");
    std::vector<PartitionPair> pairs;
    for_each_partition_pair(nu, d, [&](int level, std::uint64_t ra, std::uint64_t rb,
                                       PairKind kind, double, std::uint64_t) {
        pairs.push_back(PartitionPair{cell_at_rank(level, d, ra), cell_at_rank(level, d, rb), kind});
    });
    return pairs;
}

} // namespace girg
