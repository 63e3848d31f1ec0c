#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "girg/geometry.hpp"

namespace girg {

// Buckets a point set by the cells of a base level (the deepest level whose
// cells still have volume >= nu) in geometric enumeration order, and answers
// count/k-th queries for every cell of volume >= nu in constant time.  Points
// within a base cell keep their input order.
class PointIndex {
public:
    struct Range {
        std::uint32_t begin = 0;
        std::uint32_t count = 0;
    };

    PointIndex() = default;
    PointIndex(int d, std::span<const double> coords, std::span<const std::uint32_t> ids,
               double nu);

    int dim() const { return d_; }
    int base_level() const { return base_level_; }
    double base_volume() const { return base_volume_; }
    std::uint32_t size() const { return static_cast<std::uint32_t>(ordered_.size()); }

    // Number of indexed points inside the cell.  The cell must have volume >= nu.
    std::uint32_t count_in_cell(const CellId& c) const;
    // Id of the k-th point (1-based, bucket order) inside the cell.
    std::uint32_t kth_in_cell(const CellId& c, std::uint32_t k) const;

    // Hot path: range of a cell addressed by (level, enumeration rank).
    Range range(int level, std::uint64_t rank) const {
        return ranges_[level][rank];
    }
    std::uint32_t point_at(std::uint32_t pos) const { return ordered_[pos]; }
    const std::vector<std::uint32_t>& ordered_points() const { return ordered_; }

    // Build-cost counters (used by scaling tests).
    std::uint64_t build_point_ops() const { return point_ops_; }
    std::uint64_t build_cell_ops() const { return cell_ops_; }
    std::uint64_t stored_cells() const { return stored_cells_; }

private:
    int d_ = 0;
    int base_level_ = 0;
    double base_volume_ = 1.0;
    std::vector<std::uint32_t> ordered_;
    std::vector<std::vector<Range>> ranges_; // [level][rank], level 0..base_level_
    std::uint64_t point_ops_ = 0;
    std::uint64_t cell_ops_ = 0;
    std::uint64_t stored_cells_ = 0;
};

enum class PairKind { TypeI, TypeII };

struct PartitionPair {
    CellId a;
    CellId b;
    PairKind kind = PairKind::TypeI;
};

struct PartitionStats {
    std::uint64_t cells_visited = 0;
    std::uint64_t pairs = 0;
};

namespace detail {

// Ranks of the distinct cells touching the cell `rank` at `level` (the cell
// itself included), sorted ascending.  Returns the count written into `out`,
// at most 3^d entries.
int touching_cell_ranks(int level, int d, std::uint64_t rank, std::uint64_t* out);

} // namespace detail

// Streams an ordered partition of all point pairs of the torus into
// equal-level cell pairs:
//   - TypeI pairs are base-level cells at distance zero (close pairs),
//   - TypeII pairs are cells of volume >= nu whose parents touch but which are
//     separated themselves (distance at least their side length).
// Both orientations (A,B) and (B,A) are emitted.  The callback receives
// (level, rank_a, rank_b, kind, distance, pair_rank) with pair_rank counting
// emitted pairs in a fixed deterministic order.  TypeII emission can be
// disabled for threshold-rule sampling, where separated pairs never connect.
template <class F>
PartitionStats for_each_partition_pair(double nu, int d, F&& f, bool emit_type_ii = true) {
    const int l0 = base_level_for(nu, d);
    PartitionStats st;
    std::uint64_t pair_rank = 0;
    std::array<std::uint64_t, 6561> touching; // 3^kMaxDim

    // Close pairs at the base level.
    const std::uint64_t num_base = 1ull << (l0 * d);
    for (std::uint64_t ra = 0; ra < num_base; ++ra) {
        ++st.cells_visited;
        const int cnt = detail::touching_cell_ranks(l0, d, ra, touching.data());
        for (int t = 0; t < cnt; ++t) {
            f(l0, ra, touching[t], PairKind::TypeI, 0.0, pair_rank);
            ++pair_rank;
            ++st.pairs;
        }
    }

    if (!emit_type_ii) return st;

    // Separated pairs with touching parents, top-down.
    std::uint32_t ca[kMaxDim], cb[kMaxDim];
    const std::uint32_t children = 1u << d;
    for (int level = 1; level <= l0; ++level) {
        const std::uint64_t num_parents = 1ull << ((level - 1) * d);
        const std::uint32_t m = 1u << level;
        const double side = std::ldexp(1.0, -level);
        for (std::uint64_t pr = 0; pr < num_parents; ++pr) {
            ++st.cells_visited;
            const int cnt = detail::touching_cell_ranks(level - 1, d, pr, touching.data());
            for (int t = 0; t < cnt; ++t) {
                const std::uint64_t qr = touching[t];
                for (std::uint32_t taChild = 0; taChild < children; ++taChild) {
                    const std::uint64_t ra = (pr << d) | taChild;
                    detail::deinterleave(ra, d, level, ca);
                    for (std::uint32_t tbChild = 0; tbChild < children; ++tbChild) {
                        const std::uint64_t rb = (qr << d) | tbChild;
                        detail::deinterleave(rb, d, level, cb);
                        std::uint32_t worst = 0;
                        for (int k = 0; k < d; ++k) {
                            std::uint32_t delta =
                                ca[k] >= cb[k] ? ca[k] - cb[k] : cb[k] - ca[k];
                            if (m - delta < delta) delta = m - delta;
                            if (delta > worst) worst = delta;
                        }
                        if (worst <= 1) continue; // touching: covered deeper down
                        f(level, ra, rb, PairKind::TypeII, (worst - 1) * side, pair_rank);
                        ++pair_rank;
                        ++st.pairs;
                    }
                }
            }
        }
    }
    return st;
}

// Materialized form of the partition (mainly for inspection and tests).
std::vector<PartitionPair> build_partition(double nu, int d);

} // namespace girg
