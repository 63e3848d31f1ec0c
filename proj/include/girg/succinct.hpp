#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "girg/bitvector.hpp"
#include "girg/geometry.hpp"
#include "girg/graph.hpp"

namespace girg {

// A relabeling of vertices; both directions kept, 0-based.
struct VertexOrder {
    std::vector<std::uint32_t> to_new; // original id -> new id
    std::vector<std::uint32_t> to_old; // new id -> original id
};

VertexOrder identity_order(std::uint64_t n);

// Orders vertices by the rank of their containing cell at level
// floor(log2 n) / d (ties by original id), so vertices that are close on the
// torus get close ids.  With edge lengths decaying geometrically this makes
// the id gaps along edges small, which is what the gamma codes below reward.
VertexOrder geometric_vertex_order(const PointSet& pts);

// Adjacency lists compressed into three aligned bit sequences.  The payload B
// holds, per vertex (ascending new id), one filler bit followed by each
// neighbor (ascending) as a direction bit (1 = neighbor id larger) plus the
// Elias-gamma code of the id gap.  B_V marks vertex block starts in B, B_E
// marks block and neighbor starts; both carry one sentinel at the end so that
// every block and neighbor slice has a right boundary.  Queries run on the
// rank/select indexes: degree and the s-th neighbor cost O(1) rank/select
// calls plus the bits of one gamma code.  Public query ids are 1-based new
// ids; perm() maps them back (perm()[k] = original 1-based id of new id k+1).
class CompressedGraph {
public:
    CompressedGraph() = default;
    CompressedGraph(const Graph& g, const VertexOrder& order);
    explicit CompressedGraph(const Graph& g);

    std::uint64_t num_vertices() const { return n_; }
    std::uint64_t num_edges() const { return (be_.ones() - bv_.ones()) / 2; }

    std::uint64_t degree(std::uint64_t i) const;                  // i in [1, n]
    std::uint64_t neighbor(std::uint64_t i, std::uint64_t s) const; // s in [1, degree(i)]

    std::vector<Edge> decode() const;           // 0-based new ids
    std::vector<Edge> decode_relabeled() const; // 0-based original ids

    const std::vector<std::uint64_t>& perm() const { return perm_; }

    const BitVector& payload() const { return b_; }
    const BitVector& vertex_marks() const { return bv_; }
    const BitVector& edge_marks() const { return be_; }

    // payload + the two marker sequences (index overhead not counted)
    std::uint64_t total_bits() const { return 3 * b_.size(); }

    void save(const std::string& path) const;
    static CompressedGraph load(const std::string& path);

private:
    std::uint64_t n_ = 0;
    std::vector<std::uint64_t> perm_;
    BitVector b_, bv_, be_;
};

} // namespace girg
