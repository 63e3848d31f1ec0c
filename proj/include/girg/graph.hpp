#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace girg {

using Edge = std::pair<std::uint32_t, std::uint32_t>;

// Simple undirected graph on vertices 0..n-1.  Edges are normalized to
// (u, v) with u < v, sorted lexicographically; adjacency is a CSR with each
// neighbor list sorted ascending.
class Graph {
public:
    Graph() = default;
    Graph(std::uint32_t n, std::vector<Edge> edges, bool validate = true);

    std::uint32_t num_vertices() const { return n_; }
    std::uint64_t num_edges() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }

    std::uint32_t degree(std::uint32_t v) const { return offsets_[v + 1] - offsets_[v]; }
    std::span<const std::uint32_t> neighbors(std::uint32_t v) const {
        return {adj_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
    }
    bool has_edge(std::uint32_t u, std::uint32_t v) const;

private:
    std::uint32_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::uint32_t> offsets_;
    std::vector<std::uint32_t> adj_;
};

} // namespace girg
