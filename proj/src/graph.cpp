#include "girg/graph.hpp"

#include <algorithm>

#include "girg/errors.hpp"

namespace girg {

Graph::Graph(std::uint32_t n, std::vector<Edge> edges, bool validate)
    : n_(n), edges_(std::move(edges)) {
    for (auto& e : edges_)
        if (e.first > e.second) std::swap(e.first, e.second);
    std::sort(edges_.begin(), edges_.end());
    if (validate) {
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            const auto& [u, v] = edges_[i];
            if (u == v) throw UsageError("graph: self-loop");
            if (v >= n_) throw UsageError("graph: vertex id out of range");
            if (i > 0 && edges_[i] == edges_[i - 1]) throw UsageError("graph: duplicate edge");
        }
    }

    offsets_.assign(n_ + 1, 0);
    for (const auto& [u, v] : edges_) {
        ++offsets_[u + 1];
        ++offsets_[v + 1];
    }
    for (std::uint32_t v = 0; v < n_; ++v) offsets_[v + 1] += offsets_[v];
    adj_.resize(2 * edges_.size());
    std::vector<std::uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const auto& [u, v] : edges_) {
        adj_[cursor[u]++] = v;
        adj_[cursor[v]++] = u;
    }
    for (std::uint32_t v = 0; v < n_; ++v)
        std::sort(adj_.begin() + offsets_[v], adj_.begin() + offsets_[v + 1]);
}

bool Graph::has_edge(std::uint32_t u, std::uint32_t v) const {
    if (u >= n_ || v >= n_) return false;
    if (degree(u) > degree(v)) std::swap(u, v);
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

} // namespace girg
