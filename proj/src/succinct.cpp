#include "girg/succinct.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <memory>
#include <numeric>

#include "girg/errors.hpp"

namespace girg {

VertexOrder identity_order(std::uint64_t n) {
    VertexOrder o;
    o.to_new.resize(n);
    o.to_old.resize(n);
    std::iota(o.to_new.begin(), o.to_new.end(), 0u);
    o.to_old = o.to_new;
    return o;
}

VertexOrder geometric_vertex_order(const PointSet& pts) {
    const std::uint64_t n = pts.size();
    const int d = pts.dim();
    VertexOrder o;
    o.to_new.resize(n);
    o.to_old.resize(n);
    if (n == 0) return o;
    int level = (std::bit_width(n) - 1) / d;
    if (level * d > 62) level = 62 / d;
    std::vector<std::uint64_t> rank_of(n);
    const double* flat = pts.flat().data();
    for (std::uint64_t v = 0; v < n; ++v)
        rank_of[v] = detail::point_cell_rank(flat + v * d, d, level);
    std::iota(o.to_old.begin(), o.to_old.end(), 0u);
    std::sort(o.to_old.begin(), o.to_old.end(), [&](std::uint32_t a, std::uint32_t b) {
        return rank_of[a] != rank_of[b] ? rank_of[a] < rank_of[b] : a < b;
    });
    for (std::uint64_t k = 0; k < n; ++k) o.to_new[o.to_old[k]] = static_cast<std::uint32_t>(k);
    return o;
}

namespace {

struct TripleBuilder {
    BitVector::Builder b, bv, be;

    void block_start() {
        b.push(false); // filler payload bit under the block marker
        bv.push(true);
        be.push(true);
    }
    void neighbor_code(std::uint64_t self, std::uint64_t other) {
        push(other > self, /*sub_start=*/true);
        const std::uint64_t gap = other > self ? other - self : self - other;
        const int z = std::bit_width(gap) - 1;
        for (int k = 0; k < z; ++k) push(false, false);
        for (int k = z; k >= 0; --k) push((gap >> k) & 1, false);
    }
    void sentinel() {
        b.push(false);
        bv.push(true);
        be.push(true);
    }

private:
    void push(bool payload, bool sub_start) {
        b.push(payload);
        bv.push(false);
        be.push(sub_start);
    }
};

} // namespace

CompressedGraph::CompressedGraph(const Graph& g, const VertexOrder& order) : n_(g.num_vertices()) {
    if (order.to_new.size() != n_ || order.to_old.size() != n_)
        throw UsageError("compressed graph: order size does not match graph");

    // adjacency under new ids, neighbors ascending
    std::vector<std::uint64_t> off(n_ + 1, 0);
    for (const auto& [u, v] : g.edges()) {
        ++off[order.to_new[u] + 1];
        ++off[order.to_new[v] + 1];
    }
    for (std::uint64_t i = 0; i < n_; ++i) off[i + 1] += off[i];
    std::vector<std::uint32_t> adj(off[n_]);
    {
        std::vector<std::uint64_t> cur(off.begin(), off.end() - 1);
        for (const auto& [u, v] : g.edges()) {
            const std::uint32_t a = order.to_new[u];
            const std::uint32_t b = order.to_new[v];
            adj[cur[a]++] = b;
            adj[cur[b]++] = a;
        }
    }

    TripleBuilder t;
    for (std::uint64_t i = 0; i < n_; ++i) {
        std::sort(adj.begin() + off[i], adj.begin() + off[i + 1]);
        t.block_start();
        for (std::uint64_t k = off[i]; k < off[i + 1]; ++k) {
            if (adj[k] == i) throw UsageError("compressed graph: self-loop");
            if (k > off[i] && adj[k] == adj[k - 1])
                throw UsageError("compressed graph: duplicate edge");
            t.neighbor_code(i + 1, static_cast<std::uint64_t>(adj[k]) + 1);
        }
    }
    t.sentinel();
    b_ = t.b.build();
    bv_ = t.bv.build();
    be_ = t.be.build();

    perm_.resize(n_);
    for (std::uint64_t k = 0; k < n_; ++k) perm_[k] = order.to_old[k] + 1;
}

CompressedGraph::CompressedGraph(const Graph& g)
    : CompressedGraph(g, identity_order(g.num_vertices())) {}

std::uint64_t CompressedGraph::degree(std::uint64_t i) const {
    if (i < 1 || i > n_) throw UsageError("compressed graph: vertex id out of range");
    return be_.rank(bv_.select(i + 1)) - be_.rank(bv_.select(i)) - 1;
}

std::uint64_t CompressedGraph::neighbor(std::uint64_t i, std::uint64_t s) const {
    if (i < 1 || i > n_) throw UsageError("compressed graph: vertex id out of range");
    if (s < 1 || s > degree(i))
        throw UsageError("compressed graph: neighbor index out of range");
    const std::uint64_t k = be_.rank(bv_.select(i));
    const std::uint64_t a = be_.select(k + s);
    const std::uint64_t end = be_.select(k + s + 1);
    const bool larger = b_.get(a);
    const std::uint64_t code_len = end - a - 1; // gamma code: z zeros + z+1 value bits
    const std::uint64_t z = (code_len - 1) / 2;
    std::uint64_t gap = 0;
    for (std::uint64_t pos = a + 1 + z; pos < end; ++pos) gap = (gap << 1) | b_.get(pos);
    if (gap == 0 || (larger ? gap > n_ - i : gap >= i))
        throw CorruptDataError("compressed graph: decoded neighbor out of range");
    return larger ? i + gap : i - gap;
}

std::vector<Edge> CompressedGraph::decode() const {
    std::vector<Edge> edges;
    edges.reserve(num_edges());
    for (std::uint64_t i = 1; i <= n_; ++i) {
        const std::uint64_t deg = degree(i);
        for (std::uint64_t s = 1; s <= deg; ++s) {
            const std::uint64_t j = neighbor(i, s);
            if (j < i)
                edges.emplace_back(static_cast<std::uint32_t>(j - 1),
                                   static_cast<std::uint32_t>(i - 1));
        }
    }
    return edges;
}

std::vector<Edge> CompressedGraph::decode_relabeled() const {
    std::vector<Edge> edges = decode();
    for (auto& [u, v] : edges) {
        u = static_cast<std::uint32_t>(perm_[u] - 1);
        v = static_cast<std::uint32_t>(perm_[v] - 1);
        if (u > v) std::swap(u, v);
    }
    return edges;
}

namespace {

constexpr char kMagic[8] = {'G', 'I', 'R', 'G', 'C', 'M', 'P', '1'};

void put_u64(std::FILE* f, std::uint64_t x) {
    unsigned char buf[8];
    for (int k = 0; k < 8; ++k) buf[k] = static_cast<unsigned char>(x >> (8 * k));
    if (std::fwrite(buf, 1, 8, f) != 8) throw CorruptDataError("compressed graph: write failed");
}

std::uint64_t get_u64(std::FILE* f) {
    unsigned char buf[8];
    if (std::fread(buf, 1, 8, f) != 8)
        throw CorruptDataError("compressed graph: file truncated");
    std::uint64_t x = 0;
    for (int k = 0; k < 8; ++k) x |= static_cast<std::uint64_t>(buf[k]) << (8 * k);
    return x;
}

void put_bits(std::FILE* f, const BitVector& bv) {
    put_u64(f, bv.size());
    for (const std::uint64_t w : bv.words()) put_u64(f, w);
}

BitVector get_bits(std::FILE* f, std::uint64_t expect_len) {
    const std::uint64_t len = get_u64(f);
    if (len != expect_len)
        throw CorruptDataError("compressed graph: bit sequence length mismatch");
    std::vector<std::uint64_t> words((len + 63) / 64);
    for (auto& w : words) w = get_u64(f);
    if ((len & 63) != 0 && !words.empty() &&
        (words.back() >> (len & 63)) != 0)
        throw CorruptDataError("compressed graph: stray bits past sequence end");
    return BitVector(std::move(words), len);
}

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};

} // namespace

void CompressedGraph::save(const std::string& path) const {
    std::unique_ptr<std::FILE, FileCloser> f(std::fopen(path.c_str(), "wb"));
    if (!f) throw UsageError("compressed graph: cannot open '" + path + "' for writing");
    if (std::fwrite(kMagic, 1, 8, f.get()) != 8)
        throw CorruptDataError("compressed graph: write failed");
    put_u64(f.get(), n_);
    put_u64(f.get(), b_.size());
    for (const std::uint64_t p : perm_) put_u64(f.get(), p);
    put_bits(f.get(), b_);
    put_bits(f.get(), bv_);
    put_bits(f.get(), be_);
    if (std::fflush(f.get()) != 0) throw CorruptDataError("compressed graph: write failed");
}

CompressedGraph CompressedGraph::load(const std::string& path) {
    std::unique_ptr<std::FILE, FileCloser> f(std::fopen(path.c_str(), "rb"));
    if (!f) throw UsageError("compressed graph: cannot open '" + path + "'");
    char magic[8];
    if (std::fread(magic, 1, 8, f.get()) != 8 || !std::equal(magic, magic + 8, kMagic))
        throw CorruptDataError("compressed graph: not a compressed graph file");

    CompressedGraph g;
    g.n_ = get_u64(f.get());
    const std::uint64_t payload_bits = get_u64(f.get());
    g.perm_.resize(g.n_);
    std::vector<bool> seen(g.n_, false);
    for (auto& p : g.perm_) {
        p = get_u64(f.get());
        if (p < 1 || p > g.n_ || seen[p - 1])
            throw CorruptDataError("compressed graph: vertex permutation is not a permutation");
        seen[p - 1] = true;
    }
    g.b_ = get_bits(f.get(), payload_bits);
    g.bv_ = get_bits(f.get(), payload_bits);
    g.be_ = get_bits(f.get(), payload_bits);
    if (std::fgetc(f.get()) != EOF)
        throw CorruptDataError("compressed graph: trailing data");

    if (g.bv_.ones() != g.n_ + 1)
        throw CorruptDataError("compressed graph: vertex marker count mismatch");
    if (g.be_.ones() < g.bv_.ones() || ((g.be_.ones() - g.bv_.ones()) & 1) != 0)
        throw CorruptDataError("compressed graph: neighbor marker count mismatch");
    return g;
}

} // namespace girg
