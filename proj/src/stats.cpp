#include "girg/stats.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "girg/errors.hpp"

namespace girg {

double local_clustering(const Graph& g, std::uint32_t v) {
    if (v >= g.num_vertices()) throw UsageError("clustering: vertex out of range");
    const auto nb = g.neighbors(v);
    const std::size_t deg = nb.size();
    if (deg < 2) return 0.0;
    std::uint64_t links = 0;
    for (std::size_t a = 0; a + 1 < deg; ++a)
        for (std::size_t b = a + 1; b < deg; ++b)
            if (g.has_edge(nb[a], nb[b])) ++links;
    return 2.0 * static_cast<double>(links) / (static_cast<double>(deg) * (deg - 1));
}

std::vector<double> local_clustering_all(const Graph& g) {
    const std::uint32_t n = g.num_vertices();
    std::vector<std::uint64_t> tri(n, 0);

    // process vertices from low to high (degree, id); forward lists then stay
    // short and every triangle is met at exactly one of its edges
    std::vector<std::uint32_t> pos(n);
    {
        std::vector<std::uint32_t> order(n);
        std::iota(order.begin(), order.end(), 0u);
        std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
            const auto da = g.degree(a), db = g.degree(b);
            return da != db ? da < db : a < b;
        });
        for (std::uint32_t k = 0; k < n; ++k) pos[order[k]] = k;
    }

    std::vector<std::vector<std::uint32_t>> fwd(n);
    for (const auto& [u, v] : g.edges()) {
        if (pos[u] < pos[v])
            fwd[u].push_back(v);
        else
            fwd[v].push_back(u);
    }

    std::vector<bool> mark(n, false);
    for (std::uint32_t u = 0; u < n; ++u) {
        for (std::uint32_t w : fwd[u]) mark[w] = true;
        for (std::uint32_t v : fwd[u]) {
            for (std::uint32_t w : fwd[v]) {
                if (mark[w]) {
                    ++tri[u];
                    ++tri[v];
                    ++tri[w];
                }
            }
        }
        for (std::uint32_t w : fwd[u]) mark[w] = false;
    }

    std::vector<double> cc(n, 0.0);
    for (std::uint32_t v = 0; v < n; ++v) {
        const std::uint64_t deg = g.degree(v);
        if (deg >= 2)
            cc[v] = 2.0 * static_cast<double>(tri[v]) /
                    (static_cast<double>(deg) * static_cast<double>(deg - 1));
    }
    return cc;
}

double global_clustering(const Graph& g) {
    if (g.num_vertices() == 0) throw UsageError("clustering: empty graph");
    const auto cc = local_clustering_all(g);
    return std::accumulate(cc.begin(), cc.end(), 0.0) / static_cast<double>(cc.size());
}

double tail_exponent_estimate(std::span<const std::uint64_t> degrees,
                              std::uint64_t k_min) {
    if (k_min < 1) throw UsageError("tail estimate: k_min must be >= 1");
    std::uint64_t count = 0;
    std::uint64_t dmin = ~0ull, dmax = 0;
    double log_sum = 0.0;
    const double ref = static_cast<double>(k_min) - 0.5;
    for (const std::uint64_t deg : degrees) {
        if (deg < k_min) continue;
        ++count;
        dmin = std::min(dmin, deg);
        dmax = std::max(dmax, deg);
        log_sum += std::log(static_cast<double>(deg) / ref);
    }
    if (count < 50)
        throw InsufficientDataError("tail estimate: fewer than 50 degrees above k_min");
    if (dmin == dmax)
        throw InsufficientDataError("tail estimate: tail degrees are all equal");
    return 1.0 + static_cast<double>(count) / log_sum;
}

double tail_exponent_estimate(const Graph& g, std::uint64_t k_min) {
    std::vector<std::uint64_t> degrees(g.num_vertices());
    for (std::uint32_t v = 0; v < g.num_vertices(); ++v) degrees[v] = g.degree(v);
    return tail_exponent_estimate(degrees, k_min);
}

ComponentsResult connected_components(const Graph& g) {
    const std::uint32_t n = g.num_vertices();
    std::vector<std::uint32_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0u);
    auto find = [&](std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const auto& [u, v] : g.edges()) {
        const std::uint32_t ru = find(u), rv = find(v);
        if (ru != rv) parent[std::max(ru, rv)] = std::min(ru, rv);
    }

    ComponentsResult res;
    res.label.resize(n);
    std::vector<std::uint32_t> root_label(n, ~0u);
    std::vector<std::uint64_t> sizes;
    for (std::uint32_t v = 0; v < n; ++v) {
        const std::uint32_t r = find(v);
        if (root_label[r] == ~0u) {
            root_label[r] = static_cast<std::uint32_t>(sizes.size());
            sizes.push_back(0);
        }
        res.label[v] = root_label[r];
        ++sizes[root_label[r]];
    }
    res.count = sizes.size();
    for (std::uint32_t c = 0; c < sizes.size(); ++c) {
        if (sizes[c] > res.giant_size) {
            res.giant_size = sizes[c];
            res.giant_label = c;
        }
    }
    res.sizes = std::move(sizes);
    std::sort(res.sizes.begin(), res.sizes.end(), std::greater<>());
    return res;
}

namespace {

// single-source BFS over the whole graph; dist = ~0u means unreached
void bfs(const Graph& g, std::uint32_t src, std::vector<std::uint32_t>& dist,
         std::vector<std::uint32_t>& queue) {
    std::fill(dist.begin(), dist.end(), ~0u);
    queue.clear();
    queue.push_back(src);
    dist[src] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::uint32_t u = queue[head];
        for (const std::uint32_t v : g.neighbors(u)) {
            if (dist[v] == ~0u) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
}

} // namespace

double average_distance_sample(const Graph& g, std::uint64_t pairs, std::uint64_t seed) {
    if (pairs == 0) throw UsageError("distance sample: pair budget must be positive");
    const ComponentsResult comps = connected_components(g);
    if (comps.giant_size < 2)
        throw InsufficientDataError("distance sample: largest component has < 2 vertices");

    std::vector<std::uint32_t> giant;
    giant.reserve(comps.giant_size);
    for (std::uint32_t v = 0; v < g.num_vertices(); ++v)
        if (comps.label[v] == comps.giant_label) giant.push_back(v);
    const std::uint64_t s = giant.size();

    std::vector<std::uint32_t> dist(g.num_vertices());
    std::vector<std::uint32_t> queue;
    queue.reserve(g.num_vertices());

    const std::uint64_t all_pairs = s * (s - 1) / 2;
    if (s <= 2048 && pairs >= all_pairs) {
        // budget covers everything: measure exactly
        double sum = 0.0;
        for (std::uint64_t a = 0; a < s; ++a) {
            bfs(g, giant[a], dist, queue);
            for (std::uint64_t b = a + 1; b < s; ++b) sum += dist[giant[b]];
        }
        return sum / static_cast<double>(all_pairs);
    }

    Rng rng(derive_seed(seed, {stream::stats}));
    double sum = 0.0;
    std::uint64_t done = 0;
    while (done < pairs) {
        const std::uint32_t src = giant[uniform_below(rng, s)];
        const std::uint64_t batch = std::min<std::uint64_t>(16, pairs - done);
        bfs(g, src, dist, queue);
        for (std::uint64_t t = 0; t < batch; ++t) {
            std::uint32_t dst = src;
            while (dst == src) dst = giant[uniform_below(rng, s)];
            sum += dist[dst];
            ++done;
        }
    }
    return sum / static_cast<double>(done);
}

std::uint64_t grid_cut_count(const Graph& g, const PointSet& pts, int mu) {
    const std::uint64_t n = g.num_vertices();
    if (pts.size() != n) throw UsageError("grid cut: positions do not match graph");
    if (mu < 1 || !std::has_single_bit(static_cast<unsigned>(mu)))
        throw UsageError("grid cut: mu must be a power of two");
    const int d = pts.dim();
    double cells = 1.0;
    for (int k = 0; k < d; ++k) cells *= mu;
    if (cells > static_cast<double>(n))
        throw UsageError("grid cut: grid has more cells than vertices");
    const int level = std::bit_width(static_cast<unsigned>(mu)) - 1;

    std::vector<std::uint64_t> cell(n);
    const double* flat = pts.flat().data();
    for (std::uint64_t v = 0; v < n; ++v)
        cell[v] = detail::point_cell_rank(flat + v * d, d, level);
    std::uint64_t cut = 0;
    for (const auto& [u, v] : g.edges())
        if (cell[u] != cell[v]) ++cut;
    return cut;
}

double grid_cut_bound(std::uint64_t n, int mu, int d, double alpha, double beta,
                      double eta) {
    if (mu < 1 || !std::has_single_bit(static_cast<unsigned>(mu)))
        throw UsageError("grid cut: mu must be a power of two");
    if (d < 1) throw UsageError("grid cut: dimension must be >= 1");
    const double nd = static_cast<double>(n);
    double cells = 1.0;
    for (int k = 0; k < d; ++k) cells *= mu;
    const double q = nd / cells;
    if (!(q >= 1.0)) throw UsageError("grid cut: grid has more cells than vertices");
    const double first = nd * std::pow(q, 2.0 - beta + eta);
    const double log_factor = 1.0 + std::log(q);
    double middle = 0.0;
    if (!std::isinf(alpha))
        middle = std::pow(nd, 2.0 - alpha) * std::pow(static_cast<double>(mu),
                                                      d * (alpha - 1.0));
    const double boundary = std::pow(nd, 1.0 - 1.0 / d) * static_cast<double>(mu);
    return first + (middle + boundary) * log_factor;
}

namespace {

// open-addressing set of packed edges; tombstone deletion with periodic rehash
class EdgeSet {
public:
    explicit EdgeSet(std::uint64_t expect) {
        std::uint64_t cap = 16;
        while (cap < 2 * expect + 4) cap <<= 1;
        slots_.assign(cap, kEmpty);
        mask_ = cap - 1;
    }

    static std::uint64_t pack(std::uint32_t u, std::uint32_t v) {
        return (static_cast<std::uint64_t>(u) << 32) | v;
    }

    bool contains(std::uint64_t key) const {
        for (std::uint64_t i = mix64(key) & mask_;; i = (i + 1) & mask_) {
            if (slots_[i] == key) return true;
            if (slots_[i] == kEmpty) return false;
        }
    }

    void insert(std::uint64_t key) {
        for (std::uint64_t i = mix64(key) & mask_;; i = (i + 1) & mask_) {
            if (slots_[i] == kEmpty || slots_[i] == kTomb) {
                if (slots_[i] == kTomb) --tombs_;
                slots_[i] = key;
                return;
            }
        }
    }

    void erase(std::uint64_t key) {
        for (std::uint64_t i = mix64(key) & mask_;; i = (i + 1) & mask_) {
            if (slots_[i] == key) {
                slots_[i] = kTomb;
                if (++tombs_ > (mask_ + 1) / 4) rehash();
                return;
            }
            if (slots_[i] == kEmpty) return;
        }
    }

private:
    void rehash() {
        std::vector<std::uint64_t> old;
        old.swap(slots_);
        slots_.assign(old.size(), kEmpty);
        tombs_ = 0;
        for (const std::uint64_t k : old)
            if (k != kEmpty && k != kTomb) insert(k);
    }

    static constexpr std::uint64_t kEmpty = ~0ull;
    static constexpr std::uint64_t kTomb = ~0ull - 1;
    std::vector<std::uint64_t> slots_;
    std::uint64_t mask_ = 0;
    std::uint64_t tombs_ = 0;
};

} // namespace

Graph degree_preserving_shuffle(const Graph& g, std::uint64_t attempts, Rng& rng) {
    std::vector<Edge> edges = g.edges();
    const std::uint64_t m = edges.size();
    if (m < 2) return Graph(g.num_vertices(), std::move(edges), false);

    EdgeSet set(m);
    for (const auto& [u, v] : edges) set.insert(EdgeSet::pack(u, v));

    for (std::uint64_t step = 0; step < attempts; ++step) {
        const std::uint64_t i = uniform_below(rng, m);
        const std::uint64_t j = uniform_below(rng, m);
        if (i == j) continue;
        auto [a, b] = edges[i];
        auto [c, d] = edges[j];
        if (uniform_below(rng, 2)) std::swap(c, d);
        // proposed rewiring: (a, c) and (b, d)
        std::uint32_t x1 = a, y1 = c, x2 = b, y2 = d;
        if (x1 == y1 || x2 == y2) continue;
        if (x1 > y1) std::swap(x1, y1);
        if (x2 > y2) std::swap(x2, y2);
        const std::uint64_t k1 = EdgeSet::pack(x1, y1);
        const std::uint64_t k2 = EdgeSet::pack(x2, y2);
        if (k1 == k2 || set.contains(k1) || set.contains(k2)) continue;
        set.erase(EdgeSet::pack(edges[i].first, edges[i].second));
        set.erase(EdgeSet::pack(edges[j].first, edges[j].second));
        set.insert(k1);
        set.insert(k2);
        edges[i] = {x1, y1};
        edges[j] = {x2, y2};
    }
    return Graph(g.num_vertices(), std::move(edges), false);
}

std::vector<std::uint64_t> degree_histogram(const Graph& g) {
    std::uint64_t max_deg = 0;
    for (std::uint32_t v = 0; v < g.num_vertices(); ++v)
        max_deg = std::max<std::uint64_t>(max_deg, g.degree(v));
    std::vector<std::uint64_t> hist(max_deg + 1, 0);
    for (std::uint32_t v = 0; v < g.num_vertices(); ++v) ++hist[g.degree(v)];
    return hist;
}

StatsReport compute_stats(const Graph& g, const StatsOptions& opt) {
    if (g.num_vertices() == 0) throw UsageError("stats: empty graph");
    StatsReport r;
    r.n = g.num_vertices();
    r.m = g.num_edges();
    r.min_degree = ~0ull;
    std::vector<std::uint64_t> degrees(r.n);
    for (std::uint32_t v = 0; v < r.n; ++v) {
        degrees[v] = g.degree(v);
        r.min_degree = std::min(r.min_degree, degrees[v]);
        r.max_degree = std::max(r.max_degree, degrees[v]);
    }
    r.mean_degree = 2.0 * static_cast<double>(r.m) / static_cast<double>(r.n);

    if (opt.want_components) {
        const ComponentsResult comps = connected_components(g);
        r.components = comps.count;
        r.giant_size = comps.giant_size;
        r.giant_fraction = static_cast<double>(comps.giant_size) / static_cast<double>(r.n);
    }
    if (opt.want_clustering) r.clustering = global_clustering(g);

    if (opt.want_tail) {
        try {
            r.beta_hat = tail_exponent_estimate(degrees, opt.tail_k_min);
            r.beta_hat_valid = true;
        } catch (const InsufficientDataError&) {
        }
    }
    if (opt.distance_pairs > 0) {
        try {
            r.avg_distance = average_distance_sample(g, opt.distance_pairs, opt.seed);
            r.avg_distance_valid = true;
        } catch (const InsufficientDataError&) {
        }
    }
    return r;
}

} // namespace girg
