#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "girg/bitvector.hpp"
#include "girg/errors.hpp"
#include "girg/rng.hpp"
#include "girg/sampler.hpp"
#include "girg/succinct.hpp"

using namespace girg;

namespace {

BitVector from_string(const std::string& s) {
    BitVector::Builder b;
    for (char c : s) b.push(c == '1');
    return b.build();
}

void check_bits(const BitVector& bv, const std::string& expect) {
    REQUIRE(bv.size() == expect.size());
    for (std::uint64_t p = 1; p <= bv.size(); ++p) CHECK(bv.get(p) == (expect[p - 1] == '1'));
}

std::vector<Edge> sorted_edges(std::vector<Edge> e) {
    std::sort(e.begin(), e.end());
    return e;
}

std::vector<unsigned char> slurp(const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    REQUIRE(f != nullptr);
    std::vector<unsigned char> bytes;
    int c;
    while ((c = std::fgetc(f)) != EOF) bytes.push_back(static_cast<unsigned char>(c));
    std::fclose(f);
    return bytes;
}

void spit(const std::string& path, const std::vector<unsigned char>& bytes) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    REQUIRE(f != nullptr);
    if (!bytes.empty()) REQUIRE(std::fwrite(bytes.data(), 1, bytes.size(), f) == bytes.size());
    std::fclose(f);
}

} // namespace

TEST_CASE("bit vector answers the textbook example") {
    const auto bv = from_string("10110");
    CHECK(bv.size() == 5);
    CHECK(bv.ones() == 3);
    CHECK(bv.get(1));
    CHECK(!bv.get(2));
    CHECK(bv.rank(0) == 0);
    CHECK(bv.rank(1) == 1);
    CHECK(bv.rank(2) == 1);
    CHECK(bv.rank(5) == 3);
    CHECK(bv.select(1) == 1);
    CHECK(bv.select(2) == 3);
    CHECK(bv.select(3) == 4);

    CHECK_THROWS_AS(bv.get(0), UsageError);
    CHECK_THROWS_AS(bv.get(6), UsageError);
    CHECK_THROWS_AS(bv.rank(6), UsageError);
    CHECK_THROWS_AS(bv.select(0), UsageError);
    CHECK_THROWS_AS(bv.select(4), UsageError);
}

TEST_CASE("bit vector handles empty and word-boundary sizes") {
    BitVector::Builder b;
    const auto empty = b.build();
    CHECK(empty.size() == 0);
    CHECK(empty.ones() == 0);
    CHECK(empty.rank(0) == 0);
    CHECK_THROWS_AS(empty.select(1), UsageError);
    CHECK_THROWS_AS(empty.get(1), UsageError);

    // stray bits above the logical length are cleared, not counted
    const BitVector masked({0xffull}, 4);
    CHECK(masked.ones() == 4);
    CHECK(masked.rank(4) == 4);
    CHECK_THROWS_AS(BitVector({0, 0}, 64), UsageError);
}

TEST_CASE("rank and select agree with a prefix-sum oracle") {
    Rng rng(71);
    for (const std::uint64_t n : {1ull, 63ull, 64ull, 65ull, 511ull, 512ull, 513ull, 5000ull}) {
        for (const double density : {0.01, 0.5, 0.9}) {
            BitVector::Builder b;
            std::vector<int> bits(n);
            for (auto& bit : bits) {
                bit = uniform01(rng) < density;
                b.push(bit != 0);
            }
            const auto bv = b.build();

            std::vector<std::uint64_t> prefix(n + 1, 0);
            for (std::uint64_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + bits[i];
            CHECK(bv.ones() == prefix[n]);
            CHECK(bv.rank(bv.size()) == bv.ones());

            for (int it = 0; it < 300; ++it) {
                const std::uint64_t pos = uniform_below(rng, n + 1);
                CHECK(bv.rank(pos) == prefix[pos]);
            }
            for (std::uint64_t k = 1; k <= bv.ones(); ++k) {
                const std::uint64_t pos = bv.select(k);
                CHECK(bits[pos - 1] == 1);
                CHECK(bv.rank(pos) == k);
                CHECK(bv.rank(pos - 1) == k - 1);
            }
            for (int it = 0; it < 200; ++it) {
                const int width = 1 + static_cast<int>(uniform_below(rng, 64));
                if (static_cast<std::uint64_t>(width) > n) continue;
                const std::uint64_t pos = 1 + uniform_below(rng, n - width + 1);
                std::uint64_t expect = 0;
                for (int k = width - 1; k >= 0; --k)
                    expect = (expect << 1) | static_cast<std::uint64_t>(bits[pos - 1 + k]);
                CHECK(bv.read_window(pos, width) == expect);
            }
        }
    }

    const auto bv = from_string("1010");
    CHECK(bv.read_window(1, 0) == 0);
    CHECK_THROWS_AS(bv.read_window(1, 65), UsageError);
    CHECK_THROWS_AS(bv.read_window(1, -1), UsageError);
    CHECK_THROWS_AS(bv.read_window(2, 4), UsageError);
    CHECK_THROWS_AS(bv.read_window(0, 2), UsageError);
}

TEST_CASE("geometric vertex order sorts by cell then id") {
    const PointSet pts(1, std::vector<double>{0.9, 0.1, 0.6, 0.3});
    const auto order = geometric_vertex_order(pts);
    CHECK(order.to_old == std::vector<std::uint32_t>{1, 3, 2, 0});
    CHECK(order.to_new == std::vector<std::uint32_t>{3, 0, 2, 1});

    // co-located points keep their id order
    const PointSet tied(1, std::vector<double>{0.10, 0.11, 0.12, 0.13});
    const auto t = geometric_vertex_order(tied);
    CHECK(t.to_old == std::vector<std::uint32_t>{0, 1, 2, 3});

    const auto one = geometric_vertex_order(PointSet(1, std::vector<double>{0.5}));
    CHECK(one.to_old == std::vector<std::uint32_t>{0});
    CHECK(geometric_vertex_order(PointSet(2, 0)).to_old.empty());

    const auto id = identity_order(3);
    CHECK(id.to_new == std::vector<std::uint32_t>{0, 1, 2});
    CHECK(id.to_old == id.to_new);
}

TEST_CASE("a three-vertex path compresses to the known bit pattern") {
    const Graph g(3, {{0, 1}, {1, 2}});
    const CompressedGraph c(g);

    check_bits(c.payload(), "011001110010");
    check_bits(c.vertex_marks(), "100100001001");
    check_bits(c.edge_marks(), "110110101101");
    CHECK(c.vertex_marks().ones() == 4);  // n + sentinel
    CHECK(c.edge_marks().ones() == 8);    // n + degree sum + sentinel
    CHECK(c.total_bits() == 36);

    CHECK(c.num_vertices() == 3);
    CHECK(c.num_edges() == 2);
    CHECK(c.degree(1) == 1);
    CHECK(c.degree(2) == 2);
    CHECK(c.degree(3) == 1);
    CHECK(c.neighbor(1, 1) == 2);
    CHECK(c.neighbor(2, 1) == 1);
    CHECK(c.neighbor(2, 2) == 3);
    CHECK(c.neighbor(3, 1) == 2);
    CHECK(c.decode() == std::vector<Edge>{{0, 1}, {1, 2}});

    CHECK_THROWS_AS(c.degree(0), UsageError);
    CHECK_THROWS_AS(c.degree(4), UsageError);
    CHECK_THROWS_AS(c.neighbor(1, 0), UsageError);
    CHECK_THROWS_AS(c.neighbor(1, 2), UsageError);
}

TEST_CASE("a gap of two produces a two-part gamma code") {
    const Graph g(3, {{0, 2}});
    const CompressedGraph c(g);
    check_bits(c.payload(), "010100000100");
    check_bits(c.vertex_marks(), "100001100001");
    check_bits(c.edge_marks(), "110001110001");
    CHECK(c.degree(2) == 0);
    CHECK(c.neighbor(1, 1) == 3);
    CHECK(c.neighbor(3, 1) == 1);
}

TEST_CASE("an edgeless graph is all markers") {
    const Graph g(3, {});
    const CompressedGraph c(g);
    check_bits(c.payload(), "0000");
    check_bits(c.vertex_marks(), "1111");
    check_bits(c.edge_marks(), "1111");
    CHECK(c.num_edges() == 0);
    for (std::uint64_t i = 1; i <= 3; ++i) CHECK(c.degree(i) == 0);
}

TEST_CASE("random graphs round-trip under both orders") {
    Rng rng(72);
    for (int it = 0; it < 100; ++it) {
        const std::uint32_t n = 1 + static_cast<std::uint32_t>(uniform_below(rng, 40));
        const double q = it % 2 == 0 ? 0.05 : 0.3;
        std::vector<Edge> edges;
        for (std::uint32_t u = 0; u < n; ++u)
            for (std::uint32_t v = u + 1; v < n; ++v)
                if (uniform01(rng) < q) edges.emplace_back(u, v);
        const Graph g(n, edges);

        const int d = 1 + static_cast<int>(uniform_below(rng, 2));
        const PointSet pts = PointSet::uniform(n, d, rng);
        const VertexOrder orders[2] = {identity_order(n), geometric_vertex_order(pts)};

        for (const auto& order : orders) {
            const CompressedGraph c(g, order);

            const auto& b = c.payload();
            const auto& bv = c.vertex_marks();
            const auto& be = c.edge_marks();
            REQUIRE(bv.size() == b.size());
            REQUIRE(be.size() == b.size());
            CHECK(bv.ones() == n + 1);
            CHECK(be.ones() == n + 2 * g.num_edges() + 1);
            CHECK(c.num_edges() == g.num_edges());
            CHECK(bv.select(n + 1) == b.size()); // sentinel closes the sequence
            for (std::uint64_t k = 1; k <= bv.ones(); ++k)
                CHECK(be.get(bv.select(k))); // vertex marks are also edge marks

            std::uint64_t degree_sum = 0;
            for (std::uint32_t i = 1; i <= n; ++i) {
                const std::uint32_t orig = order.to_old[i - 1];
                REQUIRE(c.degree(i) == g.degree(orig));
                degree_sum += c.degree(i);
                CHECK(c.perm()[i - 1] == orig + 1);

                std::set<std::uint32_t> got, want;
                std::uint64_t prev = 0;
                for (std::uint64_t s = 1; s <= c.degree(i); ++s) {
                    const std::uint64_t j = c.neighbor(i, s);
                    CHECK(j > prev); // ascending new ids
                    prev = j;
                    got.insert(order.to_old[j - 1]);
                }
                for (const std::uint32_t w : g.neighbors(orig)) want.insert(w);
                CHECK(got == want);
            }
            CHECK(degree_sum == 2 * g.num_edges());

            CHECK(sorted_edges(c.decode_relabeled()) == g.edges());
        }
    }
}

TEST_CASE("dense extremes compress and decode") {
    std::vector<Edge> star;
    for (std::uint32_t v = 1; v < 8; ++v) star.emplace_back(0, v);
    const Graph s(8, star);
    const CompressedGraph cs(s);
    CHECK(cs.degree(1) == 7);
    CHECK(sorted_edges(cs.decode()) == s.edges());

    std::vector<Edge> complete;
    for (std::uint32_t u = 0; u < 8; ++u)
        for (std::uint32_t v = u + 1; v < 8; ++v) complete.emplace_back(u, v);
    const Graph k(8, complete);
    const CompressedGraph ck(k);
    CHECK(ck.num_edges() == 28);
    CHECK(sorted_edges(ck.decode()) == k.edges());

    const Graph single(1, {});
    const CompressedGraph c1(single);
    CHECK(c1.num_vertices() == 1);
    CHECK(c1.degree(1) == 0);
}

TEST_CASE("self-loops and duplicate edges are rejected at encode time") {
    const Graph loop(3, {{1, 1}}, /*validate=*/false);
    CHECK_THROWS_AS(CompressedGraph{loop}, UsageError);
    const Graph dup(3, {{0, 1}, {0, 1}}, /*validate=*/false);
    CHECK_THROWS_AS(CompressedGraph{dup}, UsageError);

    VertexOrder bad = identity_order(2);
    CHECK_THROWS_AS(CompressedGraph(Graph(3, {}), bad), UsageError);
}

TEST_CASE("saved graphs reload bit-for-bit and reject corruption") {
    Rng rng(73);
    const std::uint32_t n = 30;
    std::vector<Edge> edges;
    for (std::uint32_t u = 0; u < n; ++u)
        for (std::uint32_t v = u + 1; v < n; ++v)
            if (uniform01(rng) < 0.2) edges.emplace_back(u, v);
    const Graph g(n, edges);
    const PointSet pts = PointSet::uniform(n, 2, rng);
    const CompressedGraph c(g, geometric_vertex_order(pts));

    const std::string path = "tmp_roundtrip.gcg";
    c.save(path);
    const auto back = CompressedGraph::load(path);
    CHECK(back.num_vertices() == c.num_vertices());
    CHECK(back.perm() == c.perm());
    REQUIRE(back.payload().size() == c.payload().size());
    for (std::uint64_t p = 1; p <= c.payload().size(); ++p) {
        CHECK(back.payload().get(p) == c.payload().get(p));
        CHECK(back.vertex_marks().get(p) == c.vertex_marks().get(p));
        CHECK(back.edge_marks().get(p) == c.edge_marks().get(p));
    }
    CHECK(sorted_edges(back.decode_relabeled()) == g.edges());

    const auto bytes = slurp(path);

    auto truncated = bytes;
    truncated.resize(bytes.size() / 2);
    spit(path, truncated);
    CHECK_THROWS_AS(CompressedGraph::load(path), CorruptDataError);

    auto wrong_magic = bytes;
    wrong_magic[0] ^= 0xff;
    spit(path, wrong_magic);
    CHECK_THROWS_AS(CompressedGraph::load(path), CorruptDataError);

    auto trailing = bytes;
    trailing.push_back(0);
    spit(path, trailing);
    CHECK_THROWS_AS(CompressedGraph::load(path), CorruptDataError);

    auto bad_perm = bytes;
    bad_perm[24] = 0xfe; // first permutation entry leaves [1, n]
    bad_perm[25] = 0xff;
    spit(path, bad_perm);
    CHECK_THROWS_AS(CompressedGraph::load(path), CorruptDataError);

    CHECK_THROWS_AS(CompressedGraph::load("no_such_file.gcg"), UsageError);
    std::remove(path.c_str());
}

TEST_CASE("generated graphs survive the full compress-decode cycle") {
    const auto ws = make_weights_fixed(1000, 2.5, 1.0);
    GirgParams params;
    params.d = 2;
    params.alpha = 2.0;
    params.beta = 2.5;
    const auto res = sample_girg(params, ws, 2025);

    const auto order = geometric_vertex_order(res.positions);
    const CompressedGraph c(res.graph, order);
    CHECK(c.num_edges() == res.graph.num_edges());
    CHECK(sorted_edges(c.decode_relabeled()) == res.graph.edges());

    const CompressedGraph plain(res.graph);
    CHECK(sorted_edges(plain.decode()) == res.graph.edges());

    // locality-aware ids should not lose to the arbitrary input labeling
    CHECK(c.payload().size() <= plain.payload().size());
}
