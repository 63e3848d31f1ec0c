#include "girg/io.hpp"

#include <cctype>
#include <cerrno>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <memory>

#include "girg/errors.hpp"

namespace girg {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_or_throw(const std::string& path, const char* mode) {
    FilePtr f(std::fopen(path.c_str(), mode));
    if (!f)
        throw UsageError("cannot open '" + path + "' (" + std::strerror(errno) + ")");
    return f;
}

void write_line(std::FILE* f, const char* buf) {
    if (std::fputs(buf, f) == EOF) throw UsageError("write failed");
}

// strtoull wrapper that insists on consuming a number
std::uint64_t parse_u64(const char*& s, const char* what) {
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (end == s || errno == ERANGE)
        throw CorruptDataError(std::string("malformed ") + what);
    s = end;
    return v;
}

double parse_double(const char*& s, const char* what) {
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s, &end);
    if (end == s) throw CorruptDataError(std::string("malformed ") + what);
    s = end;
    return v;
}

void expect_token(const char*& s, const char* tok, const char* what) {
    const std::size_t len = std::strlen(tok);
    while (*s == ' ') ++s;
    if (std::strncmp(s, tok, len) != 0)
        throw CorruptDataError(std::string("malformed ") + what);
    s += len;
}

bool blank(const char* s) {
    for (; *s; ++s)
        if (!std::isspace(static_cast<unsigned char>(*s))) return false;
    return true;
}

} // namespace

void write_edge_list(const std::string& path, const Graph& g, const EdgeListHeader& h) {
    FilePtr f = open_or_throw(path, "w");
    char buf[256];
    if (std::isinf(h.alpha))
        std::snprintf(buf, sizeof buf, "# girg n=%" PRIu64 " d=%d alpha=inf beta=%.17g seed=%" PRIu64 "\n",
                      h.n, h.d, h.beta, h.seed);
    else
        std::snprintf(buf, sizeof buf,
                      "# girg n=%" PRIu64 " d=%d alpha=%.17g beta=%.17g seed=%" PRIu64 "\n",
                      h.n, h.d, h.alpha, h.beta, h.seed);
    write_line(f.get(), buf);
    for (const auto& [u, v] : g.edges()) {
        std::snprintf(buf, sizeof buf, "%u %u\n", u + 1, v + 1);
        write_line(f.get(), buf);
    }
    if (std::fflush(f.get()) != 0) throw UsageError("write failed");
}

std::pair<Graph, EdgeListHeader> read_edge_list(const std::string& path) {
    FilePtr f = open_or_throw(path, "r");
    char buf[512];
    if (!std::fgets(buf, sizeof buf, f.get()))
        throw CorruptDataError("edge list: empty file");

    EdgeListHeader h;
    const char* s = buf;
    expect_token(s, "# girg", "edge list header");
    expect_token(s, "n=", "edge list header");
    h.n = parse_u64(s, "edge list header");
    expect_token(s, "d=", "edge list header");
    h.d = static_cast<int>(parse_u64(s, "edge list header"));
    expect_token(s, "alpha=", "edge list header");
    h.alpha = parse_double(s, "edge list header");
    expect_token(s, "beta=", "edge list header");
    h.beta = parse_double(s, "edge list header");
    expect_token(s, "seed=", "edge list header");
    h.seed = parse_u64(s, "edge list header");
    if (h.n > 0xffffffffull) throw CorruptDataError("edge list: n out of range");

    std::vector<Edge> edges;
    while (std::fgets(buf, sizeof buf, f.get())) {
        if (blank(buf)) continue;
        const char* p = buf;
        const std::uint64_t u = parse_u64(p, "edge line");
        const std::uint64_t v = parse_u64(p, "edge line");
        if (!blank(p)) throw CorruptDataError("edge list: trailing text on edge line");
        if (u < 1 || v <= u || v > h.n)
            throw CorruptDataError("edge list: endpoint ids out of order or range");
        edges.emplace_back(static_cast<std::uint32_t>(u - 1),
                           static_cast<std::uint32_t>(v - 1));
    }
    try {
        return {Graph(static_cast<std::uint32_t>(h.n), std::move(edges), true), h};
    } catch (const UsageError& e) {
        throw CorruptDataError(std::string("edge list: ") + e.what());
    }
}

void write_positions(const std::string& path, const PointSet& pts) {
    FilePtr f = open_or_throw(path, "w");
    char buf[64];
    for (std::uint64_t i = 0; i < pts.size(); ++i) {
        const auto x = pts[i];
        for (int k = 0; k < pts.dim(); ++k) {
            std::snprintf(buf, sizeof buf, k ? " %.17g" : "%.17g", x[k]);
            write_line(f.get(), buf);
        }
        write_line(f.get(), "\n");
    }
    if (std::fflush(f.get()) != 0) throw UsageError("write failed");
}

PointSet read_positions(const std::string& path) {
    FilePtr f = open_or_throw(path, "r");
    char buf[512];
    std::vector<double> flat;
    int d = 0;
    while (std::fgets(buf, sizeof buf, f.get())) {
        if (blank(buf)) continue;
        const char* p = buf;
        int on_line = 0;
        while (!blank(p)) {
            const double x = parse_double(p, "position line");
            if (!std::isfinite(x)) throw CorruptDataError("position line: not finite");
            flat.push_back(x);
            ++on_line;
        }
        if (d == 0) {
            if (on_line < 1 || on_line > kMaxDim)
                throw CorruptDataError("position line: unsupported coordinate count");
            d = on_line;
        } else if (on_line != d) {
            throw CorruptDataError("position line: inconsistent coordinate count");
        }
    }
    if (d == 0) throw CorruptDataError("positions: empty file");
    return PointSet(d, std::move(flat));
}

void write_weights(const std::string& path, std::span<const double> w) {
    FilePtr f = open_or_throw(path, "w");
    char buf[64];
    for (const double x : w) {
        std::snprintf(buf, sizeof buf, "%.17g\n", x);
        write_line(f.get(), buf);
    }
    if (std::fflush(f.get()) != 0) throw UsageError("write failed");
}

std::vector<double> read_weights(const std::string& path) {
    FilePtr f = open_or_throw(path, "r");
    char buf[256];
    std::vector<double> w;
    while (std::fgets(buf, sizeof buf, f.get())) {
        if (blank(buf)) continue;
        const char* p = buf;
        const double x = parse_double(p, "weight line");
        if (!blank(p)) throw CorruptDataError("weight line: trailing text");
        if (!std::isfinite(x) || x <= 0.0) throw CorruptDataError("weight line: not positive");
        w.push_back(x);
    }
    return w;
}

void write_polar(const std::string& path, std::span<const PolarPoint> pts) {
    FilePtr f = open_or_throw(path, "w");
    char buf[96];
    for (const auto& p : pts) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.r, p.phi);
        write_line(f.get(), buf);
    }
    if (std::fflush(f.get()) != 0) throw UsageError("write failed");
}

std::vector<PolarPoint> read_polar(const std::string& path) {
    FilePtr f = open_or_throw(path, "r");
    char buf[256];
    std::vector<PolarPoint> pts;
    while (std::fgets(buf, sizeof buf, f.get())) {
        if (blank(buf)) continue;
        const char* p = buf;
        PolarPoint pt;
        pt.r = parse_double(p, "polar line");
        pt.phi = parse_double(p, "polar line");
        if (!blank(p)) throw CorruptDataError("polar line: trailing text");
        if (!std::isfinite(pt.r) || !std::isfinite(pt.phi))
            throw CorruptDataError("polar line: not finite");
        pts.push_back(pt);
    }
    return pts;
}

} // namespace girg
