#include "girg/hyperbolic.hpp"

#include <cmath>
#include <limits>

#include "girg/errors.hpp"

namespace girg {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

double HyperbolicParams::radius() const {
    return 2.0 * std::log(static_cast<double>(n)) + c_h;
}

void HyperbolicParams::validate() const {
    if (n < 1) throw UsageError("hyperbolic model: n must be >= 1");
    if (!std::isfinite(alpha_h) || !(alpha_h > 0.5))
        throw UsageError("hyperbolic model: alpha_h must be > 1/2");
    if (!std::isfinite(c_h)) throw UsageError("hyperbolic model: c_h must be finite");
    if (!std::isfinite(t_h) || t_h < 0.0)
        throw UsageError("hyperbolic model: temperature must be >= 0");
    if (!(radius() > 0.0)) throw UsageError("hyperbolic model: disk radius must be positive");
}

double radius_quantile(const HyperbolicParams& hp, double u) {
    if (!(u >= 0.0) || !(u < 1.0))
        throw UsageError("radius_quantile: argument must be in [0, 1)");
    const double span = std::cosh(hp.alpha_h * hp.radius()) - 1.0;
    return std::acosh(1.0 + u * span) / hp.alpha_h;
}

double sample_radius(const HyperbolicParams& hp, Rng& rng) {
    return radius_quantile(hp, uniform01(rng));
}

std::vector<PolarPoint> sample_hyperbolic_points(const HyperbolicParams& hp,
                                                 std::uint64_t seed) {
    hp.validate();
    Rng r_rng(derive_seed(seed, {stream::radii}));
    Rng a_rng(derive_seed(seed, {stream::angles}));
    std::vector<PolarPoint> pts(hp.n);
    for (auto& p : pts) p.r = sample_radius(hp, r_rng);
    for (auto& p : pts) p.phi = 2.0 * kPi * uniform01(a_rng);
    return pts;
}

double hyperbolic_distance(const PolarPoint& a, const PolarPoint& b) {
    double dphi = std::fabs(a.phi - b.phi);
    if (dphi > kPi) dphi = 2.0 * kPi - dphi;
    const double s = std::sin(0.5 * dphi);
    // 1 - cos(dphi) written as 2 sin^2(dphi/2) to keep small angles accurate
    const double arg = std::cosh(a.r - b.r) + 2.0 * s * s * std::sinh(a.r) * std::sinh(b.r);
    return std::acosh(arg < 1.0 ? 1.0 : arg);
}

double connection_prob(double dist, const HyperbolicParams& hp) {
    const double big_r = hp.radius();
    if (hp.t_h == 0.0) return dist <= big_r ? 1.0 : 0.0;
    return 1.0 / (1.0 + std::exp((dist - big_r) / (2.0 * hp.t_h)));
}

double critical_angle(double r_u, double r_v, const HyperbolicParams& hp) {
    const double big_r = hp.radius();
    if (!(r_u >= 0.0) || !(r_u <= big_r) || !(r_v >= 0.0) || !(r_v <= big_r))
        throw UsageError("critical_angle: radii must lie in [0, R]");
    if (!(r_u + r_v >= big_r))
        throw UsageError("critical_angle: requires r_u + r_v >= R");
    auto dist_at = [&](double phi) {
        return hyperbolic_distance(PolarPoint{r_u, phi}, PolarPoint{r_v, 0.0});
    };
    if (dist_at(kPi) <= big_r) return kPi;
    // Distance grows monotonically with the angle gap, and d(0) = |r_u - r_v|
    // <= R, so the root is bracketed by [0, pi].
    double lo = 0.0;
    double hi = kPi;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        (dist_at(mid) <= big_r ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

MappedGirg map_to_girg(const HyperbolicParams& hp, std::span<const PolarPoint> pts) {
    hp.validate();
    if (!(hp.t_h < 1.0))
        throw ModelConfigError("hyperbolic model: mapping needs temperature below 1");
    if (pts.size() != hp.n)
        throw UsageError("hyperbolic model: point count does not match n");
    const double big_r = hp.radius();

    std::vector<double> w(pts.size());
    std::vector<double> x(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& p = pts[i];
        if (!std::isfinite(p.phi) || !(p.r > 0.0) || !(p.r <= big_r))
            throw UsageError("hyperbolic model: radius outside (0, R]");
        w[i] = std::exp(0.5 * (big_r - p.r));
        double xi = p.phi / (2.0 * kPi);
        xi -= std::floor(xi);
        if (xi >= 1.0) xi = 0.0;
        x[i] = xi;
    }

    MappedGirg out;
    out.weights = WeightSequence(std::move(w));
    out.positions = PointSet(1, std::move(x));
    out.params.d = 1;
    out.params.beta = 2.0 * hp.alpha_h + 1.0;
    out.params.p_scale = 1.0;
    if (hp.t_h == 0.0) {
        out.params.alpha = std::numeric_limits<double>::infinity();
        out.params.c_upper = 1.0;
        // Strictly dominates the critical angle fraction for every radius
        // pair: phi_0 / 2pi <= e^{-(r_u + r_v - R)/2} / 2 < tau w_u w_v / W.
        out.params.tau_threshold =
            (1.0 + 1e-6) * 0.5 * out.weights.total() * std::exp(-0.5 * big_r);
    } else {
        out.params.alpha = 1.0 / hp.t_h;
        out.params.c_upper = 16.0 * out.params.p_scale;
    }
    out.params.validate();
    return out;
}

PolarPoint girg_to_polar(double w, double x, double big_r) {
    if (!(w >= 1.0) || !(std::log(w) <= 0.5 * big_r))
        throw UsageError("hyperbolic model: weight outside [1, e^(R/2)]");
    if (!(x >= 0.0) || !(x < 1.0))
        throw UsageError("hyperbolic model: position outside [0, 1)");
    return PolarPoint{big_r - 2.0 * std::log(w), 2.0 * kPi * x};
}

Graph hrg_naive_edges(const HyperbolicParams& hp, std::span<const PolarPoint> pts,
                      Rng& rng) {
    hp.validate();
    if (pts.size() != hp.n)
        throw UsageError("hyperbolic model: point count does not match n");
    std::vector<Edge> edges;
    const std::uint64_t n = pts.size();
    for (std::uint32_t u = 0; u + 1 < n; ++u) {
        for (std::uint32_t v = u + 1; v < n; ++v) {
            const double p = connection_prob(hyperbolic_distance(pts[u], pts[v]), hp);
            if (uniform01(rng) < p) edges.emplace_back(u, v);
        }
    }
    return Graph(n, std::move(edges), /*validate=*/false);
}

Graph hrg_fast_edges(const HyperbolicParams& hp, std::span<const PolarPoint> pts,
                     std::uint64_t seed, int threads, SampleStats* stats_out) {
    const MappedGirg m = map_to_girg(hp, pts);
    if (pts.size() > std::numeric_limits<std::uint32_t>::max())
        throw UsageError("hyperbolic model: too many vertices");

    auto prob = [&](std::uint32_t u, std::uint32_t v) {
        return connection_prob(hyperbolic_distance(pts[u], pts[v]), hp);
    };

    CoreOptions opt;
    opt.alpha = m.params.alpha;
    opt.c_upper = m.params.c_upper;
    opt.nu_scale = m.params.alpha_infinite() ? std::max(1.0, m.params.tau_threshold) : 1.0;
    opt.threads = threads;

    std::vector<Edge> edges;
    SampleStats st;
    int doublings = 0;
    for (;;) {
        edges.clear();
        const std::uint64_t attempt_seed =
            doublings == 0
                ? seed
                : derive_seed(seed, {stream::retry, static_cast<std::uint64_t>(doublings)});
        try {
            st = sample_edges_core(1, m.positions, m.weights, opt, attempt_seed, prob,
                                   [&](std::uint32_t u, std::uint32_t v) {
                                       edges.emplace_back(u, v);
                                   });
            break;
        } catch (const BoundViolationError&) {
            if (doublings == 10)
                throw ModelConfigError(
                    "hyperbolic model: connection probabilities keep exceeding the "
                    "sampling envelope");
            ++doublings;
            opt.c_upper *= 2.0;
        }
    }
    st.envelope_doublings = doublings;
    if (stats_out) *stats_out = st;
    return Graph(pts.size(), std::move(edges), /*validate=*/false);
}

HrgResult sample_hrg(const HyperbolicParams& hp, std::uint64_t seed, int threads) {
    HrgResult out;
    out.points = sample_hyperbolic_points(hp, seed);
    out.graph = hrg_fast_edges(hp, out.points, seed, threads, &out.stats);
    return out;
}

HrgResult sample_hrg_naive(const HyperbolicParams& hp, std::uint64_t seed) {
    HrgResult out;
    out.points = sample_hyperbolic_points(hp, seed);
    Rng rng(derive_seed(seed, {stream::edges}));
    out.graph = hrg_naive_edges(hp, out.points, rng);
    return out;
}

} // namespace girg
