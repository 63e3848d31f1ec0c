#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "girg/graph.hpp"
#include "girg/model.hpp"
#include "girg/rng.hpp"
#include "girg/sampler.hpp"

namespace girg {

// Random hyperbolic graph: n points in a disk of radius R = 2 ln n + c_h,
// radial density ~ sinh(alpha_h * r), uniform angles.  Two points connect with
// probability 1 / (1 + e^((d - R) / (2 t_h))); at temperature zero this
// degenerates to the hard rule d <= R.
struct HyperbolicParams {
    std::uint64_t n = 0;
    double alpha_h = 0.75; // radial dispersion, must exceed 1/2
    double c_h = 0.0;      // additive disk radius offset
    double t_h = 0.0;      // temperature, >= 0

    double radius() const;
    void validate() const; // throws UsageError
};

struct PolarPoint {
    double r = 0.0;
    double phi = 0.0;
};

// Quantile of the radial law at u in [0, 1): acosh(1 + u (cosh(a R) - 1)) / a.
double radius_quantile(const HyperbolicParams& hp, double u);

// Inverse-CDF radius draw, r in [0, R).
double sample_radius(const HyperbolicParams& hp, Rng& rng);

// n points; radii and angles come from separate substreams of `seed`.
std::vector<PolarPoint> sample_hyperbolic_points(const HyperbolicParams& hp,
                                                 std::uint64_t seed);

double hyperbolic_distance(const PolarPoint& a, const PolarPoint& b);

double connection_prob(double dist, const HyperbolicParams& hp);

// Largest angle difference at which two points with the given radii still
// satisfy d <= R, found by bisection on the distance equation; pi if every
// angle does.  Requires r_u, r_v in [0, R] and r_u + r_v >= R (below that sum
// all angles connect and the solution is degenerate).
double critical_angle(double r_u, double r_v, const HyperbolicParams& hp);

// The hyperbolic model re-expressed over unit-circle positions: weight
// e^((R - r) / 2), position phi / 2pi, degree exponent 2 alpha_h + 1, and
// inverse temperature as alpha.  For t_h = 0 the threshold multiplier tau is
// chosen so that the hard rule d <= R implies a circle distance strictly below
// tau * w_u w_v / W for every admissible radius pair; the mapped threshold
// model therefore covers every hyperbolic edge.  Requires t_h < 1.
struct MappedGirg {
    GirgParams params;
    WeightSequence weights;
    PointSet positions;
};

MappedGirg map_to_girg(const HyperbolicParams& hp, std::span<const PolarPoint> pts);

// Inverse of the point mapping (weight/position -> radius/angle).
PolarPoint girg_to_polar(double w, double x, double big_r);

// Quadratic reference: one Bernoulli trial per pair, true hyperbolic rule.
Graph hrg_naive_edges(const HyperbolicParams& hp, std::span<const PolarPoint> pts,
                      Rng& rng);

// Fast path: runs the geometric sampling engine on the mapped model while
// evaluating the true hyperbolic connection probability per candidate pair.
// For t_h > 0 the skip-sampling envelope starts at 16x the mapped scale and
// doubles (with a fresh random substream) whenever a pair exceeds it; more
// than 10 doublings aborts with ModelConfigError.
Graph hrg_fast_edges(const HyperbolicParams& hp, std::span<const PolarPoint> pts,
                     std::uint64_t seed, int threads = 1,
                     SampleStats* stats_out = nullptr);

struct HrgResult {
    std::vector<PolarPoint> points;
    Graph graph;
    SampleStats stats;
};

HrgResult sample_hrg(const HyperbolicParams& hp, std::uint64_t seed, int threads = 1);
HrgResult sample_hrg_naive(const HyperbolicParams& hp, std::uint64_t seed);

} // namespace girg
