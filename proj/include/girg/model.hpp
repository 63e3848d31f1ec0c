#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "girg/geometry.hpp"
#include "girg/rng.hpp"

namespace girg {

// Model constants.  `alpha` may be infinity, which switches the connection
// rule from a polynomial falloff to a hard distance threshold.
struct GirgParams {
    int d = 1;
    double alpha = 2.0;
    double beta = 2.5;
    double p_scale = 1.0;       // constant in front of the connection probability
    double c_upper = 1.0;       // envelope constant the skip sampler may assume
    double tau_threshold = 1.0; // radius multiplier for the threshold rule

    bool alpha_infinite() const { return std::isinf(alpha); }
    void validate() const; // throws UsageError
};

// Immutable weight sequence with its total cached.
class WeightSequence {
public:
    WeightSequence() = default;
    explicit WeightSequence(std::vector<double> w);

    const std::vector<double>& weights() const { return w_; }
    std::size_t size() const { return w_.size(); }
    bool empty() const { return w_.empty(); }
    double operator[](std::size_t i) const { return w_[i]; }
    double total() const { return total_; }
    double min_weight() const { return min_; }
    double max_weight() const { return max_; }

private:
    std::vector<double> w_;
    double total_ = 0.0;
    double min_ = 0.0;
    double max_ = 0.0;
};

// Deterministic power-law-tailed sequence: weight of vertex v (1-based) is
// delta * (n/v)^(1/(beta-1)).
WeightSequence make_weights_fixed(std::uint64_t n, double beta, double delta);

// Quantile of the Pareto law with tail exponent beta and minimum w_min.
double pareto_quantile(double u, double beta, double w_min);

// n i.i.d. Pareto(beta, w_min) draws.
WeightSequence sample_weights(std::uint64_t n, double beta, double w_min, Rng& rng);

// Connection probability of two vertices given weights, positions and the
// total weight.  Exact: min{p_scale * (w_u w_v / (W r^d))^alpha, 1} for finite
// alpha; for alpha = inf it is min{p_scale, 1} iff r < tau * (w_u w_v / W)^(1/d)
// and 0 otherwise (0 exactly at the threshold).
double edge_probability(double w_u, double w_v,
                        std::span<const double> x_u, std::span<const double> x_v,
                        double total_weight, const GirgParams& params);

// Same, with the torus distance already computed.
double edge_probability_at(double w_u, double w_v, double r,
                           double total_weight, const GirgParams& params);

struct PowerLawReport {
    bool ok = false;
    double worst_ratio_low = std::numeric_limits<double>::infinity();
    double worst_ratio_high = 0.0;
    int thresholds_checked = 0;
    // Lower-band checks are skipped at thresholds where even a single vertex
    // would exceed the demanded count; integer counts cannot resolve there.
    int lower_checks_skipped = 0;
    double c_low = 0.0;
    double c_high = 0.0;
};

// Scans thresholds w on a geometric grid over [min weight, n^(1/(beta-1))] and
// compares #{v : w_v >= w} against the band [c_low * n * w^(1-beta-eta),
// c_high * n * w^(1-beta+eta)].  The upper end of the scan range is a fixed
// proxy for the sequence's expected maximum, not an adaptive cutoff.
PowerLawReport verify_power_law(const WeightSequence& ws, double beta, double eta,
                                double c_low = 0.1, double c_high = 10.0);

// Exact sum of all weights >= w.
double partial_weight_sum_above(const WeightSequence& ws, double w);

} // namespace girg
