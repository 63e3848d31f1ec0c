#include "girg/model.hpp"

#include <algorithm>
#include <cmath>

#include "girg/errors.hpp"

namespace girg {

void GirgParams::validate() const {
    if (d < 1 || d > kMaxDim) throw UsageError("d must be in [1, 8]");
    if (!(alpha > 1.0)) throw UsageError("alpha must be > 1 (or infinity)");
    if (!(beta > 2.0)) throw UsageError("beta must be > 2");
    if (!(p_scale > 0.0) || !std::isfinite(p_scale)) throw UsageError("p_scale must be positive and finite");
    if (!(c_upper >= p_scale)) throw UsageError("c_upper must be >= p_scale");
    if (alpha_infinite() && !(tau_threshold > 0.0))
        throw UsageError("tau_threshold must be positive when alpha is infinite");
}

WeightSequence::WeightSequence(std::vector<double> w) : w_(std::move(w)) {
    if (w_.empty()) return;
    min_ = w_[0];
    max_ = w_[0];
    for (double v : w_) {
        if (!(v > 0.0) || !std::isfinite(v)) throw UsageError("weights must be positive and finite");
        total_ += v;
        min_ = std::min(min_, v);
        max_ = std::max(max_, v);
    }
}

WeightSequence make_weights_fixed(std::uint64_t n, double beta, double delta) {
    if (n < 1) throw UsageError("need at least one vertex");
    if (!(beta > 2.0)) throw UsageError("beta must be > 2");
    if (!(delta > 0.0)) throw UsageError("delta must be positive");
    const double inv = 1.0 / (beta - 1.0);
    std::vector<double> w(n);
    for (std::uint64_t v = 1; v <= n; ++v)
        w[v - 1] = delta * std::pow(static_cast<double>(n) / static_cast<double>(v), inv);
    return WeightSequence(std::move(w));
}

double pareto_quantile(double u, double beta, double w_min) {
    if (!(u >= 0.0) || u >= 1.0) throw UsageError("quantile argument must be in [0, 1)");
    if (!(beta > 2.0)) throw UsageError("beta must be > 2");
    if (!(w_min > 0.0)) throw UsageError("w_min must be positive");
    // Inverse of F(z) = 1 - (z / w_min)^(1 - beta).
    return w_min * std::pow(1.0 - u, -1.0 / (beta - 1.0));
}

WeightSequence sample_weights(std::uint64_t n, double beta, double w_min, Rng& rng) {
    if (n < 1) throw UsageError("need at least one vertex");
    std::vector<double> w(n);
    for (auto& v : w) v = pareto_quantile(uniform01(rng), beta, w_min);
    return WeightSequence(std::move(w));
}

double edge_probability_at(double w_u, double w_v, double r,
                           double total_weight, const GirgParams& params) {
    if (!(w_u > 0.0) || !(w_v > 0.0) || !(total_weight > 0.0))
        throw UsageError("edge_probability: weights and total must be positive");
    if (!(r >= 0.0) || r > 0.5 + 1e-12) throw UsageError("edge_probability: distance outside [0, 1/2]");
    const double t = w_u * w_v / total_weight;
    if (params.alpha_infinite()) {
        const double threshold = params.tau_threshold * std::pow(t, 1.0 / params.d);
        return r < threshold ? std::min(params.p_scale, 1.0) : 0.0;
    }
    if (r <= 0.0) return 1.0;
    double rd = r;
    for (int k = 1; k < params.d; ++k) rd *= r;
    const double base = t / rd;
    double p;
    const int ia = static_cast<int>(params.alpha);
    if (params.alpha == ia && ia >= 1 && ia <= 8) {
        p = base;
        for (int k = 1; k < ia; ++k) p *= base;
    } else {
        p = std::pow(base, params.alpha);
    }
    p *= params.p_scale;
    return p < 1.0 ? p : 1.0;
}

double edge_probability(double w_u, double w_v,
                        std::span<const double> x_u, std::span<const double> x_v,
                        double total_weight, const GirgParams& params) {
    params.validate();
    if (static_cast<int>(x_u.size()) != params.d)
        throw UsageError("edge_probability: point dimension does not match params");
    return edge_probability_at(w_u, w_v, torus_distance(x_u, x_v), total_weight, params);
}

PowerLawReport verify_power_law(const WeightSequence& ws, double beta, double eta,
                                double c_low, double c_high) {
    if (ws.empty()) throw UsageError("verify_power_law: empty weight sequence");
    if (!(beta > 2.0)) throw UsageError("beta must be > 2");
    if (!(eta > 0.0) || !(eta < beta - 2.0)) throw UsageError("eta must be in (0, beta - 2)");
    if (!(c_low > 0.0) || !(c_high > c_low)) throw UsageError("invalid ratio band");

    const double n = static_cast<double>(ws.size());
    std::vector<double> sorted(ws.weights());
    std::sort(sorted.begin(), sorted.end());

    PowerLawReport rep;
    rep.c_low = c_low;
    rep.c_high = c_high;
    rep.ok = true;

    const double top = std::pow(n, 1.0 / (beta - 1.0));
    bool band_violated = false;
    for (double w = sorted.front(); w <= top * (1.0 + 1e-12); w *= 2.0) {
        const auto it = std::lower_bound(sorted.begin(), sorted.end(), w);
        const double count = static_cast<double>(sorted.end() - it);
        const double demand_low = c_low * n * std::pow(w, 1.0 - beta - eta);
        const double bound_high = c_high * n * std::pow(w, 1.0 - beta + eta);
        ++rep.thresholds_checked;

        if (demand_low < 1.0) {
            ++rep.lower_checks_skipped; // cannot resolve below one vertex
        } else {
            const double ratio_low = count * std::pow(w, beta - 1.0 + eta) / n;
            rep.worst_ratio_low = std::min(rep.worst_ratio_low, ratio_low);
            if (count < demand_low) band_violated = true;
        }
        const double ratio_high = count * std::pow(w, beta - 1.0 - eta) / n;
        rep.worst_ratio_high = std::max(rep.worst_ratio_high, ratio_high);
        if (count > bound_high) band_violated = true;
    }
    rep.ok = !band_violated;
    return rep;
}

double partial_weight_sum_above(const WeightSequence& ws, double w) {
    double sum = 0.0;
    for (double v : ws.weights())
        if (v >= w) sum += v;
    return sum;
}

} // namespace girg
