#include "copfrac/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace copfrac {

void IntegrationConfig::validate() const {
    if (nodes_per_axis < 2) {
        throw parameter_error("integration nodes_per_axis must be >= 2");
    }
    if (!(clamp_epsilon > 0.0 && clamp_epsilon < 1e-10)) {
        throw parameter_error("clamp_epsilon must lie in (0, 1e-10)");
    }
    if (mc_samples < 1) {
        throw parameter_error("mc_samples must be >= 1");
    }
    if (!(rel_tolerance > 0.0)) {
        throw parameter_error("rel_tolerance must be > 0");
    }
}

IntegrationConfig default_config_for_dim(int dim) {
    IntegrationConfig cfg;
    if (dim >= 4) cfg.method = IntegrationMethod::MonteCarlo;
    return cfg;
}

double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 8) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

namespace {

QuadratureRule1D legendre_rule_minus1_1(int n);

} // namespace

QuadratureRule1D gauss_legendre_plain(int n) {
    QuadratureRule1D rule = legendre_rule_minus1_1(n);
    for (int i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        rule.nodes[idx] = 0.5 * (rule.nodes[idx] + 1.0);
        rule.weights[idx] *= 0.5;
    }
    std::reverse(rule.nodes.begin(), rule.nodes.end());
    std::reverse(rule.weights.begin(), rule.weights.end());
    return rule;
}

QuadratureRule1D gauss_legendre_unit(int n) {
    QuadratureRule1D rule = legendre_rule_minus1_1(n);

    // Affine map to (0,1), then the smooth boundary-grading bijection.
    // Nodes stay strictly inside (0,1); weights pick up the Jacobian
    // 1 - cos(2*pi*t) and are normalized to unit mass.
    constexpr double two_pi = 2.0 * std::numbers::pi;
    for (int i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        const double t = 0.5 * (rule.nodes[idx] + 1.0);
        rule.nodes[idx] = t - std::sin(two_pi * t) / two_pi;
        rule.weights[idx] *= 0.5 * (1.0 - std::cos(two_pi * t));
    }
    std::reverse(rule.nodes.begin(), rule.nodes.end()); // ascending order
    std::reverse(rule.weights.begin(), rule.weights.end());
    const double total = pairwise_sum(rule.weights);
    for (double& w : rule.weights) w /= total;
    return rule;
}

namespace {

QuadratureRule1D legendre_rule_minus1_1(int n) {
    QuadratureRule1D rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));

    // Legendre roots on (-1,1) by Newton iteration on the recurrence.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) {
                // one extra polish step, then the weight
                p0 = 1.0;
                p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                break;
            }
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[static_cast<std::size_t>(i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = -x;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return rule;
}

constexpr std::size_t kChunk = 4096;

[[noreturn]] void throw_singular(std::span<const double> point) {
    throw singularity_error("integrand evaluated to a non-finite value",
                            std::vector<double>(point.begin(), point.end()));
}

// Tensor-product evaluation with deterministic chunked pairwise reduction.
double tensor_value(const Integrand& f, int dim, const QuadratureRule1D& rule,
                    std::int64_t& evaluations) {
    const std::size_t n = rule.nodes.size();
    std::size_t total = 1;
    for (int d = 0; d < dim; ++d) total *= n;

    std::vector<double> chunk;
    chunk.reserve(kChunk);
    std::vector<double> chunk_sums;
    std::vector<double> point(static_cast<std::size_t>(dim));
    std::vector<std::size_t> odo(static_cast<std::size_t>(dim), 0);

    for (std::size_t flat = 0; flat < total; ++flat) {
        double w = 1.0;
        for (int d = 0; d < dim; ++d) {
            const std::size_t id = odo[static_cast<std::size_t>(d)];
            point[static_cast<std::size_t>(d)] = rule.nodes[id];
            w *= rule.weights[id];
        }
        const double fx = f(point);
        if (!std::isfinite(fx)) throw_singular(point);
        chunk.push_back(w * fx);
        if (chunk.size() == kChunk) {
            chunk_sums.push_back(pairwise_sum(chunk));
            chunk.clear();
        }
        // odometer increment, last axis fastest
        for (int d = dim - 1; d >= 0; --d) {
            auto& c = odo[static_cast<std::size_t>(d)];
            if (++c < n) break;
            c = 0;
        }
    }
    if (!chunk.empty()) chunk_sums.push_back(pairwise_sum(chunk));
    evaluations += static_cast<std::int64_t>(total);
    return pairwise_sum(chunk_sums);
}

IntegralResult gauss_tensor(const Integrand& f, int dim, int n) {
    IntegralResult res;
    const int n_coarse = std::max(2, n / 2);
    const double coarse = tensor_value(f, dim, gauss_legendre_unit(n_coarse), res.evaluations);
    const double fine = tensor_value(f, dim, gauss_legendre_unit(n), res.evaluations);
    res.value = fine;
    res.error_estimate = std::fabs(fine - coarse);
    return res;
}

IntegralResult adaptive_doubling(const Integrand& f, int dim, const IntegrationConfig& cfg) {
    constexpr int kNodeCap = 1024;
    IntegralResult res;
    int n = std::min(cfg.nodes_per_axis, kNodeCap);
    double prev = tensor_value(f, dim, gauss_legendre_unit(n), res.evaluations);
    if (2 * n > kNodeCap) {
        // no headroom to double; estimate against a half-resolution level
        const double coarse =
            tensor_value(f, dim, gauss_legendre_unit(std::max(2, n / 2)), res.evaluations);
        res.value = prev;
        res.error_estimate = std::fabs(prev - coarse);
        return res;
    }
    double value = prev;
    double err = 0.0;
    while (2 * n <= kNodeCap) {
        n *= 2;
        value = tensor_value(f, dim, gauss_legendre_unit(n), res.evaluations);
        err = std::fabs(value - prev);
        if (err <= cfg.rel_tolerance * std::max(1.0, std::fabs(value))) break;
        prev = value;
    }
    res.value = value;
    res.error_estimate = err;
    return res;
}

// SplitMix64 finalizer; a counter keyed by (sample, axis) gives a
// reproducible stream independent of evaluation order.
std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

double open_unit(std::uint64_t bits) {
    // (0,1): 53 mantissa bits plus a half-ulp offset away from zero
    return static_cast<double>(bits >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

IntegralResult monte_carlo(const Integrand& f, int dim, const IntegrationConfig& cfg) {
    IntegralResult res;
    const std::uint64_t stream = splitmix64(cfg.seed);
    const auto n = cfg.mc_samples;

    std::vector<double> chunk_vals;
    chunk_vals.reserve(kChunk);
    std::vector<double> chunk_sq;
    chunk_sq.reserve(kChunk);
    std::vector<double> sums, sums_sq;
    std::vector<double> point(static_cast<std::size_t>(dim));

    for (std::int64_t i = 0; i < n; ++i) {
        for (int d = 0; d < dim; ++d) {
            const auto key = stream + static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(dim) +
                             static_cast<std::uint64_t>(d);
            point[static_cast<std::size_t>(d)] = open_unit(splitmix64(key));
        }
        const double fx = f(point);
        if (!std::isfinite(fx)) throw_singular(point);
        chunk_vals.push_back(fx);
        chunk_sq.push_back(fx * fx);
        if (chunk_vals.size() == kChunk) {
            sums.push_back(pairwise_sum(chunk_vals));
            sums_sq.push_back(pairwise_sum(chunk_sq));
            chunk_vals.clear();
            chunk_sq.clear();
        }
    }
    if (!chunk_vals.empty()) {
        sums.push_back(pairwise_sum(chunk_vals));
        sums_sq.push_back(pairwise_sum(chunk_sq));
    }
    const double s1 = pairwise_sum(sums);
    const double s2 = pairwise_sum(sums_sq);
    const double nn = static_cast<double>(n);
    const double mean = s1 / nn;
    double variance = 0.0;
    if (n > 1) variance = std::max(0.0, (s2 - nn * mean * mean) / (nn - 1.0));
    res.value = mean;
    res.error_estimate = std::sqrt(variance / nn);
    res.evaluations = n;
    return res;
}

} // namespace

IntegralResult integrate_unit_cube(const Integrand& f, int dim, const IntegrationConfig& cfg) {
    cfg.validate();
    if (dim < 1) throw dimension_error("integrate_unit_cube requires dim >= 1");
    switch (cfg.method) {
    case IntegrationMethod::GaussLegendreTensor:
        return gauss_tensor(f, dim, cfg.nodes_per_axis);
    case IntegrationMethod::AdaptiveDoubling:
        return adaptive_doubling(f, dim, cfg);
    case IntegrationMethod::MonteCarlo:
        return monte_carlo(f, dim, cfg);
    }
    throw parameter_error("unknown integration method");
}

GuardedIntegrand
guarded_transformed_integrand(std::function<double(std::span<const double>)> weight,
                              std::function<double(std::span<const double>)> kernel_arg,
                              std::function<double(double)> kernel_map, double clamp_epsilon) {
    auto clamps = std::make_shared<std::int64_t>(0);
    auto fn = [weight = std::move(weight), kernel_arg = std::move(kernel_arg),
               kernel_map = std::move(kernel_map), clamp_epsilon,
               clamps](std::span<const double> v) -> double {
        const double w = weight(v);
        if (w == 0.0) return 0.0;
        double c = kernel_arg(v);
        if (c < clamp_epsilon) {
            c = clamp_epsilon;
            ++*clamps;
        } else if (c > 1.0) {
            c = 1.0;
        }
        return w * kernel_map(c);
    };
    return GuardedIntegrand{std::move(fn), std::move(clamps)};
}

GuardedIntegrand guarded_integrand(std::function<double(std::span<const double>)> weight,
                                   std::function<double(std::span<const double>)> kernel_arg,
                                   FractionalOrder eta, double clamp_epsilon) {
    return guarded_transformed_integrand(
        std::move(weight), std::move(kernel_arg),
        [eta](double c) { return fractional_log_kernel(c, eta); }, clamp_epsilon);
}

} // namespace copfrac
