#pragma once

#include "copfrac/errors.hpp"
#include "copfrac/special_functions.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace copfrac {

enum class IntegrationMethod { GaussLegendreTensor, MonteCarlo, AdaptiveDoubling };

struct IntegrationConfig {
    IntegrationMethod method = IntegrationMethod::GaussLegendreTensor;
    int nodes_per_axis = 64;
    std::int64_t mc_samples = 1'000'000;
    std::uint64_t seed = 0;
    double clamp_epsilon = 1e-300;
    double rel_tolerance = 1e-8;

    void validate() const;
};

/// Method default: tensor grids up to dim 3, Monte Carlo from dim 4 on.
IntegrationConfig default_config_for_dim(int dim);

struct IntegralResult {
    double value = 0.0;
    /// Absolute difference between the last two refinement levels
    /// (deterministic rules) or the standard error (Monte Carlo).
    double error_estimate = 0.0;
    std::int64_t evaluations = 0;
    /// Number of kernel-argument clamps performed by guarded integrands.
    std::int64_t clamped = 0;
};

using Integrand = std::function<double(std::span<const double>)>;

/// One axis of the deterministic rule: Gauss-Legendre nodes pushed through
/// the boundary-grading bijection u = t - sin(2*pi*t)/(2*pi) so that no node
/// touches {0,1} and boundary log singularities integrate cleanly.
/// Weights carry the Jacobian and are normalized to unit total mass.
struct QuadratureRule1D {
    std::vector<double> nodes;
    std::vector<double> weights;
};

QuadratureRule1D gauss_legendre_unit(int n);

/// Plain affine-mapped Gauss-Legendre on (0,1): exact for polynomials of
/// degree <= 2n-1 (the graded rule above is not).
QuadratureRule1D gauss_legendre_plain(int n);

/// Integrates f over (0,1)^dim per the configured method. Deterministic
/// methods combine node values through a fixed pairwise-reduction tree, so
/// results are bit-identical across runs and degrees of parallelism.
/// Throws singularity_error (with the offending point) when f returns a
/// non-finite value.
IntegralResult integrate_unit_cube(const Integrand& f, int dim, const IntegrationConfig& cfg);

/// Deterministic pairwise (binary-tree) summation.
double pairwise_sum(std::span<const double> values);

/// An integrand of the form w(v) * {-Ln_eta(max(k(v), clamp))}^{1/eta} with
/// two guards: zero weight short-circuits the (divergent) kernel, and kernel
/// arguments below clamp_epsilon are silently clamped and counted.
/// Arguments above 1 (roundoff from copula transforms) clamp to 1.
struct GuardedIntegrand {
    Integrand fn;
    std::shared_ptr<std::int64_t> clamp_count;
};

GuardedIntegrand guarded_integrand(std::function<double(std::span<const double>)> weight,
                                   std::function<double(std::span<const double>)> kernel_arg,
                                   FractionalOrder eta, double clamp_epsilon = 1e-300);

/// Same guards, arbitrary map applied to the clamped kernel argument
/// (used for the plain-log and scaled-log measure variants).
GuardedIntegrand
guarded_transformed_integrand(std::function<double(std::span<const double>)> weight,
                              std::function<double(std::span<const double>)> kernel_arg,
                              std::function<double(double)> kernel_map,
                              double clamp_epsilon = 1e-300);

} // namespace copfrac
