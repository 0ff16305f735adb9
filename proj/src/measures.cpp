#include "copfrac/measures.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace copfrac {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_kind(const MeasureJob& job, MeasureKind kind, const char* op) {
    if (job.kind != kind) {
        throw parameter_error(std::string(op) + " called with a job of kind " +
                              std::string(to_string(job.kind)));
    }
}

const CopulaSpec& true_copula_of(const MeasureJob& job) {
    if (!job.true_copula) throw parameter_error("job is missing true_copula");
    return *job.true_copula;
}

const CopulaSpec& reference_copula_of(const MeasureJob& job) {
    if (!job.reference_copula) throw parameter_error("job is missing reference_copula");
    return *job.reference_copula;
}

using PointFn = std::function<double(std::span<const double>)>;

// Weight/kernel builders over the unit cube. Composed coordinates are
// written into a per-closure scratch buffer.

PointFn copula_weight(const CopulaSpec& spec) {
    return [spec](std::span<const double> v) { return spec.eval(v); };
}

PointFn survival_weight(const CopulaSpec& spec, bool is_survival) {
    if (is_survival) return copula_weight(spec);
    return [spec](std::span<const double> v) { return eval_survival(spec, v[0], v[1]); };
}

PointFn cocopula_weight(const CopulaSpec& spec) {
    return [spec](std::span<const double> v) { return eval_cocopula(spec, v[0], v[1]); };
}

PointFn dualcopula_weight(const CopulaSpec& spec) {
    return [spec](std::span<const double> v) { return eval_dualcopula(spec, v[0], v[1]); };
}

enum class ComposeScale { Cdf, Survival };

PointFn composed_kernel_arg(const CopulaSpec& reference, bool reference_is_survival,
                            const MarginVector& ref_margins, const MarginVector& true_margins,
                            ComposeScale scale, CopulaTransform transform) {
    const auto dim = static_cast<std::size_t>(reference.dim());
    return [reference, reference_is_survival, ref_margins, true_margins, scale, transform,
            scratch = std::vector<double>(dim)](std::span<const double> v) mutable {
        for (std::size_t i = 0; i < scratch.size(); ++i) {
            scratch[i] = scale == ComposeScale::Cdf
                             ? compose_cdf(ref_margins[i], true_margins[i], v[i])
                             : compose_survival(ref_margins[i], true_margins[i], v[i]);
        }
        switch (transform) {
        case CopulaTransform::Survival:
            if (reference_is_survival) return reference.eval(scratch);
            return eval_survival(reference, scratch[0], scratch[1]);
        case CopulaTransform::CoCopula:
            return eval_cocopula(reference, scratch[0], scratch[1]);
        case CopulaTransform::DualCopula:
            return eval_dualcopula(reference, scratch[0], scratch[1]);
        }
        return reference.eval(scratch);
    };
}

PointFn composed_plain_kernel_arg(const CopulaSpec& reference, const MarginVector& ref_margins,
                                  const MarginVector& true_margins) {
    const auto dim = static_cast<std::size_t>(reference.dim());
    return [reference, ref_margins, true_margins,
            scratch = std::vector<double>(dim)](std::span<const double> v) mutable {
        for (std::size_t i = 0; i < scratch.size(); ++i) {
            scratch[i] = compose_cdf(ref_margins[i], true_margins[i], v[i]);
        }
        return reference.eval(scratch);
    };
}

IntegralResult run_guarded(PointFn weight, PointFn kernel_arg,
                           const std::function<double(double)>& kernel_map, int dim,
                           const IntegrationConfig& cfg) {
    auto guarded = guarded_transformed_integrand(std::move(weight), std::move(kernel_arg),
                                                 kernel_map, cfg.clamp_epsilon);
    IntegralResult res = integrate_unit_cube(guarded.fn, dim, cfg);
    res.clamped = *guarded.clamp_count;
    return res;
}

std::function<double(double)> fractional_map(FractionalOrder eta) {
    return [eta](double c) { return fractional_log_kernel(c, eta); };
}

std::function<double(double)> scaled_log_map(FractionalOrder eta) {
    return [eta](double c) { return -inverse_mlf_log(c, eta); };
}

std::function<double(double)> plain_log_map() {
    return [](double c) { return -std::log(c); };
}

void check_margins_sized(const MeasureJob& job, int dim) {
    if (static_cast<int>(job.true_margins.size()) != dim ||
        static_cast<int>(job.reference_margins.size()) != dim) {
        throw dimension_error("margin vectors must match the copula dimension " +
                              std::to_string(dim));
    }
}

void check_cdf_compositions(const MeasureJob& job) {
    for (std::size_t i = 0; i < job.true_margins.size(); ++i) {
        compose_cdf(job.reference_margins[i], job.true_margins[i], 0.5);
    }
}

void check_survival_compositions(const MeasureJob& job) {
    for (std::size_t i = 0; i < job.true_margins.size(); ++i) {
        compose_survival(job.reference_margins[i], job.true_margins[i], 0.5);
    }
}

IntegralResult ccfi_like(const MeasureJob& job, const std::function<double(double)>& map) {
    const auto& cx = true_copula_of(job);
    const auto& cy = reference_copula_of(job);
    return run_guarded(copula_weight(cx),
                       composed_plain_kernel_arg(cy, job.reference_margins, job.true_margins),
                       map, cx.dim(), job.integration);
}

} // namespace

void validate_job(const MeasureJob& job) {
    job.integration.validate();
    switch (job.kind) {
    case MeasureKind::FCRI:
    case MeasureKind::FCPI: {
        if (job.true_margins.size() != 1 || job.reference_margins.size() != 1) {
            throw dimension_error("univariate measures take exactly one margin per side");
        }
        const auto ts = job.true_margins[0].support();
        const auto rs = job.reference_margins[0].support();
        if (ts.lo < 0.0 || rs.lo < 0.0) {
            throw parameter_error("univariate measures require margins supported on [0, inf)");
        }
        return;
    }
    case MeasureKind::CCFE: {
        const auto& cx = true_copula_of(job);
        (void)cx;
        return;
    }
    case MeasureKind::SCFE: {
        const auto& cx = true_copula_of(job);
        if (!job.true_is_survival && cx.dim() != 2) {
            throw dimension_error(
                "scfe above dim 2 needs the survival copula supplied directly");
        }
        return;
    }
    case MeasureKind::CCFI:
    case MeasureKind::CCFI_TILDE:
    case MeasureKind::CCI: {
        const auto& cx = true_copula_of(job);
        const auto& cy = reference_copula_of(job);
        if (cx.dim() != cy.dim()) {
            throw dimension_error("true and reference copula dimensions differ");
        }
        check_margins_sized(job, cx.dim());
        check_cdf_compositions(job);
        return;
    }
    case MeasureKind::SCFI: {
        const auto& cx = true_copula_of(job);
        const auto& cy = reference_copula_of(job);
        if (cx.dim() != cy.dim()) {
            throw dimension_error("true and reference copula dimensions differ");
        }
        if (cx.dim() != 2 && !(job.true_is_survival && job.reference_is_survival)) {
            throw dimension_error(
                "scfi above dim 2 needs both survival copulas supplied directly");
        }
        check_margins_sized(job, cx.dim());
        check_survival_compositions(job);
        return;
    }
    case MeasureKind::COCFI:
    case MeasureKind::DCFI: {
        const auto& cx = true_copula_of(job);
        const auto& cy = reference_copula_of(job);
        if (cx.dim() != 2 || cy.dim() != 2) {
            throw dimension_error("co-copula and dual-copula measures are bivariate only");
        }
        check_margins_sized(job, 2);
        check_cdf_compositions(job);
        return;
    }
    }
}

IntegralResult ccfi(const MeasureJob& job) {
    require_kind(job, MeasureKind::CCFI, "ccfi");
    validate_job(job);
    return ccfi_like(job, fractional_map(job.eta));
}

IntegralResult ccfi_tilde(const MeasureJob& job) {
    require_kind(job, MeasureKind::CCFI_TILDE, "ccfi_tilde");
    validate_job(job);
    return ccfi_like(job, scaled_log_map(job.eta));
}

IntegralResult cci(const MeasureJob& job) {
    require_kind(job, MeasureKind::CCI, "cci");
    validate_job(job);
    return ccfi_like(job, plain_log_map());
}

IntegralResult ccfe(const MeasureJob& job) {
    require_kind(job, MeasureKind::CCFE, "ccfe");
    validate_job(job);
    const auto& cx = true_copula_of(job);
    return run_guarded(copula_weight(cx), copula_weight(cx), fractional_map(job.eta),
                       cx.dim(), job.integration);
}

IntegralResult scfi(const MeasureJob& job) {
    require_kind(job, MeasureKind::SCFI, "scfi");
    validate_job(job);
    const auto& cx = true_copula_of(job);
    const auto& cy = reference_copula_of(job);
    return run_guarded(survival_weight(cx, job.true_is_survival),
                       composed_kernel_arg(cy, job.reference_is_survival, job.reference_margins,
                                           job.true_margins, ComposeScale::Survival,
                                           CopulaTransform::Survival),
                       fractional_map(job.eta), cx.dim(), job.integration);
}

IntegralResult scfe(const MeasureJob& job) {
    require_kind(job, MeasureKind::SCFE, "scfe");
    validate_job(job);
    const auto& cx = true_copula_of(job);
    auto w = survival_weight(cx, job.true_is_survival);
    return run_guarded(w, w, fractional_map(job.eta), cx.dim(), job.integration);
}

IntegralResult cocfi(const MeasureJob& job) {
    require_kind(job, MeasureKind::COCFI, "cocfi");
    validate_job(job);
    const auto& cx = true_copula_of(job);
    const auto& cy = reference_copula_of(job);
    return run_guarded(cocopula_weight(cx),
                       composed_kernel_arg(cy, false, job.reference_margins, job.true_margins,
                                           ComposeScale::Cdf, CopulaTransform::CoCopula),
                       fractional_map(job.eta), 2, job.integration);
}

IntegralResult dcfi(const MeasureJob& job) {
    require_kind(job, MeasureKind::DCFI, "dcfi");
    validate_job(job);
    const auto& cx = true_copula_of(job);
    const auto& cy = reference_copula_of(job);
    return run_guarded(dualcopula_weight(cx),
                       composed_kernel_arg(cy, false, job.reference_margins, job.true_margins,
                                           ComposeScale::Cdf, CopulaTransform::DualCopula),
                       fractional_map(job.eta), 2, job.integration);
}

namespace {

struct UnivariateSetup {
    // weight(x) * kernel_map(clamp(kernel_arg(x))) integrated over [lo, hi)
    std::function<double(double)> weight;
    std::function<double(double)> kernel_arg;
    double x_lo;
    double x_hi; // may be +inf
    double scale_hint;
    // probability-scale integrand pieces
    std::function<double(double)> prob_weight;     // v * quantile density
    std::function<double(double)> prob_kernel_arg; // composed margin
};

IntegralResult integrate_univariate_path(const std::function<double(double)>& weight,
                                         const std::function<double(double)>& kernel_arg,
                                         FractionalOrder eta, const IntegrationConfig& cfg) {
    IntegrationConfig dcfg = cfg;
    dcfg.method = IntegrationMethod::AdaptiveDoubling;
    auto w1 = [weight](std::span<const double> v) { return weight(v[0]); };
    auto k1 = [kernel_arg](std::span<const double> v) { return kernel_arg(v[0]); };
    return run_guarded(std::move(w1), std::move(k1), fractional_map(eta), 1, dcfg);
}

IntegralResult univariate_measure(const UnivariateSetup& s, FractionalOrder eta,
                                  const IntegrationConfig& cfg) {
    // probability-scale path
    const IntegralResult prob =
        integrate_univariate_path(s.prob_weight, s.prob_kernel_arg, eta, cfg);

    // half-line path: affine for finite supports, rational map t/(1-t) otherwise
    IntegralResult half;
    if (std::isfinite(s.x_hi)) {
        const double len = s.x_hi - s.x_lo;
        half = integrate_univariate_path(
            [&, len](double t) { return s.weight(s.x_lo + len * t) * len; },
            [&, len](double t) { return s.kernel_arg(s.x_lo + len * t); }, eta, cfg);
    } else {
        const double scale = s.scale_hint;
        half = integrate_univariate_path(
            [&, scale](double t) {
                const double x = s.x_lo + scale * t / (1.0 - t);
                const double w = s.weight(x);
                if (w == 0.0) return 0.0;
                return w * scale / ((1.0 - t) * (1.0 - t));
            },
            [&, scale](double t) { return s.kernel_arg(s.x_lo + scale * t / (1.0 - t)); }, eta,
            cfg);
    }

    const IntegralResult& best = half.error_estimate <= prob.error_estimate ? half : prob;
    const IntegralResult& other = half.error_estimate <= prob.error_estimate ? prob : half;
    const double slack =
        std::max(1e-9, 50.0 * (half.error_estimate + prob.error_estimate));
    if (std::fabs(half.value - prob.value) > slack) {
        throw divergence_error(
            "probability-scale and half-line evaluations disagree beyond tolerance: " +
            std::to_string(prob.value) + " vs " + std::to_string(half.value));
    }
    IntegralResult res = best;
    res.evaluations += other.evaluations;
    res.clamped += other.clamped;
    return res;
}

double median_or(double m, double fallback) {
    return std::isfinite(m) && m > 0.0 ? m : fallback;
}

} // namespace

IntegralResult fcri_univariate(const Margin& truth, const Margin& reference,
                               FractionalOrder eta, const IntegrationConfig& cfg) {
    const auto ts = truth.support();
    const auto rs = reference.support();
    if (ts.lo < 0.0 || rs.lo < 0.0) {
        throw parameter_error("fcri requires margins supported on [0, inf)");
    }
    if (rs.hi < ts.hi) {
        throw divergence_error(
            "fcri diverges: the reference survival function vanishes inside the truth "
            "support");
    }
    UnivariateSetup s;
    s.weight = [truth](double x) { return truth.survival(x); };
    s.kernel_arg = [reference](double x) { return reference.survival(x); };
    s.x_lo = rs.lo;
    s.x_hi = ts.hi;
    s.scale_hint = 2.0 * median_or(std::max(truth.survival_quantile(0.5) - s.x_lo,
                                            reference.survival_quantile(0.5) - s.x_lo),
                                   1.0);
    s.prob_weight = [truth](double v) { return v * truth.survival_quantile_density(v); };
    s.prob_kernel_arg = [reference, truth](double v) {
        return compose_survival(reference, truth, v);
    };
    return univariate_measure(s, eta, cfg);
}

IntegralResult fcpi_univariate(const Margin& truth, const Margin& reference,
                               FractionalOrder eta, const IntegrationConfig& cfg) {
    const auto ts = truth.support();
    const auto rs = reference.support();
    if (ts.lo < 0.0 || rs.lo < 0.0) {
        throw parameter_error("fcpi requires margins supported on [0, inf)");
    }
    if (rs.lo > ts.lo) {
        throw divergence_error(
            "fcpi diverges: the reference CDF vanishes inside the truth support");
    }
    UnivariateSetup s;
    s.weight = [truth](double x) { return truth.cdf(x); };
    s.kernel_arg = [reference](double x) { return reference.cdf(x); };
    s.x_lo = ts.lo;
    s.x_hi = rs.hi; // the kernel vanishes once the reference CDF reaches 1
    s.scale_hint = 2.0 * median_or(std::max(truth.quantile(0.5) - s.x_lo,
                                            reference.quantile(0.5) - s.x_lo),
                                   1.0);
    s.prob_weight = [truth](double v) { return v * truth.quantile_density(v); };
    s.prob_kernel_arg = [reference, truth](double v) { return compose_cdf(reference, truth, v); };
    return univariate_measure(s, eta, cfg);
}

IntegralResult evaluate(const MeasureJob& job) {
    switch (job.kind) {
    case MeasureKind::CCFI: return ccfi(job);
    case MeasureKind::CCFI_TILDE: return ccfi_tilde(job);
    case MeasureKind::CCI: return cci(job);
    case MeasureKind::CCFE: return ccfe(job);
    case MeasureKind::SCFI: return scfi(job);
    case MeasureKind::SCFE: return scfe(job);
    case MeasureKind::COCFI: return cocfi(job);
    case MeasureKind::DCFI: return dcfi(job);
    case MeasureKind::FCRI:
        validate_job(job);
        return fcri_univariate(job.true_margins[0], job.reference_margins[0], job.eta,
                               job.integration);
    case MeasureKind::FCPI:
        validate_job(job);
        return fcpi_univariate(job.true_margins[0], job.reference_margins[0], job.eta,
                               job.integration);
    }
    throw parameter_error("unknown measure kind");
}

FrechetBounds ccfi_frechet_bounds(FractionalOrder eta, double gamma, double delta) {
    if (!(gamma > 0.0) || !(delta > 0.0)) {
        throw parameter_error("frechet bounds require gamma > 0 and delta > 0");
    }
    const double e = eta.value();
    const double s = eta.inverse();
    const double pref = std::pow(eta_factorial(eta), s);

    const double w_side =
        pref * gamma_positive(1.0 + s) / (2.0 * std::pow(3.0, 1.0 + s)) * (gamma + delta);

    const double term_a = std::pow(3.0, -s) * gamma_positive(s) / (6.0 * e);
    const double term_b = gamma_positive((e + 1.0) / e) *
                          (std::pow(2.0, (-e - 1.0) / e) - std::pow(3.0, (-e - 1.0) / e));
    const double term_c = gamma_positive((2.0 * e + 1.0) / e) *
                          gauss_2f1_1b2((2.0 * e + 1.0) / e, -0.5) /
                          (4.0 * std::pow(2.0, s));
    const double term_d = gamma_positive(1.0 + s) / (2.0 * std::pow(3.0, 1.0 + s));

    const double m_side = pref * (gamma * (term_a + term_b) + delta * (term_c + term_d));
    return {w_side, m_side};
}

FrechetBounds ccfi_frechet_bound_quadrature(FractionalOrder eta, double gamma, double delta,
                                            int nodes_per_axis) {
    if (!(gamma > 0.0) || !(delta > 0.0)) {
        throw parameter_error("frechet bound quadrature requires gamma > 0 and delta > 0");
    }
    const double s = eta.inverse();
    const double pref = std::pow(eta_factorial(eta), s);
    const QuadratureRule1D outer = gauss_legendre_unit(nodes_per_axis);
    const QuadratureRule1D inner = gauss_legendre_plain(8);

    double q_w = 0.0;
    double q_m = 0.0;
    std::vector<double> terms_w(outer.nodes.size());
    std::vector<double> terms_m(outer.nodes.size());
    for (std::size_t i = 0; i < outer.nodes.size(); ++i) {
        const double u = outer.nodes[i];
        // inner integral of the W weight over v in [1-u, 1]
        double wv = 0.0;
        for (std::size_t j = 0; j < inner.nodes.size(); ++j) {
            const double v = 1.0 - u + u * inner.nodes[j];
            wv += inner.weights[j] * u * (u + v - 1.0);
        }
        // inner integral of min(u, v): v on [0,u], then the constant tail
        double mv = 0.0;
        for (std::size_t j = 0; j < inner.nodes.size(); ++j) {
            const double v = u * inner.nodes[j];
            mv += inner.weights[j] * u * v;
        }
        mv += u * (1.0 - u);
        const double kern = std::pow(-std::log(u), s);
        terms_w[i] = outer.weights[i] * wv * kern;
        terms_m[i] = outer.weights[i] * mv * kern;
    }
    q_w = pairwise_sum(terms_w);
    q_m = pairwise_sum(terms_m);
    return {pref * (gamma + delta) * q_w, pref * (gamma + delta) * q_m};
}

SandwichIntegrals frechet_sandwich(const MeasureJob& job) {
    require_kind(job, MeasureKind::CCFI, "frechet_sandwich");
    validate_job(job);
    const auto& cx = true_copula_of(job);
    if (cx.dim() != 2) {
        throw dimension_error("frechet_sandwich is bivariate only");
    }
    const auto& cy = reference_copula_of(job);
    auto kernel_arg = composed_plain_kernel_arg(cy, job.reference_margins, job.true_margins);
    SandwichIntegrals out;
    out.lower = run_guarded(
        [](std::span<const double> v) { return std::max(v[0] + v[1] - 1.0, 0.0); }, kernel_arg,
        fractional_map(job.eta), 2, job.integration);
    out.upper = run_guarded(
        [](std::span<const double> v) { return std::min(v[0], v[1]); }, kernel_arg,
        fractional_map(job.eta), 2, job.integration);
    return out;
}

MeasureKind measure_kind_from_string(std::string_view name) {
    if (name == "ccfi") return MeasureKind::CCFI;
    if (name == "ccfi_tilde") return MeasureKind::CCFI_TILDE;
    if (name == "cci") return MeasureKind::CCI;
    if (name == "ccfe") return MeasureKind::CCFE;
    if (name == "scfi") return MeasureKind::SCFI;
    if (name == "scfe") return MeasureKind::SCFE;
    if (name == "cocfi") return MeasureKind::COCFI;
    if (name == "dcfi") return MeasureKind::DCFI;
    if (name == "fcri") return MeasureKind::FCRI;
    if (name == "fcpi") return MeasureKind::FCPI;
    throw parameter_error("unknown measure kind: " + std::string(name));
}

std::string_view to_string(MeasureKind kind) {
    switch (kind) {
    case MeasureKind::CCFI: return "ccfi";
    case MeasureKind::CCFI_TILDE: return "ccfi_tilde";
    case MeasureKind::CCI: return "cci";
    case MeasureKind::CCFE: return "ccfe";
    case MeasureKind::SCFI: return "scfi";
    case MeasureKind::SCFE: return "scfe";
    case MeasureKind::COCFI: return "cocfi";
    case MeasureKind::DCFI: return "dcfi";
    case MeasureKind::FCRI: return "fcri";
    case MeasureKind::FCPI: return "fcpi";
    }
    return "?";
}

} // namespace copfrac
