#pragma once

#include "copfrac/copulas.hpp"
#include "copfrac/integrate.hpp"
#include "copfrac/margins.hpp"
#include "copfrac/special_functions.hpp"

#include <optional>
#include <string_view>

namespace copfrac {

enum class MeasureKind { CCFI, CCFI_TILDE, CCI, CCFE, SCFI, SCFE, COCFI, DCFI, FCRI, FCPI };

/// One measure evaluation: measure kind, true/reference joint structure,
/// fractional order and integration configuration.
///
/// Entropy kinds (CCFE, SCFE) ignore the reference fields; the univariate
/// kinds (FCRI, FCPI) use single-margin vectors and ignore the copulas.
/// Setting *_is_survival declares that the corresponding copula spec already
/// IS the survival copula, which lets scfi run in dimensions above 2 where
/// no transform identity is available.
struct MeasureJob {
    MeasureKind kind;
    std::optional<CopulaSpec> true_copula;
    std::optional<CopulaSpec> reference_copula;
    MarginVector true_margins;
    MarginVector reference_margins;
    bool true_is_survival = false;
    bool reference_is_survival = false;
    FractionalOrder eta;
    IntegrationConfig integration;
};

/// Structural validation (dimensions, required fields, support overlap).
/// Throws parameter_error / dimension_error / composition_error.
void validate_job(const MeasureJob& job);

/// Dispatch on job.kind.
IntegralResult evaluate(const MeasureJob& job);

IntegralResult ccfi(const MeasureJob& job);
IntegralResult ccfi_tilde(const MeasureJob& job);
IntegralResult cci(const MeasureJob& job);
IntegralResult ccfe(const MeasureJob& job);
IntegralResult scfi(const MeasureJob& job);
IntegralResult scfe(const MeasureJob& job);
IntegralResult cocfi(const MeasureJob& job);
IntegralResult dcfi(const MeasureJob& job);

IntegralResult fcri_univariate(const Margin& truth, const Margin& reference,
                               FractionalOrder eta, const IntegrationConfig& cfg);
IntegralResult fcpi_univariate(const Margin& truth, const Margin& reference,
                               FractionalOrder eta, const IntegrationConfig& cfg);

/// Closed forms for the two Fréchet-envelope-weighted integrals under an
/// independent reference with power compositions (u^gamma, v^delta).
/// w_side is the W-weighted integral (the lower bound), m_side the M-weighted
/// one (the upper bound); labels are neutral because the source statement's
/// xi/zeta orientation disagrees with its own pointwise derivation.
struct FrechetBounds {
    double w_side;
    double m_side;
};

FrechetBounds ccfi_frechet_bounds(FractionalOrder eta, double gamma, double delta);

/// Quadrature counterparts of the closed forms. The kernel of the bound
/// integrals splits additively across the power factors,
///   {-Ln_eta(u^g v^d)}^{1/eta} -> g*(eta!)^{1/eta}(-log u)^{1/eta}
///                                + d*(eta!)^{1/eta}(-log v)^{1/eta},
/// and both components integrate identically by the u<->v symmetry of the
/// envelope weights, so each bound reduces to one iterated integral whose
/// inner (polynomial) factor low-order Gauss nodes capture exactly.
FrechetBounds ccfi_frechet_bound_quadrature(FractionalOrder eta, double gamma, double delta,
                                            int nodes_per_axis = 64);

/// W- and M-weighted companions of a bivariate CCFI job: same kernel path,
/// envelope weights in place of the true copula. Pointwise
/// W <= C_X <= M makes these a sandwich for the job's ccfi value.
struct SandwichIntegrals {
    IntegralResult lower; // W-weighted
    IntegralResult upper; // M-weighted
};

SandwichIntegrals frechet_sandwich(const MeasureJob& job);

MeasureKind measure_kind_from_string(std::string_view name);
std::string_view to_string(MeasureKind kind);

} // namespace copfrac
