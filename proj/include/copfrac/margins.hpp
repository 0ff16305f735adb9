#pragma once

#include "copfrac/errors.hpp"

#include <memory>
#include <vector>

namespace copfrac {

enum class MarginFamily { Exponential, Uniform, Power };

/// Direction of a proportional power transform of a base distribution:
/// PRHR raises the CDF (G = F^gamma), PHR raises the survival function
/// (G-bar = F-bar^gamma).
enum class PowerMode { PRHR, PHR };

/// A univariate margin exposing CDF, survival function and both quantile maps.
/// Immutable value type; evaluation is pure.
class Margin {
public:
    struct Support {
        double lo;
        double hi;
    };

    static Margin exponential(double rate);
    static Margin uniform(double a, double b);
    static Margin power(Margin base, double gamma, PowerMode mode);

    double cdf(double x) const;
    double survival(double x) const;
    /// Quantiles at p in {0,1} return the support infimum/supremum.
    double quantile(double p) const;
    double survival_quantile(double q) const;
    /// d/dp F^{-1}(p) on (0,1); diverges toward endpoints with unbounded support.
    double quantile_density(double p) const;
    /// -d/dq Fbar^{-1}(q) on (0,1); always >= 0.
    double survival_quantile_density(double q) const;

    Support support() const;

    MarginFamily family() const noexcept { return family_; }
    double rate() const noexcept { return p1_; }     // Exponential
    double lower() const noexcept { return p1_; }    // Uniform
    double upper() const noexcept { return p2_; }    // Uniform
    double exponent() const noexcept { return p1_; } // Power
    PowerMode mode() const noexcept { return mode_; }
    const Margin& base() const { return *base_; }

    bool operator==(const Margin& other) const;

private:
    Margin(MarginFamily f, double p1, double p2, PowerMode mode,
           std::shared_ptr<const Margin> base)
        : family_(f), p1_(p1), p2_(p2), mode_(mode), base_(std::move(base)) {}

    MarginFamily family_;
    double p1_ = 0.0;
    double p2_ = 0.0;
    PowerMode mode_ = PowerMode::PRHR;
    std::shared_ptr<const Margin> base_;
};

using MarginVector = std::vector<Margin>;

/// The probability-scale map v -> G(F^{-1}(v)) with G the reference margin
/// and F the truth margin. Monotone nondecreasing; identity when the margins
/// coincide; v^gamma exactly for a PRHR pair G = F^gamma.
/// Throws composition_error when the reference support lies entirely above
/// the truth support (the composed CDF would vanish identically).
double compose_cdf(const Margin& reference, const Margin& truth, double v);

/// The survival-scale map v -> G-bar(F-bar^{-1}(v)); v^gamma exactly for a
/// PHR pair. Throws composition_error when the reference support lies
/// entirely below the truth support.
double compose_survival(const Margin& reference, const Margin& truth, double v);

} // namespace copfrac
