#pragma once

#include "copfrac/errors.hpp"

namespace copfrac {

/// Fractional exponent eta, restricted to the open interval (0,1).
class FractionalOrder {
public:
    explicit FractionalOrder(double eta);

    double value() const noexcept { return eta_; }
    /// 1/eta, the exponent applied to the negated fractional log.
    double inverse() const noexcept { return inv_; }

    friend bool operator==(FractionalOrder a, FractionalOrder b) noexcept {
        return a.eta_ == b.eta_;
    }

private:
    double eta_;
    double inv_;
};

/// Gamma function for strictly positive arguments (Lanczos approximation).
/// Relative error below 1e-12 on [0.05, 50].
double gamma_positive(double x);

/// eta! interpreted as Gamma(eta + 1).
double eta_factorial(FractionalOrder eta);

/// Logarithm branch of the inverse Mittag-Leffler function under the
/// approximation Ln_eta(x) ~ log(x^{eta!}) = Gamma(eta+1) * log(x).
/// Defined for x in (0, 1]; always <= 0 there.
double inverse_mlf_log(double x, FractionalOrder eta);

/// The integrand factor {-Ln_eta(x)}^{1/eta}
///   = (Gamma(eta+1))^{1/eta} * (-log x)^{1/eta),  x in (0,1].
/// Vanishes exactly at x = 1 and is strictly decreasing in x.
double fractional_log_kernel(double x, FractionalOrder eta);

/// Gauss hypergeometric series 2F1(1, b; 2; z) for b > 0, |z| < 1.
/// Direct compensated summation; terms below 1e-15 or 10000 terms.
double gauss_2f1_1b2(double b, double z);

} // namespace copfrac
