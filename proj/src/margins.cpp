#include "copfrac/margins.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace copfrac {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_prob(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw domain_error(std::string(what) + " requires an argument in [0,1], got " +
                           std::to_string(p));
    }
}
} // namespace

Margin Margin::exponential(double rate) {
    if (!(rate > 0.0)) {
        throw parameter_error("exponential margin requires rate > 0, got " +
                              std::to_string(rate));
    }
    return Margin(MarginFamily::Exponential, rate, 0.0, PowerMode::PRHR, nullptr);
}

Margin Margin::uniform(double a, double b) {
    if (!(a < b)) {
        throw parameter_error("uniform margin requires a < b");
    }
    return Margin(MarginFamily::Uniform, a, b, PowerMode::PRHR, nullptr);
}

Margin Margin::power(Margin base, double gamma, PowerMode mode) {
    if (!(gamma > 0.0)) {
        throw parameter_error("power margin requires gamma > 0, got " +
                              std::to_string(gamma));
    }
    return Margin(MarginFamily::Power, gamma, 0.0, mode,
                  std::make_shared<const Margin>(std::move(base)));
}

double Margin::cdf(double x) const {
    switch (family_) {
    case MarginFamily::Exponential:
        if (x <= 0.0) return 0.0;
        return -std::expm1(-p1_ * x);
    case MarginFamily::Uniform:
        if (x <= p1_) return 0.0;
        if (x >= p2_) return 1.0;
        return (x - p1_) / (p2_ - p1_);
    case MarginFamily::Power:
        if (mode_ == PowerMode::PRHR) {
            return std::pow(base_->cdf(x), p1_);
        }
        // 1 - survival^gamma, kept accurate when survival is near 1
        {
            const double s = base_->survival(x);
            if (s <= 0.0) return 1.0;
            return -std::expm1(p1_ * std::log(s));
        }
    }
    return 0.0;
}

double Margin::survival(double x) const {
    switch (family_) {
    case MarginFamily::Exponential:
        if (x <= 0.0) return 1.0;
        return std::exp(-p1_ * x);
    case MarginFamily::Uniform:
        if (x <= p1_) return 1.0;
        if (x >= p2_) return 0.0;
        return (p2_ - x) / (p2_ - p1_);
    case MarginFamily::Power:
        if (mode_ == PowerMode::PHR) {
            return std::pow(base_->survival(x), p1_);
        }
        {
            const double c = base_->cdf(x);
            if (c <= 0.0) return 1.0;
            return -std::expm1(p1_ * std::log(c));
        }
    }
    return 0.0;
}

double Margin::quantile(double p) const {
    check_prob(p, "quantile");
    switch (family_) {
    case MarginFamily::Exponential:
        if (p >= 1.0) return kInf;
        return -std::log1p(-p) / p1_;
    case MarginFamily::Uniform:
        return p1_ + (p2_ - p1_) * p;
    case MarginFamily::Power:
        if (mode_ == PowerMode::PRHR) {
            return base_->quantile(std::pow(p, 1.0 / p1_));
        }
        return base_->survival_quantile(std::pow(1.0 - p, 1.0 / p1_));
    }
    return 0.0;
}

double Margin::survival_quantile(double q) const {
    check_prob(q, "survival_quantile");
    switch (family_) {
    case MarginFamily::Exponential:
        if (q <= 0.0) return kInf;
        return -std::log(q) / p1_;
    case MarginFamily::Uniform:
        return p2_ - (p2_ - p1_) * q;
    case MarginFamily::Power:
        if (mode_ == PowerMode::PHR) {
            return base_->survival_quantile(std::pow(q, 1.0 / p1_));
        }
        return base_->quantile(std::pow(1.0 - q, 1.0 / p1_));
    }
    return 0.0;
}

double Margin::quantile_density(double p) const {
    check_prob(p, "quantile_density");
    switch (family_) {
    case MarginFamily::Exponential:
        return 1.0 / (p1_ * (1.0 - p));
    case MarginFamily::Uniform:
        return p2_ - p1_;
    case MarginFamily::Power: {
        const double g = p1_;
        if (mode_ == PowerMode::PRHR) {
            const double r = std::pow(p, 1.0 / g);
            return base_->quantile_density(r) * r / (g * p);
        }
        const double r = std::pow(1.0 - p, 1.0 / g);
        return base_->survival_quantile_density(r) * r / (g * (1.0 - p));
    }
    }
    return 0.0;
}

double Margin::survival_quantile_density(double q) const {
    check_prob(q, "survival_quantile_density");
    switch (family_) {
    case MarginFamily::Exponential:
        return 1.0 / (p1_ * q);
    case MarginFamily::Uniform:
        return p2_ - p1_;
    case MarginFamily::Power: {
        const double g = p1_;
        if (mode_ == PowerMode::PHR) {
            const double r = std::pow(q, 1.0 / g);
            return base_->survival_quantile_density(r) * r / (g * q);
        }
        const double r = std::pow(1.0 - q, 1.0 / g);
        return base_->quantile_density(r) * r / (g * (1.0 - q));
    }
    }
    return 0.0;
}

Margin::Support Margin::support() const {
    switch (family_) {
    case MarginFamily::Exponential:
        return {0.0, kInf};
    case MarginFamily::Uniform:
        return {p1_, p2_};
    case MarginFamily::Power:
        return base_->support();
    }
    return {0.0, 0.0};
}

bool Margin::operator==(const Margin& other) const {
    if (family_ != other.family_) return false;
    switch (family_) {
    case MarginFamily::Exponential:
        return p1_ == other.p1_;
    case MarginFamily::Uniform:
        return p1_ == other.p1_ && p2_ == other.p2_;
    case MarginFamily::Power:
        return p1_ == other.p1_ && mode_ == other.mode_ && *base_ == *other.base_;
    }
    return false;
}

namespace {

bool is_power_of(const Margin& candidate, const Margin& base, PowerMode mode) {
    return candidate.family() == MarginFamily::Power && candidate.mode() == mode &&
           candidate.base() == base;
}

} // namespace

double compose_cdf(const Margin& reference, const Margin& truth, double v) {
    check_prob(v, "compose_cdf");
    if (reference.support().lo >= truth.support().hi) {
        throw composition_error(
            "compose_cdf: reference support lies above the truth support; "
            "the composed CDF is identically zero");
    }
    if (reference == truth) return v;
    if (is_power_of(reference, truth, PowerMode::PRHR)) {
        return std::pow(v, reference.exponent());
    }
    return reference.cdf(truth.quantile(v));
}

double compose_survival(const Margin& reference, const Margin& truth, double v) {
    check_prob(v, "compose_survival");
    if (reference.support().hi <= truth.support().lo) {
        throw composition_error(
            "compose_survival: reference support lies below the truth support; "
            "the composed survival function is identically zero");
    }
    if (reference == truth) return v;
    if (is_power_of(reference, truth, PowerMode::PHR)) {
        return std::pow(v, reference.exponent());
    }
    return reference.survival(truth.survival_quantile(v));
}

} // namespace copfrac
