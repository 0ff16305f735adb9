#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace copfrac {

/// Invalid family/measure parameter (bad theta, eta outside (0,1), ...).
class parameter_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Argument outside a function's mathematical domain.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Dimension mismatch or unsupported dimension for an operation.
class dimension_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Margin composition is degenerate (supports do not overlap).
class composition_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Integrand evaluated to a non-finite value; carries the offending point.
class singularity_error : public std::runtime_error {
public:
    singularity_error(const std::string& what, std::vector<double> point)
        : std::runtime_error(what), point_(std::move(point)) {}

    const std::vector<double>& point() const noexcept { return point_; }

private:
    std::vector<double> point_;
};

/// Half-line integral whose truncation tail cannot be brought under tolerance.
class divergence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace copfrac
