#include "copfrac/copulas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace copfrac {

namespace {

constexpr double kFrankIndependenceCutoff = 1e-8;

void validate(CopulaFamily family, double theta, int dim) {
    if (dim < 2) {
        throw parameter_error("copula dimension must be >= 2, got " + std::to_string(dim));
    }
    const bool bivariate_only = family == CopulaFamily::Countermonotone ||
                                family == CopulaFamily::FGM ||
                                family == CopulaFamily::Joe || family == CopulaFamily::AMH;
    if (bivariate_only && dim != 2) {
        throw parameter_error(std::string(to_string(family)) +
                              " copula is bivariate only, got dim " + std::to_string(dim));
    }
    switch (family) {
    case CopulaFamily::Gumbel:
        if (!(theta >= 1.0)) throw parameter_error("gumbel requires theta >= 1");
        break;
    case CopulaFamily::FGM:
        if (!(theta >= -1.0 && theta <= 1.0)) {
            throw parameter_error("fgm requires theta in [-1, 1]");
        }
        break;
    case CopulaFamily::Frank:
        if (theta == 0.0 || std::isnan(theta)) {
            throw parameter_error("frank requires theta != 0");
        }
        if (dim > 2 && !(theta > 0.0)) {
            throw parameter_error("frank requires theta > 0 when dim > 2");
        }
        break;
    case CopulaFamily::Joe:
        if (!(theta >= 1.0)) throw parameter_error("joe requires theta >= 1");
        break;
    case CopulaFamily::AMH:
        if (!(theta >= -1.0 && theta < 1.0)) {
            throw parameter_error("amh requires theta in [-1, 1)");
        }
        break;
    default:
        break;
    }
}

double frank_nd(std::span<const double> v, double theta) {
    // C(v) = -(1/theta) log(1 + prod expm1(-theta v_i) / expm1(-theta)^{n-1})
    const double denom = std::expm1(-theta);
    double prod = 1.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        prod *= std::expm1(-theta * v[i]);
        if (i > 0) prod /= denom;
    }
    return -std::log1p(prod) / theta;
}

double gumbel_nd(std::span<const double> v, double theta) {
    double acc = 0.0;
    for (double x : v) acc += std::pow(-std::log(x), theta);
    return std::exp(-std::pow(acc, 1.0 / theta));
}

double joe_2d(double u, double v, double theta) {
    // 1 - (x + y - xy)^{1/theta} with x = (1-u)^theta, written through the
    // complements 1-x, 1-y so small copula values keep full precision
    const double cx = -std::expm1(theta * std::log1p(-u)); // 1 - (1-u)^theta
    const double cy = -std::expm1(theta * std::log1p(-v));
    const double w = cx * cy;
    return -std::expm1(std::log1p(-w) / theta);
}

} // namespace

CopulaSpec::CopulaSpec(CopulaFamily family, double theta, int dim)
    : family_(family), theta_(theta), dim_(dim) {
    validate(family, theta, dim);
}

double CopulaSpec::eval(std::span<const double> v) const {
    if (static_cast<int>(v.size()) != dim_) {
        throw dimension_error("copula eval: expected " + std::to_string(dim_) +
                              " coordinates, got " + std::to_string(v.size()));
    }
    int below_one = -1;
    int count_below_one = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double x = v[i];
        if (!(x >= 0.0 && x <= 1.0)) {
            throw domain_error("copula coordinate outside [0,1]: " + std::to_string(x));
        }
        if (x == 0.0) return 0.0;
        if (x < 1.0) {
            below_one = static_cast<int>(i);
            ++count_below_one;
        }
    }
    if (count_below_one == 0) return 1.0;
    if (count_below_one == 1) return v[static_cast<std::size_t>(below_one)];

    switch (family_) {
    case CopulaFamily::Independence: {
        double p = 1.0;
        for (double x : v) p *= x;
        return p;
    }
    case CopulaFamily::Comonotone:
        return *std::min_element(v.begin(), v.end());
    case CopulaFamily::Countermonotone:
        return std::max(v[0] + v[1] - 1.0, 0.0);
    case CopulaFamily::Gumbel:
        return gumbel_nd(v, theta_);
    case CopulaFamily::FGM:
        return v[0] * v[1] * (1.0 + theta_ * (1.0 - v[0]) * (1.0 - v[1]));
    case CopulaFamily::Frank:
        if (std::fabs(theta_) < kFrankIndependenceCutoff) {
            double p = 1.0;
            for (double x : v) p *= x;
            return p;
        }
        return frank_nd(v, theta_);
    case CopulaFamily::Joe:
        return joe_2d(v[0], v[1], theta_);
    case CopulaFamily::AMH:
        return v[0] * v[1] / (1.0 - theta_ * (1.0 - v[0]) * (1.0 - v[1]));
    }
    return std::numeric_limits<double>::quiet_NaN();
}

double CopulaSpec::eval(double u, double v) const {
    const double uv[2] = {u, v};
    return eval(std::span<const double>(uv, 2));
}

namespace {

void require_bivariate(const CopulaSpec& spec, const char* op) {
    if (spec.dim() != 2) {
        throw dimension_error(std::string(op) + " is defined for dim = 2 only, got dim " +
                              std::to_string(spec.dim()));
    }
}

void check_unit_square(double u, double v) {
    if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0)) {
        throw domain_error("coordinates outside the unit square");
    }
}

double joe_survival_2d(double u, double v, double theta) {
    // C-bar(u,v) = u + v - (u^t + v^t - u^t v^t)^{1/t}, rearranged so the
    // subtraction never cancels: with p = u^t <= q = v^t,
    //   C-bar = u - v*expm1(log1p(p(1-q)/q)/t).
    const double p = std::pow(u, theta);
    const double q = std::pow(v, theta);
    double lo = p, hi = q, alo = u, ahi = v;
    if (p > q) {
        lo = q;
        hi = p;
        alo = v;
        ahi = u;
    }
    const double r = lo * (1.0 - hi) / hi;
    return alo - ahi * std::expm1(std::log1p(r) / theta);
}

} // namespace

double eval_survival(const CopulaSpec& spec, double u, double v) {
    require_bivariate(spec, "eval_survival");
    check_unit_square(u, v);
    if (u == 0.0 || v == 0.0) return 0.0;
    if (u == 1.0) return v;
    if (v == 1.0) return u;
    if (spec.family() == CopulaFamily::Joe) {
        return joe_survival_2d(u, v, spec.theta());
    }
    return u + v - 1.0 + spec.eval(1.0 - u, 1.0 - v);
}

double eval_cocopula(const CopulaSpec& spec, double u, double v) {
    require_bivariate(spec, "eval_cocopula");
    check_unit_square(u, v);
    return 1.0 - spec.eval(1.0 - u, 1.0 - v);
}

double eval_dualcopula(const CopulaSpec& spec, double u, double v) {
    require_bivariate(spec, "eval_dualcopula");
    check_unit_square(u, v);
    return u + v - spec.eval(u, v);
}

std::pair<double, double> frechet_envelope(double u, double v) {
    check_unit_square(u, v);
    return {std::max(u + v - 1.0, 0.0), std::min(u, v)};
}

double DerivedCopula::eval(double u, double v) const {
    switch (transform) {
    case CopulaTransform::Survival:
        return eval_survival(base, u, v);
    case CopulaTransform::CoCopula:
        return eval_cocopula(base, u, v);
    case CopulaTransform::DualCopula:
        return eval_dualcopula(base, u, v);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

CopulaFamily copula_family_from_string(std::string_view name) {
    if (name == "independence") return CopulaFamily::Independence;
    if (name == "comonotone") return CopulaFamily::Comonotone;
    if (name == "countermonotone") return CopulaFamily::Countermonotone;
    if (name == "gumbel") return CopulaFamily::Gumbel;
    if (name == "fgm") return CopulaFamily::FGM;
    if (name == "frank") return CopulaFamily::Frank;
    if (name == "joe") return CopulaFamily::Joe;
    if (name == "amh") return CopulaFamily::AMH;
    throw parameter_error("unknown copula family: " + std::string(name));
}

std::string_view to_string(CopulaFamily family) {
    switch (family) {
    case CopulaFamily::Independence: return "independence";
    case CopulaFamily::Comonotone: return "comonotone";
    case CopulaFamily::Countermonotone: return "countermonotone";
    case CopulaFamily::Gumbel: return "gumbel";
    case CopulaFamily::FGM: return "fgm";
    case CopulaFamily::Frank: return "frank";
    case CopulaFamily::Joe: return "joe";
    case CopulaFamily::AMH: return "amh";
    }
    return "?";
}

} // namespace copfrac
