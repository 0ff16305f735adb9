#pragma once

#include "copfrac/errors.hpp"

#include <span>
#include <string>
#include <string_view>
#include <utility>

namespace copfrac {

enum class CopulaFamily {
    Independence,
    Comonotone,
    Countermonotone,
    Gumbel,
    FGM,
    Frank,
    Joe,
    AMH,
};

enum class CopulaTransform { Survival, CoCopula, DualCopula };

/// A parameterized copula family instance of fixed dimension.
///
/// Parameter ranges: Gumbel theta >= 1; FGM theta in [-1,1]; Frank theta != 0
/// (theta > 0 when dim > 2); Joe theta >= 1; AMH theta in [-1,1).
/// Countermonotone, FGM, Joe and AMH are bivariate only; Independence,
/// Comonotone, Gumbel and Frank extend to any dim >= 2.
class CopulaSpec {
public:
    explicit CopulaSpec(CopulaFamily family, double theta = 0.0, int dim = 2);

    /// C(v). Coordinates must lie in [0,1]; exact boundary coordinates
    /// short-circuit to the copula axiom values before the family formula
    /// runs (Gumbel/Joe would otherwise hit 0*inf forms).
    double eval(std::span<const double> v) const;
    double eval(double u, double v) const;

    CopulaFamily family() const noexcept { return family_; }
    double theta() const noexcept { return theta_; }
    int dim() const noexcept { return dim_; }

    bool operator==(const CopulaSpec& other) const noexcept {
        return family_ == other.family_ && theta_ == other.theta_ && dim_ == other.dim_;
    }

private:
    CopulaFamily family_;
    double theta_;
    int dim_;
};

/// Survival copula C-bar(u,v) = u + v - 1 + C(1-u, 1-v); bivariate only.
/// Joe uses an algebraically identical direct form that avoids the
/// cancellation the transform suffers when the value is far below 1 ulp
/// of the operands; every other family evaluates the transform.
double eval_survival(const CopulaSpec& spec, double u, double v);

/// Co-copula C-hat(u,v) = 1 - C(1-u, 1-v); bivariate only.
double eval_cocopula(const CopulaSpec& spec, double u, double v);

/// Dual copula C-tilde(u,v) = u + v - C(u,v); bivariate only.
double eval_dualcopula(const CopulaSpec& spec, double u, double v);

/// Fréchet–Hoeffding envelope (W(u,v), M(u,v)) =
/// (max{u+v-1, 0}, min{u, v}); W <= C <= M for every copula C.
std::pair<double, double> frechet_envelope(double u, double v);

/// A copula transformed by one of the survival/co-/dual constructs.
struct DerivedCopula {
    CopulaSpec base;
    CopulaTransform transform;

    double eval(double u, double v) const;
};

CopulaFamily copula_family_from_string(std::string_view name);
std::string_view to_string(CopulaFamily family);

} // namespace copfrac
