#pragma once

#include "copfrac/copulas.hpp"
#include "copfrac/margins.hpp"
#include "copfrac/measures.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace copfrac {

/// A joint distribution as copula plus margins (Sklar composition).
struct JointModel {
    CopulaSpec copula;
    MarginVector margins;
};

double joint_cdf(const JointModel& model, std::span<const double> z);
/// Joint survival function via the survival copula; bivariate only.
double joint_survival(const JointModel& model, std::span<const double> z);

struct OrderReport {
    bool holds = false;
    double max_violation = 0.0;
    std::optional<std::vector<double>> witness;
};

/// a <=_LO b iff F_a >= F_b pointwise; checked on a tensor grid over the
/// intersected support (infinite axes are capped at extreme quantiles).
OrderReport check_lower_orthant(const JointModel& a, const JointModel& b,
                                int grid_points_per_axis, double tol);

/// a <=_UO b iff the survival function of a is <= that of b pointwise.
OrderReport check_upper_orthant(const JointModel& a, const JointModel& b,
                                int grid_points_per_axis, double tol);

enum class PropositionId {
    P3_3,
    P3_4,
    P3_5,
    P3_6_1,
    P3_6_2,
    P3_6_3,
    P4_2,
    P4_3_probe,
    P4_4,
    P4_5,
    P4_6,
    P4_7,
    P5_1,
    P5_2,
    P5_3,
    P5_4,
    P3_1_sandwich,
    P3_2_probe,
};

/// One verified comparison. For inequality checks pass means
/// lhs <= rhs + tol and gap = rhs - lhs; for equality/match checks pass
/// means gap = |lhs - rhs| <= tol. Probe records never assert (pass stays
/// true and `asserted` is false); they document the observed direction.
struct ScenarioResult {
    std::string id;
    std::string scenario;
    bool hypotheses_ok = true;
    double lhs = 0.0;
    double rhs = 0.0;
    double gap = 0.0;
    bool pass = true;
    bool asserted = true;
};

std::vector<ScenarioResult> verify_proposition(PropositionId id, double tol = 1e-6);

std::vector<PropositionId> all_propositions();
std::optional<PropositionId> proposition_from_string(std::string_view name);
std::string_view to_string(PropositionId id);

} // namespace copfrac
