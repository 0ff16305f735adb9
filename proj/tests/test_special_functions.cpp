#include "copfrac/special_functions.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace copfrac;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("gamma matches high-precision reference values") {
    // reference values from a 50-digit evaluation
    struct Ref {
        double x;
        double gamma;
    };
    const Ref refs[] = {
        {0.05, 19.470085204113548},   {0.1, 9.5135076986687312},
        {0.25, 3.6256099082219083},   {0.5, 1.7724538509055160},
        {1.0, 1.0},                   {1.5, 0.88622692545275801},
        {1.9, 0.96176583190738742},   {1.999, 0.99957762742373040},
        {2.0, 1.0},                   {3.0, 2.0},
        {4.6788, 16.062651755885532}, {10.0, 362880.0},
        {25.5, 3.1234118399083722e24}, {50.0, 6.0828186403426752e62},
    };
    for (const auto& r : refs) {
        CHECK(gamma_positive(r.x) == doctest::Approx(r.gamma).epsilon(1e-12));
    }
}

TEST_CASE("gamma recurrence Gamma(x+1) = x Gamma(x)") {
    for (double x = 0.1; x <= 10.0; x += 0.15) {
        const double lhs = gamma_positive(x + 1.0);
        const double rhs = x * gamma_positive(x);
        CHECK(std::fabs(lhs - rhs) <= 1e-11 * std::fabs(lhs));
    }
}

TEST_CASE("gamma rejects the nonpositive axis") {
    CHECK_THROWS_AS(gamma_positive(0.0), copfrac::domain_error);
    CHECK_THROWS_AS(gamma_positive(-1.5), copfrac::domain_error);
}

TEST_CASE("fractional order is confined to (0,1)") {
    CHECK_THROWS_AS(FractionalOrder(0.0), parameter_error);
    CHECK_THROWS_AS(FractionalOrder(1.0), parameter_error);
    CHECK_THROWS_AS(FractionalOrder(-0.2), parameter_error);
    CHECK_THROWS_AS(FractionalOrder(1.5), parameter_error);
    CHECK(FractionalOrder(0.5).value() == 0.5);
    CHECK(FractionalOrder(0.5).inverse() == 2.0);
}

TEST_CASE("eta factorial") {
    CHECK(eta_factorial(FractionalOrder(0.5)) ==
          doctest::Approx(0.88622692545275801).epsilon(1e-12));
    CHECK(eta_factorial(FractionalOrder(0.999)) ==
          doctest::Approx(0.99957762742373040).epsilon(1e-12));
    // (Gamma(1.5))^(1/0.5) = pi/4
    const double v = std::pow(eta_factorial(FractionalOrder(0.5)), 2.0);
    CHECK(v == doctest::Approx(kPi / 4.0).epsilon(1e-12));
}

TEST_CASE("inverse Mittag-Leffler log branch") {
    const FractionalOrder half(0.5);
    CHECK(inverse_mlf_log(1.0, half) == 0.0);
    CHECK(inverse_mlf_log(std::exp(-1.0), half) ==
          doctest::Approx(-0.88622692545275801).epsilon(1e-12));
    // Gamma(1.9) * log(0.25)
    CHECK(inverse_mlf_log(0.25, FractionalOrder(0.9)) ==
          doctest::Approx(-1.3332905494896376).epsilon(1e-10));
    CHECK_THROWS_AS(inverse_mlf_log(0.0, half), copfrac::domain_error);
    CHECK_THROWS_AS(inverse_mlf_log(-0.5, half), copfrac::domain_error);
    CHECK_THROWS_AS(inverse_mlf_log(1.0 + 1e-9, half), copfrac::domain_error);
}

TEST_CASE("additive rule holds exactly under the log form") {
    const FractionalOrder eta(0.7);
    for (double u = 0.05; u <= 1.0; u += 0.19) {
        for (double v = 0.05; v <= 1.0; v += 0.19) {
            const double joint = inverse_mlf_log(u * v, eta);
            const double split = inverse_mlf_log(u, eta) + inverse_mlf_log(v, eta);
            CHECK(std::fabs(joint - split) <= 1e-12 * std::max(1.0, std::fabs(joint)));
        }
    }
}

TEST_CASE("fractional log kernel") {
    CHECK(fractional_log_kernel(1.0, FractionalOrder(0.7)) == 0.0);
    CHECK(fractional_log_kernel(std::exp(-1.0), FractionalOrder(0.5)) ==
          doctest::Approx(kPi / 4.0).epsilon(1e-12));
    // (Gamma(1.5) log 2)^2
    CHECK(fractional_log_kernel(0.5, FractionalOrder(0.5)) ==
          doctest::Approx(0.37734691473371078).epsilon(1e-12));
    CHECK_THROWS_AS(fractional_log_kernel(0.0, FractionalOrder(0.5)), copfrac::domain_error);
}

TEST_CASE("kernel is strictly decreasing in its argument") {
    for (double eta : {0.3, 0.6, 0.9}) {
        const FractionalOrder ord(eta);
        double prev = fractional_log_kernel(1e-6, ord);
        for (double x = 1e-3; x < 1.0; x += 1e-3) {
            const double k = fractional_log_kernel(x, ord);
            CHECK(k < prev);
            prev = k;
        }
    }
}

TEST_CASE("2F1(1,b;2;z) series") {
    CHECK(gauss_2f1_1b2(4.0, 0.0) == 1.0);
    CHECK(gauss_2f1_1b2(4.0, -0.5) == doctest::Approx(0.4691358024691358).epsilon(1e-10));
    const double z = -0.5;
    const double rational = (6.0 - 6.0 * z + 2.0 * z * z) / (6.0 * std::pow(1.0 - z, 3.0));
    CHECK(gauss_2f1_1b2(4.0, z) == doctest::Approx(rational).epsilon(1e-10));

    // reference values from a 50-digit evaluation at z = -1/2
    CHECK(std::fabs(gauss_2f1_1b2(2.0, -0.5) - 0.66666666666666667) < 1e-13);
    CHECK(std::fabs(gauss_2f1_1b2(3.0, -0.5) - 0.55555555555555556) < 1e-13);
    CHECK(std::fabs(gauss_2f1_1b2(4.0, -0.5) - 0.46913580246913580) < 1e-13);
    CHECK(std::fabs(gauss_2f1_1b2(6.0, -0.5) - 0.34732510288065844) < 1e-13);

    CHECK_THROWS_AS(gauss_2f1_1b2(4.0, 1.0), copfrac::domain_error);
    CHECK_THROWS_AS(gauss_2f1_1b2(4.0, -1.2), copfrac::domain_error);
    CHECK_THROWS_AS(gauss_2f1_1b2(0.0, -0.5), copfrac::domain_error);
}
