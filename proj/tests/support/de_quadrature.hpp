// Test-only tanh-sinh (double-exponential) quadrature over (0,1) and the
// unit square. Independent of the library's Gauss-Legendre path; used as the
// brute-force oracle for measure values.
#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

struct DeRule {
    std::vector<double> x;
    std::vector<double> w;
};

inline DeRule de_rule(double h) {
    DeRule rule;
    const double pi_half = 1.5707963267948966;
    const double t_max = 3.9;
    const int kmax = static_cast<int>(t_max / h);
    for (int k = -kmax; k <= kmax; ++k) {
        const double t = k * h;
        const double s = pi_half * std::sinh(t);
        const double x = 0.5 * (1.0 + std::tanh(s));
        const double c = std::cosh(s);
        const double w = h * pi_half * std::cosh(t) / (2.0 * c * c);
        if (x > 0.0 && x < 1.0 && w > 1e-320) {
            rule.x.push_back(x);
            rule.w.push_back(w);
        }
    }
    return rule;
}

inline double de_integrate_1d(const std::function<double(double)>& f, int level = 7) {
    const DeRule rule = de_rule(std::pow(2.0, -level));
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
        const double y = rule.w[i] * f(rule.x[i]) - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

inline double de_integrate_2d(const std::function<double(double, double)>& f, int level = 6) {
    const DeRule rule = de_rule(std::pow(2.0, -level));
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
        for (std::size_t j = 0; j < rule.x.size(); ++j) {
            const double y = rule.w[i] * rule.w[j] * f(rule.x[i], rule.x[j]) - comp;
            const double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
    }
    return sum;
}

} // namespace oracle
