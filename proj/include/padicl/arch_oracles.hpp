#pragma once

// Numerical quadrature of the archimedean integrals, used only to check the
// exact closed forms.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>
#include <numbers>

namespace padicl::oracle {

// pi * int_1^inf (x + 1/x)^{-2s-3-t} (x^2 - x^{-2}) x^{-1} dx
inline long double ct_quadrature(long double s, int t) {
    boost::math::quadrature::exp_sinh<long double> q;
    auto f = [&](long double x) {
        if (x <= 1) return 0.0L;
        return std::exp((-2 * s - 3 - t) * std::log(x + 1 / x)) * (x - 1 / (x * x * x));
    };
    return std::numbers::pi_v<long double> * q.integrate(f, 1.0L, std::numeric_limits<long double>::infinity());
}

// pi * int_1^inf int_0^inf lambda^{s+3t/2-5/2} (a^2+a^{-2})^{-s+t/2-3/2}
//      e^{-2 pi c lambda (a^2+a^{-2})} (a - a^{-3}) dlambda da
// evaluated as a genuine nested quadrature.
inline long double lambda_a_double_integral(long double s, int t, long double c) {
    const long double pi = std::numbers::pi_v<long double>;
    const long double inf = std::numeric_limits<long double>::infinity();
    boost::math::quadrature::exp_sinh<long double> outer, inner;
    auto fa = [&](long double a) {
        if (a <= 1) return 0.0L;
        long double u = a * a + 1 / (a * a);
        auto fl = [&](long double lam) {
            if (lam <= 0) return 0.0L;
            return std::exp((s + 1.5L * t - 2.5L) * std::log(lam) - 2 * pi * c * lam * u);
        };
        long double in = inner.integrate(fl, 0.0L, inf);
        if (in == 0) return 0.0L;
        return in * std::pow(u, -s + t / 2.0L - 1.5L) * (a - 1 / (a * a * a));
    };
    return pi * outer.integrate(fa, 1.0L, inf);
}

// The closed Gamma form pi (2 pi c)^{-s-3t/2+3/2} Gamma(s+(3t-3)/2) / (2s+t-1).
inline long double lambda_a_closed(long double s, int t, long double c) {
    const long double pi = std::numbers::pi_v<long double>;
    long double A = s + 1.5L * t - 1.5L;
    return pi * std::pow(2 * pi * c, -A) * boost::math::tgamma(A) / (2 * s + t - 1);
}

}  // namespace padicl::oracle
