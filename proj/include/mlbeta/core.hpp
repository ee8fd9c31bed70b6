#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mlbeta {

struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

struct overflow_error : std::overflow_error {
    using std::overflow_error::overflow_error;
};

struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr double pi = std::numbers::pi;
inline constexpr double eps = std::numeric_limits<double>::epsilon();
inline constexpr double inf = std::numeric_limits<double>::infinity();
inline constexpr double nan = std::numeric_limits<double>::quiet_NaN();

// A value stored as sign * exp(log_abs). sign == 0 means exactly zero.
struct SignedLog {
    double log_abs = 0.0;
    int sign = 1;

    double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }

    static SignedLog from(double v) {
        if (v == 0.0) return {-inf, 0};
        return {std::log(std::fabs(v)), v > 0 ? 1 : -1};
    }
};

namespace detail {

inline void require(bool ok, const std::string& what) {
    if (!ok) throw domain_error(what);
}

inline bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

}  // namespace detail

// sin(pi x) and cos(pi x) with exact zeros at the integers / half integers.
inline double sin_pi(double x) {
    if (x == std::floor(x)) return 0.0;
    double r = std::remainder(x, 2.0);  // r in [-1, 1]
    double s = 1.0;
    if (r < 0) {
        r = -r;
        s = -1.0;
    }
    if (r > 0.5) r = 1.0 - r;
    return s * std::sin(pi * r);
}

inline double cos_pi(double x) {
    if (x - std::floor(x) == 0.5) return 0.0;
    return sin_pi(x + 0.5);
}

// Thread-safe log|Gamma(x)| (glibc lgamma writes the global signgam).
inline double log_gamma(double x, int* sign = nullptr) {
    int s = 1;
    double v = ::lgamma_r(x, &s);
    if (sign) *sign = s;
    return v;
}

// 1/Gamma(x), zero at the poles.
inline double rgamma(double x) {
    if (detail::is_nonpositive_integer(x)) return 0.0;
    if (x > 0 && x < 170.0) return 1.0 / std::tgamma(x);
    if (x < 0 && x > -170.0) {
        double g = std::tgamma(x);
        if (std::isfinite(g) && g != 0.0) return 1.0 / g;
    }
    int s = 1;
    double lg = log_gamma(x, &s);
    return s * std::exp(-lg);
}

inline double log_beta(double a, double b) {
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

// Classical beta for a, b > 0.
inline double beta(double a, double b) {
    detail::require(a > 0 && b > 0, "beta: arguments must be positive");
    if (a + b < 170.0) {
        double ga = std::tgamma(a), gb = std::tgamma(b), gab = std::tgamma(a + b);
        if (std::isfinite(ga * gb)) return ga / gab * gb;
    }
    return std::exp(log_beta(a, b));
}

// (a)_n
inline double pochhammer(double a, int n) {
    double r = 1.0;
    for (int k = 0; k < n; ++k) r *= a + k;
    return r;
}

inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

// Compensated running sum.
struct KahanSum {
    double sum = 0.0, c = 0.0;
    void add(double x) {
        double y = x - c, t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

inline double relative_residual(double lhs, double rhs) {
    double d = std::fabs(lhs - rhs) / std::max(1.0, std::fabs(rhs));
    return std::isnan(d) ? inf : d;
}

}  // namespace mlbeta
