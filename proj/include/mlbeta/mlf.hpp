#pragma once

// Mittag-Leffler functions E_lambda, E_{lambda,beta} and the three-parameter
// (Prabhakar) form E^delta_{lambda,beta} on the real line.
//
// Negative axis, by |x|:
//   small      Taylor series (rejected if cancellation is too large)
//   large      asymptotic algebraic expansion (+ the oscillating pole pair for
//              lambda > 1), accepted when its smallest term is negligible
//   otherwise  lambda < 1: Laplace inversion on a parabolic contour
//              lambda = 1: Kummer transformation of 1F1
//              lambda > 1, delta = 1: real spectral integral + pole pair
//              lambda > 1, delta != 1: 50-digit Taylor series
// Positive axis: Taylor series in log space, or the exponential asymptote.

#include <cmath>
#include <complex>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "core.hpp"
#include "quad.hpp"

namespace mlbeta::ml {

struct Config {
    double crossover = 5.0;  // |x| at or below which the Taylor series is tried first
    int max_terms = 500;     // series term cap
    double x_max = 1e8;      // accuracy is stated for x >= -x_max
};

struct MlParams {
    double lambda = 1.0;
    double beta = 1.0;
    double delta = 1.0;

    void validate() const {
        detail::require(std::isfinite(lambda) && lambda > 0 && lambda <= 2,
                        "Mittag-Leffler: lambda must lie in (0, 2]");
        detail::require(std::isfinite(beta) && beta > 0, "Mittag-Leffler: beta must be positive");
        detail::require(std::isfinite(delta) && delta > 0,
                        "Mittag-Leffler: delta must be positive");
    }
};

class MittagLeffler {
public:
    explicit MittagLeffler(double lambda, double beta = 1.0, double delta = 1.0, Config cfg = {})
        : MittagLeffler(MlParams{lambda, beta, delta}, cfg) {}

    explicit MittagLeffler(MlParams prm, Config cfg = {}) : p_(prm), cfg_(cfg) {
        p_.validate();
        detail::require(cfg_.max_terms >= 10, "Mittag-Leffler: max_terms too small");
        const double l = p_.lambda, b = p_.beta, d = p_.delta;
        is_exp_ = l == 1.0 && b == 1.0 && d == 1.0;
        coef_.resize(cfg_.max_terms);
        double ratio = 1.0;  // (delta)_n / n!
        for (int n = 0; n < cfg_.max_terms; ++n) {
            if (n > 0) ratio *= (d + n - 1) / n;
            double x = l * n + b;
            coef_[n] = x < 170.0 && std::isfinite(ratio) ? ratio * rgamma(x) : std::exp(log_coef(n));
        }
        // E(-y) ~ sum_k asym_[k] y^{-delta-k}
        double pk = 1.0;
        for (int k = 0; k < 80; ++k) {
            if (k > 0) pk *= (d + k - 1) / k;
            asym_.push_back((k % 2 ? -pk : pk) * rgamma(b - l * (d + k)));
        }
    }

    const MlParams& params() const { return p_; }

    double operator()(double x) const {
        detail::require(std::isfinite(x), "Mittag-Leffler: argument must be finite");
        detail::require(x >= -cfg_.x_max, "Mittag-Leffler: argument below -x_max");
        return eval(x);
    }

    // E(-exp(log_y)) as a signed log, usable for arguments far beyond the
    // double range of y itself.
    SignedLog neg_log(double log_y) const {
        if (log_y < -745.0) return SignedLog::from(rgamma(p_.beta));
        if (is_exp_) return {-std::exp(log_y), 1};
        if (log_y <= 700.0) return SignedLog::from(eval(-std::exp(log_y)));
        if (p_.lambda < 2.0 || p_.delta != 1.0) {
            for (int k = 0; k < static_cast<int>(asym_.size()); ++k)
                if (asym_[k] != 0.0)
                    return {std::log(std::fabs(asym_[k])) - (p_.delta + k) * log_y,
                            asym_[k] > 0 ? 1 : -1};
        }
        return {nan, 1};
    }

private:
    double eval(double x) const {
        if (x == 0.0) return rgamma(p_.beta);
        if (is_exp_) {
            if (x > 709.78) throw overflow_error("Mittag-Leffler: result overflows");
            return std::exp(x);
        }
        if (p_.lambda == 2.0 && p_.delta == 1.0 && (p_.beta == 1.0 || p_.beta == 2.0))
            return closed_form_lambda2(x);
        return x > 0 ? positive(x) : negative(-x);
    }

    using mp = boost::multiprecision::cpp_bin_float_50;

    MlParams p_;
    Config cfg_;
    bool is_exp_ = false;
    std::vector<double> coef_;  // (delta)_n / (n! Gamma(lambda n + beta))
    std::vector<double> asym_;

    double log_coef(int n) const {
        const double d = p_.delta;
        double lp = d == 1.0 ? 0.0 : log_gamma(d + n) - log_gamma(d) - log_gamma(n + 1.0);
        return lp - log_gamma(p_.lambda * n + p_.beta);
    }

    double closed_form_lambda2(double x) const {
        double r = std::sqrt(std::fabs(x));
        if (x > 0) {
            if (r > 709.78) throw overflow_error("Mittag-Leffler: result overflows");
            return p_.beta == 1.0 ? std::cosh(r) : std::sinh(r) / r;
        }
        return p_.beta == 1.0 ? std::cos(r) : std::sin(r) / r;
    }

    // Taylor series with double coefficients; ok=false if it did not converge
    // or cancellation cost more than ~2 digits.
    double taylor(double x, bool& ok) const {
        double sum = 0.0, comp = 0.0, pw = 1.0, maxabs = 0.0;
        ok = false;
        for (int n = 0; n < cfg_.max_terms; ++n) {
            double term = coef_[n] * pw;
            if (!std::isfinite(term)) return nan;
            double t = sum + term;
            comp += std::fabs(sum) >= std::fabs(term) ? (sum - t) + term : (term - t) + sum;
            sum = t;
            maxabs = std::max(maxabs, std::fabs(term));
            if (n > 2 && std::fabs(term) <= 0.25 * eps * std::fabs(sum + comp) &&
                std::fabs(coef_[n - 1] * pw / x) <= eps * std::fabs(sum + comp)) {
                ok = true;
                break;
            }
            if (coef_[n] == 0.0 && n > 10) {
                ok = true;
                break;
            }
            pw *= x;
        }
        sum += comp;
        if (ok && maxabs > 64.0 * std::fabs(sum)) ok = false;
        return sum;
    }

    // Asymptotic expansion of E(-y). Truncated where an envelope of the term
    // sizes is smallest (|1/Gamma(x)| <= Gamma(1-x)/pi for x < 1), so an
    // accidentally tiny coefficient cannot fake convergence; ok=false unless
    // that envelope term is negligible.
    double asymptotic_negative(double y, bool& ok) const {
        const double l = p_.lambda, b = p_.beta, d = p_.delta;
        ok = false;
        if (l > 1.0 && d != 1.0) return nan;
        if (l == 1.0 && y < 40.0) return nan;
        const double ly = std::log(y);
        double sum = 0.0, best = inf, pk_log = 0.0;
        for (int k = 0; k < static_cast<int>(asym_.size()); ++k) {
            if (k > 0) pk_log += std::log((d + k - 1) / k);
            double x = b - l * (d + k);
            double env_log = x >= 1.0 ? std::log(std::fabs(rgamma(x)) + 1e-300)
                                      : log_gamma(1.0 - x) - std::log(pi);
            double lterm = pk_log + env_log - (d + k) * ly;
            if (lterm > best + 1e-12 && k > 1) break;
            best = std::min(best, lterm);
            sum += asym_[k] * std::exp(-(d + k) * ly);
        }
        double extra = 0.0;
        if (l > 1.0) {
            double t = std::pow(y, 1.0 / l);
            extra = (2.0 / l) * std::pow(y, (1.0 - b) / l) * std::exp(t * cos_pi(1.0 / l)) *
                    std::cos(t * sin_pi(1.0 / l) + (1.0 - b) * pi / l);
        }
        double total = sum + extra;
        ok = best <= std::log(1e-16 * std::max(std::fabs(total), 1e-300));
        return total;
    }

    double negative(double y) const {
        bool ok = false;
        if (y <= cfg_.crossover) {
            double v = taylor(-y, ok);
            if (ok) return v;
        }
        double v = asymptotic_negative(y, ok);
        if (ok) return v;
        const double l = p_.lambda;
        if (l < 1.0) return contour(-y);
        if (l == 1.0) return kummer(y);
        if (p_.delta == 1.0) return spectral(y, p_.beta);
        return taylor_mp(-y);
    }

    double positive(double x) const {
        const double l = p_.lambda, b = p_.beta;
        double lt = std::log(x) / l;  // log of x^{1/lambda}
        double t = std::exp(lt);
        if (t + (1.0 - b) * lt - std::log(l) > 709.0)
            throw overflow_error("Mittag-Leffler: result overflows");
        if (p_.delta == 1.0 && t >= 40.0) {
            // (1/l) x^{(1-b)/l} e^{x^{1/l}} - sum_k x^{-k}/Gamma(b - l k)
            double v = std::exp(t + (1.0 - b) * lt - std::log(l));
            double corr = 0.0;
            for (int k = 1; k < 20; ++k) {
                double term = std::pow(x, -k) * rgamma(b - l * k);
                corr -= term;
                if (std::fabs(term) < eps * v) break;
            }
            return v + corr;
        }
        // positive terms; summed in log space so large n cannot overflow
        double lx = std::log(x), sum = 0.0;
        double peak = -inf;
        for (int n = 0; n < 200000; ++n) {
            double lc = n < cfg_.max_terms ? std::log(coef_[n]) : log_coef(n);
            if (n < cfg_.max_terms && coef_[n] == 0.0) lc = log_coef(n);
            double lterm = lc + n * lx;
            if (lterm > 709.0) throw overflow_error("Mittag-Leffler: result overflows");
            double term = std::exp(lterm);
            sum += term;
            peak = std::max(peak, lterm);
            if (lterm < peak && term <= 0.25 * eps * sum) return sum;
        }
        throw convergence_error("Mittag-Leffler: positive-axis series did not converge");
    }

    // Laplace inversion of s^{l d - b} (s^l - z)^{-d} along the parabola
    // s = mu (1 + i u)^2 (lambda < 1, so no poles off the branch cut).
    double contour(double z) const {
        const double l = p_.lambda, b = p_.beta, d = p_.delta;
        const double log_eps_target = std::log(1e-15);
        const double log_mach = std::log(eps);
        const double pj = std::max(0.0, -2.0 * (l * d - b + 1.0));
        double phibar = 0.01, sq_phibar = 0.1, sq_mu = 0, A = 0;
        int N = 0;
        const double f_min = 1.0, f_max = 10.0, f_tar = 5.0;
        for (int it = 0; it < 100; ++it) {
            double lep = log_eps_target / phibar;
            N = static_cast<int>(std::ceil(phibar / pi * (1.0 - 1.5 * lep + std::sqrt(1.0 - 2.0 * lep))));
            A = pi * N / phibar;
            sq_mu = sq_phibar * std::fabs(4.0 - A) / std::fabs(7.0 - std::sqrt(1.0 + 12.0 * A));
            double fbar = std::pow(sq_phibar / sq_mu, -pj);
            if (pj < 1e-14 || (f_min < fbar && fbar < f_max)) break;
            sq_phibar = std::pow(f_tar, -1.0 / pj) * sq_mu;
            phibar = sq_phibar * sq_phibar;
        }
        double mu = sq_mu * sq_mu;
        double h = (-3.0 * A - 2.0 + 2.0 * std::sqrt(1.0 + 12.0 * A)) / (4.0 - A) / N;
        const double threshold = log_eps_target - log_mach;
        if (mu > threshold) {
            double Q = pj < 1e-14 ? 0.0 : std::pow(f_tar, -1.0 / pj) * std::sqrt(mu);
            phibar = Q * Q;
            if (phibar < threshold) {
                double w = std::sqrt(log_mach / (log_mach - log_eps_target));
                double u = std::sqrt(-phibar / log_mach);
                mu = threshold;
                N = static_cast<int>(std::ceil(w * log_eps_target / (2.0 * pi * (u * w - 1.0))));
                h = w / N;
            } else {
                // strong origin singularity: keep the round-off-safe parabola
                // and refine the step instead
                double w = std::sqrt(log_mach / (log_mach - log_eps_target));
                mu = threshold;
                N = 2 * static_cast<int>(std::ceil(-w * log_eps_target / (2.0 * pi)));
                h = w / N;
            }
        }
        // term(-u) = -conj(term(u)), so only the imaginary parts of k >= 0 survive
        using cd = std::complex<double>;
        auto term = [&](double u) {
            cd s = mu * cd(1.0, u) * cd(1.0, u);
            cd ds = 2.0 * mu * cd(-u, 1.0);
            cd ls = std::log(s);
            cd F = std::exp((l * d - b) * ls - d * std::log(std::exp(l * ls) - z));
            return (std::exp(s) * F * ds).imag();
        };
        double acc = term(0.0);
        for (int k = 1; k <= N; ++k) acc += 2.0 * term(h * k);
        return h * acc / (2.0 * pi);
    }

    // lambda = 1: E^d_{1,b}(-y) = e^{-y} 1F1(b - d; b; y) / Gamma(b)
    double kummer(double y) const {
        const double a = p_.beta - p_.delta, c = p_.beta;
        double term = 1.0, sum = 1.0;
        for (int n = 0; n < 20 * cfg_.max_terms; ++n) {
            term *= (a + n) / (c + n) * y / (n + 1.0);
            sum += term;
            if (term == 0.0 || (n > y && std::fabs(term) <= 0.25 * eps * std::fabs(sum)))
                return std::exp(-y) * sum * rgamma(c);
        }
        throw convergence_error("Mittag-Leffler: Kummer series did not converge");
    }

    // lambda in (1, 2], delta = 1:
    //   t^{b-1} E(-t^l) = int_0^inf e^{-r t} K(r) dr + pole pair, t = y^{1/l}
    double spectral(double y, double b) const {
        const double l = p_.lambda;
        if (b >= l + 1.0) {
            // E_{l,b}(z) = (E_{l,b-l}(z) - 1/Gamma(b-l)) / z
            return -(spectral(y, b - l) - rgamma(b - l)) / y;
        }
        const double t = std::pow(y, 1.0 / l);
        const double sb = sin_pi(b), sbl = sin_pi(b - l), cl = cos_pi(l);
        auto K = [&](double r) {  // r > 1
            double q = std::pow(r, -l);
            return std::pow(r, -b) * (sb + sbl * q) / (1.0 + 2.0 * cl * q + q * q) / pi;
        };
        // Split at the kernel peak r = 1. Below it r^{l-b} is removed with
        // w = r^a, a = l - b + 1; above it integrate in u = r - 1.
        const double a = l - b + 1.0;
        auto G = [&](double r) {
            double ra = std::pow(r, l);
            return (ra * sb + sbl) / (ra * ra + 2.0 * ra * cl + 1.0) / pi;
        };
        quad::Options o = quad::Options::relative(1e-15);
        o.abs_tol = 1e-17;
        o.max_level = 12;
        auto lo = quad::tanh_sinh(
            [&](double w) {
                double r = std::pow(w, 1.0 / a);
                return std::exp(-r * t) * G(r) / a;
            },
            o);
        auto hi = quad::exp_sinh([&](double u) { return std::exp(-(1.0 + u) * t) * K(1.0 + u); }, 0.0, o);
        if (!lo.converged || !hi.converged)
            throw convergence_error("Mittag-Leffler: spectral integral did not converge");
        double integral = lo.value + hi.value;
        double pole = (2.0 / l) * std::exp(t * cos_pi(1.0 / l)) *
                      std::cos(t * sin_pi(1.0 / l) + (1.0 - b) * pi / l);
        return std::pow(t, 1.0 - b) * (integral + pole);
    }

    // 50-digit Taylor series, refused when the largest term would swamp it.
    double taylor_mp(double x) const {
        const double l = p_.lambda, b = p_.beta, d = p_.delta;
        double lx = std::log(std::fabs(x)), peak = -inf;
        int n_stop = 0;
        for (int n = 0; n < 100000; ++n) {
            double lt = log_coef(n) + n * lx;
            peak = std::max(peak, lt);
            if (lt < peak - 90.0) {
                n_stop = n;
                break;
            }
        }
        if (peak > 24.0 * std::log(10.0) || n_stop == 0)
            throw domain_error("Mittag-Leffler: argument outside the supported range for these parameters");
        mp sum = 0, ratio = 1, pw = 1, xm = x;
        for (int n = 0; n <= n_stop; ++n) {
            if (n > 0) {
                ratio *= (mp(d) + (n - 1)) / n;
                pw *= xm;
            }
            sum += ratio * pw / boost::math::tgamma(mp(l) * n + mp(b));
        }
        return static_cast<double>(sum);
    }
};

inline double ml_one(double lambda, double x) { return MittagLeffler(lambda)(x); }
inline double ml_two(double lambda, double beta, double x) { return MittagLeffler(lambda, beta)(x); }
inline double ml_three(double lambda, double beta, double delta, double x) {
    return MittagLeffler(lambda, beta, delta)(x);
}
inline double ml_prabhakar(double lambda, double gamma, double delta, double x) {
    return ml_three(lambda, gamma, delta, x);
}

// int_0^inf t^{a-1} E^delta_{lambda,gamma}(-w t) dt
//   = Gamma(a) Gamma(delta - a) / (Gamma(delta) w^a Gamma(gamma - a lambda))
inline double ml_mellin_closed_form(double a, double lambda, double gamma, double delta, double w) {
    detail::require(a > 0 && a < delta, "Mellin closed form needs 0 < a < delta");
    detail::require(w > 0 && lambda > 0 && gamma > 0, "Mellin closed form needs w, lambda, gamma > 0");
    detail::require(!detail::is_nonpositive_integer(gamma - a * lambda), "Mellin closed form: Gamma pole");
    int s1, s2, s3;
    double lg = log_gamma(a, &s1) + log_gamma(delta - a, &s2) - log_gamma(delta, &s3) - a * std::log(w);
    return s1 * s2 * s3 * std::exp(lg) * rgamma(gamma - a * lambda);
}

// Mellin transform of E_lambda(-u): int_0^inf u^{r-1} E_lambda(-u) du for
// 0 < r < 1 (closed form pi / (sin(pi r) Gamma(1 - r lambda))).
inline double ml_mellin(double lambda, double r) {
    detail::require(r > 0 && r < 1, "ml_mellin: r must lie in (0, 1)");
    detail::require(!detail::is_nonpositive_integer(1.0 - r * lambda), "ml_mellin: Gamma pole");
    return pi / sin_pi(r) * rgamma(1.0 - r * lambda);
}

}  // namespace mlbeta::ml
