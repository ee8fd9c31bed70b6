#pragma once

// Distribution on (0, 1) with density
//   f(t) = t^{e1-1} (1-t)^{e2-1} E(-p/t^sigma) E(-q/(1-t)^tau) / B_{p,q}(e1, e2)

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "check.hpp"
#include "core.hpp"
#include "extbeta.hpp"
#include "hyper.hpp"
#include "quad.hpp"

namespace mlbeta {

// Immutable; the normalising constant is computed once here.
class DistSpec {
public:
    DistSpec(const BetaArgs& args, const ExtParams& params, double tol = 1e-13) : args_(args), params_(params) {
        check_admissible(args, params);
        // E_lambda(-x) changes sign for lambda > 1, so the density would too
        detail::require(params.lambda <= 1.0 || (params.p == 0.0 && params.q == 0.0),
                        "distribution needs lambda <= 1 (or p = q = 0) for a non-negative density");
        EvalContext ctx;
        auto r = ext_beta(args, params, {}, tol, ctx);
        if (!r.converged) throw convergence_error("normalising constant: " + r.diagnostic);
        detail::require(r.value > 0 && std::isfinite(r.value), "normalising constant must be positive");
        norm_ = r.value;
        norm_error_ = r.abs_error_estimate;
    }

    const BetaArgs& args() const { return args_; }
    const ExtParams& params() const { return params_; }
    double norm() const { return norm_; }
    double norm_error() const { return norm_error_; }

private:
    BetaArgs args_;
    ExtParams params_;
    double norm_ = 1.0;
    double norm_error_ = 0.0;
};

inline double pdf(const DistSpec& d, double t, double tc, EvalContext& ctx) {
    if (!(t > 0.0 && tc > 0.0)) return 0.0;
    return ext_beta_integrand(ctx, d.args(), d.params(), t, tc) / d.norm();
}

inline double pdf(const DistSpec& d, double t, EvalContext& ctx) {
    if (!(t > 0.0 && t < 1.0)) return 0.0;
    return pdf(d, t, 1.0 - t, ctx);
}

inline double pdf(const DistSpec& d, double t) {
    EvalContext ctx;
    return pdf(d, t, ctx);
}

inline double moment(const DistSpec& d, double nu, EvalContext& ctx, double tol = 1e-13) {
    detail::require(std::isfinite(nu), "moment order must be finite");
    if (nu == 0.0) return 1.0;
    BetaArgs a{d.args().eta1 + nu, d.args().eta2};
    check_admissible(a, d.params());
    return ext_beta_value(a, d.params(), tol, ctx) / d.norm();
}

inline double moment(const DistSpec& d, double nu, double tol = 1e-13) {
    EvalContext ctx;
    return moment(d, nu, ctx, tol);
}

// Variance as (B(e1+2,e2) B(e1,e2) - B(e1+1,e2)^2) / B(e1,e2)^2.
inline std::pair<double, double> mean_variance(const DistSpec& d, EvalContext& ctx, double tol = 1e-13) {
    const double b0 = d.norm();
    const double b1 = ext_beta_value({d.args().eta1 + 1, d.args().eta2}, d.params(), tol, ctx);
    const double b2 = ext_beta_value({d.args().eta1 + 2, d.args().eta2}, d.params(), tol, ctx);
    const double mean = b1 / b0;
    return {mean, (b2 * b0 - b1 * b1) / (b0 * b0)};
}

inline std::pair<double, double> mean_variance(const DistSpec& d, double tol = 1e-13) {
    EvalContext ctx;
    return mean_variance(d, ctx, tol);
}

// Partial sum of sum_n E[X^n] t^n / n! over n < n_terms. Since 0 < X < 1 the
// tail is bounded by |t|^N / N! * e^{|t|}.
inline SeriesResult mgf(const DistSpec& d, double t, int n_terms, EvalContext& ctx, double tol = 1e-13) {
    detail::require(std::isfinite(t), "mgf argument must be finite");
    detail::require(n_terms >= 1 && n_terms <= 200, "mgf term count must lie in [1, 200]");
    SeriesResult r;
    r.converged = true;
    if (t == 0.0) {
        r.value = 1.0;
        r.terms = 1;
        return r;
    }
    double sum = 0.0, w = 1.0;
    for (int n = 0; n < n_terms; ++n) {
        if (n > 0) w *= t / n;
        sum += w * moment(d, n, ctx, tol);
    }
    r.value = sum;
    r.terms = n_terms;
    r.tail_estimate = std::fabs(w * t / n_terms) * std::exp(std::fabs(t));
    return r;
}

inline SeriesResult mgf(const DistSpec& d, double t, int n_terms, double tol = 1e-13) {
    EvalContext ctx;
    return mgf(d, t, n_terms, ctx, tol);
}

inline double cdf(const DistSpec& d, double x, EvalContext& ctx, double tol = 1e-13) {
    if (std::isnan(x)) return nan;
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    auto r = ext_beta_incomplete(x, d.args(), d.params(), tol, ctx);
    if (!r.converged) throw convergence_error("cdf: " + r.diagnostic);
    return std::clamp(r.value / d.norm(), 0.0, 1.0);
}

inline double cdf(const DistSpec& d, double x, double tol = 1e-13) {
    EvalContext ctx;
    return cdf(d, x, ctx, tol);
}

namespace detail {

// Probability mass of (a, b); tanh-sinh when an end of the support is touched,
// Gauss-Kronrod otherwise.
inline quad::QuadResult mass(const DistSpec& d, double a, double b, EvalContext& ctx) {
    quad::Options o;
    o.abs_tol = 1e-15;
    o.rel_tol = 1e-13;
    if (a <= 0.0 || b >= 1.0) {
        return quad::integrate(
            [&](double t, double ta, double tb) {
                // exact distances to whichever support end is near
                double tc = b >= 1.0 ? tb : 1.0 - t;
                double tt = a <= 0.0 ? ta : t;
                return pdf(d, tt, tc, ctx);
            },
            a, b, o);
    }
    return quad::gauss_kronrod([&](double t) { return pdf(d, t, ctx); }, a, b, o);
}

}  // namespace detail

struct SampleResult {
    std::vector<double> values;
    std::vector<char> converged;  // per sample
    bool all_converged = true;
};

namespace detail {

// Antiderivative of a Chebyshev interpolant of the density on one cell,
// zero at the left end.
class CellCdf {
public:
    static constexpr int degree = 24;

    CellCdf(const DistSpec& d, double a, double b, EvalContext& ctx) : a_(a), b_(b) {
        constexpr int M = degree;
        double f[M + 1];
        for (int j = 0; j <= M; ++j) f[j] = pdf(d, map(std::cos(pi * j / M)), ctx);
        double c[M + 3] = {};
        for (int k = 0; k <= M; ++k) {
            double s = 0.5 * (f[0] + (k % 2 ? -f[M] : f[M]));
            for (int j = 1; j < M; ++j) s += f[j] * std::cos(pi * j * k / M);
            c[k] = 2.0 * s / M;
        }
        c[0] *= 0.5;
        c[M] *= 0.5;
        const double half = 0.5 * (b - a);
        b_coef_.assign(M + 2, 0.0);
        b_coef_[1] = (2.0 * c[0] - c[2]) * 0.5 * half;
        for (int k = 2; k <= M + 1; ++k) b_coef_[k] = (c[k - 1] - c[k + 1]) / (2.0 * k) * half;
        double at_left = 0.0;
        for (int k = 1; k <= M + 1; ++k) at_left += (k % 2 ? -1.0 : 1.0) * b_coef_[k];
        b_coef_[0] = -at_left;
        c_.assign(c, c + M + 1);
    }

    double mass() const { return (*this)(b_); }

    double operator()(double x) const {
        double u = (2.0 * x - a_ - b_) / (b_ - a_);
        double b1 = 0.0, b2 = 0.0;
        for (int k = static_cast<int>(b_coef_.size()) - 1; k >= 1; --k) {
            double t = 2.0 * u * b1 - b2 + b_coef_[k];
            b2 = b1;
            b1 = t;
        }
        return u * b1 - b2 + b_coef_[0];
    }

    double density(double x) const {
        double u = (2.0 * x - a_ - b_) / (b_ - a_);
        double b1 = 0.0, b2 = 0.0;
        for (int k = static_cast<int>(c_.size()) - 1; k >= 1; --k) {
            double t = 2.0 * u * b1 - b2 + c_[k];
            b2 = b1;
            b1 = t;
        }
        return u * b1 - b2 + c_[0];
    }

private:
    double map(double u) const { return 0.5 * (a_ + b_) + 0.5 * (b_ - a_) * u; }
    double a_, b_;
    std::vector<double> b_coef_, c_;
};

}  // namespace detail

// Inverse-CDF sampling by bisection. A table of cell masses locates the cell;
// inside it the CDF is the cell's Chebyshev antiderivative when that agrees
// with quadrature, and quadrature otherwise (always in the two end cells).
inline SampleResult sample(const DistSpec& d, std::size_t n, std::uint64_t seed, int cells = 256) {
    constexpr int max_iter = 64;
    constexpr double x_tol = 1e-10;
    detail::require(cells >= 2, "sampler needs at least two cells");
    SampleResult out;
    if (n == 0) return out;
    EvalContext ctx;
    std::vector<double> grid(cells + 1), cum(cells + 1, 0.0);
    for (int k = 0; k <= cells; ++k) grid[k] = static_cast<double>(k) / cells;
    std::vector<std::optional<detail::CellCdf>> fit(cells);
    bool table_ok = true;
    for (int k = 0; k < cells; ++k) {
        auto m = detail::mass(d, grid[k], grid[k + 1], ctx);
        table_ok = table_ok && m.converged;
        cum[k + 1] = cum[k] + m.value;
        if (k == 0 || k == cells - 1) continue;
        detail::CellCdf c(d, grid[k], grid[k + 1], ctx);
        const double x1 = grid[k] + 0.3 * (grid[k + 1] - grid[k]), x2 = grid[k] + 0.7 * (grid[k + 1] - grid[k]);
        const double scale = std::max(m.value * cells, 1e-300);
        bool good = std::fabs(c.mass() - m.value) <= 1e-13 * std::max(m.value, 1e-3 / cells) &&
                    std::fabs(c.density(x1) - pdf(d, x1, ctx)) <= 1e-11 * scale &&
                    std::fabs(c.density(x2) - pdf(d, x2, ctx)) <= 1e-11 * scale;
        if (good) fit[k].emplace(std::move(c));
    }
    const double total = cum[cells];
    std::mt19937_64 rng(seed);
    out.values.reserve(n);
    out.converged.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        // 53-bit uniform in (0, 1)
        const double u = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
        const double target = u * total;
        int k = static_cast<int>(std::upper_bound(cum.begin(), cum.end(), target) - cum.begin()) - 1;
        k = std::clamp(k, 0, cells - 1);
        double lo = grid[k], hi = grid[k + 1];
        bool ok = table_ok;
        int it = 0;
        if (fit[k]) {
            const double want = target - cum[k];
            for (; it < max_iter && hi - lo > x_tol; ++it) {
                double mid = 0.5 * (lo + hi);
                ((*fit[k])(mid) < want ? lo : hi) = mid;
            }
        } else {
            double base = cum[k];
            for (; it < max_iter && hi - lo > x_tol; ++it) {
                double mid = 0.5 * (lo + hi);
                auto m = detail::mass(d, lo, mid, ctx);
                ok = ok && m.converged;
                if (base + m.value < target) {
                    lo = mid;
                    base += m.value;
                } else {
                    hi = mid;
                }
            }
        }
        ok = ok && hi - lo <= x_tol;
        out.values.push_back(std::clamp(0.5 * (lo + hi), std::nextafter(0.0, 1.0), std::nextafter(1.0, 0.0)));
        out.converged.push_back(ok ? 1 : 0);
        out.all_converged = out.all_converged && ok;
    }
    return out;
}

// Kolmogorov-Smirnov distance of a sample to the model CDF. The CDF is chained
// along the sorted sample.
inline double ks_statistic(const DistSpec& d, std::vector<double> xs) {
    detail::require(!xs.empty(), "KS statistic needs a non-empty sample");
    std::sort(xs.begin(), xs.end());
    EvalContext ctx;
    const double n = static_cast<double>(xs.size());
    double F = 0.0, prev = 0.0, D = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] > prev) {
            auto m = detail::mass(d, prev, xs[i], ctx);
            if (!m.converged) throw convergence_error("KS cdf: " + m.diagnostic);
            F += m.value;
            prev = xs[i];
        }
        double Fi = std::clamp(F, 0.0, 1.0);
        D = std::max({D, (i + 1) / n - Fi, Fi - i / n});
    }
    return D;
}

// ---------------------------------------------------------------------------
// Invariant checks

inline constexpr const char* dist_invariants[] = {"dist_normalization", "dist_cdf", "dist_variance",
                                                  "dist_mgf", "dist_ks"};

struct DistAux {
    double x = 0.4;            // cdf point
    double t = 0.5;            // mgf argument
    int terms = 40;            // mgf terms
    std::size_t samples = 10000;
    std::uint64_t seed = 42;
};

inline CheckReport verify_dist_invariant(const std::string& id, const BetaArgs& a, const ExtParams& prm,
                                         const DistAux& aux, double tol) {
    CheckReport rep;
    rep.identity = id;
    rep.tol = tol;
    rep.point = {{"eta1", a.eta1}, {"eta2", a.eta2},       {"p", prm.p},         {"q", prm.q},
                 {"lambda", prm.lambda}, {"sigma", prm.sigma}, {"tau", prm.tau}};
    try {
        DistSpec d(a, prm);
        EvalContext ctx;
        quad::Options o = quad::Options::relative(1e-13);
        o.abs_tol = 1e-300;
        if (id == "dist_normalization") {
            auto q = quad::tanh_sinh([&](double t, double tc) { return pdf(d, t, tc, ctx); }, o);
            if (!q.converged) throw convergence_error(q.diagnostic);
            rep.lhs = q.value;
            rep.rhs = 1.0;
        } else if (id == "dist_cdf") {
            const double x = aux.x;
            rep.point.push_back({"x", x});
            rep.lhs = cdf(d, x, ctx);
            auto q = detail::mass(d, 0.0, x, ctx);
            if (!q.converged) throw convergence_error(q.diagnostic);
            rep.rhs = q.value;
            // monotonicity on a coarse grid
            double prev = 0.0, worst_drop = 0.0;
            for (int k = 1; k <= 16; ++k) {
                double c = cdf(d, k / 16.0, ctx);
                worst_drop = std::max(worst_drop, prev - c);
                prev = c;
            }
            rep.info.push_back({"max_decrease", worst_drop});
            rep.finish();
            if (worst_drop > 0) rep.pass = false;
            return rep;
        } else if (id == "dist_variance") {
            auto [mean, var] = mean_variance(d, ctx);
            double m2 = moment(d, 2, ctx);
            rep.lhs = var;
            rep.rhs = m2 - mean * mean;
            rep.info.push_back({"mean", mean});
            rep.residual = std::fabs(rep.lhs - rep.rhs);
            rep.pass = rep.residual <= tol && mean > 0 && mean < 1 && var > 0;
            return rep;
        } else if (id == "dist_mgf") {
            rep.point.push_back({"t", aux.t});
            auto s = mgf(d, aux.t, aux.terms, ctx);
            auto q = quad::tanh_sinh(
                [&](double u, double uc) { return std::exp(aux.t * u) * pdf(d, u, uc, ctx); }, o);
            if (!q.converged) throw convergence_error(q.diagnostic);
            rep.lhs = s.value;
            rep.rhs = q.value;
            rep.info.push_back({"tail_estimate", s.tail_estimate});
            rep.info.push_back({"mgf_at_zero", mgf(d, 0.0, aux.terms, ctx).value});
            rep.tol = std::max(tol, s.tail_estimate);
            rep.finish();
            if (rep.info_value("mgf_at_zero") != 1.0) rep.pass = false;
            return rep;
        } else if (id == "dist_ks") {
            auto s = sample(d, aux.samples, aux.seed);
            double D = ks_statistic(d, s.values);
            const double crit = 1.63 / std::sqrt(static_cast<double>(aux.samples));
            rep.point.push_back({"samples", static_cast<double>(aux.samples)});
            rep.lhs = D;
            rep.rhs = 0.0;
            rep.residual = D;
            rep.tol = crit;
            rep.pass = D <= crit && s.all_converged;
            if (!s.all_converged) rep.note = "bisection did not converge for some samples";
            return rep;
        } else {
            throw domain_error("unknown distribution invariant: " + id);
        }
        rep.finish();
    } catch (const convergence_error& e) {
        rep.finish(false, e.what());
    }
    return rep;
}

}  // namespace mlbeta
