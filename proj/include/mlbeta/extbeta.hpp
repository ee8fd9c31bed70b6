#pragma once

// The extended beta function
//   B_{p,q}^{lambda;sigma,tau}(e1, e2)
//     = int_0^1 t^{e1-1} (1-t)^{e2-1} E_lambda(-p/t^sigma) E_lambda(-q/(1-t)^tau) dt,
// its incomplete form, its integral representations and identity checks.
//
// Integrands are evaluated in log space: with p > 0 or q > 0 the exponents may
// be negative and the power and kernel factors individually overflow.

#include <cmath>
#include <cstdint>
#include <cstring>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>

#include "check.hpp"
#include "core.hpp"
#include "mlf.hpp"
#include "quad.hpp"

namespace mlbeta {

struct ExtParams {
    double p = 0.0;
    double q = 0.0;
    double lambda = 1.0;
    double sigma = 1.0;
    double tau = 1.0;

    void validate() const {
        detail::require(std::isfinite(p) && p >= 0, "p must be a finite non-negative number");
        detail::require(std::isfinite(q) && q >= 0, "q must be a finite non-negative number");
        detail::require(std::isfinite(lambda) && lambda > 0 && lambda <= 2,
                        "lambda must lie in (0, 2]");
        detail::require(std::isfinite(sigma) && sigma > 0, "sigma must be positive");
        detail::require(std::isfinite(tau) && tau > 0, "tau must be positive");
    }

    // (p, sigma) <-> (q, tau)
    ExtParams swapped() const { return {q, p, lambda, tau, sigma}; }

    bool operator==(const ExtParams&) const = default;
};

struct BetaArgs {
    double eta1 = 1.0;
    double eta2 = 1.0;
};

enum class Repr { direct, trigonometric, semi_infinite, symmetric_interval, general_interval };

struct Representation {
    Repr tag = Repr::direct;
    double a = 0.0;  // interval for general_interval
    double c = 1.0;

    static Representation general(double a, double c) { return {Repr::general_interval, a, c}; }
};

inline const char* repr_name(Repr r) {
    switch (r) {
        case Repr::direct: return "direct";
        case Repr::trigonometric: return "trigonometric";
        case Repr::semi_infinite: return "semi_infinite";
        case Repr::symmetric_interval: return "symmetric_interval";
        case Repr::general_interval: return "general_interval";
    }
    return "?";
}

namespace detail {

inline std::uint64_t bits(double x) {
    std::uint64_t b;
    std::memcpy(&b, &x, sizeof b);
    return b;
}

struct PairHash {
    std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const {
        return std::hash<std::uint64_t>{}(k.first * 0x9E3779B97F4A7C15ull ^ k.second);
    }
};

// Admissibility of one endpoint: exponent e with kernel weight c and power s.
// E_lambda(-y) decays like exp(-y) for lambda = 1, like y^{-1} for lambda in
// (0,1) u (1,2), and not at all for lambda = 2.
inline bool endpoint_ok(double e, double c, double lambda, double s) {
    if (e > 0) return true;
    if (c <= 0) return false;
    if (lambda == 1.0) return true;
    if (lambda == 2.0) return false;
    return e + s > 0;
}

}  // namespace detail

inline void check_admissible(const BetaArgs& a, const ExtParams& prm) {
    prm.validate();
    detail::require(std::isfinite(a.eta1) && std::isfinite(a.eta2), "eta must be finite");
    detail::require(detail::endpoint_ok(a.eta1, prm.p, prm.lambda, prm.sigma),
                    "integral diverges at t=0: eta1 <= 0 needs p > 0 and enough kernel decay");
    detail::require(detail::endpoint_ok(a.eta2, prm.q, prm.lambda, prm.tau),
                    "integral diverges at t=1: eta2 <= 0 needs q > 0 and enough kernel decay");
}

inline bool admissible(const BetaArgs& a, const ExtParams& prm) {
    try {
        check_admissible(a, prm);
        return true;
    } catch (const domain_error&) {
        return false;
    }
}

// Memo for one evaluation session: Mittag-Leffler evaluators, kernel values
// and extended-beta values. Not shared between threads; make one per task.
class EvalContext {
public:
    // E_lambda(-exp(log_y)) as a signed log.
    SignedLog kernel(double lambda, double log_y) {
        if (kernel_cache_.size() > 4000000) kernel_cache_.clear();
        auto key = std::make_pair(detail::bits(lambda), detail::bits(log_y));
        auto it = kernel_cache_.find(key);
        if (it != kernel_cache_.end()) return it->second;
        SignedLog v = evaluator(lambda).neg_log(log_y);
        kernel_cache_.emplace(key, v);
        return v;
    }

    const ml::MittagLeffler& evaluator(double lambda) {
        auto& slot = evaluators_[lambda];
        if (!slot) slot = std::make_unique<ml::MittagLeffler>(lambda);
        return *slot;
    }

    // Memoised direct-representation values (used by the series identities).
    template <class Compute>
    const quad::QuadResult& beta_memo(const BetaArgs& a, const ExtParams& prm, double tol,
                                      Compute&& compute) {
        Key k{a.eta1, a.eta2, prm.p, prm.q, prm.lambda, prm.sigma, prm.tau, tol};
        auto it = beta_cache_.find(k);
        if (it != beta_cache_.end()) return it->second;
        return beta_cache_.emplace(k, compute()).first->second;
    }

    std::size_t kernel_cache_size() const { return kernel_cache_.size(); }

private:
    struct Key {
        double v[8];
        Key(double a, double b, double c, double d, double e, double f, double g, double h)
            : v{a, b, c, d, e, f, g, h} {}
        bool operator<(const Key& o) const { return std::memcmp(v, o.v, sizeof v) < 0; }
    };
    std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, SignedLog, detail::PairHash>
        kernel_cache_;
    std::map<double, std::unique_ptr<ml::MittagLeffler>> evaluators_;
    std::map<Key, quad::QuadResult> beta_cache_;
};

namespace detail {

// log of the kernel factor E_lambda(-c * exp(-s * log_base)), c = 0 meaning 1
inline SignedLog kernel_factor(EvalContext& ctx, double lambda, double log_c, double s,
                               double log_base) {
    if (log_c == -inf) return {0.0, 1};
    return ctx.kernel(lambda, log_c - s * log_base);
}

inline double combine(double log_mag, SignedLog k1, SignedLog k2) {
    int sign = k1.sign * k2.sign;
    if (sign == 0) return 0.0;
    double v = log_mag + k1.log_abs + k2.log_abs;
    if (std::isnan(v)) return nan;
    return sign * std::exp(v);
}

inline double safe_log(double x) { return x > 0 ? std::log(x) : -inf; }

inline quad::Options rel_options(double tol) {
    quad::Options o = quad::Options::relative(tol);
    o.abs_tol = 1e-300;
    return o;
}

}  // namespace detail

inline double classical_beta(const BetaArgs& a) { return beta(a.eta1, a.eta2); }

// Integrand of the direct form at (t, 1-t); useful for densities.
inline double ext_beta_integrand(EvalContext& ctx, const BetaArgs& a, const ExtParams& prm,
                                 double t, double tc) {
    const double lt = std::log(t), ltc = std::log(tc);
    auto k1 = detail::kernel_factor(ctx, prm.lambda, detail::safe_log(prm.p), prm.sigma, lt);
    auto k2 = detail::kernel_factor(ctx, prm.lambda, detail::safe_log(prm.q), prm.tau, ltc);
    return detail::combine((a.eta1 - 1.0) * lt + (a.eta2 - 1.0) * ltc, k1, k2);
}

inline quad::QuadResult ext_beta(const BetaArgs& a, const ExtParams& prm, const Representation& rep,
                                 double tol, EvalContext& ctx) {
    check_admissible(a, prm);
    detail::require(tol > 0, "tol must be positive");
    const double e1 = a.eta1, e2 = a.eta2, l = prm.lambda, s = prm.sigma, tw = prm.tau;
    const double lp = detail::safe_log(prm.p), lq = detail::safe_log(prm.q);
    const auto opt = detail::rel_options(tol);
    using detail::combine;
    using detail::kernel_factor;

    switch (rep.tag) {
        case Repr::direct:
            return quad::tanh_sinh([&](double t, double tc) { return ext_beta_integrand(ctx, a, prm, t, tc); },
                                   opt);
        case Repr::trigonometric:
            // t = cos^2(theta), theta = (pi/2) v
            return quad::tanh_sinh(
                [&](double v, double vc) {
                    double lc = std::log(std::sin(0.5 * pi * vc));  // log cos(theta)
                    double ls = std::log(std::sin(0.5 * pi * v));
                    auto k1 = kernel_factor(ctx, l, lp, 2.0 * s, lc);
                    auto k2 = kernel_factor(ctx, l, lq, 2.0 * tw, ls);
                    return pi * combine((2.0 * e1 - 1.0) * lc + (2.0 * e2 - 1.0) * ls, k1, k2);
                },
                opt);
        case Repr::semi_infinite:
            // t = u / (1 + u)
            return quad::exp_sinh(
                [&](double u) {
                    double lu = std::log(u), l1u = std::log1p(u);
                    auto k1 = kernel_factor(ctx, l, lp, s, lu - l1u);
                    auto k2 = kernel_factor(ctx, l, lq, -tw, l1u);
                    return combine((e1 - 1.0) * lu - (e1 + e2) * l1u, k1, k2);
                },
                0.0, opt);
        case Repr::symmetric_interval:
            // u in (-1, 1), 1 + u = 2v, 1 - u = 2(1 - v)
            return quad::tanh_sinh(
                [&](double v, double vc) {
                    double lpu = std::log(2.0 * v), lmu = std::log(2.0 * vc);
                    auto k1 = kernel_factor(ctx, l, lp + s * std::log(2.0), s, lpu);
                    auto k2 = kernel_factor(ctx, l, lq + tw * std::log(2.0), tw, lmu);
                    double mag = (1.0 - e1 - e2) * std::log(2.0) + (e1 - 1.0) * lpu + (e2 - 1.0) * lmu;
                    return 2.0 * combine(mag, k1, k2);
                },
                opt);
        case Repr::general_interval: {
            detail::require(std::isfinite(rep.a) && std::isfinite(rep.c) && rep.a < rep.c,
                            "general_interval needs finite a < c");
            const double L = rep.c - rep.a, lL = std::log(L);
            return quad::tanh_sinh(
                [&](double v, double vc) {
                    double lua = std::log(L * v), lcu = std::log(L * vc);
                    auto k1 = kernel_factor(ctx, l, lp + s * lL, s, lua);
                    auto k2 = kernel_factor(ctx, l, lq + tw * lL, tw, lcu);
                    double mag = (1.0 - e1 - e2) * lL + (e1 - 1.0) * lua + (e2 - 1.0) * lcu;
                    return L * combine(mag, k1, k2);
                },
                opt);
        }
    }
    throw domain_error("unknown representation");
}

inline quad::QuadResult ext_beta(const BetaArgs& a, const ExtParams& prm, const Representation& rep = {},
                                 double tol = 1e-12) {
    EvalContext ctx;
    return ext_beta(a, prm, rep, tol, ctx);
}

// Memoised direct value; throws convergence_error if the quadrature failed.
inline double ext_beta_value(const BetaArgs& a, const ExtParams& prm, double tol, EvalContext& ctx) {
    const auto& r = ctx.beta_memo(a, prm, tol, [&] { return ext_beta(a, prm, {}, tol, ctx); });
    if (!r.converged) throw convergence_error("extended beta quadrature: " + r.diagnostic);
    return r.value;
}

// B_x: the integral over (0, x).
inline quad::QuadResult ext_beta_incomplete(double x, const BetaArgs& a, const ExtParams& prm,
                                            double tol, EvalContext& ctx) {
    detail::require(std::isfinite(x) && x >= 0 && x <= 1, "x must lie in [0, 1]");
    check_admissible(a, prm);
    if (x == 0.0) {
        quad::QuadResult r;
        r.converged = true;
        return r;
    }
    if (x == 1.0) return ext_beta(a, prm, {}, tol, ctx);
    const double xc = 1.0 - x;
    auto r = quad::tanh_sinh(
        [&](double v, double vc) {
            double t = x * v;
            return x * ext_beta_integrand(ctx, a, prm, t, xc + x * vc);
        },
        detail::rel_options(tol));
    return r;
}

inline quad::QuadResult ext_beta_incomplete(double x, const BetaArgs& a, const ExtParams& prm,
                                            double tol = 1e-12) {
    EvalContext ctx;
    return ext_beta_incomplete(x, a, prm, tol, ctx);
}

// Closed form of the double Mellin transform in (p, q):
//   pi^2 B(e1 + sigma r, e2 + tau s) / (sin(pi r) sin(pi s) Gamma(1 - r lambda) Gamma(1 - s lambda))
inline double mellin_rhs(double r, double s, const BetaArgs& a, const ExtParams& prm) {
    prm.validate();
    detail::require(r > 0 && r < 1 && s > 0 && s < 1, "mellin_rhs: r and s must lie in (0, 1)");
    double g1 = 1.0 - r * prm.lambda, g2 = 1.0 - s * prm.lambda;
    detail::require(!detail::is_nonpositive_integer(g1) && !detail::is_nonpositive_integer(g2),
                    "mellin_rhs: Gamma(1 - r lambda) or Gamma(1 - s lambda) at a pole");
    double b1 = a.eta1 + prm.sigma * r, b2 = a.eta2 + prm.tau * s;
    detail::require(b1 > 0 && b2 > 0, "mellin_rhs: shifted beta arguments must be positive");
    return pi * pi / (sin_pi(r) * sin_pi(s)) * rgamma(g1) * rgamma(g2) * beta(b1, b2);
}

// ---------------------------------------------------------------------------
// Identity checks

struct BetaAux {
    int terms = 64;  // summation identities
    int n = 1;       // recurrence order
    double r = 0.5;  // Mellin exponents
    double s = 0.5;
};

inline constexpr const char* beta_identities[] = {"functional_relation", "summation_finite",
                                                  "summation_infinite",  "recurrence_binomial",
                                                  "mellin",              "double_integral"};

namespace detail {

inline double quad_tol_for(double tol) { return std::clamp(tol * 1e-2, 1e-13, 1e-7); }

inline std::vector<std::pair<std::string, double>> beta_point(const BetaArgs& a, const ExtParams& p) {
    return {{"eta1", a.eta1}, {"eta2", a.eta2}, {"p", p.p},          {"q", p.q},
            {"lambda", p.lambda}, {"sigma", p.sigma}, {"tau", p.tau}};
}

}  // namespace detail

inline CheckReport verify_beta_identity(const std::string& id, const BetaArgs& a, const ExtParams& prm,
                                        const BetaAux& aux, double tol, EvalContext& ctx) {
    CheckReport rep;
    rep.identity = id;
    rep.tol = tol;
    rep.point = detail::beta_point(a, prm);
    const double qt = detail::quad_tol_for(tol);
    auto B = [&](double x, double y) { return ext_beta_value({x, y}, prm, qt, ctx); };
    try {
        if (id == "functional_relation") {
            rep.lhs = B(a.eta1 + 1.0, a.eta2) + B(a.eta1, a.eta2 + 1.0);
            rep.rhs = B(a.eta1, a.eta2);
        } else if (id == "summation_infinite") {
            // B(e1, e2) = sum_n B(e1 + n, e2 + 1); the remainder after N terms is
            // exactly B(e1 + N, e2), which closes the partial sum.
            const int N = aux.terms;
            detail::require(N >= 1 && N <= 4096, "terms must lie in [1, 4096]");
            rep.point.push_back({"terms", N});
            KahanSum acc;
            for (int n = 0; n < N; ++n) acc.add(B(a.eta1 + n, a.eta2 + 1.0));
            const double partial = acc.sum;
            double tail = B(a.eta1 + N, a.eta2);
            rep.lhs = B(a.eta1, a.eta2);
            rep.rhs = partial + tail;
            rep.info.push_back({"partial_sum", partial});
            rep.info.push_back({"tail", tail});
            rep.info.push_back({"partial_sum_residual", relative_residual(rep.lhs, partial)});
        } else if (id == "summation_finite") {
            // B(e1, 1 - e2) = sum_n (e2)_n / n! B(e1 + n, 1), closed by the
            // remainder int t^{e1-1} R_N(t) K1 K2 dt with
            // R_N(t) = (1-t)^{-e2} - sum_{n<N} (e2)_n t^n / n!.
            const int N = aux.terms;
            detail::require(N >= 1 && N <= 4096, "terms must lie in [1, 4096]");
            rep.point.push_back({"terms", N});
            check_admissible({a.eta1, 1.0 - a.eta2}, prm);
            KahanSum acc;
            double c = 1.0;
            for (int n = 0; n < N; ++n) {
                acc.add(c * B(a.eta1 + n, 1.0));
                c *= (a.eta2 + n) / (n + 1.0);
            }
            const double partial = acc.sum;
            const double lp = detail::safe_log(prm.p), lq = detail::safe_log(prm.q);
            auto rem = quad::tanh_sinh(
                [&](double t, double tc) {
                    double lt = std::log(t), ltc = std::log(tc);
                    auto k1 = detail::kernel_factor(ctx, prm.lambda, lp, prm.sigma, lt);
                    auto k2 = detail::kernel_factor(ctx, prm.lambda, lq, prm.tau, ltc);
                    double full = detail::combine((a.eta1 - 1.0) * lt - a.eta2 * ltc, k1, k2);
                    double sn = 0.0, cn = 1.0, tp = 1.0;
                    for (int n = 0; n < N; ++n) {
                        sn += cn * tp;
                        cn *= (a.eta2 + n) / (n + 1.0);
                        tp *= t;
                    }
                    return full - detail::combine((a.eta1 - 1.0) * lt, k1, k2) * sn;
                },
                detail::rel_options(qt));
            if (!rem.converged) throw convergence_error("remainder quadrature: " + rem.diagnostic);
            rep.lhs = B(a.eta1, 1.0 - a.eta2);
            rep.rhs = partial + rem.value;
            rep.info.push_back({"partial_sum", partial});
            rep.info.push_back({"tail", rem.value});
            rep.info.push_back({"partial_sum_residual", relative_residual(rep.lhs, partial)});
        } else if (id == "recurrence_binomial") {
            // B(e, -e - n) = sum_k C(n,k) B(e + k, -e - k), e = eta1
            const int n = aux.n;
            detail::require(n >= 1 && n <= 32, "n must lie in [1, 32]");
            rep.point.push_back({"n", n});
            const double e = a.eta1;
            rep.lhs = B(e, -e - n);
            double sum = 0.0;
            for (int k = 0; k <= n; ++k) sum += binomial(n, k) * B(e + k, -e - k);
            rep.rhs = sum;
        } else if (id == "mellin") {
            rep.point.push_back({"r", aux.r});
            rep.point.push_back({"s", aux.s});
            rep.rhs = mellin_rhs(aux.r, aux.s, a, prm);
            const double inner_tol = std::min(1e-9, qt * 1e-2);
            auto res = quad::integrate_2d_semi_inf(
                [&](double p, double q) {
                    ExtParams pq = prm;
                    pq.p = p;
                    pq.q = q;
                    auto b = ext_beta(a, pq, {}, inner_tol, ctx);
                    if (!b.converged) return nan;
                    return std::pow(p, aux.r - 1.0) * std::pow(q, aux.s - 1.0) * b.value;
                },
                detail::rel_options(qt));
            if (!res.converged) throw convergence_error("Mellin quadrature: " + res.diagnostic);
            rep.lhs = res.value;
            rep.info.push_back({"abs_error_estimate", res.abs_error_estimate});
            rep.info.push_back({"truncation_radius", inf});
            // The transform taken with sigma = tau = 1 inside the beta factor.
            ExtParams unit = prm;
            unit.sigma = unit.tau = 1.0;
            rep.info.push_back({"unscaled_rhs_residual", relative_residual(rep.lhs, mellin_rhs(aux.r, aux.s, a, unit))});
        } else if (id == "double_integral") {
            // Integrate p and q first: each gives t^{sigma r} M(r) with
            // M(r) = int_0^inf u^{r-1} E_lambda(-u) du computed numerically.
            rep.point.push_back({"r", aux.r});
            rep.point.push_back({"s", aux.s});
            rep.rhs = mellin_rhs(aux.r, aux.s, a, prm);
            auto M = [&](double r) {
                auto m = quad::exp_sinh(
                    [&](double u) {
                        return std::pow(u, r - 1.0) * ctx.kernel(prm.lambda, std::log(u)).value();
                    },
                    0.0, detail::rel_options(qt));
                if (!m.converged) throw convergence_error("Mellin of the kernel: " + m.diagnostic);
                return m.value;
            };
            double mr = M(aux.r), ms = M(aux.s);
            double b = ext_beta_value({a.eta1 + prm.sigma * aux.r, a.eta2 + prm.tau * aux.s},
                                      ExtParams{0, 0, prm.lambda, 1, 1}, qt, ctx);
            rep.lhs = mr * ms * b;
            rep.info.push_back({"kernel_mellin_r", mr});
            rep.info.push_back({"kernel_mellin_s", ms});
        } else {
            throw domain_error("unknown beta identity: " + id);
        }
        rep.finish();
    } catch (const convergence_error& e) {
        rep.finish(false, e.what());
    }
    return rep;
}

inline CheckReport verify_beta_identity(const std::string& id, const BetaArgs& a, const ExtParams& prm,
                                        const BetaAux& aux = {}, double tol = 1e-8) {
    EvalContext ctx;
    return verify_beta_identity(id, a, prm, aux, tol, ctx);
}

}  // namespace mlbeta
