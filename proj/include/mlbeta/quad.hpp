#pragma once

// Double-exponential quadrature on (0,1) and (0,inf), an adaptive
// Gauss-Kronrod rule for short smooth intervals, and iterated 2-D rules.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "core.hpp"

namespace mlbeta::quad {

struct QuadResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
    std::string diagnostic;
};

namespace detail {
inline std::atomic<std::size_t>& budget_slot() {
    static std::atomic<std::size_t> slot{1000000};
    return slot;
}
}  // namespace detail

inline std::size_t default_max_evals() { return detail::budget_slot().load(); }
inline void set_default_max_evals(std::size_t n) { detail::budget_slot().store(n); }

struct Options {
    double abs_tol = 1e-10;
    double rel_tol = 0.0;
    std::size_t max_evals = default_max_evals();
    int min_level = 3;
    int max_level = 16;

    static Options relative(double tol) {
        Options o;
        o.abs_tol = 1e-300;
        o.rel_tol = tol;
        return o;
    }
};

// f(t) or f(t, 1 - t) for the unit interval; the second form receives the
// complement computed without cancellation.
template <class F>
concept WithComplement = std::invocable<F&, double, double>;

namespace detail {

struct Node {
    double x;  // abscissa, or distance to the nearer endpoint for tanh-sinh
    double w;
};

inline constexpr double ts_xmax = 6.0;
inline constexpr double es_xmax = 6.0;
inline constexpr int cached_levels = 12;

// Nodes first appearing at a level: all integers at level 0, odd multiples of
// 2^-L afterwards. Only x > 0 is stored for tanh-sinh (symmetric pairs).
inline std::vector<double> level_abscissae(int level, double xmax, bool symmetric) {
    std::vector<double> xs;
    double h = std::ldexp(1.0, -level);
    long kmax = static_cast<long>(std::floor(xmax / h));
    long step = level == 0 ? 1 : 2;
    long k0 = level == 0 ? (symmetric ? 1 : -kmax) : 1;
    for (long k = k0; k <= kmax; k += step) xs.push_back(k * h);
    if (!symmetric && level > 0)
        for (long k = 1; k <= kmax; k += 2) xs.push_back(-k * h);
    return xs;
}

inline std::vector<Node> make_ts_level(int level) {
    std::vector<Node> nodes;
    for (double x : level_abscissae(level, ts_xmax, true)) {
        double u = std::exp(-pi * std::sinh(x));
        double d = u / (1.0 + u);
        double w = pi * std::cosh(x) * u / ((1.0 + u) * (1.0 + u));
        if (d > 0 && w > 0) nodes.push_back({d, w});
    }
    return nodes;
}

inline std::vector<Node> make_es_level(int level) {
    std::vector<Node> nodes;
    for (double x : level_abscissae(level, es_xmax, false)) {
        double t = std::exp(0.5 * pi * std::sinh(x));
        double w = 0.5 * pi * std::cosh(x) * t;
        if (t > 0 && std::isfinite(w)) nodes.push_back({t, w});
    }
    return nodes;
}

inline const std::vector<Node>& ts_level(int level, std::vector<Node>& scratch) {
    static const std::vector<std::vector<Node>> table = [] {
        std::vector<std::vector<Node>> t;
        for (int l = 0; l <= cached_levels; ++l) t.push_back(make_ts_level(l));
        return t;
    }();
    if (level <= cached_levels) return table[level];
    scratch = make_ts_level(level);
    return scratch;
}

inline const std::vector<Node>& es_level(int level, std::vector<Node>& scratch) {
    static const std::vector<std::vector<Node>> table = [] {
        std::vector<std::vector<Node>> t;
        for (int l = 0; l <= cached_levels; ++l) t.push_back(make_es_level(l));
        return t;
    }();
    if (level <= cached_levels) return table[level];
    scratch = make_es_level(level);
    return scratch;
}

inline std::string bad_sample(double t, double v) {
    std::ostringstream os;
    os.precision(17);
    os << "integrand returned " << v << " at t=" << t;
    return os.str();
}

// Shared level-doubling driver. `add_level(level, sum, l1)` adds the new nodes'
// weighted samples and returns false (with a diagnostic) on a bad sample.
template <class AddLevel>
QuadResult refine(AddLevel&& add_level, std::size_t nodes_level0, const Options& opt) {
    QuadResult r;
    double sum = 0.0, l1 = 0.0, prev = 0.0;
    std::size_t per_level = nodes_level0;
    for (int level = 0; level <= opt.max_level; ++level) {
        if (level > 0 && r.evaluations + per_level > opt.max_evals) {
            r.diagnostic = "evaluation budget exhausted";
            return r;
        }
        std::size_t before = r.evaluations;
        if (!add_level(level, sum, l1, r)) return r;
        per_level = std::max<std::size_t>(r.evaluations - before, 1);
        double h = std::ldexp(1.0, -level);
        double est = h * sum;
        r.value = est;
        if (level > 0) {
            r.abs_error_estimate = std::fabs(est - prev);
            double target = std::max({opt.abs_tol, opt.rel_tol * std::fabs(est),
                                      10.0 * eps * h * l1});
            if (level >= opt.min_level && r.abs_error_estimate <= target) {
                r.converged = true;
                return r;
            }
        }
        prev = est;
    }
    r.diagnostic = "maximum refinement level reached";
    return r;
}

}  // namespace detail

// Tanh-sinh on (0,1).
template <class F>
QuadResult tanh_sinh(F&& f, const Options& opt = {}) {
    auto eval = [&](double t, double tc) -> double {
        if constexpr (WithComplement<F>)
            return f(t, tc);
        else
            return f(t);
    };
    std::vector<detail::Node> scratch;
    auto add = [&](int level, double& sum, double& l1, QuadResult& r) {
        if (level == 0) {
            double v = eval(0.5, 0.5);
            ++r.evaluations;
            if (!std::isfinite(v)) {
                r.diagnostic = detail::bad_sample(0.5, v);
                return false;
            }
            sum += 0.25 * pi * v;
            l1 += 0.25 * pi * std::fabs(v);
        }
        for (const auto& n : detail::ts_level(level, scratch)) {
            double a = eval(n.x, 1.0 - n.x);
            double b = eval(1.0 - n.x, n.x);
            r.evaluations += 2;
            if (!std::isfinite(a) || !std::isfinite(b)) {
                r.diagnostic = detail::bad_sample(std::isfinite(a) ? 1.0 - n.x : n.x,
                                                  std::isfinite(a) ? b : a);
                return false;
            }
            sum += n.w * (a + b);
            l1 += n.w * (std::fabs(a) + std::fabs(b));
        }
        return true;
    };
    return detail::refine(add, 13, opt);
}

// Exp-sinh on (a, inf).
template <class F>
QuadResult exp_sinh(F&& f, double a = 0.0, const Options& opt = {}) {
    std::vector<detail::Node> scratch;
    auto add = [&](int level, double& sum, double& l1, QuadResult& r) {
        for (const auto& n : detail::es_level(level, scratch)) {
            double v = f(a + n.x);
            ++r.evaluations;
            if (!std::isfinite(v)) {
                r.diagnostic = detail::bad_sample(a + n.x, v);
                return false;
            }
            sum += n.w * v;
            l1 += n.w * std::fabs(v);
        }
        return true;
    };
    return detail::refine(add, 13, opt);
}

// Finite interval (a, b) via tanh-sinh; f(x) or f(x, x - a, b - x).
template <class F>
QuadResult integrate(F&& f, double a, double b, const Options& opt = {}) {
    const double L = b - a;
    auto g = [&](double v, double vc) -> double {
        double x = v < 0.5 ? a + L * v : b - L * vc;
        if constexpr (std::invocable<F&, double, double, double>)
            return L * f(x, L * v, L * vc);
        else
            return L * f(x);
    };
    Options o = opt;
    o.abs_tol = opt.abs_tol;
    QuadResult r = tanh_sinh(g, o);
    return r;
}

namespace detail {
inline constexpr double gk_x[8] = {0.991455371120812639206854697526329,
                                   0.949107912342758524526189684047851,
                                   0.864864423359769072789712788640926,
                                   0.741531185599394439863864773280788,
                                   0.586087235467691130294144845693013,
                                   0.405845151377397166906606412076961,
                                   0.207784955007898467600689403773245,
                                   0.000000000000000000000000000000000};
inline constexpr double gk_wk[8] = {0.022935322010529224963732008058970,
                                    0.063092092629978553290700663189204,
                                    0.104790010322250183839876322541518,
                                    0.140653259715525918745189590510238,
                                    0.169004726639267902826583426598550,
                                    0.190350578064785409913256402421014,
                                    0.204432940075298892414161999234649,
                                    0.209482141084727828012999174891714};
inline constexpr double gk_wg[4] = {0.129484966168869693270611432679082,
                                    0.279705391489276667901467771423780,
                                    0.381830050505118944950369775488975,
                                    0.417959183673469387755102040816327};

template <class F>
void gk15(F& f, double a, double b, double& value, double& err) {
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double fc = f(c);
    double k = fc * gk_wk[7], g = fc * gk_wg[3];
    for (int j = 0; j < 7; ++j) {
        double f1 = f(c - h * gk_x[j]), f2 = f(c + h * gk_x[j]);
        k += gk_wk[j] * (f1 + f2);
        if (j % 2 == 1) g += gk_wg[j / 2] * (f1 + f2);
    }
    value = k * h;
    err = std::fabs((k - g) * h);
}
}  // namespace detail

// Adaptive Gauss-Kronrod (7/15) for short intervals of a smooth integrand.
template <class F>
QuadResult gauss_kronrod(F&& f, double a, double b, const Options& opt = {}) {
    struct Seg {
        double a, b, v, e;
        bool operator<(const Seg& o) const { return e < o.e; }
    };
    QuadResult r;
    bool bad = false;
    double bad_at = 0.0, bad_v = 0.0;
    auto g = [&](double x) {
        double v = f(x);
        ++r.evaluations;
        if (!std::isfinite(v) && !bad) {
            bad = true;
            bad_at = x;
            bad_v = v;
        }
        return v;
    };
    std::priority_queue<Seg> heap;
    Seg s{a, b, 0, 0};
    detail::gk15(g, a, b, s.v, s.e);
    heap.push(s);
    double total = s.v, err = s.e;
    while (true) {
        if (bad) {
            r.diagnostic = detail::bad_sample(bad_at, bad_v);
            break;
        }
        if (err <= std::max(opt.abs_tol, opt.rel_tol * std::fabs(total))) {
            r.converged = true;
            break;
        }
        if (r.evaluations + 30 > opt.max_evals || heap.size() > 2000) {
            r.diagnostic = "evaluation budget exhausted";
            break;
        }
        Seg top = heap.top();
        heap.pop();
        double m = 0.5 * (top.a + top.b);
        Seg l{top.a, m, 0, 0}, rr{m, top.b, 0, 0};
        detail::gk15(g, l.a, l.b, l.v, l.e);
        detail::gk15(g, rr.a, rr.b, rr.v, rr.e);
        total += l.v + rr.v - top.v;
        err += l.e + rr.e - top.e;
        heap.push(l);
        heap.push(rr);
    }
    // re-sum to avoid drift from the running updates
    double v = 0.0, e = 0.0;
    while (!heap.empty()) {
        v += heap.top().v;
        e += heap.top().e;
        heap.pop();
    }
    r.value = v;
    r.abs_error_estimate = e;
    return r;
}

// Iterated 2-D rules. The reported error is the outer estimate plus the
// measure of the outer domain times the worst inner estimate.
template <class F>
QuadResult integrate_2d_rect(F&& f, double R, double S, const Options& opt = {}) {
    mlbeta::detail::require(R > 0 && S > 0, "integrate_2d_rect: R and S must be positive");
    Options inner = opt;
    inner.abs_tol = opt.abs_tol / (4.0 * R);
    inner.rel_tol = opt.rel_tol / 4.0;
    inner.max_evals = opt.max_evals;
    std::size_t evals = 0;
    double worst = 0.0;
    bool ok = true;
    std::string why;
    auto outer = [&](double x) {
        if (!ok) return 0.0;
        inner.max_evals = opt.max_evals > evals ? opt.max_evals - evals : 1;
        QuadResult q = integrate([&](double y) { return f(x, y); }, 0.0, S, inner);
        evals += q.evaluations;
        worst = std::max(worst, q.abs_error_estimate);
        if (!q.converged) {
            ok = false;
            why = "inner integral: " + q.diagnostic;
        }
        return q.value;
    };
    Options o = opt;
    o.max_evals = opt.max_evals;
    QuadResult r = integrate(outer, 0.0, R, o);
    r.evaluations = evals;
    r.abs_error_estimate += R * worst;
    if (!ok) {
        r.converged = false;
        r.diagnostic = why;
    }
    return r;
}

// Iterated exp-sinh over (0,inf)^2. The outer-domain measure is infinite, so
// the inner tolerance is taken relative and the error reported is
// outer + (integral of |inner| weights) * worst relative inner error.
template <class F>
QuadResult integrate_2d_semi_inf(F&& f, const Options& opt = {}) {
    Options inner = opt;
    inner.abs_tol = opt.abs_tol / 4.0;
    inner.rel_tol = opt.rel_tol / 4.0;
    std::size_t evals = 0;
    double worst = 0.0;
    bool ok = true;
    std::string why;
    auto outer = [&](double x) {
        if (!ok) return 0.0;
        QuadResult q = exp_sinh([&](double y) { return f(x, y); }, 0.0, inner);
        evals += q.evaluations;
        if (q.value != 0.0) worst = std::max(worst, q.abs_error_estimate / std::fabs(q.value));
        if (!q.converged) {
            ok = false;
            why = "inner integral: " + q.diagnostic;
        }
        return q.value;
    };
    QuadResult r = exp_sinh(outer, 0.0, opt);
    r.evaluations = evals;
    r.abs_error_estimate += worst * std::fabs(r.value);
    if (!ok) {
        r.converged = false;
        r.diagnostic = why;
    }
    return r;
}

}  // namespace mlbeta::quad
