// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <chrono>
#include <cstdio>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "mlbeta/suite.hpp"

using namespace mlbeta;

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

int failures = 0;

void report(int id, bool ok, const std::string& detail, double secs) {
    std::printf("criterion %2d: %s  %s (%.2f s)\n", id, ok ? "PASS" : "FAIL", detail.c_str(), secs);
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(const char* f, auto... a) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, a...);
    return buf;
}

double rel(double a, double b) { return relative_residual(a, b); }

void classical_reduction() {
    auto t0 = clock_type::now();
    const double e[] = {0.5, 1, 1.5, 2.5, 4};
    double worst = 0;
    for (double a : e)
        for (double b : e) {
            auto r = ext_beta({a, b}, {0, 0, 1, 1, 1});
            double c = classical_beta({a, b});
            worst = std::max(worst, r.converged ? std::fabs(r.value - c) / c : inf);
        }
    double s = seconds_since(t0);
    report(1, worst <= 1e-10 && s < 5, fmt("25 points, worst relative error %.2e", worst), s);
}

void exponential_kernel() {
    auto t0 = clock_type::now();
    const std::vector<std::pair<BetaArgs, ExtParams>> pts{
        {{1, 1}, {0.1, 0.1, 1, 1, 1}},     {{1.5, 2.5}, {0.2, 0.3, 1, 1, 1}}, {{0.5, 0.7}, {0.5, 0.1, 1, 1.3, 0.8}},
        {{2, 3}, {1, 2, 1, 0.5, 2}},       {{0.3, 4}, {0.05, 0.5, 1, 1, 1}},  {{3, 0.6}, {0.4, 0.01, 1, 2, 1}},
        {{1.2, 0.8}, {0.1, 0.2, 1, 1, 1}}, {{-0.5, 2}, {0.3, 0.1, 1, 1, 1}},  {{2, -1.5}, {0.2, 0.7, 1, 1, 1.5}},
        {{0.9, 1.1}, {3, 3, 1, 1, 1}}};
    boost::math::quadrature::tanh_sinh<double> ts(15);
    double worst = 0;
    for (const auto& [a, p] : pts) {
        double o = ts.integrate(
            [&](double t, double tc) {
                double u = t < 0.5 ? t : 1.0 - tc, v = t < 0.5 ? 1.0 - t : tc;
                if (u <= 0 || v <= 0) return 0.0;
                return std::exp((a.eta1 - 1) * std::log(u) + (a.eta2 - 1) * std::log(v) - p.p / std::pow(u, p.sigma) -
                                p.q / std::pow(v, p.tau));
            },
            0.0, 1.0, 1e-14);
        auto r = ext_beta(a, p, {}, 1e-13);
        worst = std::max(worst, r.converged ? rel(r.value, o) : inf);
    }
    report(2, worst <= 1e-10, fmt("10 points, worst residual %.2e", worst), seconds_since(t0));
}

void representations() {
    auto t0 = clock_type::now();
    const std::vector<Representation> reps{{Repr::direct},
                                           {Repr::trigonometric},
                                           {Repr::semi_infinite},
                                           {Repr::symmetric_interval},
                                           Representation::general(-1.5, 2.5)};
    const auto grid = suite::default_grid();
    double worst = 0;
    int points = 0;
    for (std::size_t j = 0; j < grid.size() && points < 24; ++j) {
        const auto& g = grid[(j * 1009 + 3) % grid.size()];
        if (!admissible(g.args, g.params)) continue;
        EvalContext ctx;
        std::vector<double> v;
        for (const auto& r : reps) {
            auto q = ext_beta(g.args, g.params, r, 1e-13, ctx);
            v.push_back(q.converged ? q.value : mlbeta::nan);
        }
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t k = i + 1; k < v.size(); ++k) {
                double r = rel(v[i], v[k]);
                worst = std::max(worst, std::isnan(r) ? inf : r);
            }
        ++points;
    }
    report(3, worst <= 1e-8 && points >= 20, fmt("%d points, 5 forms pairwise, worst residual %.2e", points, worst),
           seconds_since(t0));
}

void identity_suite() {
    auto t0 = clock_type::now();
    const auto grid = suite::default_grid();
    double fr = 0, rec = 0, sum = 0;
    int rec_points = 0, bare_ok = 0;
    bool ok = true;
    for (const auto& g : grid) {
        EvalContext ctx;
        auto f = verify_beta_identity("functional_relation", g.args, g.params, {}, 1e-9, ctx);
        fr = std::max(fr, f.residual);
        ok = ok && f.pass;
        auto s = verify_beta_identity("summation_infinite", g.args, g.params, {}, 1e-6, ctx);
        sum = std::max(sum, s.residual);
        ok = ok && s.pass;
        bare_ok += s.info_value("partial_sum_residual") <= 1e-6;
        for (int n : {1, 2, 3}) {
            BetaAux aux;
            aux.n = n;
            try {
                auto r = verify_beta_identity("recurrence_binomial", g.args, g.params, aux, 1e-8, ctx);
                rec = std::max(rec, r.residual);
                ok = ok && r.pass;
                ++rec_points;
            } catch (const domain_error&) {
                // B(eta1, -eta1 - n) diverges here
            }
        }
    }
    report(4, ok && rec_points > 0,
           fmt("%zu grid points: functional relation %.2e; recurrence %.2e over %d (point, n) pairs; "
               "64-term summation with exact remainder %.2e, bare partial sum within 1e-6 at %d points",
               grid.size(), fr, rec, rec_points, sum, bare_ok),
           seconds_since(t0));
}

void mellin() {
    auto t0 = clock_type::now();
    bool ok = true;
    std::string detail;
    for (double l : {0.7, 1.0})
        for (auto [r, s] : {std::pair{0.5, 0.5}, {0.25, 0.75}}) {
            auto t1 = clock_type::now();
            BetaAux aux;
            aux.r = r;
            aux.s = s;
            auto rep = verify_beta_identity("mellin", {1.5, 2}, {0, 0, l, 1.2, 0.8}, aux, 1e-4);
            double secs = seconds_since(t1);
            ok = ok && rep.pass && secs < 30;
            detail += fmt("[lambda %.1f r %.2f s %.2f: %.1e in %.1f s] ", l, r, s, rep.residual, secs);
        }
    report(5, ok, detail, seconds_since(t0));
}

void hyper_layer() {
    auto t0 = clock_type::now();
    const ExtParams zero{0, 0, 1, 1, 1};
    double red = 0, cross = 0;
    for (auto [a, b, c] : {std::tuple{0.5, 1.5, 3.0}, {1.2, 0.7, 2.5}, {2.0, 1.0, 2.5}, {0.6, 2.5, 3.1}})
        for (double z : {-0.7, -0.2, 0.3, 0.8}) {
            red = std::max(red, rel(ext_2f1({a, b, c, z}, zero).value, gauss_2f1(a, b, c, z).value));
            red = std::max(red, rel(ext_2f1({a, b, c, z}, zero, HyperMethod::euler_integral).value,
                                    gauss_2f1(a, b, c, z).value));
            red = std::max(red, rel(ext_1f1(b, c, 3 * z, zero).value, kummer_1f1(b, c, 3 * z).value));
            for (ExtParams p : {ExtParams{0.2, 0.1, 0.8, 1, 1}, ExtParams{0.3, 0.2, 0.9, 1.1, 0.7},
                                ExtParams{0.1, 0.4, 1, 1.3, 0.8}}) {
                auto s = ext_2f1({a, b, c, z}, p), e = ext_2f1({a, b, c, z}, p, HyperMethod::euler_integral);
                cross = std::max(cross, s.converged && e.converged ? rel(s.value, e.value) : inf);
                auto u = ext_1f1(b, c, 3 * z, p), w = ext_1f1(b, c, 3 * z, p, HyperMethod::euler_integral);
                cross = std::max(cross, u.converged && w.converged ? rel(u.value, w.value) : inf);
            }
        }
    double g1 = std::fabs(gauss_2f1(1, 1, 2, 0.5).value - 2 * std::log(2.0));
    double g2 = std::fabs(gauss_2f1(0.5, 0.5, 2, 1).value - 4 / pi);
    report(6, red <= 1e-10 && cross <= 1e-8 && g1 <= 1e-12 && g2 <= 1e-12,
           fmt("reduction %.2e, series vs integral %.2e, 2 ln 2 error %.1e, 4/pi error %.1e", red, cross, g1, g2),
           seconds_since(t0));
}

HyperPoint hp(HyperArgs a, ExtParams p) {
    HyperPoint h;
    h.args = a;
    h.params = p;
    return h;
}

const std::vector<HyperPoint>& hyper_points() {
    static const std::vector<HyperPoint> pts{
        hp({0.5, 1.5, 3, 0.2}, {0.2, 0.1, 0.8, 1, 1}),     hp({1.2, 0.7, 2.5, -0.4}, {0.3, 0.2, 0.9, 1.1, 0.7}),
        hp({2, 1, 2.5, 0.5}, {0.1, 0.1, 1, 1, 1}),         hp({0.6, 2.5, 3.1, -0.7}, {0.5, 0.1, 0.7, 1.3, 0.8}),
        hp({1.5, 0.6, 2.1, 0.35}, {0.05, 0.5, 1, 0.8, 1.3})};
    return pts;
}

void derivative() {
    auto t0 = clock_type::now();
    double worst = 0;
    for (auto h : hyper_points())
        for (int n : {1, 2}) {
            h.n = n;
            worst = std::max(worst, verify_hyper_identity("derivative", h, 1e-6).residual);
        }
    report(7, worst <= 1e-6, fmt("5 points, n = 1, 2, worst residual %.2e", worst), seconds_since(t0));
}

void generating_function() {
    auto t0 = clock_type::now();
    double worst = 0;
    for (auto h : hyper_points())
        for (auto [t, z] : {std::pair{0.1, 0.2}, {0.3, 0.3}}) {
            h.t = t;
            h.args.z = z;
            worst = std::max(worst, verify_hyper_identity("generating_function", h, 1e-6).residual);
        }
    report(8, worst <= 1e-6, fmt("5 parameter sets at (t, z) = (0.1, 0.2), (0.3, 0.3), worst residual %.2e", worst),
           seconds_since(t0));
}

void transformations() {
    auto t0 = clock_type::now();
    double worst = 0, printed_min = inf, printed_max = 0;
    for (auto h : hyper_points())
        for (const char* id : {"pfaff", "pfaff_argument", "kummer"}) {
            if (std::string(id) == "pfaff_argument") h.args.z = std::fabs(h.args.z);
            auto r = verify_hyper_identity(id, h, 1e-8);
            worst = std::max(worst, r.residual);
            double pr = r.info_value("printed_form_residual");
            printed_min = std::min(printed_min, pr);
            printed_max = std::max(printed_max, pr);
        }
    report(9, worst <= 1e-8,
           fmt("corrected forms worst %.2e; printed forms residual %.1e to %.1e (reported only)", worst, printed_min,
               printed_max),
           seconds_since(t0));
}

void distribution() {
    auto t0 = clock_type::now();
    const std::vector<std::pair<BetaArgs, ExtParams>> specs{{{1.5, 2.5}, {0.2, 0.1, 0.8, 1, 1}},
                                                            {{0.6, 1.5}, {0.5, 0, 0.7, 1.3, 0.8}},
                                                            {{2.5, 0.6}, {0.1, 0.5, 1, 1, 1}}};
    double norm = 0, var = 0, ks_margin = inf;
    bool mgf0 = true;
    DistAux aux;
    for (const auto& [a, p] : specs) {
        norm = std::max(norm, verify_dist_invariant("dist_normalization", a, p, aux, 1e-9).residual);
        var = std::max(var, verify_dist_invariant("dist_variance", a, p, aux, 1e-10).residual);
        mgf0 = mgf0 && mgf(DistSpec(a, p), 0.0, 40).value == 1.0;
        auto ks = verify_dist_invariant("dist_ks", a, p, aux, 0.0);
        ks_margin = std::min(ks_margin, ks.pass ? ks.tol - ks.lhs : -inf);
    }
    auto [m, v] = mean_variance(DistSpec({1, 1}, {0, 0, 1, 1, 1}));
    double um = std::fabs(m - 0.5), uv = std::fabs(v - 1.0 / 12);
    report(10, norm <= 1e-9 && var <= 1e-10 && mgf0 && um <= 1e-12 && uv <= 1e-12 && ks_margin > 0,
           fmt("normalization %.1e, variance %.1e, mgf(0) exact %s, uniform mean/var error %.1e/%.1e, "
               "KS below 1.63/sqrt(n) for 3 specs (smallest margin %.4f)",
               norm, var, mgf0 ? "yes" : "no", um, uv, ks_margin),
           seconds_since(t0));
}

void cli_check() {
    auto t0 = clock_type::now();
    int st = std::system((std::string(MLBETA_CLI) + " check --suite all --format plain > /dev/null").c_str());
    double s = seconds_since(t0);
    int code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    report(11, code == 0 && s < 60, fmt("check --suite all exit %d", code), s);
}

}  // namespace

int main() {
    classical_reduction();
    exponential_kernel();
    representations();
    identity_suite();
    mellin();
    hyper_layer();
    derivative();
    generating_function();
    transformations();
    distribution();
    cli_check();
    std::printf("%d of 11 criteria failed\n", failures);
    return failures ? 1 : 0;
}
