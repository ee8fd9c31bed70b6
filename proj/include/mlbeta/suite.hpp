#pragma once

// Identity checks over the default parameter grid.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "check.hpp"
#include "dist.hpp"
#include "extbeta.hpp"
#include "hyper.hpp"

namespace mlbeta::suite {

struct GridPoint {
    BetaArgs args;
    ExtParams params;
};

// p, q, lambda, sigma, tau, eta1, eta2; the last axis varies fastest
inline std::vector<GridPoint> default_grid() {
    const std::array<double, 3> pq{0.0, 0.1, 0.5}, lam{0.7, 1.0, 1.5}, st{0.8, 1.0, 1.3}, eta{0.6, 1.5, 2.5};
    std::vector<GridPoint> g;
    for (double p : pq)
        for (double q : pq)
            for (double l : lam)
                for (double s : st)
                    for (double t : st)
                        for (double e1 : eta)
                            for (double e2 : eta) g.push_back({{e1, e2}, {p, q, l, s, t}});
    return g;
}

struct Options {
    std::optional<double> tol;  // overrides every default tolerance except dist_ks
    std::size_t max_points = 60;
    std::size_t mellin_points = 2;
    std::size_t ks_points = 3;
    std::size_t ks_samples = 10000;
    std::uint64_t seed = 42;
};

inline double default_tol(const std::string& id) {
    if (id == "functional_relation" || id == "dist_normalization" || id == "dist_cdf") return 1e-9;
    if (id == "summation_infinite" || id == "generating_function" || id == "derivative") return 1e-6;
    if (id == "mellin" || id == "mellin_f" || id == "mellin_phi") return 1e-4;
    if (id == "classical_reduction" || id == "dist_variance") return 1e-10;
    return 1e-8;
}

inline bool is_mellin(const std::string& id) { return id == "mellin" || id == "mellin_f" || id == "mellin_phi"; }

enum class Family { beta, hyper, dist };

struct Entry {
    std::size_t grid_index;
    CheckReport report;
};

struct Outcome {
    std::vector<Entry> entries;  // sorted by identity then grid index
    std::size_t skipped = 0;     // grid points outside an identity's domain
    bool all_pass() const {
        return !entries.empty() &&
               std::all_of(entries.begin(), entries.end(), [](const Entry& e) { return e.report.pass; });
    }
};

inline std::vector<std::pair<Family, std::string>> identities(const std::string& which) {
    std::vector<std::pair<Family, std::string>> out;
    if (which == "beta" || which == "all")
        for (auto id : beta_identities) out.push_back({Family::beta, id});
    if (which == "hyper" || which == "all")
        for (auto id : hyper_identities) out.push_back({Family::hyper, id});
    if (which == "dist" || which == "all")
        for (auto id : dist_invariants) out.push_back({Family::dist, id});
    detail::require(!out.empty(), "suite must be one of beta, hyper, dist, all");
    return out;
}

inline HyperPoint hyper_point(const GridPoint& g, std::size_t index) {
    static constexpr double zs[] = {0.3, -0.4, 0.6};
    HyperPoint h;
    h.args = {g.args.eta1, g.args.eta2, g.args.eta1 + g.args.eta2, zs[index % 3]};
    h.params = g.params;
    h.t = index % 2 ? 0.3 : 0.1;
    h.n = static_cast<int>(index % 2) + 1;
    h.r = index % 2 ? 0.25 : 0.5;
    h.s = index % 2 ? 0.75 : 0.5;
    return h;
}

// One identity at one grid point; nullopt when the point is outside the
// identity's domain.
inline std::optional<CheckReport> run_one(Family fam, const std::string& id, const GridPoint& g,
                                          std::size_t index, const Options& opt) {
    const double tol = id == "dist_ks" ? 0.0 : opt.tol.value_or(default_tol(id));
    try {
        switch (fam) {
            case Family::beta: {
                BetaAux aux;
                aux.n = static_cast<int>(index % 3) + 1;
                aux.r = index % 2 ? 0.25 : 0.5;
                aux.s = index % 2 ? 0.75 : 0.5;
                EvalContext ctx;
                return verify_beta_identity(id, g.args, g.params, aux, tol, ctx);
            }
            case Family::hyper: {
                HyperPoint h = hyper_point(g, index);
                if (id == "pfaff_argument") h.args.z = std::fabs(h.args.z);
                // N = 32 terms resolve the generating function only while t / (1 - z) stays small
                if (id == "generating_function") h.args.z = index % 2 ? 0.3 : 0.2;
                EvalContext ctx;
                return verify_hyper_identity(id, h, tol, ctx);
            }
            case Family::dist: {
                DistAux aux;
                aux.samples = opt.ks_samples;
                aux.seed = opt.seed;
                aux.x = index % 2 ? 0.7 : 0.3;
                aux.t = index % 2 ? -1.0 : 1.0;
                return verify_dist_invariant(id, g.args, g.params, aux, tol);
            }
        }
    } catch (const domain_error&) {
        return std::nullopt;
    }
    return std::nullopt;
}

// Walks the grid in a fixed scrambled order so that the first accepted points
// spread over every axis.
inline Outcome run(const std::string& which, const Options& opt = {}) {
    const auto grid = default_grid();
    const std::size_t M = grid.size();
    constexpr std::size_t stride = 1009;  // coprime to 3^7
    Outcome out;
    for (const auto& [fam, id] : identities(which)) {
        std::size_t cap = opt.max_points;
        if (is_mellin(id)) cap = std::min(cap, opt.mellin_points);
        if (id == "dist_ks") cap = std::min(cap, opt.ks_points);
        std::vector<Entry> got;
        std::vector<double> mellin_lambdas;
        for (std::size_t j = 0; j < M && got.size() < cap; ++j) {
            const std::size_t gi = (j * stride + 7) % M;
            const GridPoint& g = grid[gi];
            // the 2-D Mellin quadrature is only practical where the kernel decays fast
            // and one point per lambda keeps it affordable
            if (is_mellin(id) && (g.params.lambda > 1.0 || std::count(mellin_lambdas.begin(), mellin_lambdas.end(),
                                                                      g.params.lambda)))
                continue;
            auto rep = run_one(fam, id, g, gi, opt);
            if (!rep) {
                ++out.skipped;
                continue;
            }
            if (is_mellin(id)) mellin_lambdas.push_back(g.params.lambda);
            got.push_back({gi, std::move(*rep)});
        }
        std::sort(got.begin(), got.end(), [](const Entry& a, const Entry& b) { return a.grid_index < b.grid_index; });
        for (auto& e : got) out.entries.push_back(std::move(e));
    }
    std::stable_sort(out.entries.begin(), out.entries.end(),
                     [](const Entry& a, const Entry& b) { return a.report.identity < b.report.identity; });
    return out;
}

}  // namespace mlbeta::suite
