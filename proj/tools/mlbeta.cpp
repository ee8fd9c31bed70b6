// mlbeta: evaluate, tabulate and check the extended beta family.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mlbeta/dist.hpp"
#include "mlbeta/extbeta.hpp"
#include "mlbeta/hyper.hpp"
#include "mlbeta/mlf.hpp"
#include "mlbeta/suite.hpp"

using namespace mlbeta;
using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// shortest representation that parses back to the same double
std::string num(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

json jnum(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

const std::vector<std::string> param_names = {"eta1", "eta2", "eta3", "z",  "x", "t",    "p",     "q",
                                              "lambda", "sigma", "tau", "beta", "delta", "n", "terms"};

using Bindings = std::map<std::string, std::optional<double>>;

struct Sweep {
    std::string name;
    double start, stop;
    int count;
};

Sweep parse_sweep(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 4) throw UsageError("sweep must be PARAM:START:STOP:COUNT, got " + s);
    if (std::find(param_names.begin(), param_names.end(), parts[0]) == param_names.end())
        throw UsageError("unknown sweep parameter " + parts[0]);
    Sweep w;
    w.name = parts[0];
    try {
        w.start = std::stod(parts[1]);
        w.stop = std::stod(parts[2]);
        w.count = std::stoi(parts[3]);
    } catch (const std::exception&) {
        throw UsageError("malformed sweep " + s);
    }
    if (w.count < 2 || !(w.start < w.stop)) throw UsageError("sweep needs COUNT >= 2 and START < STOP");
    return w;
}

struct Value {
    double value = mlbeta::nan;
    double abs_err = mlbeta::nan;
    bool converged = true;
    std::string diagnostic;
};

class Inputs {
public:
    explicit Inputs(const Bindings& b) : b_(b) {}

    double get(const std::string& k) const {
        auto it = b_.find(k);
        if (it == b_.end() || !it->second) throw UsageError("missing --" + k);
        return *it->second;
    }
    double get(const std::string& k, double fallback) const {
        auto it = b_.find(k);
        return it == b_.end() || !it->second ? fallback : *it->second;
    }
    int get_int(const std::string& k, int fallback) const {
        double v = get(k, fallback);
        if (v != std::floor(v)) throw UsageError("--" + k + " must be an integer");
        return static_cast<int>(v);
    }
    ExtParams params() const {
        return {get("p", 0.0), get("q", 0.0), get("lambda", 1.0), get("sigma", 1.0), get("tau", 1.0)};
    }

private:
    const Bindings& b_;
};

Value from_quad(const quad::QuadResult& q) { return {q.value, q.abs_error_estimate, q.converged, q.diagnostic}; }
Value from_series(const SeriesResult& s) { return {s.value, s.tail_estimate, s.converged, s.diagnostic}; }

HyperMethod parse_method(const std::string& m) {
    if (m == "series") return HyperMethod::series;
    if (m == "euler" || m == "euler_integral") return HyperMethod::euler_integral;
    throw UsageError("method must be series or euler");
}

Value evaluate(const std::string& fn, const Inputs& in, double tol, const std::string& method) {
    if (fn == "extbeta") return from_quad(ext_beta({in.get("eta1"), in.get("eta2")}, in.params(), {}, tol));
    if (fn == "extbeta_incomplete")
        return from_quad(ext_beta_incomplete(in.get("x"), {in.get("eta1"), in.get("eta2")}, in.params(), tol));
    if (fn == "ml") {
        ml::MittagLeffler E(in.get("lambda", 1.0), in.get("beta", 1.0), in.get("delta", 1.0));
        return {E(in.get("x")), mlbeta::nan, true, {}};
    }
    if (fn == "f" || fn == "ext_2f1") {
        HyperArgs a{in.get("eta1"), in.get("eta2"), in.get("eta3"), in.get("z")};
        return from_series(ext_2f1(a, in.params(), parse_method(method), tol));
    }
    if (fn == "phi" || fn == "ext_1f1")
        return from_series(ext_1f1(in.get("eta2"), in.get("eta3"), in.get("z"), in.params(), parse_method(method), tol));
    if (fn == "f_deriv") {
        HyperArgs a{in.get("eta1"), in.get("eta2"), in.get("eta3"), in.get("z")};
        return {ext_2f1_deriv(in.get_int("n", 1), a, in.params(), tol), mlbeta::nan, true, {}};
    }
    if (fn == "gauss_2f1")
        return from_series(gauss_2f1(in.get("eta1"), in.get("eta2"), in.get("eta3"), in.get("z")));
    if (fn == "kummer_1f1") return from_series(kummer_1f1(in.get("eta2"), in.get("eta3"), in.get("z")));
    throw UsageError("unknown function " + fn +
                     " (extbeta, extbeta_incomplete, ml, f, phi, f_deriv, gauss_2f1, kummer_1f1)");
}

void print_value(const std::string& fn, const Value& v, const std::string& fmt) {
    if (fmt == "json") {
        json j{{"fn", fn}, {"value", jnum(v.value)}, {"abs_err", jnum(v.abs_err)}, {"converged", v.converged}};
        std::cout << j.dump() << "\n";
    } else if (fmt == "csv") {
        std::cout << "value,abs_err\n" << num(v.value) << "," << num(v.abs_err) << "\n";
    } else {
        std::cout << num(v.value) << "\n";
    }
}

struct Row {
    std::vector<std::pair<std::string, double>> bindings;
    Value v;
};

std::string render_table(const std::vector<Row>& rows, const std::string& fmt) {
    detail::require(!rows.empty(), "table needs at least one row");
    std::ostringstream os;
    if (fmt == "json") {
        json arr = json::array();
        for (const auto& r : rows) {
            json o = json::object();
            for (const auto& [k, v] : r.bindings) o[k] = jnum(v);
            o["value"] = jnum(r.v.value);
            o["abs_err"] = jnum(r.v.abs_err);
            arr.push_back(o);
        }
        os << arr.dump() << "\n";
        return os.str();
    }
    const char sep = fmt == "csv" ? ',' : ' ';
    for (const auto& [k, v] : rows.front().bindings) os << k << sep;
    os << "value" << sep << "abs_err\n";
    for (const auto& r : rows) {
        for (const auto& [k, v] : r.bindings) os << num(v) << sep;
        os << num(r.v.value) << sep << num(r.v.abs_err) << "\n";
    }
    return os.str();
}

void print_report(const suite::Entry& e, const std::string& fmt) {
    const CheckReport& r = e.report;
    if (fmt == "json") {
        json pt = json::object();
        for (const auto& [k, v] : r.point) pt[k] = jnum(v);
        json j{{"identity", r.identity}, {"point", pt},        {"lhs", jnum(r.lhs)}, {"rhs", jnum(r.rhs)},
               {"residual", jnum(r.residual)}, {"tol", jnum(r.tol)}, {"pass", r.pass}};
        if (!r.info.empty()) {
            json info = json::object();
            for (const auto& [k, v] : r.info) info[k] = jnum(v);
            j["info"] = info;
        }
        if (!r.note.empty()) j["note"] = r.note;
        std::cout << j.dump() << "\n";
        return;
    }
    const char sep = fmt == "csv" ? ',' : ' ';
    std::cout << r.identity << sep << e.grid_index << sep << num(r.lhs) << sep << num(r.rhs) << sep
              << num(r.residual) << sep << num(r.tol) << sep << (r.pass ? "PASS" : "FAIL");
    if (fmt != "csv" && !r.note.empty()) std::cout << " # " << r.note;
    std::cout << "\n";
}

void apply_budget_env() {
    const char* s = std::getenv("MLBETA_MAX_EVALS");
    if (!s) return;
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end == s || *end != '\0' || v == 0) throw UsageError("MLBETA_MAX_EVALS must be a positive integer");
    quad::set_default_max_evals(static_cast<std::size_t>(v));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mittag-Leffler extended beta functions, hypergeometric functions and distribution"};
    app.require_subcommand(1);

    Bindings bindings;
    for (const auto& k : param_names) bindings[k];
    std::string fn, fmt = "plain", method = "series", suite_name = "all", what;
    std::optional<double> tol;
    std::uint64_t seed = 42;
    std::vector<std::string> sweeps;
    std::size_t points = 60, samples = 10000;

    auto add_common = [&](CLI::App* sub) {
        for (const auto& k : param_names) sub->add_option("--" + k, bindings[k], k);
        sub->add_option("--format", fmt, "csv, json or plain")->check(CLI::IsMember({"csv", "json", "plain"}));
        sub->add_option("--tol", tol, "tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--seed", seed, "random seed");
    };

    auto* eval = app.add_subcommand("eval", "evaluate one function");
    eval->add_option("fn,--fn", fn, "function name");
    eval->add_option("--method", method, "series or euler (hypergeometric functions)");
    add_common(eval);

    auto* table = app.add_subcommand("table", "tabulate a function over parameter sweeps");
    table->add_option("fn,--fn", fn, "function name");
    table->add_option("--method", method, "series or euler");
    table->add_option("--sweep", sweeps, "PARAM:START:STOP:COUNT")->required();
    add_common(table);

    auto* check = app.add_subcommand("check", "run the identity checks on the default grid");
    check->add_option("--suite", suite_name, "beta, hyper, dist or all")
        ->check(CLI::IsMember({"beta", "hyper", "dist", "all"}));
    check->add_option("--points", points, "maximum grid points per identity")->check(CLI::PositiveNumber);
    check->add_option("--samples", samples, "samples for the KS check")->check(CLI::PositiveNumber);
    add_common(check);

    auto* dist = app.add_subcommand("dist", "query the distribution");
    dist->add_option("what", what, "pdf, cdf, mean, var, mgf or sample")
        ->required()
        ->check(CLI::IsMember({"pdf", "cdf", "mean", "var", "mgf", "sample"}));
    add_common(dist);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        apply_budget_env();
        const Inputs in(bindings);

        if (*eval) {
            if (fn.empty()) throw UsageError("eval needs a function name");
            Value v = evaluate(fn, in, tol.value_or(1e-12), method);
            print_value(fn, v, fmt);
            if (!v.converged) {
                std::cerr << "not converged: " << v.diagnostic << "\n";
                return 1;
            }
            return 0;
        }

        if (*table) {
            if (fn.empty()) throw UsageError("table needs a function name");
            std::vector<Sweep> axes;
            for (const auto& s : sweeps) axes.push_back(parse_sweep(s));
            std::vector<Row> rows;
            bool ok = true;
            // row-major, first declared axis outermost
            std::vector<int> idx(axes.size(), 0);
            while (true) {
                Bindings b = bindings;
                Row row;
                for (std::size_t a = 0; a < axes.size(); ++a) {
                    const Sweep& w = axes[a];
                    double v = w.start + (w.stop - w.start) * idx[a] / (w.count - 1);
                    if (idx[a] == w.count - 1) v = w.stop;
                    b[w.name] = v;
                    row.bindings.push_back({w.name, v});
                }
                row.v = evaluate(fn, Inputs(b), tol.value_or(1e-12), method);
                ok = ok && row.v.converged;
                rows.push_back(row);
                int a = static_cast<int>(axes.size()) - 1;
                while (a >= 0 && ++idx[a] == axes[a].count) idx[a--] = 0;
                if (a < 0) break;
            }
            std::cout << render_table(rows, fmt);
            return ok ? 0 : 1;
        }

        if (*check) {
            suite::Options opt;
            opt.tol = tol;
            opt.max_points = points;
            opt.ks_samples = samples;
            opt.seed = seed;
            auto out = suite::run(suite_name, opt);
            if (fmt == "csv") std::cout << "identity,grid_index,lhs,rhs,residual,tol,status\n";
            std::size_t failed = 0;
            for (const auto& e : out.entries) {
                print_report(e, fmt);
                failed += !e.report.pass;
            }
            std::cerr << out.entries.size() << " checks, " << failed << " failed, " << out.skipped
                      << " grid points outside an identity's domain skipped\n";
            return out.all_pass() ? 0 : 1;
        }

        if (*dist) {
            DistSpec d({in.get("eta1"), in.get("eta2")}, in.params());
            if (what == "sample") {
                const double n = in.get("n", 1.0);
                if (n < 0 || n != std::floor(n)) throw UsageError("--n must be a non-negative integer");
                auto s = sample(d, static_cast<std::size_t>(n), seed);
                if (fmt == "json") {
                    json arr = json::array();
                    for (double v : s.values) arr.push_back(v);
                    std::cout << arr.dump() << "\n";
                } else {
                    if (fmt == "csv") std::cout << "value\n";
                    for (double v : s.values) std::cout << num(v) << "\n";
                }
                if (!s.all_converged) std::cerr << "bisection did not converge for some samples\n";
                return s.all_converged ? 0 : 1;
            }
            Value v;
            if (what == "pdf") v = {pdf(d, in.get("x")), mlbeta::nan, true, {}};
            else if (what == "cdf") v = {cdf(d, in.get("x")), mlbeta::nan, true, {}};
            else if (what == "mean") v = {mean_variance(d).first, mlbeta::nan, true, {}};
            else if (what == "var") v = {mean_variance(d).second, mlbeta::nan, true, {}};
            else v = from_series(mgf(d, in.get("t"), in.get_int("terms", 40)));
            print_value(what, v, fmt);
            return v.converged ? 0 : 1;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n" << app.help();
        return 2;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n" << app.help();
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
