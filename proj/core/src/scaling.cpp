#include "subdiff/scaling.hpp"
#include "subdiff/errors.hpp"
#include "subdiff/kernel_scales.hpp"
#include "subdiff/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace subdiff {

std::string to_string(Route r) {
    switch (r) {
        case Route::bounded: return "bounded";
        case Route::h_comparable: return "h_comparable";
        case Route::class_g: return "class_g";
        case Route::unknown: return "unknown";
        case Route::none: return "none";
    }
    return "?";
}

std::string to_string(ClassGReport::Verdict v) {
    switch (v) {
        case ClassGReport::Verdict::in_g: return "in_g";
        case ClassGReport::Verdict::not_in_g: return "not_in_g";
        case ClassGReport::Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

double ScalingProfile::operator()(double r) const { return eval_ell(*this, r); }

double eval_ell(const ScalingProfile& p, double r) {
    if (!(r > 0.0)) throw config_error("eval_ell: r must be positive (profile " + p.name + ")");
    const double v = p.eval(r);
    if (!std::isfinite(v) || !(v > 0.0)) {
        throw numeric_error("eval_ell: non-finite or non-positive value of profile " +
                            p.name + " at r=" + std::to_string(r));
    }
    return v;
}

namespace {

std::vector<double> parse_params(const std::string& spec) {
    std::vector<double> out;
    auto pos = spec.find(':');
    if (pos == std::string::npos) return out;
    std::stringstream ss(spec.substr(pos + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (...) {
            throw config_error("catalog_profile: bad parameter '" + tok + "' in " + spec);
        }
    }
    return out;
}

double log1p_pos(double x) { return std::log1p(x); }

} // namespace

ScalingProfile catalog_profile(const std::string& spec) {
    const std::string head = spec.substr(0, spec.find(':'));
    const auto par = parse_params(spec);
    ScalingProfile p;
    p.name = spec;
    if (head == "power" || head == "cauchy") {
        double d = (head == "cauchy") ? 1.0 : (par.empty() ? 0.5 : par[0]);
        if (head == "cauchy") p.name = "cauchy";
        if (!(d > 0.0) || d > 1.0)
            throw config_error("catalog_profile: power exponent must lie in (0, 1]");
        p.eval = [d](double r) { return std::pow(r, d); };
        p.delta = {d, d, d, d};
        p.declared_route = Route::h_comparable;
    } else if (head == "log") {
        p.eval = [](double r) { return log1p_pos(r); };
        p.delta = {0.0, 0.0, 1.0, 1.0};
        p.declared_route = Route::class_g;
    } else if (head == "log-pow") {
        double b = par.size() > 0 ? par[0] : 1.0;
        double c1 = par.size() > 1 ? par[1] : 1.0;
        double c2 = par.size() > 2 ? par[2] : 0.0;
        if (!(b > 0.0) || c1 < 0.0 || c2 < 0.0 || !(c1 + c2 > 0.0))
            throw config_error("catalog_profile: log-pow needs b>0, c1,c2>=0, c1+c2>0");
        if (b * (c1 + c2) >= 2.0)
            throw config_error("catalog_profile: log-pow small-r exponent b*(c1+c2) must be < 2");
        p.eval = [b, c1, c2](double r) {
            const double l1 = log1p_pos(std::pow(r, b));
            double v = std::pow(l1, c1);
            if (c2 > 0.0) v *= std::pow(log1p_pos(l1), c2);
            return v;
        };
        p.delta = {0.0, 0.0, b * (c1 + c2), b * (c1 + c2)};
        p.declared_route = Route::class_g;
    } else if (head == "log-capped") {
        double g = par.empty() ? 0.5 : par[0];
        if (!(g > 0.0) || g >= 2.0) throw config_error("catalog_profile: log-capped gamma in (0,2)");
        p.eval = [g](double r) { return std::min(std::pow(r, g), 1.0); };
        p.delta = {0.0, 0.0, g, g};
        p.declared_route = Route::bounded;
    } else if (head == "exp-log-pow") {
        double b = par.empty() ? 0.25 : par[0];
        if (!(b > 0.0) || b >= 0.5) throw config_error("catalog_profile: exp-log-pow b in (0, 1/2)");
        p.eval = [b](double r) { return std::expm1(std::pow(log1p_pos(r), b)); };
        p.delta = {0.0, 0.0, b, b};
        p.declared_route = Route::class_g;
    } else if (head == "sin-log") {
        p.eval = [](double r) { return (2.0 + std::sin(r)) * log1p_pos(r); };
        p.delta = {0.0, 0.0, 1.0, 1.0};
        p.declared_route = Route::class_g;
    } else if (head == "const") {
        double c = par.empty() ? 1.0 : par[0];
        if (!(c > 0.0)) throw config_error("catalog_profile: const c must be positive");
        // delta3 = 0: no kernel scales (tail integral L diverges)
        p.eval = [c](double) { return c; };
        p.delta = {0.0, 0.0, 0.0, 0.0};
        p.declared_route = Route::bounded;
    } else {
        throw config_error("catalog_profile: unknown profile '" + spec + "'");
    }
    return p;
}

std::vector<std::string> catalog_names() {
    return {"power:0.5", "cauchy", "log", "log-pow:1,1,1", "log-capped:0.5",
            "exp-log-pow:0.25", "sin-log", "const:1"};
}

namespace {

struct FittedSide {
    double C1, C2;
};

// extremal constants over all ordered pairs of a grid, O(N) via running
// extrema of g_i(x) = ell(x) x^{-delta_i}
FittedSide fit_side(const ScalingProfile& p, const std::vector<double>& grid,
                    double d_lower, double d_upper) {
    double run_max_g1 = -1.0, run_min_g2 = -1.0;
    double C1 = std::numeric_limits<double>::infinity();
    double C2 = 0.0;
    for (double x : grid) {
        const double lx = eval_ell(p, x);
        const double g1 = lx * std::pow(x, -d_lower);
        const double g2 = lx * std::pow(x, -d_upper);
        if (run_max_g1 > 0.0) {
            C1 = std::min(C1, g1 / run_max_g1);
            C2 = std::max(C2, g2 / run_min_g2);
        }
        run_max_g1 = std::max(run_max_g1, g1);
        run_min_g2 = (run_min_g2 < 0.0) ? g2 : std::min(run_min_g2, g2);
    }
    if (!std::isfinite(C1)) C1 = 1.0;
    if (C2 == 0.0) C2 = 1.0;
    return {C1, C2};
}

} // namespace

WeakScalingReport check_weak_scaling(const ScalingProfile& p,
                                     const std::vector<double>& r_grid) {
    if (r_grid.size() < 8) throw config_error("check_weak_scaling: grid too small");
    const double lo = r_grid.front(), hi = r_grid.back();
    if (!(lo <= 1e-4) || !(hi >= 1e4))
        throw config_error("check_weak_scaling: grid must span 4 decades on each side of 1");

    std::vector<double> small_side, large_side; // [1, hi] and [lo, 1]
    for (double r : r_grid) (r >= 1.0 ? small_side : large_side).push_back(r);
    large_side.push_back(1.0);

    WeakScalingReport rep;
    const auto s = fit_side(p, small_side, p.delta[0], p.delta[1]);
    const auto l = fit_side(p, large_side, p.delta[2], p.delta[3]);
    rep.C1_small = s.C1;
    rep.C2_small = s.C2;
    rep.C1_large = l.C1;
    rep.C2_large = l.C2;

    bool admissible = (p.delta[0] >= 0.0 && p.delta[0] <= p.delta[1] && p.delta[1] <= 1.0 &&
                       p.delta[2] >= 0.0 && p.delta[2] <= p.delta[3] && p.delta[3] < 2.0);

    // window stability: the fitted C1/C2 on [1, W] must not drift as W grows,
    // otherwise no constant works on [1, infinity) with the declared exponent
    bool stable = true;
    std::vector<double> windows = {1e2, 1e4, hi};
    double prevC1 = -1.0, prevC2 = -1.0;
    for (double w : windows) {
        std::vector<double> sub;
        for (double r : small_side)
            if (r <= w * 1.0000001) sub.push_back(r);
        const auto fw = fit_side(p, sub, p.delta[0], p.delta[1]);
        if (prevC1 > 0.0 && (fw.C1 < 0.6 * prevC1 || fw.C2 > prevC2 / 0.6)) stable = false;
        prevC1 = fw.C1;
        prevC2 = fw.C2;
    }

    rep.pass = admissible && stable && rep.C1_small > 0.0 && rep.C1_large > 0.0 &&
               std::isfinite(rep.C2_small) && std::isfinite(rep.C2_large);
    if (!admissible) rep.detail = "declared exponents outside admissible ranges";
    else if (!stable) rep.detail = "fitted constants drift with the window; declared exponents unattainable";
    else rep.detail = "ok";
    return rep;
}

WeakScalingReport check_weak_scaling(const ScalingProfile& p) {
    return check_weak_scaling(p, log_grid(1e-6, 1e6, 32));
}

void validate_profile(const ScalingProfile& p, double r_min, double r_max) {
    if (!p.eval) throw config_error("validate_profile: profile has no evaluator");
    const auto grid = log_grid(r_min, r_max, 16);
    for (double r : grid) eval_ell(p, r); // throws on non-finite/non-positive
    auto rep = check_weak_scaling(p, log_grid(std::min(r_min, 1e-6), std::max(r_max, 1e6), 32));
    if (!rep.pass)
        throw config_error("validate_profile: " + p.name + ": " + rep.detail);
}

namespace {

// J(r) = int_1^r ell(s)/s ds on a log grid, incremental Gauss-Legendre
// panels in u = log s
struct ClassGScan {
    std::vector<double> r;
    std::vector<double> J;
};

ClassGScan scan_inner_integral(const ScalingProfile& p, double r_max, int per_decade) {
    ClassGScan sc;
    sc.r = log_grid(1.0, r_max, per_decade);
    sc.J.resize(sc.r.size(), 0.0);
    kahan_sum acc;
    for (size_t i = 1; i < sc.r.size(); ++i) {
        const double u0 = std::log(sc.r[i - 1]);
        const double u1 = std::log(sc.r[i]);
        acc.add(gauss_legendre([&](double u) { return eval_ell(p, std::exp(u)); }, u0, u1, 32));
        sc.J[i] = acc.value();
    }
    return sc;
}

double class_g_value(const ScalingProfile& p, double a, double r, double J) {
    return J * std::exp(-a * J / eval_ell(p, r));
}

} // namespace

double class_g_statistic(const ScalingProfile& p, double a, double r_max) {
    if (!(a > 0.0)) throw config_error("class_g_statistic: a must be positive");
    if (!(r_max > 1.0)) throw config_error("class_g_statistic: r_max must exceed 1");
    const auto sc = scan_inner_integral(p, r_max, 64);
    double best = 0.0;
    size_t best_i = 0;
    for (size_t i = 1; i < sc.r.size(); ++i) {
        const double v = class_g_value(p, a, sc.r[i], sc.J[i]);
        if (v > best) {
            best = v;
            best_i = i;
        }
    }
    if (best_i == 0) return best;
    // local golden-section refinement around the grid argmax
    const size_t lo_i = best_i - 1;
    const size_t hi_i = std::min(best_i + 1, sc.r.size() - 1);
    double lo = sc.r[lo_i], hi = sc.r[hi_i];
    auto value_at = [&](double r) {
        const double J = sc.J[lo_i] +
                         gauss_legendre([&](double u) { return eval_ell(p, std::exp(u)); },
                                        std::log(sc.r[lo_i]), std::log(r), 32);
        return class_g_value(p, a, r, J);
    };
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = value_at(x1), f2 = value_at(x2);
    for (int it = 0; it < 48 && (hi - lo) > 1e-12 * hi; ++it) {
        if (f1 < f2) {
            lo = x1; x1 = x2; f1 = f2;
            x2 = lo + gr * (hi - lo); f2 = value_at(x2);
        } else {
            hi = x2; x2 = x1; f2 = f1;
            x1 = hi - gr * (hi - lo); f1 = value_at(x1);
        }
    }
    return std::max({best, f1, f2});
}

ClassGReport check_class_g(const ScalingProfile& p, std::vector<double> a_values) {
    ClassGReport rep;
    rep.profile = p.name;
    rep.a_values = std::move(a_values);
    bool all_stable = true;
    bool any_diverging = false;
    for (double a : rep.a_values) {
        std::array<double, 3> s{};
        for (int w = 0; w < 3; ++w) s[(size_t)w] = class_g_statistic(p, a, rep.windows[(size_t)w]);
        rep.statistics.push_back(s);
        const double growth = (s[2] > 0.0) ? (s[2] - s[1]) / s[2] : 0.0;
        if (growth >= 0.01) all_stable = false;
        if (growth > 0.20) any_diverging = true;
    }
    rep.verdict = all_stable   ? ClassGReport::Verdict::in_g
                  : any_diverging ? ClassGReport::Verdict::not_in_g
                                  : ClassGReport::Verdict::inconclusive;
    return rep;
}

Route classify_route(const ScalingProfile& p, const KernelScales* scales) {
    // bounded: sup ell over the last two decades comparable to the sup before
    {
        double sup_mid = 0.0, sup_far = 0.0;
        for (double r : log_grid(1.0, 1e6, 16)) sup_mid = std::max(sup_mid, eval_ell(p, r));
        for (double r : log_grid(1e6, 1e8, 16)) sup_far = std::max(sup_far, eval_ell(p, r));
        if (sup_far <= 1.02 * sup_mid) return Route::bounded;
    }
    if (scales != nullptr) {
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (double r : log_grid(std::max(1e-6, scales->r_min()), 1.0, 32)) {
            const double ratio = scales->h(r) / eval_ell(p, 1.0 / r);
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        if (hi / lo < 3.0) return Route::h_comparable;
    }
    if (check_class_g(p).verdict == ClassGReport::Verdict::in_g) return Route::class_g;
    return Route::none;
}

ScalingProfile closure_generate(const ScalingProfile& base, ClosureRule rule,
                                const ClosureParams& params) {
    ScalingProfile out;
    switch (rule) {
        case ClosureRule::scale_bounded_factor: {
            if (!params.factor) throw config_error("closure_generate: factor required");
            auto f = params.factor;
            auto b = base.eval;
            out.name = base.name + "*bounded";
            out.eval = [b, f](double r) { return b(r) * f(r); };
            out.delta = base.delta;
            break;
        }
        case ClosureRule::power_substitution: {
            if (!(params.b > 0.0)) throw config_error("closure_generate: b must be positive");
            auto b = base.eval;
            const double pw = params.b;
            out.name = base.name + "(r^" + std::to_string(pw) + ")";
            out.eval = [b, pw](double r) { return b(std::pow(r, pw)); };
            out.delta = {base.delta[0] * pw, base.delta[1] * pw,
                         base.delta[2] * pw, base.delta[3] * pw};
            break;
        }
        case ClosureRule::divide_increasing: {
            if (!params.factor) throw config_error("closure_generate: divisor required");
            auto f = params.factor;
            auto b = base.eval;
            out.name = base.name + "/increasing";
            out.eval = [b, f](double r) { return b(r) / f(r); };
            out.delta = {0.0, base.delta[1], base.delta[2], base.delta[3]};
            break;
        }
        case ClosureRule::log_iterates: {
            if (params.iterate_pows.empty())
                throw config_error("closure_generate: iterate powers required");
            auto pows = params.iterate_pows;
            double d_small = 0.0;
            for (auto& kb : pows) {
                if (kb.first < 1) throw config_error("closure_generate: iterate depth >= 1");
                d_small += kb.second;
            }
            out.name = "log-iterates";
            out.eval = [pows](double r) {
                double v = 1.0;
                for (auto& kb : pows) {
                    double x = r;
                    for (int k = 0; k < kb.first; ++k) x = std::log1p(x);
                    v *= std::pow(x, kb.second);
                }
                return v;
            };
            out.delta = {0.0, 0.0, d_small, d_small};
            break;
        }
        case ClosureRule::exp_log_power: {
            if (!(params.b > 0.0) || params.b >= 0.5)
                throw config_error("closure_generate: exp_log_power b in (0, 1/2)");
            return catalog_profile("exp-log-pow:" + std::to_string(params.b));
        }
    }
    out.declared_route = Route::class_g;
    return out;
}

EnvelopeResult monotone_envelope(const std::vector<double>& r,
                                 const std::vector<double>& f) {
    if (r.size() != f.size() || r.size() < 2)
        throw config_error("monotone_envelope: need matching tables of length >= 2");
    for (size_t i = 1; i < r.size(); ++i)
        if (!(r[i] > r[i - 1])) throw config_error("monotone_envelope: r not strictly increasing");

    const size_t n = r.size();
    std::vector<double> g(n);
    g[0] = f[0];
    for (size_t i = 1; i < n; ++i) g[i] = std::max(g[i - 1], f[i]);
    for (size_t i = 1; i < n; ++i)
        if (g[i] < g[i - 1]) throw numeric_error("monotone_envelope: running max not monotone");

    EnvelopeResult out;
    out.r = r;
    out.value = g;

    size_t i = 0;
    while (i + 1 < n) {
        if (g[i + 1] > g[i]) {
            ++i;
            continue;
        }
        size_t j = i;
        while (j + 1 < n && g[j + 1] == g[j]) ++j; // flat run [i, j]
        if (j + 1 < n) {
            const double eps = std::min(1.0, 0.5 * (r[j + 1] - r[j]));
            const double x_end = r[j] + eps;
            // interpolated target inside the next strictly increasing cell
            const double w = (x_end - r[j]) / (r[j + 1] - r[j]);
            const double target = g[j] + w * (g[j + 1] - g[j]);
            for (size_t k = i; k <= j; ++k) {
                const double s = (r[k] - r[i]) / (x_end - r[i]);
                out.value[k] = g[i] + s * (target - g[i]);
            }
        } else {
            // trailing flat run: minimal tilt keeps strict monotonicity
            for (size_t k = i + 1; k <= j; ++k) {
                const double s = (r[k] - r[i]) / (r[j] - r[i]);
                out.value[k] = g[i] * (1.0 + 1e-9 * s);
            }
        }
        i = j + 1;
    }
    double C = 1.0;
    for (size_t k = 0; k < n; ++k)
        if (g[k] > 0.0) C = std::max(C, out.value[k] / g[k]);
    out.comparability = C;
    for (size_t k = 1; k < n; ++k)
        if (!(out.value[k] > out.value[k - 1]))
            throw numeric_error("monotone_envelope: output not strictly increasing");
    return out;
}

} // namespace subdiff
