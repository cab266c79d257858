#include "subdiff/heat_kernel.hpp"
#include "subdiff/errors.hpp"
#include "subdiff/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace subdiff {

namespace {

constexpr double pi = std::numbers::pi;

double sphere_surface(int d) {
    // surface measure of S^{d-1}
    switch (d) {
        case 1: return 2.0;
        case 2: return 2.0 * pi;
        case 3: return 4.0 * pi;
        case 4: return 2.0 * pi * pi;
        case 5: return 8.0 * pi * pi / 3.0;
        default: throw config_error("sphere_surface: unsupported dimension");
    }
}

} // namespace

SpaceGrid auto_heat_grid(const LevySymbol& symbol, const KernelScales& scales,
                         double t, int n, int dimension) {
    if (!(t > 0.0)) throw config_error("auto_heat_grid: t must be positive");
    double hw = 10.0 * scales.h_inverse(std::min(1.0 / t, scales.h(scales.r_min()) * 0.99));
    hw = std::max(hw, 1.0);
    for (int attempt = 0; attempt < 16; ++attempt) {
        SpaceGrid g(dimension, hw, n);
        const double nyq = g.nyquist() * std::sqrt((double)dimension);
        if (nyq > symbol.rho_max()) {
            hw *= 2.0; // lower Nyquist into the tabulated symbol range
            continue;
        }
        if (t * symbol(g.nyquist()) < -std::log(1e-12)) {
            // under-resolved symbol: more points, same box
            if (n < 65536 && dimension == 1) {
                n *= 2;
                continue;
            }
            throw resolution_error("auto_heat_grid: symbol decay not resolved at Nyquist");
        }
        GridField f = heat_kernel_grid(symbol, t, g);
        const double peak = f.max_abs();
        const double boundary = std::abs(f.real_at(0));
        if (boundary < 1e-8 * peak) return g;
        hw *= 2.0;
    }
    throw resolution_error("auto_heat_grid: could not control aliasing");
}

GridField heat_kernel_grid(const LevySymbol& symbol, double t, const SpaceGrid& grid) {
    if (!(t > 0.0)) throw config_error("heat_kernel_grid: t must be positive");
    const double nyq = grid.nyquist();
    if (t * symbol(nyq) < -std::log(1e-12)) {
        throw resolution_error(
            "heat_kernel_grid: exp(-t psi) does not decay below 1e-12 at the Nyquist "
            "frequency; refine the grid or increase t");
    }
    GridField f = synthesize_radial(
        grid, [&](double rho) { return std::exp(-t * symbol(rho)); });
    const double peak = f.max_abs();
    if (std::abs(f.real_at(0)) > 1e-8 * peak) {
        throw resolution_error("heat_kernel_grid: aliasing at the box boundary exceeds 1e-8 "
                               "of the peak; enlarge half_width");
    }
    return f;
}

BoundReport check_unimodality(const GridField& field) {
    BoundReport rep;
    rep.name = "unimodality";
    const auto prof = field.axis_profile();
    double worst = 0.0;
    for (size_t i = 1; i < prof.size(); ++i) {
        worst = std::max(worst, prof[i] - prof[i - 1]);
    }
    rep.fitted["max_increase_along_ray"] = worst;
    rep.verdict = (worst <= 1e-10 * std::max(1.0, prof.front()))
                      ? BoundReport::Verdict::pass
                      : BoundReport::Verdict::fail;
    return rep;
}

BoundReport check_offdiag_bound(const GridField& field, const KernelScales& scales,
                                double t) {
    BoundReport rep;
    rep.name = "offdiag_K_bound";
    const auto& g = field.grid();
    const double cut = 2.0 * g.spacing();
    double C = 0.0;
    const size_t total = g.size();
    for (size_t i = 0; i < total; ++i) {
        const double r = g.radius(i);
        if (r < cut || r > scales.r_max()) continue;
        const double envelope = t * scales.K(r) * std::pow(r, -g.dimension);
        C = std::max(C, field.real_at(i) / envelope);
    }
    rep.fitted["C"] = C;
    rep.verdict = (std::isfinite(C) && C > 0.0) ? BoundReport::Verdict::pass
                                                : BoundReport::Verdict::fail;
    return rep;
}

BoundReport check_exp_bound(const GridField& field, const KernelScales& scales,
                            double t, Route route, std::optional<double> forced_b) {
    BoundReport rep;
    rep.name = "exp_offdiag_bound";
    const auto& g = field.grid();
    const double cut = 2.0 * g.spacing();
    // collect (t h(|x|), log ratio) on the window t h >= 1
    std::vector<double> xs, ys;
    const size_t total = g.size();
    for (size_t i = 0; i < total; ++i) {
        const double r = g.radius(i);
        if (r < cut || r > scales.r_max() || r < scales.r_min()) continue;
        const double th = t * scales.h(r);
        if (th < 1.0) continue;
        const double v = field.real_at(i);
        if (!(v > 0.0)) continue;
        const double ratio = v / (t * scales.K(r) * std::pow(r, -g.dimension));
        xs.push_back(th);
        ys.push_back(std::log(ratio));
    }
    if (xs.size() < 8) {
        rep.verdict = BoundReport::Verdict::inconclusive;
        rep.detail = "too few points with t h(|x|) >= 1";
        return rep;
    }
    double b, logc;
    const size_t n = xs.size();
    if (forced_b) {
        b = *forced_b;
        double s = 0.0;
        for (size_t i = 0; i < n; ++i) s += ys[i] + b * xs[i];
        logc = s / (double)n;
    } else {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (size_t i = 0; i < n; ++i) {
            sx += xs[i]; sy += ys[i]; sxx += xs[i] * xs[i]; sxy += xs[i] * ys[i];
        }
        const double slope = ((double)n * sxy - sx * sy) / ((double)n * sxx - sx * sx);
        b = -slope;
        logc = (sy + b * sx) / (double)n;
    }
    double sup_res = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < n; ++i)
        sup_res = std::max(sup_res, ys[i] - (logc - b * xs[i]));
    rep.fitted["b"] = b;
    rep.fitted["c"] = std::exp(logc);
    rep.fitted["sup_residual_log"] = sup_res;
    rep.detail = "route=" + to_string(route);
    const bool pass = b > 0.0 && sup_res <= 0.5;
    rep.verdict = pass ? BoundReport::Verdict::pass : BoundReport::Verdict::fail;
    return rep;
}

BoundReport check_near_diag_large_time(const LevySymbol& symbol,
                                       const KernelScales& scales,
                                       const std::vector<double>& t_list, int n) {
    BoundReport rep;
    rep.name = "near_diag_large_time";
    std::vector<double> cs;
    for (double t : t_list) {
        const SpaceGrid g = auto_heat_grid(symbol, scales, t, n, 1);
        const GridField f = heat_kernel_grid(symbol, t, g);
        const double scale = scales.h_inverse(1.0 / t);
        const double peak = f.axis_profile().front();
        cs.push_back(peak * std::pow(scale, symbol.dimension()));
        rep.sample_points.push_back(t);
        rep.ratios.push_back(cs.back());
    }
    rep.fitted["C_max"] = *std::max_element(cs.begin(), cs.end());
    rep.fitted["spread"] = spread(cs);
    rep.verdict = (spread(cs) < 2.0) ? BoundReport::Verdict::pass : BoundReport::Verdict::fail;
    return rep;
}

BoundReport check_tail_integral(const KernelScales& scales, int dimension, double b,
                                const std::vector<double>& t_list) {
    BoundReport rep;
    rep.name = "tail_integral_lemma";
    std::vector<double> vals;
    for (double t : t_list) {
        // sigma_d int rho^{d-1} t K(rho) rho^{-d} e^{-b t h} drho
        auto f = [&](double rho) {
            return sphere_surface(dimension) * t * scales.K(rho) / rho *
                   std::exp(-b * t * scales.h(rho));
        };
        const double v = integrate_log_panels(f, scales.r_min() * 1.01,
                                              scales.r_max() * 0.99, 16, 32);
        vals.push_back(v);
        rep.sample_points.push_back(t);
        rep.ratios.push_back(v);
    }
    rep.fitted["max_value"] = *std::max_element(vals.begin(), vals.end());
    rep.fitted["spread"] = spread(vals);
    if (dimension == 1) rep.fitted["exact_value"] = 1.0 / b;
    rep.verdict = (spread(vals) < 3.0) ? BoundReport::Verdict::pass
                                       : BoundReport::Verdict::fail;
    return rep;
}

DimensionLift dimension_lift(const GridField& p_d, double t) {
    (void)t;
    const auto& g = p_d.grid();
    const auto prof = p_d.axis_profile();
    const double dx = g.spacing();
    const size_t n = prof.size();
    if (n < 8) throw config_error("dimension_lift: profile too short");

    DimensionLift out;
    // centered 2nd order derivative of the radial profile on r = k dx, k >= 1
    std::vector<double> d2(n, 0.0), d4(n, 0.0);
    for (size_t k = 2; k + 2 < n; ++k) {
        d2[k] = (prof[k + 1] - prof[k - 1]) / (2.0 * dx);
        d4[k] = (-prof[k + 2] + 8.0 * prof[k + 1] - 8.0 * prof[k - 1] + prof[k - 2]) /
                (12.0 * dx);
    }
    double noise = 0.0, mass_l1 = 0.0;
    for (size_t k = 2; k + 2 < n; ++k) {
        noise += std::abs(d2[k] - d4[k]);
        mass_l1 += std::abs(d4[k]);
    }
    if (!(mass_l1 > 0.0) || noise > 0.1 * mass_l1)
        throw numeric_error("dimension_lift: differencing noise dominates the derivative");

    out.r.reserve(n - 4);
    out.p_lift.reserve(n - 4);
    for (size_t k = 2; k + 2 < n; ++k) {
        const double r = (double)k * dx;
        out.r.push_back(r);
        out.p_lift.push_back(-d4[k] / (2.0 * pi * r));
    }
    // mass in R^{d+2}
    const int d_lift = g.dimension + 2;
    kahan_sum mass;
    for (size_t i = 0; i < out.r.size(); ++i) {
        mass.add(sphere_surface(d_lift) * std::pow(out.r[i], d_lift - 1) * out.p_lift[i] * dx);
    }
    out.mass = mass.value();

    // identity |p_d'(r)| = 2 pi r p_{d+2}(r) against the spectral derivative
    GridField grad = spectral_derivative(p_d, g.dimension - 1);
    const auto gprof = grad.axis_profile();
    double worst = 0.0;
    double scale = 0.0;
    for (size_t i = 0; i < out.r.size(); ++i) scale = std::max(scale, std::abs(d4[i + 2]));
    for (size_t k = 2; k + 2 < n && k < gprof.size(); ++k) {
        const double lhs = std::abs(gprof[k]);
        const double rhs = 2.0 * pi * ((double)k * dx) * out.p_lift[k - 2];
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(scale, 1e-300));
    }
    out.gradient_identity_error = worst;
    return out;
}

} // namespace subdiff
