#include "subdiff/kernel_scales.hpp"
#include "subdiff/errors.hpp"
#include "subdiff/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace subdiff {

namespace {

constexpr double pi = std::numbers::pi;

void check_kernel_invariants(const JumpKernel& k) {
    const auto grid = log_grid(1e-4, 1e4, 16);
    double prev = std::numeric_limits<double>::infinity();
    for (double r : grid) {
        const double j = k.eval(r);
        if (!std::isfinite(j) || !(j > 0.0))
            throw config_error("JumpKernel: non-positive density at r=" + std::to_string(r));
        const double ref = std::pow(r, -k.dimension) * eval_ell(k.profile, 1.0 / r);
        if (j < 0.999 * k.kappa1 * ref || j > 1.001 * k.kappa2 * ref)
            throw config_error("JumpKernel: comparability sandwich violated at r=" + std::to_string(r));
        if (j > prev * (1.0 + 1e-12))
            throw config_error("JumpKernel: density not non-increasing at r=" + std::to_string(r));
        prev = j;
    }
}

} // namespace

JumpKernel make_jump_kernel(const ScalingProfile& p, int dimension) {
    if (dimension < 1 || dimension > 3) throw config_error("make_jump_kernel: dimension in {1,2,3}");
    JumpKernel k;
    k.dimension = dimension;
    k.profile = p;
    auto ell = p.eval;
    const int d = dimension;
    k.eval = [ell, d](double r) { return std::pow(r, -d) * ell(1.0 / r); };
    check_kernel_invariants(k);
    return k;
}

JumpKernel catalog_jump_kernel(const std::string& name, int dimension) {
    if (name == "cauchy") {
        if (dimension != 1) throw config_error("catalog_jump_kernel: cauchy kernel is d=1");
        JumpKernel k;
        k.dimension = 1;
        k.profile = catalog_profile("cauchy");
        k.kappa1 = k.kappa2 = 1.0 / pi;
        k.eval = [](double r) { return 1.0 / (pi * r * r); };
        check_kernel_invariants(k);
        return k;
    }
    return make_jump_kernel(catalog_profile(name), dimension);
}

KernelScales::KernelScales(const ScalingProfile& p, double r_min, double r_max,
                           int points_per_decade)
    : profile_(p) {
    if (!(r_min > 0.0) || !(r_max > r_min)) throw config_error("KernelScales: bad range");
    if (!(p.delta[2] > 0.0))
        throw config_error("KernelScales: profile " + p.name +
                           " has delta3 = 0; the tail integral L diverges");
    r_ = log_grid(r_min, r_max, points_per_decade);
    const size_t n = r_.size();
    K_.resize(n);
    L_.resize(n);
    h_.resize(n);

    auto k_integrand = [&](double s) { return s * eval_ell(p, 1.0 / s); };
    auto l_integrand = [&](double s) { return eval_ell(p, 1.0 / s) / s; };

    // I(r) = int_0^r s ell(1/s) ds, descending dyadic panels for the seed
    kahan_sum I;
    {
        double hi = r_.front();
        for (int k = 0; k < 600; ++k) {
            const double lo = hi * 0.5;
            const double panel = gauss_legendre(k_integrand, lo, hi, 32);
            I.add(panel);
            if (k > 4 && panel <= 1e-14 * I.value()) break;
            hi = lo;
        }
    }
    K_[0] = I.value() / (r_[0] * r_[0]);
    for (size_t i = 1; i < n; ++i) {
        I.add(gauss_legendre(k_integrand, r_[i - 1], r_[i], 32));
        K_[i] = I.value() / (r_[i] * r_[i]);
    }

    // L(r) seeded at the top with the substitution s = r_max e^u; the tail
    // decays like exp(-delta3 u)
    kahan_sum Ltop;
    {
        const double d3 = p.delta[2];
        double u0 = 0.0;
        for (int k = 0; k < 4000; ++k) {
            const double u1 = u0 + 1.0;
            const double panel = gauss_legendre(
                [&](double u) { return eval_ell(p, std::exp(-u) / r_.back()); }, u0, u1, 32);
            Ltop.add(panel);
            const double tail_bound = panel / std::expm1(d3);
            if (k > 2 && tail_bound <= 1e-14 * Ltop.value()) break;
            u0 = u1;
        }
    }
    L_[n - 1] = Ltop.value();
    for (size_t i = n - 1; i-- > 0;) {
        L_[i] = L_[i + 1] + gauss_legendre(l_integrand, r_[i], r_[i + 1], 32);
    }

    for (size_t i = 0; i < n; ++i) {
        h_[i] = K_[i] + L_[i];
        if (!(h_[i] > 0.0) || !std::isfinite(h_[i]))
            throw numeric_error("KernelScales: non-finite table entry");
    }
    for (size_t i = 1; i < n; ++i) {
        if (!(h_[i] < h_[i - 1]))
            throw numeric_error("KernelScales: h not strictly decreasing");
    }
}

double KernelScales::interp(const std::vector<double>& tab, double r) const {
    if (!(r >= r_.front() * (1.0 - 1e-12)) || !(r <= r_.back() * (1.0 + 1e-12)))
        throw numeric_error("KernelScales: r=" + std::to_string(r) +
                            " outside tabulated range [" + std::to_string(r_.front()) + ", " +
                            std::to_string(r_.back()) + "]");
    const double step = std::log(r_[1] / r_[0]);
    const double pos = std::log(std::clamp(r, r_.front(), r_.back()) / r_[0]) / step;
    size_t i = std::min((size_t)std::max(0.0, std::floor(pos)), r_.size() - 2);
    const double w = std::clamp(pos - (double)i, 0.0, 1.0);
    return std::exp((1.0 - w) * std::log(tab[i]) + w * std::log(tab[i + 1]));
}

double KernelScales::K(double r) const { return interp(K_, r); }
double KernelScales::L(double r) const { return interp(L_, r); }
double KernelScales::h(double r) const { return interp(h_, r); }

double KernelScales::h_inverse(double v) const {
    if (!(v >= h_.back() * (1.0 - 1e-9)) || !(v <= h_.front() * (1.0 + 1e-9)))
        throw numeric_error("h_inverse: value outside tabulated range");
    double lo = r_.front(), hi = r_.back();
    for (int it = 0; it < 200 && (hi - lo) > 1e-12 * hi; ++it) {
        const double mid = std::sqrt(lo * hi);
        if (h(mid) > v) lo = mid;
        else hi = mid;
    }
    return std::sqrt(lo * hi);
}

double KernelScales::kappa(double alpha, double b) const {
    if (!(alpha > 0.0) || !(alpha < 1.0)) throw config_error("kappa: alpha in (0,1)");
    return std::pow(h(b), -1.0 / alpha);
}

namespace {

double spherical_cos_average_one_minus(int d, double u) {
    // 1 - A_d(u), A_d the spherical average of cos(xi . x) at |xi||x| = u
    if (u < 1e-4) return u * u / (2.0 * d);
    switch (d) {
        case 1: return 1.0 - std::cos(u);
        case 2: return 1.0 - std::cyl_bessel_j(0.0, u);
        default: return 1.0 - std::sin(u) / u;
    }
}

double sphere_surface(int d) {
    switch (d) {
        case 1: return 2.0;
        case 2: return 2.0 * pi;
        default: return 4.0 * pi;
    }
}

} // namespace

double LevySymbol::direct(const JumpKernel& kernel, double rho) {
    if (rho == 0.0) return 0.0;
    const int d = kernel.dimension;
    const double sigma = sphere_surface(d);
    const double split = 1.0 / rho;

    // inner part [0, 1/rho]: descending dyadic panels
    kahan_sum inner;
    {
        auto f = [&](double s) {
            return spherical_cos_average_one_minus(d, rho * s) * std::pow(s, d - 1) * kernel.eval(s);
        };
        double hi = split;
        for (int k = 0; k < 400; ++k) {
            const double lo = hi * 0.5;
            const double panel = gauss_legendre(f, lo, hi, 32);
            inner.add(panel);
            if (k > 4 && std::abs(panel) <= 1e-13 * std::abs(inner.value())) break;
            hi = lo;
        }
    }

    // outer part: int (1 - A_d) = int 1 - int A_d; the constant piece decays
    // like the tail mass, the A_d piece is oscillatory and accelerated
    auto tail_mass = [&](double s) { return std::pow(s, d - 1) * kernel.eval(s); };
    const double flat = integrate_to_infinity(tail_mass, split, 1e-11);
    auto osc = [&](double s) {
        return (1.0 - spherical_cos_average_one_minus(d, rho * s)) * std::pow(s, d - 1) *
               kernel.eval(s);
    };
    const double wave = integrate_oscillatory(osc, split, pi / rho, 1e-10);
    return sigma * (inner.value() + flat - wave);
}

LevySymbol::LevySymbol(const JumpKernel& kernel, double rho_min, double rho_max,
                       int points_per_decade)
    : dimension_(kernel.dimension) {
    rho_ = log_grid(rho_min, rho_max, points_per_decade);
    psi_.resize(rho_.size());
    for (size_t i = 0; i < rho_.size(); ++i) psi_[i] = direct(kernel, rho_[i]);
    for (size_t i = 1; i < psi_.size(); ++i) {
        if (psi_[i] < psi_[i - 1] * (1.0 - 1e-8))
            throw numeric_error("LevySymbol: tabulated symbol not non-decreasing");
        psi_[i] = std::max(psi_[i], psi_[i - 1]); // exact monotonicity for the interpolant
    }
}

double LevySymbol::operator()(double rho) const {
    if (rho == 0.0) return 0.0;
    if (!(rho > 0.0)) throw config_error("LevySymbol: rho must be non-negative");
    if (rho < rho_.front() * (1.0 - 1e-12) || rho > rho_.back() * (1.0 + 1e-12))
        throw numeric_error("LevySymbol: rho outside tabulated range");
    const double step = std::log(rho_[1] / rho_[0]);
    const double pos = std::log(std::clamp(rho, rho_.front(), rho_.back()) / rho_[0]) / step;
    size_t i = std::min((size_t)std::max(0.0, std::floor(pos)), rho_.size() - 2);
    const double w = std::clamp(pos - (double)i, 0.0, 1.0);
    return std::exp((1.0 - w) * std::log(psi_[i]) + w * std::log(psi_[i + 1]));
}

BoundReport check_symbol_h_comparability(const LevySymbol& symbol,
                                         const KernelScales& scales) {
    BoundReport rep;
    rep.name = "symbol_h_comparability";
    const double r_lo = std::max(scales.r_min(), 1.0 / symbol.rho_max());
    const double r_hi = std::min(scales.r_max(), 1.0 / symbol.rho_min());
    if (!(r_hi > r_lo * 1.0001)) {
        rep.verdict = BoundReport::Verdict::inconclusive;
        rep.detail = "degenerate overlap range";
        return rep;
    }
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (double r : log_grid(r_lo, r_hi, 16)) {
        const double ratio = symbol(1.0 / r) / scales.h(r);
        rep.sample_points.push_back(r);
        rep.ratios.push_back(ratio);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    rep.fitted["C0"] = lo;
    rep.fitted["upper_ratio"] = hi;
    const bool pass = lo > 0.0 && hi <= 2.0 * 1.05;
    rep.verdict = pass ? BoundReport::Verdict::pass : BoundReport::Verdict::fail;
    rep.detail = pass ? "C0 h <= psi(1/r) <= 2 h holds with 5% slack" : "upper ratio exceeds 2";
    return rep;
}

BoundReport check_scale_comparability(const KernelScales& scales,
                                      const JumpKernel& kernel, Route route) {
    BoundReport rep;
    rep.name = "scale_comparability";
    const auto& p = scales.profile();
    auto fit = [&](auto&& f, double lo_r, double hi_r, const std::string& key) {
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (double r : log_grid(lo_r, hi_r, 16)) {
            const double v = f(r);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        rep.fitted[key + "_min"] = lo;
        rep.fitted[key + "_max"] = hi;
        return std::isfinite(hi) && lo > 0.0;
    };
    bool ok = true;
    ok &= fit([&](double r) { return scales.K(r) / eval_ell(p, 1.0 / r); },
              scales.r_min(), scales.r_max(), "K_over_ell");
    ok &= fit([&](double r) { return std::pow(r, kernel.dimension) * kernel.eval(r) /
                                     eval_ell(p, 1.0 / r); },
              scales.r_min(), scales.r_max(), "rdj_over_ell");
    ok &= fit([&](double r) { return scales.h(r) / scales.K(r); },
              1.0, scales.r_max(), "h_over_K_large_r");
    if (route == Route::h_comparable) {
        ok &= fit([&](double r) { return scales.L(r) / eval_ell(p, 1.0 / r); },
                  scales.r_min(), scales.r_max(), "L_over_ell");
        ok &= fit([&](double r) { return scales.h(r) / eval_ell(p, 1.0 / r); },
                  scales.r_min(), scales.r_max(), "h_over_ell");
    }
    rep.verdict = ok ? BoundReport::Verdict::pass : BoundReport::Verdict::fail;
    rep.detail = "route=" + to_string(route);
    return rep;
}

BoundReport check_h_inverse_scaling(const KernelScales& scales, double delta3) {
    BoundReport rep;
    rep.name = "h_inverse_scaling";
    if (!(delta3 > 0.0)) throw config_error("check_h_inverse_scaling: delta3 must be positive");
    const double v_lo = scales.h(scales.r_max()) * 1.01;
    const double v_hi = scales.h(scales.r_min()) * 0.99;
    const auto vs = log_grid(v_lo, v_hi, 8);
    double c_fit = 0.0;
    bool square_ok = true;
    for (size_t i = 0; i < vs.size(); ++i) {
        for (size_t j = i + 1; j < vs.size(); ++j) {
            const double r = vs[i], R = vs[j]; // values of h, r < R
            const double lhs = scales.h_inverse(r) / scales.h_inverse(R);
            c_fit = std::max(c_fit, lhs / std::pow(R / r, 1.0 / delta3));
            if (R / r > lhs * lhs * (1.0 + 1e-9)) square_ok = false;
        }
    }
    rep.fitted["c_A"] = c_fit;
    rep.fitted["square_inequality_ok"] = square_ok ? 1.0 : 0.0;
    rep.verdict = (std::isfinite(c_fit) && c_fit > 0.0 && square_ok)
                      ? BoundReport::Verdict::pass
                      : BoundReport::Verdict::fail;
    return rep;
}

} // namespace subdiff
