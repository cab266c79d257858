#include "subdiff/fundamental_solution.hpp"
#include "subdiff/errors.hpp"
#include "subdiff/mittag_leffler.hpp"
#include "subdiff/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace subdiff {

namespace {

void require_spec(const FundamentalSolutionSpec& spec) {
    if (spec.symbol == nullptr) throw config_error("FundamentalSolutionSpec: symbol missing");
    if (!(spec.alpha > 0.0) || !(spec.alpha < 1.0))
        throw config_error("FundamentalSolutionSpec: alpha in (0,1)");
    if (spec.beta < 0.0 || spec.beta > spec.alpha + 1.0 + 1e-12)
        throw config_error("FundamentalSolutionSpec: beta in [0, alpha+1]");
    if (spec.dimension < 1 || spec.dimension > 3)
        throw config_error("FundamentalSolutionSpec: dimension in {1,2,3}");
}

constexpr double q_resolution_threshold = 100.0;

} // namespace

double q_multiplier(const FundamentalSolutionSpec& spec, double t, double rho) {
    const double a = spec.alpha;
    const double b = 1.0 - spec.beta + a;
    const double z = -std::pow(t, a) * (*spec.symbol)(rho);
    const double scale = std::pow(t, a - spec.beta);
    if (z < -ml_z_max) return scale * detail::ml_asymptotic(a, b, z);
    return scale * mittag_leffler(a, b, z);
}

GridField q_grid(const FundamentalSolutionSpec& spec, double t, const SpaceGrid& grid) {
    require_spec(spec);
    if (!(t > 0.0)) throw config_error("q_grid: t must be positive");
    const double ta_psi = std::pow(t, spec.alpha) * (*spec.symbol)(grid.nyquist());
    if (ta_psi < q_resolution_threshold) {
        throw resolution_error("q_grid: multiplier not in its decay regime at Nyquist "
                               "(t^alpha psi = " + std::to_string(ta_psi) + " < 100)");
    }
    return synthesize_radial(grid, [&](double rho) { return q_multiplier(spec, t, rho); });
}

GridField gradient_q_grid(const FundamentalSolutionSpec& spec, double t,
                          const SpaceGrid& grid, int axis) {
    GridField q = q_grid(spec, t, grid);
    return spectral_derivative(q, axis);
}

SpaceGrid auto_q_grid(const FundamentalSolutionSpec& spec, const KernelScales& scales,
                      double t, int n) {
    require_spec(spec);
    const double v = std::min(std::pow(t, -spec.alpha), scales.h(scales.r_min()) * 0.99);
    double hw = std::max(1.0, 10.0 * scales.h_inverse(std::max(v, scales.h(scales.r_max()) * 1.01)));
    for (int attempt = 0; attempt < 20; ++attempt) {
        SpaceGrid g(spec.dimension, hw, n);
        if (g.nyquist() * std::sqrt((double)spec.dimension) > spec.symbol->rho_max()) {
            hw *= 2.0;
            continue;
        }
        if (std::pow(t, spec.alpha) * (*spec.symbol)(g.nyquist()) >= q_resolution_threshold)
            return g;
        if (spec.dimension == 1 && n < 1 << 17) {
            n *= 2;
            continue;
        }
        throw resolution_error("auto_q_grid: cannot satisfy the multiplier decay gate");
    }
    throw resolution_error("auto_q_grid: grid search failed");
}

BoundReport check_q_pointwise(const FundamentalSolutionSpec& spec,
                              const KernelScales& scales,
                              const std::vector<double>& t_list, int m, int n) {
    require_spec(spec);
    if (m != 0 && m != 1) throw config_error("check_q_pointwise: m in {0,1}");
    BoundReport rep;
    rep.name = "q_pointwise_m" + std::to_string(m);
    std::vector<double> cs;
    for (double t : t_list) {
        const SpaceGrid g = auto_q_grid(spec, scales, t, n);
        const GridField f =
            (m == 0) ? q_grid(spec, t, g) : gradient_q_grid(spec, t, g, 0);
        const double cut = 2.0 * g.spacing();
        const double scale = std::pow(t, 2.0 * spec.alpha - spec.beta);
        double C = 0.0;
        const size_t total = g.size();
        for (size_t i = 0; i < total; ++i) {
            const double r = g.radius(i);
            if (r < cut || r > 0.5 * g.half_width || r > scales.r_max()) continue;
            const double env = scale * scales.K(r) * std::pow(r, -(g.dimension + m));
            C = std::max(C, std::abs(f.real_at(i)) / env);
        }
        cs.push_back(C);
        rep.sample_points.push_back(t);
        rep.ratios.push_back(C);
    }
    rep.fitted["C_max"] = *std::max_element(cs.begin(), cs.end());
    rep.fitted["spread"] = spread(cs);
    rep.verdict = (spread(cs) < 3.0) ? BoundReport::Verdict::pass
                                     : BoundReport::Verdict::fail;
    return rep;
}

BoundReport check_q_mass_scaling(const FundamentalSolutionSpec& spec,
                                 const KernelScales& scales,
                                 const std::vector<double>& t_list, int n) {
    require_spec(spec);
    BoundReport rep;
    rep.name = "q_mass_scaling";
    std::vector<double> scaled;
    bool beta_alpha_ok = true;
    for (double t : t_list) {
        const SpaceGrid g = auto_q_grid(spec, scales, t, n);
        const GridField f = q_grid(spec, t, g);
        const double M = f.abs_integral();
        const double signed_mass = f.integral();
        scaled.push_back(M * std::pow(t, spec.beta - spec.alpha));
        rep.sample_points.push_back(t);
        rep.ratios.push_back(scaled.back());
        rep.fitted["signed_mass_t_" + std::to_string(t)] = signed_mass;
        if (std::abs(spec.beta - spec.alpha) < 1e-14 && std::abs(M - 1.0) > 1e-3)
            beta_alpha_ok = false;
    }
    rep.fitted["band_ratio"] = spread(scaled);
    const bool pass = beta_alpha_ok && spread(scaled) < 1.5;
    rep.verdict = pass ? BoundReport::Verdict::pass : BoundReport::Verdict::fail;
    return rep;
}

CZIntegralResult check_cz_kernel_bounds(const FundamentalSolutionSpec& spec,
                                        const KernelScales& scales,
                                        const std::vector<double>& b_list, int n) {
    require_spec(spec);
    if (spec.dimension != 1)
        throw config_error("check_cz_kernel_bounds: implemented for d = 1");
    if (std::abs(spec.beta - (spec.alpha + 1.0)) > 1e-12)
        throw config_error("check_cz_kernel_bounds: needs beta = alpha + 1");
    if (b_list.empty()) throw config_error("check_cz_kernel_bounds: empty b_list");
    const double alpha = spec.alpha;
    const double b_min = *std::min_element(b_list.begin(), b_list.end());
    const double b_max = *std::max_element(b_list.begin(), b_list.end());

    const double s_start = scales.kappa(alpha, b_min) * 0.9;
    const int per_decade = 16;
    const double step = std::pow(10.0, 1.0 / per_decade);

    // per-s integrals I1(s; b) (gradient mass outside b) and I0(s; b)
    // (mass inside 4b), accumulated on the fly with log-trapezoid weights
    struct Row {
        double s;
        std::vector<double> I1, I0;
    };
    std::vector<Row> rows;
    double s = s_start;
    double peak1 = 0.0;
    for (int k = 0; k < 16 * per_decade; ++k, s *= step) {
        const double v =
            std::min(std::pow(s, -alpha), scales.h(scales.r_min()) * 0.99);
        const double hw = std::max(
            20.0 * 4.0 * b_max,
            10.0 * scales.h_inverse(std::max(v, scales.h(scales.r_max()) * 1.01)));
        SpaceGrid g(1, hw, n);
        if (std::pow(s, alpha) * (*spec.symbol)(g.nyquist()) < q_resolution_threshold)
            throw resolution_error("check_cz_kernel_bounds: multiplier gate failed; raise n");
        const GridField q = q_grid(spec, s, g);
        const GridField dq = spectral_derivative(q, 0);
        Row row;
        row.s = s;
        const double dx = g.spacing();
        for (double b : b_list) {
            double i1 = 0.0, i0 = 0.0;
            for (int i = 0; i < g.n; ++i) {
                const double x = std::abs(g.coord(i));
                const double qa = std::abs(q.real_at((size_t)i));
                const double da = std::abs(dq.real_at((size_t)i));
                if (x >= b) i1 += da * dx;
                if (x <= 4.0 * b) i0 += qa * dx;
            }
            row.I1.push_back(i1);
            row.I0.push_back(i0);
        }
        peak1 = std::max(peak1, row.I1.front());
        rows.push_back(std::move(row));
        if (rows.size() > 3 * per_decade && row.I1.front() < 1e-10 * peak1) break;
    }
    if (rows.size() < 20)
        throw numeric_error("check_cz_kernel_bounds: outer integral grid too short");

    // tail decay fitted on the last decade of I1
    double tail_rel = 0.0;
    {
        const size_t m = rows.size();
        const double y1 = rows[m - per_decade - 1].I1.front();
        const double y2 = rows[m - 1].I1.front();
        const double x1 = rows[m - per_decade - 1].s, x2 = rows[m - 1].s;
        const double p = -std::log(y2 / y1) / std::log(x2 / x1);
        if (!(p > 1.05))
            throw numeric_error("check_cz_kernel_bounds: outer integrand decays too slowly "
                                "for tail truncation");
        tail_rel = y2 * x2 / (p - 1.0);
    }

    CZIntegralResult res;
    res.b_list = b_list;
    res.truncation_rel = 0.0;
    for (size_t bi = 0; bi < b_list.size(); ++bi) {
        const double kb = scales.kappa(alpha, b_list[bi]);
        const double k4b = scales.kappa(alpha, 4.0 * b_list[bi]);
        kahan_sum s1, s0;
        auto clipped_trapezoid = [](double sa, double sb, double Ia, double Ib,
                                    double lo_limit, kahan_sum& acc) {
            if (sb <= lo_limit) return;
            const double lo = std::max(sa, lo_limit);
            const double I_lo = Ia + (Ib - Ia) * (lo - sa) / (sb - sa);
            acc.add(0.5 * (I_lo + Ib) * (sb - lo));
        };
        for (size_t i = 0; i + 1 < rows.size(); ++i) {
            const double sa = rows[i].s, sb = rows[i + 1].s;
            clipped_trapezoid(sa, sb, rows[i].I1[bi], rows[i + 1].I1[bi], kb, s1);
            clipped_trapezoid(sa, sb, rows[i].I0[bi], rows[i + 1].I0[bi], k4b, s0);
        }
        res.B1.push_back(b_list[bi] * s1.value());
        res.B0.push_back(s0.value());
        res.truncation_rel = std::max(res.truncation_rel,
                                      b_list[bi] * tail_rel / std::max(res.B1.back(), 1e-300));
    }
    res.pass = spread(res.B1) < 5.0 && spread(res.B0) < 5.0 && res.truncation_rel < 1e-2;
    return res;
}

BoundReport check_integral_lemmas(const KernelScales& scales,
                                  const std::vector<double>& b_list,
                                  const std::vector<int>& k_list, double alpha) {
    BoundReport rep;
    rep.name = "appendix_integral_lemmas";
    bool pass = true;

    // f(r) = h(1/r): f^{-1}(v) = 1/h^{-1}(v)
    const double s_table_hi = 0.99 / scales.h(scales.r_max() * 0.999);
    for (int k : k_list) {
        std::vector<double> products;
        for (double b : b_list) {
            const double s_lo = 1.0 / scales.h(b);
            auto f = [&](double s) {
                return std::pow(scales.h_inverse(1.0 / s), -(double)k) / s;
            };
            double v = integrate_log_panels(f, s_lo, s_table_hi, 8, 32);
            // tail beyond the table: integrand <~ (s_hi/s)^{k/2} envelope
            v += f(s_table_hi) * s_table_hi * 2.0 / (double)k;
            products.push_back(v * std::pow(b, (double)k));
        }
        const double sp = spread(products);
        rep.fitted["A4_k" + std::to_string(k) + "_spread"] = sp;
        rep.fitted["A4_k" + std::to_string(k) + "_max"] =
            *std::max_element(products.begin(), products.end());
        pass = pass && sp < 5.0;
    }

    // A.5 triple integral at d = 1
    {
        std::vector<double> products;
        for (double b : b_list) {
            const double kb = scales.kappa(alpha, b);
            kahan_sum total;
            double s = kb;
            const double step = std::pow(10.0, 1.0 / 16);
            double peak = 0.0;
            for (int i = 0; i < 16 * 14; ++i, s *= step) {
                const double Y = scales.h_inverse(
                    std::clamp(std::pow(s, -alpha), scales.h(scales.r_max()) * 1.001,
                               scales.h(scales.r_min()) * 0.999));
                double inner_y = 0.0;
                if (Y > b) {
                    inner_y = integrate_log_panels(
                        [&](double y) {
                            const double r_lo = 1.0 / scales.h(y);
                            const double r_hi = 2.0 * std::pow(s, alpha);
                            if (r_hi <= r_lo) return 0.0;
                            const double inner_r = integrate_log_panels(
                                [&](double r) {
                                    return std::pow(scales.h_inverse(1.0 / r), -2.0);
                                },
                                r_lo, r_hi, 8, 16);
                            return 2.0 * inner_r; // |y| >= b on both sides
                        },
                        b, Y, 8, 16);
                }
                const double integrand = inner_y * std::pow(s, -alpha - 1.0);
                total.add(integrand * s * (std::log(step)));
                peak = std::max(peak, integrand * s);
                if (i > 32 && integrand * s < 1e-8 * peak) break;
            }
            products.push_back(total.value() * b);
        }
        const double sp = spread(products);
        rep.fitted["A5_spread"] = sp;
        rep.fitted["A5_max"] = *std::max_element(products.begin(), products.end());
        pass = pass && sp < 5.0;
    }
    rep.verdict = pass ? BoundReport::Verdict::pass : BoundReport::Verdict::fail;
    return rep;
}

} // namespace subdiff
