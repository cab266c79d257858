#include "subdiff/solver.hpp"
#include "subdiff/errors.hpp"
#include "subdiff/mittag_leffler.hpp"
#include "subdiff/quadrature.hpp"
#include "subdiff/subordinator.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace subdiff {

SpaceTimeField::SpaceTimeField(SpaceGrid grid, TimeGrid time)
    : grid_(grid), time_(time) {
    if (time_.steps < 1) throw config_error("SpaceTimeField: steps must be >= 1");
    slices_.assign((size_t)time_.steps + 1, cvector(grid_.size()));
}

GridField apply_generator(const GridField& f, const LevySymbol& symbol) {
    return apply_multiplier(f, [&](double rho) { return -symbol(rho); });
}

SpaceTimeField apply_generator(const SpaceTimeField& f, const LevySymbol& symbol) {
    SpaceTimeField out(f.grid(), f.time());
    for (int j = 0; j <= f.time().steps; ++j) {
        GridField slice(f.grid(), f.slice(j));
        out.slice(j) = apply_generator(slice, symbol).values();
    }
    return out;
}

GridField bessel_potential(const GridField& f, const LevySymbol& symbol, double gamma) {
    if (gamma == 0.0) return f;
    return apply_multiplier(
        f, [&](double rho) { return std::pow(1.0 + symbol(rho), 0.5 * gamma); });
}

namespace {

// per-lag Volterra weights for the mode kernel (t-s)^{a-1} E_{a,a}(-psi (t-s)^a)
ConvolutionWeights mode_weights(double alpha, double psi_val, double dt, int lags) {
    auto G = [&](double x) {
        const double xa = std::pow(x, alpha);
        const double z = -psi_val * xa;
        const double e = (z < -ml_z_max) ? detail::ml_asymptotic(alpha, alpha + 1.0, z)
                                         : mittag_leffler(alpha, alpha + 1.0, z);
        return xa * e;
    };
    auto M = [&](double x) {
        const double xa = std::pow(x, alpha);
        const double z = -psi_val * xa;
        const double e = (z < -ml_z_max) ? detail::ml_asymptotic(alpha, alpha + 2.0, z)
                                         : mittag_leffler(alpha, alpha + 2.0, z);
        return x * xa * e;
    };
    return ConvolutionWeights::build(lags, dt, G, M);
}

// group flattened grid indices by squared integer frequency norm
std::unordered_map<long long, std::vector<size_t>> modes_by_norm(const SpaceGrid& g) {
    std::unordered_map<long long, std::vector<size_t>> groups;
    const int n = g.n;
    const size_t total = g.size();
    groups.reserve(256);
    for (size_t flat = 0; flat < total; ++flat) {
        long long k2 = 0;
        size_t rem = flat;
        for (int d = g.dimension - 1; d >= 0; --d) {
            const int i = (int)(rem % (size_t)n);
            rem /= (size_t)n;
            const int k = (i < n / 2) ? i : i - n;
            k2 += (long long)k * k;
        }
        groups[k2].push_back(flat);
    }
    return groups;
}

SpaceTimeField volterra_solve(const LevySymbol& symbol, double alpha,
                              const SpaceTimeField& f, bool apply_neg_psi) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) throw config_error("solve: alpha in (0,1)");
    const SpaceGrid& g = f.grid();
    const TimeGrid& tg = f.time();
    const double dt = tg.dt();
    const int nt = tg.steps;

    // forward transform every slice once
    std::vector<cvector> fhat((size_t)nt + 1);
    for (int j = 0; j <= nt; ++j) {
        fhat[(size_t)j] = f.slice(j);
        fft_nd(fhat[(size_t)j], g.n, g.dimension, false);
    }
    std::vector<cvector> uhat((size_t)nt + 1, cvector(g.size()));

    const auto groups = modes_by_norm(g);
    std::vector<std::complex<double>> mode_f((size_t)nt + 1), mode_u((size_t)nt + 1);
    for (const auto& [k2, flats] : groups) {
        const double rho = g.dxi() * std::sqrt((double)k2);
        const double psi_val = symbol(rho);
        const auto w = mode_weights(alpha, psi_val, dt, nt);
        const double scale = apply_neg_psi ? -psi_val : 1.0;
        for (size_t flat : flats) {
            for (int j = 0; j <= nt; ++j) mode_f[(size_t)j] = fhat[(size_t)j][flat];
            mode_u[0] = 0.0;
            for (int j = 1; j <= nt; ++j) {
                std::complex<double> acc(0.0, 0.0);
                for (int m = 0; m < j; ++m) {
                    const int l = j - m;
                    acc += w.left[(size_t)l] * mode_f[(size_t)m] +
                           w.right[(size_t)l] * mode_f[(size_t)m + 1];
                }
                mode_u[(size_t)j] = scale * acc;
            }
            for (int j = 0; j <= nt; ++j) uhat[(size_t)j][flat] = mode_u[(size_t)j];
        }
    }

    SpaceTimeField u(g, tg);
    for (int j = 0; j <= nt; ++j) {
        fft_nd(uhat[(size_t)j], g.n, g.dimension, true);
        u.slice(j) = std::move(uhat[(size_t)j]);
    }
    return u;
}

} // namespace

SpaceTimeField solve_zero_ic(const LevySymbol& symbol, double alpha,
                             const SpaceTimeField& f) {
    return volterra_solve(symbol, alpha, f, false);
}

SpaceTimeField cz_operator(const LevySymbol& symbol, double alpha,
                           const SpaceTimeField& f) {
    return volterra_solve(symbol, alpha, f, true);
}

GridField homogeneous_solution(const LevySymbol& symbol, double alpha,
                               const GridField& u0, double t) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw config_error("homogeneous_solution: alpha in (0,1)");
    if (!(t >= 0.0)) throw config_error("homogeneous_solution: t >= 0");
    if (t == 0.0) return u0;
    const double ta = std::pow(t, alpha);
    return apply_multiplier(u0, [&](double rho) {
        return mittag_leffler(alpha, 1.0, -ta * symbol(rho));
    });
}

double mixed_norm(const SpaceTimeField& u, const MixedNormSpec& spec) {
    if (!(spec.p > 1.0) || !(spec.q > 1.0)) throw config_error("mixed_norm: p, q > 1");
    const TimeGrid& tg = u.time();
    if (spec.T > tg.T * (1.0 + 1e-12)) throw config_error("mixed_norm: T beyond time range");
    const int jmax = std::min(tg.steps, (int)std::llround(spec.T / tg.dt()));
    double cell = 1.0;
    for (int d = 0; d < u.grid().dimension; ++d) cell *= u.grid().spacing();
    kahan_sum time_sum;
    for (int j = 0; j <= jmax; ++j) {
        kahan_sum space;
        for (const auto& v : u.slice(j)) space.add(std::pow(std::abs(v.real()), spec.p));
        const double lp = std::pow(space.value() * cell, spec.q / spec.p);
        const double w = (j == 0 || j == jmax) ? 0.5 : 1.0;
        time_sum.add(w * lp * tg.dt());
    }
    return std::pow(time_sum.value(), 1.0 / spec.q);
}

SpaceTimeField caputo_field(const SpaceTimeField& u, double alpha) {
    const int nt = u.time().steps;
    const double dt = u.time().dt();
    SpaceTimeField out(u.grid(), u.time());
    const size_t total = u.grid().size();
    std::vector<double> series((size_t)nt + 1);
    for (size_t flat = 0; flat < total; ++flat) {
        for (int j = 0; j <= nt; ++j) series[(size_t)j] = u.real_at(j, flat);
        for (int j = 1; j <= nt; ++j)
            out.slice(j)[flat] = caputo_l1_at(series.data(), j, dt, alpha);
        out.slice(0)[flat] = out.slice(1)[flat];
    }
    return out;
}

double residual(const SpaceTimeField& u, const SpaceTimeField& f,
                const LevySymbol& symbol, double alpha) {
    const MixedNormSpec l2{2.0, 2.0, u.time().T};
    const double fn = mixed_norm(f, l2);
    if (fn == 0.0) return 0.0;
    const SpaceTimeField du = caputo_field(u, alpha);
    const SpaceTimeField lu = apply_generator(u, symbol);
    SpaceTimeField r(u.grid(), u.time());
    for (int j = 0; j <= u.time().steps; ++j) {
        auto& rs = r.slice(j);
        const auto& ds = du.slice(j);
        const auto& ls = lu.slice(j);
        const auto& fs = f.slice(j);
        for (size_t i = 0; i < rs.size(); ++i)
            rs[i] = ds[i].real() - ls[i].real() - fs[i].real();
        if (j == 0) std::fill(rs.begin(), rs.end(), std::complex<double>(0.0));
    }
    return mixed_norm(r, l2) / fn;
}

SpaceTimeField random_forcing(const SpaceGrid& grid, const TimeGrid& time,
                              std::uint64_t seed) {
    // f(t,x) = sum_{|k| <= n/4} c_k(t) e^{i xi_k x}, Hermitian in k, with
    // degree-3 random trigonometric time profiles; the same seed reproduces
    // the same continuum function on any refinement of this grid
    RandomStream rng(seed);
    const int n = grid.n;
    const int kmax = 16; // physical mode cap: identical forcing across refinements
    struct Mode {
        double amp[4], phase[4];
    };
    // draw coefficients for k = 0..kmax along each axis (d = 1 supported here)
    if (grid.dimension != 1)
        throw config_error("random_forcing: implemented for d = 1");
    std::vector<Mode> re((size_t)kmax + 1), im((size_t)kmax + 1);
    for (int k = 0; k <= kmax; ++k) {
        for (int m = 0; m < 4; ++m) {
            re[(size_t)k].amp[m] = (rng.uniform() - 0.5) / (1.0 + k);
            re[(size_t)k].phase[m] = rng.uniform() * 6.283185307179586;
            im[(size_t)k].amp[m] = (rng.uniform() - 0.5) / (1.0 + k);
            im[(size_t)k].phase[m] = rng.uniform() * 6.283185307179586;
        }
    }
    if (kmax > n / 4) throw config_error("random_forcing: grid too coarse for the mode cap");

    SpaceTimeField f(grid, time);
    cvector spec((size_t)grid.size());
    for (int j = 0; j <= time.steps; ++j) {
        const double t = time.t(j);
        std::fill(spec.begin(), spec.end(), std::complex<double>(0.0));
        for (int k = 0; k <= kmax; ++k) {
            double cre = 0.0, cim = 0.0;
            for (int m = 0; m < 4; ++m) {
                const double ph = 3.141592653589793 * m * t / time.T;
                cre += re[(size_t)k].amp[m] * std::cos(ph + re[(size_t)k].phase[m]);
                cim += im[(size_t)k].amp[m] * std::cos(ph + im[(size_t)k].phase[m]);
            }
            if (k == 0) {
                spec[0] = std::complex<double>(cre, 0.0);
            } else {
                spec[(size_t)k] = std::complex<double>(cre, cim);
                spec[(size_t)(n - k)] = std::conj(spec[(size_t)k]);
            }
        }
        fft_nd(spec, n, 1, true);
        auto& sl = f.slice(j);
        for (int i = 0; i < n; ++i) sl[(size_t)i] = spec[(size_t)i].real() * (double)n;
    }
    return f;
}

BoundReport apriori_report(const LevySymbol& symbol, double alpha,
                           const MixedNormSpec& spec, const AprioriOptions& opt) {
    BoundReport rep;
    rep.name = "apriori_estimate";
    auto fitted_constants = [&](int n, int steps, double& c_apriori, double& c_cz) {
        const SpaceGrid g(1, opt.half_width, n);
        const TimeGrid tg{spec.T, steps};
        c_apriori = 0.0;
        c_cz = 0.0;
        const MixedNormSpec l2{2.0, 2.0, spec.T};
        for (int s = 0; s < opt.samples; ++s) {
            const SpaceTimeField f = random_forcing(g, tg, opt.seed + (std::uint64_t)s);
            const SpaceTimeField u = solve_zero_ic(symbol, alpha, f);
            const SpaceTimeField du = caputo_field(u, alpha);
            const SpaceTimeField lu = apply_generator(u, symbol);
            const double fn = mixed_norm(f, spec);
            const double ratio =
                (mixed_norm(u, spec) + mixed_norm(du, spec) + mixed_norm(lu, spec)) / fn;
            c_apriori = std::max(c_apriori, ratio);
            c_cz = std::max(c_cz, mixed_norm(lu, l2) / mixed_norm(f, l2));
        }
    };
    double c0, cz0, c1, cz1;
    fitted_constants(opt.n, opt.steps, c0, cz0);
    fitted_constants(2 * opt.n, 2 * opt.steps, c1, cz1);
    rep.fitted["C_coarse"] = c0;
    rep.fitted["C_refined"] = c1;
    rep.fitted["C_growth"] = c1 / c0 - 1.0;
    rep.fitted["CZ_L2_coarse"] = cz0;
    rep.fitted["CZ_L2_refined"] = cz1;
    rep.fitted["CZ_L2_growth"] = cz1 / cz0 - 1.0;
    const bool pass = (c1 <= 1.25 * c0) && (cz1 <= 1.25 * cz0);
    rep.verdict = pass ? BoundReport::Verdict::pass : BoundReport::Verdict::fail;
    rep.detail = "p=" + std::to_string(spec.p) + " q=" + std::to_string(spec.q);
    return rep;
}

} // namespace subdiff
