#include "subdiff/fractional_time.hpp"
#include "subdiff/errors.hpp"
#include "subdiff/mittag_leffler.hpp"
#include "subdiff/quadrature.hpp"

#include <cmath>

namespace subdiff {

namespace {

void require_grid(const TimeSeries& s) {
    if (s.grid.steps < 1 || s.values.size() != (size_t)s.grid.steps + 1)
        throw config_error("TimeSeries: size mismatch with grid");
    if (!(s.grid.T > 0.0)) throw config_error("TimeSeries: T must be positive");
}

} // namespace

TimeSeries rl_integral(const TimeSeries& series, double alpha) {
    require_grid(series);
    if (!(alpha > 0.0)) throw config_error("rl_integral: alpha must be positive");
    const int n = series.grid.steps;
    const double dt = series.grid.dt();
    const double rg1 = reciprocal_gamma(alpha + 1.0);
    const double rg2 = reciprocal_gamma(alpha + 2.0);
    auto G = [&](double x) { return std::pow(x, alpha) * rg1; };
    auto M = [&](double x) { return std::pow(x, alpha + 1.0) * rg2; };
    const auto w = ConvolutionWeights::build(n, dt, G, M);
    TimeSeries out;
    out.grid = series.grid;
    out.values.assign(n + 1, 0.0);
    for (int j = 1; j <= n; ++j) {
        kahan_sum s;
        for (int m = 0; m < j; ++m) {
            const int l = j - m;
            s.add(w.left[l] * series.values[m] + w.right[l] * series.values[m + 1]);
        }
        out.values[j] = s.value();
    }
    return out;
}

double caputo_l1_at(const double* values, int j, double dt, double alpha) {
    // L1: d^a u(t_j) = dt^{-a}/Gamma(2-a) sum_k b_k (u_{j-k} - u_{j-k-1})
    const double scale = std::pow(dt, -alpha) * reciprocal_gamma(2.0 - alpha);
    kahan_sum s;
    for (int k = 0; k < j; ++k) {
        const double b = std::pow(k + 1.0, 1.0 - alpha) - std::pow((double)k, 1.0 - alpha);
        s.add(b * (values[j - k] - values[j - k - 1]));
    }
    return scale * s.value();
}

TimeSeries caputo(const TimeSeries& series, double alpha) {
    require_grid(series);
    if (!(alpha > 0.0) || !(alpha < 1.0)) throw config_error("caputo: alpha in (0,1)");
    const int n = series.grid.steps;
    const double dt = series.grid.dt();
    TimeSeries out;
    out.grid = series.grid;
    out.values.assign(n + 1, 0.0);
    for (int j = 1; j <= n; ++j)
        out.values[j] = caputo_l1_at(series.values.data(), j, dt, alpha);
    out.values[0] = out.values.size() > 1 ? out.values[1] : 0.0;
    return out;
}

SemigroupResidual check_semigroup(const TimeSeries& series, double alpha, double beta) {
    require_grid(series);
    auto norm = [&](const std::vector<double>& v) {
        double s = 0.0;
        for (size_t i = 1; i < v.size(); ++i) s += v[i] * v[i];
        return std::sqrt(s);
    };
    SemigroupResidual res{};
    {
        const TimeSeries lhs = rl_integral(rl_integral(series, alpha), beta);
        const TimeSeries rhs = rl_integral(series, alpha + beta);
        std::vector<double> diff(rhs.values.size());
        for (size_t i = 0; i < diff.size(); ++i) diff[i] = lhs.values[i] - rhs.values[i];
        const double den = norm(rhs.values);
        res.composition = (den > 0.0) ? norm(diff) / den : 0.0;
    }
    if (alpha < 1.0) {
        // I^a d^a u = u requires u(0) = 0; shift by the initial value
        TimeSeries shifted = series;
        const double u0 = shifted.values[0];
        for (auto& v : shifted.values) v -= u0;
        const TimeSeries back = rl_integral(caputo(shifted, alpha), alpha);
        std::vector<double> diff(back.values.size());
        for (size_t i = 0; i < diff.size(); ++i) diff[i] = back.values[i] - shifted.values[i];
        const double den = norm(shifted.values);
        res.inversion = (den > 0.0) ? norm(diff) / den : 0.0;
    }
    return res;
}

} // namespace subdiff
