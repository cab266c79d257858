#pragma once

#include <functional>
#include <vector>

namespace subdiff {

using real_fn = std::function<double(double)>;

/// Fixed-order Gauss-Legendre rule on [a, b]. Orders 8, 16, 32 available.
double gauss_legendre(const real_fn& f, double a, double b, int order = 32);

/// Adaptive Gauss-Kronrod (15-point) on [a, b] to a relative tolerance.
/// Throws numeric_error when the subdivision limit is reached without
/// meeting the tolerance.
double integrate_adaptive(const real_fn& f, double a, double b,
                          double rel_tol = 1e-10, double abs_tol = 0.0,
                          int max_depth = 28);

/// Integral over (0, inf) by the exp-sinh double-exponential transform
/// s = exp(sinh(t) * pi/2). Handles integrable algebraic endpoint
/// singularities at 0 and exponential tail decay. Levels are doubled until
/// two successive refinements agree to rel_tol. The transform window
/// [-t_neg, t_pos] must reach far enough that the transformed integrand is
/// negligible; for an integrand ~ s^{eps-1} near 0 take
/// t_neg ~ asinh(30/eps).
double integrate_exp_sinh(const real_fn& f, double rel_tol = 1e-10,
                          int max_level = 12, double t_neg = 4.4,
                          double t_pos = 4.4);

/// Integral of a decaying integrand over [a, inf): dyadic panels
/// [a 2^k, a 2^{k+1}] with Gauss-Legendre until the running panel drops
/// below rel_tol times the accumulated value.
double integrate_to_infinity(const real_fn& f, double a,
                             double rel_tol = 1e-10, int max_panels = 400);

/// Integral of an oscillatory-decaying integrand sum over half-period
/// panels [a + k*half_period, ...], accelerated by iterated Aitken
/// extrapolation of the partial sums.
double integrate_oscillatory(const real_fn& f, double a, double half_period,
                             double rel_tol = 1e-10, int max_half_periods = 220);

/// Composite Gauss-Legendre over [a, b] split into log-uniform panels
/// (panel endpoints geometric). Used for slowly varying integrands.
double integrate_log_panels(const real_fn& f, double a, double b,
                            int panels_per_decade = 4, int order = 32);

/// Kahan compensated accumulator.
struct kahan_sum {
    double sum = 0.0;
    double c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

/// Log-spaced grid with n points per decade covering [lo, hi].
std::vector<double> log_grid(double lo, double hi, int per_decade);

} // namespace subdiff
