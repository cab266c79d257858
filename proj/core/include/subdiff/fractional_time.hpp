#pragma once

#include <vector>

namespace subdiff {

/// Uniform time grid on [0, T] with `steps` intervals (steps+1 samples).
struct TimeGrid {
    double T = 1.0;
    int steps = 0;
    double dt() const { return T / steps; }
    double t(int j) const { return T * j / steps; }
};

/// Scalar series on a uniform time grid.
struct TimeSeries {
    TimeGrid grid;
    std::vector<double> values; // size steps + 1
};

/// Piecewise-linear (product-trapezoidal) convolution weights for a Volterra
/// kernel k with running integrals G(x) = int_0^x k and M(x) = int_0^x G.
/// For lag l >= 1:
///   u_j = sum_{m=0}^{j-1} left[l] f_m + right[l] f_{m+1},  l = j - m.
struct ConvolutionWeights {
    std::vector<double> left, right; // index by lag, entry 0 unused

    template <class GFn, class MFn>
    static ConvolutionWeights build(int lags, double dt, GFn&& G, MFn&& M) {
        ConvolutionWeights w;
        w.left.assign(lags + 1, 0.0);
        w.right.assign(lags + 1, 0.0);
        double G_prev = 0.0, M_prev = 0.0;
        for (int l = 1; l <= lags; ++l) {
            const double G_cur = G(l * dt);
            const double M_cur = M(l * dt);
            const double I0 = G_cur - G_prev;
            const double I1 = (M_cur - M_prev - dt * G_prev) / dt;
            w.left[l] = I0 - I1;
            w.right[l] = I1;
            G_prev = G_cur;
            M_prev = M_cur;
        }
        return w;
    }
};

/// Riemann-Liouville integral I^alpha (alpha > 0) by product-trapezoid
/// convolution quadrature; O(dt^2) for smooth inputs.
TimeSeries rl_integral(const TimeSeries& series, double alpha);

/// Caputo derivative of order alpha in (0,1) by the L1 scheme,
/// O(dt^{2-alpha}); the value at t = 0 is set to the first interior value.
TimeSeries caputo(const TimeSeries& series, double alpha);

/// Raw L1 evaluation at node j from a contiguous value array (shared by the
/// space-time field path).
double caputo_l1_at(const double* values, int j, double dt, double alpha);

struct SemigroupResidual {
    double composition;  // || I^a I^b f - I^{a+b} f || / || I^{a+b} f ||
    double inversion;    // || I^a d^a f - f || / || f ||  (f(0) = 0)
};

/// Discrete-norm residuals of I^a I^b = I^{a+b} and I^a d^a = id.
SemigroupResidual check_semigroup(const TimeSeries& series, double alpha, double beta);

} // namespace subdiff
