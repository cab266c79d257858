#pragma once

namespace subdiff {

/// Parameter pair for the two-parameter Mittag-Leffler function E_{a,b}.
/// Supported domain: a in (0, 2], b in [-3, 5] (the upper slack admits the
/// recurrence partner E_{a,a+b} for b up to 3).
struct MLParams {
    double a;
    double b;
};

/// E_{a,b}(z) = sum_k z^k / Gamma(a k + b) for real z in [-z_max, 1].
///
/// Evaluation regimes: Taylor series with compensated summation near 0,
/// a Laplace-inversion integral representation on the mid negative axis
/// (0 < a < 1), and the algebraic asymptotic series (plus the conjugate
/// saddle pair when a > 1) far out. A cancellation guard reroutes Taylor
/// evaluations whose alternating terms outgrow the result.
double mittag_leffler(double a, double b, double z);

inline double mittag_leffler(const MLParams& p, double z) {
    return mittag_leffler(p.a, p.b, z);
}

/// Scaled residual of the identity E_{a,b}(z) = 1/Gamma(b) + z E_{a,a+b}(z).
double ml_recurrence_residual(double a, double b, double z);

/// 1/Gamma(x) with poles mapped to 0.
double reciprocal_gamma(double x);

inline constexpr double ml_z_max = 1e6;

namespace detail {
// individual regime evaluators, exposed for the regime-consistency tests
double ml_taylor(double a, double b, double z);
double ml_integral(double a, double b, double z);
double ml_asymptotic(double a, double b, double z);
} // namespace detail

} // namespace subdiff
