#pragma once

#include "subdiff/bound_report.hpp"
#include "subdiff/grid.hpp"
#include "subdiff/kernel_scales.hpp"

#include <optional>
#include <vector>

namespace subdiff {

/// Grid sizing for a target time: half_width >= 10 h^{-1}(1/t), doubling
/// until the boundary value of the synthesized kernel drops below 1e-8 of
/// the peak and the symbol decays below 1e-12 at the Nyquist frequency.
SpaceGrid auto_heat_grid(const LevySymbol& symbol, const KernelScales& scales,
                         double t, int n, int dimension = 1);

/// p_d(t, .) as the inverse transform of exp(-t psi(|xi|)) on the dual grid.
/// Raises resolution_error when exp(-t psi) has not decayed below 1e-12
/// within the Nyquist ball or the box aliases (boundary > 1e-8 peak).
GridField heat_kernel_grid(const LevySymbol& symbol, double t, const SpaceGrid& grid);

/// Radial monotonicity along every axis ray (within 1e-10 slack).
BoundReport check_unimodality(const GridField& field);

/// p(t,x) <= C t K(|x|) |x|^{-d}: fitted C outside the 2-cell annulus,
/// stability across a t-sweep is the caller's criterion.
BoundReport check_offdiag_bound(const GridField& field, const KernelScales& scales,
                                double t);

/// Exponential off-diagonal factor exp(-b t h(|x|)): log-linear regression
/// of the off-diagonal ratio against t h(|x|) on the window t h >= 1.
/// forced_b pins the rate (negative control). Pass: b > 0 and a one-sided
/// residual envelope.
BoundReport check_exp_bound(const GridField& field, const KernelScales& scales,
                            double t, Route route,
                            std::optional<double> forced_b = std::nullopt);

/// Near-diagonal large-time bound p(t,0) <= C (h^{-1}(1/t))^{-d} with
/// fitted C stable over t_list.
BoundReport check_near_diag_large_time(const LevySymbol& symbol,
                                       const KernelScales& scales,
                                       const std::vector<double>& t_list, int n);

/// Lemma-3.3-type integral int t K(|x|)/|x|^d exp(-b t h(|x|)) dx by radial
/// quadrature over the tabulated scales; for d = 1 the change of variable
/// h(rho) -> v makes it exactly 1/b, which the report records.
BoundReport check_tail_integral(const KernelScales& scales, int dimension, double b,
                                const std::vector<double>& t_list);

struct DimensionLift {
    std::vector<double> r;       // radial abscissae (positive axis)
    std::vector<double> p_lift;  // p_{d+2}(t, r)
    double mass;                 // integral over R^{d+2}
    double gradient_identity_error; // max rel. deviation of |p_d'| vs 2 pi r p_{d+2}
};

/// p_{d+2}(t, r) = -(2 pi r)^{-1} d/dr p_d(t, r) by centered differencing of
/// the radial profile; cross-checked against the spectral derivative.
/// Throws numeric_error when differencing noise dominates (2nd vs 4th order
/// disagree).
DimensionLift dimension_lift(const GridField& p_d, double t);

} // namespace subdiff
