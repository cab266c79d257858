#pragma once

#include "subdiff/bound_report.hpp"
#include "subdiff/scaling.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace subdiff {

/// Radial jump kernel profile j_d(r), comparable to r^{-d} ell(r^{-1}) with
/// two-sided constants kappa1, kappa2. Constructed kernels are checked for
/// the comparability sandwich and monotone decrease on a log grid.
struct JumpKernel {
    int dimension = 1;
    ScalingProfile profile;
    double kappa1 = 1.0, kappa2 = 1.0;
    std::function<double(double)> eval;

    double operator()(double r) const { return eval(r); }
};

/// Default kernel j_d(r) = r^{-d} ell(r^{-1}) (kappa1 = kappa2 = 1).
JumpKernel make_jump_kernel(const ScalingProfile& p, int dimension);

/// Catalog kernel by profile name; "cauchy" (d=1) carries the exactly
/// normalized kernel 1/(pi r^2) whose symbol is psi(rho) = rho.
JumpKernel catalog_jump_kernel(const std::string& name, int dimension);

/// Tabulated scale functions on a log grid:
///   K(r) = r^{-2} int_0^r s ell(1/s) ds
///   L(r) = int_r^inf ell(1/s)/s ds
///   h    = K + L, strictly decreasing, inverted by bisection + Newton
/// All downstream consumers interpolate log-log linearly.
class KernelScales {
public:
    KernelScales(const ScalingProfile& p, double r_min = 1e-6, double r_max = 1e6,
                 int points_per_decade = 64);

    double K(double r) const;
    double L(double r) const;
    double h(double r) const;
    /// h^{-1}(v) for v within the tabulated range of h; no extrapolation.
    double h_inverse(double v) const;
    /// kappa(b) = h(b)^{-1/alpha}, the parabolic time scale of radius b.
    double kappa(double alpha, double b) const;

    double r_min() const { return r_.front(); }
    double r_max() const { return r_.back(); }
    const std::vector<double>& grid() const { return r_; }
    const ScalingProfile& profile() const { return profile_; }

private:
    ScalingProfile profile_;
    std::vector<double> r_, K_, L_, h_;
    double interp(const std::vector<double>& tab, double r) const;
};

/// Radial Levy symbol psi(rho) = int (1 - cos(xi . x)) j_d(dx) tabulated on
/// a log grid with monotone log-log interpolation; psi(0) = 0.
class LevySymbol {
public:
    LevySymbol(const JumpKernel& kernel, double rho_min = 1e-7, double rho_max = 1e7,
               int points_per_decade = 64);

    double operator()(double rho) const; // interpolated, rho >= 0
    double rho_min() const { return rho_.front(); }
    double rho_max() const { return rho_.back(); }
    int dimension() const { return dimension_; }
    const std::vector<double>& grid() const { return rho_; }
    const std::vector<double>& values() const { return psi_; }

    /// Quadrature evaluation at a single rho (oracle path, no table).
    static double direct(const JumpKernel& kernel, double rho);

private:
    int dimension_;
    std::vector<double> rho_, psi_;
};

/// C0 h(r) <= psi(1/r) <= 2 h(r): fits C0 = min psi(1/r)/h(r) and checks the
/// upper ratio against 2 with 5% quadrature slack.
BoundReport check_symbol_h_comparability(const LevySymbol& symbol,
                                         const KernelScales& scales);

/// Route-dependent comparability: K = ell(1/r) = r^d j_d(r) everywhere,
/// h = K for r >= 1, and the full K = L = h = ell(1/r) only when delta1 > 0.
BoundReport check_scale_comparability(const KernelScales& scales,
                                      const JumpKernel& kernel, Route route);

/// h^{-1} scaling: h^{-1}(r)/h^{-1}(R) <= c (r/R)^{1/delta3} and
/// R/r <= (h^{-1}(r)/h^{-1}(R))^2 on sampled pairs r < R.
BoundReport check_h_inverse_scaling(const KernelScales& scales, double delta3);

} // namespace subdiff
