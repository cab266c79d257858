#pragma once

#include "subdiff/bound_report.hpp"
#include "subdiff/fractional_time.hpp"
#include "subdiff/grid.hpp"
#include "subdiff/kernel_scales.hpp"

#include <cstdint>

namespace subdiff {

/// Time-indexed stack of grid slices sharing one spatial grid.
class SpaceTimeField {
public:
    SpaceTimeField(SpaceGrid grid, TimeGrid time);

    const SpaceGrid& grid() const { return grid_; }
    const TimeGrid& time() const { return time_; }
    int slices() const { return time_.steps + 1; }
    cvector& slice(int j) { return slices_[(size_t)j]; }
    const cvector& slice(int j) const { return slices_[(size_t)j]; }
    double real_at(int j, size_t flat) const { return slices_[(size_t)j][flat].real(); }

private:
    SpaceGrid grid_;
    TimeGrid time_;
    std::vector<cvector> slices_;
};

/// L f = F^{-1}(-psi(|xi|) F f): the generator as a spectral multiplier.
GridField apply_generator(const GridField& f, const LevySymbol& symbol);
SpaceTimeField apply_generator(const SpaceTimeField& f, const LevySymbol& symbol);

/// (1 - L)^{gamma/2}: multiplier (1 + psi)^{gamma/2}.
GridField bessel_potential(const GridField& f, const LevySymbol& symbol, double gamma);

/// Zero-initial-condition solve of d_t^alpha u = L u + f by the per-mode
/// Volterra representation
///   u^(t,xi) = int_0^t (t-s)^{a-1} E_{a,a}(-(t-s)^a psi) f^(s,xi) ds
/// with product-trapezoid weights built from the exact running integrals
///   G(x) = x^a E_{a,a+1}(-psi x^a),  M(x) = x^{a+1} E_{a,a+2}(-psi x^a).
SpaceTimeField solve_zero_ic(const LevySymbol& symbol, double alpha,
                             const SpaceTimeField& f);

/// Homogeneous evolution: multiplier E_{a,1}(-t^a psi) applied to u0.
GridField homogeneous_solution(const LevySymbol& symbol, double alpha,
                               const GridField& u0, double t);

/// The Calderon-Zygmund operator L f = 𝓛(solve_zero_ic(f)): the same
/// Volterra weights scaled per mode by -psi.
SpaceTimeField cz_operator(const LevySymbol& symbol, double alpha,
                           const SpaceTimeField& f);

struct MixedNormSpec {
    double p = 2.0;
    double q = 2.0;
    double T = 1.0;
};

/// L_q((0,T); L_p) discretization: Riemann sums in space, trapezoid in time.
double mixed_norm(const SpaceTimeField& u, const MixedNormSpec& spec);

/// Caputo derivative slice stack by the L1 scheme (independent of the ML
/// quadrature that produced u).
SpaceTimeField caputo_field(const SpaceTimeField& u, double alpha);

/// Relative mixed-norm (p = q = 2) residual of d_t^alpha u - L u - f using
/// the L1 time scheme and the spectral generator; 0 when f vanishes.
double residual(const SpaceTimeField& u, const SpaceTimeField& f,
                const LevySymbol& symbol, double alpha);

/// Seeded band-limited space-time forcing: trigonometric polynomial in x
/// (modes up to n/4) with smooth random trigonometric time profiles.
SpaceTimeField random_forcing(const SpaceGrid& grid, const TimeGrid& time,
                              std::uint64_t seed);

struct AprioriOptions {
    int n = 128;
    int steps = 128;
    double half_width = 16.0;
    int samples = 20;
    std::uint64_t seed = 42;
};

/// Empirical a priori ratio (||u|| + ||d^a u|| + ||Lu||) / ||f|| over seeded
/// samples at the requested mixed norm, re-fitted after one 2x space-time
/// refinement; pass iff the fitted constant grows by less than 25%. The L2
/// bound for the CZ operator is fitted the same way.
BoundReport apriori_report(const LevySymbol& symbol, double alpha,
                           const MixedNormSpec& spec, const AprioriOptions& opt);

} // namespace subdiff
