#pragma once

#include "subdiff/fft.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace subdiff {

/// Periodic uniform grid on [-half_width, half_width]^dimension with n
/// points per axis (n a power of two, n >= 64). Dual grid frequencies are
/// xi_k = (pi / half_width) * k for signed k in [-n/2, n/2).
struct SpaceGrid {
    int dimension = 1;
    double half_width = 0.0;
    int n = 0;

    SpaceGrid(int dim, double half_width_, int n_);

    double spacing() const { return 2.0 * half_width / n; }
    double dxi() const;            // dual grid spacing pi / half_width
    double nyquist() const;        // largest resolved |xi| per axis
    size_t size() const;           // n^dimension
    double coord(int i) const;     // axis coordinate of index i
    double freq(int i) const;      // signed axis frequency of index i
    /// Euclidean |x| of a flattened row-major index
    double radius(size_t flat) const;
    /// Euclidean |xi| of a flattened row-major index
    double freq_radius(size_t flat) const;

    bool operator==(const SpaceGrid& o) const = default;
};

/// Sampled field on a SpaceGrid with an optional cached discrete transform.
class GridField {
public:
    GridField(SpaceGrid grid, cvector values);

    const SpaceGrid& grid() const { return grid_; }
    const cvector& values() const { return values_; }
    double real_at(size_t flat) const { return values_[flat].real(); }
    size_t size() const { return values_.size(); }

    /// Discrete Fourier transform of the values, cached after first use.
    const cvector& spectrum() const;

    /// Riemann-sum integral of the real part over the box.
    double integral() const;
    /// Riemann-sum of |real part| over the box.
    double abs_integral() const;
    double max_abs() const;

    /// Value slice along the positive x1-axis (radial profile for radial
    /// fields), including the origin sample.
    std::vector<double> axis_profile() const;

private:
    SpaceGrid grid_;
    cvector values_;
    mutable std::optional<cvector> spectrum_;
};

/// Build the field with spectral data m(|xi_k|) on the dual grid, i.e. the
/// discrete inverse transform of a radial multiplier. The ml multiplier is
/// evaluated once per distinct axis frequency magnitude via the supplied
/// radial function.
GridField synthesize_radial(const SpaceGrid& grid,
                            const std::function<double(double)>& multiplier);

/// Apply a radial spectral multiplier to an existing field.
GridField apply_multiplier(const GridField& f,
                           const std::function<double(double)>& multiplier);

/// Per-axis spectral derivative (multiplication by i xi_axis).
GridField spectral_derivative(const GridField& f, int axis);

} // namespace subdiff
