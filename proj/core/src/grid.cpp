#include "subdiff/grid.hpp"
#include "subdiff/errors.hpp"

#include <cmath>
#include <numbers>
#include <unordered_map>

namespace subdiff {

SpaceGrid::SpaceGrid(int dim, double half_width_, int n_)
    : dimension(dim), half_width(half_width_), n(n_) {
    if (dim < 1 || dim > 3) throw config_error("SpaceGrid: dimension must be 1, 2 or 3");
    if (!(half_width > 0.0)) throw config_error("SpaceGrid: half_width must be positive");
    if (n < 64 || !is_power_of_two(n)) throw config_error("SpaceGrid: n must be a power of two >= 64");
}

double SpaceGrid::dxi() const { return std::numbers::pi / half_width; }
double SpaceGrid::nyquist() const { return dxi() * (n / 2); }

size_t SpaceGrid::size() const {
    size_t s = 1;
    for (int d = 0; d < dimension; ++d) s *= (size_t)n;
    return s;
}

double SpaceGrid::coord(int i) const { return -half_width + spacing() * i; }

double SpaceGrid::freq(int i) const {
    const int k = (i < n / 2) ? i : i - n;
    return dxi() * k;
}

double SpaceGrid::radius(size_t flat) const {
    double r2 = 0.0;
    size_t rem = flat;
    for (int d = dimension - 1; d >= 0; --d) {
        const int i = (int)(rem % (size_t)n);
        rem /= (size_t)n;
        const double x = coord(i);
        r2 += x * x;
    }
    return std::sqrt(r2);
}

double SpaceGrid::freq_radius(size_t flat) const {
    double r2 = 0.0;
    size_t rem = flat;
    for (int d = dimension - 1; d >= 0; --d) {
        const int i = (int)(rem % (size_t)n);
        rem /= (size_t)n;
        const double x = freq(i);
        r2 += x * x;
    }
    return std::sqrt(r2);
}

GridField::GridField(SpaceGrid grid, cvector values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) throw config_error("GridField: size mismatch");
}

const cvector& GridField::spectrum() const {
    if (!spectrum_) {
        cvector s = values_;
        fft_nd(s, grid_.n, grid_.dimension, false);
        spectrum_ = std::move(s);
    }
    return *spectrum_;
}

double GridField::integral() const {
    double sum = 0.0, c = 0.0;
    for (const auto& v : values_) {
        double y = v.real() - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    double cell = 1.0;
    for (int d = 0; d < grid_.dimension; ++d) cell *= grid_.spacing();
    return sum * cell;
}

double GridField::abs_integral() const {
    double sum = 0.0;
    for (const auto& v : values_) sum += std::abs(v.real());
    double cell = 1.0;
    for (int d = 0; d < grid_.dimension; ++d) cell *= grid_.spacing();
    return sum * cell;
}

double GridField::max_abs() const {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v.real()));
    return m;
}

std::vector<double> GridField::axis_profile() const {
    const int n = grid_.n;
    std::vector<double> prof(n / 2);
    size_t base = 0;
    // all transverse axes pinned at coordinate 0 (index n/2)
    for (int d = 0; d < grid_.dimension - 1; ++d) base = base * (size_t)n + (size_t)(n / 2);
    base *= (grid_.dimension > 1) ? (size_t)n : (size_t)1;
    if (grid_.dimension == 1) base = 0;
    for (int k = 0; k < n / 2; ++k) prof[(size_t)k] = values_[base + (size_t)(n / 2 + k)].real();
    return prof;
}

namespace {

// radial multiplier sampled on the dual grid, deduplicated on |k|^2
cvector radial_spectral_array(const SpaceGrid& g,
                              const std::function<double(double)>& multiplier,
                              bool with_centering_phase) {
    std::unordered_map<long long, double> cache;
    cache.reserve(1024);
    auto eval = [&](long long k2) {
        auto it = cache.find(k2);
        if (it != cache.end()) return it->second;
        const double v = multiplier(g.dxi() * std::sqrt((double)k2));
        cache.emplace(k2, v);
        return v;
    };
    const int n = g.n;
    cvector spec(g.size());
    const size_t total = g.size();
    for (size_t flat = 0; flat < total; ++flat) {
        long long k2 = 0;
        int ksum = 0;
        size_t rem = flat;
        for (int d = g.dimension - 1; d >= 0; --d) {
            const int i = (int)(rem % (size_t)n);
            rem /= (size_t)n;
            const int k = (i < n / 2) ? i : i - n;
            k2 += (long long)k * k;
            ksum += k;
        }
        double v = eval(k2);
        if (with_centering_phase && (ksum & 1)) v = -v;
        spec[flat] = v;
    }
    return spec;
}

} // namespace

GridField synthesize_radial(const SpaceGrid& grid,
                            const std::function<double(double)>& multiplier) {
    cvector spec = radial_spectral_array(grid, multiplier, true);
    fft_nd(spec, grid.n, grid.dimension, true);
    double scale = 1.0;
    for (int d = 0; d < grid.dimension; ++d) scale *= grid.n / (2.0 * grid.half_width);
    for (auto& v : spec) v *= scale;
    return GridField(grid, std::move(spec));
}

GridField apply_multiplier(const GridField& f,
                           const std::function<double(double)>& multiplier) {
    const SpaceGrid& g = f.grid();
    cvector spec = f.spectrum();
    cvector m = radial_spectral_array(g, multiplier, false);
    for (size_t i = 0; i < spec.size(); ++i) spec[i] *= m[i];
    fft_nd(spec, g.n, g.dimension, true);
    return GridField(g, std::move(spec));
}

GridField spectral_derivative(const GridField& f, int axis) {
    const SpaceGrid& g = f.grid();
    if (axis < 0 || axis >= g.dimension) throw config_error("spectral_derivative: bad axis");
    cvector spec = f.spectrum();
    const int n = g.n;
    const size_t total = g.size();
    for (size_t flat = 0; flat < total; ++flat) {
        size_t rem = flat;
        int idx = 0;
        for (int d = g.dimension - 1; d >= 0; --d) {
            const int i = (int)(rem % (size_t)n);
            rem /= (size_t)n;
            if (d == axis) idx = i;
        }
        double xi = g.freq(idx);
        // the unpaired Nyquist mode of a real field carries no odd derivative
        if (idx == n / 2) xi = 0.0;
        spec[flat] *= std::complex<double>(0.0, xi);
    }
    fft_nd(spec, g.n, g.dimension, true);
    return GridField(g, std::move(spec));
}

} // namespace subdiff
