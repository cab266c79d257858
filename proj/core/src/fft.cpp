#include "subdiff/fft.hpp"
#include "subdiff/errors.hpp"

#include <cmath>
#include <numbers>

namespace subdiff {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void fft_inplace(cvector& data, bool inverse) {
    const size_t n = data.size();
    if (!is_power_of_two((int)n)) throw config_error("fft: length must be a power of two");
    // bit reversal
    for (size_t i = 1, j = 0; i < n; ++i) {
        size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }
    for (size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * std::numbers::pi / (double)len * (inverse ? 1.0 : -1.0);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (size_t j = 0; j < len / 2; ++j) {
                const auto u = data[i + j];
                const auto v = data[i + j + len / 2] * w;
                data[i + j] = u + v;
                data[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse) {
        const double inv = 1.0 / (double)n;
        for (auto& x : data) x *= inv;
    }
}

void fft_nd(cvector& data, int n, int dim, bool inverse) {
    if (dim < 1 || dim > 3) throw config_error("fft_nd: dim must be 1, 2 or 3");
    size_t total = 1;
    for (int d = 0; d < dim; ++d) total *= (size_t)n;
    if (data.size() != total) throw config_error("fft_nd: size mismatch");
    if (dim == 1) {
        fft_inplace(data, inverse);
        return;
    }
    cvector line((size_t)n);
    // transform along each axis; row-major layout, axis 'ax' has stride
    // n^(dim-1-ax)
    for (int ax = 0; ax < dim; ++ax) {
        size_t stride = 1;
        for (int d = ax + 1; d < dim; ++d) stride *= (size_t)n;
        const size_t nlines = total / (size_t)n;
        for (size_t l = 0; l < nlines; ++l) {
            // base index of the l-th line along this axis
            const size_t block = stride * (size_t)n;
            const size_t base = (l / stride) * block + (l % stride);
            for (int i = 0; i < n; ++i) line[(size_t)i] = data[base + (size_t)i * stride];
            fft_inplace(line, inverse);
            for (int i = 0; i < n; ++i) data[base + (size_t)i * stride] = line[(size_t)i];
        }
    }
}

} // namespace subdiff
