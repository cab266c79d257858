#include "subdiff/quadrature.hpp"
#include "subdiff/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace subdiff {

namespace {

// Gauss-Legendre nodes/weights on [-1, 1], positive half (rules are symmetric).
constexpr std::array<double, 4> gl8_x = {
    0.1834346424956498, 0.5255324099163290, 0.7966664774136267, 0.9602898564975363};
constexpr std::array<double, 4> gl8_w = {
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

constexpr std::array<double, 8> gl16_x = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
constexpr std::array<double, 8> gl16_w = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

constexpr std::array<double, 16> gl32_x = {
    0.0483076656877383, 0.1444719615827965, 0.2392873622521371, 0.3318686022821277,
    0.4213512761306353, 0.5068999089322294, 0.5877157572407623, 0.6630442669302152,
    0.7321821187402897, 0.7944837959679424, 0.8493676137325700, 0.8963211557660521,
    0.9349060759377397, 0.9647622555875064, 0.9856115115452684, 0.9972638618494816};
constexpr std::array<double, 16> gl32_w = {
    0.0965400885147278, 0.0956387200792749, 0.0938443990808046, 0.0911738786957639,
    0.0876520930044038, 0.0833119242269467, 0.0781938957870703, 0.0723457941088485,
    0.0658222227763618, 0.0586840934785355, 0.0509980592623762, 0.0428358980222267,
    0.0342738629130214, 0.0253920653092621, 0.0162743947309057, 0.0070186100094701};

// Kronrod 15 / Gauss 7 pair.
constexpr std::array<double, 15> k15_x = {
    -0.9914553711208126, -0.9491079123427585, -0.8648644233597691,
    -0.7415311855993945, -0.5860872354676911, -0.4058451513773972,
    -0.2077849550078985, 0.0,                 0.2077849550078985,
    0.4058451513773972,  0.5860872354676911,  0.7415311855993945,
    0.8648644233597691,  0.9491079123427585,  0.9914553711208126};
constexpr std::array<double, 15> k15_w = {
    0.0229353220105292, 0.0630920926299786, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278, 0.2044329400752989,
    0.1903505780647854, 0.1690047266392679, 0.1406532597155259,
    0.1047900103222502, 0.0630920926299786, 0.0229353220105292};
constexpr std::array<double, 7> g7_w = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694, 0.3818300505051189, 0.2797053914892767,
    0.1294849661688697};

struct gk_result {
    double value;
    double error;
};

gk_result gauss_kronrod_15(const real_fn& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double kron = 0.0, gauss = 0.0;
    for (int i = 0; i < 15; ++i) {
        const double fx = f(c + h * k15_x[i]);
        kron += k15_w[i] * fx;
        if (i % 2 == 1) gauss += g7_w[i / 2] * fx;
    }
    kron *= h;
    gauss *= h;
    double err = std::abs(kron - gauss);
    err = std::pow(200.0 * err, 1.5);
    return {kron, std::min(err, std::abs(kron - gauss) * 200.0)};
}

double adaptive_rec(const real_fn& f, double a, double b, double tol,
                    int depth, int max_depth, bool& failed) {
    auto r = gauss_kronrod_15(f, a, b);
    if (r.error <= tol || r.error <= 1e-300) return r.value;
    if (depth >= max_depth) {
        failed = true;
        return r.value;
    }
    const double m = 0.5 * (a + b);
    return adaptive_rec(f, a, m, 0.5 * tol, depth + 1, max_depth, failed) +
           adaptive_rec(f, m, b, 0.5 * tol, depth + 1, max_depth, failed);
}

} // namespace

double gauss_legendre(const real_fn& f, double a, double b, int order) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    kahan_sum s;
    auto run = [&](const double* xs, const double* ws, int half) {
        for (int i = 0; i < half; ++i) {
            s.add(ws[i] * f(c + h * xs[i]));
            s.add(ws[i] * f(c - h * xs[i]));
        }
    };
    if (order <= 8) run(gl8_x.data(), gl8_w.data(), 4);
    else if (order <= 16) run(gl16_x.data(), gl16_w.data(), 8);
    else run(gl32_x.data(), gl32_w.data(), 16);
    return h * s.value();
}

double integrate_adaptive(const real_fn& f, double a, double b,
                          double rel_tol, double abs_tol, int max_depth) {
    if (a == b) return 0.0;
    auto first = gauss_kronrod_15(f, a, b);
    double tol = std::max(abs_tol, rel_tol * std::abs(first.value));
    if (tol <= 0.0) tol = rel_tol;
    bool failed = false;
    double v = adaptive_rec(f, a, b, tol, 0, max_depth, failed);
    // retry once against the refined magnitude estimate
    if (std::abs(v) > 0 && tol < rel_tol * std::abs(v)) return v;
    if (failed) {
        double t2 = std::max(abs_tol, rel_tol * std::abs(v));
        failed = false;
        v = adaptive_rec(f, a, b, t2, 0, max_depth, failed);
        if (failed) throw numeric_error("integrate_adaptive: subdivision limit reached");
    }
    return v;
}

double integrate_exp_sinh(const real_fn& f, double rel_tol, int max_level,
                          double t_neg, double t_pos) {
    // s = exp(pi/2 sinh t), ds = s * pi/2 cosh t dt
    constexpr double half_pi = std::numbers::pi / 2.0;
    auto g = [&](double t) {
        const double sh = std::sinh(t);
        if (half_pi * sh > 700.0 || half_pi * sh < -707.0) return 0.0;
        const double s = std::exp(half_pi * sh);
        const double jac = s * half_pi * std::cosh(t);
        if (!(jac > 0.0) || !std::isfinite(jac)) return 0.0;
        const double v = f(s) * jac;
        return std::isfinite(v) ? v : 0.0;
    };
    double h = std::max(t_neg, t_pos);
    auto sweep = [&](double step, bool odd_only, double& out) {
        kahan_sum add;
        const double start = std::ceil(-t_neg / step);
        const double stop = std::floor(t_pos / step);
        for (double k = start; k <= stop; ++k) {
            if (odd_only && std::fmod(std::abs(k), 2.0) < 0.5) continue;
            add.add(g(k * step));
        }
        out = add.value();
    };
    double coarse;
    sweep(h, false, coarse);
    double prev = h * coarse;
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        double odd;
        sweep(h, true, odd);
        const double cur = 0.5 * prev + h * odd;
        if (level >= 5 &&
            std::abs(cur - prev) <= rel_tol * std::max(std::abs(cur), 1e-300)) {
            return cur;
        }
        prev = cur;
    }
    throw numeric_error("integrate_exp_sinh: level limit reached without convergence");
}

double integrate_to_infinity(const real_fn& f, double a, double rel_tol,
                             int max_panels) {
    kahan_sum total;
    double lo = a;
    for (int k = 0; k < max_panels; ++k) {
        const double hi = lo * 2.0;
        const double panel = gauss_legendre(f, lo, hi, 32);
        total.add(panel);
        if (k > 2 && std::abs(panel) <= rel_tol * std::abs(total.value())) {
            return total.value();
        }
        lo = hi;
    }
    throw numeric_error("integrate_to_infinity: panel limit reached");
}

double integrate_oscillatory(const real_fn& f, double a, double half_period,
                             double rel_tol, int max_half_periods) {
    // partial sums over half-period panels, iterated Aitken acceleration
    std::vector<double> partial;
    partial.reserve(64);
    kahan_sum s;
    double lo = a;
    double scale = 0.0;
    for (int k = 0; k < max_half_periods; ++k) {
        const double hi = lo + half_period;
        const double panel = gauss_legendre(f, lo, hi, 16);
        s.add(panel);
        partial.push_back(s.value());
        scale = std::max(scale, std::abs(panel));
        lo = hi;
        if (k >= 7 && k % 4 == 3) {
            std::vector<double> row = partial;
            while (row.size() >= 3) {
                std::vector<double> next(row.size() - 2);
                for (size_t i = 0; i + 2 < row.size(); ++i) {
                    const double den = row[i + 2] - 2.0 * row[i + 1] + row[i];
                    next[i] = (std::abs(den) < 1e-300)
                                  ? row[i + 2]
                                  : row[i + 2] -
                                        (row[i + 2] - row[i + 1]) *
                                            (row[i + 2] - row[i + 1]) / den;
                }
                if (next.size() >= 2) {
                    const double d = std::abs(next.back() - next[next.size() - 2]);
                    if (d <= rel_tol * std::max(std::abs(next.back()), 1e-300)) {
                        return next.back();
                    }
                }
                row = std::move(next);
            }
            if (!row.empty() &&
                std::abs(partial.back() - row.back()) +
                        std::abs(partial[partial.size() - 2] - partial.back()) <=
                    rel_tol * std::max(std::abs(row.back()), 1e-300)) {
                return row.back();
            }
        }
    }
    // fall back to the last accelerated value when the raw series already
    // settled to the tolerance
    if (partial.size() >= 2 &&
        std::abs(partial.back() - partial[partial.size() - 2]) <=
            10 * rel_tol * std::max(std::abs(partial.back()), 1e-300)) {
        return partial.back();
    }
    throw numeric_error("integrate_oscillatory: acceleration did not converge");
}

double integrate_log_panels(const real_fn& f, double a, double b,
                            int panels_per_decade, int order) {
    if (!(a > 0.0) || !(b > a)) throw config_error("integrate_log_panels: need 0 < a < b");
    const double decades = std::log10(b / a);
    const int n = std::max(1, (int)std::ceil(decades * panels_per_decade));
    const double step = std::pow(b / a, 1.0 / n);
    kahan_sum s;
    double lo = a;
    for (int i = 0; i < n; ++i) {
        double hi = (i == n - 1) ? b : lo * step;
        s.add(gauss_legendre(f, lo, hi, order));
        lo = hi;
    }
    return s.value();
}

std::vector<double> log_grid(double lo, double hi, int per_decade) {
    if (!(lo > 0.0) || !(hi > lo)) throw config_error("log_grid: need 0 < lo < hi");
    const int n = std::max(1, (int)std::round(std::log10(hi / lo) * per_decade));
    std::vector<double> g(n + 1);
    const double r = std::log(hi / lo) / n;
    for (int i = 0; i <= n; ++i) g[i] = lo * std::exp(r * i);
    g.back() = hi;
    return g;
}

} // namespace subdiff
