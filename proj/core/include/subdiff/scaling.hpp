#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace subdiff {

enum class Route { bounded, h_comparable, class_g, unknown, none };

std::string to_string(Route r);

/// A positive intensity function ell with its four weak-scaling exponents:
/// delta[0..1] bound ell(R)/ell(r) on 1 <= r <= R, delta[2..3] on
/// 0 < r <= R <= 1. Admissible ranges are 0 <= d1 <= d2 <= 1 and
/// 0 < d3 <= d4 < 2 (d3 = 0 marks a profile whose tail integral L
/// diverges; such profiles cannot build kernel scales).
struct ScalingProfile {
    std::string name;
    std::function<double(double)> eval;
    std::array<double, 4> delta{0.0, 0.0, 0.0, 0.0};
    Route declared_route = Route::unknown;

    double operator()(double r) const;
};

/// Evaluate ell(r), guarding domain and finiteness.
double eval_ell(const ScalingProfile& p, double r);

/// Construct a catalog profile by name:
///   power:delta | log | log-pow:b,c1,c2 | log-capped:gamma |
///   exp-log-pow:b | sin-log | const:c | cauchy
/// (cauchy is power:1 carried under its own name so the jump-kernel catalog
/// can attach the exactly normalized Cauchy kernel).
ScalingProfile catalog_profile(const std::string& spec);

/// All catalog entry names with default parameters, for --list-catalog and
/// the verification suites.
std::vector<std::string> catalog_names();

/// Admissibility validation: exponent ranges, positivity on a wide log grid,
/// and window-stability of the fitted two-sided constants (a profile that
/// needs delta1 < 0, like 1/log(1+r), fails here).
/// Throws config_error on violation.
void validate_profile(const ScalingProfile& p, double r_min = 1e-6, double r_max = 1e6);

struct WeakScalingReport {
    double C1_small = 0.0, C2_small = 0.0; // fitted constants on [1, r_max]
    double C1_large = 0.0, C2_large = 0.0; // fitted constants on [r_min, 1]
    bool pass = false;
    std::string detail;
};

/// Fit the extremal constants realized on all grid pairs for both scaling
/// windows and check them against the declared exponents.
WeakScalingReport check_weak_scaling(const ScalingProfile& p,
                                     const std::vector<double>& r_grid);
WeakScalingReport check_weak_scaling(const ScalingProfile& p);

/// sup over r in (1, r_max] of J(r) exp(-a J(r)/ell(r)) with
/// J(r) = int_1^r ell(s)/s ds, the class-G statistic. The inner integral
/// uses the log substitution s = e^u with composite Gauss-Legendre panels;
/// the sup is grid-scanned and locally refined.
double class_g_statistic(const ScalingProfile& p, double a, double r_max);

struct ClassGReport {
    std::string profile;
    std::vector<double> a_values;
    // statistics[i][j]: statistic for a_values[i] at window j (expanding r_max)
    std::vector<std::array<double, 3>> statistics;
    std::array<double, 3> windows{1e4, 1e6, 1e8};
    enum class Verdict { in_g, not_in_g, inconclusive } verdict;
};

std::string to_string(ClassGReport::Verdict v);

/// Stabilization-based class-G verdict: in_g iff the relative growth of the
/// statistic between the last two windows stays below 1% for every tested a.
ClassGReport check_class_g(const ScalingProfile& p,
                           std::vector<double> a_values = {0.5, 1.0, 2.0, 4.0});

class KernelScales; // kernel_scales.hpp

/// Assumption-routing: bounded -> h_comparable -> class_g -> none, each
/// tested numerically. Scales are only consulted for the h-comparability
/// test and may be null when the profile admits no scales.
Route classify_route(const ScalingProfile& p, const KernelScales* scales);

enum class ClosureRule {
    scale_bounded_factor, // ell * ell2 with ell2 in (lo, hi)
    power_substitution,   // r -> ell(r^b)
    divide_increasing,    // ell / ell2 with ell2 increasing, >= c > 0
    log_iterates,         // products of powers of iterated logs
    exp_log_power         // exp((log(1+r))^b) - 1, generator
};

struct ClosureParams {
    double b = 1.0;                                   // power-type rules
    std::function<double(double)> factor;             // bounded factor / divisor
    std::vector<std::pair<int, double>> iterate_pows; // (k, b_k) for log_iterates
};

/// Build a derived profile expected to stay in class G.
ScalingProfile closure_generate(const ScalingProfile& base, ClosureRule rule,
                                const ClosureParams& params);

struct EnvelopeResult {
    std::vector<double> r;
    std::vector<double> value; // strictly increasing envelope
    double comparability = 1.0; // fitted C with f <= envelope <= C f
};

/// Strictly increasing envelope of a non-decreasing table: maximal flat runs
/// [r_k, l_k] are extended by eps_k (half the gap to the next strict
/// increase, capped at 1) and replaced by linear ramps. Input that decreases
/// somewhere is first replaced by its running maximum.
EnvelopeResult monotone_envelope(const std::vector<double>& r,
                                 const std::vector<double>& f);

} // namespace subdiff
