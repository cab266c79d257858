#include "subdiff/bound_report.hpp"

#include <algorithm>
#include <limits>

namespace subdiff {

std::string to_string(BoundReport::Verdict v) {
    switch (v) {
        case BoundReport::Verdict::pass: return "pass";
        case BoundReport::Verdict::fail: return "fail";
        case BoundReport::Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

double spread(const std::vector<double>& xs) {
    if (xs.empty()) return std::numeric_limits<double>::infinity();
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (double x : xs) {
        if (!(x > 0.0)) return std::numeric_limits<double>::infinity();
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    return hi / lo;
}

} // namespace subdiff
