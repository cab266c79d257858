#pragma once

#include <map>
#include <string>
#include <vector>

namespace subdiff {

/// Outcome of one inequality check: per-sample ratios, fitted constants and
/// a verdict. Serialized as a JSON record by the CLI.
struct BoundReport {
    std::string name;                    // which bound / lemma
    std::vector<double> sample_points;   // abscissae of the sweep (t, b, r, ...)
    std::vector<double> ratios;          // per-sample ratio or LHS value
    std::map<std::string, double> fitted; // named fitted constants
    enum class Verdict { pass, fail, inconclusive } verdict = Verdict::inconclusive;
    std::string detail;

    bool passed() const { return verdict == Verdict::pass; }
};

std::string to_string(BoundReport::Verdict v);

/// max/min of a positive sample set; infinity when any entry is non-positive.
double spread(const std::vector<double>& xs);

} // namespace subdiff
