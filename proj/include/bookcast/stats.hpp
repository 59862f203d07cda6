#pragma once

// Small numeric helpers shared by the feature extractors and trainers.

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace bookcast {

// mean / min / max / population variance of one aggregation family
struct Summary {
    double mean = 0.0;
    double min = 0.0;
    double max = 0.0;
    double variance = 0.0;

    bool operator==(const Summary&) const = default;
};

// Empty input collapses to all zeros so downstream vectors stay finite.
inline Summary summarize(std::span<const double> xs) {
    Summary s;
    if (xs.empty()) return s;
    double total = 0.0;
    s.min = xs[0];
    s.max = xs[0];
    for (double x : xs) {
        total += x;
        s.min = std::min(s.min, x);
        s.max = std::max(s.max, x);
    }
    s.mean = total / static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) {
        double d = x - s.mean;
        ss += d * d;
    }
    s.variance = ss / static_cast<double>(xs.size());
    return s;
}

// Shannon entropy in nats over nonnegative weights; 0*ln(0) := 0.
inline double entropy_nats(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (total <= 0.0) return 0.0;
    double h = 0.0;
    for (double w : weights) {
        if (w > 0.0) {
            double p = w / total;
            h -= p * std::log(p);
        }
    }
    return h;
}

inline double mean_of(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    double t = 0.0;
    for (double x : xs) t += x;
    return t / static_cast<double>(xs.size());
}

}  // namespace bookcast
