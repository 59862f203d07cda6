#pragma once

// Independent brute-force oracles for the formula and metric tests. These
// deliberately recompute everything from raw inputs with direct summation,
// sharing no code path with the library implementations they check.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace oracle {

// Shannon entropy of a count histogram, probabilities formed by division.
inline double entropy(const std::vector<double>& counts) {
    double total = 0.0;
    for (double c : counts) total += c;
    if (total <= 0.0) return 0.0;
    double h = 0.0;
    for (double c : counts) {
        if (c > 0.0) h -= (c / total) * std::log(c / total);
    }
    return h;
}

// top-k coverage with count ties broken by ascending name
inline double selectivity(std::vector<std::pair<std::string, std::int64_t>> shelves, int k) {
    if (shelves.empty()) return 1.0;
    double total = 0.0;
    for (const auto& [_, c] : shelves) total += static_cast<double>(c);
    if (total <= 0.0) return 1.0;
    std::sort(shelves.begin(), shelves.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    double covered = 0.0;
    for (std::size_t i = 0; i < shelves.size() && i < static_cast<std::size_t>(k); ++i) {
        covered += static_cast<double>(shelves[i].second);
    }
    return covered / total;
}

inline double keyword_overlap(const std::set<std::string>& a, const std::set<std::string>& b) {
    std::size_t inter = 0;
    for (const auto& k : a) inter += b.count(k);
    return static_cast<double>(inter) / static_cast<double>(std::min(a.size(), b.size()));
}

// add-one smoothed KL over the union vocabulary, built token by token
inline double kl_divergence(const std::vector<std::string>& tokens_a,
                            const std::vector<std::string>& tokens_b) {
    std::set<std::string> vocab(tokens_a.begin(), tokens_a.end());
    vocab.insert(tokens_b.begin(), tokens_b.end());
    std::map<std::string, double> ca, cb;
    for (const auto& t : tokens_a) ca[t] += 1.0;
    for (const auto& t : tokens_b) cb[t] += 1.0;
    const double na = static_cast<double>(tokens_a.size());
    const double nb = static_cast<double>(tokens_b.size());
    const double v = static_cast<double>(vocab.size());
    double kl = 0.0;
    for (const auto& w : vocab) {
        const double pa = ((ca.count(w) ? ca[w] : 0.0) + 1.0) / (na + v);
        const double pb = ((cb.count(w) ? cb[w] : 0.0) + 1.0) / (nb + v);
        kl += pa * std::log(pa / pb);
    }
    return kl;
}

inline double chi_square(const std::vector<std::array<std::int64_t, 2>>& table) {
    double n = 0.0;
    std::vector<double> rows(table.size(), 0.0);
    double col0 = 0.0, col1 = 0.0;
    for (std::size_t b = 0; b < table.size(); ++b) {
        rows[b] = static_cast<double>(table[b][0] + table[b][1]);
        col0 += static_cast<double>(table[b][0]);
        col1 += static_cast<double>(table[b][1]);
        n += rows[b];
    }
    if (n <= 0.0) return 0.0;
    double stat = 0.0;
    for (std::size_t b = 0; b < table.size(); ++b) {
        for (int l = 0; l < 2; ++l) {
            const double expected = rows[b] * (l == 0 ? col0 : col1) / n;
            if (expected > 0.0) {
                const double d = static_cast<double>(table[b][l]) - expected;
                stat += d * d / expected;
            }
        }
    }
    return stat;
}

inline double info_gain(const std::vector<std::array<std::int64_t, 2>>& table) {
    double col0 = 0.0, col1 = 0.0, n = 0.0;
    for (const auto& row : table) {
        col0 += static_cast<double>(row[0]);
        col1 += static_cast<double>(row[1]);
    }
    n = col0 + col1;
    if (n <= 0.0) return 0.0;
    auto h2 = [](double a, double b) {
        const double t = a + b;
        if (t <= 0.0) return 0.0;
        double h = 0.0;
        if (a > 0.0) h -= (a / t) * std::log(a / t);
        if (b > 0.0) h -= (b / t) * std::log(b / t);
        return h;
    };
    double h_label = h2(col0, col1);
    double h_cond = 0.0;
    for (const auto& row : table) {
        const double rn = static_cast<double>(row[0] + row[1]);
        if (rn > 0.0) h_cond += (rn / n) * h2(static_cast<double>(row[0]), static_cast<double>(row[1]));
    }
    return h_label - h_cond;
}

// O(n^2) pairwise AUC with ties counting one half
inline double auc_pairwise(const std::vector<double>& scores, const std::vector<int>& labels) {
    double wins = 0.0;
    std::int64_t pairs = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (labels[i] != 1) continue;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (labels[j] != 0) continue;
            ++pairs;
            if (scores[i] > scores[j]) wins += 1.0;
            else if (scores[i] == scores[j]) wins += 0.5;
        }
    }
    return wins / static_cast<double>(pairs);
}

struct PrfOracle {
    double accuracy, precision_pos, recall_pos, f1_pos, precision_neg, recall_neg, f1_neg;
};

// direct confusion enumeration at a threshold (score >= threshold is positive)
inline PrfOracle prf(const std::vector<double>& scores, const std::vector<int>& labels,
                     double threshold) {
    double tp = 0, fp = 0, fn = 0, tn = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        const bool pred = scores[i] >= threshold;
        if (pred && labels[i] == 1) ++tp;
        else if (pred) ++fp;
        else if (labels[i] == 1) ++fn;
        else ++tn;
    }
    auto div = [](double a, double b) { return b > 0 ? a / b : 0.0; };
    PrfOracle o{};
    o.accuracy = div(tp + tn, tp + fp + fn + tn);
    o.precision_pos = div(tp, tp + fp);
    o.recall_pos = div(tp, tp + fn);
    o.f1_pos = div(2 * o.precision_pos * o.recall_pos, o.precision_pos + o.recall_pos);
    o.precision_neg = div(tn, tn + fn);
    o.recall_neg = div(tn, tn + fp);
    o.f1_neg = div(2 * o.precision_neg * o.recall_neg, o.precision_neg + o.recall_neg);
    return o;
}

// central finite differences of a scalar function of (w, b)
template <typename Loss>
inline void numeric_gradient(Loss&& loss, std::vector<double> w, double b, double eps,
                             std::vector<double>& grad_w, double& grad_b) {
    grad_w.assign(w.size(), 0.0);
    for (std::size_t j = 0; j < w.size(); ++j) {
        const double keep = w[j];
        w[j] = keep + eps;
        const double hi = loss(w, b);
        w[j] = keep - eps;
        const double lo = loss(w, b);
        w[j] = keep;
        grad_w[j] = (hi - lo) / (2.0 * eps);
    }
    grad_b = (loss(w, b + eps) - loss(w, b - eps)) / (2.0 * eps);
}

}  // namespace oracle
