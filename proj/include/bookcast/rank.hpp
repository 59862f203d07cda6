#pragma once

// Discriminative-power ranking: equal-frequency discretization into
// bins-by-label contingency tables, raw chi-square and information gain
// (nats), and descending chi-square feature ranking.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bookcast/stats.hpp"

namespace bookcast::rank {

struct ContingencyTable {
    std::vector<std::array<std::int64_t, 2>> counts;  // [bin][label]
    std::vector<double> edges;  // upper-inclusive boundaries between bins
    bool degenerate = false;    // single bin (constant feature)

    std::size_t bins() const { return counts.size(); }

    std::int64_t total() const {
        std::int64_t t = 0;
        for (const auto& row : counts) t += row[0] + row[1];
        return t;
    }
};

// Equal-frequency bins on distinct quantiles; adjacent identical edges merge
// so heavy ties collapse into one bin. Binary 0/1 features pass through as
// two bins split at 0.5. A constant feature yields a single degenerate bin.
inline ContingencyTable bin_feature(std::span<const double> values, std::span<const int> labels,
                                    int n_bins = 10) {
    if (values.size() != labels.size() || values.empty()) {
        throw std::invalid_argument("bin_feature: size mismatch or empty");
    }
    if (n_bins < 2) throw std::invalid_argument("bin_feature: n_bins must be >= 2");

    ContingencyTable table;

    bool binary = true;
    for (double v : values) {
        if (v != 0.0 && v != 1.0) {
            binary = false;
            break;
        }
    }
    std::set<double> distinct(values.begin(), values.end());
    if (distinct.size() <= 1) {
        table.degenerate = true;
        table.counts.assign(1, {0, 0});
        for (std::size_t i = 0; i < values.size(); ++i) ++table.counts[0][labels[i] == 1 ? 1 : 0];
        return table;
    }

    if (binary) {
        table.edges = {0.5};
    } else {
        std::vector<double> sorted(values.begin(), values.end());
        std::sort(sorted.begin(), sorted.end());
        const std::size_t n = sorted.size();
        std::vector<double> edges;
        for (int i = 1; i < n_bins; ++i) {
            // upper-inclusive boundary of bin i: ceil(i*n/n_bins)-th order stat
            std::size_t idx = (static_cast<std::size_t>(i) * n + n_bins - 1) / n_bins;
            edges.push_back(sorted[idx - 1]);
        }
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        // an edge at the maximum would leave the last bin empty
        while (!edges.empty() && edges.back() >= sorted.back()) edges.pop_back();
        if (edges.empty()) {
            // all mass on one side; fall back to a two-bin split at the min
            edges.push_back(sorted.front());
        }
        table.edges = std::move(edges);
    }

    table.counts.assign(table.edges.size() + 1, {0, 0});
    for (std::size_t i = 0; i < values.size(); ++i) {
        // edges are upper-inclusive: bin = number of edges strictly below v
        std::size_t bin = std::lower_bound(table.edges.begin(), table.edges.end(), values[i]) -
                          table.edges.begin();
        ++table.counts[bin][labels[i] == 1 ? 1 : 0];
    }
    return table;
}

// Pearson chi-square against the independence expectation from the
// marginals; used as a raw ranking score (no dof correction, no p-value).
// Cells with zero expectation contribute nothing; degenerate tables are 0.
inline double chi_square(const ContingencyTable& table) {
    if (table.degenerate || table.bins() < 2) return 0.0;
    const double n = static_cast<double>(table.total());
    if (n <= 0.0) return 0.0;
    std::array<double, 2> col_totals{0.0, 0.0};
    std::vector<double> row_totals(table.bins(), 0.0);
    for (std::size_t b = 0; b < table.bins(); ++b) {
        for (int l = 0; l < 2; ++l) {
            row_totals[b] += static_cast<double>(table.counts[b][l]);
            col_totals[l] += static_cast<double>(table.counts[b][l]);
        }
    }
    double stat = 0.0;
    for (std::size_t b = 0; b < table.bins(); ++b) {
        for (int l = 0; l < 2; ++l) {
            const double expected = row_totals[b] * col_totals[l] / n;
            if (expected > 0.0) {
                const double d = static_cast<double>(table.counts[b][l]) - expected;
                stat += d * d / expected;
            }
        }
    }
    return stat;
}

// H(label) - sum_bins p(bin) H(label | bin), natural log, 0*ln(0) := 0.
inline double info_gain(const ContingencyTable& table) {
    if (table.degenerate || table.bins() < 2) return 0.0;
    const double n = static_cast<double>(table.total());
    if (n <= 0.0) return 0.0;
    std::array<double, 2> col_totals{0.0, 0.0};
    for (const auto& row : table.counts) {
        col_totals[0] += static_cast<double>(row[0]);
        col_totals[1] += static_cast<double>(row[1]);
    }
    const double h_label = entropy_nats(col_totals);
    double h_cond = 0.0;
    for (const auto& row : table.counts) {
        const double row_n = static_cast<double>(row[0] + row[1]);
        if (row_n <= 0.0) continue;
        std::array<double, 2> w{static_cast<double>(row[0]), static_cast<double>(row[1])};
        h_cond += (row_n / n) * entropy_nats(w);
    }
    return h_label - h_cond;
}

struct RankedFeature {
    std::string name;
    double chi_square = 0.0;
    double info_gain = 0.0;
    int rank = 0;
    bool degenerate = false;
};

struct FeatureRanking {
    std::vector<RankedFeature> entries;  // descending chi-square, ranks 1..n
};

// Columns of `matrix` align with `names`. Sorting is descending chi-square,
// ties by descending info gain then ascending name.
inline FeatureRanking rank_features(const std::vector<std::vector<double>>& matrix,
                                    std::span<const int> labels,
                                    const std::vector<std::string>& names, int n_bins = 10) {
    if (matrix.empty() || matrix[0].size() != names.size()) {
        throw std::invalid_argument("rank_features: matrix/manifest mismatch");
    }
    FeatureRanking ranking;
    std::vector<double> column(matrix.size());
    for (std::size_t j = 0; j < names.size(); ++j) {
        for (std::size_t i = 0; i < matrix.size(); ++i) column[i] = matrix[i][j];
        auto table = bin_feature(column, labels, n_bins);
        RankedFeature rf;
        rf.name = names[j];
        rf.chi_square = chi_square(table);
        rf.info_gain = info_gain(table);
        rf.degenerate = table.degenerate;
        ranking.entries.push_back(std::move(rf));
    }
    std::sort(ranking.entries.begin(), ranking.entries.end(),
              [](const RankedFeature& a, const RankedFeature& b) {
                  if (a.chi_square != b.chi_square) return a.chi_square > b.chi_square;
                  if (a.info_gain != b.info_gain) return a.info_gain > b.info_gain;
                  return a.name < b.name;
              });
    for (std::size_t i = 0; i < ranking.entries.size(); ++i) {
        ranking.entries[i].rank = static_cast<int>(i + 1);
    }
    return ranking;
}

}  // namespace bookcast::rank
