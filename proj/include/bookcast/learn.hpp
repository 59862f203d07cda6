#pragma once

// Training and evaluation: training-fold standardization, an L2-regularized
// logistic trainer (full-batch gradient descent with backtracking step
// halving), a Pegasos-style linear SVM, classification metrics with a
// rank-based ROC AUC, stratified k-fold cross-validation, and the
// balanced-train / 1:9-test imbalanced protocol.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bookcast/io.hpp"
#include "bookcast/rng.hpp"

namespace bookcast::learn {

using Matrix = std::vector<std::vector<double>>;  // row-major samples

// ---------------------------------------------------------------------------
// Standardization
// ---------------------------------------------------------------------------

// Per-dimension mean and population standard deviation, fitted on training
// rows only. Zero-deviation dimensions transform to 0.
struct Scaler {
    std::vector<double> means;
    std::vector<double> stddevs;

    static Scaler fit(const Matrix& x) {
        if (x.empty()) throw std::invalid_argument("Scaler::fit: empty matrix");
        const std::size_t dim = x[0].size();
        Scaler s;
        s.means.assign(dim, 0.0);
        s.stddevs.assign(dim, 0.0);
        for (const auto& row : x) {
            if (row.size() != dim) throw std::invalid_argument("Scaler::fit: ragged matrix");
            for (std::size_t j = 0; j < dim; ++j) s.means[j] += row[j];
        }
        const double n = static_cast<double>(x.size());
        for (std::size_t j = 0; j < dim; ++j) s.means[j] /= n;
        for (const auto& row : x) {
            for (std::size_t j = 0; j < dim; ++j) {
                const double d = row[j] - s.means[j];
                s.stddevs[j] += d * d;
            }
        }
        for (std::size_t j = 0; j < dim; ++j) s.stddevs[j] = std::sqrt(s.stddevs[j] / n);
        return s;
    }

    std::vector<double> transform(std::span<const double> row) const {
        if (row.size() != means.size()) throw std::invalid_argument("Scaler: dimension mismatch");
        std::vector<double> out(row.size());
        for (std::size_t j = 0; j < row.size(); ++j) {
            out[j] = stddevs[j] > 0.0 ? (row[j] - means[j]) / stddevs[j] : 0.0;
        }
        return out;
    }

    Matrix transform(const Matrix& x) const {
        Matrix out;
        out.reserve(x.size());
        for (const auto& row : x) out.push_back(transform(row));
        return out;
    }

    bool operator==(const Scaler&) const = default;
};

// ---------------------------------------------------------------------------
// Models
// ---------------------------------------------------------------------------

enum class ModelKind { Logistic, LinearSvm };

inline const char* to_string(ModelKind k) {
    return k == ModelKind::Logistic ? "logistic" : "linear-svm";
}

inline std::optional<ModelKind> model_kind_from_string(const std::string& s) {
    if (s == "logistic" || s == "lr") return ModelKind::Logistic;
    if (s == "linear-svm" || s == "svm") return ModelKind::LinearSvm;
    return std::nullopt;
}

struct Hyperparameters {
    double l2_lambda = 1e-3;
    double step = 1.0;        // initial step, halved by backtracking
    int max_iters = 10000;    // logistic
    int epochs = 100;         // svm
    double tolerance = 1e-8;  // stop when loss improvement drops below this
};

struct TrainedModel {
    ModelKind kind = ModelKind::Logistic;
    std::vector<double> weights;
    double bias = 0.0;
    Hyperparameters hyper;
    std::uint64_t seed = 0;
    Scaler scaler;

    double threshold() const { return kind == ModelKind::Logistic ? 0.5 : 0.0; }
};

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// logistic -> probability, svm -> raw margin; the input row is raw feature
// space and is standardized internally.
inline double score(const TrainedModel& model, std::span<const double> x) {
    if (x.size() != model.weights.size()) {
        throw std::invalid_argument("score: expected " + std::to_string(model.weights.size()) +
                                    " features, got " + std::to_string(x.size()));
    }
    std::vector<double> z = model.scaler.transform(x);
    double lin = model.bias;
    for (std::size_t j = 0; j < z.size(); ++j) lin += model.weights[j] * z[j];
    return model.kind == ModelKind::Logistic ? sigmoid(lin) : lin;
}

namespace detail {

inline void check_labels(const Matrix& x, const std::vector<int>& y) {
    if (x.empty() || x.size() != y.size()) {
        throw std::invalid_argument("training data: size mismatch or empty");
    }
    bool has0 = false, has1 = false;
    for (int v : y) {
        if (v == 0) has0 = true;
        else if (v == 1) has1 = true;
        else throw std::invalid_argument("labels must be 0/1");
    }
    if (!has0 || !has1) throw std::invalid_argument("degenerate training set: a single label");
}

}  // namespace detail

// Mean negative log-likelihood plus (lambda/2)*||w||^2; the bias is not
// regularized. Numerically stable via log1p(exp(-|z|)).
inline double logistic_loss(const Matrix& x, const std::vector<int>& y,
                            std::span<const double> w, double b, double l2_lambda) {
    double nll = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double z = b;
        for (std::size_t j = 0; j < w.size(); ++j) z += w[j] * x[i][j];
        const double m = y[i] == 1 ? z : -z;  // margin in favor of the true label
        // -log sigmoid(m) = log(1 + exp(-m))
        nll += m >= 0 ? std::log1p(std::exp(-m)) : -m + std::log1p(std::exp(m));
    }
    nll /= static_cast<double>(x.size());
    double reg = 0.0;
    for (double wj : w) reg += wj * wj;
    return nll + 0.5 * l2_lambda * reg;
}

inline void logistic_gradient(const Matrix& x, const std::vector<int>& y,
                              std::span<const double> w, double b, double l2_lambda,
                              std::vector<double>& grad_w, double& grad_b) {
    const std::size_t dim = w.size();
    grad_w.assign(dim, 0.0);
    grad_b = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double z = b;
        for (std::size_t j = 0; j < dim; ++j) z += w[j] * x[i][j];
        const double err = sigmoid(z) - static_cast<double>(y[i]);
        for (std::size_t j = 0; j < dim; ++j) grad_w[j] += err * x[i][j];
        grad_b += err;
    }
    const double n = static_cast<double>(x.size());
    for (std::size_t j = 0; j < dim; ++j) grad_w[j] = grad_w[j] / n + l2_lambda * w[j];
    grad_b /= n;
}

// Full-batch gradient descent from zero initialization with backtracking
// step halving; only improving steps are accepted, so the loss sequence is
// nonincreasing. Rows of x must already be standardized. The step adapts:
// halved until a trial improves, doubled after each accepted iteration.
inline TrainedModel train_logistic(const Matrix& x, const std::vector<int>& y,
                                   const Hyperparameters& hyper, const Scaler& scaler,
                                   std::vector<double>* loss_trace = nullptr) {
    detail::check_labels(x, y);
    const std::size_t dim = x[0].size();
    TrainedModel model;
    model.kind = ModelKind::Logistic;
    model.hyper = hyper;
    model.scaler = scaler;
    model.weights.assign(dim, 0.0);
    model.bias = 0.0;

    std::vector<double> grad_w(dim), trial_w(dim);
    double loss = logistic_loss(x, y, model.weights, model.bias, hyper.l2_lambda);
    if (loss_trace) loss_trace->push_back(loss);
    double step = hyper.step;

    for (int iter = 0; iter < hyper.max_iters; ++iter) {
        double grad_b = 0.0;
        logistic_gradient(x, y, model.weights, model.bias, hyper.l2_lambda, grad_w, grad_b);

        double trial_loss = loss;
        double trial_b = model.bias;
        bool accepted = false;
        while (step > 1e-16) {
            for (std::size_t j = 0; j < dim; ++j) trial_w[j] = model.weights[j] - step * grad_w[j];
            trial_b = model.bias - step * grad_b;
            trial_loss = logistic_loss(x, y, trial_w, trial_b, hyper.l2_lambda);
            if (trial_loss <= loss) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;  // no descent direction at float precision
        model.weights = trial_w;
        model.bias = trial_b;
        const double improvement = loss - trial_loss;
        loss = trial_loss;
        if (loss_trace) loss_trace->push_back(loss);
        step = std::min(step * 2.0, 1e6);
        if (improvement < hyper.tolerance) break;
    }
    return model;
}

inline double svm_objective(const Matrix& x, const std::vector<int>& y,
                            std::span<const double> w, double b, double l2_lambda) {
    double hinge = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double z = b;
        for (std::size_t j = 0; j < w.size(); ++j) z += w[j] * x[i][j];
        const double yi = y[i] == 1 ? 1.0 : -1.0;
        hinge += std::max(0.0, 1.0 - yi * z);
    }
    hinge /= static_cast<double>(x.size());
    double reg = 0.0;
    for (double wj : w) reg += wj * wj;
    return 0.5 * l2_lambda * reg + hinge;
}

// Pegasos-style epoch SGD on the hinge loss with step 1/(lambda*t); labels
// map to {-1,+1} internally and the bias is updated unregularized. The
// per-epoch visit order comes from the seed, so results are reproducible.
inline TrainedModel train_linear_svm(const Matrix& x, const std::vector<int>& y,
                                     const Hyperparameters& hyper, const Scaler& scaler,
                                     std::uint64_t seed) {
    detail::check_labels(x, y);
    const std::size_t dim = x[0].size();
    TrainedModel model;
    model.kind = ModelKind::LinearSvm;
    model.hyper = hyper;
    model.seed = seed;
    model.scaler = scaler;
    model.weights.assign(dim, 0.0);
    model.bias = 0.0;

    Rng rng(seed);
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), 0);

    std::uint64_t t = 0;
    for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
        rng.shuffle(order);
        for (std::size_t i : order) {
            ++t;
            const double eta = 1.0 / (hyper.l2_lambda * static_cast<double>(t));
            double z = model.bias;
            for (std::size_t j = 0; j < dim; ++j) z += model.weights[j] * x[i][j];
            const double yi = y[i] == 1 ? 1.0 : -1.0;
            const double shrink = 1.0 - eta * hyper.l2_lambda;
            if (yi * z < 1.0) {
                for (std::size_t j = 0; j < dim; ++j) {
                    model.weights[j] = shrink * model.weights[j] + eta * yi * x[i][j];
                }
                model.bias += eta * yi;
            } else {
                for (std::size_t j = 0; j < dim; ++j) model.weights[j] *= shrink;
            }
        }
    }
    return model;
}

// ---------------------------------------------------------------------------
// Metrics
// ---------------------------------------------------------------------------

enum class Averaging { Macro, Weighted };

inline const char* to_string(Averaging a) { return a == Averaging::Macro ? "macro" : "weighted"; }

struct Confusion {
    std::int64_t tp = 0, fp = 0, fn = 0, tn = 0;

    std::int64_t total() const { return tp + fp + fn + tn; }

    Confusion& operator+=(const Confusion& o) {
        tp += o.tp;
        fp += o.fp;
        fn += o.fn;
        tn += o.tn;
        return *this;
    }
};

struct Metrics {
    double accuracy = 0.0;
    double precision_pos = 0.0, recall_pos = 0.0, f1_pos = 0.0;
    double precision_neg = 0.0, recall_neg = 0.0, f1_neg = 0.0;
    double precision_avg = 0.0, recall_avg = 0.0, f1_avg = 0.0;
    double roc_auc = 0.0;
    Confusion confusion;
    Averaging averaging = Averaging::Macro;
};

// Probability that a uniformly random positive outranks a uniformly random
// negative, ties counting 1/2; computed from average ranks. Agrees exactly
// with the O(n^2) pairwise count (both numerators are sums of halves).
inline double roc_auc(std::span<const double> scores, std::span<const int> labels) {
    std::vector<std::size_t> idx(scores.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    double pos_rank_sum = 0.0;
    std::int64_t n_pos = 0, n_neg = 0;
    std::size_t i = 0;
    while (i < idx.size()) {
        std::size_t j = i;
        while (j < idx.size() && scores[idx[j]] == scores[idx[i]]) ++j;
        const double avg_rank = 0.5 * static_cast<double>(i + 1 + j);  // mean of ranks i+1..j
        for (std::size_t k = i; k < j; ++k) {
            if (labels[idx[k]] == 1) {
                pos_rank_sum += avg_rank;
                ++n_pos;
            } else {
                ++n_neg;
            }
        }
        i = j;
    }
    if (n_pos == 0 || n_neg == 0) {
        throw std::invalid_argument("roc_auc: needs both labels present");
    }
    const double np = static_cast<double>(n_pos);
    return (pos_rank_sum - np * (np + 1.0) / 2.0) / (np * static_cast<double>(n_neg));
}

inline Metrics compute_metrics(std::span<const double> scores, std::span<const int> labels,
                               double threshold, Averaging averaging) {
    if (scores.size() != labels.size() || scores.empty()) {
        throw std::invalid_argument("compute_metrics: size mismatch or empty");
    }
    Metrics m;
    m.averaging = averaging;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        const bool pred = scores[i] >= threshold;
        const bool truth = labels[i] == 1;
        if (pred && truth) ++m.confusion.tp;
        else if (pred && !truth) ++m.confusion.fp;
        else if (!pred && truth) ++m.confusion.fn;
        else ++m.confusion.tn;
    }
    const auto& c = m.confusion;
    auto safe_div = [](double num, double den) { return den > 0.0 ? num / den : 0.0; };
    m.accuracy = safe_div(static_cast<double>(c.tp + c.tn), static_cast<double>(c.total()));
    m.precision_pos = safe_div(static_cast<double>(c.tp), static_cast<double>(c.tp + c.fp));
    m.recall_pos = safe_div(static_cast<double>(c.tp), static_cast<double>(c.tp + c.fn));
    m.f1_pos = safe_div(2.0 * m.precision_pos * m.recall_pos, m.precision_pos + m.recall_pos);
    m.precision_neg = safe_div(static_cast<double>(c.tn), static_cast<double>(c.tn + c.fn));
    m.recall_neg = safe_div(static_cast<double>(c.tn), static_cast<double>(c.tn + c.fp));
    m.f1_neg = safe_div(2.0 * m.precision_neg * m.recall_neg, m.precision_neg + m.recall_neg);

    const double support_pos = static_cast<double>(c.tp + c.fn);
    const double support_neg = static_cast<double>(c.fp + c.tn);
    if (averaging == Averaging::Macro) {
        m.precision_avg = 0.5 * (m.precision_pos + m.precision_neg);
        m.recall_avg = 0.5 * (m.recall_pos + m.recall_neg);
        m.f1_avg = 0.5 * (m.f1_pos + m.f1_neg);
    } else {
        const double total = support_pos + support_neg;
        m.precision_avg = (support_pos * m.precision_pos + support_neg * m.precision_neg) / total;
        m.recall_avg = (support_pos * m.recall_pos + support_neg * m.recall_neg) / total;
        m.f1_avg = (support_pos * m.f1_pos + support_neg * m.f1_neg) / total;
    }
    m.roc_auc = roc_auc(scores, labels);
    return m;
}

// ---------------------------------------------------------------------------
// Evaluation protocols
// ---------------------------------------------------------------------------

struct Dataset {
    Matrix x;                          // raw (unstandardized) features
    std::vector<int> y;                // 0/1
    std::vector<std::string> ids;      // optional, one per row
    std::vector<std::string> feature_names;
    std::string manifest_id;
    std::string mask_name = "all";
};

struct FoldResult {
    Metrics metrics;
};

struct EvalReport {
    std::string protocol;  // "balanced-cv" or "imbalanced"
    ModelKind kind = ModelKind::Logistic;
    Hyperparameters hyper;
    std::uint64_t seed = 0;
    std::string manifest_id;
    std::string mask_name;
    int folds = 0;
    std::vector<FoldResult> per_fold;
    Metrics averaged;       // unweighted mean over folds
    Confusion confusion_total;

    nlohmann::json to_json() const;
};

namespace detail {

inline nlohmann::json metrics_json(const Metrics& m) {
    return nlohmann::json{
        {"accuracy", m.accuracy},
        {"precision_pos", m.precision_pos},
        {"recall_pos", m.recall_pos},
        {"f1_pos", m.f1_pos},
        {"precision_neg", m.precision_neg},
        {"recall_neg", m.recall_neg},
        {"f1_neg", m.f1_neg},
        {"precision_avg", m.precision_avg},
        {"recall_avg", m.recall_avg},
        {"f1_avg", m.f1_avg},
        {"roc_auc", m.roc_auc},
        {"averaging", to_string(m.averaging)},
        {"confusion", {{"tp", m.confusion.tp}, {"fp", m.confusion.fp},
                       {"fn", m.confusion.fn}, {"tn", m.confusion.tn}}},
    };
}

inline Metrics mean_metrics(const std::vector<FoldResult>& folds, Averaging averaging) {
    Metrics avg;
    avg.averaging = averaging;
    if (folds.empty()) return avg;
    const double n = static_cast<double>(folds.size());
    for (const auto& f : folds) {
        const auto& m = f.metrics;
        avg.accuracy += m.accuracy / n;
        avg.precision_pos += m.precision_pos / n;
        avg.recall_pos += m.recall_pos / n;
        avg.f1_pos += m.f1_pos / n;
        avg.precision_neg += m.precision_neg / n;
        avg.recall_neg += m.recall_neg / n;
        avg.f1_neg += m.f1_neg / n;
        avg.precision_avg += m.precision_avg / n;
        avg.recall_avg += m.recall_avg / n;
        avg.f1_avg += m.f1_avg / n;
        avg.roc_auc += m.roc_auc / n;
        avg.confusion += m.confusion;
    }
    return avg;
}

// deterministic stratified fold assignment: shuffle within each label, then
// deal round-robin so per-label fold sizes differ by at most one
inline std::vector<int> stratified_folds(const std::vector<int>& y, int folds, std::uint64_t seed) {
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < y.size(); ++i) (y[i] == 1 ? pos : neg).push_back(i);
    if (pos.size() < static_cast<std::size_t>(folds) || neg.size() < static_cast<std::size_t>(folds)) {
        throw std::invalid_argument("cross_validate: a label has fewer samples than folds");
    }
    Rng rng(seed);
    Rng rng_pos = rng.child("folds-pos");
    Rng rng_neg = rng.child("folds-neg");
    rng_pos.shuffle(pos);
    rng_neg.shuffle(neg);
    std::vector<int> assignment(y.size(), -1);
    for (std::size_t i = 0; i < pos.size(); ++i) assignment[pos[i]] = static_cast<int>(i % folds);
    for (std::size_t i = 0; i < neg.size(); ++i) assignment[neg[i]] = static_cast<int>(i % folds);
    return assignment;
}

inline TrainedModel train_model(ModelKind kind, const Matrix& x_std, const std::vector<int>& y,
                                const Hyperparameters& hyper, const Scaler& scaler,
                                std::uint64_t seed) {
    if (kind == ModelKind::Logistic) {
        TrainedModel m = train_logistic(x_std, y, hyper, scaler);
        m.seed = seed;
        return m;
    }
    return train_linear_svm(x_std, y, hyper, scaler, seed);
}

}  // namespace detail

// Stratified k-fold cross-validation. The scaler is fitted on each training
// fold only; averaged metrics are the unweighted mean over folds.
inline EvalReport cross_validate(const Dataset& data, int folds, ModelKind kind,
                                 const Hyperparameters& hyper, std::uint64_t seed) {
    if (folds < 2) throw std::invalid_argument("cross_validate: folds must be >= 2");
    auto assignment = detail::stratified_folds(data.y, folds, seed);

    EvalReport report;
    report.protocol = "balanced-cv";
    report.kind = kind;
    report.hyper = hyper;
    report.seed = seed;
    report.manifest_id = data.manifest_id;
    report.mask_name = data.mask_name;
    report.folds = folds;

    for (int f = 0; f < folds; ++f) {
        Matrix x_train, x_test;
        std::vector<int> y_train, y_test;
        for (std::size_t i = 0; i < data.x.size(); ++i) {
            if (assignment[i] == f) {
                x_test.push_back(data.x[i]);
                y_test.push_back(data.y[i]);
            } else {
                x_train.push_back(data.x[i]);
                y_train.push_back(data.y[i]);
            }
        }
        Scaler scaler = Scaler::fit(x_train);
        Matrix x_train_std = scaler.transform(x_train);
        std::uint64_t fold_seed = seed ^ fnv1a64("fold-" + std::to_string(f));
        TrainedModel model = detail::train_model(kind, x_train_std, y_train, hyper, scaler, fold_seed);

        std::vector<double> scores;
        scores.reserve(x_test.size());
        for (const auto& row : x_test) scores.push_back(score(model, row));
        FoldResult fr;
        fr.metrics = compute_metrics(scores, y_test, model.threshold(), Averaging::Macro);
        report.per_fold.push_back(std::move(fr));
    }
    report.averaged = detail::mean_metrics(report.per_fold, Averaging::Macro);
    for (const auto& f : report.per_fold) report.confusion_total += f.metrics.confusion;
    return report;
}

// Balanced training set, 1:9 test set, train:test close to 3:1 overall.
// Positives split ~15:1 between train and test (p_test = round(P/16)), which
// is the unique split satisfying all three shape constraints at once.
inline EvalReport imbalanced_eval(const Dataset& data, ModelKind kind,
                                  const Hyperparameters& hyper, std::uint64_t seed) {
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < data.y.size(); ++i) (data.y[i] == 1 ? pos : neg).push_back(i);
    if (pos.empty() || neg.empty()) throw std::invalid_argument("imbalanced_eval: needs both labels");

    const std::size_t p_total = pos.size();
    const std::size_t p_test = std::max<std::size_t>(1, static_cast<std::size_t>(
        std::llround(static_cast<double>(p_total) / 16.0)));
    if (p_test >= p_total) throw DataError("imbalanced_eval: too few positives (" +
                                           std::to_string(p_total) + ") to split");
    const std::size_t p_train = p_total - p_test;
    const std::size_t n_test_neg = 9 * p_test;
    const std::size_t n_train_neg = p_train;  // balanced by downsampling
    if (neg.size() < n_test_neg + n_train_neg) {
        throw DataError("imbalanced_eval: needs " + std::to_string(n_test_neg + n_train_neg) +
                        " negatives (" + std::to_string(n_test_neg) + " test + " +
                        std::to_string(n_train_neg) + " train), pool has " +
                        std::to_string(neg.size()));
    }

    Rng rng(seed);
    Rng rng_pos = rng.child("imbalanced-pos");
    Rng rng_neg = rng.child("imbalanced-neg");
    rng_pos.shuffle(pos);
    rng_neg.shuffle(neg);

    Matrix x_train, x_test;
    std::vector<int> y_train, y_test;
    for (std::size_t i = 0; i < p_test; ++i) {
        x_test.push_back(data.x[pos[i]]);
        y_test.push_back(1);
    }
    for (std::size_t i = p_test; i < p_total; ++i) {
        x_train.push_back(data.x[pos[i]]);
        y_train.push_back(1);
    }
    for (std::size_t i = 0; i < n_test_neg; ++i) {
        x_test.push_back(data.x[neg[i]]);
        y_test.push_back(0);
    }
    for (std::size_t i = n_test_neg; i < n_test_neg + n_train_neg; ++i) {
        x_train.push_back(data.x[neg[i]]);
        y_train.push_back(0);
    }

    Scaler scaler = Scaler::fit(x_train);
    Matrix x_train_std = scaler.transform(x_train);
    TrainedModel model = detail::train_model(kind, x_train_std, y_train, hyper,
                                             scaler, seed ^ fnv1a64("imbalanced-train"));

    std::vector<double> scores;
    scores.reserve(x_test.size());
    for (const auto& row : x_test) scores.push_back(score(model, row));

    EvalReport report;
    report.protocol = "imbalanced";
    report.kind = kind;
    report.hyper = hyper;
    report.seed = seed;
    report.manifest_id = data.manifest_id;
    report.mask_name = data.mask_name;
    report.folds = 1;
    FoldResult fr;
    fr.metrics = compute_metrics(scores, y_test, model.threshold(), Averaging::Weighted);
    report.per_fold.push_back(fr);
    report.averaged = fr.metrics;
    report.confusion_total = fr.metrics.confusion;
    return report;
}

inline nlohmann::json EvalReport::to_json() const {
    nlohmann::json folds_json = nlohmann::json::array();
    for (std::size_t i = 0; i < per_fold.size(); ++i) {
        folds_json.push_back({{"fold", i}, {"metrics", detail::metrics_json(per_fold[i].metrics)}});
    }
    return nlohmann::json{
        {"protocol", protocol},
        {"model", to_string(kind)},
        {"hyperparameters", {{"l2_lambda", hyper.l2_lambda},
                             {"step", hyper.step},
                             {"max_iters", hyper.max_iters},
                             {"epochs", hyper.epochs},
                             {"tolerance", hyper.tolerance}}},
        {"seed", seed},
        {"manifest_id", manifest_id},
        {"feature_mask", mask_name},
        {"folds", folds},
        {"per_fold", folds_json},
        {"averaged", detail::metrics_json(averaged)},
        {"confusion_total", {{"tp", confusion_total.tp}, {"fp", confusion_total.fp},
                             {"fn", confusion_total.fn}, {"tn", confusion_total.tn}}},
    };
}

// ---------------------------------------------------------------------------
// Model serialization
// ---------------------------------------------------------------------------

struct ModelFile {
    TrainedModel model;
    std::string manifest_id;
    std::string mask_name;
    int window_days = 30;
    std::vector<std::string> feature_names;

    nlohmann::json to_json() const {
        return nlohmann::json{
            {"kind", to_string(model.kind)},
            {"weights", model.weights},
            {"bias", model.bias},
            {"hyperparameters", {{"l2_lambda", model.hyper.l2_lambda},
                                 {"step", model.hyper.step},
                                 {"max_iters", model.hyper.max_iters},
                                 {"epochs", model.hyper.epochs},
                                 {"tolerance", model.hyper.tolerance}}},
            {"seed", model.seed},
            {"scaler", {{"means", model.scaler.means}, {"stddevs", model.scaler.stddevs}}},
            {"manifest_id", manifest_id},
            {"feature_mask", mask_name},
            {"window_days", window_days},
            {"feature_names", feature_names},
        };
    }

    static ModelFile from_json(const nlohmann::json& j) {
        ModelFile f;
        auto kind = model_kind_from_string(j.at("kind").get<std::string>());
        if (!kind) throw DataError("model file: unknown kind");
        f.model.kind = *kind;
        f.model.weights = j.at("weights").get<std::vector<double>>();
        f.model.bias = j.at("bias").get<double>();
        const auto& h = j.at("hyperparameters");
        f.model.hyper.l2_lambda = h.at("l2_lambda").get<double>();
        f.model.hyper.step = h.at("step").get<double>();
        f.model.hyper.max_iters = h.at("max_iters").get<int>();
        f.model.hyper.epochs = h.at("epochs").get<int>();
        f.model.hyper.tolerance = h.at("tolerance").get<double>();
        f.model.seed = j.at("seed").get<std::uint64_t>();
        f.model.scaler.means = j.at("scaler").at("means").get<std::vector<double>>();
        f.model.scaler.stddevs = j.at("scaler").at("stddevs").get<std::vector<double>>();
        f.manifest_id = j.at("manifest_id").get<std::string>();
        f.mask_name = j.at("feature_mask").get<std::string>();
        f.window_days = j.at("window_days").get<int>();
        f.feature_names = j.at("feature_names").get<std::vector<std::string>>();
        return f;
    }
};

}  // namespace bookcast::learn
