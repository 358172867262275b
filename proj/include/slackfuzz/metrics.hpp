#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace slackfuzz {

/// Binary confusion counts with +1 (minority) as the positive class.
struct ConfusionMatrix {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    std::size_t tn = 0;

    std::size_t total() const noexcept { return tp + fp + fn + tn; }
    friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

struct PrecisionRecall {
    double precision = 0.0;
    double recall = 0.0;
};

/// Precision-recall pairs, one per distinct score threshold, recall non-decreasing.
struct PRCurve {
    std::vector<std::pair<double, double>> points; // (recall, precision)
};

ConfusionMatrix confusion_matrix(std::span<const int> truth, std::span<const int> predicted);

// Degenerate ratios (0/0) evaluate to 0.
PrecisionRecall precision_recall(const ConfusionMatrix& cm);
double f1_score(const ConfusionMatrix& cm);
double mcc(const ConfusionMatrix& cm);

PRCurve pr_curve(std::span<const int> truth, std::span<const double> scores);

/// Average precision: sum over descending distinct thresholds of
/// (R_k - R_{k-1}) * P_k. Equal scores form one threshold block.
double auc_pr(std::span<const int> truth, std::span<const double> scores);

enum class Metric { f1, mcc, aucpr };

Metric parse_metric(std::string_view name);
std::string_view metric_name(Metric m) noexcept;

/// Sign labels with ties going to +1.
std::vector<int> labels_from_scores(std::span<const double> scores);

/// Evaluates `m` for predictions derived from `scores`.
double evaluate(Metric m, std::span<const int> truth, std::span<const double> scores);

} // namespace slackfuzz
