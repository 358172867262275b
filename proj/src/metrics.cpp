#include "slackfuzz/metrics.hpp"

#include "slackfuzz/error.hpp"
#include "text.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace slackfuzz {

ConfusionMatrix confusion_matrix(std::span<const int> truth, std::span<const int> predicted) {
    if (truth.size() != predicted.size()) {
        throw Error(Errc::LengthMismatch, "truth and predictions differ in length");
    }
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const bool actual = truth[i] > 0;
        const bool guess = predicted[i] > 0;
        if (actual) {
            ++(guess ? cm.tp : cm.fn);
        } else {
            ++(guess ? cm.fp : cm.tn);
        }
    }
    return cm;
}

PrecisionRecall precision_recall(const ConfusionMatrix& cm) {
    PrecisionRecall pr;
    const auto tp = static_cast<double>(cm.tp);
    if (cm.tp + cm.fp > 0) {
        pr.precision = tp / static_cast<double>(cm.tp + cm.fp);
    }
    if (cm.tp + cm.fn > 0) {
        pr.recall = tp / static_cast<double>(cm.tp + cm.fn);
    }
    return pr;
}

double f1_score(const ConfusionMatrix& cm) {
    const auto [p, r] = precision_recall(cm);
    if (p + r == 0.0) {
        return 0.0;
    }
    return 2.0 * p * r / (p + r);
}

double mcc(const ConfusionMatrix& cm) {
    const auto tp = static_cast<double>(cm.tp);
    const auto fp = static_cast<double>(cm.fp);
    const auto fn = static_cast<double>(cm.fn);
    const auto tn = static_cast<double>(cm.tn);
    const double denom = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
    if (denom == 0.0) {
        return 0.0;
    }
    return (tp * tn - fp * fn) / std::sqrt(denom);
}

PRCurve pr_curve(std::span<const int> truth, std::span<const double> scores) {
    if (truth.size() != scores.size()) {
        throw Error(Errc::LengthMismatch, "truth and scores differ in length");
    }
    const auto positives = static_cast<std::size_t>(std::count_if(truth.begin(), truth.end(), [](int y) { return y > 0; }));
    if (positives == 0) {
        throw Error(Errc::NoPositives, "precision-recall needs at least one positive label");
    }
    std::vector<std::size_t> order(truth.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    PRCurve curve;
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t k = 0;
    while (k < order.size()) {
        const double threshold = scores[order[k]];
        while (k < order.size() && scores[order[k]] == threshold) {
            ++(truth[order[k]] > 0 ? tp : fp);
            ++k;
        }
        const double recall = static_cast<double>(tp) / static_cast<double>(positives);
        const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
        curve.points.emplace_back(recall, precision);
    }
    return curve;
}

double auc_pr(std::span<const int> truth, std::span<const double> scores) {
    const auto curve = pr_curve(truth, scores);
    double ap = 0.0;
    double prev_recall = 0.0;
    for (const auto& [recall, precision] : curve.points) {
        ap += (recall - prev_recall) * precision;
        prev_recall = recall;
    }
    return ap;
}

Metric parse_metric(std::string_view name) {
    const std::string s = detail::lower(detail::trim(name));
    if (s == "f1" || s == "f1_score" || s == "f1-score") {
        return Metric::f1;
    }
    if (s == "mcc") {
        return Metric::mcc;
    }
    if (s == "aucpr" || s == "auc_pr" || s == "auc-pr") {
        return Metric::aucpr;
    }
    throw Error(Errc::InvalidArgument, "unknown metric '" + s + "'");
}

std::string_view metric_name(Metric m) noexcept {
    switch (m) {
    case Metric::f1: return "f1";
    case Metric::mcc: return "mcc";
    case Metric::aucpr: return "aucpr";
    }
    return "f1";
}

std::vector<int> labels_from_scores(std::span<const double> scores) {
    std::vector<int> labels(scores.size());
    std::transform(scores.begin(), scores.end(), labels.begin(), [](double s) { return s >= 0.0 ? 1 : -1; });
    return labels;
}

double evaluate(Metric m, std::span<const int> truth, std::span<const double> scores) {
    switch (m) {
    case Metric::f1: return f1_score(confusion_matrix(truth, labels_from_scores(scores)));
    case Metric::mcc: return mcc(confusion_matrix(truth, labels_from_scores(scores)));
    case Metric::aucpr: return auc_pr(truth, scores);
    }
    return 0.0;
}

} // namespace slackfuzz
