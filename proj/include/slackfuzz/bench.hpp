#pragma once

#include "slackfuzz/isffsvm.hpp"
#include "slackfuzz/metrics.hpp"
#include "slackfuzz/stats.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace slackfuzz {

enum class ReportFormat { csv, json };

ReportFormat parse_report_format(std::string_view name);

struct BenchConfig {
    /// Files (.dat or .csv) or directories scanned for them.
    std::vector<std::string> datasets;
    /// Generator specs such as `moons:IR=5,n=1200,noise=0.2,seed=3`.
    std::vector<std::string> synthetic;
    std::vector<ModelKind> models = {ModelKind::dec, ModelKind::sffsvm, ModelKind::isffsvm};
    SearchGrid grid = SearchGrid::defaults();
    std::size_t folds = 5;
    /// Outer train/test repetitions with seeds seed..seed+repeats-1.
    std::size_t repeats = 3;
    /// CV repetitions inside each grid search.
    std::size_t cv_repeats = 1;
    std::uint64_t seed = 0;
    double test_fraction = 0.2;
    Metric objective = Metric::f1;
    SolverConfig solver;
    /// Datasets processed concurrently; 0 means hardware concurrency.
    std::size_t workers = 1;

    /// Throws InvalidArgument on an unusable configuration.
    void validate() const;
};

struct MetricSummary {
    double mean = 0.0;
    double std = 0.0;
};

struct BenchRow {
    std::string dataset;
    std::string model;
    std::optional<MetricSummary> f1;
    std::optional<MetricSummary> mcc;
    std::optional<MetricSummary> aucpr;
    /// Most frequent selection over the repeats; unset fields do not apply.
    std::optional<double> chosen_a;
    std::optional<double> chosen_zeta;
    std::optional<double> chosen_mu;
    std::string chosen_kernel;
    std::string error;
};

struct BenchReport {
    std::vector<BenchRow> rows;

    bool has_failures() const;
};

/// Directories expand to their .dat and .csv files in lexicographic order.
std::vector<std::string> expand_dataset_paths(const std::vector<std::string>& inputs);

BenchReport run_benchmark(const BenchConfig& cfg);

std::string format_report(const BenchReport& report, ReportFormat format);
void emit_report(const BenchReport& report, ReportFormat format, const std::string& path);

/// Reads back the JSON produced by format_report.
BenchReport parse_report_json(std::string_view text);

struct StatsReport {
    ScoreMatrix scores;
    RankTable ranks;
    FriedmanResult friedman;
    double alpha = 0.05;
    double cd = 0.0;
    std::vector<PairComparison> pairs;
    /// Supplied F critical value, if any, and whether F_F exceeds it.
    std::optional<double> f_critical;
    std::optional<bool> reject;
};

StatsReport run_stats(const ScoreMatrix& scores, double alpha = 0.05, std::optional<double> f_critical = {},
                      bool higher_is_better = true);
StatsReport run_stats(const std::string& results_csv, std::string_view metric = "f1", double alpha = 0.05,
                      std::optional<double> f_critical = {});

std::string format_stats(const StatsReport& report, ReportFormat format);

} // namespace slackfuzz
