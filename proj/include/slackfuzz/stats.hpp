#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace slackfuzz {

/// Scores of `model_names.size()` models (columns) on `dataset_names.size()`
/// datasets (rows), stored row-major.
struct ScoreMatrix {
    std::vector<std::string> model_names;
    std::vector<std::string> dataset_names;
    std::vector<double> scores;

    std::size_t models() const noexcept { return model_names.size(); }
    std::size_t datasets() const noexcept { return dataset_names.size(); }
    double operator()(std::size_t d, std::size_t m) const { return scores[d * models() + m]; }

    /// Throws InvalidArgument unless D >= 2, l >= 2, sizes agree and no entry is NaN.
    void validate() const;
};

struct RankTable {
    std::vector<std::string> model_names;
    std::size_t datasets = 0;
    /// D x l mid-ranks, row-major; rank 1 is the best model on that dataset.
    std::vector<double> ranks;
    std::vector<double> average_ranks;
};

RankTable rank_rows(const ScoreMatrix& sm, bool higher_is_better = true);

/// A rank table with only the average ranks filled in, for published tables.
RankTable rank_table_from_averages(std::vector<std::string> model_names, std::vector<double> average_ranks,
                                   std::size_t datasets);

struct FriedmanResult {
    double chi2 = 0.0;
    double f_stat = 0.0;
    std::size_t dof_chi2 = 0;
    std::size_t dof_f_num = 0;
    std::size_t dof_f_den = 0;
};

FriedmanResult friedman(const RankTable& rt);

/// q_alpha for l = 2..20 at alpha = 0.05.
double nemenyi_q(std::size_t models, double alpha = 0.05);
double nemenyi_cd(std::size_t models, std::size_t datasets, double alpha = 0.05);

struct PairComparison {
    std::string model_i;
    std::string model_j;
    double rank_diff = 0.0;
    bool significant = false;
};

/// Every unordered pair i < j with |R_i - R_j| and whether it exceeds `cd`.
std::vector<PairComparison> nemenyi_pairs(const RankTable& rt, double cd);

/// Reads either a wide matrix (first column dataset name, one column per
/// model) or a benchmark report with dataset, model and `<metric>_mean`
/// columns. Report rows with a non-empty error are dropped, and so are
/// datasets that lack a score for any model.
ScoreMatrix parse_score_matrix(std::string_view csv_text, std::string_view metric = "f1");
ScoreMatrix read_score_matrix(const std::string& path, std::string_view metric = "f1");

} // namespace slackfuzz
