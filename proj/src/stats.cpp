#include "slackfuzz/stats.hpp"

#include "io.hpp"
#include "slackfuzz/error.hpp"
#include "text.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>

namespace slackfuzz {

void ScoreMatrix::validate() const {
    if (models() < 2 || datasets() < 2) {
        throw Error(Errc::InvalidArgument, "score matrix needs at least two models and two datasets");
    }
    if (scores.size() != models() * datasets()) {
        throw Error(Errc::DimensionMismatch, "score matrix size does not match its names");
    }
    if (std::any_of(scores.begin(), scores.end(), [](double v) { return std::isnan(v); })) {
        throw Error(Errc::InvalidArgument, "score matrix contains NaN");
    }
}

RankTable rank_rows(const ScoreMatrix& sm, bool higher_is_better) {
    sm.validate();
    const std::size_t l = sm.models();
    const std::size_t d_count = sm.datasets();
    RankTable rt;
    rt.model_names = sm.model_names;
    rt.datasets = d_count;
    rt.ranks.assign(l * d_count, 0.0);
    rt.average_ranks.assign(l, 0.0);

    std::vector<std::size_t> order(l);
    for (std::size_t d = 0; d < d_count; ++d) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return higher_is_better ? sm(d, a) > sm(d, b) : sm(d, a) < sm(d, b);
        });
        std::size_t k = 0;
        while (k < l) {
            std::size_t end = k + 1;
            while (end < l && sm(d, order[end]) == sm(d, order[k])) {
                ++end;
            }
            // Positions k+1 .. end share their mean.
            const double mid = (static_cast<double>(k + 1) + static_cast<double>(end)) / 2.0;
            for (std::size_t t = k; t < end; ++t) {
                rt.ranks[d * l + order[t]] = mid;
            }
            k = end;
        }
    }
    for (std::size_t m = 0; m < l; ++m) {
        double sum = 0.0;
        for (std::size_t d = 0; d < d_count; ++d) {
            sum += rt.ranks[d * l + m];
        }
        rt.average_ranks[m] = sum / static_cast<double>(d_count);
    }
    return rt;
}

RankTable rank_table_from_averages(std::vector<std::string> model_names, std::vector<double> average_ranks,
                                   std::size_t datasets) {
    if (model_names.size() != average_ranks.size()) {
        throw Error(Errc::LengthMismatch, "model names and average ranks differ in length");
    }
    RankTable rt;
    rt.model_names = std::move(model_names);
    rt.average_ranks = std::move(average_ranks);
    rt.datasets = datasets;
    return rt;
}

FriedmanResult friedman(const RankTable& rt) {
    const std::size_t l = rt.average_ranks.size();
    const std::size_t d_count = rt.datasets;
    if (l < 2 || d_count < 2) {
        throw Error(Errc::InvalidArgument, "Friedman test needs at least two models and two datasets");
    }
    const auto L = static_cast<double>(l);
    const auto D = static_cast<double>(d_count);
    double sum_sq = 0.0;
    for (const double r : rt.average_ranks) {
        sum_sq += r * r;
    }
    FriedmanResult res;
    res.chi2 = 12.0 * D / (L * (L + 1.0)) * (sum_sq - L * (L + 1.0) * (L + 1.0) / 4.0);
    const double denom = D * (L - 1.0) - res.chi2;
    if (denom == 0.0) {
        throw Error(Errc::DegenerateStatistic, "F statistic undefined: chi-squared equals D(l-1)");
    }
    res.f_stat = (D - 1.0) * res.chi2 / denom;
    res.dof_chi2 = l - 1;
    res.dof_f_num = l - 1;
    res.dof_f_den = (l - 1) * (d_count - 1);
    return res;
}

double nemenyi_q(std::size_t models, double alpha) {
    // Studentized range quantile at infinite dof divided by sqrt(2).
    static constexpr std::array<double, 19> q05 = {1.960, 2.343, 2.569, 2.728, 2.850, 2.949, 3.031,
                                                   3.102, 3.164, 3.219, 3.268, 3.313, 3.354, 3.391,
                                                   3.426, 3.458, 3.489, 3.517, 3.544};
    if (alpha != 0.05) {
        throw Error(Errc::InvalidArgument, "only alpha = 0.05 is tabulated");
    }
    if (models < 2 || models > 20) {
        throw Error(Errc::UnsupportedModelCount, "q table covers 2..20 models, got " + std::to_string(models));
    }
    return q05[models - 2];
}

double nemenyi_cd(std::size_t models, std::size_t datasets, double alpha) {
    const double q = nemenyi_q(models, alpha);
    if (datasets < 2) {
        throw Error(Errc::InvalidArgument, "critical difference needs at least two datasets");
    }
    const auto L = static_cast<double>(models);
    return q * std::sqrt(L * (L + 1.0) / (6.0 * static_cast<double>(datasets)));
}

std::vector<PairComparison> nemenyi_pairs(const RankTable& rt, double cd) {
    if (!(cd > 0.0)) {
        throw Error(Errc::InvalidArgument, "critical difference must be positive");
    }
    std::vector<PairComparison> pairs;
    const std::size_t l = rt.average_ranks.size();
    for (std::size_t i = 0; i < l; ++i) {
        for (std::size_t j = i + 1; j < l; ++j) {
            const double diff = std::abs(rt.average_ranks[i] - rt.average_ranks[j]);
            pairs.push_back({rt.model_names[i], rt.model_names[j], diff, diff > cd});
        }
    }
    return pairs;
}

namespace {

double parse_cell(const std::string& cell, std::size_t line) {
    const auto v = detail::parse_double(detail::trim(cell));
    if (!v) {
        throw Error(Errc::NonNumericFeature,
                    "line " + std::to_string(line) + ": '" + cell + "' is not a number");
    }
    return *v;
}

std::optional<std::size_t> find_column(const std::vector<std::string>& header, std::string_view name) {
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (detail::lower(detail::trim(header[c])) == name) {
            return c;
        }
    }
    return std::nullopt;
}

template <typename T>
std::size_t intern(std::vector<T>& names, const T& name) {
    const auto it = std::find(names.begin(), names.end(), name);
    if (it != names.end()) {
        return static_cast<std::size_t>(it - names.begin());
    }
    names.push_back(name);
    return names.size() - 1;
}

ScoreMatrix pivot_report(const std::vector<std::vector<std::string>>& records, std::size_t dataset_col,
                         std::size_t model_col, std::size_t value_col, std::optional<std::size_t> error_col) {
    std::vector<std::string> datasets;
    std::vector<std::string> models;
    std::map<std::pair<std::size_t, std::size_t>, double> cells;
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& row = records[r];
        const std::size_t need = std::max({dataset_col, model_col, value_col}) + 1;
        if (row.size() < need) {
            throw Error(Errc::RaggedRows, "line " + std::to_string(r + 1) + " has too few fields");
        }
        if (error_col && *error_col < row.size() && !detail::trim(row[*error_col]).empty()) {
            continue;
        }
        if (detail::trim(row[value_col]).empty()) {
            continue;
        }
        const std::size_t d = intern(datasets, std::string(detail::trim(row[dataset_col])));
        const std::size_t m = intern(models, std::string(detail::trim(row[model_col])));
        cells[{d, m}] = parse_cell(row[value_col], r + 1);
    }
    ScoreMatrix sm;
    sm.model_names = models;
    for (std::size_t d = 0; d < datasets.size(); ++d) {
        bool complete = true;
        for (std::size_t m = 0; m < models.size(); ++m) {
            complete = complete && cells.count({d, m}) > 0;
        }
        if (!complete) {
            continue;
        }
        sm.dataset_names.push_back(datasets[d]);
        for (std::size_t m = 0; m < models.size(); ++m) {
            sm.scores.push_back(cells.at({d, m}));
        }
    }
    return sm;
}

} // namespace

ScoreMatrix parse_score_matrix(std::string_view csv_text, std::string_view metric) {
    const auto records = detail::parse_csv_records(csv_text);
    if (records.size() < 2) {
        throw Error(Errc::EmptyData, "score table has no data rows");
    }
    const auto& header = records.front();
    const auto dataset_col = find_column(header, "dataset");
    const auto model_col = find_column(header, "model");
    const std::string value_name = detail::lower(metric) + "_mean";
    const auto value_col = find_column(header, value_name);

    ScoreMatrix sm;
    if (dataset_col && model_col) {
        if (!value_col) {
            throw Error(Errc::MalformedHeader, "report has no '" + value_name + "' column");
        }
        sm = pivot_report(records, *dataset_col, *model_col, *value_col, find_column(header, "error"));
    } else {
        if (header.size() < 2) {
            throw Error(Errc::MalformedHeader, "score matrix needs a name column and model columns");
        }
        for (std::size_t c = 1; c < header.size(); ++c) {
            sm.model_names.emplace_back(detail::trim(header[c]));
        }
        for (std::size_t r = 1; r < records.size(); ++r) {
            const auto& row = records[r];
            if (row.size() != header.size()) {
                throw Error(Errc::RaggedRows, "line " + std::to_string(r + 1) + " has " +
                                                  std::to_string(row.size()) + " fields, expected " +
                                                  std::to_string(header.size()));
            }
            sm.dataset_names.emplace_back(detail::trim(row[0]));
            for (std::size_t c = 1; c < row.size(); ++c) {
                sm.scores.push_back(parse_cell(row[c], r + 1));
            }
        }
    }
    sm.validate();
    return sm;
}

ScoreMatrix read_score_matrix(const std::string& path, std::string_view metric) {
    return parse_score_matrix(detail::read_file(path), metric);
}

} // namespace slackfuzz
