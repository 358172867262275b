#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace slackfuzz {

/// Dense row-major matrix of doubles.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), values(r * c, fill) {}

    std::span<const double> row(std::size_t i) const { return {values.data() + i * cols, cols}; }
    std::span<double> row(std::size_t i) { return {values.data() + i * cols, cols}; }
    double operator()(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
    double& operator()(std::size_t i, std::size_t j) { return values[i * cols + j]; }
};

/// Binary classification data. The minority class is encoded +1, the majority -1.
class Dataset {
public:
    Dataset() = default;
    /// Validates the invariants: N >= 2, d >= 1, labels in {+1,-1}, finite features.
    Dataset(Matrix features, std::vector<int> labels, std::string name = {});

    std::size_t size() const noexcept { return labels_.size(); }
    std::size_t dim() const noexcept { return features_.cols; }
    const Matrix& features() const noexcept { return features_; }
    const std::vector<int>& labels() const noexcept { return labels_; }
    std::span<const double> row(std::size_t i) const { return features_.row(i); }
    int label(std::size_t i) const { return labels_[i]; }
    const std::string& name() const noexcept { return name_; }

    /// Original class names that were mapped to +1 / -1, when parsed from text.
    std::string positive_class;
    std::string negative_class;

private:
    Matrix features_;
    std::vector<int> labels_;
    std::string name_;
};

struct ClassStats {
    std::size_t n_minority = 0;
    std::size_t n_majority = 0;
    double imbalance_ratio = 1.0;
};

struct FoldPlan {
    std::size_t k = 0;
    std::vector<std::size_t> assignments;
    std::uint64_t seed = 0;

    std::vector<std::size_t> train_indices(std::size_t fold) const;
    std::vector<std::size_t> test_indices(std::size_t fold) const;
};

/// Per-column affine transform x' = (x - mean) / scale.
struct Scaler {
    std::vector<double> mean;
    std::vector<double> scale;

    Dataset apply(const Dataset& ds) const;
    Matrix apply(const Matrix& m) const;
    void apply_row(std::span<double> row) const;
};

struct Standardized {
    Dataset train;
    std::vector<Dataset> others;
    Scaler scaler;
};

/// Receives non-fatal parser diagnostics (e.g. relabelled classes).
/// The default handler writes to stderr.
void set_warning_handler(std::function<void(std::string_view)> handler);

Dataset parse_keel(std::string_view text, std::string name = {});
Dataset parse_csv(std::string_view text, std::size_t label_column, const std::string& positive_label,
                  std::string name = {});

/// Reads a `.dat` (KEEL) or `.csv` file. For CSV the last column is the label
/// and the less frequent label becomes +1 unless `positive_label` is given.
Dataset load_dataset(const std::string& path, const std::string& positive_label = {});

/// Rows to score: `dim` numeric columns, optionally followed by a label column.
struct FeatureTable {
    Matrix features;
    /// Empty when the input has no label column.
    std::vector<std::string> labels;
};

/// Parses CSV rows of `dim` or `dim + 1` fields. A first row that is not
/// numeric is treated as a header.
FeatureTable parse_feature_csv(std::string_view text, std::size_t dim);

/// Serializes with full round-trip precision; header `x0,...,x{d-1},label`.
std::string to_csv(const Dataset& ds);

ClassStats class_stats(const Dataset& ds);

FoldPlan stratified_kfold(const Dataset& ds, std::size_t k, std::uint64_t seed);

std::pair<Dataset, Dataset> train_test_split(const Dataset& ds, double test_fraction, std::uint64_t seed);

Standardized standardize(const Dataset& train, const std::vector<Dataset>& others = {});

Dataset subset(const Dataset& ds, std::span<const std::size_t> indices);

struct MoonsSpec {
    std::size_t n_majority = 1000;
    std::size_t n_minority = 200;
    double noise = 0.2;
    std::uint64_t seed = 0;
};

/// Two interleaving half circles; the upper moon is the majority class.
Dataset make_moons(const MoonsSpec& spec);

/// Parses `moons:IR=5,n=1200,noise=0.2,seed=7` (keys optional, any order).
MoonsSpec parse_moons_spec(std::string_view text);

} // namespace slackfuzz
