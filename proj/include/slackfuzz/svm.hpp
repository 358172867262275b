#pragma once

#include "slackfuzz/dataset.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace slackfuzz {

struct KernelSpec {
    enum class Kind { linear, rbf };

    Kind kind = Kind::rbf;
    double gamma = 1.0;

    static KernelSpec linear() { return {Kind::linear, 0.0}; }
    static KernelSpec rbf(double gamma);

    double operator()(std::span<const double> a, std::span<const double> b) const;

    friend bool operator==(const KernelSpec&, const KernelSpec&) = default;
};

/// "linear" or "rbf:<gamma>".
std::string to_string(const KernelSpec& kernel);
KernelSpec parse_kernel(std::string_view text);

/// Per-sample upper bounds C_i on the dual variables. Values must be finite and >= 0.
class SampleCosts {
public:
    SampleCosts() = default;
    explicit SampleCosts(std::vector<double> values);

    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    const std::vector<double>& values() const noexcept { return values_; }

private:
    std::vector<double> values_;
};

struct SolverConfig {
    double kkt_tolerance = 1e-3;
    /// Iteration cap, in units of one pair update per active sample.
    std::size_t max_passes = 10000;
    /// Bytes available for cached kernel rows when no Gram matrix is supplied.
    std::size_t cache_budget = std::size_t{256} << 20;
};

/// Kernel values between every pair of rows of one dataset.
class GramMatrix {
public:
    GramMatrix(const Dataset& ds, const KernelSpec& kernel);

    std::size_t size() const noexcept { return n_; }
    const KernelSpec& kernel() const noexcept { return kernel_; }
    double operator()(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
    const double* row(std::size_t i) const { return values_.data() + i * n_; }

private:
    std::size_t n_ = 0;
    KernelSpec kernel_;
    std::vector<double> values_;
};

struct SvmModel {
    KernelSpec kernel;
    Matrix support_vectors;
    /// alpha_i * y_i for each support vector, aligned with `support_vectors`.
    std::vector<double> dual_coefficients;
    double bias = 0.0;

    /// Training-time diagnostics. `alpha` and `support_indices` refer to rows
    /// of the training set; samples excluded for zero cost have alpha 0.
    std::vector<double> alpha;
    std::vector<std::size_t> support_indices;
    double dual_objective = 0.0;
    std::size_t iterations = 0;
    bool converged = true;

    std::size_t dim() const noexcept { return support_vectors.cols; }

    /// Explicit primal weights; only meaningful for the linear kernel.
    std::vector<double> linear_weights() const;
};

/// Solves max sum(a) - 1/2 sum a_i a_j y_i y_j K_ij  s.t. sum a_i y_i = 0, 0 <= a_i <= C_i
/// by two-variable SMO with maximal-violating-pair selection. Samples with
/// C_i = 0 do not enter the dual. A non-converged fit is returned with
/// `converged == false` rather than thrown.
SvmModel fit_weighted_svm(const Dataset& ds, const SampleCosts& costs, const KernelSpec& kernel,
                          const SolverConfig& config = {}, const GramMatrix* gram = nullptr);

double decision_function(const SvmModel& model, std::span<const double> x);
std::vector<double> decision_values(const SvmModel& model, const Matrix& x);

/// Decision values from precomputed kernel values `cross(r, i) = K(x_r, train_i)`
/// where `train` is the set the model was fitted on.
std::vector<double> decision_values(const SvmModel& model, const Matrix& cross, std::size_t train_size);

/// Hinge loss max(0, 1 - y f(x)) per sample.
std::vector<double> compute_slack_factors(const SvmModel& model, const Dataset& ds);

/// Value of the dual objective sum(a) - 1/2 a^T Q a for an arbitrary alpha.
double dual_objective(const Dataset& ds, std::span<const double> alpha, const KernelSpec& kernel);

} // namespace slackfuzz
