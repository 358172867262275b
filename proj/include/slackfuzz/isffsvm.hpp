#pragma once

#include "slackfuzz/dataset.hpp"
#include "slackfuzz/membership.hpp"
#include "slackfuzz/metrics.hpp"
#include "slackfuzz/svm.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace slackfuzz {

struct HyperParams {
    double zeta = 1.0;
    double mu = 1.0;
    double a = 2.0;
    KernelSpec kernel;

    friend bool operator==(const HyperParams&, const HyperParams&) = default;
};

/// Two-stage model: a DEC fit supplies slack factors, the slack factors give
/// fuzzy memberships, and a second weighted fit uses costs zeta*IR*psi (minority)
/// and zeta*psi (majority).
struct IsffsvmModel {
    SvmModel final_model;
    SvmModel dec_model;
    MembershipVector memberships;
    HyperParams hyperparams;

    /// Stage-two costs and the rows they excluded (psi == 0).
    SampleCosts stage2_costs;
    std::vector<std::size_t> excluded;
    double imbalance_ratio = 1.0;
};

IsffsvmModel fit_isffsvm(const Dataset& ds, const HyperParams& hp, const SolverConfig& config = {},
                         const GramMatrix* gram = nullptr);

/// The a = 2 special case.
IsffsvmModel fit_sffsvm(const Dataset& ds, double zeta, double mu, const KernelSpec& kernel,
                        const SolverConfig& config = {}, const GramMatrix* gram = nullptr);

double decision_function(const IsffsvmModel& model, std::span<const double> x);

/// Sign of the final decision value; a score of exactly 0 predicts +1.
int predict(const IsffsvmModel& model, std::span<const double> x);
int predict_label(double score) noexcept;

enum class ModelKind { dec, sffsvm, isffsvm };

ModelKind parse_model_kind(std::string_view name);
std::string_view model_kind_name(ModelKind kind) noexcept;

/// 1.1, 1.2, ..., 2.0 computed as k/10 so every value is the nearest double to its decimal.
std::vector<double> default_location_grid();

struct SearchGrid {
    std::vector<double> zeta;
    std::vector<double> mu;
    std::vector<double> a;
    std::vector<KernelSpec> kernels;

    /// zeta {0.1,1,10,100}, mu {0.1,0.5,1,2,5}, a 1.1..2.0, kernels linear + rbf {0.01,0.1,1}.
    static SearchGrid defaults();
};

struct CvOptions {
    std::size_t folds = 5;
    std::size_t repeats = 10;
    std::uint64_t seed = 0;
    Metric objective = Metric::f1;
    SolverConfig solver;
    /// Worker threads; 0 means hardware concurrency.
    std::size_t workers = 1;
};

struct CvEntry {
    HyperParams params;
    double score = 0.0;
    std::string error;
};

struct GridSearchResult {
    HyperParams best;
    double best_score = 0.0;
    std::vector<CvEntry> table;
};

/// Mean objective over `folds`-fold stratified CV repeated with seeds
/// seed..seed+repeats-1. Points whose fits fail score -inf. Ties prefer smaller
/// a, then smaller zeta, then smaller mu, then the earlier kernel.
/// DEC ignores the mu and a grids; SFFSVM ignores the a grid (a = 2).
GridSearchResult grid_search(const Dataset& ds, ModelKind kind, const SearchGrid& grid, const CvOptions& options);

} // namespace slackfuzz
