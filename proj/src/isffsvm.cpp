#include "slackfuzz/isffsvm.hpp"

#include "parallel.hpp"
#include "slackfuzz/dec.hpp"
#include "slackfuzz/error.hpp"
#include "text.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <tuple>

namespace slackfuzz {

IsffsvmModel fit_isffsvm(const Dataset& ds, const HyperParams& hp, const SolverConfig& config, const GramMatrix* gram) {
    const MembershipParams mp(hp.mu, hp.a);
    const ClassStats stats = class_stats(ds);
    if (stats.n_minority < 2 || stats.n_majority < 2) {
        throw Error(Errc::TooFewSamplesPerClass, "each class needs at least two samples");
    }

    IsffsvmModel model;
    model.hyperparams = hp;
    model.imbalance_ratio = stats.imbalance_ratio;

    // Stage one: DEC hyperplane and the slack factors it induces.
    model.dec_model = fit_dec(ds, DecParams{hp.zeta, hp.kernel}, config, gram);
    const std::vector<double> slacks = compute_slack_factors(model.dec_model, ds);
    const SampleSets sets = partition_sets(slacks, ds.labels());

    model.memberships.assign(ds.size(), 0.0);
    for (const std::size_t i : sets.t_plus) {
        model.memberships[i] = minority_membership(slacks[i], mp.mu());
    }
    for (const std::size_t i : sets.f_plus) {
        model.memberships[i] = 0.0;
    }
    for (const auto* majority : {&sets.t_minus, &sets.f_minus}) {
        for (const std::size_t i : *majority) {
            model.memberships[i] = majority_membership(slacks[i], mp);
        }
    }

    const bool any_minority = std::any_of(sets.t_plus.begin(), sets.t_plus.end(),
                                          [&](std::size_t i) { return model.memberships[i] > 0.0; });
    if (!any_minority) {
        throw Error(Errc::AllMinorityExcluded, "the DEC stage misclassifies every minority sample");
    }

    // Stage two: the same DEC costs, scaled per sample by the memberships.
    const double minority_scale = hp.zeta * stats.imbalance_ratio;
    std::vector<double> costs(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        costs[i] = (ds.label(i) > 0 ? minority_scale : hp.zeta) * model.memberships[i];
        if (model.memberships[i] == 0.0) {
            model.excluded.push_back(i);
        }
    }
    model.stage2_costs = SampleCosts(std::move(costs));
    model.final_model = fit_weighted_svm(ds, model.stage2_costs, hp.kernel, config, gram);
    return model;
}

IsffsvmModel fit_sffsvm(const Dataset& ds, double zeta, double mu, const KernelSpec& kernel,
                        const SolverConfig& config, const GramMatrix* gram) {
    return fit_isffsvm(ds, HyperParams{zeta, mu, MembershipParams::max_location, kernel}, config, gram);
}

double decision_function(const IsffsvmModel& model, std::span<const double> x) {
    return decision_function(model.final_model, x);
}

int predict_label(double score) noexcept {
    return score >= 0.0 ? 1 : -1;
}

int predict(const IsffsvmModel& model, std::span<const double> x) {
    return predict_label(decision_function(model.final_model, x));
}

ModelKind parse_model_kind(std::string_view name) {
    const std::string s = detail::lower(detail::trim(name));
    if (s == "dec") {
        return ModelKind::dec;
    }
    if (s == "sffsvm") {
        return ModelKind::sffsvm;
    }
    if (s == "isffsvm") {
        return ModelKind::isffsvm;
    }
    throw Error(Errc::InvalidArgument, "unknown model '" + s + "' (expected dec, sffsvm or isffsvm)");
}

std::string_view model_kind_name(ModelKind kind) noexcept {
    switch (kind) {
    case ModelKind::dec: return "dec";
    case ModelKind::sffsvm: return "sffsvm";
    case ModelKind::isffsvm: return "isffsvm";
    }
    return "isffsvm";
}

std::vector<double> default_location_grid() {
    std::vector<double> grid;
    for (int k = 11; k <= 20; ++k) {
        grid.push_back(k / 10.0);
    }
    return grid;
}

SearchGrid SearchGrid::defaults() {
    SearchGrid g;
    g.zeta = {0.1, 1.0, 10.0, 100.0};
    g.mu = {0.1, 0.5, 1.0, 2.0, 5.0};
    g.a = default_location_grid();
    g.kernels = {KernelSpec::linear(), KernelSpec::rbf(0.01), KernelSpec::rbf(0.1), KernelSpec::rbf(1.0)};
    return g;
}

namespace {

struct GridPoint {
    std::size_t kernel_index;
    std::size_t zeta_index;
    std::size_t mu_index;
    std::size_t a_index;
    HyperParams params;
};

struct FoldOutcome {
    std::vector<double> scores;
    std::vector<std::string> errors;
};

// Points are laid out kernel-major, then zeta, mu, a. Scores for one fold are
// computed with one Gram matrix per kernel and one DEC fit per (kernel, zeta).
FoldOutcome evaluate_fold(const Dataset& train, const Dataset& val, ModelKind kind, const SearchGrid& grid,
                          const std::vector<double>& mus, const std::vector<double>& as, const CvOptions& options) {
    const std::size_t per_zeta = mus.size() * as.size();
    const std::size_t per_kernel = grid.zeta.size() * per_zeta;
    FoldOutcome out;
    out.scores.assign(grid.kernels.size() * per_kernel, 0.0);
    out.errors.assign(out.scores.size(), {});
    const ClassStats stats = class_stats(train);

    for (std::size_t ki = 0; ki < grid.kernels.size(); ++ki) {
        const KernelSpec& kernel = grid.kernels[ki];
        const GramMatrix gram(train, kernel);
        Matrix cross(val.size(), train.size());
        for (std::size_t r = 0; r < val.size(); ++r) {
            for (std::size_t c = 0; c < train.size(); ++c) {
                cross(r, c) = kernel(val.row(r), train.row(c));
            }
        }
        auto score_model = [&](const SvmModel& m) {
            const auto values = decision_values(m, cross, train.size());
            return evaluate(options.objective, val.labels(), values);
        };

        for (std::size_t zi = 0; zi < grid.zeta.size(); ++zi) {
            const double zeta = grid.zeta[zi];
            const std::size_t base = ki * per_kernel + zi * per_zeta;
            std::optional<SvmModel> dec;
            try {
                dec = fit_dec(train, DecParams{zeta, kernel}, options.solver, &gram);
            } catch (const Error& e) {
                for (std::size_t p = 0; p < per_zeta; ++p) {
                    out.scores[base + p] = -std::numeric_limits<double>::infinity();
                    out.errors[base + p] = e.what();
                }
                continue;
            }
            if (kind == ModelKind::dec) {
                out.scores[base] = score_model(*dec);
                continue;
            }
            const auto slacks = compute_slack_factors(*dec, train);
            for (std::size_t mi = 0; mi < mus.size(); ++mi) {
                // Different locations often give identical memberships; reuse those fits.
                std::vector<std::pair<MembershipVector, std::pair<double, std::string>>> seen;
                for (std::size_t ai = 0; ai < as.size(); ++ai) {
                    const std::size_t idx = base + mi * as.size() + ai;
                    const MembershipParams mp(mus[mi], as[ai]);
                    MembershipVector psi = class_memberships(slacks, train.labels(), mp);
                    auto hit = std::find_if(seen.begin(), seen.end(), [&](const auto& s) { return s.first == psi; });
                    if (hit != seen.end()) {
                        out.scores[idx] = hit->second.first;
                        out.errors[idx] = hit->second.second;
                        continue;
                    }
                    double score = -std::numeric_limits<double>::infinity();
                    std::string error;
                    try {
                        bool any_minority = false;
                        std::vector<double> costs(train.size());
                        for (std::size_t i = 0; i < train.size(); ++i) {
                            const bool minority = train.label(i) > 0;
                            any_minority = any_minority || (minority && psi[i] > 0.0);
                            costs[i] = (minority ? zeta * stats.imbalance_ratio : zeta) * psi[i];
                        }
                        if (!any_minority) {
                            throw Error(Errc::AllMinorityExcluded, "the DEC stage misclassifies every minority sample");
                        }
                        const auto final_model =
                            fit_weighted_svm(train, SampleCosts(std::move(costs)), kernel, options.solver, &gram);
                        score = score_model(final_model);
                    } catch (const Error& e) {
                        error = e.what();
                    }
                    out.scores[idx] = score;
                    out.errors[idx] = error;
                    seen.emplace_back(std::move(psi), std::make_pair(score, error));
                }
            }
        }
    }
    return out;
}

} // namespace

GridSearchResult grid_search(const Dataset& ds, ModelKind kind, const SearchGrid& grid, const CvOptions& options) {
    if (grid.zeta.empty() || grid.kernels.empty()) {
        throw Error(Errc::InvalidArgument, "zeta and kernel grids must be non-empty");
    }
    if (kind == ModelKind::isffsvm && (grid.mu.empty() || grid.a.empty())) {
        throw Error(Errc::InvalidArgument, "mu and a grids must be non-empty");
    }
    if (kind == ModelKind::sffsvm && grid.mu.empty()) {
        throw Error(Errc::InvalidArgument, "mu grid must be non-empty");
    }
    if (options.repeats == 0) {
        throw Error(Errc::InvalidArgument, "repeats must be at least 1");
    }
    for (const double a : grid.a) {
        MembershipParams(1.0, a);
    }

    const std::vector<double> mus = kind == ModelKind::dec ? std::vector<double>{0.0} : grid.mu;
    const std::vector<double> as = kind == ModelKind::dec      ? std::vector<double>{0.0}
                                   : kind == ModelKind::sffsvm ? std::vector<double>{MembershipParams::max_location}
                                                               : grid.a;

    std::vector<GridPoint> points;
    for (std::size_t ki = 0; ki < grid.kernels.size(); ++ki) {
        for (std::size_t zi = 0; zi < grid.zeta.size(); ++zi) {
            for (std::size_t mi = 0; mi < mus.size(); ++mi) {
                for (std::size_t ai = 0; ai < as.size(); ++ai) {
                    points.push_back({ki, zi, mi, ai, HyperParams{grid.zeta[zi], mus[mi], as[ai], grid.kernels[ki]}});
                }
            }
        }
    }

    std::vector<FoldPlan> plans;
    for (std::size_t r = 0; r < options.repeats; ++r) {
        plans.push_back(stratified_kfold(ds, options.folds, options.seed + r));
    }
    const std::size_t n_tasks = options.repeats * options.folds;
    std::vector<FoldOutcome> outcomes(n_tasks);
    detail::parallel_for(n_tasks, options.workers, [&](std::size_t t) {
        const FoldPlan& plan = plans[t / options.folds];
        const std::size_t fold = t % options.folds;
        const auto train_idx = plan.train_indices(fold);
        const auto val_idx = plan.test_indices(fold);
        outcomes[t] = evaluate_fold(subset(ds, train_idx), subset(ds, val_idx), kind, grid, mus, as, options);
    });

    GridSearchResult result;
    result.table.reserve(points.size());
    for (std::size_t p = 0; p < points.size(); ++p) {
        double sum = 0.0;
        std::string error;
        for (const auto& outcome : outcomes) {
            sum += outcome.scores[p];
            if (error.empty() && !outcome.errors[p].empty()) {
                error = outcome.errors[p];
            }
        }
        const double mean = std::isfinite(sum) ? sum / static_cast<double>(n_tasks)
                                                : -std::numeric_limits<double>::infinity();
        result.table.push_back({points[p].params, mean, error});
    }

    std::size_t best = 0;
    auto key = [&](std::size_t p) {
        const auto& g = points[p];
        return std::make_tuple(g.params.a, g.params.zeta, g.params.mu, g.kernel_index);
    };
    for (std::size_t p = 1; p < points.size(); ++p) {
        const double s = result.table[p].score;
        const double b = result.table[best].score;
        if (s > b || (s == b && key(p) < key(best))) {
            best = p;
        }
    }
    result.best = result.table[best].params;
    result.best_score = result.table[best].score;
    return result;
}

} // namespace slackfuzz
