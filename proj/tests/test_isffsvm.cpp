#include "doctest.h"

#include "oracles.hpp"
#include "properties.hpp"
#include "slackfuzz/dec.hpp"
#include "slackfuzz/error.hpp"
#include "slackfuzz/isffsvm.hpp"
#include "slackfuzz/serialize.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <tuple>

using namespace slackfuzz;

namespace {

// Mean validation objective over one stratified k-fold plan, built from the
// public fitting pieces only.
double manual_cv(const Dataset& ds, const HyperParams& hp, std::size_t folds, std::uint64_t seed) {
    const FoldPlan plan = stratified_kfold(ds, folds, seed);
    double sum = 0.0;
    for (std::size_t f = 0; f < folds; ++f) {
        const auto tr = plan.train_indices(f);
        const auto va = plan.test_indices(f);
        const Dataset train = subset(ds, tr);
        const Dataset val = subset(ds, va);
        const IsffsvmModel m = fit_isffsvm(train, hp);
        std::vector<double> scores;
        for (std::size_t i = 0; i < val.size(); ++i) {
            scores.push_back(decision_function(m, val.row(i)));
        }
        sum += f1_score(confusion_matrix(val.labels(), labels_from_scores(scores)));
    }
    return sum / double(folds);
}

} // namespace

TEST_CASE("a = 2 reduces to the original model") {
    const props::Outcome r = props::sffsvm_reduction(15, 99);
    INFO(r.first_failure);
    CHECK(r.ok());
}

TEST_CASE("stage-two costs and exclusions") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const Dataset ds = oracle::random_dataset(rng, 40, 2);
        const HyperParams hp{0.5 + trial, 1.3, 1.1 + 0.1 * double(trial), KernelSpec::rbf(0.8)};
        IsffsvmModel m;
        try {
            m = fit_isffsvm(ds, hp);
        } catch (const Error& e) {
            CHECK(e.code() == Errc::AllMinorityExcluded);
            continue;
        }
        const double ir = class_stats(ds).imbalance_ratio;
        CHECK(m.imbalance_ratio == ir);
        std::vector<std::size_t> zero;
        for (std::size_t i = 0; i < ds.size(); ++i) {
            const double psi = m.memberships[i];
            const double scale = ds.label(i) > 0 ? hp.zeta * ir : hp.zeta;
            CHECK(m.stage2_costs[i] == scale * psi);
            // Quotient form, within the rounding of one multiplication.
            CHECK(std::abs(m.stage2_costs[i] / scale - psi) <= 2.3e-16 * psi);
            if (psi == 0.0) {
                zero.push_back(i);
                CHECK(m.final_model.alpha[i] == 0.0);
            }
        }
        CHECK(m.excluded == zero);
    }
}

TEST_CASE("separable data keeps every membership at one") {
    Matrix x(20, 2);
    std::vector<int> y;
    for (std::size_t i = 0; i < 20; ++i) {
        const int label = i < 5 ? 1 : -1;
        x(i, 0) = label * (3.0 + 0.1 * double(i));
        x(i, 1) = 0.05 * double(i % 3);
        y.push_back(label);
    }
    const Dataset ds(x, y);
    const IsffsvmModel m = fit_isffsvm(ds, HyperParams{10.0, 1.0, 1.5, KernelSpec::linear()});
    for (std::size_t i = 0; i < ds.size(); ++i) {
        CHECK(m.memberships[i] == 1.0);
    }
    CHECK(m.excluded.empty());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        CHECK(decision_function(m.final_model, ds.row(i)) ==
              doctest::Approx(decision_function(m.dec_model, ds.row(i))).epsilon(1e-6));
    }
}

TEST_CASE("every minority sample misclassified by DEC is an error") {
    const std::vector<double> xs = {-0.148, -1.103, -0.0623, 0.8756, 0.1246, -0.7589, -0.7249,
                                    0.2388, 1.426,  0.2766, -0.414, -1.4169, -0.838,  -1.0075};
    Matrix x(xs.size(), 1);
    x.values = xs;
    std::vector<int> y(xs.size(), -1);
    y[0] = y[1] = 1;
    const Dataset ds(x, y);
    try {
        fit_isffsvm(ds, HyperParams{0.01, 1.0, 2.0, KernelSpec::linear()});
        FAIL("expected AllMinorityExcluded");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::AllMinorityExcluded);
    }
}

TEST_CASE("fits are deterministic") {
    const Dataset ds = standardize(make_moons({120, 30, 0.3, 2})).train;
    const HyperParams hp{5.0, 0.8, 1.4, KernelSpec::rbf(1.0)};
    CHECK(isffsvm_to_json(fit_isffsvm(ds, hp)) == isffsvm_to_json(fit_isffsvm(ds, hp)));
}

TEST_CASE("prediction tie-break") {
    CHECK(predict_label(0.7) == 1);
    CHECK(predict_label(-0.7) == -1);
    CHECK(predict_label(0.0) == 1);
    CHECK(predict_label(-0.0) == 1);
}

TEST_CASE("default location grid") {
    CHECK(default_location_grid() == std::vector<double>{1.1, 1.2, 1.3, 1.4, 1.5, 1.6, 1.7, 1.8, 1.9, 2.0});
    const SearchGrid g = SearchGrid::defaults();
    CHECK(g.a == default_location_grid());
    CHECK(parse_model_kind("ISFFSVM") == ModelKind::isffsvm);
    CHECK(model_kind_name(ModelKind::sffsvm) == "sffsvm");
    CHECK_THROWS_AS(parse_model_kind("svm"), Error);
}

TEST_CASE("grid search: single point returns its CV score") {
    const Dataset ds = standardize(make_moons({150, 30, 0.3, 5})).train;
    const HyperParams hp{2.0, 1.0, 1.6, KernelSpec::rbf(1.0)};
    const SearchGrid g{{hp.zeta}, {hp.mu}, {hp.a}, {hp.kernel}};
    CvOptions o;
    o.repeats = 1;
    o.seed = 4;
    const GridSearchResult r = grid_search(ds, ModelKind::isffsvm, g, o);
    REQUIRE(r.table.size() == 1);
    CHECK(r.best == hp);
    CHECK(r.best_score == doctest::Approx(manual_cv(ds, hp, 5, 4)).epsilon(1e-12));
}

TEST_CASE("grid search: repeats average over consecutive seeds") {
    const Dataset ds = standardize(make_moons({100, 25, 0.3, 8})).train;
    const HyperParams hp{1.0, 0.5, 1.3, KernelSpec::rbf(0.5)};
    CvOptions o;
    o.repeats = 3;
    o.seed = 10;
    const GridSearchResult r = grid_search(ds, ModelKind::isffsvm, SearchGrid{{1.0}, {0.5}, {1.3}, {hp.kernel}}, o);
    const double expected = (manual_cv(ds, hp, 5, 10) + manual_cv(ds, hp, 5, 11) + manual_cv(ds, hp, 5, 12)) / 3.0;
    CHECK(r.best_score == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("grid search: a dominating small location is selected") {
    const Dataset ds = standardize(make_moons({200, 40, 0.35, 11})).train;
    const std::vector<double> grid = default_location_grid();
    std::vector<double> exhaustive;
    for (const double a : grid) {
        exhaustive.push_back(manual_cv(ds, HyperParams{10.0, 1.0, a, KernelSpec::rbf(1.0)}, 5, 0));
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        REQUIRE(exhaustive[0] > exhaustive[i]);
    }
    CvOptions o;
    o.repeats = 1;
    const GridSearchResult r = grid_search(ds, ModelKind::isffsvm, SearchGrid{{10.0}, {1.0}, grid, {KernelSpec::rbf(1.0)}}, o);
    CHECK(r.best.a == 1.1);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(r.table[i].score == doctest::Approx(exhaustive[i]).epsilon(1e-12));
    }
}

TEST_CASE("grid search: ties prefer the least aggressive point and workers do not change results") {
    const Dataset ds = standardize(make_moons({80, 20, 0.1, 3})).train;
    const SearchGrid g{{1.0, 10.0}, {0.5, 2.0}, {1.1, 1.5, 2.0}, {KernelSpec::rbf(1.0)}};
    CvOptions o;
    o.repeats = 2;
    const GridSearchResult serial = grid_search(ds, ModelKind::isffsvm, g, o);
    o.workers = 3;
    const GridSearchResult threaded = grid_search(ds, ModelKind::isffsvm, g, o);
    CHECK(serial.best == threaded.best);
    for (std::size_t i = 0; i < serial.table.size(); ++i) {
        CHECK(serial.table[i].score == threaded.table[i].score);
    }
    // Among the top scorers, the selected point is the smallest (a, zeta, mu).
    for (const auto& e : serial.table) {
        if (e.score == serial.best_score) {
            const auto key = std::make_tuple(e.params.a, e.params.zeta, e.params.mu);
            CHECK(std::make_tuple(serial.best.a, serial.best.zeta, serial.best.mu) <= key);
        }
    }
}

TEST_CASE("grid search: model kinds restrict the grid") {
    const Dataset ds = standardize(make_moons({60, 15, 0.2, 1})).train;
    const SearchGrid g{{1.0}, {0.5, 1.0}, {1.2, 1.6}, {KernelSpec::rbf(1.0)}};
    CvOptions o;
    o.repeats = 1;
    const GridSearchResult dec = grid_search(ds, ModelKind::dec, g, o);
    CHECK(dec.table.size() == 1);
    const GridSearchResult sff = grid_search(ds, ModelKind::sffsvm, g, o);
    CHECK(sff.table.size() == 2);
    for (const auto& e : sff.table) {
        CHECK(e.params.a == 2.0);
    }
    CHECK(grid_search(ds, ModelKind::isffsvm, g, o).table.size() == 4);
    CHECK_THROWS_AS(grid_search(ds, ModelKind::isffsvm, SearchGrid{{1.0}, {1.0}, {2.5}, {KernelSpec::linear()}}, o),
                    Error);
}

TEST_CASE("grid search: failing points score -inf with the error recorded") {
    const std::vector<double> xs = {-0.148, -1.103, -0.0623, 0.8756, 0.1246, -0.7589, -0.7249,
                                    0.2388, 1.426,  0.2766, -0.414, -1.4169, -0.838,  -1.0075,
                                    -0.2,   -0.9,   0.5,     0.6,    -0.3,   -0.35};
    Matrix x(xs.size(), 1);
    x.values = xs;
    std::vector<int> y(xs.size(), -1);
    for (std::size_t i : {0, 1, 14, 15, 18}) {
        y[i] = 1;
    }
    const Dataset ds(x, y);
    CvOptions o;
    o.repeats = 1;
    o.folds = 2;
    const GridSearchResult r =
        grid_search(ds, ModelKind::sffsvm, SearchGrid{{1e-4, 1.0}, {1.0}, {2.0}, {KernelSpec::rbf(1.0)}}, o);
    REQUIRE(r.table.size() == 2);
    for (const auto& e : r.table) {
        if (!e.error.empty()) {
            CHECK(e.score == -std::numeric_limits<double>::infinity());
        }
    }
    CHECK(std::isfinite(r.best_score));
}
