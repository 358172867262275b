#include "doctest.h"

#include "oracles.hpp"
#include "slackfuzz/dec.hpp"
#include "slackfuzz/error.hpp"
#include "slackfuzz/svm.hpp"

#include <cmath>
#include <random>

using namespace slackfuzz;

namespace {

Dataset line_points(std::vector<double> xs, std::vector<int> ys) {
    Matrix x(xs.size(), 1);
    x.values = std::move(xs);
    return Dataset(std::move(x), std::move(ys));
}

SvmModel bias_only(double b, std::size_t dim) {
    SvmModel m;
    m.kernel = KernelSpec::linear();
    m.support_vectors = Matrix(0, dim);
    m.bias = b;
    return m;
}

// Largest violation of the primal KKT conditions y f >= 1 (alpha = 0),
// y f = 1 (free), y f <= 1 (alpha = C), recomputed with the oracle kernel.
double kkt_violation(const Dataset& ds, const std::vector<double>& costs, const SvmModel& m) {
    double worst = 0.0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (costs[i] == 0.0) {
            continue;
        }
        double f = m.bias;
        for (std::size_t j = 0; j < ds.size(); ++j) {
            f += m.alpha[j] * ds.label(j) * oracle::kernel(m.kernel, ds.row(j), ds.row(i));
        }
        const double margin = ds.label(i) * f;
        const double a = m.alpha[i];
        if (a <= 0.0) {
            worst = std::max(worst, 1.0 - margin);
        } else if (a >= costs[i]) {
            worst = std::max(worst, margin - 1.0);
        } else {
            worst = std::max(worst, std::abs(margin - 1.0));
        }
    }
    return worst;
}

} // namespace

TEST_CASE("kernels") {
    const std::vector<double> a = {1.0, 2.0};
    const std::vector<double> b = {3.0, -1.0};
    CHECK(KernelSpec::linear()(a, b) == 1.0);
    CHECK(KernelSpec::rbf(0.5)(a, b) == doctest::Approx(std::exp(-0.5 * 13.0)));
    CHECK(parse_kernel("rbf:0.25") == KernelSpec::rbf(0.25));
    CHECK(parse_kernel(to_string(KernelSpec::linear())) == KernelSpec::linear());
}

TEST_CASE("two points: maximum-margin midpoint") {
    const Dataset ds = line_points({0.0, 2.0}, {1, -1});
    const SvmModel m = fit_weighted_svm(ds, SampleCosts({1e6, 1e6}), KernelSpec::linear());
    REQUIRE(m.converged);
    CHECK(m.linear_weights()[0] == doctest::Approx(-1.0).epsilon(1e-6));
    CHECK(m.bias == doctest::Approx(1.0).epsilon(1e-6));
    const std::vector<double> mid = {1.0};
    const std::vector<double> pos = {0.0};
    CHECK(std::abs(decision_function(m, mid)) < 1e-6);
    CHECK(decision_function(m, pos) == doctest::Approx(1.0).epsilon(1e-6));

    const auto brute = oracle::solve_dual(ds, {1e6, 1e6}, KernelSpec::linear());
    CHECK(m.dual_objective == doctest::Approx(brute.objective).epsilon(1e-6));
}

TEST_CASE("xor with rbf kernel") {
    Matrix x(4, 2);
    x.values = {0, 0, 1, 1, 0, 1, 1, 0};
    const Dataset ds(x, {-1, -1, 1, 1});
    const SvmModel m = fit_weighted_svm(ds, SampleCosts({10, 10, 10, 10}), KernelSpec::rbf(1.0));
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK((decision_function(m, ds.row(i)) >= 0 ? 1 : -1) == ds.label(i));
    }
    const auto brute = oracle::solve_dual(ds, {10, 10, 10, 10}, KernelSpec::rbf(1.0));
    CHECK(m.dual_objective == doctest::Approx(brute.objective).epsilon(1e-6));
}

TEST_CASE("zero cost for a whole class is rejected") {
    const Dataset ds = line_points({0, 1, 2, 3}, {1, 1, -1, -1});
    try {
        fit_weighted_svm(ds, SampleCosts({0, 0, 1, 1}), KernelSpec::linear());
        FAIL("expected AllZeroCostClass");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::AllZeroCostClass);
    }
    CHECK_THROWS_AS(SampleCosts({1.0, -1.0}), Error);
    CHECK_THROWS_AS(fit_weighted_svm(ds, SampleCosts({1, 1}), KernelSpec::linear()), Error);
}

TEST_CASE("decision function with no support vectors is the bias") {
    const SvmModel m = bias_only(0.3, 2);
    const std::vector<double> x = {5.0, -2.0};
    CHECK(decision_function(m, x) == 0.3);
}

TEST_CASE("slack factors: direct values") {
    const Dataset one_pos = line_points({0.0, 1.0}, {1, -1});
    CHECK(compute_slack_factors(bias_only(1.0, 1), one_pos)[0] == 0.0);
    CHECK(compute_slack_factors(bias_only(-0.5, 1), one_pos)[0] == 1.5);
    CHECK(compute_slack_factors(bias_only(0.0, 1), one_pos)[1] == 1.0);
}

TEST_CASE("random weighted problems agree with the dense QP oracle") {
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> log_cost(-1.0, 2.0);
    for (int trial = 0; trial < 30; ++trial) {
        CAPTURE(trial);
        const std::size_t n = 4 + rng() % 17;
        const std::size_t d = 1 + rng() % 4;
        const Dataset ds = oracle::random_dataset(rng, n, d);
        const KernelSpec k = trial % 2 ? KernelSpec::rbf(0.5) : KernelSpec::linear();
        std::vector<double> costs(n);
        for (auto& c : costs) {
            c = std::pow(10.0, log_cost(rng));
        }
        if (trial % 5 == 0) {
            costs[rng() % n] = 0.0;
        }
        try {
            const SvmModel m = fit_weighted_svm(ds, SampleCosts(costs), k);
            double balance = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(m.alpha[i] >= 0.0);
                CHECK(m.alpha[i] <= costs[i]);
                balance += m.alpha[i] * ds.label(i);
            }
            CHECK(std::abs(balance) <= 1e-8);
            REQUIRE(m.converged);
            const auto brute = oracle::solve_dual(ds, costs, k);
            CHECK(std::abs(m.dual_objective - brute.objective) <= 1e-3 * std::max(1.0, std::abs(brute.objective)));
            CHECK(m.dual_objective == doctest::Approx(dual_objective(ds, m.alpha, k)).epsilon(1e-9));
            CHECK(kkt_violation(ds, costs, m) <= SolverConfig{}.kkt_tolerance);
        } catch (const Error& e) {
            CHECK(e.code() == Errc::AllZeroCostClass);
        }
    }
}

TEST_CASE("precomputed gram gives the same fit") {
    std::mt19937_64 rng(5);
    const Dataset ds = oracle::random_dataset(rng, 40, 3);
    const KernelSpec k = KernelSpec::rbf(0.7);
    const SampleCosts c(std::vector<double>(40, 2.0));
    const GramMatrix gram(ds, k);
    const SvmModel a = fit_weighted_svm(ds, c, k);
    const SvmModel b = fit_weighted_svm(ds, c, k, {}, &gram);
    CHECK(a.alpha == b.alpha);
    CHECK(a.bias == b.bias);

    SolverConfig tiny_cache;
    tiny_cache.cache_budget = 1;
    const SvmModel e = fit_weighted_svm(ds, c, k, tiny_cache);
    CHECK(a.alpha == e.alpha);
}

TEST_CASE("scaling costs on separable data never lowers training accuracy") {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> normal(0.0, 0.3);
    Matrix x(30, 2);
    std::vector<int> y;
    for (std::size_t i = 0; i < 30; ++i) {
        const int label = i < 10 ? 1 : -1;
        x(i, 0) = label * 1.5 + normal(rng);
        x(i, 1) = normal(rng);
        y.push_back(label);
    }
    const Dataset ds(x, y);
    double previous = -1.0;
    for (const double t : {1.0, 10.0, 100.0}) {
        const SvmModel m = fit_weighted_svm(ds, SampleCosts(std::vector<double>(30, 0.01 * t)), KernelSpec::linear());
        std::size_t correct = 0;
        for (std::size_t i = 0; i < 30; ++i) {
            correct += (decision_function(m, ds.row(i)) >= 0 ? 1 : -1) == ds.label(i);
        }
        const double acc = double(correct) / 30.0;
        CHECK(acc >= previous);
        previous = acc;
    }
    CHECK(previous == 1.0);
}

TEST_CASE("slack factor properties") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const Dataset ds = oracle::random_dataset(rng, 30, 2);
        const SvmModel m = fit_weighted_svm(ds, SampleCosts(std::vector<double>(30, 1.0)), KernelSpec::rbf(1.0));
        const auto xi = compute_slack_factors(m, ds);
        for (std::size_t i = 0; i < ds.size(); ++i) {
            const double margin = ds.label(i) * decision_function(m, ds.row(i));
            CHECK(xi[i] >= 0.0);
            if (margin > 1.0) {
                CHECK(xi[i] == 0.0);
            }
            CHECK((xi[i] < 1.0) == (margin > 0.0));
        }
    }
}

TEST_CASE("dec costs") {
    Matrix x(12, 1);
    std::vector<int> y(12, -1);
    y[0] = y[1] = 1;
    for (std::size_t i = 0; i < 12; ++i) {
        x(i, 0) = double(i);
    }
    const Dataset ds(x, y);
    const SampleCosts c = build_dec_costs(ds, 2.0);
    CHECK(c[0] == 10.0);
    CHECK(c[5] == 2.0);
    CHECK(c[0] / c[5] == class_stats(ds).imbalance_ratio);

    const Dataset balanced = line_points({0, 1, 2, 3}, {1, -1, 1, -1});
    const SampleCosts cb = build_dec_costs(balanced, 3.0);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(cb[i] == 3.0);
    }
}

TEST_CASE("dec is a wrapper over the weighted solver") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 5; ++trial) {
        const Dataset ds = oracle::random_dataset(rng, 25, 2);
        const KernelSpec k = KernelSpec::rbf(0.5);
        const SvmModel a = fit_dec(ds, {1.5, k});
        const SvmModel b = fit_weighted_svm(ds, build_dec_costs(ds, 1.5), k);
        CHECK(a.alpha == b.alpha);
        CHECK(std::abs(a.bias - b.bias) <= 1e-10);
    }
}

TEST_CASE("dec threshold in one dimension") {
    const Dataset ds = line_points({-2.0, -1.0, 3.0}, {-1, -1, 1});
    auto threshold = [](const SvmModel& m) { return -m.bias / m.linear_weights()[0]; };

    // With zeta = 1 neither cost bound is active: both fits are the hard-margin midpoint.
    const SvmModel dec1 = fit_dec(ds, {1.0, KernelSpec::linear()});
    const SvmModel plain1 = fit_weighted_svm(ds, SampleCosts({1.0, 1.0, 1.0}), KernelSpec::linear());
    CHECK(threshold(dec1) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(threshold(plain1) == doctest::Approx(1.0).epsilon(1e-6));

    // Binding costs: the heavier minority cost pulls the boundary toward the majority.
    const double z = 0.05;
    const SvmModel dec = fit_dec(ds, {z, KernelSpec::linear()});
    const SvmModel plain = fit_weighted_svm(ds, SampleCosts({z, z, z}), KernelSpec::linear());
    const auto brute_dec = oracle::solve_dual(ds, {z, z, 2 * z}, KernelSpec::linear());
    const auto brute_plain = oracle::solve_dual(ds, {z, z, z}, KernelSpec::linear());
    CHECK(dec.dual_objective == doctest::Approx(brute_dec.objective).epsilon(1e-6));
    CHECK(plain.dual_objective == doctest::Approx(brute_plain.objective).epsilon(1e-6));
    CHECK(threshold(dec) < threshold(plain) - 0.5);
}
