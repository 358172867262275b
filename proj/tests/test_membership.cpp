#include "doctest.h"

#include "oracles.hpp"
#include "slackfuzz/error.hpp"
#include "slackfuzz/membership.hpp"

#include <cmath>
#include <random>
#include <set>

using namespace slackfuzz;

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(MembershipParams(0.0, 1.5), Error);
    CHECK_THROWS_AS(MembershipParams(1.0, 1.0), Error);
    CHECK_THROWS_AS(MembershipParams(1.0, 2.1), Error);
    CHECK_NOTHROW(MembershipParams(1.0, 1.1));
    CHECK_NOTHROW(MembershipParams(1.0, 2.0));
}

TEST_CASE("partition into T and F sets") {
    const std::vector<double> xi = {0.0, 0.5, 1.0, 1.5};
    const std::vector<int> y = {1, 1, -1, -1};
    const SampleSets s = partition_sets(xi, y);
    CHECK(s.t_plus == std::vector<std::size_t>{0, 1});
    CHECK(s.f_plus.empty());
    CHECK(s.t_minus.empty());
    CHECK(s.f_minus == std::vector<std::size_t>{2, 3});

    const SampleSets all = partition_sets(std::vector<double>(4, 0.0), y);
    CHECK(all.t_plus.size() + all.t_minus.size() == 4);

    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    std::vector<double> slacks(100);
    std::vector<int> labels(100);
    for (std::size_t i = 0; i < 100; ++i) {
        slacks[i] = i % 10 == 0 ? 1.0 : u(rng);
        labels[i] = rng() % 3 == 0 ? 1 : -1;
    }
    const SampleSets r = partition_sets(slacks, labels);
    std::multiset<std::size_t> seen;
    for (const auto* set : {&r.t_plus, &r.f_plus, &r.t_minus, &r.f_minus}) {
        seen.insert(set->begin(), set->end());
    }
    CHECK(seen.size() == 100);
    CHECK(std::set<std::size_t>(seen.begin(), seen.end()).size() == 100);
    for (const std::size_t i : r.t_plus) {
        CHECK((labels[i] == 1 && slacks[i] < 1.0));
    }
    for (const std::size_t i : r.f_minus) {
        CHECK((labels[i] == -1 && slacks[i] >= 1.0));
    }
}

TEST_CASE("generic slack membership") {
    const std::vector<double> xi = {0.99, 1.0, 2.0};
    const auto psi1 = generic_slack_membership(std::span(xi).first(2), 1.0);
    CHECK(psi1[0] == 1.0);
    CHECK(psi1[1] == doctest::Approx(0.3679).epsilon(1e-4));
    const auto psi2 = generic_slack_membership(std::span(xi).subspan(2), 0.5);
    CHECK(psi2[0] == doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("minority membership values") {
    CHECK(minority_membership(0.0, 3.0) == 1.0);
    CHECK(minority_membership(1.0, 3.0) == 0.0);
    CHECK(minority_membership(0.5, 2.0) == doctest::Approx(0.5379).epsilon(1e-4));
    CHECK(minority_membership(0.5, 2.0) == doctest::Approx(2.0 / (std::exp(1.0) + 1.0)));
    // Left limit at the jump.
    CHECK(minority_membership(std::nextafter(1.0, 0.0), 1.0) == doctest::Approx(2.0 / (std::exp(1.0) + 1.0)));
}

TEST_CASE("majority membership values") {
    CHECK(majority_membership(0.0, MembershipParams(1.0, 1.5)) == 1.0);
    CHECK(majority_membership(1.3, MembershipParams(1.0, 1.3)) == doctest::Approx(0.2725).epsilon(1e-4));
    const double mu = 0.7;
    CHECK(majority_membership(1.5, MembershipParams(mu, 1.3)) == doctest::Approx(std::exp(-1.5 * mu)));
    CHECK(majority_membership(1.5, MembershipParams(mu, 1.3)) < 1.0);
    CHECK(majority_membership(1.5, MembershipParams(mu, 2.0)) == 1.0);
    CHECK(majority_membership(1.9, MembershipParams(1.0, 2.0)) == 1.0);
    CHECK(majority_membership(2.4, MembershipParams(1.0, 2.0)) == doctest::Approx(0.0907).epsilon(1e-3));
}

TEST_CASE("a = 2 reproduces the original majority rule bit-exactly") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, 6.0);
    std::uniform_real_distribution<double> m(0.01, 10.0);
    for (int i = 0; i < 10000; ++i) {
        const double xi = u(rng);
        const double mu = m(rng);
        const double generic = xi < 2.0 ? 1.0 : std::exp(-mu * xi);
        CHECK(majority_membership(xi, MembershipParams(mu, 2.0)) == generic);
    }
}

TEST_CASE("vector forms agree with the oracle formulas") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 4.0);
    std::vector<double> xi(200);
    std::vector<int> y(200);
    for (std::size_t i = 0; i < 200; ++i) {
        xi[i] = i % 17 == 0 ? 1.0 : u(rng);
        y[i] = i % 3 == 0 ? 1 : -1;
    }
    const MembershipParams p(1.7, 1.4);
    const auto psi = class_memberships(xi, y, p);
    const auto plus = minority_membership(xi, 1.7);
    const auto minus = majority_membership(xi, p);
    for (std::size_t i = 0; i < 200; ++i) {
        const double expected = y[i] > 0 ? oracle::minority_psi(xi[i], 1.7) : oracle::majority_psi(xi[i], 1.7, 1.4);
        CHECK(psi[i] == expected);
        CHECK(plus[i] == oracle::minority_psi(xi[i], 1.7));
        CHECK(minus[i] == oracle::majority_psi(xi[i], 1.7, 1.4));
    }
}
