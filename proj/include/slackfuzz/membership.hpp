#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace slackfuzz {

/// Smoothness mu > 0 and location parameter a in [1.1, 2]. a = 2 reproduces
/// the original slack-factor rule for the majority class.
class MembershipParams {
public:
    MembershipParams(double mu, double a);

    double mu() const noexcept { return mu_; }
    double a() const noexcept { return a_; }

    static constexpr double min_location = 1.1;
    static constexpr double max_location = 2.0;

private:
    double mu_;
    double a_;
};

/// Per-sample fuzzy weights in [0, 1], aligned with the training rows.
using MembershipVector = std::vector<double>;

/// Samples split by class and by whether the slack is below one (T) or not (F).
struct SampleSets {
    std::vector<std::size_t> t_plus;
    std::vector<std::size_t> f_plus;
    std::vector<std::size_t> t_minus;
    std::vector<std::size_t> f_minus;
};

SampleSets partition_sets(std::span<const double> slacks, std::span<const int> labels);

/// 1 when slack < 1, exp(-mu * slack) otherwise.
MembershipVector generic_slack_membership(std::span<const double> slacks, double mu);

/// 2 / (exp(mu * slack) + 1) when slack < 1, otherwise 0. Note the jump at
/// slack = 1: the left limit is 2 / (e^mu + 1), the value is 0.
double minority_membership(double slack, double mu);
MembershipVector minority_membership(std::span<const double> slacks, double mu);

/// 1 when slack < a, exp(-mu * slack) when slack >= a.
double majority_membership(double slack, const MembershipParams& params);
MembershipVector majority_membership(std::span<const double> slacks, const MembershipParams& params);

/// Applies the minority rule to +1 samples and the majority rule to -1 samples.
MembershipVector class_memberships(std::span<const double> slacks, std::span<const int> labels,
                                   const MembershipParams& params);

} // namespace slackfuzz
