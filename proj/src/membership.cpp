#include "slackfuzz/membership.hpp"

#include "slackfuzz/error.hpp"

#include <cmath>
#include <string>

namespace slackfuzz {

namespace {

void check_slacks(std::span<const double> slacks) {
    for (const double s : slacks) {
        if (!(s >= 0.0)) {
            throw Error(Errc::InvalidArgument, "slack factors must be non-negative");
        }
    }
}

void check_mu(double mu) {
    if (!(mu > 0.0) || !std::isfinite(mu)) {
        throw Error(Errc::InvalidArgument, "mu must be positive");
    }
}

} // namespace

MembershipParams::MembershipParams(double mu, double a) : mu_(mu), a_(a) {
    check_mu(mu);
    if (!(a >= min_location && a <= max_location)) {
        throw Error(Errc::InvalidArgument, "location parameter a=" + std::to_string(a) + " outside [1.1, 2]");
    }
}

SampleSets partition_sets(std::span<const double> slacks, std::span<const int> labels) {
    if (slacks.size() != labels.size()) {
        throw Error(Errc::LengthMismatch, "slacks and labels differ in length");
    }
    check_slacks(slacks);
    SampleSets sets;
    for (std::size_t i = 0; i < slacks.size(); ++i) {
        const bool correct = slacks[i] < 1.0;
        if (labels[i] > 0) {
            (correct ? sets.t_plus : sets.f_plus).push_back(i);
        } else {
            (correct ? sets.t_minus : sets.f_minus).push_back(i);
        }
    }
    return sets;
}

MembershipVector generic_slack_membership(std::span<const double> slacks, double mu) {
    check_mu(mu);
    check_slacks(slacks);
    MembershipVector psi(slacks.size());
    for (std::size_t i = 0; i < slacks.size(); ++i) {
        psi[i] = slacks[i] < 1.0 ? 1.0 : std::exp(-mu * slacks[i]);
    }
    return psi;
}

double minority_membership(double slack, double mu) {
    if (slack >= 1.0) {
        return 0.0;
    }
    return 2.0 / (std::exp(mu * slack) + 1.0);
}

MembershipVector minority_membership(std::span<const double> slacks, double mu) {
    check_mu(mu);
    check_slacks(slacks);
    MembershipVector psi(slacks.size());
    for (std::size_t i = 0; i < slacks.size(); ++i) {
        psi[i] = minority_membership(slacks[i], mu);
    }
    return psi;
}

double majority_membership(double slack, const MembershipParams& params) {
    // (F- U T-) restricted to slack < a keeps full weight; the boundary decays.
    if (slack < params.a()) {
        return 1.0;
    }
    return std::exp(-params.mu() * slack);
}

MembershipVector majority_membership(std::span<const double> slacks, const MembershipParams& params) {
    check_slacks(slacks);
    MembershipVector psi(slacks.size());
    for (std::size_t i = 0; i < slacks.size(); ++i) {
        psi[i] = majority_membership(slacks[i], params);
    }
    return psi;
}

MembershipVector class_memberships(std::span<const double> slacks, std::span<const int> labels,
                                   const MembershipParams& params) {
    if (slacks.size() != labels.size()) {
        throw Error(Errc::LengthMismatch, "slacks and labels differ in length");
    }
    check_slacks(slacks);
    MembershipVector psi(slacks.size());
    for (std::size_t i = 0; i < slacks.size(); ++i) {
        psi[i] = labels[i] > 0 ? minority_membership(slacks[i], params.mu()) : majority_membership(slacks[i], params);
    }
    return psi;
}

} // namespace slackfuzz
