#pragma once

// Randomized checks shared by the unit tests and the acceptance runner.

#include "oracles.hpp"
#include "slackfuzz/error.hpp"
#include "slackfuzz/isffsvm.hpp"
#include "slackfuzz/membership.hpp"
#include "slackfuzz/metrics.hpp"
#include "slackfuzz/svm.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>
#include <string>

namespace props {

struct Outcome {
    std::size_t checked = 0;
    std::size_t failed = 0;
    std::string first_failure;

    void fail(const std::string& what) {
        if (failed++ == 0) {
            first_failure = what;
        }
    }
    bool ok() const { return failed == 0 && checked > 0; }
};

inline bool same_bits(double a, double b) {
    return std::memcmp(&a, &b, sizeof a) == 0;
}

inline bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!same_bits(a[i], b[i])) {
            return false;
        }
    }
    return true;
}

/// fit_isffsvm(a = 2) against fit_sffsvm and against memberships and costs
/// rebuilt from the DEC slacks with the original slack-factor rules.
inline Outcome sffsvm_reduction(std::size_t cases, std::uint64_t seed) {
    using namespace slackfuzz;
    Outcome out;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> log10u(-1.0, 1.5);
    for (std::size_t c = 0; c < cases; ++c) {
        const std::size_t n = 8 + rng() % 53;
        const std::size_t d = 1 + rng() % 5;
        const Dataset ds = oracle::random_dataset(rng, n, d);
        const double zeta = std::pow(10.0, log10u(rng));
        const double mu = std::pow(10.0, log10u(rng) - 0.5);
        const KernelSpec k = rng() % 3 == 0 ? KernelSpec::linear() : KernelSpec::rbf(std::pow(10.0, log10u(rng) - 0.5));
        const std::string tag = "case " + std::to_string(c);
        ++out.checked;

        std::string err_a, err_b;
        IsffsvmModel a, b;
        try {
            a = fit_isffsvm(ds, HyperParams{zeta, mu, 2.0, k});
        } catch (const Error& e) {
            err_a = e.what();
        }
        try {
            b = fit_sffsvm(ds, zeta, mu, k);
        } catch (const Error& e) {
            err_b = e.what();
        }
        if (err_a != err_b) {
            out.fail(tag + ": error mismatch '" + err_a + "' vs '" + err_b + "'");
            continue;
        }
        if (!err_a.empty()) {
            continue;
        }
        if (!same_bits(a.memberships, b.memberships) || !same_bits(a.stage2_costs.values(), b.stage2_costs.values())) {
            out.fail(tag + ": isffsvm(a=2) and sffsvm differ");
            continue;
        }
        // Independent reconstruction from the stage-one model.
        const auto xi = compute_slack_factors(a.dec_model, ds);
        const double ir = double(n - std::count(ds.labels().begin(), ds.labels().end(), 1)) /
                          double(std::count(ds.labels().begin(), ds.labels().end(), 1));
        for (std::size_t i = 0; i < n; ++i) {
            const bool minority = ds.label(i) > 0;
            const double psi = minority ? oracle::minority_psi(xi[i], mu) : (xi[i] < 2.0 ? 1.0 : std::exp(-mu * xi[i]));
            const double cost = (minority ? zeta * ir : zeta) * psi;
            if (!same_bits(psi, a.memberships[i]) || !same_bits(cost, a.stage2_costs[i])) {
                out.fail(tag + ": sample " + std::to_string(i) + " disagrees with the slack-factor rules");
                break;
            }
        }
        if (a.final_model.alpha != b.final_model.alpha || a.final_model.bias != b.final_model.bias) {
            out.fail(tag + ": final models differ");
        }
    }
    return out;
}

/// KKT violation of a fit, in the primal form, recomputed with the oracle kernel.
inline double kkt_violation(const slackfuzz::Dataset& ds, const std::vector<double>& costs,
                            const slackfuzz::SvmModel& m) {
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
        if (m.alpha[i] <= 0.0) {
            worst = std::max(worst, 1.0 - margin);
        } else if (m.alpha[i] >= costs[i]) {
            worst = std::max(worst, margin - 1.0);
        } else {
            worst = std::max(worst, std::abs(margin - 1.0));
        }
    }
    return worst;
}

struct SolverOutcome : Outcome {
    double worst_relative_gap = 0.0;
    double worst_kkt = 0.0;
};

inline SolverOutcome solver_vs_oracle(std::size_t problems, std::uint64_t seed, double rel_tol) {
    using namespace slackfuzz;
    SolverOutcome out;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> log10u(-1.0, 2.0);
    const SolverConfig cfg;
    for (std::size_t p = 0; p < problems; ++p) {
        const std::size_t n = 4 + rng() % 17;
        const std::size_t d = 1 + rng() % 4;
        const Dataset ds = oracle::random_dataset(rng, n, d);
        const KernelSpec k = p % 2 ? KernelSpec::rbf(std::pow(10.0, log10u(rng) - 1.0)) : KernelSpec::linear();
        std::vector<double> costs(n);
        for (auto& c : costs) {
            c = std::pow(10.0, log10u(rng));
        }
        const std::string tag = "problem " + std::to_string(p);
        ++out.checked;
        const SvmModel m = fit_weighted_svm(ds, SampleCosts(costs), k, cfg);
        const auto brute = oracle::solve_dual(ds, costs, k);
        const double gap = std::abs(m.dual_objective - brute.objective) / std::max(1.0, std::abs(brute.objective));
        out.worst_relative_gap = std::max(out.worst_relative_gap, gap);
        if (gap > rel_tol) {
            out.fail(tag + ": dual objective gap " + std::to_string(gap));
        }
        if (m.converged) {
            const double v = kkt_violation(ds, costs, m);
            out.worst_kkt = std::max(out.worst_kkt, v);
            if (v > cfg.kkt_tolerance) {
                out.fail(tag + ": KKT violation " + std::to_string(v));
            }
        }
    }
    return out;
}

/// f1/mcc against recounted formulas (bit-exact) and auc_pr against the
/// exhaustive threshold oracle (1e-12), on inputs of at most `max_n` samples.
inline Outcome metric_oracles(std::size_t trials, std::size_t max_n, std::uint64_t seed) {
    using namespace slackfuzz;
    Outcome out;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t n = 1 + rng() % max_n;
        std::vector<int> truth(n), pred(n);
        std::vector<double> scores(n);
        const bool coarse = rng() % 2 == 0;
        for (std::size_t i = 0; i < n; ++i) {
            truth[i] = rng() % 2 ? 1 : -1;
            scores[i] = coarse ? double(rng() % 4) : u(rng);
            pred[i] = rng() % 2 ? 1 : -1;
        }
        const std::string tag = "trial " + std::to_string(t);
        ++out.checked;
        const oracle::Counts c = oracle::recount(truth, pred);
        const ConfusionMatrix cm = confusion_matrix(truth, pred);
        if (cm.tp != c.tp || cm.fp != c.fp || cm.fn != c.fn || cm.tn != c.tn) {
            out.fail(tag + ": confusion counts differ");
        }
        if (!same_bits(f1_score(cm), oracle::f1(c))) {
            out.fail(tag + ": f1 differs");
        }
        if (!same_bits(mcc(cm), oracle::mcc(c))) {
            out.fail(tag + ": mcc differs");
        }
        const bool any_positive = std::count(truth.begin(), truth.end(), 1) > 0;
        if (any_positive) {
            const double ap = auc_pr(truth, scores);
            const double brute = oracle::average_precision(truth, scores);
            if (std::abs(ap - brute) > 1e-12) {
                out.fail(tag + ": auc_pr " + std::to_string(ap) + " vs " + std::to_string(brute));
            }
        } else {
            try {
                auc_pr(truth, scores);
                out.fail(tag + ": auc_pr without positives did not throw");
            } catch (const Error& e) {
                if (e.code() != Errc::NoPositives) {
                    out.fail(tag + ": wrong error code");
                }
            }
        }
    }
    return out;
}

/// Bounds, monotonicity in slack and location, and the fixed points of both
/// membership rules over random (slack, mu, a) triples.
inline Outcome membership_properties(std::size_t triples, std::uint64_t seed) {
    using namespace slackfuzz;
    Outcome out;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> slack(0.0, 5.0);
    std::uniform_real_distribution<double> log_mu(-2.0, 1.5);
    std::uniform_real_distribution<double> loc(MembershipParams::min_location, MembershipParams::max_location);
    for (std::size_t t = 0; t < triples; ++t) {
        double xi = slack(rng);
        if (t % 50 == 0) {
            xi = 1.0;
        }
        const double mu = std::pow(10.0, log_mu(rng));
        const double a = t % 7 == 0 ? 0.1 * double(11 + rng() % 10) : loc(rng);
        const double xi2 = xi + slack(rng) * 0.5;
        const double a_lo = std::max(MembershipParams::min_location, a - 0.3 * slack(rng) / 5.0);
        const MembershipParams p(mu, a);
        const MembershipParams p_lo(mu, a_lo);
        const std::string tag = "triple " + std::to_string(t);
        ++out.checked;

        const double plus = minority_membership(xi, mu);
        const double minus = majority_membership(xi, p);
        if (!(plus >= 0.0 && plus <= 1.0 && minus >= 0.0 && minus <= 1.0)) {
            out.fail(tag + ": membership outside [0, 1]");
        }
        if (minority_membership(xi2, mu) > plus || majority_membership(xi2, p) > minus) {
            out.fail(tag + ": membership increased with slack");
        }
        if (majority_membership(xi, p_lo) > minus) {
            out.fail(tag + ": smaller a increased a majority membership");
        }
        if (minority_membership(0.0, mu) != 1.0) {
            out.fail(tag + ": minority membership at zero slack is not 1");
        }
        const double below = a * (slack(rng) / 5.0) * (1.0 - 1e-12);
        if (majority_membership(below, p) != 1.0) {
            out.fail(tag + ": majority membership below a is not 1");
        }
    }
    return out;
}

} // namespace props
