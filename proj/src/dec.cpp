#include "slackfuzz/dec.hpp"

#include "slackfuzz/error.hpp"

#include <cmath>

namespace slackfuzz {

SampleCosts build_dec_costs(const Dataset& ds, double zeta) {
    if (!(zeta > 0.0) || !std::isfinite(zeta)) {
        throw Error(Errc::InvalidArgument, "zeta must be positive");
    }
    const double ir = class_stats(ds).imbalance_ratio;
    const double minority_cost = zeta * ir;
    std::vector<double> costs(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        costs[i] = ds.label(i) > 0 ? minority_cost : zeta;
    }
    return SampleCosts(std::move(costs));
}

SvmModel fit_dec(const Dataset& ds, const DecParams& params, const SolverConfig& config, const GramMatrix* gram) {
    return fit_weighted_svm(ds, build_dec_costs(ds, params.zeta), params.kernel, config, gram);
}

} // namespace slackfuzz
