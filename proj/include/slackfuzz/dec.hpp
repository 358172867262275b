#pragma once

#include "slackfuzz/dataset.hpp"
#include "slackfuzz/svm.hpp"

namespace slackfuzz {

/// Different-error-cost SVM: minority samples cost zeta * IR, majority samples zeta.
struct DecParams {
    double zeta = 1.0;
    KernelSpec kernel;
};

/// C_i = zeta * IR for y_i = +1 and zeta for y_i = -1, IR taken from `ds`.
SampleCosts build_dec_costs(const Dataset& ds, double zeta);

SvmModel fit_dec(const Dataset& ds, const DecParams& params, const SolverConfig& config = {},
                 const GramMatrix* gram = nullptr);

} // namespace slackfuzz
