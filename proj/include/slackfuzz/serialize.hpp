#pragma once

#include "slackfuzz/dataset.hpp"
#include "slackfuzz/isffsvm.hpp"
#include "slackfuzz/svm.hpp"

#include <string>
#include <string_view>

namespace slackfuzz {

/// A trained model together with the preprocessing needed to score raw rows.
struct SavedModel {
    ModelKind kind = ModelKind::isffsvm;
    HyperParams params;
    Scaler scaler;
    SvmModel model;
    std::string positive_class;
    std::string negative_class;

    /// Standardizes `x` and evaluates the decision function.
    double score(std::span<const double> x) const;
};

/// JSON text; doubles round-trip exactly. Training diagnostics are not stored.
std::string model_to_json(const SavedModel& saved);
SavedModel model_from_json(std::string_view text);

/// Full two-stage model including memberships, stage-two costs and solver
/// diagnostics; used to compare fits for equality.
std::string isffsvm_to_json(const IsffsvmModel& model);

void save_model(const SavedModel& saved, const std::string& path);
SavedModel load_model(const std::string& path);

} // namespace slackfuzz
