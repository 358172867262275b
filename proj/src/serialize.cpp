#include "slackfuzz/serialize.hpp"

#include "io.hpp"
#include "slackfuzz/error.hpp"

#include <json.hpp>

namespace slackfuzz {

using nlohmann::json;

namespace {

constexpr int format_version = 1;

json kernel_json(const KernelSpec& k) {
    if (k.kind == KernelSpec::Kind::linear) {
        return {{"kind", "linear"}};
    }
    return {{"kind", "rbf"}, {"gamma", k.gamma}};
}

KernelSpec kernel_from(const json& j) {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "linear") {
        return KernelSpec::linear();
    }
    if (kind == "rbf") {
        return KernelSpec::rbf(j.at("gamma").get<double>());
    }
    throw Error(Errc::InvalidArgument, "unknown kernel kind '" + kind + "'");
}

json svm_json(const SvmModel& m) {
    json sv = json::array();
    for (std::size_t i = 0; i < m.support_vectors.rows; ++i) {
        const auto r = m.support_vectors.row(i);
        sv.push_back(std::vector<double>(r.begin(), r.end()));
    }
    return {{"kernel", kernel_json(m.kernel)},
            {"dim", m.dim()},
            {"bias", m.bias},
            {"dual_coefficients", m.dual_coefficients},
            {"support_vectors", sv}};
}

} // namespace

double SavedModel::score(std::span<const double> x) const {
    if (x.size() != model.dim()) {
        throw Error(Errc::DimensionMismatch, "expected " + std::to_string(model.dim()) + " features, got " +
                                                 std::to_string(x.size()));
    }
    std::vector<double> row(x.begin(), x.end());
    scaler.apply_row(row);
    return decision_function(model, row);
}

std::string model_to_json(const SavedModel& saved) {
    const json j = {
        {"format_version", format_version},
        {"model", std::string(model_kind_name(saved.kind))},
        {"params",
         {{"zeta", saved.params.zeta}, {"mu", saved.params.mu}, {"a", saved.params.a},
          {"kernel", kernel_json(saved.params.kernel)}}},
        {"classes", {{"positive", saved.positive_class}, {"negative", saved.negative_class}}},
        {"scaler", {{"mean", saved.scaler.mean}, {"scale", saved.scaler.scale}}},
        {"svm", svm_json(saved.model)},
    };
    return j.dump(1) + "\n";
}

std::string isffsvm_to_json(const IsffsvmModel& model) {
    auto full = [](const SvmModel& m) {
        json j = svm_json(m);
        j["alpha"] = m.alpha;
        j["support_indices"] = m.support_indices;
        j["dual_objective"] = m.dual_objective;
        j["iterations"] = m.iterations;
        j["converged"] = m.converged;
        return j;
    };
    const HyperParams& hp = model.hyperparams;
    const json j = {
        {"params", {{"zeta", hp.zeta}, {"mu", hp.mu}, {"a", hp.a}, {"kernel", kernel_json(hp.kernel)}}},
        {"imbalance_ratio", model.imbalance_ratio},
        {"memberships", model.memberships},
        {"stage2_costs", model.stage2_costs.values()},
        {"excluded", model.excluded},
        {"dec_model", full(model.dec_model)},
        {"final_model", full(model.final_model)},
    };
    return j.dump(1) + "\n";
}

SavedModel model_from_json(std::string_view text) {
    try {
        const json j = json::parse(text);
        if (j.at("format_version").get<int>() != format_version) {
            throw Error(Errc::InvalidArgument, "unsupported model format version");
        }
        SavedModel saved;
        saved.kind = parse_model_kind(j.at("model").get<std::string>());
        const auto& p = j.at("params");
        saved.params.zeta = p.at("zeta").get<double>();
        saved.params.mu = p.at("mu").get<double>();
        saved.params.a = p.at("a").get<double>();
        saved.params.kernel = kernel_from(p.at("kernel"));
        saved.positive_class = j.at("classes").at("positive").get<std::string>();
        saved.negative_class = j.at("classes").at("negative").get<std::string>();
        saved.scaler.mean = j.at("scaler").at("mean").get<std::vector<double>>();
        saved.scaler.scale = j.at("scaler").at("scale").get<std::vector<double>>();

        const auto& s = j.at("svm");
        SvmModel& m = saved.model;
        m.kernel = kernel_from(s.at("kernel"));
        m.bias = s.at("bias").get<double>();
        m.dual_coefficients = s.at("dual_coefficients").get<std::vector<double>>();
        const auto dim = s.at("dim").get<std::size_t>();
        const auto& rows = s.at("support_vectors");
        if (rows.size() != m.dual_coefficients.size()) {
            throw Error(Errc::LengthMismatch, "support vectors and coefficients differ in count");
        }
        m.support_vectors = Matrix(rows.size(), dim);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto r = rows[i].get<std::vector<double>>();
            if (r.size() != dim) {
                throw Error(Errc::DimensionMismatch, "support vector has wrong dimension");
            }
            std::copy(r.begin(), r.end(), m.support_vectors.row(i).begin());
        }
        if (saved.scaler.mean.size() != dim || saved.scaler.scale.size() != dim) {
            throw Error(Errc::DimensionMismatch, "scaler dimension does not match the model");
        }
        return saved;
    } catch (const json::exception& e) {
        throw Error(Errc::InvalidArgument, std::string("malformed model file: ") + e.what());
    }
}

void save_model(const SavedModel& saved, const std::string& path) {
    detail::write_file(path, model_to_json(saved));
}

SavedModel load_model(const std::string& path) {
    return model_from_json(detail::read_file(path));
}

} // namespace slackfuzz
