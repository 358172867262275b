#include "slackfuzz/svm.hpp"

#include "slackfuzz/error.hpp"
#include "text.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <list>

namespace slackfuzz {

KernelSpec KernelSpec::rbf(double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw Error(Errc::InvalidArgument, "rbf gamma must be positive");
    }
    return {Kind::rbf, gamma};
}

double KernelSpec::operator()(std::span<const double> a, std::span<const double> b) const {
    if (kind == Kind::linear) {
        double dot = 0.0;
        for (std::size_t j = 0; j < a.size(); ++j) {
            dot += a[j] * b[j];
        }
        return dot;
    }
    double sq = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double diff = a[j] - b[j];
        sq += diff * diff;
    }
    return std::exp(-gamma * sq);
}

std::string to_string(const KernelSpec& kernel) {
    if (kernel.kind == KernelSpec::Kind::linear) {
        return "linear";
    }
    char buf[48];
    std::snprintf(buf, sizeof(buf), "rbf:%g", kernel.gamma);
    return buf;
}

KernelSpec parse_kernel(std::string_view text) {
    const std::string s = detail::lower(detail::trim(text));
    if (s == "linear") {
        return KernelSpec::linear();
    }
    if (s.rfind("rbf", 0) == 0) {
        std::string_view rest = std::string_view(s).substr(3);
        if (!rest.empty() && (rest.front() == ':' || rest.front() == '=')) {
            rest.remove_prefix(1);
        }
        if (rest.empty()) {
            return KernelSpec::rbf(1.0);
        }
        const auto gamma = detail::parse_double(rest);
        if (!gamma) {
            throw Error(Errc::InvalidArgument, "bad rbf gamma in '" + s + "'");
        }
        return KernelSpec::rbf(*gamma);
    }
    throw Error(Errc::InvalidArgument, "unknown kernel '" + s + "'");
}

SampleCosts::SampleCosts(std::vector<double> values) : values_(std::move(values)) {
    for (const double c : values_) {
        if (!(c >= 0.0) || !std::isfinite(c)) {
            throw Error(Errc::InvalidArgument, "sample costs must be finite and non-negative");
        }
    }
}

GramMatrix::GramMatrix(const Dataset& ds, const KernelSpec& kernel)
    : n_(ds.size()), kernel_(kernel), values_(ds.size() * ds.size()) {
    for (std::size_t i = 0; i < n_; ++i) {
        values_[i * n_ + i] = kernel(ds.row(i), ds.row(i));
        for (std::size_t j = 0; j < i; ++j) {
            const double k = kernel(ds.row(i), ds.row(j));
            values_[i * n_ + j] = k;
            values_[j * n_ + i] = k;
        }
    }
}

std::vector<double> SvmModel::linear_weights() const {
    std::vector<double> w(dim(), 0.0);
    for (std::size_t s = 0; s < dual_coefficients.size(); ++s) {
        const auto sv = support_vectors.row(s);
        for (std::size_t j = 0; j < w.size(); ++j) {
            w[j] += dual_coefficients[s] * sv[j];
        }
    }
    return w;
}

namespace {

// Kernel rows restricted to the active samples, with LRU eviction.
class KernelRows {
public:
    KernelRows(const Dataset& ds, const KernelSpec& kernel, const GramMatrix* gram,
               const std::vector<std::size_t>& active, std::size_t budget_bytes)
        : ds_(ds), kernel_(kernel), gram_(gram), active_(active), n_(active.size()) {
        identity_ = gram_ != nullptr && n_ == gram_->size();
        for (std::size_t i = 0; identity_ && i < n_; ++i) {
            identity_ = active_[i] == i;
        }
        const std::size_t row_bytes = std::max<std::size_t>(1, n_ * sizeof(double));
        capacity_ = std::max<std::size_t>(2, budget_bytes / row_bytes);
        rows_.resize(n_);
        where_.resize(n_);
        cached_.assign(n_, false);
    }

    const double* get(std::size_t i) {
        if (identity_) {
            return gram_->row(i);
        }
        if (cached_[i]) {
            lru_.splice(lru_.begin(), lru_, where_[i]);
            return rows_[i].data();
        }
        if (lru_.size() >= capacity_) {
            const std::size_t victim = lru_.back();
            lru_.pop_back();
            cached_[victim] = false;
            std::vector<double>().swap(rows_[victim]);
        }
        auto& row = rows_[i];
        row.resize(n_);
        const std::size_t src = active_[i];
        if (gram_ != nullptr) {
            const double* g = gram_->row(src);
            for (std::size_t j = 0; j < n_; ++j) {
                row[j] = g[active_[j]];
            }
        } else {
            const auto xi = ds_.row(src);
            for (std::size_t j = 0; j < n_; ++j) {
                row[j] = kernel_(xi, ds_.row(active_[j]));
            }
        }
        lru_.push_front(i);
        where_[i] = lru_.begin();
        cached_[i] = true;
        return row.data();
    }

    double diag(std::size_t i) const {
        const std::size_t src = active_[i];
        return gram_ != nullptr ? (*gram_)(src, src) : kernel_(ds_.row(src), ds_.row(src));
    }

private:
    const Dataset& ds_;
    KernelSpec kernel_;
    const GramMatrix* gram_;
    const std::vector<std::size_t>& active_;
    std::size_t n_;
    bool identity_ = false;
    std::size_t capacity_ = 2;
    std::vector<std::vector<double>> rows_;
    std::vector<std::list<std::size_t>::iterator> where_;
    std::vector<bool> cached_;
    std::list<std::size_t> lru_;
};

constexpr double kTau = 1e-12;

} // namespace

SvmModel fit_weighted_svm(const Dataset& ds, const SampleCosts& costs, const KernelSpec& kernel,
                          const SolverConfig& config, const GramMatrix* gram) {
    if (costs.size() != ds.size()) {
        throw Error(Errc::LengthMismatch, "cost vector length differs from the dataset size");
    }
    if (!(config.kkt_tolerance > 0.0)) {
        throw Error(Errc::InvalidArgument, "kkt_tolerance must be positive");
    }
    if (gram != nullptr && (gram->size() != ds.size() || !(gram->kernel() == kernel))) {
        throw Error(Errc::InvalidArgument, "Gram matrix does not match the dataset or kernel");
    }
    if (kernel.kind == KernelSpec::Kind::rbf && !(kernel.gamma > 0.0)) {
        throw Error(Errc::InvalidArgument, "rbf gamma must be positive");
    }

    std::vector<std::size_t> active;
    bool pos_cost = false;
    bool neg_cost = false;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (costs[i] > 0.0) {
            active.push_back(i);
            (ds.label(i) > 0 ? pos_cost : neg_cost) = true;
        }
    }
    if (!pos_cost || !neg_cost) {
        throw Error(Errc::AllZeroCostClass, std::string("every ") + (pos_cost ? "majority" : "minority") +
                                                " sample has zero cost");
    }

    const std::size_t n = active.size();
    std::vector<double> y(n);
    std::vector<double> c(n);
    std::vector<double> qd(n);
    KernelRows rows(ds, kernel, gram, active, config.cache_budget);
    for (std::size_t t = 0; t < n; ++t) {
        y[t] = ds.label(active[t]) > 0 ? 1.0 : -1.0;
        c[t] = costs[active[t]];
        qd[t] = rows.diag(t);
    }
    std::vector<double> alpha(n, 0.0);
    std::vector<double> grad(n, -1.0); // gradient of 1/2 a'Qa - e'a

    const double eps = config.kkt_tolerance;
    const std::size_t max_iter = std::max<std::size_t>(1, config.max_passes) * std::max<std::size_t>(n, 1);
    std::size_t iter = 0;
    bool converged = false;

    auto in_up = [&](std::size_t t) { return y[t] > 0 ? alpha[t] < c[t] : alpha[t] > 0.0; };
    auto in_low = [&](std::size_t t) { return y[t] > 0 ? alpha[t] > 0.0 : alpha[t] < c[t]; };

    while (iter < max_iter) {
        double gmax = -std::numeric_limits<double>::infinity();
        double gmin = std::numeric_limits<double>::infinity();
        std::size_t i = n;
        std::size_t j = n;
        for (std::size_t t = 0; t < n; ++t) {
            const double v = -y[t] * grad[t];
            if (in_up(t) && v > gmax) {
                gmax = v;
                i = t;
            }
            if (in_low(t) && v < gmin) {
                gmin = v;
                j = t;
            }
        }
        if (i == n || j == n || gmax - gmin < eps) {
            converged = true;
            break;
        }
        ++iter;

        const double* ki = rows.get(i);
        const double* kj = rows.get(j);
        const double old_i = alpha[i];
        const double old_j = alpha[j];
        const double ci = c[i];
        const double cj = c[j];
        if (y[i] != y[j]) {
            double quad = qd[i] + qd[j] - 2.0 * ki[j];
            if (quad <= 0.0) {
                quad = kTau;
            }
            const double delta = (-grad[i] - grad[j]) / quad;
            const double diff = alpha[i] - alpha[j];
            alpha[i] += delta;
            alpha[j] += delta;
            if (diff > 0.0) {
                if (alpha[j] < 0.0) {
                    alpha[j] = 0.0;
                    alpha[i] = diff;
                }
            } else if (alpha[i] < 0.0) {
                alpha[i] = 0.0;
                alpha[j] = -diff;
            }
            if (diff > ci - cj) {
                if (alpha[i] > ci) {
                    alpha[i] = ci;
                    alpha[j] = ci - diff;
                }
            } else if (alpha[j] > cj) {
                alpha[j] = cj;
                alpha[i] = cj + diff;
            }
        } else {
            double quad = qd[i] + qd[j] - 2.0 * ki[j];
            if (quad <= 0.0) {
                quad = kTau;
            }
            const double delta = (grad[i] - grad[j]) / quad;
            const double sum = alpha[i] + alpha[j];
            alpha[i] -= delta;
            alpha[j] += delta;
            if (sum > ci) {
                if (alpha[i] > ci) {
                    alpha[i] = ci;
                    alpha[j] = sum - ci;
                }
            } else if (alpha[j] < 0.0) {
                alpha[j] = 0.0;
                alpha[i] = sum;
            }
            if (sum > cj) {
                if (alpha[j] > cj) {
                    alpha[j] = cj;
                    alpha[i] = sum - cj;
                }
            } else if (alpha[i] < 0.0) {
                alpha[i] = 0.0;
                alpha[j] = sum;
            }
        }
        alpha[i] = std::clamp(alpha[i], 0.0, ci);
        alpha[j] = std::clamp(alpha[j], 0.0, cj);

        // Q_ti = y_t y_i K_ti
        const double di = (alpha[i] - old_i) * y[i];
        const double dj = (alpha[j] - old_j) * y[j];
        for (std::size_t t = 0; t < n; ++t) {
            grad[t] += y[t] * (ki[t] * di + kj[t] * dj);
        }
    }

    // Bias: mean over free vectors, else the midpoint of the feasible interval.
    double free_sum = 0.0;
    std::size_t free_count = 0;
    double lb = -std::numeric_limits<double>::infinity();
    double ub = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < n; ++t) {
        const double v = -y[t] * grad[t];
        if (alpha[t] > 0.0 && alpha[t] < c[t]) {
            free_sum += v;
            ++free_count;
        } else {
            if (in_up(t)) {
                lb = std::max(lb, v);
            }
            if (in_low(t)) {
                ub = std::min(ub, v);
            }
        }
    }
    double bias = 0.0;
    if (free_count > 0) {
        bias = free_sum / static_cast<double>(free_count);
    } else if (std::isfinite(lb) && std::isfinite(ub)) {
        bias = 0.5 * (lb + ub);
    } else if (std::isfinite(lb)) {
        bias = lb;
    } else if (std::isfinite(ub)) {
        bias = ub;
    }

    SvmModel model;
    model.kernel = kernel;
    model.bias = bias;
    model.iterations = iter;
    model.converged = converged;
    model.alpha.assign(ds.size(), 0.0);
    double alpha_sum = 0.0;
    double quad_form = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        model.alpha[active[t]] = alpha[t];
        alpha_sum += alpha[t];
        quad_form += alpha[t] * (grad[t] + 1.0);
    }
    model.dual_objective = alpha_sum - 0.5 * quad_form;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (model.alpha[i] > 0.0) {
            model.support_indices.push_back(i);
        }
    }
    model.support_vectors = Matrix(model.support_indices.size(), ds.dim());
    model.dual_coefficients.reserve(model.support_indices.size());
    for (std::size_t s = 0; s < model.support_indices.size(); ++s) {
        const std::size_t src = model.support_indices[s];
        const auto row = ds.row(src);
        std::copy(row.begin(), row.end(), model.support_vectors.row(s).begin());
        model.dual_coefficients.push_back(model.alpha[src] * static_cast<double>(ds.label(src)));
    }
    return model;
}

double decision_function(const SvmModel& model, std::span<const double> x) {
    if (x.size() != model.dim()) {
        throw Error(Errc::DimensionMismatch, "expected " + std::to_string(model.dim()) + " features, got " +
                                                 std::to_string(x.size()));
    }
    double f = model.bias;
    for (std::size_t s = 0; s < model.dual_coefficients.size(); ++s) {
        f += model.dual_coefficients[s] * model.kernel(model.support_vectors.row(s), x);
    }
    return f;
}

std::vector<double> decision_values(const SvmModel& model, const Matrix& x) {
    std::vector<double> out;
    out.reserve(x.rows);
    for (std::size_t r = 0; r < x.rows; ++r) {
        out.push_back(decision_function(model, x.row(r)));
    }
    return out;
}

std::vector<double> decision_values(const SvmModel& model, const Matrix& cross, std::size_t train_size) {
    if (cross.cols != train_size || model.alpha.size() != train_size) {
        throw Error(Errc::DimensionMismatch, "cross kernel matrix does not match the training set");
    }
    std::vector<double> out(cross.rows, model.bias);
    for (std::size_t r = 0; r < cross.rows; ++r) {
        const auto k = cross.row(r);
        double f = model.bias;
        for (std::size_t s = 0; s < model.support_indices.size(); ++s) {
            f += model.dual_coefficients[s] * k[model.support_indices[s]];
        }
        out[r] = f;
    }
    return out;
}

std::vector<double> compute_slack_factors(const SvmModel& model, const Dataset& ds) {
    if (ds.dim() != model.dim()) {
        throw Error(Errc::DimensionMismatch, "dataset has " + std::to_string(ds.dim()) + " features, model expects " +
                                                 std::to_string(model.dim()));
    }
    std::vector<double> slack(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const double margin = static_cast<double>(ds.label(i)) * decision_function(model, ds.row(i));
        slack[i] = std::max(0.0, 1.0 - margin);
    }
    return slack;
}

double dual_objective(const Dataset& ds, std::span<const double> alpha, const KernelSpec& kernel) {
    if (alpha.size() != ds.size()) {
        throw Error(Errc::LengthMismatch, "alpha length differs from the dataset size");
    }
    double linear = 0.0;
    double quad = 0.0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        linear += alpha[i];
        if (alpha[i] == 0.0) {
            continue;
        }
        for (std::size_t j = 0; j < ds.size(); ++j) {
            if (alpha[j] != 0.0) {
                quad += alpha[i] * alpha[j] * ds.label(i) * ds.label(j) * kernel(ds.row(i), ds.row(j));
            }
        }
    }
    return linear - 0.5 * quad;
}

} // namespace slackfuzz
