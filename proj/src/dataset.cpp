#include "slackfuzz/dataset.hpp"

#include "io.hpp"
#include "random.hpp"
#include "slackfuzz/error.hpp"
#include "text.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <mutex>
#include <numbers>

namespace slackfuzz {

namespace {

std::mutex warning_mutex;
std::function<void(std::string_view)> warning_handler = [](std::string_view msg) {
    std::cerr << "warning: " << msg << '\n';
};

void warn(const std::string& msg) {
    std::lock_guard lock(warning_mutex);
    if (warning_handler) {
        warning_handler(msg);
    }
}

struct Attribute {
    std::string name;
    bool nominal = false;
};

// `@attribute Name real [0, 1]`, `@attribute Name{a,b}`, `@attribute 'Odd name' integer`.
Attribute parse_attribute(std::string_view rest) {
    rest = detail::trim(rest);
    Attribute attr;
    std::size_t pos = 0;
    if (!rest.empty() && (rest.front() == '\'' || rest.front() == '"')) {
        const char quote = rest.front();
        const std::size_t close = rest.find(quote, 1);
        if (close == std::string_view::npos) {
            throw Error(Errc::MalformedHeader, "unterminated attribute name");
        }
        attr.name = std::string(rest.substr(1, close - 1));
        pos = close + 1;
    } else {
        while (pos < rest.size() && !std::isspace(static_cast<unsigned char>(rest[pos])) && rest[pos] != '{' &&
               rest[pos] != '[') {
            ++pos;
        }
        attr.name = std::string(rest.substr(0, pos));
    }
    if (attr.name.empty()) {
        throw Error(Errc::MalformedHeader, "attribute without a name");
    }
    const std::string_view type = detail::trim(rest.substr(pos));
    if (type.empty()) {
        throw Error(Errc::MalformedHeader, "attribute '" + attr.name + "' has no type");
    }
    if (type.front() == '{') {
        attr.nominal = true;
    } else {
        const std::string kind = detail::lower(detail::split(type, ' ').front());
        const std::string base = kind.substr(0, kind.find('['));
        if (base != "real" && base != "integer" && base != "numeric") {
            attr.nominal = true;
        }
    }
    return attr;
}

std::vector<std::string> parse_name_list(std::string_view rest) {
    std::vector<std::string> names;
    for (auto part : detail::split(rest, ',')) {
        part = detail::trim(part);
        if (part.size() >= 2 && (part.front() == '\'' || part.front() == '"')) {
            part = part.substr(1, part.size() - 2);
        }
        if (!part.empty()) {
            names.emplace_back(part);
        }
    }
    return names;
}

// Maps two label strings onto +1/-1 with the less frequent class as +1.
// Ties keep `preferred_positive` (when present) as +1.
std::vector<int> encode_by_count(const std::vector<std::string>& raw, const std::string& preferred_positive,
                                 std::string& positive_name, std::string& negative_name, const std::string& ds_name) {
    std::map<std::string, std::size_t> counts;
    std::vector<std::string> order;
    for (const auto& label : raw) {
        if (counts[label]++ == 0) {
            order.push_back(label);
        }
    }
    if (counts.size() == 1) {
        throw Error(Errc::SingleClass, "all rows of '" + ds_name + "' share label '" + order.front() + "'");
    }
    if (counts.size() > 2) {
        throw Error(Errc::MoreThanTwoClasses, "'" + ds_name + "' has " + std::to_string(counts.size()) + " classes");
    }
    const std::string& a = order[0];
    const std::string& b = order[1];
    if (counts[a] < counts[b]) {
        positive_name = a;
        negative_name = b;
    } else if (counts[b] < counts[a]) {
        positive_name = b;
        negative_name = a;
    } else {
        positive_name = (b == preferred_positive) ? b : a;
        negative_name = (positive_name == a) ? b : a;
    }
    if (!preferred_positive.empty() && counts.count(preferred_positive) && positive_name != preferred_positive) {
        warn("'" + ds_name + "': class '" + preferred_positive + "' is the majority; relabelling '" + positive_name +
             "' as the minority (+1)");
    }
    std::vector<int> labels;
    labels.reserve(raw.size());
    for (const auto& label : raw) {
        labels.push_back(label == positive_name ? 1 : -1);
    }
    return labels;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

void set_warning_handler(std::function<void(std::string_view)> handler) {
    std::lock_guard lock(warning_mutex);
    warning_handler = std::move(handler);
}

Dataset::Dataset(Matrix features, std::vector<int> labels, std::string name)
    : features_(std::move(features)), labels_(std::move(labels)), name_(std::move(name)) {
    if (features_.rows != labels_.size()) {
        throw Error(Errc::LengthMismatch, "feature rows and labels differ in length");
    }
    if (features_.values.size() != features_.rows * features_.cols) {
        throw Error(Errc::LengthMismatch, "feature storage does not match its shape");
    }
    if (labels_.size() < 2) {
        throw Error(Errc::EmptyData, "a dataset needs at least two samples");
    }
    if (features_.cols < 1) {
        throw Error(Errc::EmptyData, "a dataset needs at least one feature");
    }
    for (const int y : labels_) {
        if (y != 1 && y != -1) {
            throw Error(Errc::InvalidArgument, "labels must be +1 or -1");
        }
    }
    for (const double v : features_.values) {
        if (!std::isfinite(v)) {
            throw Error(Errc::NonNumericFeature, "feature values must be finite");
        }
    }
}

Dataset parse_keel(std::string_view text, std::string name) {
    std::vector<Attribute> attributes;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    bool in_data = false;
    std::vector<std::vector<std::string_view>> rows;

    for (auto line : detail::split_lines(text)) {
        line = detail::trim(line);
        if (line.empty() || line.front() == '%') {
            continue;
        }
        if (in_data) {
            rows.push_back(detail::split(line, ','));
            continue;
        }
        if (line.front() != '@') {
            throw Error(Errc::MalformedHeader, "unexpected line before @data: " + std::string(line.substr(0, 40)));
        }
        if (detail::istarts_with(line, "@relation")) {
            if (name.empty()) {
                name = std::string(detail::trim(line.substr(9)));
            }
        } else if (detail::istarts_with(line, "@attribute")) {
            attributes.push_back(parse_attribute(line.substr(10)));
        } else if (detail::istarts_with(line, "@inputs")) {
            inputs = parse_name_list(line.substr(7));
        } else if (detail::istarts_with(line, "@input")) {
            inputs = parse_name_list(line.substr(6));
        } else if (detail::istarts_with(line, "@outputs")) {
            outputs = parse_name_list(line.substr(8));
        } else if (detail::istarts_with(line, "@output")) {
            outputs = parse_name_list(line.substr(7));
        } else if (detail::istarts_with(line, "@data")) {
            in_data = true;
        } else {
            throw Error(Errc::MalformedHeader, "unknown directive: " + std::string(line.substr(0, 40)));
        }
    }
    if (!in_data) {
        throw Error(Errc::MalformedHeader, "missing @data section");
    }
    if (attributes.size() < 2) {
        throw Error(Errc::MalformedHeader, "need at least one input and one output attribute");
    }
    auto index_of = [&](const std::string& attr_name) {
        for (std::size_t i = 0; i < attributes.size(); ++i) {
            if (attributes[i].name == attr_name) {
                return i;
            }
        }
        throw Error(Errc::MalformedHeader, "unknown attribute '" + attr_name + "'");
    };
    if (outputs.size() > 1) {
        throw Error(Errc::MalformedHeader, "exactly one output attribute is supported");
    }
    const std::size_t output = outputs.empty() ? attributes.size() - 1 : index_of(outputs.front());
    std::vector<std::size_t> input_cols;
    if (inputs.empty()) {
        for (std::size_t i = 0; i < attributes.size(); ++i) {
            if (i != output) {
                input_cols.push_back(i);
            }
        }
    } else {
        for (const auto& in : inputs) {
            input_cols.push_back(index_of(in));
        }
    }
    for (const std::size_t c : input_cols) {
        if (attributes[c].nominal) {
            throw Error(Errc::NonNumericFeature, "input attribute '" + attributes[c].name + "' is categorical");
        }
    }
    if (rows.empty()) {
        throw Error(Errc::EmptyData, "no rows after @data");
    }

    Matrix features(rows.size(), input_cols.size());
    std::vector<std::string> raw_labels;
    raw_labels.reserve(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& cells = rows[r];
        if (cells.size() != attributes.size()) {
            throw Error(Errc::RaggedRows, "row " + std::to_string(r + 1) + " has " + std::to_string(cells.size()) +
                                              " values, expected " + std::to_string(attributes.size()));
        }
        for (std::size_t j = 0; j < input_cols.size(); ++j) {
            const auto value = detail::parse_double(cells[input_cols[j]]);
            if (!value) {
                throw Error(Errc::NonNumericFeature, "row " + std::to_string(r + 1) + ": '" +
                                                         std::string(detail::trim(cells[input_cols[j]])) +
                                                         "' is not a number");
            }
            features(r, j) = *value;
        }
        raw_labels.emplace_back(detail::trim(cells[output]));
    }
    std::string pos;
    std::string neg;
    auto labels = encode_by_count(raw_labels, "positive", pos, neg, name);
    Dataset ds(std::move(features), std::move(labels), std::move(name));
    ds.positive_class = pos;
    ds.negative_class = neg;
    return ds;
}

Dataset parse_csv(std::string_view text, std::size_t label_column, const std::string& positive_label, std::string name) {
    const auto records = detail::parse_csv_records(text);
    if (records.empty()) {
        throw Error(Errc::EmptyData, "CSV has no header row");
    }
    const std::size_t width = records.front().size();
    if (label_column >= width) {
        throw Error(Errc::InvalidArgument, "label column " + std::to_string(label_column) + " out of range");
    }
    if (records.size() == 1) {
        throw Error(Errc::EmptyData, "CSV has no data rows");
    }
    if (width < 2) {
        throw Error(Errc::EmptyData, "CSV needs at least one feature column");
    }
    const std::size_t n = records.size() - 1;
    Matrix features(n, width - 1);
    std::vector<std::string> raw;
    raw.reserve(n);
    for (std::size_t r = 0; r < n; ++r) {
        const auto& rec = records[r + 1];
        if (rec.size() != width) {
            throw Error(Errc::RaggedRows, "row " + std::to_string(r + 1) + " has " + std::to_string(rec.size()) +
                                              " fields, expected " + std::to_string(width));
        }
        std::size_t j = 0;
        for (std::size_t c = 0; c < width; ++c) {
            if (c == label_column) {
                continue;
            }
            const auto value = detail::parse_double(rec[c]);
            if (!value) {
                throw Error(Errc::NonNumericFeature, "row " + std::to_string(r + 1) + ": '" + rec[c] + "' is not a number");
            }
            features(r, j++) = *value;
        }
        raw.emplace_back(detail::trim(rec[label_column]));
    }
    std::vector<std::string> distinct;
    for (const auto& label : raw) {
        if (std::find(distinct.begin(), distinct.end(), label) == distinct.end()) {
            distinct.push_back(label);
        }
    }
    if (distinct.size() > 2) {
        throw Error(Errc::MoreThanTwoClasses, "label column has " + std::to_string(distinct.size()) + " distinct values");
    }
    if (std::find(distinct.begin(), distinct.end(), positive_label) == distinct.end()) {
        throw Error(Errc::UnknownPositiveLabel, "'" + positive_label + "' does not occur in the label column");
    }
    if (distinct.size() == 1) {
        throw Error(Errc::SingleClass, "all rows share label '" + positive_label + "'");
    }
    std::vector<int> labels;
    labels.reserve(n);
    for (const auto& label : raw) {
        labels.push_back(label == positive_label ? 1 : -1);
    }
    Dataset ds(std::move(features), std::move(labels), std::move(name));
    ds.positive_class = positive_label;
    ds.negative_class = distinct[0] == positive_label ? distinct[1] : distinct[0];
    return ds;
}

Dataset load_dataset(const std::string& path, const std::string& positive_label) {
    const std::string text = detail::read_file(path);

    std::string stem = path.substr(path.find_last_of("/\\") + 1);
    const std::size_t dot = stem.find_last_of('.');
    const std::string ext = dot == std::string::npos ? "" : detail::lower(stem.substr(dot));
    if (dot != std::string::npos) {
        stem = stem.substr(0, dot);
    }
    if (ext == ".dat") {
        return parse_keel(text, stem);
    }
    const auto records = detail::parse_csv_records(text);
    if (records.empty()) {
        throw Error(Errc::EmptyData, "'" + path + "' is empty");
    }
    const std::size_t label_col = records.front().size() - 1;
    std::string positive = positive_label;
    if (positive.empty()) {
        std::map<std::string, std::size_t> counts;
        std::vector<std::string> order;
        for (std::size_t r = 1; r < records.size(); ++r) {
            if (records[r].size() > label_col) {
                std::string label(detail::trim(records[r][label_col]));
                if (counts[label]++ == 0) {
                    order.push_back(label);
                }
            }
        }
        if (order.empty()) {
            throw Error(Errc::EmptyData, "'" + path + "' has no data rows");
        }
        positive = order.front();
        for (const auto& label : order) {
            if (counts[label] < counts[positive]) {
                positive = label;
            }
        }
    }
    return parse_csv(text, label_col, positive, stem);
}

FeatureTable parse_feature_csv(std::string_view text, std::size_t dim) {
    auto records = detail::parse_csv_records(text);
    if (!records.empty() && !records.front().empty() && !detail::parse_double(detail::trim(records.front()[0]))) {
        records.erase(records.begin());
    }
    if (records.empty()) {
        throw Error(Errc::EmptyData, "no rows to score");
    }
    const std::size_t width = records.front().size();
    if (width != dim && width != dim + 1) {
        throw Error(Errc::DimensionMismatch, "expected " + std::to_string(dim) + " feature columns, got " +
                                                 std::to_string(width) + " fields");
    }
    FeatureTable table;
    table.features = Matrix(records.size(), dim);
    for (std::size_t r = 0; r < records.size(); ++r) {
        const auto& row = records[r];
        if (row.size() != width) {
            throw Error(Errc::RaggedRows, "row " + std::to_string(r + 1) + " has " + std::to_string(row.size()) +
                                              " fields, expected " + std::to_string(width));
        }
        for (std::size_t c = 0; c < dim; ++c) {
            const auto v = detail::parse_double(detail::trim(row[c]));
            if (!v || !std::isfinite(*v)) {
                throw Error(Errc::NonNumericFeature, "row " + std::to_string(r + 1) + ": '" + row[c] + "'");
            }
            table.features(r, c) = *v;
        }
        if (width == dim + 1) {
            table.labels.emplace_back(detail::trim(row[dim]));
        }
    }
    return table;
}

std::string to_csv(const Dataset& ds) {
    std::string out;
    for (std::size_t j = 0; j < ds.dim(); ++j) {
        out += "x" + std::to_string(j) + ",";
    }
    out += "label\n";
    for (std::size_t i = 0; i < ds.size(); ++i) {
        for (const double v : ds.row(i)) {
            out += format_double(v);
            out += ',';
        }
        out += ds.label(i) > 0 ? "1\n" : "-1\n";
    }
    return out;
}

ClassStats class_stats(const Dataset& ds) {
    ClassStats stats;
    for (const int y : ds.labels()) {
        (y > 0 ? stats.n_minority : stats.n_majority) += 1;
    }
    if (stats.n_minority == 0 || stats.n_majority == 0) {
        throw Error(Errc::SingleClass, "dataset '" + ds.name() + "' contains a single class");
    }
    stats.imbalance_ratio = static_cast<double>(stats.n_majority) / static_cast<double>(stats.n_minority);
    return stats;
}

std::vector<std::size_t> FoldPlan::train_indices(std::size_t fold) const {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        if (assignments[i] != fold) {
            idx.push_back(i);
        }
    }
    return idx;
}

std::vector<std::size_t> FoldPlan::test_indices(std::size_t fold) const {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < assignments.size(); ++i) {
        if (assignments[i] == fold) {
            idx.push_back(i);
        }
    }
    return idx;
}

FoldPlan stratified_kfold(const Dataset& ds, std::size_t k, std::uint64_t seed) {
    if (k < 2) {
        throw Error(Errc::InvalidArgument, "fold count must be at least 2");
    }
    std::vector<std::size_t> pos;
    std::vector<std::size_t> neg;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        (ds.label(i) > 0 ? pos : neg).push_back(i);
    }
    if (pos.size() < k || neg.size() < k) {
        throw Error(Errc::TooFewSamplesPerClass, "each class needs at least " + std::to_string(k) + " samples (have " +
                                                      std::to_string(pos.size()) + " minority, " +
                                                      std::to_string(neg.size()) + " majority)");
    }
    detail::Engine rng(seed);
    detail::shuffle(pos, rng);
    detail::shuffle(neg, rng);
    FoldPlan plan;
    plan.k = k;
    plan.seed = seed;
    plan.assignments.assign(ds.size(), 0);
    // Round-robin per class; the majority pass continues where the minority
    // pass stopped so fold sizes also stay within one of each other.
    for (std::size_t i = 0; i < pos.size(); ++i) {
        plan.assignments[pos[i]] = i % k;
    }
    const std::size_t offset = pos.size() % k;
    for (std::size_t i = 0; i < neg.size(); ++i) {
        plan.assignments[neg[i]] = (i + offset) % k;
    }
    return plan;
}

std::pair<Dataset, Dataset> train_test_split(const Dataset& ds, double test_fraction, std::uint64_t seed) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw Error(Errc::InvalidArgument, "test fraction must lie in (0, 1)");
    }
    std::vector<std::size_t> pos;
    std::vector<std::size_t> neg;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        (ds.label(i) > 0 ? pos : neg).push_back(i);
    }
    detail::Engine rng(seed);
    detail::shuffle(pos, rng);
    detail::shuffle(neg, rng);
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
    for (auto* cls : {&pos, &neg}) {
        const auto n = cls->size();
        const auto n_test = static_cast<std::size_t>(std::llround(static_cast<double>(n) * test_fraction));
        if (n_test == 0 || n_test >= n) {
            throw Error(Errc::DegenerateSplit, "a class of " + std::to_string(n) + " samples cannot be split with fraction " +
                                                   std::to_string(test_fraction));
        }
        test.insert(test.end(), cls->begin(), cls->begin() + static_cast<std::ptrdiff_t>(n_test));
        train.insert(train.end(), cls->begin() + static_cast<std::ptrdiff_t>(n_test), cls->end());
    }
    std::sort(train.begin(), train.end());
    std::sort(test.begin(), test.end());
    return {subset(ds, train), subset(ds, test)};
}

Dataset subset(const Dataset& ds, std::span<const std::size_t> indices) {
    Matrix features(indices.size(), ds.dim());
    std::vector<int> labels;
    labels.reserve(indices.size());
    for (std::size_t r = 0; r < indices.size(); ++r) {
        const auto src = ds.row(indices[r]);
        std::copy(src.begin(), src.end(), features.row(r).begin());
        labels.push_back(ds.label(indices[r]));
    }
    Dataset out(std::move(features), std::move(labels), ds.name());
    out.positive_class = ds.positive_class;
    out.negative_class = ds.negative_class;
    return out;
}

void Scaler::apply_row(std::span<double> row) const {
    if (row.size() != mean.size()) {
        throw Error(Errc::DimensionMismatch, "scaler expects " + std::to_string(mean.size()) + " features");
    }
    for (std::size_t j = 0; j < row.size(); ++j) {
        row[j] = (row[j] - mean[j]) / scale[j];
    }
}

Matrix Scaler::apply(const Matrix& m) const {
    Matrix out = m;
    for (std::size_t i = 0; i < out.rows; ++i) {
        apply_row(out.row(i));
    }
    return out;
}

Dataset Scaler::apply(const Dataset& ds) const {
    Dataset out(apply(ds.features()), ds.labels(), ds.name());
    out.positive_class = ds.positive_class;
    out.negative_class = ds.negative_class;
    return out;
}

Standardized standardize(const Dataset& train, const std::vector<Dataset>& others) {
    const std::size_t d = train.dim();
    const auto n = static_cast<double>(train.size());
    Scaler scaler;
    scaler.mean.assign(d, 0.0);
    scaler.scale.assign(d, 1.0);
    for (std::size_t j = 0; j < d; ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < train.size(); ++i) {
            sum += train.row(i)[j];
        }
        const double mean = sum / n;
        double ss = 0.0;
        for (std::size_t i = 0; i < train.size(); ++i) {
            const double dv = train.row(i)[j] - mean;
            ss += dv * dv;
        }
        const double sd = std::sqrt(ss / n);
        scaler.mean[j] = mean;
        // zero-variance columns stay centred with unit scale
        scaler.scale[j] = sd > 1e-12 * std::max(1.0, std::abs(mean)) ? sd : 1.0;
    }
    Standardized result{scaler.apply(train), {}, scaler};
    result.others.reserve(others.size());
    for (const auto& ds : others) {
        if (ds.dim() != d) {
            throw Error(Errc::DimensionMismatch, "dataset '" + ds.name() + "' has a different feature count");
        }
        result.others.push_back(scaler.apply(ds));
    }
    return result;
}

Dataset make_moons(const MoonsSpec& spec) {
    if (spec.n_majority == 0 || spec.n_minority == 0) {
        throw Error(Errc::InvalidArgument, "both moons need at least one point");
    }
    if (spec.noise < 0.0) {
        throw Error(Errc::InvalidArgument, "noise must be non-negative");
    }
    detail::Engine rng(spec.seed);
    const std::size_t n = spec.n_majority + spec.n_minority;
    Matrix x(n, 2);
    std::vector<int> y(n);
    for (std::size_t i = 0; i < spec.n_majority; ++i) {
        const double t = std::numbers::pi * detail::uniform01(rng);
        x(i, 0) = std::cos(t);
        x(i, 1) = std::sin(t);
        y[i] = -1;
    }
    for (std::size_t i = 0; i < spec.n_minority; ++i) {
        const double t = std::numbers::pi * detail::uniform01(rng);
        x(spec.n_majority + i, 0) = 1.0 - std::cos(t);
        x(spec.n_majority + i, 1) = 0.5 - std::sin(t);
        y[spec.n_majority + i] = 1;
    }
    for (auto& v : x.values) {
        v += spec.noise * detail::standard_normal(rng);
    }
    char name[96];
    std::snprintf(name, sizeof(name), "moons_ir%g_n%zu_s%llu",
                  static_cast<double>(spec.n_majority) / static_cast<double>(spec.n_minority), n,
                  static_cast<unsigned long long>(spec.seed));
    Dataset ds(std::move(x), std::move(y), name);
    ds.positive_class = "minority";
    ds.negative_class = "majority";
    return ds;
}

MoonsSpec parse_moons_spec(std::string_view text) {
    text = detail::trim(text);
    if (detail::istarts_with(text, "moons")) {
        text.remove_prefix(5);
        if (!text.empty() && text.front() == ':') {
            text.remove_prefix(1);
        }
    } else {
        throw Error(Errc::InvalidArgument, "synthetic spec must start with 'moons'");
    }
    double ir = 5.0;
    double n = 1200.0;
    MoonsSpec spec;
    if (!detail::trim(text).empty()) {
        for (auto part : detail::split(text, ',')) {
            const auto eq = part.find('=');
            if (eq == std::string_view::npos) {
                throw Error(Errc::InvalidArgument, "expected key=value in '" + std::string(part) + "'");
            }
            const std::string key = detail::lower(detail::trim(part.substr(0, eq)));
            const auto value = detail::parse_double(part.substr(eq + 1));
            if (!value) {
                throw Error(Errc::InvalidArgument, "bad value for '" + key + "'");
            }
            if (key == "ir") {
                ir = *value;
            } else if (key == "n") {
                n = *value;
            } else if (key == "noise") {
                spec.noise = *value;
            } else if (key == "seed") {
                spec.seed = static_cast<std::uint64_t>(*value);
            } else {
                throw Error(Errc::InvalidArgument, "unknown synthetic key '" + key + "'");
            }
        }
    }
    if (ir < 1.0 || n < 2.0) {
        throw Error(Errc::InvalidArgument, "moons need IR >= 1 and n >= 2");
    }
    const auto total = static_cast<std::size_t>(std::llround(n));
    spec.n_minority = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(n / (ir + 1.0))));
    spec.n_majority = total - spec.n_minority;
    return spec;
}

} // namespace slackfuzz
