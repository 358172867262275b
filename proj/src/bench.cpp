#include "slackfuzz/bench.hpp"

#include "io.hpp"
#include "parallel.hpp"
#include "slackfuzz/dec.hpp"
#include "slackfuzz/error.hpp"
#include "text.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <map>

namespace slackfuzz {

namespace fs = std::filesystem;

ReportFormat parse_report_format(std::string_view name) {
    const std::string s = detail::lower(detail::trim(name));
    if (s == "csv") {
        return ReportFormat::csv;
    }
    if (s == "json") {
        return ReportFormat::json;
    }
    throw Error(Errc::InvalidArgument, "unknown format '" + s + "' (expected csv or json)");
}

void BenchConfig::validate() const {
    if (datasets.empty() && synthetic.empty()) {
        throw Error(Errc::InvalidArgument, "no datasets given");
    }
    if (models.empty()) {
        throw Error(Errc::InvalidArgument, "no models given");
    }
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw Error(Errc::InvalidArgument, "test fraction must lie in (0, 1)");
    }
    if (folds < 2) {
        throw Error(Errc::InvalidArgument, "folds must be at least 2");
    }
    if (repeats == 0 || cv_repeats == 0) {
        throw Error(Errc::InvalidArgument, "repeats must be at least 1");
    }
    if (grid.zeta.empty() || grid.kernels.empty()) {
        throw Error(Errc::InvalidArgument, "zeta and kernel grids must be non-empty");
    }
    for (const ModelKind m : models) {
        if (m != ModelKind::dec && grid.mu.empty()) {
            throw Error(Errc::InvalidArgument, "mu grid must be non-empty");
        }
        if (m == ModelKind::isffsvm && grid.a.empty()) {
            throw Error(Errc::InvalidArgument, "a grid must be non-empty");
        }
    }
    for (const double a : grid.a) {
        MembershipParams(1.0, a);
    }
    for (const double z : grid.zeta) {
        if (!(z > 0.0) || !std::isfinite(z)) {
            throw Error(Errc::InvalidArgument, "zeta values must be positive");
        }
    }
    for (const double m : grid.mu) {
        MembershipParams(m, MembershipParams::max_location);
    }
}

bool BenchReport::has_failures() const {
    return std::any_of(rows.begin(), rows.end(), [](const BenchRow& r) { return !r.error.empty(); });
}

std::vector<std::string> expand_dataset_paths(const std::vector<std::string>& inputs) {
    std::vector<std::string> out;
    for (const auto& input : inputs) {
        std::error_code ec;
        if (fs::is_directory(input, ec)) {
            std::vector<std::string> found;
            for (const auto& entry : fs::directory_iterator(input)) {
                const std::string ext = detail::lower(entry.path().extension().string());
                if (entry.is_regular_file() && (ext == ".dat" || ext == ".csv")) {
                    found.push_back(entry.path().string());
                }
            }
            std::sort(found.begin(), found.end());
            out.insert(out.end(), found.begin(), found.end());
        } else {
            out.push_back(input);
        }
    }
    return out;
}

namespace {

struct Source {
    std::string name;
    std::string path;
    bool synthetic = false;
};

std::string stem_of(const std::string& path) {
    return fs::path(path).stem().string();
}

MetricSummary summarize(const std::vector<double>& values) {
    MetricSummary s;
    for (const double v : values) {
        s.mean += v;
    }
    s.mean /= static_cast<double>(values.size());
    double ss = 0.0;
    for (const double v : values) {
        ss += (v - s.mean) * (v - s.mean);
    }
    s.std = std::sqrt(ss / static_cast<double>(values.size()));
    return s;
}

struct RepeatOutcome {
    double f1 = 0.0;
    double mcc = 0.0;
    double aucpr = 0.0;
    HyperParams chosen;
    std::string error;
};

std::vector<BenchRow> run_source(const Source& src, const BenchConfig& cfg) {
    std::vector<BenchRow> rows;
    for (const ModelKind m : cfg.models) {
        BenchRow row;
        row.dataset = src.name;
        row.model = std::string(model_kind_name(m));
        rows.push_back(row);
    }
    Dataset ds;
    try {
        ds = src.synthetic ? make_moons(parse_moons_spec(src.path)) : load_dataset(src.path);
        class_stats(ds);
    } catch (const Error& e) {
        for (auto& row : rows) {
            row.error = e.what();
        }
        return rows;
    }

    std::vector<std::vector<RepeatOutcome>> outcomes(cfg.models.size());
    for (std::size_t r = 0; r < cfg.repeats; ++r) {
        const std::uint64_t seed = cfg.seed + r;
        std::optional<Standardized> data;
        std::string split_error;
        try {
            auto [train, test] = train_test_split(ds, cfg.test_fraction, seed);
            data = standardize(train, {test});
        } catch (const Error& e) {
            split_error = e.what();
        }
        for (std::size_t mi = 0; mi < cfg.models.size(); ++mi) {
            RepeatOutcome out;
            if (!data) {
                out.error = split_error;
                outcomes[mi].push_back(out);
                continue;
            }
            const Dataset& train = data->train;
            const Dataset& test = data->others.front();
            try {
                CvOptions cv;
                cv.folds = cfg.folds;
                cv.repeats = cfg.cv_repeats;
                cv.seed = seed;
                cv.objective = cfg.objective;
                cv.solver = cfg.solver;
                const ModelKind kind = cfg.models[mi];
                const GridSearchResult gs = grid_search(train, kind, cfg.grid, cv);
                if (!std::isfinite(gs.best_score)) {
                    std::string reason = "every grid point failed";
                    if (!gs.table.empty() && !gs.table.front().error.empty()) {
                        reason += " (" + gs.table.front().error + ")";
                    }
                    throw Error(Errc::InvalidArgument, reason);
                }
                out.chosen = gs.best;
                const SvmModel model = kind == ModelKind::dec
                                           ? fit_dec(train, DecParams{gs.best.zeta, gs.best.kernel}, cfg.solver)
                                           : fit_isffsvm(train, gs.best, cfg.solver).final_model;
                const auto scores = decision_values(model, test.features());
                out.f1 = evaluate(Metric::f1, test.labels(), scores);
                out.mcc = evaluate(Metric::mcc, test.labels(), scores);
                out.aucpr = evaluate(Metric::aucpr, test.labels(), scores);
            } catch (const Error& e) {
                out.error = e.what();
            }
            outcomes[mi].push_back(out);
        }
    }

    for (std::size_t mi = 0; mi < cfg.models.size(); ++mi) {
        BenchRow& row = rows[mi];
        const auto& outs = outcomes[mi];
        const auto failed = std::find_if(outs.begin(), outs.end(), [](const RepeatOutcome& o) { return !o.error.empty(); });
        if (failed != outs.end()) {
            row.error = "repeat " + std::to_string(failed - outs.begin()) + ": " + failed->error;
            continue;
        }
        std::vector<double> f1, mcc_values, ap;
        for (const auto& o : outs) {
            f1.push_back(o.f1);
            mcc_values.push_back(o.mcc);
            ap.push_back(o.aucpr);
        }
        row.f1 = summarize(f1);
        row.mcc = summarize(mcc_values);
        row.aucpr = summarize(ap);

        // Most frequent selection; ties go to the earliest repeat.
        std::size_t best = 0;
        std::size_t best_count = 0;
        for (std::size_t i = 0; i < outs.size(); ++i) {
            const auto count = static_cast<std::size_t>(std::count_if(
                outs.begin(), outs.end(), [&](const RepeatOutcome& o) { return o.chosen == outs[i].chosen; }));
            if (count > best_count) {
                best = i;
                best_count = count;
            }
        }
        const HyperParams& hp = outs[best].chosen;
        row.chosen_zeta = hp.zeta;
        row.chosen_kernel = to_string(hp.kernel);
        if (cfg.models[mi] != ModelKind::dec) {
            row.chosen_mu = hp.mu;
            row.chosen_a = hp.a;
        }
    }
    return rows;
}

std::string fixed4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

// Shortest round-trip fixed notation, always with a decimal point ("2.0", "0.1", "100.0").
std::string compact(double v) {
    char buf[400];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed);
    std::string s(buf, res.ptr);
    if (s.find_first_of(".n") == std::string::npos) {
        s += ".0";
    }
    return s;
}

std::vector<std::string> report_fields(const BenchRow& row) {
    auto metric = [](const std::optional<MetricSummary>& m, bool mean) -> std::string {
        if (!m) {
            return "";
        }
        return fixed4(mean ? m->mean : m->std);
    };
    auto opt = [](const std::optional<double>& v) { return v ? compact(*v) : std::string(); };
    return {row.dataset,        row.model,
            metric(row.f1, true),    metric(row.f1, false),
            metric(row.mcc, true),   metric(row.mcc, false),
            metric(row.aucpr, true), metric(row.aucpr, false),
            opt(row.chosen_a),      opt(row.chosen_zeta),
            opt(row.chosen_mu),     row.chosen_kernel,
            row.error};
}

const std::vector<std::string>& report_columns() {
    static const std::vector<std::string> cols = {
        "dataset",  "model",    "f1_mean",  "f1_std",      "mcc_mean",      "mcc_std", "aucpr_mean",
        "aucpr_std", "chosen_a", "chosen_zeta", "chosen_mu", "chosen_kernel", "error"};
    return cols;
}

} // namespace

BenchReport run_benchmark(const BenchConfig& cfg) {
    cfg.validate();
    std::vector<Source> sources;
    for (const auto& path : expand_dataset_paths(cfg.datasets)) {
        sources.push_back({stem_of(path), path, false});
    }
    for (const auto& spec : cfg.synthetic) {
        sources.push_back({spec, spec, true});
    }
    std::vector<std::vector<BenchRow>> per_source(sources.size());
    detail::parallel_for(sources.size(), cfg.workers,
                         [&](std::size_t i) { per_source[i] = run_source(sources[i], cfg); });
    BenchReport report;
    for (auto& rows : per_source) {
        report.rows.insert(report.rows.end(), rows.begin(), rows.end());
    }
    return report;
}

std::string format_report(const BenchReport& report, ReportFormat format) {
    if (report.rows.empty()) {
        throw Error(Errc::InvalidArgument, "report is empty");
    }
    const auto& cols = report_columns();
    std::string out;
    if (format == ReportFormat::csv) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            out += (c ? "," : "") + cols[c];
        }
        out += '\n';
        for (const auto& row : report.rows) {
            const auto fields = report_fields(row);
            for (std::size_t c = 0; c < fields.size(); ++c) {
                out += (c ? "," : "") + detail::csv_escape(fields[c]);
            }
            out += '\n';
        }
        return out;
    }
    // Numbers are written verbatim so the JSON keeps the fixed decimal rendering.
    out += "[\n";
    for (std::size_t r = 0; r < report.rows.size(); ++r) {
        const auto fields = report_fields(report.rows[r]);
        out += "  {";
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const bool text = c < 2 || cols[c] == "chosen_kernel" || cols[c] == "error";
            std::string value;
            if (text) {
                value = nlohmann::json(fields[c]).dump();
            } else {
                value = fields[c].empty() ? "null" : fields[c];
            }
            out += (c ? ", " : "") + nlohmann::json(cols[c]).dump() + ": " + value;
        }
        out += r + 1 < report.rows.size() ? "},\n" : "}\n";
    }
    out += "]\n";
    return out;
}

void emit_report(const BenchReport& report, ReportFormat format, const std::string& path) {
    detail::write_file(path, format_report(report, format));
}

BenchReport parse_report_json(std::string_view text) {
    using nlohmann::json;
    BenchReport report;
    try {
        const json j = json::parse(text);
        for (const auto& item : j) {
            BenchRow row;
            row.dataset = item.at("dataset").get<std::string>();
            row.model = item.at("model").get<std::string>();
            auto metric = [&](const std::string& name) -> std::optional<MetricSummary> {
                const auto& mean = item.at(name + "_mean");
                if (mean.is_null()) {
                    return std::nullopt;
                }
                return MetricSummary{mean.get<double>(), item.at(name + "_std").get<double>()};
            };
            auto opt = [&](const char* name) -> std::optional<double> {
                const auto& v = item.at(name);
                return v.is_null() ? std::nullopt : std::optional<double>(v.get<double>());
            };
            row.f1 = metric("f1");
            row.mcc = metric("mcc");
            row.aucpr = metric("aucpr");
            row.chosen_a = opt("chosen_a");
            row.chosen_zeta = opt("chosen_zeta");
            row.chosen_mu = opt("chosen_mu");
            row.chosen_kernel = item.at("chosen_kernel").get<std::string>();
            row.error = item.at("error").get<std::string>();
            report.rows.push_back(std::move(row));
        }
    } catch (const json::exception& e) {
        throw Error(Errc::InvalidArgument, std::string("malformed report: ") + e.what());
    }
    return report;
}

StatsReport run_stats(const ScoreMatrix& scores, double alpha, std::optional<double> f_critical,
                      bool higher_is_better) {
    StatsReport rep;
    rep.scores = scores;
    rep.alpha = alpha;
    rep.ranks = rank_rows(scores, higher_is_better);
    rep.friedman = friedman(rep.ranks);
    rep.cd = nemenyi_cd(scores.models(), scores.datasets(), alpha);
    rep.pairs = nemenyi_pairs(rep.ranks, rep.cd);
    rep.f_critical = f_critical;
    if (f_critical) {
        rep.reject = rep.friedman.f_stat > *f_critical;
    }
    return rep;
}

StatsReport run_stats(const std::string& results_csv, std::string_view metric, double alpha,
                      std::optional<double> f_critical) {
    return run_stats(read_score_matrix(results_csv, metric), alpha, f_critical);
}

std::string format_stats(const StatsReport& rep, ReportFormat format) {
    char buf[128];
    if (format == ReportFormat::json) {
        nlohmann::json j;
        j["models"] = rep.ranks.model_names;
        j["datasets"] = rep.scores.dataset_names;
        j["average_ranks"] = rep.ranks.average_ranks;
        j["friedman"] = {{"chi2", rep.friedman.chi2},
                         {"chi2_dof", rep.friedman.dof_chi2},
                         {"f_stat", rep.friedman.f_stat},
                         {"f_dof", {rep.friedman.dof_f_num, rep.friedman.dof_f_den}}};
        if (rep.f_critical) {
            j["friedman"]["f_critical"] = *rep.f_critical;
            j["friedman"]["reject"] = *rep.reject;
        }
        j["nemenyi"] = {{"alpha", rep.alpha}, {"cd", rep.cd}, {"pairs", nlohmann::json::array()}};
        for (const auto& p : rep.pairs) {
            j["nemenyi"]["pairs"].push_back(
                {{"model_i", p.model_i}, {"model_j", p.model_j}, {"rank_diff", p.rank_diff}, {"significant", p.significant}});
        }
        return j.dump(2) + "\n";
    }
    std::string out = "model,average_rank\n";
    for (std::size_t m = 0; m < rep.ranks.model_names.size(); ++m) {
        std::snprintf(buf, sizeof buf, ",%.4f\n", rep.ranks.average_ranks[m]);
        out += detail::csv_escape(rep.ranks.model_names[m]) + buf;
    }
    out += "\nstatistic,value\n";
    std::snprintf(buf, sizeof buf, "datasets,%zu\nmodels,%zu\n", rep.ranks.datasets, rep.ranks.model_names.size());
    out += buf;
    std::snprintf(buf, sizeof buf, "chi2,%.4f\nchi2_dof,%zu\n", rep.friedman.chi2, rep.friedman.dof_chi2);
    out += buf;
    std::snprintf(buf, sizeof buf, "f_stat,%.4f\nf_dof,%zu;%zu\n", rep.friedman.f_stat, rep.friedman.dof_f_num,
                  rep.friedman.dof_f_den);
    out += buf;
    if (rep.f_critical) {
        std::snprintf(buf, sizeof buf, "f_critical,%.4f\nreject,%s\n", *rep.f_critical, *rep.reject ? "yes" : "no");
        out += buf;
    }
    std::snprintf(buf, sizeof buf, "alpha,%g\ncd,%.4f\n", rep.alpha, rep.cd);
    out += buf;
    out += "\nmodel_i,model_j,rank_diff,significant\n";
    for (const auto& p : rep.pairs) {
        std::snprintf(buf, sizeof buf, ",%.4f,%s\n", p.rank_diff, p.significant ? "yes" : "no");
        out += detail::csv_escape(p.model_i) + "," + detail::csv_escape(p.model_j) + buf;
    }
    return out;
}

} // namespace slackfuzz
