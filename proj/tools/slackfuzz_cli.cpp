#include "slackfuzz/bench.hpp"
#include "slackfuzz/dec.hpp"
#include "slackfuzz/error.hpp"
#include "slackfuzz/serialize.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace slackfuzz;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 1;
constexpr int exit_partial = 2;

struct GridFlags {
    std::vector<double> zeta;
    std::vector<double> mu;
    std::vector<double> a;
    std::vector<double> gamma;
    bool linear = true;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--zeta-grid", zeta, "Comma-separated zeta values")->delimiter(',');
        cmd->add_option("--mu-grid", mu, "Comma-separated mu values")->delimiter(',');
        cmd->add_option("--a-grid", a, "Comma-separated location values in [1.1, 2]")->delimiter(',');
        cmd->add_option("--gamma-grid", gamma, "Comma-separated RBF gamma values")->delimiter(',');
        cmd->add_flag("--linear,!--no-linear", linear, "Include the linear kernel in the search");
    }

    SearchGrid resolve() const {
        SearchGrid g = SearchGrid::defaults();
        if (!zeta.empty()) {
            g.zeta = zeta;
        }
        if (!mu.empty()) {
            g.mu = mu;
        }
        if (!a.empty()) {
            g.a = a;
        }
        if (!gamma.empty()) {
            g.kernels.clear();
            for (const double gm : gamma) {
                g.kernels.push_back(KernelSpec::rbf(gm));
            }
            if (linear) {
                g.kernels.insert(g.kernels.begin(), KernelSpec::linear());
            }
        } else if (!linear) {
            g.kernels.erase(g.kernels.begin());
        }
        if (g.kernels.empty()) {
            throw Error(Errc::InvalidArgument, "kernel grid is empty");
        }
        return g;
    }
};

std::vector<ModelKind> parse_models(const std::vector<std::string>& names) {
    std::vector<ModelKind> out;
    for (const auto& n : names) {
        out.push_back(parse_model_kind(n));
    }
    return out;
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text)) {
        throw Error(Errc::IoError, "cannot write '" + path + "'");
    }
}

std::string read_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(Errc::IoError, "cannot open '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cost-sensitive fuzzy SVMs for imbalanced binary classification"};
    app.require_subcommand(1);

    // bench
    auto* bench = app.add_subcommand("bench", "Tune and evaluate models on datasets");
    std::vector<std::string> datasets;
    std::vector<std::string> synthetic;
    std::vector<std::string> model_names = {"dec", "sffsvm", "isffsvm"};
    BenchConfig cfg;
    std::string objective = "f1";
    std::string format = "csv";
    std::string out_path;
    GridFlags bench_grid;
    bench->add_option("--datasets", datasets, "Dataset files or directories (.dat, .csv)")->delimiter(',');
    bench->add_option("--synthetic", synthetic, "Generated datasets, e.g. moons:IR=5,n=1200,noise=0.2,seed=1");
    bench->add_option("--models", model_names, "Models: dec, sffsvm, isffsvm")->delimiter(',')->capture_default_str();
    bench->add_option("--seed", cfg.seed, "Base seed")->capture_default_str();
    bench->add_option("--repeats", cfg.repeats, "Outer train/test repetitions")->capture_default_str();
    bench->add_option("--cv-repeats", cfg.cv_repeats, "CV repetitions inside each grid search")->capture_default_str();
    bench->add_option("--folds", cfg.folds, "CV folds")->capture_default_str();
    bench->add_option("--test-fraction", cfg.test_fraction, "Held-out fraction")->capture_default_str();
    bench->add_option("--objective", objective, "Tuning metric: f1, mcc, aucpr")->capture_default_str();
    bench->add_option("--workers", cfg.workers, "Datasets processed concurrently (0 = all cores)")->capture_default_str();
    bench->add_option("--out", out_path, "Report path (default stdout)");
    bench->add_option("--format", format, "csv or json")->capture_default_str();
    bench_grid.add_to(bench);

    // stats
    auto* stats = app.add_subcommand("stats", "Friedman and Nemenyi tests on a score table");
    std::string results_path;
    std::string metric = "f1";
    double alpha = 0.05;
    std::optional<double> f_critical;
    bool lower_is_better = false;
    std::string stats_format = "csv";
    std::string stats_out;
    stats->add_option("results", results_path, "Wide score matrix or bench report CSV")->required();
    stats->add_option("--metric", metric, "Metric column of a bench report")->capture_default_str();
    stats->add_option("--alpha", alpha, "Significance level (0.05 tabulated)")->capture_default_str();
    stats->add_option("--f-critical", f_critical, "Critical F value to compare F_F against");
    stats->add_flag("--lower-is-better", lower_is_better, "Rank smaller scores first");
    stats->add_option("--format", stats_format, "csv or json")->capture_default_str();
    stats->add_option("--out", stats_out, "Output path (default stdout)");

    // fit
    auto* fit = app.add_subcommand("fit", "Train one model and save it as JSON");
    std::string fit_dataset;
    std::string fit_synthetic;
    std::string fit_model = "isffsvm";
    HyperParams hp;
    std::string kernel_text = "rbf:1";
    bool tune = false;
    std::size_t fit_folds = 5;
    std::size_t fit_repeats = 1;
    std::uint64_t fit_seed = 0;
    std::string fit_objective = "f1";
    std::string model_out;
    GridFlags fit_grid;
    auto* fit_src = fit->add_option("--dataset", fit_dataset, "Training file (.dat or .csv)");
    fit->add_option("--synthetic", fit_synthetic, "Generated training set")->excludes(fit_src);
    fit->add_option("--model", fit_model, "dec, sffsvm or isffsvm")->capture_default_str();
    fit->add_option("--zeta", hp.zeta, "Cost multiplier")->capture_default_str();
    fit->add_option("--mu", hp.mu, "Membership smoothness")->capture_default_str();
    fit->add_option("--a", hp.a, "Location parameter in [1.1, 2]")->capture_default_str();
    fit->add_option("--kernel", kernel_text, "linear or rbf:<gamma>")->capture_default_str();
    fit->add_flag("--tune", tune, "Choose hyperparameters by grid search first");
    fit->add_option("--folds", fit_folds, "CV folds when tuning")->capture_default_str();
    fit->add_option("--repeats", fit_repeats, "CV repetitions when tuning")->capture_default_str();
    fit->add_option("--seed", fit_seed, "CV seed when tuning")->capture_default_str();
    fit->add_option("--objective", fit_objective, "Tuning metric")->capture_default_str();
    fit->add_option("--out", model_out, "Model file")->required();
    fit_grid.add_to(fit);

    // predict
    auto* predict_cmd = app.add_subcommand("predict", "Score a CSV with a saved model");
    std::string model_path;
    std::string input_path;
    std::string predict_out;
    predict_cmd->add_option("--model-file", model_path, "Model written by fit")->required();
    predict_cmd->add_option("--input", input_path, "CSV of feature rows, optionally with a trailing label")->required();
    predict_cmd->add_option("--out", predict_out, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }

    try {
        if (*bench) {
            cfg.datasets = datasets;
            cfg.synthetic = synthetic;
            cfg.models = parse_models(model_names);
            cfg.objective = parse_metric(objective);
            cfg.grid = bench_grid.resolve();
            const ReportFormat fmt = parse_report_format(format);
            cfg.validate();
            const BenchReport report = run_benchmark(cfg);
            write_output(out_path, format_report(report, fmt));
            for (const auto& row : report.rows) {
                if (!row.error.empty()) {
                    std::cerr << row.dataset << " / " << row.model << ": " << row.error << "\n";
                }
            }
            return report.has_failures() ? exit_partial : exit_ok;
        }
        if (*stats) {
            const ReportFormat fmt = parse_report_format(stats_format);
            const StatsReport rep = run_stats(read_score_matrix(results_path, metric), alpha, f_critical, !lower_is_better);
            write_output(stats_out, format_stats(rep, fmt));
            return exit_ok;
        }
        if (*fit) {
            if (fit_dataset.empty() && fit_synthetic.empty()) {
                throw Error(Errc::InvalidArgument, "--dataset or --synthetic is required");
            }
            const Dataset raw = fit_synthetic.empty() ? load_dataset(fit_dataset) : make_moons(parse_moons_spec(fit_synthetic));
            const Standardized st = standardize(raw);
            SavedModel saved;
            saved.kind = parse_model_kind(fit_model);
            saved.scaler = st.scaler;
            saved.positive_class = raw.positive_class.empty() ? "1" : raw.positive_class;
            saved.negative_class = raw.negative_class.empty() ? "-1" : raw.negative_class;
            hp.kernel = parse_kernel(kernel_text);
            if (saved.kind == ModelKind::sffsvm) {
                hp.a = MembershipParams::max_location;
            }
            if (tune) {
                CvOptions cv;
                cv.folds = fit_folds;
                cv.repeats = fit_repeats;
                cv.seed = fit_seed;
                cv.objective = parse_metric(fit_objective);
                const GridSearchResult gs = grid_search(st.train, saved.kind, fit_grid.resolve(), cv);
                hp = gs.best;
                std::fprintf(stderr, "cv %s = %.4f\n", std::string(metric_name(cv.objective)).c_str(), gs.best_score);
            }
            saved.params = hp;
            saved.model = saved.kind == ModelKind::dec ? fit_dec(st.train, DecParams{hp.zeta, hp.kernel})
                                                       : fit_isffsvm(st.train, hp).final_model;
            save_model(saved, model_out);
            std::fprintf(stderr, "%s zeta=%g mu=%g a=%g kernel=%s support_vectors=%zu\n",
                         std::string(model_kind_name(saved.kind)).c_str(), hp.zeta, hp.mu, hp.a,
                         to_string(hp.kernel).c_str(), saved.model.support_vectors.rows);
            return exit_ok;
        }
        if (*predict_cmd) {
            const SavedModel saved = load_model(model_path);
            const FeatureTable table = parse_feature_csv(read_input(input_path), saved.model.dim());
            std::string text = "score,prediction\n";
            std::vector<double> scores;
            char buf[64];
            for (std::size_t i = 0; i < table.features.rows; ++i) {
                const double s = saved.score(table.features.row(i));
                scores.push_back(s);
                std::snprintf(buf, sizeof buf, "%.17g,", s);
                text += buf;
                text += predict_label(s) > 0 ? saved.positive_class : saved.negative_class;
                text += '\n';
            }
            write_output(predict_out, text);
            if (!table.labels.empty()) {
                std::vector<int> truth;
                for (const auto& l : table.labels) {
                    truth.push_back(l == saved.positive_class ? 1 : -1);
                }
                const auto cm = confusion_matrix(truth, labels_from_scores(scores));
                std::fprintf(stderr, "f1=%.4f mcc=%.4f\n", f1_score(cm), mcc(cm));
            }
            return exit_ok;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    }
    return exit_ok;
}
