#include "slackfuzz/bench.hpp"
#include "slackfuzz/dataset.hpp"
#include "slackfuzz/dec.hpp"
#include "slackfuzz/error.hpp"
#include "slackfuzz/isffsvm.hpp"
#include "slackfuzz/metrics.hpp"
#include "slackfuzz/stats.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace slackfuzz;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Matrix to_matrix(const Array& x) {
    if (x.ndim() != 2) {
        throw Error(Errc::InvalidArgument, "expected a 2-D array");
    }
    Matrix m(std::size_t(x.shape(0)), std::size_t(x.shape(1)));
    std::copy(x.data(), x.data() + x.size(), m.values.begin());
    return m;
}

Array to_array(const Matrix& m) {
    Array out({m.rows, m.cols});
    std::copy(m.values.begin(), m.values.end(), out.mutable_data());
    return out;
}

template <class Model>
Array scores(const Model& model, const Array& x) {
    const Matrix m = to_matrix(x);
    Array out(py::ssize_t(m.rows));
    for (std::size_t i = 0; i < m.rows; ++i) {
        out.mutable_data()[i] = decision_function(model, m.row(i));
    }
    return out;
}

std::vector<int> signs(const Array& s) {
    std::vector<int> out;
    for (py::ssize_t i = 0; i < s.size(); ++i) {
        out.push_back(predict_label(s.data()[i]));
    }
    return out;
}

py::dict hyperparams_dict(const HyperParams& hp) {
    py::dict d;
    d["zeta"] = hp.zeta;
    d["mu"] = hp.mu;
    d["a"] = hp.a;
    d["kernel"] = to_string(hp.kernel);
    return d;
}

std::vector<KernelSpec> parse_kernels(const std::vector<std::string>& names) {
    std::vector<KernelSpec> out;
    for (const auto& n : names) {
        out.push_back(parse_kernel(n));
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Imbalanced fuzzy SVMs with slack-factor memberships";

    py::register_exception<Error>(m, "SlackfuzzError", PyExc_ValueError);

    py::class_<Dataset>(m, "Dataset")
        .def(py::init([](const Array& x, std::vector<int> y, std::string name) {
                 return Dataset(to_matrix(x), std::move(y), std::move(name));
             }),
             py::arg("features"), py::arg("labels"), py::arg("name") = "")
        .def_property_readonly("features", [](const Dataset& d) { return to_array(d.features()); })
        .def_property_readonly("labels", &Dataset::labels)
        .def_property_readonly("name", &Dataset::name)
        .def_property_readonly("imbalance_ratio", [](const Dataset& d) { return class_stats(d).imbalance_ratio; })
        .def("__len__", &Dataset::size);

    m.def("load_dataset", &load_dataset, py::arg("path"), py::arg("positive_label") = "");
    m.def(
        "make_moons",
        [](std::size_t n_majority, std::size_t n_minority, double noise, std::uint64_t seed) {
            return make_moons({n_majority, n_minority, noise, seed});
        },
        py::arg("n_majority") = 1000, py::arg("n_minority") = 200, py::arg("noise") = 0.2, py::arg("seed") = 0);
    m.def(
        "train_test_split",
        [](const Dataset& ds, double test_fraction, std::uint64_t seed) {
            const auto [train, test] = train_test_split(ds, test_fraction, seed);
            const Standardized st = standardize(train, {test});
            return py::make_tuple(st.train, st.others[0]);
        },
        py::arg("dataset"), py::arg("test_fraction") = 0.2, py::arg("seed") = 0,
        "Stratified split, standardized with the training statistics.");

    py::class_<SvmModel>(m, "SvmModel")
        .def_readonly("bias", &SvmModel::bias)
        .def_readonly("alpha", &SvmModel::alpha)
        .def_readonly("support_indices", &SvmModel::support_indices)
        .def_readonly("converged", &SvmModel::converged)
        .def("decision_function", [](const SvmModel& s, const Array& x) { return scores(s, x); })
        .def("predict", [](const SvmModel& s, const Array& x) { return signs(scores(s, x)); });

    py::class_<IsffsvmModel>(m, "IsffsvmModel")
        .def_readonly("final_model", &IsffsvmModel::final_model)
        .def_readonly("dec_model", &IsffsvmModel::dec_model)
        .def_readonly("memberships", &IsffsvmModel::memberships)
        .def_readonly("excluded", &IsffsvmModel::excluded)
        .def_readonly("imbalance_ratio", &IsffsvmModel::imbalance_ratio)
        .def_property_readonly("costs", [](const IsffsvmModel& s) { return s.stage2_costs.values(); })
        .def_property_readonly("hyperparams", [](const IsffsvmModel& s) { return hyperparams_dict(s.hyperparams); })
        .def("decision_function", [](const IsffsvmModel& s, const Array& x) { return scores(s, x); })
        .def("predict", [](const IsffsvmModel& s, const Array& x) { return signs(scores(s, x)); });

    m.def(
        "fit_dec",
        [](const Dataset& ds, double zeta, const std::string& kernel) {
            return fit_dec(ds, DecParams{zeta, parse_kernel(kernel)});
        },
        py::arg("dataset"), py::arg("zeta") = 1.0, py::arg("kernel") = "rbf:1");
    m.def(
        "fit_isffsvm",
        [](const Dataset& ds, double zeta, double mu, double a, const std::string& kernel) {
            return fit_isffsvm(ds, HyperParams{zeta, mu, a, parse_kernel(kernel)});
        },
        py::arg("dataset"), py::arg("zeta") = 1.0, py::arg("mu") = 1.0, py::arg("a") = 2.0,
        py::arg("kernel") = "rbf:1");
    m.def(
        "fit_sffsvm",
        [](const Dataset& ds, double zeta, double mu, const std::string& kernel) {
            return fit_sffsvm(ds, zeta, mu, parse_kernel(kernel));
        },
        py::arg("dataset"), py::arg("zeta") = 1.0, py::arg("mu") = 1.0, py::arg("kernel") = "rbf:1");

    m.def(
        "grid_search",
        [](const Dataset& ds, const std::string& model, std::vector<double> zeta, std::vector<double> mu,
           std::vector<double> a, const std::vector<std::string>& kernels, std::size_t folds, std::size_t repeats,
           std::uint64_t seed, const std::string& objective) {
            SearchGrid grid = SearchGrid::defaults();
            if (!zeta.empty()) grid.zeta = std::move(zeta);
            if (!mu.empty()) grid.mu = std::move(mu);
            if (!a.empty()) grid.a = std::move(a);
            if (!kernels.empty()) grid.kernels = parse_kernels(kernels);
            CvOptions cv;
            cv.folds = folds;
            cv.repeats = repeats;
            cv.seed = seed;
            cv.objective = parse_metric(objective);
            const GridSearchResult r = grid_search(ds, parse_model_kind(model), grid, cv);
            py::dict out;
            out["best"] = hyperparams_dict(r.best);
            out["best_score"] = r.best_score;
            py::list table;
            for (const auto& e : r.table) {
                py::dict row = hyperparams_dict(e.params);
                row["score"] = e.score;
                row["error"] = e.error;
                table.append(row);
            }
            out["table"] = table;
            return out;
        },
        py::arg("dataset"), py::arg("model") = "isffsvm", py::arg("zeta") = std::vector<double>{},
        py::arg("mu") = std::vector<double>{}, py::arg("a") = std::vector<double>{},
        py::arg("kernels") = std::vector<std::string>{}, py::arg("folds") = 5, py::arg("repeats") = 1,
        py::arg("seed") = 0, py::arg("objective") = "f1");

    m.def(
        "f1_score", [](const std::vector<int>& y, const std::vector<int>& p) { return f1_score(confusion_matrix(y, p)); },
        py::arg("truth"), py::arg("predicted"));
    m.def(
        "mcc", [](const std::vector<int>& y, const std::vector<int>& p) { return mcc(confusion_matrix(y, p)); },
        py::arg("truth"), py::arg("predicted"));
    m.def(
        "auc_pr", [](const std::vector<int>& y, const std::vector<double>& s) { return auc_pr(y, s); },
        py::arg("truth"), py::arg("scores"));

    m.def(
        "friedman",
        [](const std::vector<double>& average_ranks, std::size_t datasets) {
            std::vector<std::string> names;
            for (std::size_t i = 0; i < average_ranks.size(); ++i) {
                names.push_back("m" + std::to_string(i));
            }
            const FriedmanResult f = friedman(rank_table_from_averages(names, average_ranks, datasets));
            py::dict out;
            out["chi2"] = f.chi2;
            out["f_stat"] = f.f_stat;
            out["dof_chi2"] = f.dof_chi2;
            out["dof_f"] = py::make_tuple(f.dof_f_num, f.dof_f_den);
            return out;
        },
        py::arg("average_ranks"), py::arg("datasets"));
    m.def(
        "nemenyi_cd", [](std::size_t models, std::size_t datasets) { return nemenyi_cd(models, datasets); },
        py::arg("models"), py::arg("datasets"));

    m.def(
        "run_benchmark",
        [](std::vector<std::string> datasets, std::vector<std::string> synthetic, const std::vector<std::string>& models,
           std::vector<double> zeta, std::vector<double> mu, std::vector<double> a,
           const std::vector<std::string>& kernels, std::size_t repeats, std::size_t folds, std::uint64_t seed,
           const std::string& format) {
            BenchConfig cfg;
            cfg.datasets = std::move(datasets);
            cfg.synthetic = std::move(synthetic);
            cfg.models.clear();
            for (const auto& name : models) {
                cfg.models.push_back(parse_model_kind(name));
            }
            if (!zeta.empty()) cfg.grid.zeta = std::move(zeta);
            if (!mu.empty()) cfg.grid.mu = std::move(mu);
            if (!a.empty()) cfg.grid.a = std::move(a);
            if (!kernels.empty()) cfg.grid.kernels = parse_kernels(kernels);
            cfg.repeats = repeats;
            cfg.folds = folds;
            cfg.seed = seed;
            py::gil_scoped_release release;
            return format_report(run_benchmark(cfg), parse_report_format(format));
        },
        py::arg("datasets") = std::vector<std::string>{}, py::arg("synthetic") = std::vector<std::string>{},
        py::arg("models") = std::vector<std::string>{"dec", "sffsvm", "isffsvm"},
        py::arg("zeta") = std::vector<double>{}, py::arg("mu") = std::vector<double>{},
        py::arg("a") = std::vector<double>{}, py::arg("kernels") = std::vector<std::string>{},
        py::arg("repeats") = 3, py::arg("folds") = 5, py::arg("seed") = 0, py::arg("format") = "csv",
        "Returns the report text.");
}
