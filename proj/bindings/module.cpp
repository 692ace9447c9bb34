#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hogboost/benchmark.hpp"
#include "hogboost/booster.hpp"
#include "hogboost/dataset.hpp"
#include "hogboost/leaf_solver.hpp"
#include "hogboost/loss.hpp"
#include "hogboost/model_store.hpp"
#include "hogboost/tree_builder.hpp"

namespace py = pybind11;
using namespace hogboost;

namespace {

std::vector<double> to_vector(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 1) throw std::invalid_argument("expected a 1-d array");
    return std::vector<double>(a.data(), a.data() + a.shape(0));
}

py::array_t<double> to_array(const std::vector<double>& v) {
    py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

Dataset dataset_from_arrays(
    const py::array_t<double, py::array::c_style | py::array::forcecast>& X,
    const py::array_t<double, py::array::c_style | py::array::forcecast>& y) {
    if (X.ndim() != 2) throw std::invalid_argument("X must be 2-d (rows, features)");
    if (y.ndim() != 1 || y.shape(0) != X.shape(0))
        throw std::invalid_argument("y must be 1-d with one label per row of X");
    const std::size_t n = static_cast<std::size_t>(X.shape(0));
    const std::size_t m = static_cast<std::size_t>(X.shape(1));
    std::vector<std::vector<double>> columns(m, std::vector<double>(n));
    auto x = X.unchecked<2>();
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t f = 0; f < m; ++f) columns[f][r] = x(r, f);
    return Dataset(std::move(columns), std::vector<double>(y.data(), y.data() + n));
}

LossKind parse_loss(const std::string& s) { return loss_kind_from_string(s); }

} // namespace

PYBIND11_MODULE(_hogboost, m) {
    m.doc() = "gradient boosted trees with order-2/3/4 leaf optimization";

    py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
    py::register_exception<DegenerateDenominatorError>(m, "DegenerateDenominatorError",
                                                       PyExc_ArithmeticError);
    py::register_exception<ModelFormatError>(m, "ModelFormatError", PyExc_ValueError);

    py::class_<Dataset>(m, "Dataset")
        .def_static("from_arrays", &dataset_from_arrays, py::arg("X"), py::arg("y"))
        .def_property_readonly("n_rows", &Dataset::n_rows)
        .def_property_readonly("n_features", &Dataset::n_features)
        .def("column",
             [](const Dataset& d, std::size_t f) {
                 auto col = d.column(f);
                 return to_array(std::vector<double>(col.begin(), col.end()));
             })
        .def("labels", [](const Dataset& d) {
            auto l = d.labels();
            return to_array(std::vector<double>(l.begin(), l.end()));
        });

    m.def(
        "load_csv",
        [](const std::string& path, const std::string& label, bool has_header,
           std::size_t max_rows, bool require_binary_labels) {
            return load_csv(path, LabelColumn{label}, has_header, max_rows,
                            require_binary_labels);
        },
        py::arg("path"), py::arg("label") = "label", py::arg("has_header") = true,
        py::arg("max_rows") = 0, py::arg("require_binary_labels") = false);
    m.def("save_csv", &save_csv, py::arg("dataset"), py::arg("path"));
    m.def("make_synthetic", &make_synthetic, py::arg("n_rows"), py::arg("n_features"),
          py::arg("seed"));

    m.def(
        "derivatives",
        [](const std::string& loss, const py::array_t<double>& labels,
           const py::array_t<double>& preds, int order) {
            GradBundle b = derivatives(parse_loss(loss), to_vector(labels), to_vector(preds), order);
            py::dict out;
            out["g1"] = to_array(b.g1);
            if (order >= 2) out["g2"] = to_array(b.g2);
            if (order >= 3) out["g3"] = to_array(b.g3);
            if (order >= 4) out["g4"] = to_array(b.g4);
            return out;
        },
        py::arg("loss"), py::arg("labels"), py::arg("predictions"), py::arg("order") = 4);
    m.def(
        "loss_value",
        [](const std::string& loss, const py::array_t<double>& labels,
           const py::array_t<double>& preds) {
            return loss_value(parse_loss(loss), to_vector(labels), to_vector(preds));
        },
        py::arg("loss"), py::arg("labels"), py::arg("predictions"));
    m.def(
        "fd_derivative",
        [](const std::string& loss, double label, double prediction, int k, double h) {
            return fd_derivative(parse_loss(loss), label, prediction, k, h);
        },
        py::arg("loss"), py::arg("label"), py::arg("prediction"), py::arg("k"), py::arg("h"));

    py::class_<GradStats>(m, "GradStats")
        .def(py::init([](double g1, double g2, double g3, double g4, std::int64_t count) {
                 return GradStats{g1, g2, g3, g4, count};
             }),
             py::arg("g1"), py::arg("g2"), py::arg("g3") = 0.0, py::arg("g4") = 0.0,
             py::arg("count") = 0)
        .def_readwrite("g1", &GradStats::g1)
        .def_readwrite("g2", &GradStats::g2)
        .def_readwrite("g3", &GradStats::g3)
        .def_readwrite("g4", &GradStats::g4)
        .def_readwrite("count", &GradStats::count);

    py::class_<SolverDiagnostics>(m, "SolverDiagnostics")
        .def_readonly("alpha", &SolverDiagnostics::alpha)
        .def_readonly("fallback_used", &SolverDiagnostics::fallback_used)
        .def_readonly("newton_weight", &SolverDiagnostics::newton_weight);

    auto weight_pair = [](const WeightResult& r) { return py::make_tuple(r.weight, r.diag); };
    m.def("weight_order2", &weight_order2, py::arg("stats"), py::arg("lambda_"));
    m.def(
        "weight_cubic_exact",
        [weight_pair](const GradStats& s, double lam) { return weight_pair(weight_cubic_exact(s, lam)); },
        py::arg("stats"), py::arg("lambda_"));
    m.def(
        "weight_cubic_series",
        [weight_pair](const GradStats& s, double lam, double trust) {
            return weight_pair(weight_cubic_series(s, lam, trust));
        },
        py::arg("stats"), py::arg("lambda_"), py::arg("trust_alpha") = 1.0);
    m.def(
        "weight_halley",
        [weight_pair](const GradStats& s, double lam, double trust) {
            return weight_pair(weight_halley(s, lam, trust));
        },
        py::arg("stats"), py::arg("lambda_"), py::arg("trust_alpha") = 1.0);
    m.def(
        "weight_order4",
        [weight_pair](const GradStats& s, double lam, const std::string& formula, double trust) {
            return weight_pair(weight_order4(s, lam, fourth_order_formula_from_string(formula), trust));
        },
        py::arg("stats"), py::arg("lambda_"), py::arg("formula") = "classical",
        py::arg("trust_alpha") = 1.0);

    py::class_<SolverConfig>(m, "SolverConfig")
        .def(py::init([](int order, double lambda, const std::string& cubic_mode,
                         double trust_alpha, const std::string& fourth) {
                 return SolverConfig{order, lambda, cubic_mode_from_string(cubic_mode),
                                     trust_alpha, fourth_order_formula_from_string(fourth)};
             }),
             py::arg("order") = 2, py::arg("lambda_") = 1.0, py::arg("cubic_mode") = "halley",
             py::arg("trust_alpha") = 1.0, py::arg("fourth_order_formula") = "classical")
        .def_readwrite("order", &SolverConfig::order)
        .def_readwrite("lambda_", &SolverConfig::lambda)
        .def_readwrite("trust_alpha", &SolverConfig::trust_alpha);
    m.def("leaf_score", &leaf_score, py::arg("stats"), py::arg("config"));
    m.def(
        "solve_leaf",
        [](const GradStats& s, const SolverConfig& c) {
            LeafSolution sol = solve_leaf(s, c);
            return py::make_tuple(sol.weight, sol.score, sol.diag);
        },
        py::arg("stats"), py::arg("config"));

    py::class_<BoostConfig>(m, "BoostConfig")
        .def(py::init<>())
        .def_readwrite("n_rounds", &BoostConfig::n_rounds)
        .def_readwrite("learning_rate", &BoostConfig::learning_rate)
        .def_readwrite("order", &BoostConfig::order)
        .def_readwrite("lambda_", &BoostConfig::lambda)
        .def_readwrite("max_depth", &BoostConfig::max_depth)
        .def_readwrite("min_child_rows", &BoostConfig::min_child_rows)
        .def_readwrite("min_gain", &BoostConfig::min_gain)
        .def_readwrite("trust_alpha", &BoostConfig::trust_alpha)
        .def_readwrite("early_stop_rounds", &BoostConfig::early_stop_rounds)
        .def_readwrite("seed", &BoostConfig::seed)
        .def_readwrite("base_score", &BoostConfig::base_score)
        .def_property(
            "loss", [](const BoostConfig& c) { return to_string(c.loss); },
            [](BoostConfig& c, const std::string& s) { c.loss = loss_kind_from_string(s); })
        .def_property(
            "cubic_mode", [](const BoostConfig& c) { return to_string(c.cubic_mode); },
            [](BoostConfig& c, const std::string& s) { c.cubic_mode = cubic_mode_from_string(s); })
        .def_property(
            "fourth_order_formula",
            [](const BoostConfig& c) { return to_string(c.fourth_order_formula); },
            [](BoostConfig& c, const std::string& s) {
                c.fourth_order_formula = fourth_order_formula_from_string(s);
            });

    py::class_<RoundRecord>(m, "RoundRecord")
        .def_readonly("round", &RoundRecord::round)
        .def_readonly("train_loss", &RoundRecord::train_loss)
        .def_readonly("valid_loss", &RoundRecord::valid_loss)
        .def_readonly("valid_accuracy", &RoundRecord::valid_accuracy)
        .def_readonly("cumulative_time_ms", &RoundRecord::cumulative_time_ms)
        .def_readonly("fallback_count", &RoundRecord::fallback_count);

    py::class_<Model>(m, "Model")
        .def_readonly("base_score", &Model::base_score)
        .def_readonly("feature_count", &Model::feature_count)
        .def_property_readonly("n_trees", [](const Model& m_) { return m_.trees.size(); })
        .def_property_readonly("config", [](const Model& m_) { return m_.config; });

    m.def(
        "fit",
        [](const Dataset& train, const Dataset* valid, const BoostConfig& config) {
            FitResult r = fit(train, valid, config);
            return py::make_tuple(std::move(r.model), std::move(r.records));
        },
        py::arg("train"), py::arg("valid") = nullptr, py::arg("config") = BoostConfig{});
    m.def("predict",
          [](const Model& model, const Dataset& d) { return to_array(predict(model, d)); });
    m.def("predict_proba",
          [](const Model& model, const Dataset& d) { return to_array(predict_proba(model, d)); });
    m.def("evaluate", [](const Model& model, const Dataset& d) {
        EvalResult r = evaluate(model, d);
        return py::make_tuple(r.loss, r.accuracy);
    });

    m.def("save_model", &save_model, py::arg("model"), py::arg("path"));
    m.def("load_model", &load_model, py::arg("path"));
    m.def("serialize_model", &serialize_model, py::arg("model"));

    m.attr("__version__") = "1.0.0";
}
