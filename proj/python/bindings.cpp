#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "minkl/balance.hpp"
#include "minkl/binary.hpp"
#include "minkl/distribution.hpp"
#include "minkl/dstar.hpp"
#include "minkl/errors.hpp"
#include "minkl/sanov.hpp"
#include "minkl/vajda.hpp"

namespace py = pybind11;

namespace {

minkl::DStarOptions make_options(bool full_range, const std::string& method,
                                 std::size_t k_max) {
    minkl::DStarOptions opts;
    opts.full_range = full_range;
    opts.k_max = k_max;
    if (method == "enumerate") {
        opts.method = minkl::DStarOptions::Method::enumerate;
    } else if (method == "closed") {
        opts.method = minkl::DStarOptions::Method::closed;
    } else if (method != "auto") {
        throw minkl::input_error("method must be auto, enumerate, or closed");
    }
    return opts;
}

const char* method_name(minkl::DStarMethod m) {
    switch (m) {
        case minkl::DStarMethod::closed_form_thm1b: return "closed_form_thm1b";
        case minkl::DStarMethod::upper_bound_thm1a: return "upper_bound_thm1a";
        case minkl::DStarMethod::enumeration: return "enumeration";
        case minkl::DStarMethod::full_range_thm2: return "full_range_thm2";
    }
    return "unknown";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Minimum KL divergence on complements of total-variation balls";

    py::register_exception<minkl::input_error>(m, "InputError", PyExc_ValueError);
    py::register_exception<minkl::domain_error>(m, "DomainError", PyExc_ValueError);
    py::register_exception<minkl::capacity_error>(m, "CapacityError", PyExc_RuntimeError);

    py::class_<minkl::DiscreteDistribution>(m, "DiscreteDistribution")
        .def(py::init<std::vector<double>, bool>(), py::arg("weights"),
             py::arg("renormalize") = false)
        .def_property_readonly("weights", &minkl::DiscreteDistribution::weights)
        .def("__len__", &minkl::DiscreteDistribution::size)
        .def("__getitem__",
             [](const minkl::DiscreteDistribution& d, std::size_t i) {
                 if (i >= d.size()) throw py::index_error();
                 return d[i];
             })
        .def("mass",
             [](const minkl::DiscreteDistribution& d, const std::vector<std::size_t>& a) {
                 return d.mass(a);
             })
        .def("__repr__", [](const minkl::DiscreteDistribution& d) {
            std::string s = "DiscreteDistribution([";
            for (std::size_t i = 0; i < d.size(); ++i) {
                s += (i ? ", " : "") + std::to_string(d[i]);
            }
            return s + "])";
        });

    m.def(
        "total_variation",
        [](const std::vector<double>& p, const std::vector<double>& q) {
            return minkl::total_variation(minkl::DiscreteDistribution(p),
                                          minkl::DiscreteDistribution(q));
        },
        py::arg("p"), py::arg("q"));
    m.def(
        "kl_divergence",
        [](const std::vector<double>& p, const std::vector<double>& q) {
            return minkl::kl_divergence(minkl::DiscreteDistribution(p),
                                        minkl::DiscreteDistribution(q))
                .value();
        },
        py::arg("p"), py::arg("q"));

    m.def(
        "kl2", [](double p, double q) { return minkl::kl2(p, q).value(); }, py::arg("p"),
        py::arg("q"));
    m.def(
        "extremal_binary",
        [](double q0, double v) {
            const auto r = minkl::extremal_binary(minkl::BinaryDistribution(q0), v);
            return py::make_tuple(r.extremal.q0(), r.value.value());
        },
        py::arg("q0"), py::arg("v"),
        "Returns (p0 of the minimizer, divergence value) for binary Q with q0 > 1/2.");

    py::class_<minkl::BalanceReport>(m, "BalanceReport")
        .def_readonly("beta", &minkl::BalanceReport::beta)
        .def_readonly("achieving_subset", &minkl::BalanceReport::achieving_subset)
        .def_property_readonly("method",
                               [](const minkl::BalanceReport& r) {
                                   return r.method == minkl::BalanceMethod::exact
                                              ? "exact"
                                              : "greedy_bound";
                               })
        .def_readonly("upper_bound", &minkl::BalanceReport::upper_bound)
        .def_readonly("qmax_bound", &minkl::BalanceReport::qmax_bound)
        .def_readonly("phi", &minkl::BalanceReport::phi);

    m.def(
        "balance_exact",
        [](const std::vector<double>& q, std::size_t k_max) {
            return minkl::balance_exact(minkl::DiscreteDistribution(q), k_max);
        },
        py::arg("q"), py::arg("k_max") = minkl::kDefaultKMax);
    m.def(
        "balance_greedy",
        [](const std::vector<double>& q) {
            return minkl::balance_greedy(minkl::DiscreteDistribution(q));
        },
        py::arg("q"));
    m.def("phi_coefficient", &minkl::phi_coefficient, py::arg("beta"));

    py::class_<minkl::DStarResult>(m, "DStarResult")
        .def_property_readonly("value",
                               [](const minkl::DStarResult& r) { return r.value.value(); })
        .def_property_readonly("method",
                               [](const minkl::DStarResult& r) { return method_name(r.method); })
        .def_property_readonly("extremal",
                               [](const minkl::DStarResult& r) -> py::object {
                                   if (!r.extremal) return py::none();
                                   return py::cast(r.extremal->weights());
                               })
        .def_property_readonly("achieving_subset",
                               [](const minkl::DStarResult& r) -> py::object {
                                   if (!r.achieving_subset) return py::none();
                                   return py::cast(*r.achieving_subset);
                               })
        .def_readonly("upper_bound_only", &minkl::DStarResult::upper_bound_only)
        .def_property_readonly("lower", [](const minkl::DStarResult& r) -> py::object {
            if (!r.lower) return py::none();
            return py::float_(*r.lower);
        });

    m.def(
        "extremal_tilt",
        [](const std::vector<double>& q, const std::vector<std::size_t>& a, double v) {
            return minkl::extremal_tilt(minkl::DiscreteDistribution(q), a, v).weights();
        },
        py::arg("q"), py::arg("a"), py::arg("v"));
    m.def(
        "dstar_enumerate",
        [](const std::vector<double>& q, double v, std::size_t k_max) {
            return minkl::dstar_enumerate(minkl::DiscreteDistribution(q), v, k_max);
        },
        py::arg("q"), py::arg("v"), py::arg("k_max") = minkl::kDefaultKMax);
    m.def(
        "dstar",
        [](const std::vector<double>& q, double v, bool full_range, const std::string& method,
           std::size_t k_max) {
            return minkl::dstar(minkl::DiscreteDistribution(q), v,
                                make_options(full_range, method, k_max));
        },
        py::arg("q"), py::arg("v"), py::arg("full_range") = false, py::arg("method") = "auto",
        py::arg("k_max") = minkl::kDefaultKMax);
    m.def("pinsker_lower", &minkl::pinsker_lower, py::arg("v"));
    m.def(
        "ow_lower",
        [](const std::vector<double>& q, double v, std::size_t k_max) {
            return minkl::ow_lower(minkl::DiscreteDistribution(q), v, k_max);
        },
        py::arg("q"), py::arg("v"), py::arg("k_max") = minkl::kDefaultKMax);
    m.def("expansion_thm1", &minkl::expansion_thm1, py::arg("beta"), py::arg("v"),
          py::arg("order"));
    m.def(
        "binary_coarsen",
        [](const std::vector<double>& p, const std::vector<std::size_t>& a) {
            return minkl::binary_coarsen(minkl::DiscreteDistribution(p), a).q0();
        },
        py::arg("p"), py::arg("a"), "Mass P(A) of the two-cell coarsening (P(A), 1 - P(A)).");

    py::class_<minkl::VajdaPoint>(m, "VajdaPoint")
        .def_readonly("t", &minkl::VajdaPoint::t)
        .def_readonly("v", &minkl::VajdaPoint::v)
        .def_readonly("L", &minkl::VajdaPoint::L);
    m.def("vajda_parametric", &minkl::vajda_parametric, py::arg("t"));
    m.def("vajda_L", &minkl::vajda_L, py::arg("v"));
    m.def("vajda_by_minimization", &minkl::vajda_by_minimization, py::arg("v"),
          py::arg("grid_points") = 10000);

    py::class_<minkl::SanovEstimate>(m, "SanovEstimate")
        .def_readonly("p_hat_ge_eps", &minkl::SanovEstimate::p_hat_ge_eps)
        .def_readonly("p_hat_centered", &minkl::SanovEstimate::p_hat_centered)
        .def_property_readonly(
            "rate_estimate",
            [](const minkl::SanovEstimate& e) { return e.rate_estimate.value(); })
        .def_readonly("e_jn_hat", &minkl::SanovEstimate::e_jn_hat)
        .def_readonly("e_jn_se", &minkl::SanovEstimate::e_jn_se)
        .def_readonly("ci_halfwidth", &minkl::SanovEstimate::ci_halfwidth)
        .def_readonly("insufficient_trials", &minkl::SanovEstimate::insufficient_trials);

    m.def(
        "monte_carlo",
        [](const std::vector<double>& q, std::int64_t n, double epsilon, std::int64_t trials,
           std::uint64_t seed, int threads) {
            const minkl::SimConfig cfg{minkl::DiscreteDistribution(q), n,    epsilon,
                                       trials,                         seed, threads};
            py::gil_scoped_release release;
            return minkl::monte_carlo(cfg);
        },
        py::arg("q"), py::arg("n"), py::arg("epsilon"), py::arg("trials"), py::arg("seed"),
        py::arg("threads") = 1);
    m.def(
        "sample_jn",
        [](const std::vector<double>& q, std::int64_t n, std::uint64_t seed,
           std::uint64_t trial) {
            minkl::TrialStream stream(seed, trial);
            return minkl::sample_jn(minkl::DiscreteDistribution(q), n, stream);
        },
        py::arg("q"), py::arg("n"), py::arg("seed"), py::arg("trial") = 0);
    m.def(
        "binary_tail_exact",
        [](double q0, std::int64_t n, double epsilon) {
            return minkl::binary_tail_exact(minkl::BinaryDistribution(q0), n, epsilon);
        },
        py::arg("q0"), py::arg("n"), py::arg("epsilon"));
    m.def("mcdiarmid_bound", &minkl::mcdiarmid_bound, py::arg("n"), py::arg("epsilon"));

    py::class_<minkl::LambdaBounds>(m, "LambdaBounds")
        .def_readonly("lambda_n", &minkl::LambdaBounds::lambda)
        .def_readonly("lower", &minkl::LambdaBounds::lower)
        .def_readonly("upper_sqrt_k", &minkl::LambdaBounds::upper_sqrt_k)
        .def_readonly("upper_sum_sqrt", &minkl::LambdaBounds::upper_sum_sqrt);
    m.def(
        "lambda_n",
        [](const std::vector<double>& q, std::int64_t n) {
            return minkl::lambda_n(minkl::DiscreteDistribution(q), n);
        },
        py::arg("q"), py::arg("n"));

#ifdef MINKL_VERSION
#define MINKL_STR2(x) #x
#define MINKL_STR(x) MINKL_STR2(x)
    m.attr("__version__") = MINKL_STR(MINKL_VERSION);
#else
    m.attr("__version__") = "dev";
#endif
}
