#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "zetaheat/verify.hpp"
#include "zetaheat/zeta.hpp"

namespace py = pybind11;
using namespace zetaheat;

namespace {

spectrum::OperatorModel make_dirichlet(double length) {
    return spectrum::OperatorModel(1, 2, spectrum::DirichletInterval{length},
                                   "dirichlet");
}

spectrum::OperatorModel make_explicit(
    const std::vector<std::pair<double, long>>& levels, int n, double h) {
    return spectrum::OperatorModel(n, h, spectrum::ExplicitSpectrum{levels},
                                   "explicit");
}

spectrum::OperatorModel make_knownseq(double c, double p, int n, double h) {
    return spectrum::OperatorModel(n, h, spectrum::KnownSequence{c, p}, "knownseq");
}

py::dict to_dict(const zeta::ZetaValue& v) {
    py::dict d;
    d["s"] = v.s;
    d["value"] = v.value;
    d["error"] = v.error_estimate;
    d["m"] = v.plan.m;
    d["route"] = v.route;
    d["lattice_offset_used"] = v.lattice_offset_used;
    d["modes_max"] = v.modes_max;
    d["evaluations"] = v.evaluations;
    return d;
}

}  // namespace

PYBIND11_MODULE(_zetaheat, mod) {
    mod.doc() = "spectral zeta continuation via modified heat kernels";

    py::register_exception<pole_error>(mod, "PoleError");
    py::register_exception<budget_error>(mod, "BudgetError");

    py::class_<spectrum::OperatorModel>(mod, "OperatorModel")
        .def_property_readonly("n", &spectrum::OperatorModel::dimension)
        .def_property_readonly("h", &spectrum::OperatorModel::order)
        .def_property_readonly("name", &spectrum::OperatorModel::name)
        .def("lambda_min", &spectrum::OperatorModel::lambda_min);

    mod.def("dirichlet_interval", &make_dirichlet, py::arg("length"));
    mod.def("explicit_spectrum", &make_explicit, py::arg("levels"), py::arg("n") = 1,
            py::arg("h") = 2.0);
    mod.def("known_sequence", &make_knownseq, py::arg("c"), py::arg("p"),
            py::arg("n") = 1, py::arg("h") = 2.0);

    py::class_<zeta::Engine>(mod, "Engine")
        .def(py::init([](const spectrum::OperatorModel& model) {
                 return zeta::Engine(model);
             }),
             py::arg("model"), py::keep_alive<1, 2>())
        .def("zeta",
             [](const zeta::Engine& e, double s) { return to_dict(e.zeta_continued(s)); },
             py::arg("s"))
        .def("zeta_direct",
             [](const zeta::Engine& e, double s) { return to_dict(e.zeta_direct(s)); },
             py::arg("s"))
        .def("zeta_at_zero",
             [](const zeta::Engine& e) { return to_dict(e.zeta_at_zero()); })
        .def("zeta_prime_at_zero",
             [](const zeta::Engine& e) { return to_dict(e.zeta_prime_at_zero()); })
        .def("det", &zeta::Engine::det_zeta)
        .def("residue",
             [](const zeta::Engine& e, int k) {
                 auto r = e.residue_at(k);
                 py::dict d;
                 d["k"] = r.k;
                 d["s0"] = r.s0;
                 d["residue"] = r.residue;
                 d["residue_error"] = r.residue_error;
                 if (r.a_k) d["a_k"] = *r.a_k;
                 return d;
             },
             py::arg("k"))
        .def("seeley",
             [](const zeta::Engine& e, int k) {
                 auto r = e.seeley_coefficient(k);
                 py::dict d;
                 d["k"] = r.k;
                 d["value"] = r.value;
                 d["error"] = r.error_estimate;
                 d["route"] = r.route;
                 return d;
             },
             py::arg("k"));

    mod.def(
        "ode_residual",
        [](const std::string& variant, int n, int h, int m, double lambda) {
            verify::OdeVariant v;
            if (variant == "s0") v = verify::OdeVariant::s0;
            else if (variant == "spos") v = verify::OdeVariant::spos;
            else if (variant == "sneg_printed") v = verify::OdeVariant::sneg_printed;
            else if (variant == "sneg_derived") v = verify::OdeVariant::sneg_derived;
            else throw std::domain_error("unknown variant " + variant);
            return verify::ode_residual(v, n, h, m, lambda).relative;
        },
        py::arg("variant"), py::arg("n"), py::arg("h"), py::arg("m"),
        py::arg("lambda_"));
    mod.def(
        "xi_residual",
        [](int n, double h, int m, double lambda) {
            return verify::xi_residual(n, h, m, lambda).relative;
        },
        py::arg("n"), py::arg("h"), py::arg("m"), py::arg("lambda_"));
}
