#include "susy/cli.hpp"
#include "susy/errors.hpp"
#include "susy/oracle.hpp"
#include "susy/propagators.hpp"

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace susy;

namespace {

ComplexTime as_time(py::object t)
{
    if (py::isinstance<ComplexTime>(t)) return t.cast<ComplexTime>();
    const cplx v = t.cast<cplx>();
    return ComplexTime(v.real(), -v.imag());
}

template <class F>
py::array_t<cplx> on_grid(const std::vector<double>& xs, const std::vector<double>& ys, F&& f)
{
    py::array_t<cplx> out({xs.size(), ys.size()});
    auto r = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < ys.size(); ++j) r(i, j) = f(xs[i], ys[j]);
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "susyprop core bindings";
    m.attr("__version__") = SUSYPROP_VERSION;

    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
    py::register_exception<AdmissibilityError>(m, "AdmissibilityError", PyExc_ValueError);
    py::register_exception<ConfigurationError>(m, "ConfigurationError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

    py::enum_<BaseKind>(m, "BaseKind")
        .value("FreeLine", BaseKind::FreeLine)
        .value("Box", BaseKind::Box)
        .value("Oscillator", BaseKind::Oscillator);
    py::enum_<Action>(m, "Action")
        .value("RemoveLevel", Action::RemoveLevel)
        .value("CreateLevel", Action::CreateLevel)
        .value("Isospectral", Action::Isospectral);
    py::enum_<Side>(m, "Side").value("Left", Side::Left).value("Right", Side::Right);

    py::class_<ComplexTime>(m, "ComplexTime")
        .def(py::init<double, double>(), py::arg("real") = 0.0, py::arg("wick") = 0.0)
        .def_static("wick", &ComplexTime::wick)
        .def_static("real", &ComplexTime::real)
        .def_readonly("real_part", &ComplexTime::real_part)
        .def_readonly("wick_part", &ComplexTime::wick_part)
        .def("value", &ComplexTime::value);

    py::class_<BasisFunction>(m, "BasisFunction")
        .def_static("trig_box", &BasisFunction::trig_box)
        .def_static("cosh", &BasisFunction::cosh, py::arg("a"), py::arg("b") = 0.0)
        .def_static("sinh", &BasisFunction::sinh, py::arg("a"), py::arg("b") = 0.0)
        .def_static("hermite_gaussian", &BasisFunction::hermite_gaussian)
        .def_static("plane_exp", &BasisFunction::plane_exp)
        .def_property_readonly("energy", &BasisFunction::energy)
        .def("__repr__", &BasisFunction::describe);

    py::class_<DarbouxChain>(m, "DarbouxChain")
        .def(py::init([](BaseKind base, std::vector<BasisFunction> fs, std::vector<Action> actions, bool override_adm) {
                 return DarbouxChain(base, std::move(fs), std::move(actions), DarbouxChain::Options{override_adm});
             }),
             py::arg("base"), py::arg("functions"), py::arg("actions"), py::arg("override_admissibility") = false)
        .def_property_readonly("alphas", &DarbouxChain::alphas)
        .def("__len__", &DarbouxChain::size);

    m.def("transparent_chain", &transparent_chain, py::arg("a"), py::arg("b") = std::vector<double>{});
    m.def("transformed_potential", [](const DarbouxChain& c, std::vector<double> xs) {
        for (double& x : xs) x = transformed_potential(c, x);
        return xs;
    });
    m.def("transparent_eigenfunction", &transparent_eigenfunction);
    m.def("oscillator_pair_potential", &oscillator_pair_potential);

    m.def("free_propagator", [](double x, double y, py::object t) { return free_propagator(x, y, as_time(t)); });
    m.def("free_green", &free_green);
    m.def("oscillator_propagator", [](double x, double y, py::object t) { return oscillator_propagator(x, y, as_time(t)); });
    m.def("box_propagator0", [](double x, double y, py::object t) { return box_propagator0(x, y, as_time(t)); });
    m.def("box_removed_ground_kernel",
          [](std::vector<double> xs, std::vector<double> ys, py::object t) {
              const auto tt = as_time(t);
              return on_grid(xs, ys, [&](double x, double y) { return box_removed_ground_kernel(x, y, tt); });
          });
    m.def("oscillator_pair_kernel", [](int k, std::vector<double> xs, std::vector<double> ys, py::object t) {
        const auto tt = as_time(t);
        return on_grid(xs, ys, [&](double x, double y) { return oscillator_pair_kernel(k, x, y, tt); });
    });
    m.def("transparent_propagator", [](const DarbouxChain& c, std::vector<double> xs, std::vector<double> ys, py::object t) {
        const auto tt = as_time(t);
        return on_grid(xs, ys, [&](double x, double y) { return transparent_propagator(c, x, y, tt); });
    });
    m.def("oscillator_generating_S", [](double J, double x, double y, py::object t, int order) {
        return oscillator_generating_S(J, x, y, as_time(t), order);
    });

    m.def("theorem2_kernel", [](const DarbouxChain& c, double x, double y, py::object t, Side s) {
        return theorem2_kernel(c, x, y, as_time(t), s);
    }, py::arg("chain"), py::arg("x"), py::arg("y"), py::arg("t"), py::arg("branch") = Side::Left);
    m.def("theorem3_kernel", [](const DarbouxChain& c, double x, double y, py::object t, Side s) {
        return theorem3_kernel(c, x, y, as_time(t), s);
    }, py::arg("chain"), py::arg("x"), py::arg("y"), py::arg("t"), py::arg("branch") = Side::Left);
    m.def("theorem4_kernel", [](const DarbouxChain& c, const std::vector<Side>& sides, double x, double y, py::object t) {
        return theorem4_kernel(c, sides, x, y, as_time(t));
    });
    m.def("general_poly_kernel", [](const DarbouxChain& c, double x, double y, py::object t) {
        return general_poly_kernel(c, x, y, as_time(t));
    });

    m.def("lemma3_identity", &oracle::lemma3_identity);
    m.def("fd_eigensolve",
          [](const std::function<double(double)>& V, double a, double b, int n_points, int states) {
              const auto e = oracle::fd_eigensolve(V, oracle::GridSpec(a, b, n_points), states);
              py::array_t<double> psi({e.size(), e.grid.n_points});
              auto r = psi.mutable_unchecked<2>();
              for (int k = 0; k < e.size(); ++k)
                  for (int i = 0; i < e.grid.n_points; ++i) r(k, i) = e.wavefunctions[k][i];
              return py::make_tuple(e.energies, psi);
          },
          py::arg("V"), py::arg("a"), py::arg("b"), py::arg("n_points"), py::arg("states"));
    m.def("spectral_kernel", [](const std::function<double(double)>& V, double a, double b, int n_points, int states,
                                std::vector<double> xs, std::vector<double> ys, double tau) {
        const auto e = oracle::fd_eigensolve(V, oracle::GridSpec(a, b, n_points), states);
        return on_grid(xs, ys, [&](double x, double y) { return oracle::spectral_kernel(e, x, y, tau); });
    });

    m.def("load_config", [](const std::string& text) {
        const auto c = cli::load_config_text(text);
        py::dict d;
        d["base"] = to_string(c.base);
        d["chain_length"] = c.chain.size();
        d["method"] = cli::to_string(c.method);
        d["seed"] = c.seed;
        d["config_hash"] = cli::config_hash(c);
        return d;
    });
    m.def("propagator_table", [](const std::string& text) { return cli::to_csv(cli::cmd_propagator(cli::load_config_text(text))); },
          "CSV table of the propagator command for a YAML configuration.");
    m.def("verify", [](const std::string& suite, std::uint64_t seed) {
        const auto rep = cli::cmd_verify(suite, seed);
        py::list checks;
        for (const auto& c : rep.checks) {
            py::dict d;
            d["name"] = c.name;
            d["deviation"] = c.deviation;
            d["tolerance"] = c.tolerance;
            d["pass"] = c.pass;
            checks.append(d);
        }
        return py::make_tuple(rep.all_pass(), checks);
    }, py::arg("suite") = "identities", py::arg("seed") = 0);
}
