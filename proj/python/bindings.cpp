#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cubicvpe/ccr.hpp"
#include "cubicvpe/errors.hpp"
#include "cubicvpe/report.hpp"
#include "cubicvpe/rs_perturbation.hpp"
#include "cubicvpe/vpe.hpp"
#include "cubicvpe/wkb.hpp"

namespace py = pybind11;
using namespace cubicvpe;

namespace {

CoefficientStore& store()
{
    static CoefficientStore s;
    return s;
}

VpeEnergyFunction energy_function(int n, int order)
{
    return VpeEnergyFunction(store().get(n, order + 1), order);
}

py::list to_records(const report::Table& t)
{
    py::list rows;
    for (const auto& row : t.rows) {
        py::dict d;
        for (std::size_t k = 0; k < row.size(); ++k) {
            const auto& c = row[k];
            py::object v = py::none();
            if (const auto* i = std::get_if<long long>(&c)) {
                v = py::int_(*i);
            } else if (const auto* x = std::get_if<double>(&c)) {
                v = py::float_(*x);
            } else if (const auto* s = std::get_if<std::string>(&c)) {
                v = py::str(*s);
            }
            d[py::str(t.columns[k])] = v;
        }
        rows.append(d);
    }
    return rows;
}

py::dict optimum_dict(const OptimizationResult& o)
{
    py::dict d;
    d["energy"] = o.energy;
    d["omega"] = o.trial.omega;
    d["x0"] = o.trial.x0;
    d["residual"] = o.residual_norm;
    d["iterations"] = o.iterations;
    d["curvature"] = o.curvature;
    d["branch"] = o.branch_tag;
    return d;
}

std::string csv_of(const report::Table& t)
{
    std::ostringstream os;
    report::write_csv(os, t);
    return os.str();
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Cubic anharmonic oscillator resonances: RS series, VPE, WKB and complex rotation.";

    static py::exception<ConvergenceError> convergence(m, "ConvergenceError", PyExc_RuntimeError);
    static py::exception<SingularExpansion> singular(m, "SingularExpansion", PyExc_ArithmeticError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const ConvergenceError& e) {
            PyErr_SetString(convergence.ptr(), e.what());
        } catch (const SingularExpansion& e) {
            PyErr_SetString(singular.ptr(), e.what());
        }
    });

    m.def(
        "rs_coefficients",
        [](int n, int order) {
            const auto c = store().get(n, order);
            std::vector<std::string> out;
            for (const auto& r : c.coeffs) {
                out.push_back(to_string(r));
            }
            return out;
        },
        py::arg("n"), py::arg("order"), "Exact E_0..E_order as 'p/q' strings.");
    m.def(
        "rs_partial_sum",
        [](double lambda, int n, int order, double omega) { return rs_partial_sum(store().get(n, order), lambda, omega); },
        py::arg("lambda_"), py::arg("n"), py::arg("order"), py::arg("omega") = 1.0);

    m.def(
        "vpe",
        [](double lambda, int n, int order, double omega) {
            SweepOptions o;
            o.newton.omega = omega;
            return optimum_dict(solve_vpe(energy_function(n, order), lambda, o));
        },
        py::arg("lambda_"), py::arg("n") = 0, py::arg("order") = 7, py::arg("omega") = 1.0,
        "Stationary VPE energy and trial point on the branch continued from (1, 0).");
    m.def(
        "vpe_energy",
        [](double lambda, int n, int order, std::complex<double> omega_trial, std::complex<double> x0, double omega) {
            return energy_function(n, order)(lambda, TrialPoint{omega_trial, x0}, omega);
        },
        py::arg("lambda_"), py::arg("n"), py::arg("order"), py::arg("trial_omega"), py::arg("x0"),
        py::arg("omega") = 1.0, "Reexpanded energy at an arbitrary trial point.");
    m.def("first_order_coalescence", &first_order_coalescence, py::arg("n"));
    m.def(
        "strong_coupling_kappa",
        [](int n, int order, std::optional<std::vector<double>> ladder) {
            const auto r = strong_coupling_kappa(energy_function(n, order),
                                                 ladder ? *ladder : report::default_kappa_ladder());
            return py::make_tuple(r.kappa, r.spread);
        },
        py::arg("n"), py::arg("order") = 11, py::arg("ladder") = py::none(), "Returns (kappa, spread).");

    m.def(
        "eps_wkb", [](double lambda, int n, double omega) { return eps_wkb(lambda, n, omega); }, py::arg("lambda_"),
        py::arg("n") = 0, py::arg("omega") = 1.0);
    m.def(
        "im_energy_wkb", [](double lambda, int n, int m, double omega) { return im_energy_wkb(lambda, n, m, omega).value(); },
        py::arg("lambda_"), py::arg("n") = 0, py::arg("m") = 1, py::arg("omega") = 1.0);
    m.def(
        "k_coefficient", [](int m, int n) { return to_string(k_coefficient(m, n)); }, py::arg("m"), py::arg("n"));
    m.def(
        "variational_wkb",
        [](double lambda, int n, int m, std::complex<double> omega_trial, std::complex<double> x0, int order) {
            return variational_wkb(lambda, n, m, TrialPoint{omega_trial, x0}, order);
        },
        py::arg("lambda_"), py::arg("n"), py::arg("m"), py::arg("trial_omega"), py::arg("x0"), py::arg("order") = 3);

    m.def(
        "find_resonance",
        [](double lambda, int n, double theta, int basis_size, int max_basis, double omega) {
            CcrConfig c;
            c.theta = theta;
            c.basis_size = basis_size;
            c.max_basis = max_basis;
            c.omega = omega;
            const auto r = find_resonance(lambda, n, c);
            py::dict d;
            d["energy"] = r.energy;
            d["theta_spread"] = r.theta_spread;
            d["basis_spread"] = r.basis_spread;
            d["imag_spread"] = r.imag_spread;
            d["basis_size"] = r.basis_size;
            d["converged"] = r.converged;
            d["extended_precision"] = r.extended_precision;
            return d;
        },
        py::arg("lambda_"), py::arg("n") = 0, py::arg("theta") = 0.35, py::arg("basis_size") = 64,
        py::arg("max_basis") = 512, py::arg("omega") = 1.0);

    m.def(
        "table1", [](const std::vector<double>& lambdas, const std::vector<int>& levels) {
            return to_records(report::table1(lambdas, levels).table);
        },
        py::arg("lambdas") = std::vector<double>{}, py::arg("levels") = std::vector<int>{},
        "Reference cells as a list of dicts.");
    m.def(
        "table1_csv",
        [](const std::vector<double>& lambdas, const std::vector<int>& levels) {
            return csv_of(report::table1(lambdas, levels).table);
        },
        py::arg("lambdas") = std::vector<double>{}, py::arg("levels") = std::vector<int>{});
    m.def("parse_lambda_grid", &report::parse_lambda_grid, py::arg("text"));
}
