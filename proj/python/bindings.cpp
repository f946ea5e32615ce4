#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cli.hpp"
#include "clusterspt/analysis.hpp"
#include "clusterspt/clifford.hpp"
#include "clusterspt/errors.hpp"
#include "clusterspt/report.hpp"

namespace py = pybind11;
using namespace clusterspt;

namespace {

LatticeSpec lattice(int size, const std::string& boundary) { return LatticeSpec(size, parse_boundary(boundary)); }

py::object to_python(const report::Json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Pauli algebra, exact diagonalization and symmetry audits for the cluster chain.";

    py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<IndexError>(m, "IndexError", PyExc_IndexError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ResourceError>(m, "ResourceError", PyExc_MemoryError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::class_<PauliString>(m, "PauliString")
        .def(py::init<int>(), py::arg("length"))
        .def(py::init<int, std::uint8_t, std::uint64_t, std::uint64_t>(), py::arg("length"), py::arg("phase"),
             py::arg("x_mask"), py::arg("z_mask"))
        .def_static("parse", &PauliString::parse, py::arg("text"))
        .def_static("single", &PauliString::single, py::arg("length"), py::arg("site"), py::arg("letter"))
        .def_property_readonly("length", &PauliString::length)
        .def_property_readonly("phase", &PauliString::phase)
        .def_property_readonly("x_mask", &PauliString::x_mask)
        .def_property_readonly("z_mask", &PauliString::z_mask)
        .def("letters", &PauliString::letters)
        .def("is_hermitian", &PauliString::is_hermitian)
        .def("adjoint", &PauliString::adjoint)
        .def("commutes", [](const PauliString& p, const PauliString& q) { return commutes(p, q); })
        .def("__mul__", [](const PauliString& p, const PauliString& q) { return multiply(p, q); })
        .def(py::self == py::self)
        .def("__str__", &PauliString::to_string)
        .def("__repr__", [](const PauliString& p) { return "PauliString('" + p.to_string() + "')"; });

    py::class_<OperatorSum>(m, "OperatorSum")
        .def(py::init<int>(), py::arg("length"))
        .def(py::init<const PauliString&, Complex>(), py::arg("pauli"), py::arg("coefficient") = Complex(1.0))
        .def_static("parse", &OperatorSum::parse, py::arg("text"))
        .def_property_readonly("length", &OperatorSum::length)
        .def("__len__", &OperatorSum::size)
        .def("add_term", &OperatorSum::add_term, py::arg("pauli"), py::arg("coefficient") = Complex(1.0))
        .def("coefficient_of", &OperatorSum::coefficient_of)
        .def("adjoint", &OperatorSum::adjoint)
        .def("is_zero", &OperatorSum::is_zero, py::arg("tol") = kCoefficientCutoff)
        .def("is_hermitian", &OperatorSum::is_hermitian, py::arg("tol") = kCoefficientCutoff)
        .def("norm_bound", &OperatorSum::norm_bound)
        .def("terms", &OperatorSum::expanded)
        .def("matrix", [](const OperatorSum& a) { return dense_matrix(a); })
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def("__mul__", [](const OperatorSum& a, Complex c) { return c * a; })
        .def("__rmul__", [](const OperatorSum& a, Complex c) { return c * a; })
        .def("__str__", &OperatorSum::to_string);

    m.def("commutator", py::overload_cast<const OperatorSum&, const OperatorSum&>(&commutator));
    m.def("anticommutator", py::overload_cast<const OperatorSum&, const OperatorSum&>(&anticommutator));
    m.def("conjugate_cz", &conjugate_cz, py::arg("pauli"), py::arg("i"), py::arg("j"));

    m.def(
        "stabilizer", [](int site, int size, const std::string& boundary) { return stabilizer(site, lattice(size, boundary)); },
        py::arg("site"), py::arg("size"), py::arg("boundary") = "open");
    m.def(
        "hamiltonian",
        [](int size, const std::string& boundary, double lam) {
            const LatticeSpec lat = lattice(size, boundary);
            return cluster_hamiltonian(lat) + ising_perturbation(lat, lam);
        },
        py::arg("size"), py::arg("boundary") = "open", py::arg("lam") = 0.0);
    m.def(
        "conjugate_ucp",
        [](const OperatorSum& a, const std::string& boundary) {
            return conjugate_ucp(a, lattice(a.length(), boundary));
        },
        py::arg("operator"), py::arg("boundary") = "open");
    m.def(
        "global_symmetry",
        [](int s, int size) { return global_symmetry(s, lattice(size, "open")); }, py::arg("s"), py::arg("size"));
    m.def(
        "forbidden_set", [](int size) { return forbidden_set(lattice(size, "open")); }, py::arg("size"));
    m.def(
        "manifest", [](int size, const std::string& boundary) { return build_model(lattice(size, boundary)).manifest(); },
        py::arg("size"), py::arg("boundary") = "open");

    m.def(
        "eig_low",
        [](const OperatorSum& h, int count, const std::string& method) {
            const SpectrumResult spec = eig_low(h, count, parse_method(method));
            py::dict out;
            out["eigenvalues"] = spec.eigenvalues;
            out["ground_degeneracy"] = spec.ground_degeneracy;
            out["gap"] = spec.gap;
            out["residuals"] = spec.residuals;
            return out;
        },
        py::arg("hamiltonian"), py::arg("count"), py::arg("method") = "dense");

    m.def(
        "verify",
        [](int size, const std::string& boundary, std::optional<std::string> tamper) {
            VerifyOptions opts;
            opts.tamper = std::move(tamper);
            const VerifyReport rep = run_verification(lattice(size, boundary), opts);
            report::Json j = report::results_json(rep);
            j["verdict"] = report::verdict_json(rep);
            return to_python(j);
        },
        py::arg("size"), py::arg("boundary") = "open", py::arg("tamper") = py::none());
    m.def(
        "protect",
        [](int size, bool local_only, const std::vector<std::string>& probes) {
            const LatticeSpec lat = lattice(size, "open");
            ProtectionOptions opts;
            opts.local_only = local_only;
            for (const auto& name : probes) opts.probes.push_back(parse_compact(name, size));
            const ProtectionReport rep = certify_protection(build_model(lat), opts);
            report::Json j = report::results_json(rep);
            j["verdict"] = report::verdict_json(rep);
            return to_python(j);
        },
        py::arg("size"), py::arg("local_only") = false, py::arg("probes") = std::vector<std::string>{});
    m.def(
        "scan",
        [](int size, const std::string& boundary, double start, double stop, double step, const std::string& method) {
            ScanOptions opts;
            opts.method = parse_method(method);
            const LatticeSpec lat = lattice(size, boundary);
            const std::vector<double> grid = lambda_grid(start, stop, step);
            const ScanResult result = [&] {
                py::gil_scoped_release release;
                return phase_scan(lat, grid, opts);
            }();
            std::optional<TransitionEstimate> estimate;
            if (result.points.size() >= 5) estimate = transition_estimate(result);
            report::Json j = report::results_json(result, estimate);
            j["verdict"] = report::verdict_json(result, estimate);
            return to_python(j);
        },
        py::arg("size"), py::arg("boundary") = "periodic", py::arg("start") = 0.5, py::arg("stop") = 1.5,
        py::arg("step") = 0.05, py::arg("method") = "iterative");

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command-line front end; returns (exit_code, stdout, stderr).");
}
