#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qtau/bound.hpp"
#include "qtau/criteria.hpp"
#include "qtau/monogamy.hpp"
#include "qtau/oracle.hpp"
#include "qtau/stateio.hpp"

namespace py = pybind11;
using namespace qtau;

namespace {

using ComplexArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

Matrix matrix_from_numpy(const ComplexArray& arr) {
    const auto buf = arr.request();
    if (buf.ndim != 2)
        throw InvalidInputError("expected a 2-D complex array");
    Matrix m(static_cast<std::size_t>(buf.shape[0]), static_cast<std::size_t>(buf.shape[1]));
    const Complex* src = static_cast<const Complex*>(buf.ptr);
    std::copy(src, src + m.rows() * m.cols(), m.data().begin());
    return m;
}

py::array_t<Complex> matrix_to_numpy(const Matrix& m) {
    py::array_t<Complex> out({m.rows(), m.cols()});
    std::copy(m.data().begin(), m.data().end(), static_cast<Complex*>(out.request().ptr));
    return out;
}

std::vector<Complex> vector_from_numpy(const ComplexArray& arr) {
    const auto buf = arr.request();
    if (buf.ndim != 1)
        throw InvalidInputError("expected a 1-D complex array");
    const Complex* src = static_cast<const Complex*>(buf.ptr);
    return {src, src + buf.shape[0]};
}

DimsSpec dims_from_list(const std::vector<std::size_t>& dims) { return DimsSpec{dims}; }

OracleConfig config_from_kwargs(std::vector<std::size_t> sizes, std::size_t samples,
                                std::size_t refine_steps, std::size_t refine_restarts,
                                std::uint64_t seed) {
    OracleConfig cfg;
    cfg.decomposition_sizes = std::move(sizes);
    cfg.samples = samples;
    cfg.refine_steps = refine_steps;
    cfg.refine_restarts = refine_restarts;
    cfg.seed = seed;
    return cfg;
}

} // namespace

PYBIND11_MODULE(_qtau, m) {
    m.doc() = "Concurrence lower bound tau, distillability criteria and entanglement "
              "monogamy for small quantum states";
#ifdef QTAU_VERSION
    m.attr("__version__") = QTAU_VERSION;
#endif

    py::register_exception<InvalidInputError>(m, "InvalidInputError", PyExc_ValueError);
    py::register_exception<NotAStateError>(m, "NotAStateError", PyExc_ValueError);
    py::register_exception<NotPsdError>(m, "NotPsdError", PyExc_ValueError);
    py::register_exception<SizeLimitError>(m, "SizeLimitError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<NumericalFailureError>(m, "NumericalFailureError",
                                                  PyExc_RuntimeError);

    py::class_<DensityMatrix>(m, "DensityMatrix")
        .def(py::init([](const ComplexArray& mat, const std::vector<std::size_t>& dims) {
                 return DensityMatrix(dims_from_list(dims), matrix_from_numpy(mat));
             }),
             py::arg("matrix"), py::arg("dims"),
             "Validated density matrix (Hermitian, unit trace, PSD)")
        .def_property_readonly(
            "matrix", [](const DensityMatrix& rho) { return matrix_to_numpy(rho.mat()); })
        .def_property_readonly(
            "dims", [](const DensityMatrix& rho) { return rho.dims().factors(); })
        .def_property_readonly("side", &DensityMatrix::side);

    py::class_<PureState>(m, "PureState")
        .def(py::init([](const ComplexArray& amps, const std::vector<std::size_t>& dims) {
                 return PureState(dims_from_list(dims), vector_from_numpy(amps));
             }),
             py::arg("amplitudes"), py::arg("dims"),
             "Validated pure state (unit norm)")
        .def_property_readonly("amplitudes",
                               [](const PureState& psi) {
                                   py::array_t<Complex> out(
                                       std::vector<py::ssize_t>{
                                           static_cast<py::ssize_t>(psi.amps().size())});
                                   std::copy(psi.amps().begin(), psi.amps().end(),
                                             static_cast<Complex*>(out.request().ptr));
                                   return out;
                               })
        .def_property_readonly("dims",
                               [](const PureState& psi) { return psi.dims().factors(); })
        .def("projector", &PureState::projector);

    py::class_<SubspaceQuad>(m, "SubspaceQuad")
        .def_readonly("i", &SubspaceQuad::i)
        .def_readonly("j", &SubspaceQuad::j)
        .def_readonly("k", &SubspaceQuad::k)
        .def_readonly("l", &SubspaceQuad::l)
        .def("__repr__", [](const SubspaceQuad& q) {
            return "SubspaceQuad(" + std::to_string(q.i) + "," + std::to_string(q.j) + ";" +
                   std::to_string(q.k) + "," + std::to_string(q.l) + ")";
        });

    py::class_<SubspaceTerm>(m, "SubspaceTerm")
        .def_readonly("quad", &SubspaceTerm::quad)
        .def_readonly("concurrence", &SubspaceTerm::concurrence)
        .def_readonly("lambdas", &SubspaceTerm::lambdas);

    py::class_<TauReport>(m, "TauReport")
        .def_readonly("tau", &TauReport::tau)
        .def_readonly("per_subspace", &TauReport::per_subspace)
        .def_property_readonly("dims",
                               [](const TauReport& r) { return r.dims.factors(); })
        .def("__repr__",
             [](const TauReport& r) { return "TauReport(tau=" + std::to_string(r.tau) + ")"; });

    py::class_<Verdict>(m, "Verdict")
        .def_readonly("tau_positive", &Verdict::tau_positive)
        .def_readonly("ppt", &Verdict::ppt)
        .def_readonly("ccnr_bound", &Verdict::ccnr_bound)
        .def_readonly("distillable", &Verdict::distillable)
        .def_readonly("notes", &Verdict::notes)
        .def_readonly("tau_value", &Verdict::tau_value)
        .def_readonly("ppt_min_eigenvalue", &Verdict::ppt_min_eigenvalue);

    py::class_<MonogamyReport>(m, "MonogamyReport")
        .def_readonly("tau_ab", &MonogamyReport::tau_ab)
        .def_readonly("tau_ac", &MonogamyReport::tau_ac)
        .def_readonly("tau_a_bc", &MonogamyReport::tau_a_bc)
        .def_readonly("residual", &MonogamyReport::residual)
        .def_readonly("closed_form", &MonogamyReport::closed_form)
        .def_readonly("satisfied", &MonogamyReport::satisfied);

    py::class_<MultiMonogamyReport>(m, "MultiMonogamyReport")
        .def_readonly("per_pair", &MultiMonogamyReport::per_pair)
        .def_readonly("tau_total", &MultiMonogamyReport::tau_total)
        .def_readonly("satisfied", &MultiMonogamyReport::satisfied);

    py::class_<Thm3Identity>(m, "Thm3Identity")
        .def_readonly("lhs_ab", &Thm3Identity::lhs_ab)
        .def_readonly("lhs_ac", &Thm3Identity::lhs_ac)
        .def_readonly("rhs_ab", &Thm3Identity::rhs_ab)
        .def_readonly("rhs_ac", &Thm3Identity::rhs_ac);

    // state families
    m.def("make_horodecki_sigma", &make_horodecki_sigma, py::arg("alpha"));
    m.def("make_isotropic", &make_isotropic, py::arg("d"), py::arg("fidelity"));
    m.def("make_werner3", &make_werner3, py::arg("lam"));
    m.def("make_aharonov", &make_aharonov);
    m.def("make_generalized_w", &make_generalized_w, py::arg("coeffs"),
          py::arg("normalize") = false);
    m.def(
        "random_pure",
        [](const std::vector<std::size_t>& dims, std::uint64_t seed) {
            return random_pure(dims_from_list(dims), seed);
        },
        py::arg("dims"), py::arg("seed"));
    m.def(
        "random_mixed",
        [](const std::vector<std::size_t>& dims, std::size_t ancilla, std::uint64_t seed) {
            return random_mixed(dims_from_list(dims), ancilla, seed);
        },
        py::arg("dims"), py::arg("ancilla_dim"), py::arg("seed"));

    // bound
    m.def("tau", &tau, py::arg("rho"), "Lower bound on squared concurrence");
    m.def("tau_power", &tau_power, py::arg("rho"), py::arg("copies"));
    m.def("pure_concurrence_sq", &pure_concurrence_sq, py::arg("psi"), py::arg("cut") = 1);
    m.def("pure_concurrence_sq_minors", &pure_concurrence_sq_minors, py::arg("psi"),
          py::arg("cut") = 1);
    m.def(
        "two_qubit_concurrence",
        [](const ComplexArray& block, bool normalize) {
            const auto r = two_qubit_concurrence(matrix_from_numpy(block), normalize);
            return py::make_tuple(r.concurrence, r.lambdas);
        },
        py::arg("varrho"), py::arg("normalize") = false);
    m.def(
        "extract_submatrix",
        [](const DensityMatrix& rho, std::size_t i, std::size_t j, std::size_t k,
           std::size_t l) { return matrix_to_numpy(extract_submatrix(rho, {i, j, k, l})); },
        py::arg("rho"), py::arg("i"), py::arg("j"), py::arg("k"), py::arg("l"));

    // criteria
    m.def("is_ppt", &is_ppt, py::arg("rho"), py::arg("tol") = 1e-9);
    m.def("ccnr_lower_bound", &ccnr_lower_bound, py::arg("rho"));
    m.def("verdict", &verdict, py::arg("rho"), py::arg("copies") = 1);

    // monogamy
    m.def("monogamy_tripartite", &monogamy_tripartite, py::arg("psi"), py::arg("d1"),
          py::arg("d2"), py::arg("d3"));
    m.def("residual_closed_form", &residual_closed_form, py::arg("psi"), py::arg("d1"),
          py::arg("d2"), py::arg("d3"));
    m.def("monogamy_multipartite", &monogamy_multipartite, py::arg("psi"),
          py::arg("partition"));
    m.def("thm3_identity_check", &thm3_identity_check, py::arg("psi"), py::arg("d1"),
          py::arg("d2"), py::arg("d3"));

    // oracle
    m.def(
        "convex_roof_upper",
        [](const DensityMatrix& rho, std::vector<std::size_t> sizes, std::size_t samples,
           std::size_t refine_steps, std::size_t refine_restarts, std::uint64_t seed) {
            return convex_roof_upper(rho, config_from_kwargs(std::move(sizes), samples,
                                                             refine_steps, refine_restarts,
                                                             seed));
        },
        py::arg("rho"), py::arg("decomposition_sizes") = std::vector<std::size_t>{},
        py::arg("samples") = 2000, py::arg("refine_steps") = 200,
        py::arg("refine_restarts") = 3, py::arg("seed") = 0);

    // linear algebra utilities
    m.def(
        "kron",
        [](const ComplexArray& a, const ComplexArray& b) {
            return matrix_to_numpy(kron(matrix_from_numpy(a), matrix_from_numpy(b)));
        },
        py::arg("a"), py::arg("b"));
    m.def(
        "partial_trace",
        [](const ComplexArray& mat, const std::vector<std::size_t>& dims,
           const std::vector<std::size_t>& keep) {
            return matrix_to_numpy(partial_trace(matrix_from_numpy(mat),
                                                 dims_from_list(dims), keep));
        },
        py::arg("matrix"), py::arg("dims"), py::arg("keep"));
    m.def(
        "partial_transpose",
        [](const ComplexArray& mat, const std::vector<std::size_t>& dims,
           std::size_t subsystem) {
            return matrix_to_numpy(partial_transpose(matrix_from_numpy(mat),
                                                     dims_from_list(dims), subsystem));
        },
        py::arg("matrix"), py::arg("dims"), py::arg("subsystem"));
    m.def(
        "permute_subsystems",
        [](const ComplexArray& mat, const std::vector<std::size_t>& dims,
           const std::vector<std::size_t>& perm) {
            return matrix_to_numpy(permute_subsystems(matrix_from_numpy(mat),
                                                      dims_from_list(dims), perm));
        },
        py::arg("matrix"), py::arg("dims"), py::arg("perm"));
    m.def(
        "realign_trace_norm",
        [](const ComplexArray& mat, const std::vector<std::size_t>& dims) {
            return realign_trace_norm(matrix_from_numpy(mat), dims_from_list(dims));
        },
        py::arg("matrix"), py::arg("dims"));
    m.def(
        "psd_sqrt",
        [](const ComplexArray& mat) { return matrix_to_numpy(psd_sqrt(matrix_from_numpy(mat))); },
        py::arg("matrix"));
    m.def(
        "hermitian_eigen",
        [](const ComplexArray& mat) {
            const EigenResult r = hermitian_eigen(matrix_from_numpy(mat));
            return py::make_tuple(r.eigenvalues, matrix_to_numpy(r.eigenvectors));
        },
        py::arg("matrix"), "Ascending eigenvalues and the unitary eigenvector matrix");

    // state files
    m.def(
        "parse_state_file",
        [](const std::string& path) -> py::object {
            const ParsedState s = parse_state_file(path);
            if (const auto* rho = std::get_if<DensityMatrix>(&s))
                return py::cast(*rho);
            return py::cast(std::get<PureState>(s));
        },
        py::arg("path"));
    m.def(
        "write_state_file",
        [](const std::string& path, const py::object& state) {
            if (py::isinstance<DensityMatrix>(state))
                write_state_file(path, state.cast<DensityMatrix>());
            else
                write_state_file(path, state.cast<PureState>());
        },
        py::arg("path"), py::arg("state"));
}
