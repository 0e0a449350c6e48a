#include "conftc/certificates.hpp"
#include "conftc/closed_forms.hpp"
#include "conftc/parser.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace conftc;

namespace {

Coeff coeff_from(const std::string& name, int m) {
    if (name == "auto")
        return m % 2 == 1 ? Coeff::Integers : Coeff::Mod2;
    if (name == "Z")
        return Coeff::Integers;
    if (name == "Z2")
        return Coeff::Mod2;
    throw std::invalid_argument("coeff must be one of: auto, Z, Z2");
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "Exact cohomology-ring computations for ordered configuration spaces";

    mod.def(
        "reduce",
        [](const std::string& expr, int m, int n, int p, const std::string& coeff) {
            RingSpec spec = make_ring(m, n, p, coeff_from(coeff, m));
            return evaluate_ring(spec, *parse(expr)).str();
        },
        py::arg("expr"), py::arg("m") = 3, py::arg("n") = 2, py::arg("p") = 0,
        py::arg("coeff") = "auto",
        "Normal form of an expression in the generators A[i,j].");

    mod.def(
        "basis_ranks",
        [](int m, int n, int p) {
            RingSpec spec = make_ring(m, n, p, m % 2 == 1 ? Coeff::Integers : Coeff::Mod2);
            std::vector<std::string> out;
            for (const Int& c : poincare_coefficients(spec))
                out.push_back(c.str());
            return out;
        },
        py::arg("m") = 3, py::arg("n") = 2, py::arg("p") = 0,
        "Number of basis monomials with r factors, r = 0..n (as decimal strings).");

    mod.def(
        "tc",
        [](int m, int n, int p, int s) {
            TCValue v = tc_s(make_tc_query(m, n, p, s));
            return py::make_tuple(v.value, v.case_label);
        },
        py::arg("m"), py::arg("n"), py::arg("p") = 0, py::arg("s") = 2,
        "Closed-form s-stage complexity and the case row that produced it.");

    mod.def(
        "cat",
        [](int m, int n, int p) { return cat_conf(m, n, p); },
        py::arg("m"), py::arg("n"), py::arg("p") = 0,
        "Category of the configuration space.");

    mod.def(
        "certify",
        [](const std::string& kind, int m, int n, int p, int s) {
            Certificate cert =
                kind == "auto" ? certificate_for(m, n, p, s)
                               : build_certificate(
                                     kind, make_ring(m, n, p, coeff_from("auto", m)), s);
            return certificate_json(cert, verify(cert));
        },
        py::arg("kind"), py::arg("m"), py::arg("n"), py::arg("p") = 0, py::arg("s") = 2,
        "Builds and verifies a lower-bound certificate; returns the JSON record.");

    mod.def(
        "zcl",
        [](int m, int n, int p, int s, int max_len) {
            RingSpec spec = make_ring(m, n, p, coeff_from("auto", m));
            if (max_len <= 0)
                max_len = upper_bound_dim_conn(space_dim(m, n, p), space_conn(m), s);
            return brute_force_zcl(spec, s, max_len);
        },
        py::arg("m"), py::arg("n"), py::arg("p") = 0, py::arg("s") = 2, py::arg("max_len") = 0,
        "Brute-force maximal length of a nonzero diagonal-kernel product.");
}
