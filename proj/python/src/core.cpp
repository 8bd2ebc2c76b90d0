#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cmbound/api.hpp"
#include "cmbound/bounds.hpp"
#include "cmbound/classpoly.hpp"
#include "cmbound/curve_invariants.hpp"
#include "cmbound/error.hpp"

namespace py = pybind11;
using namespace cmbound;

namespace {

Rational to_rational(const py::handle& h)
{
    return parse_rational(py::str(h).cast<std::string>());
}

std::optional<Integer> to_integer(const py::object& h)
{
    if (h.is_none())
        return std::nullopt;
    Rational x = to_rational(h);
    if (x.get_den() != 1)
        fail(ErrorKind::MalformedInput, "expected an integer");
    return x.get_num();
}

py::dict named(const InvariantVector& v)
{
    py::dict d;
    for (const auto& [name, x] : v.values)
        d[py::str(name)] = to_string(x);
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Exact CM bad-reduction bounds";

    py::register_exception<Error>(m, "CmboundError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object type = py::module_::import("cmbound._core").attr("CmboundError");
            PyErr_SetString(type.ptr(), (std::string(e.kind_name()) + ": " + e.what()).c_str());
        }
    });

    m.def(
        "run",
        [](const std::string& verb, const std::string& input, const std::string& mode, long precision_bits,
           const py::object& denominator_bound, unsigned long effort, const py::object& B) {
            api::Options opt;
            opt.mode = mode;
            opt.precision_bits = precision_bits;
            opt.denominator_bound = to_integer(denominator_bound);
            opt.effort = effort;
            opt.B = to_integer(B);
            api::Outcome o;
            {
                py::gil_scoped_release release;
                o = api::run_text(verb, input, opt);
            }
            return py::make_tuple(o.exit_code, o.report.dump(2));
        },
        py::arg("verb"), py::arg("input"), py::arg("mode") = "", py::arg("precision_bits") = 128,
        py::arg("denominator_bound") = py::none(), py::arg("effort") = 2000000, py::arg("B") = py::none(),
        "Run a CLI verb on a JSON string; returns (exit_code, report_json).");

    m.def("threshold", [](const py::object& B) { return to_string(bound_from_B(*to_integer(B)).threshold); },
          py::arg("B"), "B^10/8 as an exact rational string.");

    m.def("certified_good", [](const py::object& p, const py::object& B) {
        return certified_good(*to_integer(p), *to_integer(B));
    });

    m.def("rational_reconstruct", [](const std::string& x, const py::object& bound) {
        return to_string(rational_reconstruct(x, *to_integer(bound)));
    }, py::arg("x"), py::arg("denominator_bound"));

    m.def("assemble", [](const std::vector<std::pair<py::object, py::object>>& entries) {
        std::vector<std::pair<Rational, Rational>> e;
        for (const auto& [j, jp] : entries)
            e.emplace_back(to_rational(j), to_rational(jp));
        auto [h, hh] = assemble(e);
        std::vector<std::string> a, b;
        for (const auto& c : h.coeffs())
            a.push_back(to_string(c));
        for (const auto& c : hh.coeffs())
            b.push_back(to_string(c));
        return py::make_tuple(a, b);
    }, "H and H_hat, coefficients low degree first.");

    m.def("picard_invariants", [](const py::object& a2, const py::object& a3, const py::object& a4) {
        return named(picard_invariants(PicardQuartic{to_rational(a2), to_rational(a3), to_rational(a4)}));
    });

    m.def("hyperelliptic_j", [](const std::vector<py::object>& coeffs) {
        BinaryForm f;
        for (const auto& c : coeffs)
            f.c.push_back(to_rational(c));
        f.c.resize(9);
        return named(hyperelliptic_j(f));
    }, "j1..j9 of y^2 = f(x), coefficients low degree first.");
}
