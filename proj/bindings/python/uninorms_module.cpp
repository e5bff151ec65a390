// Python bindings for the uninorm engine. Terms and elements are
// wrapped together so every element knows which chain it lives on.

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "uninorm/analysis.hpp"
#include "uninorm/certify.hpp"
#include "uninorm/grid.hpp"

namespace py = pybind11;
using namespace uninorm;

namespace {

struct PyTerm {
    TermPtr p;
};

struct PyElement {
    TermPtr t;
    Element e;
};

struct PyGap {
    PyElement lower, upper;
    std::string clause;
};

struct PyAnalysis {
    TermPtr t;
    Analysis a;
};

struct PyNormalization {
    PyTerm canonical;
    std::string segments;
    std::vector<std::string> steps;
};

struct PyCertificate {
    uint64_t samples = 0;
    uint64_t violations = 0;
    std::string counterexample;
};

struct PyGrid {
    Grid g;
};

void same_chain(const PyElement& a, const PyElement& b) {
    if (!same_term(a.t, b.t))
        throw MalformedElement("elements belong to different chains");
}

PyElement checked(const PyTerm& t, std::string_view text) {
    return {t.p, parse_element(t.p, text)};
}

std::string path_str(const std::vector<int>& path) {
    if (path.empty())
        return "root";
    std::string s;
    for (size_t i = 0; i < path.size(); ++i)
        s += (i ? "." : "") + std::to_string(path[i]);
    return s;
}

std::vector<std::string> step_lines(const std::vector<RewriteStep>& trace) {
    std::vector<std::string> out;
    out.reserve(trace.size());
    for (const auto& s : trace)
        out.push_back(std::string(rule_name(s.rule)) +
                      (s.dir == Dir::LtoR ? " ltr at " : " rtl at ") + path_str(s.path));
    return out;
}

} // namespace

PYBIND11_MODULE(_uninorms, m) {
    m.doc() = "Exact engine for group-like uninorms built from partial "
              "lexicographic products of Z and R.";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ParseError>(m, "ParseError", base);
    py::register_exception<InvalidTerm>(m, "InvalidTerm", base);
    py::register_exception<MalformedElement>(m, "MalformedElement", base);
    py::register_exception<DomainError>(m, "DomainError", base);
    py::register_exception<NotRealizable>(m, "NotRealizable", base);
    py::register_exception<NotCanonicalizable>(m, "NotCanonicalizable", base);

    py::class_<PyElement>(m, "Element")
        .def("__str__", [](const PyElement& a) { return element_to_string(a.t, a.e); })
        .def("__repr__",
             [](const PyElement& a) {
                 return "Element(" + element_to_string(a.t, a.e) + ")";
             })
        .def("__eq__",
             [](const PyElement& a, const PyElement& b) {
                 return same_term(a.t, b.t) && compare(a.t, a.e, b.e) == 0;
             })
        .def("__lt__",
             [](const PyElement& a, const PyElement& b) {
                 same_chain(a, b);
                 return compare(a.t, a.e, b.e) < 0;
             })
        .def("__le__",
             [](const PyElement& a, const PyElement& b) {
                 same_chain(a, b);
                 return compare(a.t, a.e, b.e) <= 0;
             })
        .def("__gt__",
             [](const PyElement& a, const PyElement& b) {
                 same_chain(a, b);
                 return compare(a.t, a.e, b.e) > 0;
             })
        .def("__ge__",
             [](const PyElement& a, const PyElement& b) {
                 same_chain(a, b);
                 return compare(a.t, a.e, b.e) >= 0;
             })
        .def("__mul__",
             [](const PyElement& a, const PyElement& b) {
                 same_chain(a, b);
                 return PyElement{a.t, mul(a.t, a.e, b.e)};
             })
        .def("mul",
             [](const PyElement& a, const PyElement& b) {
                 same_chain(a, b);
                 return PyElement{a.t, mul(a.t, a.e, b.e)};
             })
        .def("neg", [](const PyElement& a) { return PyElement{a.t, neg(a.t, a.e)}; })
        .def("res",
             [](const PyElement& a, const PyElement& z) {
                 same_chain(a, z);
                 return PyElement{a.t, res(a.t, a.e, z.e)};
             })
        .def("compare",
             [](const PyElement& a, const PyElement& b) {
                 same_chain(a, b);
                 return compare(a.t, a.e, b.e);
             })
        .def("succ",
             [](const PyElement& a) -> std::optional<PyElement> {
                 if (auto s = successor(a.t, a.e))
                     return PyElement{a.t, *s};
                 return std::nullopt;
             })
        .def("pred",
             [](const PyElement& a) -> std::optional<PyElement> {
                 if (auto s = predecessor(a.t, a.e))
                     return PyElement{a.t, *s};
                 return std::nullopt;
             })
        .def_property_readonly(
            "idempotent", [](const PyElement& a) { return is_idempotent(a.t, a.e); })
        .def_property_readonly(
            "invertible", [](const PyElement& a) { return is_invertible(a.t, a.e); });

    py::class_<PyGap>(m, "Gap")
        .def_readonly("lower", &PyGap::lower)
        .def_readonly("upper", &PyGap::upper)
        .def_readonly("clause", &PyGap::clause)
        .def("__repr__", [](const PyGap& g) {
            return "Gap(" + element_to_string(g.lower.t, g.lower.e) + " < " +
                   element_to_string(g.upper.t, g.upper.e) + ")";
        });

    py::class_<PyAnalysis>(m, "Analysis")
        .def_property_readonly("valid", [](const PyAnalysis& a) { return a.a.valid; })
        .def_property_readonly("violation",
                               [](const PyAnalysis& a) -> std::optional<std::string> {
                                   if (a.a.violation)
                                       return a.a.violation->message;
                                   return std::nullopt;
                               })
        .def_property_readonly("group_part",
                               [](const PyAnalysis& a) { return a.a.group_part; })
        .def_property_readonly("realizable",
                               [](const PyAnalysis& a) { return a.a.realizable; })
        .def_property_readonly(
            "positive_idempotents",
            [](const PyAnalysis& a) { return a.a.census.positive; })
        .def_property_readonly(
            "negative_idempotents",
            [](const PyAnalysis& a) { return a.a.census.negative; })
        .def_property_readonly("gap",
                               [](const PyAnalysis& a) -> std::optional<PyGap> {
                                   if (!a.a.outside_gap)
                                       return std::nullopt;
                                   return PyGap{{a.t, a.a.outside_gap->lower},
                                                {a.t, a.a.outside_gap->upper},
                                                a.a.outside_gap->clause};
                               })
        .def_property_readonly("notes", [](const PyAnalysis& a) { return a.a.notes; })
        .def_property_readonly("json", [](const PyAnalysis& a) {
            return analysis_to_json(a.t, a.a).dump();
        });

    py::class_<PyNormalization>(m, "Normalization")
        .def_readonly("canonical", &PyNormalization::canonical)
        .def_readonly("segments", &PyNormalization::segments)
        .def_readonly("steps", &PyNormalization::steps);

    py::class_<PyCertificate>(m, "Certificate")
        .def_readonly("samples", &PyCertificate::samples)
        .def_readonly("violations", &PyCertificate::violations)
        .def_readonly("counterexample", &PyCertificate::counterexample)
        .def_property_readonly("ok",
                               [](const PyCertificate& c) { return c.violations == 0; });

    py::class_<PyTerm>(m, "Term")
        .def("__str__", [](const PyTerm& t) { return term_to_string(t.p); })
        .def("__repr__",
             [](const PyTerm& t) { return "Term(" + term_to_string(t.p) + ")"; })
        .def("__eq__",
             [](const PyTerm& a, const PyTerm& b) { return same_term(a.p, b.p); })
        .def_property_readonly("valid", [](const PyTerm& t) { return t.p->valid(); })
        .def_property_readonly("json",
                               [](const PyTerm& t) { return term_to_json(t.p).dump(); })
        .def("unit", [](const PyTerm& t) { return PyElement{t.p, unit(t.p)}; })
        .def("element", &checked, py::arg("text"))
        .def("idempotents",
             [](const PyTerm& t) {
                 std::vector<PyElement> out;
                 for (auto& e : enumerate_idempotents(t.p))
                     out.push_back({t.p, std::move(e)});
                 return out;
             })
        .def("analyze", [](const PyTerm& t) { return PyAnalysis{t.p, analyze(t.p)}; })
        .def("normalize",
             [](const PyTerm& t) {
                 NormalizeResult r = normalize(t.p);
                 return PyNormalization{{r.canonical}, canonical_form_string(r.form),
                                        step_lines(r.trace)};
             })
        .def(
            "certify",
            [](const PyTerm& t, uint64_t samples, uint64_t seed) {
                NormalizeResult r = normalize(t.p);
                CertificateReport rep =
                    certify_isomorphism(t.p, r.canonical, r.map, samples, seed);
                return PyCertificate{rep.samples, rep.violations,
                                     rep.first_counterexample};
            },
            py::arg("samples") = 10000, py::arg("seed") = 0);

    m.def(
        "parse_term", [](const std::string& s) { return PyTerm{parse_term(s)}; },
        py::arg("text"), "Parse a construction term written in the DSL.");
    m.def(
        "term_from_json",
        [](const std::string& s) {
            return PyTerm{term_from_json(nlohmann::ordered_json::parse(s))};
        },
        py::arg("text"), "Rebuild a construction term from its JSON form.");

    py::class_<PyGrid>(m, "Grid")
        .def_property_readonly("term", [](const PyGrid& g) { return g.g.term; })
        .def_property_readonly("resolution",
                               [](const PyGrid& g) { return g.g.resolution; })
        .def_property_readonly("values", [](const PyGrid& g) { return g.g.values; })
        .def("csv",
             [](const PyGrid& g) {
                 std::ostringstream os;
                 write_csv(os, g.g);
                 return os.str();
             })
        .def("pgm",
             [](const PyGrid& g) {
                 std::ostringstream os;
                 write_pgm(os, g.g);
                 return os.str();
             })
        .def_property_readonly("json",
                               [](const PyGrid& g) { return grid_to_json(g.g).dump(); });

    py::class_<Realization>(m, "Realization")
        .def(py::init([](const PyTerm& t, int table_size) {
                 return std::make_unique<Realization>(t.p, table_size);
             }),
             py::arg("term"), py::arg("table_size") = 16384)
        .def_property_readonly("term",
                               [](const Realization& r) { return PyTerm{r.term()}; })
        .def_property_readonly(
            "canonical", [](const Realization& r) { return PyTerm{r.canonical()}; })
        .def("forward",
             [](const Realization& r, const PyElement& a) {
                 if (!same_term(r.term(), a.t) || !is_wellformed(r.term(), a.e))
                     throw MalformedElement("element does not live on this chain");
                 return r.forward(a.e);
             })
        .def("backward",
             [](const Realization& r, double u) {
                 return PyElement{r.term(), r.backward(u)};
             })
        .def("eval", &Realization::eval, py::arg("x"), py::arg("y"))
        .def("grid", [](const Realization& r, int resolution) {
                 return PyGrid{sample_grid(r, resolution)};
             },
             py::arg("resolution") = 64);

    m.def("to_unit_interval", &to_unit_interval, py::arg("x"),
          "Order embedding of the reals onto (0, 1).");
    m.def("from_unit_interval", &from_unit_interval, py::arg("u"),
          "Inverse of to_unit_interval on (0, 1).");
}
