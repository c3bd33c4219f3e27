#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "escherpos/chromo.hpp"
#include "escherpos/escher.hpp"
#include "escherpos/ghom.hpp"
#include "escherpos/sweep.hpp"

namespace py = pybind11;
using namespace escherpos;

namespace {

// partitions become tuple keys
py::dict to_dict(const std::map<Partition, Int>& coeffs)
{
    py::dict out;
    for (const auto& [lambda, c] : coeffs)
        out[py::tuple(py::cast(lambda.parts()))] = c;
    return out;
}

std::vector<Suite> parse_suites(const std::vector<std::string>& names)
{
    std::vector<Suite> suites;
    for (const auto& name : names)
        suites.push_back(parse_suite(name));
    return suites;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Unit interval orders, chromatic symmetric functions and Escher sequences";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<InternalError>(m, "InternalError", PyExc_RuntimeError);

    py::class_<Uio>(m, "Uio")
        .def(py::init(&Uio::from_hessenberg), py::arg("h"))
        .def_static("parse", &Uio::parse, py::arg("text"))
        .def_property_readonly("hessenberg", &Uio::hessenberg)
        .def("__len__", &Uio::size)
        .def("arrow", &Uio::arrow)
        .def("precedes", &Uio::precedes)
        .def("intersects", &Uio::intersects)
        .def("incomparability_edges", [](const Uio& u) { return incomparability_graph(u).edges(); })
        .def("__str__", &Uio::to_string)
        .def("__repr__", [](const Uio& u) { return "Uio('" + u.to_string() + "')"; })
        .def("__eq__", [](const Uio& a, const Uio& b) { return a == b; })
        .def("__hash__", [](const Uio& u) { return py::hash(py::str(u.to_string())); });

    m.def("generate_all", &generate_all, py::arg("n"));

    m.def(
        "e_coefficients", [](const Uio& u) { return to_dict(e_coefficients(incomparability_graph(u)).coeffs); },
        py::arg("uio"), "Coefficients of X_G in the elementary basis, keyed by partition.");
    m.def(
        "s_coefficients",
        [](const Uio& u) {
            const auto g = incomparability_graph(u);
            return to_dict(SchurSolver(u.size()).solve(chromatic_sym(g, u.size())).coeffs);
        },
        py::arg("uio"));
    m.def(
        "m_coeff_U", [](const Uio& u, std::vector<int> lambda) { return m_coeff_U(u, Partition(std::move(lambda))); },
        py::arg("uio"), py::arg("partition"));
    m.def(
        "sink_histogram", [](const Uio& u) { return sink_histogram(incomparability_graph(u)); }, py::arg("uio"));
    m.def(
        "verify_gnechrom",
        [](const Uio& u, std::vector<int> alpha) {
            return verify_gnechrom(incomparability_graph(u), AlphaMap(std::move(alpha)));
        },
        py::arg("uio"), py::arg("alpha"));

    m.def("enumerate_eschers", &enumerate_eschers, py::arg("uio"), py::arg("m"));
    m.def("count_eschers", &count_eschers, py::arg("uio"), py::arg("m"));
    m.def("count_full_corrects", &count_full_corrects, py::arg("uio"));
    m.def(
        "is_escher", [](const Uio& u, const Sequence& w) { return is_escher(u, w); }, py::arg("uio"), py::arg("w"));
    m.def("disjoint_pair_count", &disjoint_pair_count, py::arg("uio"), py::arg("n"), py::arg("k"));

    m.def("convention_names", [] {
        std::vector<std::string> names;
        for (const auto& c : AnchorConvention::all())
            names.push_back(c.name());
        return names;
    });
    m.def(
        "phi",
        [](const Uio& u, const Sequence& w, int n, int k, const std::string& convention) {
            const auto pair = phi(u, w, n, k, AnchorConvention::parse(convention));
            return py::make_tuple(pair.u, pair.v);
        },
        py::arg("uio"), py::arg("w"), py::arg("n"), py::arg("k"), py::arg("convention") = "default");
    m.def(
        "psi",
        [](const Uio& u, const Sequence& uu, const Sequence& v, const std::string& convention) {
            return psi(u, uu, v, AnchorConvention::parse(convention));
        },
        py::arg("uio"), py::arg("u"), py::arg("v"), py::arg("convention") = "default");
    m.def(
        "check_round_trip",
        [](const Uio& u, int n, int k, const std::string& convention) {
            const auto stats =
                check_round_trip(u, n, k, AnchorConvention::parse(convention), enumerate_eschers(u, n + k));
            py::dict d;
            d["eschers"] = stats.eschers;
            d["failures"] = stats.failures;
            d["injective"] = stats.injective;
            d["counterexample"] = stats.counterexample;
            return d;
        },
        py::arg("uio"), py::arg("n"), py::arg("k"), py::arg("convention") = "default");
    m.def(
        "calibrate",
        [](int max_n) {
            const auto r = calibrate_convention(max_n);
            py::list log;
            for (const auto& e : r.log) {
                py::dict d;
                d["convention"] = e.convention.name();
                d["checked"] = e.checked;
                d["passed"] = e.passed;
                d["counterexample"] = e.counterexample;
                log.append(d);
            }
            py::dict d;
            d["convention"] = r.convention.name();
            d["log"] = log;
            d["witness"] = r.witness;
            return d;
        },
        py::arg("max_n") = 8);

    m.def(
        "_run_sweep",
        [](int n, const std::vector<std::string>& suites, std::optional<std::pair<int, int>> lambda, int jobs,
           const std::string& convention) {
            SweepConfig c;
            c.n = n;
            c.suites = parse_suites(suites);
            c.lambda = lambda;
            c.jobs = jobs;
            c.convention = AnchorConvention::parse(convention);
            VerificationReport rep;
            {
                py::gil_scoped_release release;
                rep = run_sweep(c);
            }
            return py::make_tuple(rep.serialize(ReportFormat::Json), exit_status(rep));
        },
        py::arg("n"), py::arg("suites"), py::arg("lam"), py::arg("jobs"), py::arg("convention"));
    m.def(
        "check",
        [](const std::string& h, std::vector<int> lambda, bool trace, const std::string& convention) {
            std::ostringstream os;
            check_single(os, Uio::parse(h), Partition(std::move(lambda)), trace, AnchorConvention::parse(convention));
            return os.str();
        },
        py::arg("h"), py::arg("partition"), py::arg("trace") = false, py::arg("convention") = "default");
    m.def("all_suites", [] {
        std::vector<std::string> names;
        for (Suite s : all_suites())
            names.emplace_back(to_string(s));
        return names;
    });
}
