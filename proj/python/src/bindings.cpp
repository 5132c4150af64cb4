#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nacirc/circuit.hpp"
#include "nacirc/error.hpp"
#include "nacirc/hitting.hpp"
#include "nacirc/monomial.hpp"
#include "nacirc/oracle.hpp"
#include "nacirc/randpit.hpp"
#include "nacirc/verify.hpp"
#include "nacirc/whitebox.hpp"

namespace py = pybind11;
using namespace nacirc;

namespace {

py::dict verdict_dict(const WhiteboxVerdict& v) {
    py::dict d;
    d["zero"] = v.zero;
    if (!v.zero) {
        d["witness"] = v.witness_constant ? std::string("const") : v.witness.literal();
        d["coefficient"] = v.witness_coeff;
    }
    return d;
}

Mode mode_from(const std::string& s) {
    if (s == "comm") return Mode::Comm;
    if (s == "noncomm") return Mode::NonComm;
    throw Error(ErrorKind::BadMode, "mode must be comm or noncomm, got " + s);
}

}  // namespace

PYBIND11_MODULE(_nacirc, m) {
    m.doc() = "Identity testing for nonassociative arithmetic circuits";

    static py::exception<Error> error(m, "NacircError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::tuple args = py::make_tuple(error_kind_name(e.kind()), e.what());
            PyErr_SetObject(error.ptr(), args.ptr());
        }
    });

    m.attr("DEFAULT_PRIME") = kDefaultPrime;

    py::class_<Circuit>(m, "Circuit")
        .def_property_readonly("mode", [](const Circuit& c) { return std::string(mode_name(c.mode)); })
        .def_readonly("p", &Circuit::p)
        .def_readonly("n", &Circuit::n)
        .def_property_readonly("size", &Circuit::size)
        .def_property_readonly("degree", &Circuit::degree)
        .def_property_readonly("product_depth", &Circuit::product_depth)
        .def("serialize", [](const Circuit& c) { return serialize(c); })
        .def("__repr__", [](const Circuit& c) {
            return "<Circuit mode=" + std::string(mode_name(c.mode)) + " n=" + std::to_string(c.n) +
                   " size=" + std::to_string(c.size()) + ">";
        });

    m.def("parse", &parse, py::arg("text"));
    m.def(
        "gen_random",
        [](int n, int size, int degree_cap, const std::string& mode, std::uint64_t seed, u64 p) {
            return gen_random(n, size, degree_cap, mode_from(mode), seed, p);
        },
        py::arg("n"), py::arg("size"), py::arg("degree_cap") = 4, py::arg("mode") = "comm", py::arg("seed") = 1,
        py::arg("p") = kDefaultPrime);

    m.def(
        "expand",
        [](const Circuit& c, std::size_t max_terms) {
            Poly f = expand(c, max_terms);
            std::map<std::string, u64> terms;
            for (const auto& [mono, co] : f.terms) terms[mono.literal()] = co;
            return std::make_pair(terms, f.constant);
        },
        py::arg("circuit"), py::arg("max_terms") = kDefaultTermCap,
        "Returns ({literal: coefficient}, constant).");

    m.def(
        "whitebox_pit",
        [](const Circuit& c, bool naive_duplicate_split) {
            WhiteboxOptions opt;
            opt.naive_duplicate_split = naive_duplicate_split;
            return verdict_dict(whitebox_pit(c, opt));
        },
        py::arg("circuit"), py::arg("naive_duplicate_split") = false);

    m.def(
        "randomized_pit",
        [](const Circuit& c, u64 set_size, int trials, std::uint64_t seed, int degree) {
            Rng rng(seed);
            RandVerdict v = randomized_pit(blackbox_from_circuit(c, degree), iota_set(set_size), trials, rng);
            py::dict d;
            d["zero"] = v.zero;
            d["bound"] = v.bound;
            d["trials"] = v.trials_run;
            return d;
        },
        py::arg("circuit"), py::arg("set_size") = 1000, py::arg("trials") = 10, py::arg("seed") = 1,
        py::arg("degree") = -1);

    m.def(
        "hitting_pit",
        [](const Circuit& c, int depth, std::uint64_t budget) {
            Circuit sub = extract(c, c.output);
            HittingBudget b;
            b.max_candidates = budget;
            DetVerdict v = blackbox_pit_det(blackbox_from_circuit(c), sub.size(), depth < 0 ? sub.product_depth() : depth, b);
            py::dict d;
            d["zero"] = v.zero;
            d["queries"] = v.queries;
            return d;
        },
        py::arg("circuit"), py::arg("depth") = -1, py::arg("budget") = kDefaultCandidateCap);

    m.def(
        "encode",
        [](const std::string& literal) {
            MonomialCode code = encode(parse_monomial(literal));
            return std::make_pair(code.sigma, code.levels);
        },
        py::arg("literal"));
    m.def(
        "decode",
        [](const std::vector<int>& sigma, const std::vector<int>& levels) {
            return decode(MonomialCode{sigma, levels}).literal();
        },
        py::arg("sigma"), py::arg("levels"));
    m.def(
        "canon_comm", [](const std::string& literal) { return canon_comm(parse_monomial(literal)).literal(); },
        py::arg("literal"));

    m.def("kronecker_size", &kronecker_size, py::arg("n_z"), py::arg("k"), py::arg("d"));

    m.def(
        "verify",
        [](const std::string& corpus, std::uint64_t seed, bool naive_duplicate_split) {
            VerifyOptions opt;
            opt.corpus = parse_corpus(corpus);
            opt.seed = seed;
            opt.whitebox.naive_duplicate_split = naive_duplicate_split;
            VerifyReport rep = verify_suite(opt);
            py::list out;
            for (const auto& r : rep.criteria) {
                py::dict d;
                d["id"] = r.id;
                d["name"] = r.name;
                d["pass"] = r.pass;
                d["cap_limited"] = r.unattainable();
                d["line"] = format_result(r);
                out.append(d);
            }
            return out;
        },
        py::arg("corpus") = "small", py::arg("seed") = 1, py::arg("naive_duplicate_split") = false);
}
