#include "ldrn/capacity.hpp"
#include "ldrn/cli.hpp"
#include "ldrn/error.hpp"
#include "ldrn/flow.hpp"
#include "ldrn/multicast.hpp"
#include "ldrn/rounds.hpp"
#include "ldrn/sim.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace ldrn;

PYBIND11_MODULE(_ldrn, m)
{
    m.doc() = "Linear multicast codes for layered linear deterministic relay networks";

    auto& error = py::register_exception<Error>(m, "Error");
    py::register_exception<FieldTooSmall>(m, "FieldTooSmall", error.ptr());
    py::register_exception<RetriesExhausted>(m, "RetriesExhausted", error.ptr());
    py::register_exception<InvariantError>(m, "InvariantError", error.ptr());
    py::register_exception<ParseError>(m, "ParseError", error.ptr());
    py::register_exception<ValidationError>(m, "ValidationError", error.ptr());

    py::class_<Field>(m, "Field")
        .def(py::init(&Field::create), py::arg("p"), py::arg("k") = 1)
        .def_property_readonly("characteristic", &Field::characteristic)
        .def_property_readonly("degree", &Field::degree)
        .def_property_readonly("order", &Field::order)
        .def_property_readonly("modulus", &Field::modulus)
        .def("add", &Field::add)
        .def("sub", &Field::sub)
        .def("neg", &Field::neg)
        .def("mul", &Field::mul)
        .def("inv", &Field::inv)
        .def("div", &Field::div)
        .def("__eq__", [](const Field& a, const Field& b) { return a == b; })
        .def("__repr__", &Field::name);

    py::class_<Network>(m, "Network")
        .def_static("from_json", &load_network)
        .def("to_json", &save_network)
        .def_readonly("field", &Network::field)
        .def_property_readonly("layer_count", &Network::layer_count)
        .def_property_readonly("destinations",
                               [](const Network& n) {
                                   std::vector<std::pair<int, int>> out;
                                   for (const auto& d : n.destinations)
                                       out.emplace_back(d.layer + 1, d.node + 1);
                                   return out;
                               })
        .def("transfer", [](const Network& n, int layer, const std::vector<Elem>& x) { return transfer(n, layer - 1, x); },
             py::arg("layer"), py::arg("x"))
        .def("validate", [](const Network& n) { return validate(n); });

    m.def(
        "generate",
        [](std::uint64_t seed, std::vector<int> node_counts, int dim_min, int dim_max, double density, std::uint32_t p,
           std::uint32_t k, int destinations, std::vector<int> dest_layers) {
            GeneratorParams gp;
            gp.seed = seed;
            gp.node_counts = std::move(node_counts);
            gp.dim_min = dim_min;
            gp.dim_max = dim_max;
            gp.density = density;
            gp.p = p;
            gp.k = k;
            gp.destinations.count = destinations;
            gp.destinations.layers = std::move(dest_layers);
            return generate_random(gp);
        },
        py::arg("seed") = 1, py::arg("node_counts") = std::vector<int>{1, 2, 1}, py::arg("dim_min") = 1,
        py::arg("dim_max") = 3, py::arg("density") = 1.0, py::arg("p") = 2, py::arg("k") = 1,
        py::arg("destinations") = 1, py::arg("dest_layers") = std::vector<int>{});

    m.def("min_cut", [](const Network& n, std::size_t dest, int jobs) { return min_cut(n, dest - 1, jobs).value; },
          py::arg("net"), py::arg("dest"), py::arg("jobs") = 1);
    m.def("multicast_capacity", &multicast_capacity, py::arg("net"), py::arg("jobs") = 1);

    py::class_<Flow>(m, "Flow")
        .def_static("from_json", &load_flow)
        .def("to_json", &save_flow)
        .def_readonly("rate", &Flow::rate);
    m.def("find_flow", [](const Network& n, std::size_t dest, int rate) { return find_flow(n, dest - 1, rate); },
          py::arg("net"), py::arg("dest"), py::arg("rate"));
    m.def("verify_flow", &verify_flow);
    m.def("unicast_transmit",
          [](const Network& n, const Flow& f, const std::vector<Elem>& w) { return unicast_transmit(n, f, w); });

    py::class_<MulticastCode>(m, "MulticastCode")
        .def_static("from_json", &load_code)
        .def("to_json", &save_code)
        .def_readonly("rate", &MulticastCode::rate)
        .def_readonly("field", &MulticastCode::field)
        .def("__eq__", [](const MulticastCode& a, const MulticastCode& b) { return a == b; });

    m.def(
        "build_code",
        [](const Network& n, const std::string& mode, std::uint64_t seed, std::optional<int> rate, int max_retries) {
            BuildOptions opt;
            if (mode == "det")
                opt.mode = Mode::Deterministic;
            else if (mode == "rand")
                opt.mode = Mode::Randomized;
            else
                throw Error("mode must be \"det\" or \"rand\"");
            opt.seed = seed;
            opt.rate = rate;
            opt.max_retries = max_retries;
            return build_code(n, opt);
        },
        py::arg("net"), py::arg("mode") = "det", py::arg("seed") = 1, py::arg("rate") = std::nullopt,
        py::arg("max_retries") = 20);
    m.def("verify_code", &verify_code);

    m.def("simulate", [](const Network& n, const MulticastCode& c, const std::vector<Elem>& w) {
        const Trace t = simulate(n, c, w);
        std::vector<std::vector<Elem>> decoded;
        for (const auto& d : t.destinations)
            decoded.push_back(d.decoded);
        return decoded;
    });

    m.def("required_rounds", &required_rounds, py::arg("p"), py::arg("g"));
    m.def("lift_network", &lift_network, py::arg("net"), py::arg("k"));
    m.def("pack", &pack);
    m.def("unpack", [](const Field& f, const std::vector<Elem>& v) { return unpack(f, v); });

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        "Run a command-line subcommand in-process; returns (exit code, stdout, stderr).");
}
