#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "gael/benchmark.hpp"
#include "gael/crossover.hpp"
#include "gael/ga_engine.hpp"
#include "gael/graph.hpp"
#include "gael/partition.hpp"
#include "gael/walk_init.hpp"

namespace py = pybind11;
using namespace gael;

namespace {

std::vector<Label> labels_of(const Partition& p) { return {p.labels().begin(), p.labels().end()}; }

Graph graph_from_text(const std::string& text) {
  std::istringstream in(text);
  return load_edge_list(in);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Community detection by a genetic algorithm with ensemble crossover";

  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);

  py::class_<Graph>(m, "Graph")
      .def(py::init([](std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
             std::vector<Edge> list;
             list.reserve(edges.size());
             for (auto [v, w] : edges) list.push_back({v, w});
             return Graph(n, std::move(list));
           }),
           py::arg("n"), py::arg("edges"))
      .def_static("from_file", [](const std::string& path) { return load_edge_list_file(path); }, py::arg("path"))
      .def_static("from_text", &graph_from_text, py::arg("text"))
      .def_property_readonly("node_count", &Graph::node_count)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def("edges",
           [](const Graph& g) {
             std::vector<std::pair<NodeId, NodeId>> out;
             for (const auto& e : g.edges()) out.emplace_back(e.first, e.second);
             return out;
           })
      .def("neighbors",
           [](const Graph& g, NodeId v) {
             if (v >= g.node_count()) throw py::index_error("node out of range");
             const auto n = g.neighbors(v);
             return std::vector<NodeId>(n.begin(), n.end());
           })
      .def("degree", &Graph::degree)
      .def("token", &Graph::token)
      .def("closed_neighborhood", [](const Graph& g, NodeId v) { return closed_neighborhood(g, v); })
      .def("__repr__", [](const Graph& g) {
        return "Graph(n=" + std::to_string(g.node_count()) + ", m=" + std::to_string(g.edge_count()) + ")";
      });

  py::class_<Partition>(m, "Partition")
      .def(py::init<std::vector<Label>>(), py::arg("labels"))
      .def_property_readonly("labels", &labels_of)
      .def_property_readonly("community_count", &Partition::community_count)
      .def_property_readonly("q", [](const Partition& p) { return p.cached_q(); })
      .def("canonical", [](const Partition& p) { return canonicalize(p); })
      .def("__len__", &Partition::size)
      .def("__eq__", [](const Partition& a, const Partition& b) { return a == b; })
      .def_static("from_file", &read_partition_file, py::arg("path"), py::arg("graph"));

  py::class_<GaConfig>(m, "GaConfig")
      .def(py::init<>())
      .def_readwrite("mu", &GaConfig::mu)
      .def_readwrite("lambda_", &GaConfig::lambda)
      .def_readwrite("ensemble_size", &GaConfig::ensemble_size)
      .def_readwrite("tournament_size", &GaConfig::tournament_size)
      .def_readwrite("walk_length", &GaConfig::walk_length)
      .def_readwrite("mutation_rate", &GaConfig::mutation_rate)
      .def_readwrite("stall_generations", &GaConfig::stall_generations)
      .def_readwrite("max_generations", &GaConfig::max_generations)
      .def_readwrite("seed", &GaConfig::seed)
      .def_readwrite("threads", &GaConfig::threads)
      .def("validate", &GaConfig::validate);

  py::class_<RunReport>(m, "RunReport")
      .def_readonly("best", &RunReport::best)
      .def_readonly("best_q", &RunReport::best_q)
      .def_readonly("q_trace", &RunReport::q_trace)
      .def_readonly("generations_run", &RunReport::generations_run)
      .def_property_readonly("terminated_by", [](const RunReport& r) { return to_string(r.terminated_by); })
      .def_readonly("seed", &RunReport::seed)
      .def_readonly("wall_seconds", &RunReport::wall_seconds);

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("p_out", &SweepRow::p_out)
      .def_readonly("reps", &SweepRow::reps)
      .def_readonly("mean_accuracy", &SweepRow::mean_accuracy)
      .def_readonly("std_accuracy", &SweepRow::std_accuracy)
      .def_readonly("mean_q", &SweepRow::mean_q);

  m.def("modularity", py::overload_cast<const Graph&, const Partition&>(&modularity), py::arg("graph"),
        py::arg("partition"));
  m.def("accuracy", &accuracy, py::arg("predicted"), py::arg("truth"));

  m.def(
      "run",
      [](const Graph& g, const GaConfig& cfg) {
        py::gil_scoped_release release;
        return run(g, cfg);
      },
      py::arg("graph"), py::arg("config") = GaConfig{});

  m.def(
      "init_population",
      [](const Graph& g, std::size_t size, unsigned steps, std::uint64_t seed) {
        return init_population(g, size, steps, seed);
      },
      py::arg("graph"), py::arg("size"), py::arg("walk_length") = 3, py::arg("seed") = 1);

  m.def(
      "crossover", [](const Graph& g, const std::vector<Partition>& parents) { return crossover(g, parents); },
      py::arg("graph"), py::arg("parents"));

  m.def(
      "edge_join_strengths",
      [](const Graph& g, const std::vector<Partition>& parents) { return edge_join_strengths(g, parents); },
      py::arg("graph"), py::arg("parents"));
  m.def("edge_similarities", &edge_similarities, py::arg("graph"));

  m.def(
      "arrival_probabilities",
      [](const Graph& g, const std::vector<NodeId>& members, NodeId destination, unsigned steps) {
        return arrival_probabilities(g, members, destination, steps).prob;
      },
      py::arg("graph"), py::arg("members"), py::arg("destination"), py::arg("steps"));

  m.def(
      "generate_gn",
      [](double p_out, std::uint64_t seed) {
        Rng rng(derive_seed(seed, {0}));
        auto net = generate_gn(GnSpec{p_out}, rng);
        return py::make_tuple(std::move(net.graph), std::move(net.truth));
      },
      py::arg("p_out"), py::arg("seed") = 1);

  m.def(
      "sweep",
      [](const std::vector<double>& p_out, std::size_t reps, const GaConfig& cfg, std::uint64_t seed,
         unsigned threads) {
        py::gil_scoped_release release;
        return sweep(p_out, reps, cfg, seed, threads);
      },
      py::arg("p_out"), py::arg("reps"), py::arg("config") = GaConfig{}, py::arg("seed") = 1,
      py::arg("threads") = 1);
}
