/**
 * @file pymodule.cpp
 * @brief Python bindings for the fuzzy-bisimulation core.
 *
 * Exposes the main operations with Python-friendly types: vertices and edge
 * labels are referred to by their string ids, partitions are lists of lists
 * of ids, and relations are lists of id pairs.  Degrees cross the boundary
 * as `Degree` objects that accept and render exact decimal strings.
 */

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>

#include "fuzzybisim/engine.hpp"
#include "fuzzybisim/graph.hpp"
#include "fuzzybisim/oracle.hpp"
#include "fuzzybisim/partition.hpp"

namespace py = pybind11;
using namespace fuzzybisim;

namespace {

std::uint32_t vertex_index(const FuzzyGraph& g, const std::string& id) {
  if (auto v = g.find_vertex(id)) return *v;
  throw std::invalid_argument("unknown vertex id '" + id + "'");
}

std::uint32_t label_index(const FuzzyGraph& g, const std::string& name) {
  if (auto r = g.find_label(name)) return *r;
  throw std::invalid_argument("unknown edge label '" + name + "'");
}

std::vector<std::uint32_t> vertex_indices(const FuzzyGraph& g,
                                          const std::vector<std::string>&
                                              ids) {
  std::vector<std::uint32_t> out;
  out.reserve(ids.size());
  for (const auto& id : ids) out.push_back(vertex_index(g, id));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PartitionResult partition_from_python(
    const FuzzyGraph& g, const std::vector<std::vector<std::string>>& blocks) {
  std::vector<std::vector<std::uint32_t>> raw;
  raw.reserve(blocks.size());
  for (const auto& block : blocks) {
    raw.emplace_back();
    for (const auto& id : block) raw.back().push_back(vertex_index(g, id));
  }
  return PartitionResult::from_blocks(g, raw);
}

}  // namespace

PYBIND11_MODULE(fuzzybisim, m) {
  m.doc() =
      "Largest crisp bisimulations of finite fuzzy labeled graphs: a "
      "partition-refinement engine (plain and counting-successors modes), "
      "brute-force reference implementations, and a deterministic random "
      "graph generator.";

  py::class_<Degree>(m, "Degree",
                     "Exact edge degree in [0, 1] with at most nine decimal "
                     "places; compares and hashes by value.")
      .def(py::init([](const std::string& text) {
             return Degree::parse(text);
           }),
           py::arg("text"))
      .def_static("parse", &Degree::parse, py::arg("text"))
      .def_property_readonly("scaled", &Degree::scaled,
                             "Value in integral multiples of 1e-9.")
      .def("__str__", &Degree::to_string)
      .def("__repr__",
           [](const Degree& d) { return "Degree('" + d.to_string() + "')"; })
      .def("__eq__",
           [](const Degree& a, const Degree& b) { return a == b; },
           py::is_operator())
      .def("__lt__",
           [](const Degree& a, const Degree& b) { return a < b; },
           py::is_operator())
      .def("__le__",
           [](const Degree& a, const Degree& b) { return a <= b; },
           py::is_operator())
      .def("__hash__",
           [](const Degree& d) { return py::hash(py::int_(d.scaled())); });
  py::implicitly_convertible<py::str, Degree>();

  py::class_<FuzzyGraph>(m, "FuzzyGraph",
                         "Immutable fuzzy labeled graph; build one with "
                         "parse(), load() or random_graph().")
      .def_static("parse", &FuzzyGraph::parse, py::arg("text"),
                  "Parses the text graph format (v/e lines, # comments).")
      .def_static("load", &FuzzyGraph::load, py::arg("path"),
                  "Reads and parses a graph file.")
      .def("serialize", &FuzzyGraph::serialize,
           "Canonical text form; parse(serialize()) round-trips.")
      .def_property_readonly("vertex_count", &FuzzyGraph::vertex_count)
      .def_property_readonly("edge_count", &FuzzyGraph::edge_count)
      .def_property_readonly("label_count", &FuzzyGraph::label_count,
                             "Number of distinct edge labels.")
      .def_property_readonly("distinct_degree_count",
                             &FuzzyGraph::distinct_degree_count,
                             "Number of distinct edge degrees.")
      .def_property_readonly("vertices",
                             [](const FuzzyGraph& g) {
                               std::vector<std::string> ids;
                               for (std::uint32_t v = 0; v < g.vertex_count();
                                    ++v)
                                 ids.push_back(g.vertex_id(v));
                               return ids;
                             })
      .def_property_readonly("labels",
                             [](const FuzzyGraph& g) {
                               std::vector<std::string> names;
                               for (std::uint32_t r = 0; r < g.label_count();
                                    ++r)
                                 names.push_back(g.label_name(r));
                               return names;
                             })
      .def("vertex_label",
           [](const FuzzyGraph& g, const std::string& id) {
             std::vector<std::pair<std::string, Degree>> entries;
             for (auto [symbol, degree] : g.vertex_label(vertex_index(g, id)))
               entries.emplace_back(g.symbol_name(symbol), degree);
             return entries;
           },
           py::arg("vertex"),
           "Positive (symbol, degree) entries of the vertex's fuzzy label.")
      .def("edges",
           [](const FuzzyGraph& g) {
             std::vector<std::tuple<std::string, std::string, std::string,
                                    Degree>>
                 out;
             for (const Edge& e : g.edges())
               out.emplace_back(g.vertex_id(e.origin), g.label_name(e.label),
                                g.vertex_id(e.dest), e.degree);
             return out;
           },
           "All edges as (origin, label, dest, degree), in input order.")
      .def("degree_between",
           [](const FuzzyGraph& g, const std::string& origin,
              const std::string& label, const std::string& dest) {
             return g.degree_between(vertex_index(g, origin),
                                     label_index(g, label),
                                     vertex_index(g, dest));
           },
           py::arg("origin"), py::arg("label"), py::arg("dest"),
           "Degree of that edge, or Degree('0') when absent.")
      .def("__repr__", [](const FuzzyGraph& g) {
        return "<FuzzyGraph: " + std::to_string(g.vertex_count()) +
               " vertices, " + std::to_string(g.edge_count()) + " edges, " +
               std::to_string(g.label_count()) + " labels>";
      });

  m.def(
      "compute",
      [](const FuzzyGraph& g, bool counting) {
        return compute_partition(g, EngineOptions{counting}).blocks;
      },
      py::arg("graph"), py::arg("counting") = false,
      "Partition of the largest (counting) bisimulation, as sorted blocks "
      "of vertex ids.");

  m.def(
      "compute_with_stats",
      [](const FuzzyGraph& g, bool counting) {
        BisimulationEngine engine(g, EngineOptions{counting});
        PartitionResult p = engine.run();
        py::dict stats;
        stats["blocks"] = p.block_count();
        stats["split_calls"] = engine.split_calls();
        stats["max_split_participation"] = engine.max_split_participation();
        stats["degree_comparisons"] = engine.degree_comparisons();
        return py::make_tuple(p.blocks, stats);
      },
      py::arg("graph"), py::arg("counting") = false,
      "Like compute(), but returns (partition, stats dict).");

  m.def(
      "naive_partition",
      [](const FuzzyGraph& g, bool counting) {
        return (counting ? oracle::naive_largest_counting_bisimulation(g)
                         : oracle::naive_largest_bisimulation(g))
            .blocks;
      },
      py::arg("graph"), py::arg("counting") = false,
      "Brute-force reference result; exponentially slower than compute().");

  m.def(
      "initial_partition",
      [](const FuzzyGraph& g, bool counting) {
        return oracle::initial_partition(g, counting).blocks;
      },
      py::arg("graph"), py::arg("counting") = false,
      "Starting partition of the refinement (vertex labels plus outgoing "
      "degree suprema, or full degree multisets when counting).");

  m.def(
      "is_bisimulation",
      [](const FuzzyGraph& g,
         const std::vector<std::pair<std::string, std::string>>& pairs,
         bool counting) {
        return counting ? oracle::is_counting_bisimulation(g, pairs)
                        : oracle::is_bisimulation(g, pairs);
      },
      py::arg("graph"), py::arg("pairs"), py::arg("counting") = false,
      "Definition-level check of a relation given as (id, id) pairs.");

  m.def(
      "is_stable",
      [](const FuzzyGraph& g,
         const std::vector<std::vector<std::string>>& blocks, bool counting) {
        PartitionResult p = partition_from_python(g, blocks);
        return counting ? oracle::is_counting_stable(g, p)
                        : oracle::is_stable(g, p);
      },
      py::arg("graph"), py::arg("blocks"), py::arg("counting") = false,
      "True iff every block behaves uniformly toward every (block, label).");

  m.def(
      "refines",
      [](const FuzzyGraph& g, const std::vector<std::vector<std::string>>& a,
         const std::vector<std::vector<std::string>>& b) {
        return refines(partition_from_python(g, a),
                       partition_from_python(g, b));
      },
      py::arg("graph"), py::arg("finer"), py::arg("coarser"),
      "True iff every block of `finer` lies inside a block of `coarser`.");

  m.def(
      "sup_degree",
      [](const FuzzyGraph& g, const std::string& origin,
         const std::string& label, const std::vector<std::string>& targets) {
        return sup_degree(g, vertex_index(g, origin), label_index(g, label),
                          vertex_indices(g, targets));
      },
      py::arg("graph"), py::arg("origin"), py::arg("label"),
      py::arg("targets"),
      "Supremum of the degrees of origin's label-edges into the target set.");

  m.def(
      "count_at_degree",
      [](const FuzzyGraph& g, const std::string& origin,
         const std::string& label, const Degree& degree,
         const std::vector<std::string>& targets) {
        return count_at_degree(g, vertex_index(g, origin),
                               label_index(g, label), degree,
                               vertex_indices(g, targets));
      },
      py::arg("graph"), py::arg("origin"), py::arg("label"),
      py::arg("degree"), py::arg("targets"),
      "Number of origin's label-edges of exactly that degree into the set.");

  m.def(
      "random_graph",
      [](std::size_t vertices, std::size_t max_edges, std::size_t degree_pool,
         std::size_t labels, std::uint64_t seed) {
        return oracle::random_graph(
            {vertices, max_edges, degree_pool, labels, seed});
      },
      py::arg("vertices"), py::arg("max_edges") = 0,
      py::arg("degree_pool") = 1, py::arg("labels") = 1, py::arg("seed") = 0,
      "Deterministic random graph: identical parameters give an identical "
      "graph on every platform.");
}
