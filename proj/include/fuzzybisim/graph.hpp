/**
 * @file graph.hpp
 * @brief Finite fuzzy labeled graphs and their text format.
 *
 * A graph is a finite vertex set, fuzzy vertex labels (a degree per label
 * symbol, absent symbols meaning degree 0) and fuzzy edges: at most one edge
 * per (origin, edge label, destination) triple, always with positive degree.
 *
 * Text format, one item per line, '#' starts a comment:
 *
 *     v <vertexId> [<symbol>:<degree> ...]
 *     e <origin> <label> <dest> <degree>
 *
 * Vertices must be declared before any edge mentions them.  The vertex label
 * alphabet, the edge label alphabet and the set of used degrees are all
 * inferred from the input.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzybisim/degree.hpp"

namespace fuzzybisim {

/// Parse failure; carries the 1-based input line (0 for whole-input errors).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error(line == 0 ? message
                                     : "line " + std::to_string(line) + ": " +
                                           message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Fuzzy vertex label: (symbol index, positive degree) pairs sorted by
/// symbol index.  Symbols not listed have degree 0.
using VertexLabel = std::vector<std::pair<std::uint32_t, Degree>>;

struct Edge {
  std::uint32_t origin;
  std::uint32_t label;
  std::uint32_t dest;
  Degree degree;  // always positive
};

class FuzzyGraph {
 public:
  /// Parses the text format.  Throws ParseError (with line number) on
  /// malformed lines, unknown vertices, duplicate declarations or edges,
  /// degrees outside [0, 1], zero-degree edges, or an empty vertex set.
  static FuzzyGraph parse(std::string_view text);

  /// Reads and parses a file; throws std::runtime_error if unreadable.
  static FuzzyGraph load(const std::string& path);

  /// Canonical text rendering: vertex lines in declaration order with label
  /// entries sorted by symbol, then edge lines in input order.  Parsing the
  /// result yields an identical graph.
  std::string serialize() const;

  std::size_t vertex_count() const noexcept { return vertex_ids_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::size_t label_count() const noexcept { return label_names_.size(); }
  std::size_t symbol_count() const noexcept { return symbol_names_.size(); }
  /// Number of distinct degrees used by edges (the parameter l).
  std::size_t distinct_degree_count() const noexcept {
    return distinct_degrees_;
  }

  const std::string& vertex_id(std::uint32_t v) const {
    return vertex_ids_.at(v);
  }
  const std::string& label_name(std::uint32_t r) const {
    return label_names_.at(r);
  }
  const std::string& symbol_name(std::uint32_t s) const {
    return symbol_names_.at(s);
  }
  std::optional<std::uint32_t> find_vertex(std::string_view id) const;
  std::optional<std::uint32_t> find_label(std::string_view name) const;

  const VertexLabel& vertex_label(std::uint32_t v) const {
    return vertex_labels_.at(v);
  }

  std::span<const Edge> edges() const noexcept { return edges_; }

  /// Edge indices of all label-r edges into v.
  std::span<const std::uint32_t> incoming(std::uint32_t v,
                                          std::uint32_t r) const;

  /// Edge indices of all label-r edges out of v, sorted by destination.
  std::span<const std::uint32_t> outgoing(std::uint32_t v,
                                          std::uint32_t r) const;

  /// Degree of the (x, r, y) edge, or zero if there is none.
  Degree degree_between(std::uint32_t x, std::uint32_t r,
                        std::uint32_t y) const;

 private:
  friend FuzzyGraph make_graph(std::vector<std::string> vertex_ids,
                               std::vector<VertexLabel> vertex_labels,
                               std::vector<std::string> symbol_names,
                               std::vector<std::string> label_names,
                               std::vector<Edge> edges);
  void build_indexes();

  std::vector<std::string> vertex_ids_;     // declaration order
  std::vector<VertexLabel> vertex_labels_;  // parallel to vertex_ids_
  std::vector<std::string> symbol_names_;   // sorted
  std::vector<std::string> label_names_;    // sorted
  std::vector<Edge> edges_;                 // input order
  std::size_t distinct_degrees_ = 0;

  // CSR indexes keyed by v * label_count + r.
  std::vector<std::uint32_t> in_offsets_, in_edges_;
  std::vector<std::uint32_t> out_offsets_, out_edges_;
};

/// Builds a graph from already-validated parts (used by the random
/// generator); labels/symbols must be sorted, edges positive and duplicate
/// free.
FuzzyGraph make_graph(std::vector<std::string> vertex_ids,
                      std::vector<VertexLabel> vertex_labels,
                      std::vector<std::string> symbol_names,
                      std::vector<std::string> label_names,
                      std::vector<Edge> edges);

/// sup { degree(x, r, y) : y in targets }, zero for an empty supremum.
/// `targets` must be sorted ascending and duplicate free.
Degree sup_degree(const FuzzyGraph& g, std::uint32_t x, std::uint32_t r,
                  std::span<const std::uint32_t> targets);

/// |{ y in targets : degree(x, r, y) == d }|.  Requires d > 0; `targets`
/// sorted ascending and duplicate free.
std::size_t count_at_degree(const FuzzyGraph& g, std::uint32_t x,
                            std::uint32_t r, Degree d,
                            std::span<const std::uint32_t> targets);

}  // namespace fuzzybisim
