#include "fuzzybisim/graph.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace fuzzybisim {

namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

// Interns names in first-seen order; remapped to sorted order after parsing.
class Interner {
 public:
  std::uint32_t intern(std::string_view name) {
    auto it = index_.find(std::string(name));
    if (it != index_.end()) return it->second;
    std::uint32_t id = static_cast<std::uint32_t>(names_.size());
    names_.emplace_back(name);
    index_.emplace(names_.back(), id);
    return id;
  }

  // Returns (sorted names, old-index -> new-index map).
  std::pair<std::vector<std::string>, std::vector<std::uint32_t>> sorted()
      const {
    std::vector<std::uint32_t> order(names_.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      return names_[a] < names_[b];
    });
    std::vector<std::string> sorted_names(names_.size());
    std::vector<std::uint32_t> remap(names_.size());
    for (std::uint32_t pos = 0; pos < order.size(); ++pos) {
      sorted_names[pos] = names_[order[pos]];
      remap[order[pos]] = pos;
    }
    return {std::move(sorted_names), std::move(remap)};
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

}  // namespace

FuzzyGraph FuzzyGraph::parse(std::string_view text) {
  FuzzyGraph g;
  std::unordered_map<std::string, std::uint32_t> vertex_index;
  Interner symbols, labels;
  std::set<std::array<std::uint32_t, 3>> seen_edges;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    if (std::size_t hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    auto tokens = tokenize(line);
    if (tokens.empty()) {
      if (pos > text.size()) break;
      continue;
    }

    if (tokens[0] == "v") {
      if (tokens.size() < 2)
        throw ParseError(line_no, "vertex line needs an id");
      std::string id(tokens[1]);
      if (!vertex_index.emplace(id, g.vertex_ids_.size()).second)
        throw ParseError(line_no, "duplicate vertex '" + id + "'");
      g.vertex_ids_.push_back(id);
      VertexLabel label;
      std::set<std::string_view> line_symbols;
      for (std::size_t t = 2; t < tokens.size(); ++t) {
        std::size_t colon = tokens[t].rfind(':');
        if (colon == std::string_view::npos || colon == 0)
          throw ParseError(line_no, "label entry '" + std::string(tokens[t]) +
                                        "' is not <symbol>:<degree>");
        std::string_view sym = tokens[t].substr(0, colon);
        std::string_view deg_text = tokens[t].substr(colon + 1);
        Degree d;
        try {
          d = Degree::parse(deg_text);
        } catch (const std::invalid_argument& e) {
          throw ParseError(line_no, e.what());
        }
        if (!line_symbols.insert(sym).second)
          throw ParseError(
              line_no, "duplicate label symbol '" + std::string(sym) + "'");
        // A zero entry means the symbol is absent, so it is dropped and does
        // not even enter the inferred alphabet.
        if (!d.is_zero()) label.emplace_back(symbols.intern(sym), d);
      }
      g.vertex_labels_.push_back(std::move(label));
    } else if (tokens[0] == "e") {
      if (tokens.size() != 5)
        throw ParseError(line_no,
                         "edge line needs <origin> <label> <dest> <degree>");
      auto vertex_of = [&](std::string_view name) {
        auto it = vertex_index.find(std::string(name));
        if (it == vertex_index.end())
          throw ParseError(line_no,
                           "unknown vertex '" + std::string(name) + "'");
        return it->second;
      };
      Edge e;
      e.origin = vertex_of(tokens[1]);
      e.label = labels.intern(tokens[2]);
      e.dest = vertex_of(tokens[3]);
      try {
        e.degree = Degree::parse(tokens[4]);
      } catch (const std::invalid_argument& ex) {
        throw ParseError(line_no, ex.what());
      }
      if (e.degree.is_zero())
        throw ParseError(line_no,
                         "zero-degree edge (omit the line instead)");
      if (!seen_edges.insert({e.origin, e.label, e.dest}).second)
        throw ParseError(line_no, "duplicate edge (" + std::string(tokens[1]) +
                                      ", " + std::string(tokens[2]) + ", " +
                                      std::string(tokens[3]) + ")");
      g.edges_.push_back(e);
    } else {
      throw ParseError(line_no,
                       "unknown directive '" + std::string(tokens[0]) + "'");
    }
    if (pos > text.size()) break;
  }

  if (g.vertex_ids_.empty()) throw ParseError(0, "graph has no vertices");

  // Re-index symbols and labels into sorted order.
  auto [sym_names, sym_map] = symbols.sorted();
  g.symbol_names_ = std::move(sym_names);
  for (auto& label : g.vertex_labels_) {
    for (auto& [s, d] : label) s = sym_map[s];
    std::sort(label.begin(), label.end());
  }
  auto [lab_names, lab_map] = labels.sorted();
  g.label_names_ = std::move(lab_names);
  for (auto& e : g.edges_) e.label = lab_map[e.label];

  g.build_indexes();
  return g;
}

FuzzyGraph FuzzyGraph::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string FuzzyGraph::serialize() const {
  std::string out;
  for (std::uint32_t v = 0; v < vertex_ids_.size(); ++v) {
    out += "v ";
    out += vertex_ids_[v];
    for (const auto& [s, d] : vertex_labels_[v]) {
      out += ' ';
      out += symbol_names_[s];
      out += ':';
      out += d.to_string();
    }
    out += '\n';
  }
  for (const Edge& e : edges_) {
    out += "e ";
    out += vertex_ids_[e.origin];
    out += ' ';
    out += label_names_[e.label];
    out += ' ';
    out += vertex_ids_[e.dest];
    out += ' ';
    out += e.degree.to_string();
    out += '\n';
  }
  return out;
}

std::optional<std::uint32_t> FuzzyGraph::find_vertex(
    std::string_view id) const {
  for (std::uint32_t v = 0; v < vertex_ids_.size(); ++v)
    if (vertex_ids_[v] == id) return v;
  return std::nullopt;
}

std::optional<std::uint32_t> FuzzyGraph::find_label(
    std::string_view name) const {
  for (std::uint32_t r = 0; r < label_names_.size(); ++r)
    if (label_names_[r] == name) return r;
  return std::nullopt;
}

void FuzzyGraph::build_indexes() {
  std::set<Degree> degrees;
  for (const Edge& e : edges_) degrees.insert(e.degree);
  distinct_degrees_ = degrees.size();

  const std::size_t slots = vertex_ids_.size() * label_names_.size();
  in_offsets_.assign(slots + 1, 0);
  out_offsets_.assign(slots + 1, 0);
  auto in_slot = [&](const Edge& e) {
    return std::size_t{e.dest} * label_names_.size() + e.label;
  };
  auto out_slot = [&](const Edge& e) {
    return std::size_t{e.origin} * label_names_.size() + e.label;
  };
  for (const Edge& e : edges_) {
    ++in_offsets_[in_slot(e) + 1];
    ++out_offsets_[out_slot(e) + 1];
  }
  for (std::size_t i = 1; i <= slots; ++i) {
    in_offsets_[i] += in_offsets_[i - 1];
    out_offsets_[i] += out_offsets_[i - 1];
  }
  in_edges_.resize(edges_.size());
  out_edges_.resize(edges_.size());
  std::vector<std::uint32_t> in_fill(in_offsets_.begin(),
                                     in_offsets_.end() - 1);
  std::vector<std::uint32_t> out_fill(out_offsets_.begin(),
                                      out_offsets_.end() - 1);
  for (std::uint32_t i = 0; i < edges_.size(); ++i) {
    in_edges_[in_fill[in_slot(edges_[i])]++] = i;
    out_edges_[out_fill[out_slot(edges_[i])]++] = i;
  }
  // Destination-sorted out segments enable binary-searched degree lookups.
  for (std::size_t s = 0; s < slots; ++s)
    std::sort(out_edges_.begin() + out_offsets_[s],
              out_edges_.begin() + out_offsets_[s + 1],
              [&](std::uint32_t a, std::uint32_t b) {
                return edges_[a].dest < edges_[b].dest;
              });
}

std::span<const std::uint32_t> FuzzyGraph::incoming(std::uint32_t v,
                                                    std::uint32_t r) const {
  std::size_t slot = std::size_t{v} * label_names_.size() + r;
  return {in_edges_.data() + in_offsets_[slot],
          in_edges_.data() + in_offsets_[slot + 1]};
}

std::span<const std::uint32_t> FuzzyGraph::outgoing(std::uint32_t v,
                                                    std::uint32_t r) const {
  std::size_t slot = std::size_t{v} * label_names_.size() + r;
  return {out_edges_.data() + out_offsets_[slot],
          out_edges_.data() + out_offsets_[slot + 1]};
}

Degree FuzzyGraph::degree_between(std::uint32_t x, std::uint32_t r,
                                  std::uint32_t y) const {
  auto seg = outgoing(x, r);
  auto it = std::lower_bound(seg.begin(), seg.end(), y,
                             [&](std::uint32_t idx, std::uint32_t dest) {
                               return edges_[idx].dest < dest;
                             });
  if (it != seg.end() && edges_[*it].dest == y) return edges_[*it].degree;
  return Degree::zero();
}

FuzzyGraph make_graph(std::vector<std::string> vertex_ids,
                      std::vector<VertexLabel> vertex_labels,
                      std::vector<std::string> symbol_names,
                      std::vector<std::string> label_names,
                      std::vector<Edge> edges) {
  if (vertex_ids.empty()) throw std::invalid_argument("graph has no vertices");
  if (vertex_labels.size() != vertex_ids.size())
    throw std::invalid_argument("vertex label list size mismatch");
  if (!std::is_sorted(symbol_names.begin(), symbol_names.end()) ||
      !std::is_sorted(label_names.begin(), label_names.end()))
    throw std::invalid_argument("alphabets must be sorted");
  std::set<std::array<std::uint32_t, 3>> seen;
  for (const Edge& e : edges) {
    if (e.origin >= vertex_ids.size() || e.dest >= vertex_ids.size() ||
        e.label >= label_names.size())
      throw std::invalid_argument("edge references unknown vertex or label");
    if (e.degree.is_zero()) throw std::invalid_argument("zero-degree edge");
    if (!seen.insert({e.origin, e.label, e.dest}).second)
      throw std::invalid_argument("duplicate edge");
  }
  FuzzyGraph g;
  g.vertex_ids_ = std::move(vertex_ids);
  g.vertex_labels_ = std::move(vertex_labels);
  g.symbol_names_ = std::move(symbol_names);
  g.label_names_ = std::move(label_names);
  g.edges_ = std::move(edges);
  g.build_indexes();
  return g;
}

Degree sup_degree(const FuzzyGraph& g, std::uint32_t x, std::uint32_t r,
                  std::span<const std::uint32_t> targets) {
  Degree best = Degree::zero();
  for (std::uint32_t idx : g.outgoing(x, r)) {
    const Edge& e = g.edges()[idx];
    if (std::binary_search(targets.begin(), targets.end(), e.dest))
      best = std::max(best, e.degree);
  }
  return best;
}

std::size_t count_at_degree(const FuzzyGraph& g, std::uint32_t x,
                            std::uint32_t r, Degree d,
                            std::span<const std::uint32_t> targets) {
  if (d.is_zero()) throw std::invalid_argument("count_at_degree needs d > 0");
  std::size_t count = 0;
  for (std::uint32_t idx : g.outgoing(x, r)) {
    const Edge& e = g.edges()[idx];
    if (e.degree == d &&
        std::binary_search(targets.begin(), targets.end(), e.dest))
      ++count;
  }
  return count;
}

}  // namespace fuzzybisim
