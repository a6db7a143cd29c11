#include "fuzzybisim/oracle.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace fuzzybisim::oracle {

namespace {

std::uint32_t vertex_or_throw(const FuzzyGraph& g, const std::string& id) {
  if (auto v = g.find_vertex(id)) return *v;
  throw std::invalid_argument("unknown vertex '" + id + "'");
}

// Dense membership matrix for a relation over vertex indices.
struct DenseRelation {
  std::size_t n = 0;
  std::vector<char> bits;

  DenseRelation(const FuzzyGraph& g, const Relation& z)
      : n(g.vertex_count()), bits(n * n, 0) {
    for (const auto& [a, b] : z)
      bits[vertex_or_throw(g, a) * n + vertex_or_throw(g, b)] = 1;
  }

  bool operator()(std::uint32_t a, std::uint32_t b) const {
    return bits[std::size_t{a} * n + b] != 0;
  }

  bool empty() const {
    return std::find(bits.begin(), bits.end(), 1) == bits.end();
  }
};

// Both simulation directions for one related pair (x, x').
bool pair_simulates(const FuzzyGraph& g, const DenseRelation& z,
                    std::uint32_t x, std::uint32_t xp) {
  for (std::uint32_t r = 0; r < g.label_count(); ++r) {
    for (std::uint32_t ei : g.outgoing(x, r)) {
      const Edge& e = g.edges()[ei];
      bool matched = false;
      for (std::uint32_t ej : g.outgoing(xp, r)) {
        const Edge& f = g.edges()[ej];
        if (z(e.dest, f.dest) && f.degree >= e.degree) {
          matched = true;
          break;
        }
      }
      if (!matched) return false;
    }
    for (std::uint32_t ej : g.outgoing(xp, r)) {
      const Edge& f = g.edges()[ej];
      bool matched = false;
      for (std::uint32_t ei : g.outgoing(x, r)) {
        const Edge& e = g.edges()[ei];
        if (z(e.dest, f.dest) && e.degree >= f.degree) {
          matched = true;
          break;
        }
      }
      if (!matched) return false;
    }
  }
  return true;
}

// Kuhn's augmenting-path search for bipartite matching.
bool augment(std::size_t left, const std::vector<std::vector<std::size_t>>& adj,
             std::vector<char>& visited, std::vector<std::ptrdiff_t>& match) {
  for (std::size_t right : adj[left]) {
    if (visited[right]) continue;
    visited[right] = 1;
    if (match[right] < 0 ||
        augment(static_cast<std::size_t>(match[right]), adj, visited, match)) {
      match[right] = static_cast<std::ptrdiff_t>(left);
      return true;
    }
  }
  return false;
}

// Degree-preserving related bijection between successor edge sets?
bool successors_match(const FuzzyGraph& g, const DenseRelation& z,
                      std::uint32_t x, std::uint32_t xp, std::uint32_t r) {
  auto xs = g.outgoing(x, r);
  auto xps = g.outgoing(xp, r);
  if (xs.size() != xps.size()) return false;
  std::vector<std::vector<std::size_t>> adj(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Edge& e = g.edges()[xs[i]];
    for (std::size_t j = 0; j < xps.size(); ++j) {
      const Edge& f = g.edges()[xps[j]];
      if (e.degree == f.degree && z(e.dest, f.dest)) adj[i].push_back(j);
    }
  }
  std::vector<std::ptrdiff_t> match(xps.size(), -1);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<char> visited(xps.size(), 0);
    if (!augment(i, adj, visited, match)) return false;
  }
  return true;
}

bool check_bisimulation(const FuzzyGraph& g, const Relation& z,
                        bool counting) {
  DenseRelation dense(g, z);
  if (dense.empty()) return false;
  for (std::uint32_t x = 0; x < g.vertex_count(); ++x)
    for (std::uint32_t xp = 0; xp < g.vertex_count(); ++xp) {
      if (!dense(x, xp)) continue;
      if (g.vertex_label(x) != g.vertex_label(xp)) return false;
      if (counting) {
        for (std::uint32_t r = 0; r < g.label_count(); ++r)
          if (!successors_match(g, dense, x, xp, r)) return false;
      } else {
        if (!pair_simulates(g, dense, x, xp)) return false;
      }
    }
  return true;
}

using IndexBlocks = std::vector<std::vector<std::uint32_t>>;

IndexBlocks to_index_blocks(const FuzzyGraph& g, const PartitionResult& p) {
  IndexBlocks blocks;
  std::vector<char> seen(g.vertex_count(), 0);
  for (const auto& block : p.blocks) {
    std::vector<std::uint32_t> idx;
    for (const auto& id : block) {
      std::uint32_t v = vertex_or_throw(g, id);
      if (seen[v]) throw std::invalid_argument("not a partition: '" + id +
                                               "' appears twice");
      seen[v] = 1;
      idx.push_back(v);
    }
    std::sort(idx.begin(), idx.end());
    blocks.push_back(std::move(idx));
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end())
    throw std::invalid_argument("not a partition: vertex missing");
  return blocks;
}

// Multiset of degrees of x's label-r edges into `targets`, as sorted
// (degree, count) pairs.
std::vector<std::pair<Degree, std::size_t>> degree_counts(
    const FuzzyGraph& g, std::uint32_t x, std::uint32_t r,
    std::span<const std::uint32_t> targets) {
  std::map<Degree, std::size_t> counts;
  for (std::uint32_t ei : g.outgoing(x, r)) {
    const Edge& e = g.edges()[ei];
    if (std::binary_search(targets.begin(), targets.end(), e.dest))
      ++counts[e.degree];
  }
  return {counts.begin(), counts.end()};
}

PartitionResult naive_fixpoint(const FuzzyGraph& g, bool counting,
                               ScanOrder order) {
  IndexBlocks blocks =
      to_index_blocks(g, initial_partition(g, counting));

  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::size_t> scan(blocks.size());
    for (std::size_t i = 0; i < scan.size(); ++i)
      scan[i] = order == ScanOrder::kForward ? i : scan.size() - 1 - i;

    for (std::size_t xi : scan) {
      for (std::size_t bi : scan) {
        for (std::uint32_t r = 0; r < g.label_count() && !changed; ++r) {
          const auto& splitter = blocks[bi];
          // Group the target block by behavior toward the splitter.
          std::map<std::vector<std::pair<Degree, std::size_t>>,
                   std::vector<std::uint32_t>>
              groups;
          for (std::uint32_t x : blocks[xi]) {
            std::vector<std::pair<Degree, std::size_t>> key;
            if (counting) {
              key = degree_counts(g, x, r, splitter);
            } else {
              Degree s = sup_degree(g, x, r, splitter);
              if (!s.is_zero()) key.emplace_back(s, 1);
            }
            groups[std::move(key)].push_back(x);
          }
          if (groups.size() > 1) {
            auto it = groups.begin();
            blocks[xi] = it->second;
            for (++it; it != groups.end(); ++it)
              blocks.push_back(it->second);
            changed = true;
          }
        }
        if (changed) break;
      }
      if (changed) break;
    }
  }
  return PartitionResult::from_blocks(g, blocks);
}

Relation relation_of_indices(const FuzzyGraph& g,
                             const std::vector<std::pair<std::uint32_t,
                                                         std::uint32_t>>& zs) {
  Relation out;
  out.reserve(zs.size());
  for (auto [a, b] : zs) out.emplace_back(g.vertex_id(a), g.vertex_id(b));
  return out;
}

}  // namespace

Relation equivalence_relation(const PartitionResult& p) {
  Relation z;
  for (const auto& block : p.blocks)
    for (const auto& a : block)
      for (const auto& b : block) z.emplace_back(a, b);
  return z;
}

bool is_bisimulation(const FuzzyGraph& g, const Relation& z) {
  return check_bisimulation(g, z, false);
}

bool is_counting_bisimulation(const FuzzyGraph& g, const Relation& z) {
  return check_bisimulation(g, z, true);
}

PartitionResult initial_partition(const FuzzyGraph& g, bool counting) {
  // Key: vertex label plus, per edge label, either the supremum of all
  // outgoing degrees or their full multiset.
  using Key = std::pair<VertexLabel,
                        std::vector<std::vector<std::pair<Degree, std::size_t>>>>;
  std::map<Key, std::vector<std::uint32_t>> groups;
  for (std::uint32_t x = 0; x < g.vertex_count(); ++x) {
    Key key;
    key.first = g.vertex_label(x);
    key.second.resize(g.label_count());
    for (std::uint32_t r = 0; r < g.label_count(); ++r) {
      std::map<Degree, std::size_t> counts;
      for (std::uint32_t ei : g.outgoing(x, r))
        ++counts[g.edges()[ei].degree];
      if (counting) {
        key.second[r].assign(counts.begin(), counts.end());
      } else if (!counts.empty()) {
        key.second[r].emplace_back(counts.rbegin()->first, 1);
      }
    }
    groups[std::move(key)].push_back(x);
  }
  IndexBlocks blocks;
  for (auto& [key, members] : groups) blocks.push_back(std::move(members));
  return PartitionResult::from_blocks(g, blocks);
}

bool is_stable(const FuzzyGraph& g, const PartitionResult& p) {
  IndexBlocks blocks = to_index_blocks(g, p);
  for (const auto& block : blocks)
    for (const auto& splitter : blocks)
      for (std::uint32_t r = 0; r < g.label_count(); ++r) {
        Degree expect = sup_degree(g, block.front(), r, splitter);
        for (std::uint32_t x : block)
          if (sup_degree(g, x, r, splitter) != expect) return false;
      }
  return true;
}

bool is_counting_stable(const FuzzyGraph& g, const PartitionResult& p) {
  IndexBlocks blocks = to_index_blocks(g, p);
  for (const auto& block : blocks)
    for (const auto& splitter : blocks)
      for (std::uint32_t r = 0; r < g.label_count(); ++r) {
        auto expect = degree_counts(g, block.front(), r, splitter);
        for (std::uint32_t x : block)
          if (degree_counts(g, x, r, splitter) != expect) return false;
      }
  return true;
}

PartitionResult naive_largest_bisimulation(const FuzzyGraph& g,
                                           ScanOrder order) {
  return naive_fixpoint(g, false, order);
}

PartitionResult naive_largest_counting_bisimulation(const FuzzyGraph& g,
                                                    ScanOrder order) {
  return naive_fixpoint(g, true, order);
}

bool closure_properties_hold(const FuzzyGraph& g, const Relation& z1,
                             const Relation& z2, bool counting) {
  auto check = counting ? is_counting_bisimulation : is_bisimulation;
  if (!check(g, z1) || !check(g, z2))
    throw std::invalid_argument("inputs must be bisimulations");

  Relation inverse;
  for (const auto& [a, b] : z1) inverse.emplace_back(b, a);
  if (!check(g, inverse)) return false;

  DenseRelation d1(g, z1), d2(g, z2);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> comp;
  for (std::uint32_t a = 0; a < g.vertex_count(); ++a)
    for (std::uint32_t c = 0; c < g.vertex_count(); ++c)
      for (std::uint32_t b = 0; b < g.vertex_count(); ++b)
        if (d1(a, b) && d2(b, c)) {
          comp.emplace_back(a, c);
          break;
        }
  if (!comp.empty() && !check(g, relation_of_indices(g, comp))) return false;

  Relation united = z1;
  united.insert(united.end(), z2.begin(), z2.end());
  return check(g, united);
}

FuzzyGraph random_graph(const RandomGraphParams& params) {
  if (params.vertex_count == 0)
    throw std::invalid_argument("random_graph: need at least one vertex");
  if (params.degree_pool == 0 ||
      params.degree_pool > static_cast<std::size_t>(Degree::kScale))
    throw std::invalid_argument("random_graph: degree pool size infeasible");
  if (params.label_count == 0)
    throw std::invalid_argument("random_graph: need at least one edge label");

  std::vector<std::string> ids(params.vertex_count);
  for (std::size_t v = 0; v < ids.size(); ++v)
    ids[v] = "v" + std::to_string(v);
  std::vector<std::string> labels(params.label_count);
  for (std::size_t r = 0; r < labels.size(); ++r)
    labels[r] = "r" + std::to_string(r);
  std::sort(labels.begin(), labels.end());

  // Evenly spaced candidate degrees in (0, 1], exactly degree_pool of them.
  std::vector<Degree> pool(params.degree_pool);
  for (std::size_t i = 0; i < pool.size(); ++i)
    pool[i] = Degree::from_scaled(
        static_cast<std::int64_t>(i + 1) * Degree::kScale /
        static_cast<std::int64_t>(params.degree_pool));

  // mt19937_64 with modulo sampling keeps the stream platform independent
  // (distribution classes are not pinned down by the standard).
  std::mt19937_64 rng(params.seed);
  std::set<std::array<std::uint32_t, 3>> seen;
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < params.max_edges; ++i) {
    Edge e;
    e.origin = static_cast<std::uint32_t>(rng() % params.vertex_count);
    e.label = static_cast<std::uint32_t>(rng() % params.label_count);
    e.dest = static_cast<std::uint32_t>(rng() % params.vertex_count);
    e.degree = pool[rng() % params.degree_pool];
    if (seen.insert({e.origin, e.label, e.dest}).second) edges.push_back(e);
  }

  return make_graph(std::move(ids),
                    std::vector<VertexLabel>(params.vertex_count),
                    std::vector<std::string>{}, std::move(labels),
                    std::move(edges));
}

}  // namespace fuzzybisim::oracle
