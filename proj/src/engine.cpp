#include "fuzzybisim/engine.hpp"

#include <algorithm>
#include <deque>
#include <list>
#include <map>
#include <stdexcept>
#include <tuple>

namespace fuzzybisim {

namespace {

// Ordered-map comparator that counts every degree comparison, backing the
// degree_comparisons() diagnostic used by the cost-accounting tests.
struct CountingLess {
  std::uint64_t* counter;
  bool operator()(const Degree& a, const Degree& b) const {
    ++*counter;
    return a < b;
  }
};

}  // namespace

struct BisimulationEngine::Impl {
  using VertexList = std::list<std::uint32_t>;
  using DegreeCounts = std::map<Degree, std::uint32_t, CountingLess>;
  using Signature = std::vector<std::pair<Degree, std::uint32_t>>;

  // The degree multiset of the edges from one vertex into one super-block,
  // with a link to the part that departs toward the splitter mid-split.
  struct BlockEdge {
    DegreeCounts counts;
    BlockEdge* departing = nullptr;
    BlockEdge* source = nullptr;  // inverse of `departing`
    Signature cached_signature;
    bool signature_valid = false;

    explicit BlockEdge(CountingLess less) : counts(less) {}

    void push_key(Degree d) {
      ++counts[d];
      signature_valid = false;
    }

    void pop_key(Degree d) {
      auto it = counts.find(d);
      if (it == counts.end())
        throw std::logic_error("pop_key: degree not present");
      if (--it->second == 0) counts.erase(it);
      signature_valid = false;
    }

    Degree max_key() const {
      return counts.empty() ? Degree::zero() : counts.rbegin()->first;
    }

    const Signature& signature() {
      if (!signature_valid) {
        cached_signature.assign(counts.begin(), counts.end());
        signature_valid = true;
      }
      return cached_signature;
    }
  };

  struct SuperBlock;

  struct Block {
    VertexList vertices;
    std::vector<SuperBlock*> super_blocks;  // per label: the one containing us
    // Pending subdivision lists.  Plain mode uses the two degree-keyed maps
    // (keyed by the residual maximum resp. the maximum toward the splitter);
    // counting mode keys by the entire residual signature.
    std::map<Degree, VertexList, CountingLess> departing1, departing2;
    std::map<Signature, VertexList> departing_by_signature;

    Block(std::size_t label_count, CountingLess less)
        : super_blocks(label_count, nullptr),
          departing1(less),
          departing2(less) {}

    bool departing_empty() const {
      return departing1.empty() && departing2.empty() &&
             departing_by_signature.empty();
    }
  };

  struct SuperBlock {
    std::list<Block*> blocks;
    std::size_t vertex_total = 0;
    bool in_compound = false;
    std::list<SuperBlock*>::iterator where;  // position in its current list
  };

  struct SuperPartition {
    std::list<SuperBlock*> compound;  // FIFO work queue: two or more blocks
    std::list<SuperBlock*> simple;    // exactly one block
  };

  struct WorkVertex {
    Block* block = nullptr;
    VertexList::iterator where;  // position in the list currently holding it
    bool processed = false;
  };

  struct WorkEdge {
    BlockEdge* block_edge = nullptr;
  };

  const FuzzyGraph& graph;
  EngineOptions options;
  std::uint32_t n = 0, labels = 0;

  std::vector<WorkVertex> verts;
  std::vector<WorkEdge> work_edges;
  std::deque<Block> block_pool;       // the partition, in creation order
  std::deque<BlockEdge> bundle_pool;  // stable addresses
  std::vector<SuperPartition> qs;     // one queue pair per label
  std::deque<SuperBlock> super_pool;

  std::uint64_t comparisons = 0;
  std::vector<std::uint32_t> participation;  // (vertex, label) -> splitter hits
  std::size_t max_participation = 0;
  std::size_t split_count = 0;
  bool initialized = false;
  bool ran = false;

  explicit Impl(const FuzzyGraph& g, EngineOptions opt)
      : graph(g), options(opt) {}

  CountingLess less() { return CountingLess{&comparisons}; }

  BlockEdge* new_bundle() {
    bundle_pool.emplace_back(less());
    return &bundle_pool.back();
  }

  // --- super-block bookkeeping -------------------------------------------

  SuperBlock* create_super_block(std::uint32_t r) {
    SuperBlock& sb = super_pool.emplace_back();
    qs[r].simple.push_back(&sb);
    sb.where = std::prev(qs[r].simple.end());
    return &sb;
  }

  void add_block(SuperBlock* sb, std::uint32_t r, Block* b,
                 std::size_t vertex_delta) {
    sb->blocks.push_back(b);
    sb->vertex_total += vertex_delta;
    if (sb->blocks.size() == 2) {
      qs[r].compound.splice(qs[r].compound.end(), qs[r].simple, sb->where);
      sb->in_compound = true;
    }
  }

  // Removes `b`, which must sit in one of the first two positions.
  void remove_block(SuperBlock* sb, std::uint32_t r, Block* b,
                    std::size_t vertex_delta) {
    auto it = sb->blocks.begin();
    if (*it != b) {
      ++it;
      if (it == sb->blocks.end() || *it != b)
        throw std::logic_error("remove_block: not among the first two blocks");
    }
    sb->blocks.erase(it);
    sb->vertex_total -= vertex_delta;
    if (sb->blocks.size() == 1) {
      qs[r].simple.splice(qs[r].simple.end(), qs[r].compound, sb->where);
      sb->in_compound = false;
    }
  }

  // The smaller of the first two blocks (the first on a tie); never more
  // than half the super-block, since the two together are at most all of it.
  Block* smaller_block(SuperBlock* sb) {
    auto it = sb->blocks.begin();
    Block* first = *it;
    Block* second = *std::next(it);
    return second->vertices.size() < first->vertices.size() ? second : first;
  }

  Block* create_block_from(VertexList& source, Block& origin) {
    Block& nb = block_pool.emplace_back(labels, less());
    nb.vertices.splice(nb.vertices.end(), source);
    nb.super_blocks = origin.super_blocks;
    for (std::uint32_t v : nb.vertices) verts[v].block = &nb;
    for (std::uint32_t r = 0; r < labels; ++r)
      add_block(nb.super_blocks[r], r, &nb, 0);  // vertices already counted
    return &nb;
  }

  // --- initialization ----------------------------------------------------

  void initialize() {
    n = static_cast<std::uint32_t>(graph.vertex_count());
    labels = static_cast<std::uint32_t>(graph.label_count());
    verts.resize(n);
    work_edges.resize(graph.edge_count());
    qs.resize(labels);
    participation.assign(std::size_t{n} * labels, 0);

    // One block-edge bundle per (origin, label) that has edges; initially
    // everything points at the master super-block of its label.
    std::vector<BlockEdge*> bundle_at(std::size_t{n} * labels, nullptr);
    for (std::uint32_t i = 0; i < graph.edge_count(); ++i) {
      const Edge& e = graph.edges()[i];
      BlockEdge*& slot = bundle_at[std::size_t{e.origin} * labels + e.label];
      if (!slot) slot = new_bundle();
      slot->push_key(e.degree);
      work_edges[i].block_edge = slot;
    }

    std::vector<SuperBlock*> master(labels);
    for (std::uint32_t r = 0; r < labels; ++r) master[r] = create_super_block(r);

    // Initial grouping: vertex label plus, per edge label, the supremum of
    // outgoing degrees (counting mode: the entire outgoing degree multiset).
    using Key = std::pair<VertexLabel, std::vector<Signature>>;
    std::map<Key, std::vector<std::uint32_t>> groups;
    for (std::uint32_t x = 0; x < n; ++x) {
      Key key;
      key.first = graph.vertex_label(x);
      key.second.resize(labels);
      for (std::uint32_t r = 0; r < labels; ++r) {
        BlockEdge* be = bundle_at[std::size_t{x} * labels + r];
        if (!be) continue;
        if (options.counting)
          key.second[r] = be->signature();
        else
          key.second[r].emplace_back(be->max_key(), 1);
      }
      groups[std::move(key)].push_back(x);
    }

    for (auto& [key, members] : groups) {
      Block& b = block_pool.emplace_back(labels, less());
      for (std::uint32_t v : members) {
        b.vertices.push_back(v);
        verts[v].block = &b;
        verts[v].where = std::prev(b.vertices.end());
      }
      for (std::uint32_t r = 0; r < labels; ++r) {
        b.super_blocks[r] = master[r];
        add_block(master[r], r, &b, members.size());
      }
    }
    initialized = true;
  }

  // --- one split ----------------------------------------------------------

  void compute_block_edges(const std::vector<std::uint32_t>& members,
                           std::uint32_t r) {
    for (std::uint32_t v : members)
      for (std::uint32_t ei : graph.incoming(v, r)) {
        BlockEdge* be = work_edges[ei].block_edge;
        if (!be->departing) {
          BlockEdge* dep = new_bundle();
          dep->source = be;
          be->departing = dep;
        }
        Degree d = graph.edges()[ei].degree;
        be->pop_key(d);
        be->departing->push_key(d);
      }
  }

  void compute_subblocks(const std::vector<std::uint32_t>& members,
                         std::uint32_t r, SplitEvent& ev) {
    for (std::uint32_t v : members)
      for (std::uint32_t ei : graph.incoming(v, r)) {
        WorkVertex& wx = verts[graph.edges()[ei].origin];
        if (wx.processed) continue;
        wx.processed = true;
        Block* bx = wx.block;
        BlockEdge* be = work_edges[ei].block_edge;
        Degree toward_rest = be->max_key();
        Degree toward_splitter = be->departing->max_key();
        // If the residual maximum survives, only behavior toward the
        // splitter can distinguish; otherwise the residual maximum does.
        auto& map = toward_rest >= toward_splitter ? bx->departing2
                                                   : bx->departing1;
        Degree key = std::min(toward_rest, toward_splitter);
        auto [it, inserted] = map.try_emplace(key);
        if (inserted) ++ev.departing_keys;
        it->second.splice(it->second.end(), bx->vertices, wx.where);
      }
  }

  void counting_compute_subblocks(const std::vector<std::uint32_t>& members,
                                  std::uint32_t r, SplitEvent& ev) {
    for (std::uint32_t v : members)
      for (std::uint32_t ei : graph.incoming(v, r)) {
        WorkVertex& wx = verts[graph.edges()[ei].origin];
        if (wx.processed) continue;
        wx.processed = true;
        Block* bx = wx.block;
        BlockEdge* be = work_edges[ei].block_edge;
        // The entire residual multiset is the key: equal counts per degree
        // toward the remainder (and hence toward the splitter) stay together.
        auto [it, inserted] =
            bx->departing_by_signature.try_emplace(be->signature());
        if (inserted) ++ev.departing_keys;
        it->second.splice(it->second.end(), bx->vertices, wx.where);
      }
  }

  void subdivide(Block* bx, SplitEvent& ev) {
    if (bx->departing_empty()) return;
    auto adopt = [&](auto& map) {
      auto it = map.begin();
      bx->vertices.splice(bx->vertices.end(), it->second);
      map.erase(it);
    };
    if (options.counting) {
      if (bx->vertices.empty()) adopt(bx->departing_by_signature);
      for (auto& [key, list] : bx->departing_by_signature) {
        create_block_from(list, *bx);
        ++ev.blocks_created;
      }
      bx->departing_by_signature.clear();
    } else {
      if (bx->vertices.empty()) {
        if (!bx->departing1.empty())
          adopt(bx->departing1);
        else
          adopt(bx->departing2);
      }
      for (auto& [key, list] : bx->departing1) {
        create_block_from(list, *bx);
        ++ev.blocks_created;
      }
      bx->departing1.clear();
      for (auto& [key, list] : bx->departing2) {
        create_block_from(list, *bx);
        ++ev.blocks_created;
      }
      bx->departing2.clear();
    }
  }

  void do_splitting(const std::vector<std::uint32_t>& members, std::uint32_t r,
                    Block* yp, SuperBlock* y, SplitEvent& ev) {
    remove_block(y, r, yp, members.size());
    SuperBlock* ns = create_super_block(r);
    add_block(ns, r, yp, members.size());
    yp->super_blocks[r] = ns;

    for (std::uint32_t v : members)
      for (std::uint32_t ei : graph.incoming(v, r)) {
        // The departing part becomes the bundle toward the new super-block.
        work_edges[ei].block_edge = work_edges[ei].block_edge->departing;
        subdivide(verts[graph.edges()[ei].origin].block, ev);
      }
  }

  void clear_auxiliary_info(const std::vector<std::uint32_t>& members,
                            std::uint32_t r) {
    for (std::uint32_t v : members)
      for (std::uint32_t ei : graph.incoming(v, r)) {
        verts[graph.edges()[ei].origin].processed = false;
        BlockEdge* be = work_edges[ei].block_edge;
        if (BlockEdge* src = be->source) {
          src->departing = nullptr;
          be->source = nullptr;
        }
      }
  }

  void split(Block* yp, SuperBlock* y, std::uint32_t r, SplitObserver* obs,
             const BisimulationEngine& owner) {
    SplitEvent ev;
    ev.label = r;
    ev.super_block_size = y->vertex_total;
    ev.splitter_size = yp->vertices.size();
    if (ev.splitter_size * 2 > ev.super_block_size)
      throw std::logic_error("split: smaller-half guarantee violated");

    std::vector<std::uint32_t> members(yp->vertices.begin(),
                                       yp->vertices.end());
    for (std::uint32_t v : members) {
      std::uint32_t& hits = participation[std::size_t{v} * labels + r];
      ++hits;
      if (hits > max_participation) max_participation = hits;
      ev.incoming_edges += graph.incoming(v, r).size();
    }

    compute_block_edges(members, r);
    if (obs) obs->after_phase(owner, SplitPhase::kBlockEdgesSplit, ev);
    if (options.counting)
      counting_compute_subblocks(members, r, ev);
    else
      compute_subblocks(members, r, ev);
    if (obs) obs->after_phase(owner, SplitPhase::kSubblocksMarked, ev);
    do_splitting(members, r, yp, y, ev);
    clear_auxiliary_info(members, r);
    ++split_count;
    ev.partition_size = block_pool.size();
    if (obs) obs->after_split(owner, ev);
  }

  PartitionResult run(const BisimulationEngine& owner, SplitObserver* obs) {
    if (ran) throw std::logic_error("run() may only be called once");
    ran = true;
    initialize();
    if (obs) obs->after_initialize(owner);
    if (block_pool.size() > 1) {
      bool changed = true;
      while (changed) {
        changed = false;
        for (std::uint32_t r = 0; r < labels; ++r)
          while (!qs[r].compound.empty()) {
            SuperBlock* y = qs[r].compound.front();
            split(smaller_block(y), y, r, obs, owner);
            changed = true;
          }
      }
    }
    return current_partition();
  }

  // --- diagnostics --------------------------------------------------------

  std::vector<std::vector<std::uint32_t>> partition_blocks() const {
    std::vector<std::vector<std::uint32_t>> out;
    for (const Block& b : block_pool)
      if (!b.vertices.empty())
        out.emplace_back(b.vertices.begin(), b.vertices.end());
    return out;
  }

  PartitionResult current_partition() const {
    return PartitionResult::from_blocks(graph, partition_blocks());
  }

  std::vector<SuperBlockView> super_block_views(std::uint32_t r) const {
    std::vector<SuperBlockView> out;
    auto collect = [&](const std::list<SuperBlock*>& list, bool compound) {
      for (const SuperBlock* sb : list) {
        SuperBlockView view;
        view.compound = compound;
        for (const Block* b : sb->blocks)
          view.vertices.insert(view.vertices.end(), b->vertices.begin(),
                               b->vertices.end());
        std::sort(view.vertices.begin(), view.vertices.end());
        if (!view.vertices.empty()) out.push_back(std::move(view));
      }
    };
    collect(qs.at(r).compound, true);
    collect(qs.at(r).simple, false);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      return a.vertices.front() < b.vertices.front();
    });
    return out;
  }

  std::vector<std::vector<std::uint32_t>> super_block_sets(
      std::uint32_t r) const {
    std::vector<std::vector<std::uint32_t>> out;
    for (SuperBlockView& view : super_block_views(r))
      out.push_back(std::move(view.vertices));
    return out;
  }

  std::vector<BlockEdgeView> block_edges_of(std::uint32_t v,
                                            std::uint32_t r) const {
    std::vector<BlockEdgeView> out;
    std::vector<const BlockEdge*> seen;
    for (std::uint32_t ei : graph.outgoing(v, r)) {
      const BlockEdge* be = work_edges[ei].block_edge;
      if (std::find(seen.begin(), seen.end(), be) != seen.end()) continue;
      seen.push_back(be);
      BlockEdgeView view;
      view.counts.assign(be->counts.begin(), be->counts.end());
      if (be->departing) {
        view.has_departing = true;
        view.departing.assign(be->departing->counts.begin(),
                              be->departing->counts.end());
      }
      out.push_back(std::move(view));
    }
    return out;
  }

  std::vector<DepartingView> departing_of(std::uint32_t v) const {
    std::vector<DepartingView> out;
    const Block* b = verts.at(v).block;
    if (!b) return out;
    for (const auto& [key, list] : b->departing1) {
      DepartingView view;
      view.degree_key = key;
      view.members.assign(list.begin(), list.end());
      out.push_back(std::move(view));
    }
    for (const auto& [key, list] : b->departing2) {
      DepartingView view;
      view.keyed_by_splitter_side = true;
      view.degree_key = key;
      view.members.assign(list.begin(), list.end());
      out.push_back(std::move(view));
    }
    for (const auto& [key, list] : b->departing_by_signature) {
      DepartingView view;
      view.signature_key = key;
      view.members.assign(list.begin(), list.end());
      out.push_back(std::move(view));
    }
    return out;
  }

  bool check_consistency(std::string* why) const;
};

// Deep structural audit; everything recomputed from scratch.
bool BisimulationEngine::Impl::check_consistency(std::string* why) const {
  auto fail = [&](const std::string& what) {
    if (why) *why = what;
    return false;
  };
  if (!initialized) return fail("engine not initialized");

  // Every vertex sits in exactly one block, at its recorded position.
  std::vector<char> seen(n, 0);
  std::size_t total = 0;
  for (const Block& b : block_pool) {
    if (b.vertices.empty()) return fail("empty block in partition");
    for (auto it = b.vertices.begin(); it != b.vertices.end(); ++it) {
      std::uint32_t v = *it;
      if (v >= n) return fail("vertex index out of range");
      if (seen[v]) return fail("vertex in two blocks");
      seen[v] = 1;
      ++total;
      if (verts[v].block != &b) return fail("stale block pointer");
      if (verts[v].where != it) return fail("stale vertex position");
    }
  }
  if (total != n) return fail("blocks do not cover all vertices");

  // Auxiliary split state must be fully cleared between splits.
  for (std::uint32_t v = 0; v < n; ++v)
    if (verts[v].processed) return fail("processed flag left set");
  for (const Block& b : block_pool)
    if (!b.departing_empty()) return fail("departing list left behind");
  for (const BlockEdge& be : bundle_pool)
    if (be.departing || be.source) return fail("bundle link left behind");

  // Queue structure per label.
  for (std::uint32_t r = 0; r < labels; ++r) {
    std::map<const Block*, const SuperBlock*> home;
    std::size_t covered = 0;
    auto walk = [&](const std::list<SuperBlock*>& list, bool compound)
        -> const char* {
      for (auto it = list.begin(); it != list.end(); ++it) {
        const SuperBlock* sb = *it;
        if (sb->in_compound != compound) return "compound flag wrong";
        if (sb->where != it) return "stale super-block position";
        if (compound && sb->blocks.size() < 2) return "compound too small";
        if (!compound && sb->blocks.size() != 1) return "simple not singleton";
        std::size_t vertices = 0;
        for (const Block* b : sb->blocks) {
          if (!home.emplace(b, sb).second) return "block in two super-blocks";
          if (b->super_blocks[r] != sb) return "stale super-block pointer";
          vertices += b->vertices.size();
          ++covered;
        }
        if (vertices != sb->vertex_total) return "super-block size drifted";
      }
      return nullptr;
    };
    if (const char* msg = walk(qs[r].compound, true)) return fail(msg);
    if (const char* msg = walk(qs[r].simple, false)) return fail(msg);
    if (covered != block_pool.size())
      return fail("super-blocks do not cover the partition");
  }

  // Block-edge recount: group edges by (origin, label, destination
  // super-block); each group must share one bundle whose counts equal the
  // group's degree multiset, and no two groups may share a bundle.
  std::map<std::tuple<std::uint32_t, std::uint32_t, const SuperBlock*>,
           std::vector<std::uint32_t>>
      groups;
  for (std::uint32_t i = 0; i < graph.edge_count(); ++i) {
    const Edge& e = graph.edges()[i];
    if (!work_edges[i].block_edge) return fail("edge without bundle");
    const SuperBlock* sb = verts[e.dest].block->super_blocks[e.label];
    groups[{e.origin, e.label, sb}].push_back(i);
  }
  std::map<const BlockEdge*, int> bundle_owner_count;
  for (const auto& [key, edge_indices] : groups) {
    const BlockEdge* be = work_edges[edge_indices.front()].block_edge;
    if (++bundle_owner_count[be] > 1) return fail("bundle shared by groups");
    std::map<Degree, std::uint32_t> expect;
    for (std::uint32_t i : edge_indices) {
      if (work_edges[i].block_edge != be)
        return fail("group split across bundles");
      ++expect[graph.edges()[i].degree];
    }
    if (expect.size() != be->counts.size() ||
        !std::equal(expect.begin(), expect.end(), be->counts.begin()))
      return fail("bundle counts drifted from edge degrees");
  }
  return true;
}

// --- public wrapper -------------------------------------------------------

BisimulationEngine::BisimulationEngine(const FuzzyGraph& graph,
                                       EngineOptions options)
    : impl_(std::make_unique<Impl>(graph, options)) {}

BisimulationEngine::~BisimulationEngine() = default;
BisimulationEngine::BisimulationEngine(BisimulationEngine&&) noexcept = default;
BisimulationEngine& BisimulationEngine::operator=(BisimulationEngine&&) noexcept =
    default;

PartitionResult BisimulationEngine::run(SplitObserver* observer) {
  return impl_->run(*this, observer);
}

PartitionResult BisimulationEngine::current_partition() const {
  return impl_->current_partition();
}

std::vector<std::vector<std::uint32_t>> BisimulationEngine::partition_blocks()
    const {
  return impl_->partition_blocks();
}

std::vector<std::vector<std::uint32_t>> BisimulationEngine::super_blocks(
    std::uint32_t r) const {
  return impl_->super_block_sets(r);
}

std::vector<SuperBlockView> BisimulationEngine::super_block_views(
    std::uint32_t r) const {
  return impl_->super_block_views(r);
}

std::vector<BlockEdgeView> BisimulationEngine::block_edges_of(
    std::uint32_t v, std::uint32_t r) const {
  return impl_->block_edges_of(v, r);
}

std::vector<DepartingView> BisimulationEngine::departing_of(
    std::uint32_t v) const {
  return impl_->departing_of(v);
}

std::size_t BisimulationEngine::split_calls() const {
  return impl_->split_count;
}

std::size_t BisimulationEngine::max_split_participation() const {
  return impl_->max_participation;
}

std::uint64_t BisimulationEngine::degree_comparisons() const {
  return impl_->comparisons;
}

bool BisimulationEngine::check_consistency(std::string* why) const {
  return impl_->check_consistency(why);
}

PartitionResult compute_partition(const FuzzyGraph& graph,
                                  EngineOptions options,
                                  SplitObserver* observer) {
  return BisimulationEngine(graph, options).run(observer);
}

}  // namespace fuzzybisim
