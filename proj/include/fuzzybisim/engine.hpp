/**
 * @file engine.hpp
 * @brief Partition-refinement engine for largest (counting) bisimulations.
 *
 * Computes the partition corresponding to the largest crisp bisimulation of
 * a finite fuzzy labeled graph by iterated splitting against
 * smaller-than-half splitter blocks, in the style of Hopcroft's "process the
 * smaller half" and Paige–Tarjan's compound/simple super-block queues.
 *
 * Two modes share the machinery and most of the code:
 *  - plain mode keys subdivision on maxima of degree multisets and runs in
 *    O((m log l + n) log n) for l distinct degrees;
 *  - counting mode keys subdivision on entire degree multisets (successor
 *    counts matter) and runs in O((m log m + n) log n).
 *
 * The engine is single shot: construct, run once, then query diagnostics.
 */

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "fuzzybisim/graph.hpp"
#include "fuzzybisim/partition.hpp"

namespace fuzzybisim {

struct EngineOptions {
  /// Refine to the counting-successors variant instead of the plain one.
  bool counting = false;
};

/// Intermediate points inside one split call at which observers fire.
enum class SplitPhase {
  kBlockEdgesSplit,  ///< block-edge table split between remainder and splitter
  kSubblocksMarked,  ///< affected vertices moved into departing lists
};

/// Per-split measurements handed to observers and accumulated into stats.
struct SplitEvent {
  std::uint32_t label = 0;            ///< edge label the splitter refines
  std::size_t super_block_size = 0;   ///< vertices in the compound super-block
  std::size_t splitter_size = 0;      ///< vertices in the chosen splitter
  std::size_t incoming_edges = 0;     ///< edges entering the splitter
  std::size_t blocks_created = 0;
  std::size_t departing_keys = 0;     ///< distinct subdivision keys touched
  std::size_t partition_size = 0;     ///< blocks after this split
};

/// Snapshot of one block-edge bundle: the degree multiset of the edges from
/// one vertex into one super-block (and, mid-split, the departing part).
struct BlockEdgeView {
  std::vector<std::pair<Degree, std::uint32_t>> counts;
  bool has_departing = false;
  std::vector<std::pair<Degree, std::uint32_t>> departing;
};

/// Snapshot of one super-block in a refinement queue.
struct SuperBlockView {
  std::vector<std::uint32_t> vertices;  // sorted
  bool compound = false;                // still awaiting splits
};

/// Snapshot of one departing (pending subdivision) vertex list.
struct DepartingView {
  bool keyed_by_splitter_side = false;  ///< plain mode: which key map held it
  Degree degree_key;                    ///< plain mode key
  std::vector<std::pair<Degree, std::uint32_t>> signature_key;  ///< counting
  std::vector<std::uint32_t> members;   ///< in list order
};

class BisimulationEngine;

/// Hook into the engine's progress; all callbacks receive the engine in a
/// consistent state for the diagnostics that make sense at that point.
class SplitObserver {
 public:
  virtual ~SplitObserver() = default;
  /// Initial partition and queues are in place.
  virtual void after_initialize(const BisimulationEngine&) {}
  /// An intermediate phase of the current split completed.
  virtual void after_phase(const BisimulationEngine&, SplitPhase,
                           const SplitEvent&) {}
  /// The split completed and auxiliary state is cleared.
  virtual void after_split(const BisimulationEngine&, const SplitEvent&) {}
};

class BisimulationEngine {
 public:
  /// Binds to `graph`, which must outlive the engine.
  explicit BisimulationEngine(const FuzzyGraph& graph,
                              EngineOptions options = {});
  ~BisimulationEngine();
  BisimulationEngine(BisimulationEngine&&) noexcept;
  BisimulationEngine& operator=(BisimulationEngine&&) noexcept;

  /// Runs the full refinement.  Throws std::logic_error if called twice or
  /// if an internal invariant (e.g. the smaller-half guarantee) breaks.
  PartitionResult run(SplitObserver* observer = nullptr);

  // --- diagnostics -------------------------------------------------------
  // Valid after initialization (observers may call them mid-run; between
  // kBlockEdgesSplit and kSubblocksMarked the partition snapshot still
  // reflects whole blocks, afterwards departing lists hold the movers).

  PartitionResult current_partition() const;
  std::vector<std::vector<std::uint32_t>> partition_blocks() const;
  /// Vertex sets of the label-r super-blocks, canonically ordered.
  std::vector<std::vector<std::uint32_t>> super_blocks(std::uint32_t r) const;
  /// Same, with each super-block's compound/simple status.
  std::vector<SuperBlockView> super_block_views(std::uint32_t r) const;
  /// Block-edge bundles of v's label-r out-edges, in first-edge order.
  std::vector<BlockEdgeView> block_edges_of(std::uint32_t v,
                                            std::uint32_t r) const;
  /// Departing lists of the block currently containing v.
  std::vector<DepartingView> departing_of(std::uint32_t v) const;

  std::size_t split_calls() const;
  /// max over (vertex, label) of how many splitters contained the vertex.
  std::size_t max_split_participation() const;
  /// Total Degree comparisons spent in ordered-map operations so far.
  std::uint64_t degree_comparisons() const;

  /// Deep structural audit: partition/queue coherence, block-edge counts
  /// recomputed from scratch, auxiliary state cleanliness.  Intended for
  /// tests; linear-ish in the graph.  On failure returns false and, if
  /// `why` is non-null, stores a description.
  bool check_consistency(std::string* why = nullptr) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// One-call convenience wrapper around BisimulationEngine::run.
PartitionResult compute_partition(const FuzzyGraph& graph,
                                  EngineOptions options = {},
                                  SplitObserver* observer = nullptr);

}  // namespace fuzzybisim
