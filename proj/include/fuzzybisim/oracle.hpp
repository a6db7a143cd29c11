/**
 * @file oracle.hpp
 * @brief Brute-force reference implementations used to validate the engine.
 *
 * Everything here favors obviousness over speed: definition-level checkers
 * for (counting) bisimulations and stability, naive fixpoint computations of
 * the largest partitions, and a deterministic random graph generator.  None
 * of it shares code with the refinement engine.
 */

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fuzzybisim/graph.hpp"
#include "fuzzybisim/partition.hpp"

namespace fuzzybisim::oracle {

/// Binary relation over vertex ids.  Order and duplicates are irrelevant.
using Relation = std::vector<std::pair<std::string, std::string>>;

/// The equivalence relation whose classes are the partition's blocks.
Relation equivalence_relation(const PartitionResult& p);

/// Definition-level check: nonempty, label-preserving, and both simulation
/// conditions hold.  Throws std::invalid_argument on unknown vertex ids.
bool is_bisimulation(const FuzzyGraph& g, const Relation& z);

/// Definition-level check for the counting-successors variant: additionally
/// demands, per related pair and edge label, a degree-preserving related
/// bijection between successor sets (decided via bipartite matching).
bool is_counting_bisimulation(const FuzzyGraph& g, const Relation& z);

/// Grouping by vertex label and, per edge label, the supremum of outgoing
/// degrees (counting: the full multiset of outgoing degrees).
PartitionResult initial_partition(const FuzzyGraph& g, bool counting);

/// X is stable w.r.t. every (block, label) pair: members agree on the
/// supremum of degrees into the block.
bool is_stable(const FuzzyGraph& g, const PartitionResult& p);

/// Counting variant: members agree on how many edges of each degree enter
/// the block.
bool is_counting_stable(const FuzzyGraph& g, const PartitionResult& p);

/// Scan order of the naive fixpoint; the result must not depend on it.
enum class ScanOrder { kForward, kReverse };

/// Naive fixpoint: repeatedly split blocks by behavior toward current blocks
/// until stable.  Exponentially slower than the engine but independently
/// correct.
PartitionResult naive_largest_bisimulation(
    const FuzzyGraph& g, ScanOrder order = ScanOrder::kForward);

/// Counting analogue of naive_largest_bisimulation.
PartitionResult naive_largest_counting_bisimulation(
    const FuzzyGraph& g, ScanOrder order = ScanOrder::kForward);

/// Checks closure properties on concrete witnesses: the inverse of z1, the
/// composition z1;z2 (when nonempty) and the union z1+z2 are again
/// (counting) bisimulations.  Both inputs must be bisimulations of the
/// requested kind; throws std::invalid_argument otherwise.
bool closure_properties_hold(const FuzzyGraph& g, const Relation& z1,
                             const Relation& z2, bool counting);

struct RandomGraphParams {
  std::size_t vertex_count = 1;  ///< exact number of vertices (n)
  std::size_t max_edges = 0;     ///< upper bound on edges (m)
  std::size_t degree_pool = 1;   ///< size of the candidate degree pool (l)
  std::size_t label_count = 1;   ///< edge alphabet size
  std::uint64_t seed = 0;
};

/// Deterministic random graph: same params, same graph, on any platform.
/// Vertices v0..v{n-1} with empty labels; up to max_edges distinct edges
/// whose degrees come from an evenly spaced pool of degree_pool values in
/// (0, 1].  Throws std::invalid_argument on infeasible params.
FuzzyGraph random_graph(const RandomGraphParams& params);

}  // namespace fuzzybisim::oracle
