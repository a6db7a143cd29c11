/**
 * @file partition.hpp
 * @brief Canonical vertex partitions as returned by the engine and oracles.
 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fuzzybisim/graph.hpp"

namespace fuzzybisim {

/// A partition of the vertex set in canonical form: every block's ids sorted
/// lexicographically, blocks sorted by their first id.  Two partitions are
/// equal iff they group the vertices identically.
struct PartitionResult {
  std::vector<std::vector<std::string>> blocks;

  /// Canonicalizes blocks of vertex indices into a PartitionResult.
  static PartitionResult from_blocks(
      const FuzzyGraph& g, const std::vector<std::vector<std::uint32_t>>& raw);

  std::size_t block_count() const noexcept { return blocks.size(); }

  /// One block per line, ids space separated and wrapped in braces, e.g.
  /// "{a b} {c f g} {d e}" each on its own line.
  std::string to_text() const;

  bool operator==(const PartitionResult&) const = default;
};

/// True iff every block of `finer` is contained in some block of `coarser`.
/// Both must partition the same vertex set.
bool refines(const PartitionResult& finer, const PartitionResult& coarser);

}  // namespace fuzzybisim
