#include "fuzzybisim/partition.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace fuzzybisim {

PartitionResult PartitionResult::from_blocks(
    const FuzzyGraph& g, const std::vector<std::vector<std::uint32_t>>& raw) {
  PartitionResult result;
  result.blocks.reserve(raw.size());
  for (const auto& block : raw) {
    std::vector<std::string> ids;
    ids.reserve(block.size());
    for (std::uint32_t v : block) ids.push_back(g.vertex_id(v));
    std::sort(ids.begin(), ids.end());
    result.blocks.push_back(std::move(ids));
  }
  std::sort(result.blocks.begin(), result.blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return result;
}

std::string PartitionResult::to_text() const {
  std::string out;
  for (const auto& block : blocks) {
    out += '{';
    for (std::size_t i = 0; i < block.size(); ++i) {
      if (i) out += ' ';
      out += block[i];
    }
    out += "}\n";
  }
  return out;
}

bool refines(const PartitionResult& finer, const PartitionResult& coarser) {
  std::unordered_map<std::string, std::size_t> coarse_of;
  std::size_t coarse_total = 0;
  for (std::size_t b = 0; b < coarser.blocks.size(); ++b)
    for (const auto& id : coarser.blocks[b]) {
      if (!coarse_of.emplace(id, b).second)
        throw std::invalid_argument("coarser is not a partition");
      ++coarse_total;
    }
  std::size_t fine_total = 0;
  for (const auto& block : finer.blocks) {
    if (block.empty()) throw std::invalid_argument("empty block");
    auto it = coarse_of.find(block.front());
    if (it == coarse_of.end()) return false;
    for (const auto& id : block) {
      auto jt = coarse_of.find(id);
      if (jt == coarse_of.end() || jt->second != it->second) return false;
      ++fine_total;
    }
  }
  return fine_total == coarse_total;
}

}  // namespace fuzzybisim
