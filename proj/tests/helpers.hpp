// Shared fixtures for the unit tests.
#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "fuzzybisim/graph.hpp"
#include "fuzzybisim/partition.hpp"

namespace testing_helpers {

// Two "hub" vertices a and b fanning out into leaves with one edge label and
// three distinct degrees; small enough to trace every split by hand, rich
// enough to exercise supremum vs. multiset behavior (a and b are equivalent
// in plain mode but not when successor counts matter).
inline const char* kSampleGraphText =
    "# sample: two hubs over a shared pool of leaves\n"
    "v a\n"
    "v b\n"
    "v c\n"
    "v d\n"
    "v e\n"
    "v f\n"
    "v g\n"
    "e a r c 1\n"
    "e a r d 0.7\n"
    "e a r e 1\n"
    "e b r e 1\n"
    "e b r f 1\n"
    "e b r g 0.6\n"
    "e c r a 1\n"
    "e f r a 1\n"
    "e g r b 1\n";

inline fuzzybisim::FuzzyGraph sample_graph() {
  return fuzzybisim::FuzzyGraph::parse(kSampleGraphText);
}

inline fuzzybisim::PartitionResult partition_of(
    std::initializer_list<std::vector<std::string>> blocks) {
  fuzzybisim::PartitionResult p;
  p.blocks.assign(blocks.begin(), blocks.end());
  std::sort(p.blocks.begin(), p.blocks.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });
  return p;
}

inline std::vector<std::uint32_t> vertex_indices(
    const fuzzybisim::FuzzyGraph& g, std::initializer_list<const char*> ids) {
  std::vector<std::uint32_t> out;
  for (const char* id : ids) out.push_back(*g.find_vertex(id));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace testing_helpers
