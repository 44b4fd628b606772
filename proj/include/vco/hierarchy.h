// Copyright 2026 The VCO Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VCO_HIERARCHY_H_
#define VCO_HIERARCHY_H_

#include <cstdint>
#include <vector>

#include "vco/wordnet.h"

namespace vco {

// Threshold used for candidate extraction unless overridden.
inline constexpr uint32_t kDefaultSignificanceThreshold = 300;

struct Candidate {
  SynsetId id;
  uint32_t hyponym_count = 0;

  friend bool operator==(const Candidate &, const Candidate &) = default;
};

// Synsets whose hyponym closure is strictly larger than `threshold`,
// ordered by count descending and offset ascending.
struct SignificanceReport {
  uint32_t threshold = 0;
  std::vector<Candidate> candidates;
  size_t total_synsets = 0;

  friend bool operator==(const SignificanceReport &,
                         const SignificanceReport &) = default;
};

// Number of distinct synsets below `id` (plain and instance hyponyms,
// transitively). Throws WordNetError for unknown ids.
uint32_t HyponymCount(const WordNetGraph &graph, SynsetId id);

// Closure sizes for every node, indexed like graph.synsets().
std::vector<uint32_t> AllHyponymCounts(const WordNetGraph &graph);

SignificanceReport ExtractSignificant(const WordNetGraph &graph,
                                      uint32_t threshold);

// Synsets strictly between `id` and the root on the shortest hypernym path.
// Zero for the root and its direct children.
uint32_t DepthToRoot(const WordNetGraph &graph, SynsetId id);

// Shortest-path edge distance from the root for every node.
std::vector<uint32_t> AllRootDistances(const WordNetGraph &graph);

}  // namespace vco

#endif  // VCO_HIERARCHY_H_
