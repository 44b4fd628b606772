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

#include "vco/hierarchy.h"

#include <algorithm>
#include <deque>
#include <limits>

namespace vco {

namespace {

using Node = WordNetGraph::Node;

// Counts the distinct descendants of `start`. `stamp` holds the epoch in
// which each node was last visited, so repeated calls share one buffer
// without clearing it.
uint32_t CountClosure(const WordNetGraph &graph, Node start,
                      std::vector<uint32_t> *stamp, uint32_t epoch,
                      std::vector<Node> *stack) {
  uint32_t count = 0;
  stack->clear();
  stack->push_back(start);
  (*stamp)[start] = epoch;
  while (!stack->empty()) {
    Node node = stack->back();
    stack->pop_back();
    for (Node child : graph.children(node)) {
      if ((*stamp)[child] == epoch) continue;
      (*stamp)[child] = epoch;
      ++count;
      stack->push_back(child);
    }
  }
  return count;
}

}  // namespace

uint32_t HyponymCount(const WordNetGraph &graph, SynsetId id) {
  Node node = graph.NodeOf(id);
  std::vector<uint32_t> stamp(graph.size(), 0);
  std::vector<Node> stack;
  return CountClosure(graph, node, &stamp, 1, &stack);
}

std::vector<uint32_t> AllHyponymCounts(const WordNetGraph &graph) {
  std::vector<uint32_t> counts(graph.size(), 0);
  std::vector<uint32_t> stamp(graph.size(), 0);
  std::vector<Node> stack;
  for (Node node = 0; node < graph.size(); ++node) {
    // Leaves are common; skip the traversal for them.
    if (graph.children(node).empty()) continue;
    counts[node] = CountClosure(graph, node, &stamp, node + 1, &stack);
  }
  return counts;
}

SignificanceReport ExtractSignificant(const WordNetGraph &graph,
                                      uint32_t threshold) {
  SignificanceReport report;
  report.threshold = threshold;
  report.total_synsets = graph.size();
  std::vector<uint32_t> counts = AllHyponymCounts(graph);
  for (Node node = 0; node < graph.size(); ++node) {
    if (counts[node] > threshold) {
      report.candidates.push_back({graph.at(node).id, counts[node]});
    }
  }
  std::sort(report.candidates.begin(), report.candidates.end(),
            [](const Candidate &a, const Candidate &b) {
              if (a.hyponym_count != b.hyponym_count) {
                return a.hyponym_count > b.hyponym_count;
              }
              return a.id.offset < b.id.offset;
            });
  return report;
}

std::vector<uint32_t> AllRootDistances(const WordNetGraph &graph) {
  constexpr uint32_t kUnseen = std::numeric_limits<uint32_t>::max();
  std::vector<uint32_t> distance(graph.size(), kUnseen);
  if (graph.empty()) return distance;
  std::deque<Node> queue{graph.root_node()};
  distance[graph.root_node()] = 0;
  while (!queue.empty()) {
    Node node = queue.front();
    queue.pop_front();
    for (Node child : graph.children(node)) {
      if (distance[child] != kUnseen) continue;
      distance[child] = distance[node] + 1;
      queue.push_back(child);
    }
  }
  return distance;
}

uint32_t DepthToRoot(const WordNetGraph &graph, SynsetId id) {
  Node start = graph.NodeOf(id);
  // Upward BFS: the first time the root is reached gives the shortest path.
  std::vector<uint32_t> distance(graph.size(),
                                 std::numeric_limits<uint32_t>::max());
  std::deque<Node> queue{start};
  distance[start] = 0;
  while (!queue.empty()) {
    Node node = queue.front();
    queue.pop_front();
    if (node == graph.root_node()) {
      return distance[node] == 0 ? 0 : distance[node] - 1;
    }
    for (Node parent : graph.parents(node)) {
      if (distance[parent] != std::numeric_limits<uint32_t>::max()) continue;
      distance[parent] = distance[node] + 1;
      queue.push_back(parent);
    }
  }
  // Unreachable for graphs built through GraphBuilder.
  throw WordNetError("no hypernym path from " + id.ToString() + " to root");
}

}  // namespace vco
