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

#ifndef VCO_WORDNET_H_
#define VCO_WORDNET_H_

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace vco {

// Identifies a noun synset by its offset in data.noun.
struct SynsetId {
  char pos = 'n';
  uint32_t offset = 0;

  // Renders as "n02084071".
  std::string ToString() const;

  // Eight-digit zero-padded offset, as in the database files.
  std::string OffsetString() const;

  // Parses "n02084071" or "02084071". Returns nullopt on malformed input.
  static std::optional<SynsetId> Parse(std::string_view text);

  friend auto operator<=>(const SynsetId &, const SynsetId &) = default;
};

struct SynsetIdHash {
  size_t operator()(const SynsetId &id) const noexcept {
    return std::hash<uint64_t>()((uint64_t(uint8_t(id.pos)) << 32) |
                                 id.offset);
  }
};

// A typed pointer to another noun synset.
struct SynsetRef {
  SynsetId target;
  bool instance = false;  // @i / ~i

  friend bool operator==(const SynsetRef &, const SynsetRef &) = default;
};

enum class PartKind { kPart, kMember, kSubstance };

struct PartRef {
  SynsetId target;
  PartKind kind = PartKind::kPart;

  friend bool operator==(const PartRef &, const PartRef &) = default;
};

struct Synset {
  SynsetId id;
  std::vector<std::string> lemmas;
  std::string gloss;
  std::vector<SynsetRef> hypernyms;
  std::vector<SynsetRef> hyponyms;
  std::vector<PartRef> meronyms;
  std::vector<PartRef> holonyms;

  const std::string &FirstLemma() const { return lemmas.front(); }

  friend bool operator==(const Synset &, const Synset &) = default;
};

// Raised for every load or graph-construction failure. When the problem can
// be traced to an input line, file/line/field are filled in.
class WordNetError : public std::runtime_error {
 public:
  explicit WordNetError(const std::string &message)
      : std::runtime_error(message) {}
  WordNetError(const std::string &file, int line, const std::string &field,
               const std::string &message);

  const std::string &file() const { return file_; }
  int line() const { return line_; }
  const std::string &field() const { return field_; }

 private:
  std::string file_;
  int line_ = 0;
  std::string field_;
};

// Lowercases ASCII, trims surrounding whitespace and maps inner runs of
// spaces to a single underscore.
std::string NormalizeLemma(std::string_view word);

// Immutable noun hierarchy. Synsets are stored densely in offset order; the
// dense position ("node") is what the analytics code iterates over.
class WordNetGraph {
 public:
  using Node = uint32_t;

  WordNetGraph() = default;

  size_t size() const { return synsets_.size(); }
  bool empty() const { return synsets_.empty(); }

  const std::vector<Synset> &synsets() const { return synsets_; }
  const Synset &at(Node node) const { return synsets_[node]; }

  // Throws WordNetError for unknown ids.
  const Synset &Get(SynsetId id) const { return synsets_[NodeOf(id)]; }
  Node NodeOf(SynsetId id) const;
  std::optional<Node> FindNode(SynsetId id) const;
  bool Contains(SynsetId id) const { return FindNode(id).has_value(); }

  SynsetId root() const { return synsets_[root_].id; }
  Node root_node() const { return root_; }

  // Dense adjacency (both plain and instance pointers).
  const std::vector<Node> &parents(Node node) const { return parents_[node]; }
  const std::vector<Node> &children(Node node) const {
    return children_[node];
  }

  // Synsets containing the normalized form of `lemma`, in sense order.
  std::vector<SynsetId> LookupLemma(std::string_view lemma) const;

  const std::map<std::string, std::vector<SynsetId>> &lemma_index() const {
    return lemma_index_;
  }

  friend bool operator==(const WordNetGraph &a, const WordNetGraph &b) {
    return a.synsets_ == b.synsets_ && a.lemma_index_ == b.lemma_index_ &&
           a.root_ == b.root_;
  }

 private:
  friend class GraphBuilder;

  std::vector<Synset> synsets_;
  std::unordered_map<SynsetId, Node, SynsetIdHash> nodes_;
  std::vector<std::vector<Node>> parents_;
  std::vector<std::vector<Node>> children_;
  std::map<std::string, std::vector<SynsetId>> lemma_index_;
  Node root_ = 0;
};

// Assembles a WordNetGraph and checks every graph invariant on Finish():
// resolvable pointers, hypernym/hyponym symmetry, a unique root and an
// acyclic hypernym relation.
class GraphBuilder {
 public:
  // Adds a synset. Lemmas are normalized; duplicate ids are rejected.
  void Add(Synset synset);

  // Convenience for generated graphs: adds both directions of the edge.
  void Link(SynsetId child, SynsetId parent, bool instance = false);

  // Declares sense order for a lemma (from index.noun). Lemmas without an
  // explicit order fall back to offset order.
  void SetSenseOrder(std::string lemma, std::vector<SynsetId> order);

  bool Contains(SynsetId id) const { return index_.count(id) != 0; }

  WordNetGraph Finish() &&;

 private:
  std::vector<Synset> synsets_;
  std::unordered_map<SynsetId, size_t, SynsetIdHash> index_;
  std::map<std::string, std::vector<SynsetId>> sense_order_;
};

struct LoadStats {
  size_t data_lines = 0;
  size_t index_lines = 0;
  // Pointer symbols that were skipped, with their frequency.
  std::map<std::string, size_t> ignored_pointers;
};

// Loads data.noun and index.noun from a WordNet 3.0 dict directory.
WordNetGraph LoadWordNet(const std::filesystem::path &dict_dir,
                         LoadStats *stats = nullptr);

// Synsets of `lemma` in sense order; empty when unknown.
std::vector<SynsetId> LookupLemma(const WordNetGraph &graph,
                                  std::string_view lemma);

// All maximal hypernym paths from `id` to the root, each starting at `id`
// and ending at the root. Sorted lexicographically by offset sequence.
std::vector<std::vector<SynsetId>> HypernymPaths(const WordNetGraph &graph,
                                                 SynsetId id);

}  // namespace vco

#endif  // VCO_WORDNET_H_
