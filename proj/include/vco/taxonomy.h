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

#ifndef VCO_TAXONOMY_H_
#define VCO_TAXONOMY_H_

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vco/hierarchy.h"
#include "vco/wordnet.h"

namespace vco {

// Slug naming a class: lowercase letters and digits in hyphen-separated
// groups, e.g. "abstract-concepts".
class ClassId {
 public:
  ClassId() = default;
  explicit ClassId(std::string slug) : slug_(std::move(slug)) {}

  const std::string &str() const { return slug_; }
  bool empty() const { return slug_.empty(); }

  static bool IsValidSlug(std::string_view slug);

  friend auto operator<=>(const ClassId &, const ClassId &) = default;

 private:
  std::string slug_;
};

enum class ClassLevel { kSuper, kTop, kSub };

std::string_view LevelName(ClassLevel level);
std::optional<ClassLevel> ParseLevel(std::string_view name);

struct VcoClass {
  ClassId id;
  std::string label;
  ClassLevel level = ClassLevel::kSuper;
  std::optional<ClassId> parent;

  friend bool operator==(const VcoClass &, const VcoClass &) = default;
};

enum class LinkKind { kEquivalenceOf, kSuperClassOf };

std::string_view LinkKindName(LinkKind kind);
std::optional<LinkKind> ParseLinkKind(std::string_view name);

struct VcoLink {
  ClassId cls;
  SynsetId synset;
  LinkKind kind = LinkKind::kEquivalenceOf;

  friend bool operator==(const VcoLink &, const VcoLink &) = default;
};

struct Removal {
  SynsetId synset;
  std::string reason;

  friend bool operator==(const Removal &, const Removal &) = default;
};

// Several synsets folded into one class during curation.
struct Merge {
  std::vector<SynsetId> synsets;
  ClassId into;

  friend bool operator==(const Merge &, const Merge &) = default;
};

// Declarative record of the curation decisions. Read from and written to a
// YAML document; see docs/manifest-format.md.
struct CurationManifest {
  static constexpr int kVersion = 1;

  std::vector<Removal> removals;
  std::vector<SynsetId> retained_abstract;
  std::vector<VcoClass> classes;
  std::vector<VcoLink> links;
  std::vector<Merge> merges;

  friend bool operator==(const CurationManifest &,
                         const CurationManifest &) = default;
};

class TaxonomyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

CurationManifest ParseManifest(std::string_view yaml_text);
CurationManifest LoadManifest(const std::filesystem::path &path);

// Emits a manifest document; synsets get a trailing lemma comment when a
// graph is supplied.
std::string WriteManifest(const CurationManifest &manifest,
                          const WordNetGraph *graph = nullptr);

class Taxonomy {
 public:
  Taxonomy() = default;

  // Assembles a taxonomy without checking any invariant. Used by
  // BuildTaxonomy and by validation of hand-made inputs.
  static Taxonomy FromParts(std::vector<VcoClass> classes,
                            std::vector<VcoLink> links);

  const std::map<ClassId, VcoClass> &classes() const { return classes_; }
  const std::vector<VcoLink> &links() const { return links_; }

  const VcoClass *Find(const ClassId &id) const;

  // Classes linked to `synset`, slug order.
  std::vector<ClassId> ClassesOf(SynsetId synset) const;

  // Linked synsets without duplicates, offset order.
  std::vector<SynsetId> LinkedSynsets() const;

  // Direct children of a class, slug order.
  std::vector<ClassId> ChildrenOf(const ClassId &id) const;

  // Walks `id` upward to its ancestor at `level`. nullopt when the chain
  // does not reach that level.
  std::optional<ClassId> AncestorAt(const ClassId &id, ClassLevel level) const;

  bool empty() const { return classes_.empty(); }

  friend bool operator==(const Taxonomy &a, const Taxonomy &b) {
    return a.classes_ == b.classes_ && a.links_ == b.links_;
  }

 private:
  std::map<ClassId, VcoClass> classes_;
  std::vector<VcoLink> links_;
  std::multimap<SynsetId, ClassId> by_synset_;
};

struct BuildResult {
  Taxonomy taxonomy;
  // Significant synsets that are neither removed nor linked.
  std::vector<SynsetId> uncurated;
};

// Checks the manifest against the graph and the three-level structure and
// returns its taxonomy. Throws TaxonomyError on any violation.
BuildResult BuildTaxonomy(const SignificanceReport &report,
                          const CurationManifest &manifest,
                          const WordNetGraph &graph);

// Classes reached by walking up from `synset`, stopping each path at the
// first linked synset. Slug order, no duplicates.
std::vector<ClassId> ResolveClass(const Taxonomy &taxonomy,
                                  const WordNetGraph &graph, SynsetId synset);

struct Violation {
  std::string kind;  // e.g. "level skip", "unlinked class"
  std::string subject;
  std::string message;

  friend bool operator==(const Violation &, const Violation &) = default;
};

struct ValidationReport {
  std::map<ClassLevel, size_t> level_counts;
  std::vector<ClassId> orphan_classes;
  size_t linked_classes = 0;
  size_t linked_synsets = 0;
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

ValidationReport ValidateTaxonomy(const Taxonomy &taxonomy);

}  // namespace vco

#endif  // VCO_TAXONOMY_H_
