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

#include "vco/taxonomy.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace vco {

namespace {

std::string Located(const YAML::Node &node, const std::string &message) {
  const YAML::Mark mark = node.Mark();
  if (mark.is_null()) return "manifest: " + message;
  return "manifest:" + std::to_string(mark.line + 1) + ": " + message;
}

std::string Scalar(const YAML::Node &node, const std::string &what) {
  if (!node || !node.IsScalar()) {
    throw TaxonomyError(Located(node, "expected scalar for '" + what + "'"));
  }
  return node.as<std::string>();
}

SynsetId SynsetField(const YAML::Node &node, const std::string &what) {
  std::string text = Scalar(node, what);
  if (text.empty() || text.front() != 'n') {
    throw TaxonomyError(
        Located(node, what + ": synsets are written as n<offset>, got '" +
                          text + "'"));
  }
  auto id = SynsetId::Parse(text);
  if (!id) {
    throw TaxonomyError(Located(node, what + ": bad synset '" + text + "'"));
  }
  return *id;
}

ClassId ClassField(const YAML::Node &node, const std::string &what) {
  std::string slug = Scalar(node, what);
  if (!ClassId::IsValidSlug(slug)) {
    throw TaxonomyError(
        Located(node, what + ": invalid class slug '" + slug + "'"));
  }
  return ClassId(slug);
}

YAML::Node Section(const YAML::Node &root, const char *name) {
  YAML::Node section = root[name];
  if (!section || section.IsNull()) return YAML::Node(YAML::NodeType::Sequence);
  if (!section.IsSequence()) {
    throw TaxonomyError(
        Located(section, std::string("section '") + name + "' must be a list"));
  }
  return section;
}

std::string SynsetComment(const SynsetId &id, const WordNetGraph *graph) {
  if (graph == nullptr) return "";
  auto node = graph->FindNode(id);
  if (!node) return "";
  return "  # " + graph->at(*node).FirstLemma();
}

std::string Quote(const std::string &text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

bool ClassId::IsValidSlug(std::string_view slug) {
  if (slug.empty() || slug.front() == '-' || slug.back() == '-') return false;
  char prev = 0;
  for (char c : slug) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-';
    if (!ok || (c == '-' && prev == '-')) return false;
    prev = c;
  }
  return true;
}

std::string_view LevelName(ClassLevel level) {
  switch (level) {
    case ClassLevel::kSuper: return "super";
    case ClassLevel::kTop: return "top";
    case ClassLevel::kSub: return "sub";
  }
  return "?";
}

std::optional<ClassLevel> ParseLevel(std::string_view name) {
  if (name == "super") return ClassLevel::kSuper;
  if (name == "top") return ClassLevel::kTop;
  if (name == "sub") return ClassLevel::kSub;
  return std::nullopt;
}

std::string_view LinkKindName(LinkKind kind) {
  return kind == LinkKind::kEquivalenceOf ? "equivalenceOf" : "superClassOf";
}

std::optional<LinkKind> ParseLinkKind(std::string_view name) {
  if (name == "equivalenceOf") return LinkKind::kEquivalenceOf;
  if (name == "superClassOf") return LinkKind::kSuperClassOf;
  return std::nullopt;
}

CurationManifest ParseManifest(std::string_view yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml_text));
  } catch (const YAML::Exception &e) {
    throw TaxonomyError(std::string("manifest: ") + e.what());
  }
  if (!root.IsMap()) throw TaxonomyError("manifest: top level must be a map");

  YAML::Node version = root["manifest_version"];
  if (!version) throw TaxonomyError("manifest: missing manifest_version");
  if (Scalar(version, "manifest_version") !=
      std::to_string(CurationManifest::kVersion)) {
    throw TaxonomyError(Located(version, "unsupported manifest_version " +
                                             version.as<std::string>()));
  }
  static const std::set<std::string> kSections = {
      "manifest_version", "removals", "retained_abstract",
      "classes",          "links",    "merges"};
  for (const auto &entry : root) {
    std::string key = entry.first.as<std::string>();
    if (!kSections.count(key)) {
      throw TaxonomyError(Located(entry.first, "unknown section '" + key + "'"));
    }
  }

  CurationManifest manifest;
  for (const YAML::Node &item : Section(root, "removals")) {
    Removal removal;
    if (item.IsScalar()) {
      removal.synset = SynsetField(item, "removals");
    } else {
      removal.synset = SynsetField(item["synset"], "removals.synset");
      if (item["reason"]) removal.reason = Scalar(item["reason"], "reason");
    }
    manifest.removals.push_back(std::move(removal));
  }
  for (const YAML::Node &item : Section(root, "retained_abstract")) {
    manifest.retained_abstract.push_back(
        SynsetField(item, "retained_abstract"));
  }
  for (const YAML::Node &item : Section(root, "classes")) {
    if (!item.IsMap()) {
      throw TaxonomyError(Located(item, "class entries must be maps"));
    }
    VcoClass cls;
    cls.id = ClassField(item["id"], "classes.id");
    cls.label = item["label"] ? Scalar(item["label"], "label") : cls.id.str();
    std::string level = Scalar(item["level"], "classes.level");
    auto parsed = ParseLevel(level);
    if (!parsed) {
      throw TaxonomyError(Located(item["level"], "unknown level '" + level +
                                                     "'"));
    }
    cls.level = *parsed;
    if (item["parent"] && !item["parent"].IsNull()) {
      cls.parent = ClassField(item["parent"], "classes.parent");
    }
    manifest.classes.push_back(std::move(cls));
  }
  for (const YAML::Node &item : Section(root, "links")) {
    if (!item.IsMap()) {
      throw TaxonomyError(Located(item, "link entries must be maps"));
    }
    VcoLink link;
    link.cls = ClassField(item["class"], "links.class");
    link.synset = SynsetField(item["synset"], "links.synset");
    std::string kind = Scalar(item["kind"], "links.kind");
    auto parsed = ParseLinkKind(kind);
    if (!parsed) {
      throw TaxonomyError(
          Located(item["kind"], "unknown link kind '" + kind + "'"));
    }
    link.kind = *parsed;
    manifest.links.push_back(std::move(link));
  }
  for (const YAML::Node &item : Section(root, "merges")) {
    if (!item.IsMap() || !item["synsets"] || !item["synsets"].IsSequence()) {
      throw TaxonomyError(
          Located(item, "merge entries need 'into' and a 'synsets' list"));
    }
    Merge merge;
    merge.into = ClassField(item["into"], "merges.into");
    for (const YAML::Node &synset : item["synsets"]) {
      merge.synsets.push_back(SynsetField(synset, "merges.synsets"));
    }
    manifest.merges.push_back(std::move(merge));
  }
  return manifest;
}

CurationManifest LoadManifest(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TaxonomyError("cannot open manifest " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return ParseManifest(buffer.str());
  } catch (const TaxonomyError &e) {
    throw TaxonomyError(path.filename().string() + ": " + e.what());
  }
}

std::string WriteManifest(const CurationManifest &manifest,
                          const WordNetGraph *graph) {
  std::ostringstream out;
  out << "manifest_version: " << CurationManifest::kVersion << "\n";
  out << "removals:" << (manifest.removals.empty() ? " []" : "") << "\n";
  for (const Removal &removal : manifest.removals) {
    out << "  - synset: " << removal.synset.ToString()
        << SynsetComment(removal.synset, graph) << "\n";
    if (!removal.reason.empty()) {
      out << "    reason: " << Quote(removal.reason) << "\n";
    }
  }
  out << "retained_abstract:" << (manifest.retained_abstract.empty() ? " []" : "")
      << "\n";
  for (const SynsetId &id : manifest.retained_abstract) {
    out << "  - " << id.ToString() << SynsetComment(id, graph) << "\n";
  }
  out << "classes:" << (manifest.classes.empty() ? " []" : "") << "\n";
  for (const VcoClass &cls : manifest.classes) {
    out << "  - id: " << cls.id.str() << "\n";
    out << "    label: " << Quote(cls.label) << "\n";
    out << "    level: " << LevelName(cls.level) << "\n";
    if (cls.parent) out << "    parent: " << cls.parent->str() << "\n";
  }
  out << "links:" << (manifest.links.empty() ? " []" : "") << "\n";
  for (const VcoLink &link : manifest.links) {
    out << "  - class: " << link.cls.str() << "\n";
    out << "    synset: " << link.synset.ToString()
        << SynsetComment(link.synset, graph) << "\n";
    out << "    kind: " << LinkKindName(link.kind) << "\n";
  }
  out << "merges:" << (manifest.merges.empty() ? " []" : "") << "\n";
  for (const Merge &merge : manifest.merges) {
    out << "  - into: " << merge.into.str() << "\n";
    out << "    synsets:\n";
    for (const SynsetId &id : merge.synsets) {
      out << "      - " << id.ToString() << SynsetComment(id, graph) << "\n";
    }
  }
  return out.str();
}

Taxonomy Taxonomy::FromParts(std::vector<VcoClass> classes,
                             std::vector<VcoLink> links) {
  Taxonomy taxonomy;
  for (VcoClass &cls : classes) {
    ClassId id = cls.id;
    taxonomy.classes_.insert_or_assign(std::move(id), std::move(cls));
  }
  for (const VcoLink &link : links) {
    taxonomy.by_synset_.insert({link.synset, link.cls});
  }
  taxonomy.links_ = std::move(links);
  return taxonomy;
}

const VcoClass *Taxonomy::Find(const ClassId &id) const {
  auto it = classes_.find(id);
  return it == classes_.end() ? nullptr : &it->second;
}

std::vector<ClassId> Taxonomy::ClassesOf(SynsetId synset) const {
  std::vector<ClassId> result;
  auto [begin, end] = by_synset_.equal_range(synset);
  for (auto it = begin; it != end; ++it) result.push_back(it->second);
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

std::vector<SynsetId> Taxonomy::LinkedSynsets() const {
  std::vector<SynsetId> result;
  for (const auto &[synset, cls] : by_synset_) {
    if (result.empty() || result.back() != synset) result.push_back(synset);
  }
  return result;
}

std::vector<ClassId> Taxonomy::ChildrenOf(const ClassId &id) const {
  std::vector<ClassId> result;
  for (const auto &[child_id, cls] : classes_) {
    if (cls.parent && *cls.parent == id) result.push_back(child_id);
  }
  return result;
}

std::optional<ClassId> Taxonomy::AncestorAt(const ClassId &id,
                                            ClassLevel level) const {
  const VcoClass *cls = Find(id);
  // Three levels at most; the bound also stops on malformed cycles.
  for (int steps = 0; cls != nullptr && steps < 4; ++steps) {
    if (cls->level == level) return cls->id;
    if (!cls->parent) return std::nullopt;
    cls = Find(*cls->parent);
  }
  return std::nullopt;
}

ValidationReport ValidateTaxonomy(const Taxonomy &taxonomy) {
  ValidationReport report;
  for (ClassLevel level : {ClassLevel::kSuper, ClassLevel::kTop, ClassLevel::kSub}) {
    report.level_counts[level] = 0;
  }
  auto violate = [&](std::string kind, std::string subject,
                     std::string message) {
    report.violations.push_back(
        {std::move(kind), std::move(subject), std::move(message)});
  };

  std::set<ClassId> linked;
  std::set<std::pair<ClassId, SynsetId>> seen_links;
  for (const VcoLink &link : taxonomy.links()) {
    if (taxonomy.Find(link.cls) == nullptr) {
      violate("dangling link", link.cls.str(),
              "link to " + link.synset.ToString() + " names undeclared class");
      continue;
    }
    if (!seen_links.insert({link.cls, link.synset}).second) {
      violate("duplicate link", link.cls.str(),
              "synset " + link.synset.ToString() + " linked more than once");
    }
    linked.insert(link.cls);
  }
  report.linked_classes = linked.size();
  report.linked_synsets = taxonomy.LinkedSynsets().size();

  for (const auto &[id, cls] : taxonomy.classes()) {
    report.level_counts[cls.level]++;
    if (!ClassId::IsValidSlug(id.str())) {
      violate("invalid slug", id.str(), "class id is not a lowercase slug");
    }
    if (!linked.count(id)) {
      violate("unlinked class", id.str(), "class has no synset link");
    }
    if (cls.level == ClassLevel::kSuper) {
      if (cls.parent) {
        violate("super with parent", id.str(),
                "super-level class must not have a parent");
      }
      continue;
    }
    if (!cls.parent) {
      report.orphan_classes.push_back(id);
      violate("missing parent", id.str(),
              std::string(LevelName(cls.level)) +
                  "-level class needs a parent");
      continue;
    }
    const VcoClass *parent = taxonomy.Find(*cls.parent);
    if (parent == nullptr) {
      report.orphan_classes.push_back(id);
      violate("unknown parent", id.str(),
              "parent '" + cls.parent->str() + "' is not declared");
      continue;
    }
    ClassLevel expected =
        cls.level == ClassLevel::kTop ? ClassLevel::kSuper : ClassLevel::kTop;
    if (parent->level == expected) continue;
    if (cls.level == ClassLevel::kSub && parent->level == ClassLevel::kSuper) {
      violate("level skip", id.str(),
              "sub-level class has super-level parent '" + parent->id.str() +
                  "'");
    } else {
      violate("wrong parent level", id.str(),
              std::string(LevelName(cls.level)) + "-level class has " +
                  std::string(LevelName(parent->level)) + "-level parent '" +
                  parent->id.str() + "'");
    }
  }
  return report;
}

BuildResult BuildTaxonomy(const SignificanceReport &report,
                          const CurationManifest &manifest,
                          const WordNetGraph &graph) {
  auto require_synset = [&](const SynsetId &id, const char *section) {
    if (!graph.Contains(id)) {
      throw TaxonomyError(std::string(section) + ": unknown synset " +
                          id.ToString());
    }
  };

  std::set<ClassId> declared;
  for (const VcoClass &cls : manifest.classes) {
    if (!declared.insert(cls.id).second) {
      throw TaxonomyError("classes: duplicate class '" + cls.id.str() + "'");
    }
  }
  for (const VcoClass &cls : manifest.classes) {
    if (cls.parent && !declared.count(*cls.parent)) {
      throw TaxonomyError("classes: '" + cls.id.str() +
                          "' names unknown parent '" + cls.parent->str() + "'");
    }
  }
  std::set<SynsetId> linked;
  for (const VcoLink &link : manifest.links) {
    require_synset(link.synset, "links");
    if (!declared.count(link.cls)) {
      throw TaxonomyError("links: unknown class '" + link.cls.str() + "'");
    }
    linked.insert(link.synset);
  }
  std::set<SynsetId> removed;
  for (const Removal &removal : manifest.removals) {
    require_synset(removal.synset, "removals");
    if (linked.count(removal.synset)) {
      throw TaxonomyError("removals: " + removal.synset.ToString() +
                          " is removed but also linked");
    }
    removed.insert(removal.synset);
  }
  for (const SynsetId &id : manifest.retained_abstract) {
    require_synset(id, "retained_abstract");
  }
  for (const Merge &merge : manifest.merges) {
    if (!declared.count(merge.into)) {
      throw TaxonomyError("merges: unknown class '" + merge.into.str() + "'");
    }
    for (const SynsetId &id : merge.synsets) require_synset(id, "merges");
  }

  BuildResult result;
  result.taxonomy = Taxonomy::FromParts(manifest.classes, manifest.links);
  ValidationReport validation = ValidateTaxonomy(result.taxonomy);
  if (!validation.ok()) {
    const Violation &first = validation.violations.front();
    throw TaxonomyError("taxonomy invalid: " + first.kind + " (" +
                        first.subject + "): " + first.message);
  }
  for (const Candidate &candidate : report.candidates) {
    if (!removed.count(candidate.id) && !linked.count(candidate.id)) {
      result.uncurated.push_back(candidate.id);
    }
  }
  return result;
}

std::vector<ClassId> ResolveClass(const Taxonomy &taxonomy,
                                  const WordNetGraph &graph, SynsetId synset) {
  using Node = WordNetGraph::Node;
  Node start = graph.NodeOf(synset);
  std::vector<ClassId> result;
  std::vector<bool> seen(graph.size(), false);
  std::vector<Node> stack{start};
  seen[start] = true;
  while (!stack.empty()) {
    Node node = stack.back();
    stack.pop_back();
    std::vector<ClassId> hits = taxonomy.ClassesOf(graph.at(node).id);
    if (!hits.empty()) {
      result.insert(result.end(), hits.begin(), hits.end());
      continue;
    }
    for (Node parent : graph.parents(node)) {
      if (!seen[parent]) {
        seen[parent] = true;
        stack.push_back(parent);
      }
    }
  }
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

}  // namespace vco
