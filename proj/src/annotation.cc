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

#include "vco/annotation.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace vco {

namespace {

constexpr std::string_view kNeighborHeader = "#image_id\tsimilarity\tkeywords";

std::vector<std::string_view> Split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  size_t start = 0;
  for (;;) {
    size_t end = text.find(sep, start);
    if (end == std::string_view::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, end - start));
    start = end + 1;
  }
}

std::string ReadFile(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw AnnotationError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool Intersects(const std::vector<SynsetId> &a, const std::vector<SynsetId> &b) {
  for (const SynsetId &x : a) {
    if (std::find(b.begin(), b.end(), x) != b.end()) return true;
  }
  return false;
}

}  // namespace

Concept Concept::Word(std::string_view word) {
  return {Kind::kWord, NormalizeLemma(word)};
}

Concept Concept::Class(std::string_view slug) {
  return {Kind::kClass, std::string(slug)};
}

std::string Concept::ToString() const {
  return kind == Kind::kClass ? "class:" + name : name;
}

CoverageResult MapKeywords(const WordNetGraph &graph, const Taxonomy &taxonomy,
                           const std::vector<std::string> &keywords) {
  std::set<std::string> normalized;
  for (const std::string &keyword : keywords) {
    std::string word = NormalizeLemma(keyword);
    if (!word.empty()) normalized.insert(std::move(word));
  }

  CoverageResult result;
  std::map<ClassId, std::vector<std::string>> supports;
  for (const std::string &word : normalized) {
    std::set<ClassId> classes;
    for (const SynsetId &sense : graph.LookupLemma(word)) {
      for (ClassId &cls : ResolveClass(taxonomy, graph, sense)) {
        classes.insert(std::move(cls));
      }
    }
    if (classes.empty()) {
      result.unmapped.push_back(word);
      continue;
    }
    for (const ClassId &cls : classes) supports[cls].push_back(word);
  }
  for (auto &[cls, words] : supports) {
    result.covering.push_back({cls, std::move(words)});
  }
  return result;
}

std::map<Concept, double> SimilarityVoteScorer::Evidence(
    const std::vector<ImageRecord> &neighbors, const Vocabulary &vocabulary,
    const WordNetGraph &graph, const Taxonomy &taxonomy) const {
  std::map<Concept, double> evidence;
  std::map<std::string, std::vector<SynsetId>> word_senses;
  bool has_class_concepts = false;
  for (const Concept &item : vocabulary.concepts) {
    evidence[item] = 0.0;
    if (item.kind == Concept::Kind::kWord) {
      word_senses[item.name] = graph.LookupLemma(item.name);
    } else {
      has_class_concepts = true;
    }
  }

  for (const ImageRecord &neighbor : neighbors) {
    std::set<std::string> words;
    for (const std::string &keyword : neighbor.keywords) {
      std::string word = NormalizeLemma(keyword);
      if (!word.empty()) words.insert(std::move(word));
    }
    std::set<ClassId> covered;
    if (has_class_concepts) {
      CoverageResult coverage = MapKeywords(
          graph, taxonomy, std::vector<std::string>(words.begin(), words.end()));
      for (const ClassSupport &support : coverage.covering) {
        covered.insert(support.cls);
      }
    }
    std::vector<std::vector<SynsetId>> keyword_senses;
    for (const std::string &word : words) {
      keyword_senses.push_back(graph.LookupLemma(word));
    }

    for (const Concept &item : vocabulary.concepts) {
      bool match = false;
      if (item.kind == Concept::Kind::kClass) {
        match = covered.count(ClassId(item.name)) != 0;
      } else if (words.count(item.name)) {
        match = true;
      } else {
        const auto &senses = word_senses[item.name];
        for (const auto &other : keyword_senses) {
          if (Intersects(senses, other)) {
            match = true;
            break;
          }
        }
      }
      if (match) evidence[item] += neighbor.similarity;
    }
  }
  return evidence;
}

AnnotationResult Annotate(const std::vector<ImageRecord> &neighbors,
                          const Vocabulary &vocabulary,
                          const WordNetGraph &graph, const Taxonomy &taxonomy,
                          const Scorer *scorer) {
  if (vocabulary.concepts.empty()) {
    throw AnnotationError("vocabulary is empty");
  }
  std::set<Concept> unique;
  for (const Concept &item : vocabulary.concepts) {
    if (item.name.empty()) throw AnnotationError("empty vocabulary entry");
    if (!unique.insert(item).second) {
      throw AnnotationError("duplicate vocabulary entry '" +
                            item.ToString() + "'");
    }
    if (item.kind == Concept::Kind::kClass &&
        taxonomy.Find(ClassId(item.name)) == nullptr) {
      throw AnnotationError("vocabulary names unknown class '" +
                            item.name + "'");
    }
  }
  for (const ImageRecord &neighbor : neighbors) {
    if (!(neighbor.similarity >= 0.0 && neighbor.similarity <= 1.0)) {
      throw AnnotationError("similarity of '" + neighbor.image_id +
                            "' outside [0,1]");
    }
  }

  const SimilarityVoteScorer default_scorer;
  if (scorer == nullptr) scorer = &default_scorer;

  AnnotationResult result;
  result.raw_evidence = scorer->Evidence(neighbors, vocabulary, graph, taxonomy);
  double max = 0.0;
  for (const Concept &item : vocabulary.concepts) {
    auto it = result.raw_evidence.find(item);
    if (it == result.raw_evidence.end() || !(it->second >= 0.0)) {
      throw AnnotationError("scorer produced no valid evidence for '" +
                            item.ToString() + "'");
    }
    max = std::max(max, it->second);
  }
  for (const Concept &item : vocabulary.concepts) {
    double raw = result.raw_evidence[item];
    result.scores[item] = max > 0.0 ? raw / max : 0.0;
  }
  return result;
}

std::vector<LevelScore> HierarchicalReport(const AnnotationResult &result,
                                           const Taxonomy &taxonomy,
                                           ClassLevel level) {
  std::map<ClassId, double> lifted;
  for (const auto &[item, score] : result.scores) {
    if (item.kind != Concept::Kind::kClass) continue;
    auto ancestor = taxonomy.AncestorAt(ClassId(item.name), level);
    if (!ancestor) continue;
    auto [it, inserted] = lifted.insert({*ancestor, score});
    if (!inserted) it->second = std::max(it->second, score);
  }
  std::vector<LevelScore> report;
  for (auto &[cls, score] : lifted) report.push_back({cls, score});
  std::stable_sort(report.begin(), report.end(),
                   [](const LevelScore &a, const LevelScore &b) {
                     return a.score > b.score;
                   });
  return report;
}

std::vector<ImageRecord> ParseNeighbors(std::string_view text) {
  std::vector<std::string_view> lines = Split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  auto strip_cr = [](std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
  };
  if (lines.empty() || strip_cr(lines[0]) != kNeighborHeader) {
    throw AnnotationError("neighbors:1: expected header '#image_id<TAB>"
                          "similarity<TAB>keywords'");
  }
  std::vector<ImageRecord> records;
  for (size_t i = 1; i < lines.size(); ++i) {
    std::string_view line = strip_cr(lines[i]);
    const std::string where = "neighbors:" + std::to_string(i + 1) + ": ";
    if (line.empty()) continue;
    std::vector<std::string_view> fields = Split(line, '\t');
    if (fields.size() < 2 || fields.size() > 3) {
      throw AnnotationError(where + "expected 3 tab-separated fields");
    }
    ImageRecord record;
    record.image_id = std::string(fields[0]);
    if (record.image_id.empty()) throw AnnotationError(where + "empty image_id");
    std::string_view sim = fields[1];
    auto [ptr, ec] =
        std::from_chars(sim.data(), sim.data() + sim.size(), record.similarity);
    if (ec != std::errc() || ptr != sim.data() + sim.size()) {
      throw AnnotationError(where + "bad similarity '" + std::string(sim) +
                            "'");
    }
    if (!(record.similarity >= 0.0 && record.similarity <= 1.0)) {
      throw AnnotationError(where + "similarity outside [0,1]");
    }
    if (fields.size() == 3) {
      for (std::string_view keyword : Split(fields[2], ';')) {
        std::string word = NormalizeLemma(keyword);
        if (!word.empty()) record.keywords.push_back(std::move(word));
      }
    }
    records.push_back(std::move(record));
  }
  return records;
}

std::vector<ImageRecord> LoadNeighbors(const std::filesystem::path &path) {
  return ParseNeighbors(ReadFile(path));
}

Vocabulary ParseVocabulary(std::string_view text) {
  Vocabulary vocabulary;
  int line_no = 0;
  for (std::string_view line : Split(text, '\n')) {
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' ||
                             line.back() == '\t')) {
      line.remove_suffix(1);
    }
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) {
      line.remove_prefix(1);
    }
    if (line.empty() || line.front() == '#') continue;
    if (line.substr(0, 6) == "class:") {
      std::string_view slug = line.substr(6);
      if (!ClassId::IsValidSlug(slug)) {
        throw AnnotationError("vocabulary:" + std::to_string(line_no) +
                              ": invalid class slug '" + std::string(slug) +
                              "'");
      }
      vocabulary.concepts.push_back(Concept::Class(slug));
    } else {
      vocabulary.concepts.push_back(Concept::Word(line));
    }
  }
  return vocabulary;
}

Vocabulary LoadVocabulary(const std::filesystem::path &path) {
  return ParseVocabulary(ReadFile(path));
}

std::string FormatScore(double score) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", score);
  return buf;
}

}  // namespace vco
