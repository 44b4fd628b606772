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

#ifndef VCO_ANNOTATION_H_
#define VCO_ANNOTATION_H_

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vco/taxonomy.h"
#include "vco/wordnet.h"

namespace vco {

class AnnotationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Metadata of one image retrieved as visually similar to the query.
struct ImageRecord {
  std::string image_id;
  std::vector<std::string> keywords;
  double similarity = 0.0;  // in [0, 1]
};

// A vocabulary entry: either a plain word form or a taxonomy class.
struct Concept {
  enum class Kind { kWord, kClass };
  Kind kind = Kind::kWord;
  std::string name;  // normalized lemma or class slug

  static Concept Word(std::string_view word);
  static Concept Class(std::string_view slug);

  // "dog" or "class:buildings", the vocabulary-file spelling.
  std::string ToString() const;

  friend auto operator<=>(const Concept &, const Concept &) = default;
};

struct Vocabulary {
  std::vector<Concept> concepts;
};

// Relevance of every vocabulary concept for one query image. Scores are
// relative (max-normalized), not calibrated probabilities.
struct AnnotationResult {
  std::map<Concept, double> scores;
  // Unnormalized similarity-weighted evidence, same keys as `scores`.
  std::map<Concept, double> raw_evidence;
};

struct ClassSupport {
  ClassId cls;
  std::vector<std::string> keywords;  // sorted, deduplicated

  friend bool operator==(const ClassSupport &, const ClassSupport &) = default;
};

struct CoverageResult {
  std::vector<ClassSupport> covering;  // slug order
  std::vector<std::string> unmapped;   // sorted, deduplicated

  friend bool operator==(const CoverageResult &,
                         const CoverageResult &) = default;
};

// Maps free-text keywords to the taxonomy classes covering any of their
// senses. Keywords normalize like lemmas; empty ones are dropped.
CoverageResult MapKeywords(const WordNetGraph &graph, const Taxonomy &taxonomy,
                           const std::vector<std::string> &keywords);

// Strategy turning neighbor metadata into per-concept evidence.
class Scorer {
 public:
  virtual ~Scorer() = default;

  // Raw evidence per concept; must be non-negative and cover every concept.
  virtual std::map<Concept, double> Evidence(
      const std::vector<ImageRecord> &neighbors, const Vocabulary &vocabulary,
      const WordNetGraph &graph, const Taxonomy &taxonomy) const = 0;
};

// Sum over neighbors of similarity times a binary match indicator.
class SimilarityVoteScorer : public Scorer {
 public:
  std::map<Concept, double> Evidence(const std::vector<ImageRecord> &neighbors,
                                     const Vocabulary &vocabulary,
                                     const WordNetGraph &graph,
                                     const Taxonomy &taxonomy) const override;
};

// Scores `vocabulary` from the neighbors' keywords, max-normalized to [0,1].
// Uses SimilarityVoteScorer when `scorer` is null.
AnnotationResult Annotate(const std::vector<ImageRecord> &neighbors,
                          const Vocabulary &vocabulary,
                          const WordNetGraph &graph, const Taxonomy &taxonomy,
                          const Scorer *scorer = nullptr);

struct LevelScore {
  ClassId cls;
  double score = 0.0;

  friend bool operator==(const LevelScore &, const LevelScore &) = default;
};

// Lifts class scores to `level`: each class at that level takes the maximum
// score found in its subtree. Classes with nothing scored below them are
// omitted. Sorted by score descending, slug ascending.
std::vector<LevelScore> HierarchicalReport(const AnnotationResult &result,
                                           const Taxonomy &taxonomy,
                                           ClassLevel level);

// File formats -------------------------------------------------------------

// Neighbor TSV: header "#image_id\tsimilarity\tkeywords", then one record per
// line with ';'-separated keywords.
std::vector<ImageRecord> ParseNeighbors(std::string_view text);
std::vector<ImageRecord> LoadNeighbors(const std::filesystem::path &path);

// One concept per line; "class:<slug>" marks class concepts. Blank lines and
// '#' comments are skipped.
Vocabulary ParseVocabulary(std::string_view text);
Vocabulary LoadVocabulary(const std::filesystem::path &path);

// Fixed six-decimal rendering used by every score output.
std::string FormatScore(double score);

}  // namespace vco

#endif  // VCO_ANNOTATION_H_
