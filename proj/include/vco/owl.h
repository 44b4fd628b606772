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

#ifndef VCO_OWL_H_
#define VCO_OWL_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vco/taxonomy.h"
#include "vco/wordnet.h"

namespace vco {

class OwlError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kRdfNs =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfsNs =
    "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kOwlNs = "http://www.w3.org/2002/07/owl#";

// Absolute IRI with a scheme, no fragment and no characters that Turtle
// forbids inside <...>.
bool IsAbsoluteIri(std::string_view iri);

// Serializes the taxonomy as OWL 2 in Turtle. Classes become owl:Class,
// linked synsets owl:NamedIndividual; links are annotation assertions from
// the individual to the class IRI. Throws OwlError when the taxonomy does not
// validate or the IRI is unusable.
std::string ExportOwl(const Taxonomy &taxonomy, const WordNetGraph &graph,
                      std::string_view ontology_iri);

// Fully expanded RDF term.
struct RdfTerm {
  enum class Kind { kIri, kBlank, kLiteral };
  Kind kind = Kind::kIri;
  std::string value;     // IRI, blank label or lexical form
  std::string datatype;  // literals only
  std::string language;  // literals only

  friend bool operator==(const RdfTerm &, const RdfTerm &) = default;
};

struct Triple {
  RdfTerm subject;
  RdfTerm predicate;
  RdfTerm object;
};

// Parses a Turtle document into triples. Throws OwlError with a line number
// on malformed input.
std::vector<Triple> ParseTurtle(std::string_view document);

struct OwlCounts {
  size_t classes = 0;
  size_t individuals = 0;
  size_t links = 0;

  friend bool operator==(const OwlCounts &, const OwlCounts &) = default;
};

// Counts owl:Class subjects, owl:NamedIndividual subjects and
// equivalenceOf/superClassOf assertions after parsing `document`.
OwlCounts CountOwlEntities(std::string_view document);

}  // namespace vco

#endif  // VCO_OWL_H_
