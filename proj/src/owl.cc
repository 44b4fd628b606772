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

#include "vco/owl.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace vco {

namespace {

constexpr std::string_view kXsdNs = "http://www.w3.org/2001/XMLSchema#";

std::string EscapeString(std::string_view text) {
  std::string out;
  out.reserve(text.size() + 2);
  for (unsigned char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      default:
        if (c < 0x20 || c == 0x7f) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04X", c);
          out += buf;
        } else {
          out.push_back(char(c));  // UTF-8 passes through untouched
        }
    }
  }
  return out;
}

std::string Literal(std::string_view text) {
  return "\"" + EscapeString(text) + "\"";
}

}  // namespace

bool IsAbsoluteIri(std::string_view iri) {
  size_t colon = iri.find(':');
  if (colon == std::string_view::npos || colon == 0) return false;
  auto alpha = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  };
  if (!alpha(iri[0])) return false;
  for (size_t i = 1; i < colon; ++i) {
    char c = iri[i];
    if (!alpha(c) && !(c >= '0' && c <= '9') && c != '+' && c != '-' &&
        c != '.') {
      return false;
    }
  }
  if (colon + 1 == iri.size()) return false;
  for (unsigned char c : iri) {
    if (c <= 0x20 || c == '<' || c == '>' || c == '"' || c == '{' ||
        c == '}' || c == '|' || c == '^' || c == '`' || c == '\\' ||
        c == '#') {
      return false;
    }
  }
  return true;
}

std::string ExportOwl(const Taxonomy &taxonomy, const WordNetGraph &graph,
                      std::string_view ontology_iri) {
  if (!IsAbsoluteIri(ontology_iri)) {
    throw OwlError("not an absolute IRI without fragment: '" +
                   std::string(ontology_iri) + "'");
  }
  ValidationReport validation = ValidateTaxonomy(taxonomy);
  if (!validation.ok()) {
    const Violation &first = validation.violations.front();
    throw OwlError("cannot export invalid taxonomy: " + first.kind + " (" +
                   first.subject + ")");
  }
  for (const SynsetId &id : taxonomy.LinkedSynsets()) {
    if (!graph.Contains(id)) {
      throw OwlError("linked synset " + id.ToString() + " not in WordNet");
    }
  }

  std::ostringstream out;
  out << "@prefix : <" << ontology_iri << "#> .\n";
  out << "@prefix owl: <" << kOwlNs << "> .\n";
  out << "@prefix rdf: <" << kRdfNs << "> .\n";
  out << "@prefix rdfs: <" << kRdfsNs << "> .\n";
  out << "@prefix xsd: <" << kXsdNs << "> .\n";
  out << "\n<" << ontology_iri << "> a owl:Ontology .\n";

  for (std::string_view property : {"equivalenceOf", "superClassOf"}) {
    out << "\n:" << property << " a owl:AnnotationProperty ;\n"
        << "    rdfs:label " << Literal(property) << " .\n";
  }

  for (const auto &[id, cls] : taxonomy.classes()) {
    out << "\n:class-" << id.str() << " a owl:Class ;\n";
    out << "    rdfs:label " << Literal(cls.label);
    if (cls.parent) {
      out << " ;\n    rdfs:subClassOf :class-" << cls.parent->str();
    }
    out << " .\n";
  }

  std::map<SynsetId, std::vector<const VcoLink *>> by_synset;
  for (const VcoLink &link : taxonomy.links()) {
    by_synset[link.synset].push_back(&link);
  }
  for (auto &[synset_id, links] : by_synset) {
    std::sort(links.begin(), links.end(),
              [](const VcoLink *a, const VcoLink *b) {
                return std::tie(a->cls, a->kind) < std::tie(b->cls, b->kind);
              });
    const Synset &synset = graph.Get(synset_id);
    out << "\n:syn-" << synset_id.ToString() << " a owl:NamedIndividual ;\n";
    out << "    rdfs:label " << Literal(synset.FirstLemma()) << " ;\n";
    out << "    rdfs:comment " << Literal(synset.gloss);
    for (const VcoLink *link : links) {
      out << " ;\n    :" << LinkKindName(link->kind) << " :class-"
          << link->cls.str();
    }
    out << " .\n";
  }
  return out.str();
}

// Turtle reader ------------------------------------------------------------

namespace {

class TurtleParser {
 public:
  explicit TurtleParser(std::string_view text) : text_(text) {}

  std::vector<Triple> Parse() {
    for (;;) {
      SkipSpace();
      if (AtEnd()) break;
      Statement();
    }
    return std::move(triples_);
  }

 private:
  [[noreturn]] void Fail(const std::string &message) const {
    throw OwlError("turtle:" + std::to_string(line_) + ": " + message);
  }

  bool AtEnd() const { return pos_ >= text_.size(); }
  char Peek(size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  char Get() {
    if (AtEnd()) Fail("unexpected end of document");
    char c = text_[pos_++];
    if (c == '\n') ++line_;
    return c;
  }
  void Expect(char c) {
    SkipSpace();
    if (Peek() != c) Fail(std::string("expected '") + c + "'");
    Get();
  }

  void SkipSpace() {
    while (!AtEnd()) {
      char c = Peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        Get();
      } else if (c == '#') {
        while (!AtEnd() && Peek() != '\n') Get();
      } else {
        break;
      }
    }
  }

  bool LookingAtKeyword(std::string_view word, bool case_insensitive) const {
    if (text_.size() - pos_ < word.size()) return false;
    for (size_t i = 0; i < word.size(); ++i) {
      char a = text_[pos_ + i], b = word[i];
      if (case_insensitive) {
        a = char(std::tolower(static_cast<unsigned char>(a)));
        b = char(std::tolower(static_cast<unsigned char>(b)));
      }
      if (a != b) return false;
    }
    char next = Peek(word.size());
    return !(std::isalnum(static_cast<unsigned char>(next)) || next == '_' ||
             next == ':' || next == '-');
  }

  void Statement() {
    if (Peek() == '@') {
      Get();
      if (LookingAtKeyword("prefix", false)) {
        pos_ += 6;
        PrefixDecl();
        Expect('.');
      } else if (LookingAtKeyword("base", false)) {
        pos_ += 4;
        SkipSpace();
        base_ = IriRef();
        Expect('.');
      } else {
        Fail("unknown directive");
      }
      return;
    }
    if (LookingAtKeyword("PREFIX", true)) {
      pos_ += 6;
      PrefixDecl();
      return;
    }
    if (LookingAtKeyword("BASE", true)) {
      pos_ += 4;
      SkipSpace();
      base_ = IriRef();
      return;
    }
    Triples();
    Expect('.');
  }

  void PrefixDecl() {
    SkipSpace();
    std::string prefix;
    while (!AtEnd() && Peek() != ':') {
      char c = Get();
      if (!IsNameChar(c) && c != '.') Fail("bad prefix name");
      prefix.push_back(c);
    }
    Get();  // ':'
    SkipSpace();
    prefixes_[prefix] = IriRef();
  }

  void Triples() {
    SkipSpace();
    RdfTerm subject;
    if (Peek() == '[') {
      subject = BlankNodePropertyList();
      SkipSpace();
      if (Peek() == '.') return;
    } else {
      subject = Subject();
    }
    PredicateObjectList(subject);
  }

  RdfTerm Subject() {
    SkipSpace();
    if (Peek() == '(') return Collection();
    if (Peek() == '_' && Peek(1) == ':') return BlankLabel();
    return Iri();
  }

  void PredicateObjectList(const RdfTerm &subject) {
    for (;;) {
      SkipSpace();
      RdfTerm predicate = Verb();
      for (;;) {
        RdfTerm object = Object();
        triples_.push_back({subject, predicate, object});
        SkipSpace();
        if (Peek() != ',') break;
        Get();
      }
      SkipSpace();
      if (Peek() != ';') return;
      while (Peek() == ';') {
        Get();
        SkipSpace();
      }
      if (Peek() == '.' || Peek() == ']') return;
    }
  }

  RdfTerm Verb() {
    if (Peek() == 'a' && LookingAtKeyword("a", false)) {
      Get();
      return {RdfTerm::Kind::kIri, std::string(kRdfNs) + "type", "", ""};
    }
    return Iri();
  }

  RdfTerm Object() {
    SkipSpace();
    char c = Peek();
    if (c == '<' || (c == ':' ) || std::isalpha(static_cast<unsigned char>(c))) {
      if (LookingAtKeyword("true", false) || LookingAtKeyword("false", false)) {
        std::string value = LookingAtKeyword("true", false) ? "true" : "false";
        pos_ += value.size();
        return {RdfTerm::Kind::kLiteral, value, std::string(kXsdNs) + "boolean",
                ""};
      }
      return Iri();
    }
    if (c == '_' && Peek(1) == ':') return BlankLabel();
    if (c == '[') return BlankNodePropertyList();
    if (c == '(') return Collection();
    if (c == '"' || c == '\'') return StringLiteral();
    if (c == '+' || c == '-' || c == '.' ||
        std::isdigit(static_cast<unsigned char>(c))) {
      return NumericLiteral();
    }
    Fail(std::string("unexpected character '") + c + "' in object");
  }

  RdfTerm NewBlank() {
    return {RdfTerm::Kind::kBlank, "_gen" + std::to_string(++blank_counter_),
            "", ""};
  }

  RdfTerm BlankNodePropertyList() {
    Expect('[');
    RdfTerm node = NewBlank();
    SkipSpace();
    if (Peek() != ']') PredicateObjectList(node);
    Expect(']');
    return node;
  }

  RdfTerm Collection() {
    Expect('(');
    const RdfTerm nil{RdfTerm::Kind::kIri, std::string(kRdfNs) + "nil", "", ""};
    const RdfTerm first{RdfTerm::Kind::kIri, std::string(kRdfNs) + "first", "",
                        ""};
    const RdfTerm rest{RdfTerm::Kind::kIri, std::string(kRdfNs) + "rest", "",
                       ""};
    RdfTerm head = nil;
    RdfTerm tail;
    for (;;) {
      SkipSpace();
      if (Peek() == ')') {
        Get();
        break;
      }
      RdfTerm cell = NewBlank();
      if (head == nil) {
        head = cell;
      } else {
        triples_.push_back({tail, rest, cell});
      }
      triples_.push_back({cell, first, Object()});
      tail = cell;
    }
    if (!(head == nil)) triples_.push_back({tail, rest, nil});
    return head;
  }

  RdfTerm BlankLabel() {
    pos_ += 2;
    std::string label;
    while (!AtEnd() && (IsNameChar(Peek()) || Peek() == '.')) {
      label.push_back(Get());
    }
    while (!label.empty() && label.back() == '.') {
      label.pop_back();
      --pos_;
    }
    if (label.empty()) Fail("empty blank node label");
    return {RdfTerm::Kind::kBlank, label, "", ""};
  }

  static bool IsNameChar(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           c == '-' || static_cast<unsigned char>(c) >= 0x80;
  }

  RdfTerm Iri() {
    SkipSpace();
    if (Peek() == '<') return {RdfTerm::Kind::kIri, IriRef(), "", ""};
    // Prefixed name.
    std::string prefix;
    while (!AtEnd() && Peek() != ':') {
      char c = Peek();
      if (!IsNameChar(c) && c != '.') Fail("expected IRI or prefixed name");
      prefix.push_back(Get());
    }
    if (AtEnd()) Fail("expected ':' in prefixed name");
    Get();
    auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) Fail("undeclared prefix '" + prefix + ":'");
    std::string local;
    while (!AtEnd()) {
      char c = Peek();
      if (IsNameChar(c) || c == ':' || c == '.') {
        local.push_back(Get());
      } else if (c == '\\') {
        Get();
        local.push_back(Get());
      } else if (c == '%') {
        local.push_back(Get());
        for (int i = 0; i < 2; ++i) {
          if (!std::isxdigit(static_cast<unsigned char>(Peek()))) {
            Fail("bad percent escape in local name");
          }
          local.push_back(Get());
        }
      } else {
        break;
      }
    }
    // A trailing '.' terminates the statement.
    while (!local.empty() && local.back() == '.') {
      local.pop_back();
      --pos_;
    }
    return {RdfTerm::Kind::kIri, it->second + local, "", ""};
  }

  std::string IriRef() {
    SkipSpace();
    if (Peek() != '<') Fail("expected '<'");
    Get();
    std::string iri;
    for (;;) {
      char c = Get();
      if (c == '>') break;
      if (c == '\\') {
        char kind = Get();
        if (kind != 'u' && kind != 'U') Fail("bad escape in IRI");
        AppendUtf8(HexCodepoint(kind == 'u' ? 4 : 8), &iri);
        continue;
      }
      if (static_cast<unsigned char>(c) <= 0x20 || c == '<' || c == '"' ||
          c == '{' || c == '}' || c == '|' || c == '^' || c == '`') {
        Fail("illegal character in IRI");
      }
      iri.push_back(c);
    }
    if (iri.find(':') == std::string::npos && !base_.empty()) {
      iri = base_ + iri;
    }
    return iri;
  }

  uint32_t HexCodepoint(int digits) {
    uint32_t value = 0;
    for (int i = 0; i < digits; ++i) {
      char c = Get();
      if (!std::isxdigit(static_cast<unsigned char>(c))) Fail("bad \\u escape");
      value = value * 16 + uint32_t(std::isdigit(static_cast<unsigned char>(c))
                                        ? c - '0'
                                        : std::tolower(c) - 'a' + 10);
    }
    return value;
  }

  static void AppendUtf8(uint32_t cp, std::string *out) {
    if (cp < 0x80) {
      out->push_back(char(cp));
    } else if (cp < 0x800) {
      out->push_back(char(0xC0 | (cp >> 6)));
      out->push_back(char(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out->push_back(char(0xE0 | (cp >> 12)));
      out->push_back(char(0x80 | ((cp >> 6) & 0x3F)));
      out->push_back(char(0x80 | (cp & 0x3F)));
    } else {
      out->push_back(char(0xF0 | (cp >> 18)));
      out->push_back(char(0x80 | ((cp >> 12) & 0x3F)));
      out->push_back(char(0x80 | ((cp >> 6) & 0x3F)));
      out->push_back(char(0x80 | (cp & 0x3F)));
    }
  }

  RdfTerm StringLiteral() {
    char quote = Get();
    bool long_form = Peek() == quote && Peek(1) == quote;
    if (long_form) {
      Get();
      Get();
    } else if (Peek() == quote) {
      Get();
      return LiteralSuffix("");
    }
    std::string value;
    for (;;) {
      char c = Get();
      if (c == quote) {
        if (!long_form) break;
        if (Peek() == quote && Peek(1) == quote) {
          Get();
          Get();
          // Up to two extra quotes may precede the closing delimiter.
          while (Peek() == quote) value.push_back(Get());
          break;
        }
        value.push_back(c);
        continue;
      }
      if (!long_form && (c == '\n' || c == '\r')) {
        Fail("newline in short string literal");
      }
      if (c == '\\') {
        char e = Get();
        switch (e) {
          case 't': value.push_back('\t'); break;
          case 'b': value.push_back('\b'); break;
          case 'n': value.push_back('\n'); break;
          case 'r': value.push_back('\r'); break;
          case 'f': value.push_back('\f'); break;
          case '"': value.push_back('"'); break;
          case '\'': value.push_back('\''); break;
          case '\\': value.push_back('\\'); break;
          case 'u': AppendUtf8(HexCodepoint(4), &value); break;
          case 'U': AppendUtf8(HexCodepoint(8), &value); break;
          default: Fail(std::string("bad string escape '\\") + e + "'");
        }
        continue;
      }
      value.push_back(c);
    }
    return LiteralSuffix(std::move(value));
  }

  RdfTerm LiteralSuffix(std::string value) {
    RdfTerm term{RdfTerm::Kind::kLiteral, std::move(value),
                 std::string(kXsdNs) + "string", ""};
    if (Peek() == '@') {
      Get();
      std::string lang;
      while (std::isalnum(static_cast<unsigned char>(Peek())) || Peek() == '-') {
        lang.push_back(Get());
      }
      if (lang.empty()) Fail("empty language tag");
      term.language = lang;
      term.datatype = std::string(kRdfNs) + "langString";
    } else if (Peek() == '^' && Peek(1) == '^') {
      pos_ += 2;
      term.datatype = Iri().value;
    }
    return term;
  }

  RdfTerm NumericLiteral() {
    std::string lexical;
    if (Peek() == '+' || Peek() == '-') lexical.push_back(Get());
    bool digits = false, dot = false, exponent = false;
    while (std::isdigit(static_cast<unsigned char>(Peek()))) {
      lexical.push_back(Get());
      digits = true;
    }
    if (Peek() == '.' && std::isdigit(static_cast<unsigned char>(Peek(1)))) {
      dot = true;
      lexical.push_back(Get());
      while (std::isdigit(static_cast<unsigned char>(Peek()))) {
        lexical.push_back(Get());
        digits = true;
      }
    }
    if (!digits) Fail("malformed number");
    if (Peek() == 'e' || Peek() == 'E') {
      exponent = true;
      lexical.push_back(Get());
      if (Peek() == '+' || Peek() == '-') lexical.push_back(Get());
      if (!std::isdigit(static_cast<unsigned char>(Peek()))) {
        Fail("malformed exponent");
      }
      while (std::isdigit(static_cast<unsigned char>(Peek()))) {
        lexical.push_back(Get());
      }
    }
    std::string type = exponent ? "double" : dot ? "decimal" : "integer";
    return {RdfTerm::Kind::kLiteral, lexical, std::string(kXsdNs) + type, ""};
  }

  std::string_view text_;
  size_t pos_ = 0;
  int line_ = 1;
  std::string base_;
  std::map<std::string, std::string> prefixes_;
  std::vector<Triple> triples_;
  int blank_counter_ = 0;
};

}  // namespace

std::vector<Triple> ParseTurtle(std::string_view document) {
  return TurtleParser(document).Parse();
}

OwlCounts CountOwlEntities(std::string_view document) {
  const std::vector<Triple> triples = ParseTurtle(document);
  const std::string rdf_type = std::string(kRdfNs) + "type";
  const std::string owl_class = std::string(kOwlNs) + "Class";
  const std::string owl_individual = std::string(kOwlNs) + "NamedIndividual";
  const std::string owl_annotation = std::string(kOwlNs) + "AnnotationProperty";

  std::set<std::string> classes, individuals, link_properties;
  for (const Triple &t : triples) {
    if (t.predicate.value != rdf_type || t.object.kind != RdfTerm::Kind::kIri) {
      continue;
    }
    if (t.object.value == owl_class) classes.insert(t.subject.value);
    if (t.object.value == owl_individual) individuals.insert(t.subject.value);
    if (t.object.value == owl_annotation) {
      const std::string &iri = t.subject.value;
      size_t hash = iri.rfind('#');
      std::string_view local =
          hash == std::string::npos ? std::string_view()
                                    : std::string_view(iri).substr(hash + 1);
      if (local == "equivalenceOf" || local == "superClassOf") {
        link_properties.insert(iri);
      }
    }
  }
  OwlCounts counts;
  counts.classes = classes.size();
  counts.individuals = individuals.size();
  for (const Triple &t : triples) {
    if (link_properties.count(t.predicate.value)) ++counts.links;
  }
  return counts;
}

}  // namespace vco
