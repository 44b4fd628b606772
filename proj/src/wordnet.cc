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

#include "vco/wordnet.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <deque>
#include <fstream>
#include <functional>
#include <set>
#include <unordered_set>

namespace vco {

namespace {

std::string FormatOffset(uint32_t offset) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%08u", offset);
  return buf;
}

bool ParseUnsigned(std::string_view text, int base, uint32_t *value) {
  if (text.empty()) return false;
  auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), *value, base);
  return ec == std::errc() && ptr == text.data() + text.size();
}

std::vector<std::string_view> SplitSpaces(std::string_view line) {
  std::vector<std::string_view> tokens;
  size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && line[pos] == ' ') ++pos;
    if (pos >= line.size()) break;
    size_t end = line.find(' ', pos);
    if (end == std::string_view::npos) end = line.size();
    tokens.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return tokens;
}

// Cursor over the tokens of one database line, producing located errors.
class LineReader {
 public:
  LineReader(const std::string &file, int line_no, std::string_view line)
      : file_(file), line_no_(line_no), tokens_(SplitSpaces(line)) {}

  bool done() const { return pos_ >= tokens_.size(); }

  std::string_view Next(const char *field) {
    if (done()) Fail(field, "unexpected end of line");
    return tokens_[pos_++];
  }

  uint32_t Number(const char *field, int base) {
    std::string_view token = Next(field);
    uint32_t value;
    if (!ParseUnsigned(token, base, &value)) {
      Fail(field, "not a " + std::string(base == 16 ? "hex" : "decimal") +
                      " number: '" + std::string(token) + "'");
    }
    return value;
  }

  [[noreturn]] void Fail(const std::string &field,
                         const std::string &message) const {
    throw WordNetError(file_, line_no_, field, message);
  }

 private:
  const std::string &file_;
  int line_no_;
  std::vector<std::string_view> tokens_;
  size_t pos_ = 0;
};

// Reads every non-header line of a database file.
void ForEachLine(const std::filesystem::path &path,
                 const std::function<void(int, std::string_view)> &fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw WordNetError("cannot open " + path.string());
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == ' ') continue;
    fn(line_no, line);
  }
}

void ParseDataLine(const std::string &file, int line_no, std::string_view line,
                   GraphBuilder *builder, LoadStats *stats) {
  size_t bar = line.find('|');
  std::string_view head = line.substr(0, bar);
  std::string gloss;
  if (bar != std::string_view::npos) {
    std::string_view rest = line.substr(bar + 1);
    while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
    while (!rest.empty() && rest.back() == ' ') rest.remove_suffix(1);
    gloss = std::string(rest);
  }

  LineReader reader(file, line_no, head);
  Synset synset;
  std::string_view offset_token = reader.Next("synset_offset");
  if (offset_token.size() != 8 ||
      !ParseUnsigned(offset_token, 10, &synset.id.offset)) {
    reader.Fail("synset_offset",
                "expected 8-digit offset, got '" + std::string(offset_token) +
                    "'");
  }
  reader.Number("lex_filenum", 10);
  std::string_view ss_type = reader.Next("ss_type");
  if (ss_type != "n") {
    reader.Fail("ss_type",
                "only noun synsets are supported, got '" +
                    std::string(ss_type) + "'");
  }

  uint32_t word_count = reader.Number("w_cnt", 16);
  if (word_count == 0) reader.Fail("w_cnt", "synset without words");
  for (uint32_t i = 0; i < word_count; ++i) {
    synset.lemmas.push_back(NormalizeLemma(reader.Next("word")));
    reader.Number("lex_id", 16);
  }

  uint32_t pointer_count = reader.Number("p_cnt", 10);
  for (uint32_t i = 0; i < pointer_count; ++i) {
    std::string_view symbol = reader.Next("pointer_symbol");
    std::string_view target_token = reader.Next("pointer_offset");
    uint32_t target;
    if (target_token.size() != 8 || !ParseUnsigned(target_token, 10, &target)) {
      reader.Fail("pointer_offset",
                  "expected 8-digit offset, got '" +
                      std::string(target_token) + "'");
    }
    std::string_view pos = reader.Next("pointer_pos");
    std::string_view source_target = reader.Next("source/target");
    uint32_t unused;
    if (source_target.size() != 4 || !ParseUnsigned(source_target, 16, &unused)) {
      reader.Fail("source/target",
                  "expected 4 hex digits, got '" + std::string(source_target) +
                      "'");
    }

    const SynsetId id{'n', target};
    auto require_noun = [&]() {
      if (pos != "n") {
        reader.Fail("pointer_pos", "pointer '" + std::string(symbol) +
                                       "' must target a noun, got '" +
                                       std::string(pos) + "'");
      }
    };
    if (symbol == "@" || symbol == "@i") {
      require_noun();
      synset.hypernyms.push_back({id, symbol == "@i"});
    } else if (symbol == "~" || symbol == "~i") {
      require_noun();
      synset.hyponyms.push_back({id, symbol == "~i"});
    } else if (symbol.size() == 2 && (symbol[0] == '%' || symbol[0] == '#') &&
               (symbol[1] == 'p' || symbol[1] == 'm' || symbol[1] == 's')) {
      require_noun();
      PartKind kind = symbol[1] == 'p'   ? PartKind::kPart
                      : symbol[1] == 'm' ? PartKind::kMember
                                         : PartKind::kSubstance;
      (symbol[0] == '%' ? synset.meronyms : synset.holonyms)
          .push_back({id, kind});
    } else if (stats != nullptr) {
      stats->ignored_pointers[std::string(symbol)]++;
    }
  }
  if (!reader.done()) {
    reader.Fail("gloss", "trailing tokens before gloss separator");
  }
  synset.gloss = std::move(gloss);

  if (builder->Contains(synset.id)) {
    reader.Fail("synset_offset", "duplicate synset " + synset.id.ToString());
  }
  builder->Add(std::move(synset));
}

void ParseIndexLine(const std::string &file, int line_no, std::string_view line,
                    GraphBuilder *builder) {
  LineReader reader(file, line_no, line);
  std::string lemma = NormalizeLemma(reader.Next("lemma"));
  std::string_view pos = reader.Next("pos");
  if (pos != "n") {
    reader.Fail("pos", "only nouns are supported, got '" + std::string(pos) +
                           "'");
  }
  uint32_t synset_count = reader.Number("synset_cnt", 10);
  uint32_t pointer_count = reader.Number("p_cnt", 10);
  for (uint32_t i = 0; i < pointer_count; ++i) reader.Next("ptr_symbol");
  reader.Number("sense_cnt", 10);
  reader.Number("tagsense_cnt", 10);
  std::vector<SynsetId> order;
  for (uint32_t i = 0; i < synset_count; ++i) {
    std::string_view token = reader.Next("synset_offset");
    uint32_t offset;
    if (token.size() != 8 || !ParseUnsigned(token, 10, &offset)) {
      reader.Fail("synset_offset",
                  "expected 8-digit offset, got '" + std::string(token) + "'");
    }
    order.push_back({'n', offset});
  }
  if (!reader.done()) reader.Fail("synset_offset", "more offsets than synset_cnt");
  for (const SynsetId &id : order) {
    if (!builder->Contains(id)) {
      reader.Fail("synset_offset", "lemma '" + lemma +
                                       "' refers to unknown synset " +
                                       id.ToString());
    }
  }
  builder->SetSenseOrder(std::move(lemma), std::move(order));
}

}  // namespace

std::string SynsetId::ToString() const {
  return std::string(1, pos) + FormatOffset(offset);
}

std::string SynsetId::OffsetString() const { return FormatOffset(offset); }

std::optional<SynsetId> SynsetId::Parse(std::string_view text) {
  SynsetId id;
  if (!text.empty() && text.front() == 'n') text.remove_prefix(1);
  if (text.size() != 8) return std::nullopt;
  if (!ParseUnsigned(text, 10, &id.offset)) return std::nullopt;
  return id;
}

WordNetError::WordNetError(const std::string &file, int line,
                           const std::string &field,
                           const std::string &message)
    : std::runtime_error(file + ":" + std::to_string(line) + ": field '" +
                         field + "': " + message),
      file_(file),
      line_(line),
      field_(field) {}

std::string NormalizeLemma(std::string_view word) {
  std::string out;
  out.reserve(word.size());
  bool pending_space = false;
  for (char c : word) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back('_');
      pending_space = false;
    }
    if (c >= 'A' && c <= 'Z') c = char(c - 'A' + 'a');
    out.push_back(c);
  }
  return out;
}

WordNetGraph::Node WordNetGraph::NodeOf(SynsetId id) const {
  auto node = FindNode(id);
  if (!node) throw WordNetError("unknown synset " + id.ToString());
  return *node;
}

std::optional<WordNetGraph::Node> WordNetGraph::FindNode(SynsetId id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) return std::nullopt;
  return it->second;
}

std::vector<SynsetId> WordNetGraph::LookupLemma(std::string_view lemma) const {
  auto it = lemma_index_.find(NormalizeLemma(lemma));
  if (it == lemma_index_.end()) return {};
  return it->second;
}

void GraphBuilder::Add(Synset synset) {
  if (index_.count(synset.id)) {
    throw WordNetError("duplicate synset " + synset.id.ToString());
  }
  if (synset.id.pos != 'n') {
    throw WordNetError("only noun synsets are supported: " +
                       synset.id.ToString());
  }
  if (synset.lemmas.empty()) {
    throw WordNetError("synset without lemmas: " + synset.id.ToString());
  }
  for (std::string &lemma : synset.lemmas) lemma = NormalizeLemma(lemma);
  index_[synset.id] = synsets_.size();
  synsets_.push_back(std::move(synset));
}

void GraphBuilder::Link(SynsetId child, SynsetId parent, bool instance) {
  auto c = index_.find(child);
  auto p = index_.find(parent);
  if (c == index_.end() || p == index_.end()) {
    throw WordNetError("link between unknown synsets " + child.ToString() +
                       " -> " + parent.ToString());
  }
  synsets_[c->second].hypernyms.push_back({parent, instance});
  synsets_[p->second].hyponyms.push_back({child, instance});
}

void GraphBuilder::SetSenseOrder(std::string lemma,
                                 std::vector<SynsetId> order) {
  sense_order_[NormalizeLemma(lemma)] = std::move(order);
}

WordNetGraph GraphBuilder::Finish() && {
  WordNetGraph graph;
  graph.synsets_ = std::move(synsets_);
  std::sort(graph.synsets_.begin(), graph.synsets_.end(),
            [](const Synset &a, const Synset &b) { return a.id < b.id; });
  const size_t n = graph.synsets_.size();
  for (size_t i = 0; i < n; ++i) {
    graph.nodes_[graph.synsets_[i].id] = WordNetGraph::Node(i);
  }

  auto resolve = [&](const Synset &from, SynsetId to) {
    auto it = graph.nodes_.find(to);
    if (it == graph.nodes_.end()) {
      throw WordNetError("dangling pointer " + from.id.ToString() + " -> " +
                         to.ToString());
    }
    return it->second;
  };

  // Resolve pointers and check hypernym/hyponym symmetry.
  graph.parents_.assign(n, {});
  graph.children_.assign(n, {});
  std::set<std::tuple<WordNetGraph::Node, WordNetGraph::Node, bool>> up, down;
  for (size_t i = 0; i < n; ++i) {
    const Synset &synset = graph.synsets_[i];
    for (const SynsetRef &ref : synset.hypernyms) {
      up.insert({WordNetGraph::Node(i), resolve(synset, ref.target),
                 ref.instance});
    }
    for (const SynsetRef &ref : synset.hyponyms) {
      down.insert({resolve(synset, ref.target), WordNetGraph::Node(i),
                   ref.instance});
    }
    for (const PartRef &ref : synset.meronyms) resolve(synset, ref.target);
    for (const PartRef &ref : synset.holonyms) resolve(synset, ref.target);
  }
  if (up != down) {
    std::vector<std::tuple<WordNetGraph::Node, WordNetGraph::Node, bool>> diff;
    std::set_symmetric_difference(up.begin(), up.end(), down.begin(),
                                  down.end(), std::back_inserter(diff));
    auto [child, parent, instance] = diff.front();
    throw WordNetError("asymmetric hypernym/hyponym pointer between " +
                       graph.synsets_[child].id.ToString() + " and " +
                       graph.synsets_[parent].id.ToString() +
                       (instance ? " (instance)" : ""));
  }
  for (auto [child, parent, instance] : up) {
    auto &parents = graph.parents_[child];
    if (parents.empty() || parents.back() != parent) parents.push_back(parent);
  }
  for (WordNetGraph::Node child = 0; child < n; ++child) {
    for (WordNetGraph::Node parent : graph.parents_[child]) {
      graph.children_[parent].push_back(child);
    }
  }

  // Unique root.
  std::vector<WordNetGraph::Node> roots;
  for (WordNetGraph::Node i = 0; i < n; ++i) {
    if (graph.parents_[i].empty()) roots.push_back(i);
  }
  if (roots.size() != 1) {
    throw WordNetError("zero or multiple roots (found " +
                       std::to_string(roots.size()) + ")");
  }
  graph.root_ = roots.front();

  // Acyclicity via Kahn's algorithm from the root.
  std::vector<size_t> pending(n);
  for (WordNetGraph::Node i = 0; i < n; ++i) {
    pending[i] = graph.parents_[i].size();
  }
  std::deque<WordNetGraph::Node> queue{graph.root_};
  size_t visited = 0;
  while (!queue.empty()) {
    WordNetGraph::Node node = queue.front();
    queue.pop_front();
    ++visited;
    for (WordNetGraph::Node child : graph.children_[node]) {
      if (--pending[child] == 0) queue.push_back(child);
    }
  }
  if (visited != n) {
    for (WordNetGraph::Node i = 0; i < n; ++i) {
      if (pending[i] != 0) {
        throw WordNetError("cyclic hypernym chain involving " +
                           graph.synsets_[i].id.ToString());
      }
    }
  }

  // Lemma index: declared sense order first, then any remaining synsets in
  // offset order.
  std::map<std::string, std::vector<SynsetId>> members;
  for (const Synset &synset : graph.synsets_) {
    for (const std::string &lemma : synset.lemmas) {
      auto &ids = members[lemma];
      if (ids.empty() || ids.back() != synset.id) ids.push_back(synset.id);
    }
  }
  for (auto &[lemma, ids] : members) {
    std::vector<SynsetId> ordered;
    auto declared = sense_order_.find(lemma);
    if (declared != sense_order_.end()) {
      for (const SynsetId &id : declared->second) {
        if (!std::binary_search(ids.begin(), ids.end(), id)) {
          throw WordNetError("index lists " + id.ToString() + " for '" +
                             lemma + "' but the synset lacks that lemma");
        }
        if (std::find(ordered.begin(), ordered.end(), id) == ordered.end()) {
          ordered.push_back(id);
        }
      }
    }
    for (const SynsetId &id : ids) {
      if (std::find(ordered.begin(), ordered.end(), id) == ordered.end()) {
        ordered.push_back(id);
      }
    }
    graph.lemma_index_[lemma] = std::move(ordered);
  }
  for (const auto &[lemma, order] : sense_order_) {
    if (!members.count(lemma)) {
      throw WordNetError("index lemma '" + lemma +
                         "' does not occur in any synset");
    }
  }
  return graph;
}

WordNetGraph LoadWordNet(const std::filesystem::path &dict_dir,
                         LoadStats *stats) {
  const std::filesystem::path data_path = dict_dir / "data.noun";
  const std::filesystem::path index_path = dict_dir / "index.noun";
  for (const auto &path : {data_path, index_path}) {
    if (!std::filesystem::is_regular_file(path)) {
      throw WordNetError("missing file " + path.string());
    }
  }

  GraphBuilder builder;
  const std::string data_name = data_path.filename().string();
  ForEachLine(data_path, [&](int line_no, std::string_view line) {
    ParseDataLine(data_name, line_no, line, &builder, stats);
    if (stats) stats->data_lines++;
  });
  const std::string index_name = index_path.filename().string();
  ForEachLine(index_path, [&](int line_no, std::string_view line) {
    ParseIndexLine(index_name, line_no, line, &builder);
    if (stats) stats->index_lines++;
  });
  return std::move(builder).Finish();
}

std::vector<SynsetId> LookupLemma(const WordNetGraph &graph,
                                  std::string_view lemma) {
  return graph.LookupLemma(lemma);
}

std::vector<std::vector<SynsetId>> HypernymPaths(const WordNetGraph &graph,
                                                 SynsetId id) {
  using Node = WordNetGraph::Node;
  std::vector<std::vector<SynsetId>> paths;
  std::vector<Node> stack{graph.NodeOf(id)};
  std::function<void()> walk = [&]() {
    Node node = stack.back();
    const auto &parents = graph.parents(node);
    if (parents.empty()) {
      std::vector<SynsetId> path;
      path.reserve(stack.size());
      for (Node n : stack) path.push_back(graph.at(n).id);
      paths.push_back(std::move(path));
      return;
    }
    for (Node parent : parents) {
      stack.push_back(parent);
      walk();
      stack.pop_back();
    }
  };
  walk();
  std::sort(paths.begin(), paths.end());
  return paths;
}

}  // namespace vco
