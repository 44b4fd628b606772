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

#include <unistd.h>

#include <fstream>
#include <random>
#include <set>

#include "doctest.h"
#include "testing.h"
#include "vco/wordnet.h"

namespace vco {
namespace {

using testing::Id;

// Scratch dict directory removed on destruction.
class ScratchDict {
 public:
  ScratchDict() {
    static int counter = 0;
    dir_ = std::filesystem::temp_directory_path() /
           ("vco-wordnet-test-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter++));
    std::filesystem::create_directories(dir_);
  }
  ~ScratchDict() { std::filesystem::remove_all(dir_); }

  void Write(const std::string &name, const std::string &content) {
    std::ofstream(dir_ / name, std::ios::binary) << content;
  }
  const std::filesystem::path &dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
};

const char kLicense[] = "  1 license header line\n  2 more header\n";

std::string LoadError(const ScratchDict &dict) {
  try {
    LoadWordNet(dict.dir());
  } catch (const WordNetError &e) {
    return e.what();
  }
  return "";
}

TEST_CASE("tiny fixture loads field by field") {
  WordNetGraph graph = LoadWordNet(testing::TinyDir());

  struct Expected {
    uint32_t offset;
    std::vector<std::string> lemmas;
    std::vector<uint32_t> hypernyms;
    std::vector<uint32_t> hyponyms;
  };
  const std::vector<Expected> expected = {
      {1, {"entity"}, {}, {2}},
      {2, {"object", "physical_object"}, {1}, {3, 6}},
      {3, {"animal", "beast"}, {2}, {4, 5}},
      {4, {"dog"}, {3}, {}},
      {5, {"cat"}, {3}, {}},
      {6, {"plant", "flora"}, {2}, {7}},
      {7, {"tree"}, {6}, {}},
  };
  REQUIRE(graph.size() == 7);
  CHECK(graph.root() == Id(1));
  for (size_t i = 0; i < expected.size(); ++i) {
    const Synset &synset = graph.at(WordNetGraph::Node(i));
    CAPTURE(i);
    CHECK(synset.id == Id(expected[i].offset));
    CHECK(synset.lemmas == expected[i].lemmas);
    std::vector<SynsetRef> hypernyms, hyponyms;
    for (uint32_t o : expected[i].hypernyms) hypernyms.push_back({Id(o), false});
    for (uint32_t o : expected[i].hyponyms) hyponyms.push_back({Id(o), false});
    CHECK(synset.hypernyms == hypernyms);
    CHECK(synset.hyponyms == hyponyms);
  }
  CHECK(graph.Get(Id(4)).gloss == "a domesticated canine");
  CHECK(LookupLemma(graph, "dog") == std::vector<SynsetId>{Id(4)});
  CHECK(graph.lemma_index().size() == 10);
}

TEST_CASE("synset ids render and parse") {
  CHECK(Id(2084071).ToString() == "n02084071");
  CHECK(Id(1740).OffsetString() == "00001740");
  CHECK(SynsetId::Parse("n02084071") == Id(2084071));
  CHECK(SynsetId::Parse("02084071") == Id(2084071));
  CHECK_FALSE(SynsetId::Parse("n2084071").has_value());
  CHECK_FALSE(SynsetId::Parse("v0208407x").has_value());
}

TEST_CASE("lemma normalization") {
  CHECK(NormalizeLemma("White Rhinoceros") == "white_rhinoceros");
  CHECK(NormalizeLemma("  river   Thames ") == "river_thames");
  CHECK(NormalizeLemma("") == "");
}

TEST_CASE("lookup_lemma") {
  WordNetGraph graph = LoadWordNet(testing::MiniDir());
  CHECK(LookupLemma(graph, "zzzz-not-a-word").empty());
  CHECK(LookupLemma(graph, "entity") == std::vector<SynsetId>{graph.root()});
  CHECK(LookupLemma(graph, "Domestic Dog") == std::vector<SynsetId>{Id(5)});
  SUBCASE("sense order follows index.noun, not offsets") {
    CHECK(LookupLemma(graph, "mouse") == std::vector<SynsetId>{Id(22), Id(8)});
  }
  SUBCASE("index covers every lemma of every synset and nothing else") {
    std::map<std::string, std::set<SynsetId>> brute;
    for (const Synset &s : graph.synsets()) {
      for (const std::string &l : s.lemmas) brute[l].insert(s.id);
    }
    CHECK(brute.size() == graph.lemma_index().size());
    for (const auto &[lemma, ids] : graph.lemma_index()) {
      CHECK(std::set<SynsetId>(ids.begin(), ids.end()) == brute[lemma]);
    }
  }
}

TEST_CASE("instance hypernyms are flagged") {
  WordNetGraph graph = LoadWordNet(testing::MiniDir());
  const Synset &thames = graph.Get(Id(25));
  REQUIRE(thames.hypernyms.size() == 1);
  CHECK(thames.hypernyms[0].instance);
  CHECK(thames.lemmas ==
        std::vector<std::string>{"thames", "river_thames", "thames_river"});
  const Synset &river = graph.Get(Id(24));
  CHECK(river.hyponyms == std::vector<SynsetRef>{{Id(25), true}});
}

TEST_CASE("hypernym_paths") {
  WordNetGraph tiny = LoadWordNet(testing::TinyDir());
  CHECK(HypernymPaths(tiny, tiny.root()) ==
        std::vector<std::vector<SynsetId>>{{tiny.root()}});
  CHECK(HypernymPaths(tiny, Id(4)) ==
        std::vector<std::vector<SynsetId>>{{Id(4), Id(3), Id(2), Id(1)}});
  CHECK_THROWS_AS(HypernymPaths(tiny, Id(99)), WordNetError);

  WordNetGraph mini = LoadWordNet(testing::MiniDir());
  // houseboat sits under both house and vehicle.
  CHECK(HypernymPaths(mini, Id(20)) ==
        std::vector<std::vector<SynsetId>>{
            {Id(20), Id(14), Id(13), Id(12), Id(2), Id(1)},
            {Id(20), Id(18), Id(17), Id(12), Id(2), Id(1)}});
}

TEST_CASE("hypernym paths are well formed on random DAGs") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    testing::RandomDag dag = testing::MakeRandomDag(rng, 25, 2);
    for (const Synset &synset : dag.graph.synsets()) {
      auto paths = HypernymPaths(dag.graph, synset.id);
      CHECK(std::is_sorted(paths.begin(), paths.end()));
      CHECK(std::set(paths.begin(), paths.end()).size() == paths.size());
      for (const auto &path : paths) {
        CHECK(path.front() == synset.id);
        CHECK(path.back() == dag.graph.root());
        for (size_t i = 0; i + 1 < path.size(); ++i) {
          const auto &hypers = dag.graph.Get(path[i]).hypernyms;
          CHECK(std::any_of(hypers.begin(), hypers.end(), [&](auto &r) {
            return r.target == path[i + 1];
          }));
        }
      }
    }
  }
}

TEST_CASE("graph invariants hold on random DAGs") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    testing::RandomDag dag = testing::MakeRandomDag(rng, 200, 3);
    const WordNetGraph &g = dag.graph;
    size_t roots = 0;
    for (const Synset &s : g.synsets()) {
      roots += s.hypernyms.empty();
      for (const SynsetRef &h : s.hypernyms) {
        const auto &back = g.Get(h.target).hyponyms;
        CHECK(std::count(back.begin(), back.end(), SynsetRef{s.id, h.instance}) ==
              1);
      }
      for (const SynsetRef &h : s.hyponyms) {
        const auto &back = g.Get(h.target).hypernyms;
        CHECK(std::count(back.begin(), back.end(), SynsetRef{s.id, h.instance}) ==
              1);
      }
      for (const std::string &l : s.lemmas) {
        auto ids = g.LookupLemma(l);
        CHECK(std::find(ids.begin(), ids.end(), s.id) != ids.end());
      }
    }
    CHECK(roots == 1);
  }
}

TEST_CASE("loading twice gives identical graphs") {
  CHECK(LoadWordNet(testing::MiniDir()) == LoadWordNet(testing::MiniDir()));
}

TEST_CASE("load errors") {
  SUBCASE("missing files") {
    ScratchDict dict;
    CHECK(LoadError(dict).find("missing file") != std::string::npos);
    dict.Write("data.noun", kLicense);
    CHECK(LoadError(dict).find("index.noun") != std::string::npos);
  }
  SUBCASE("headers only") {
    ScratchDict dict;
    dict.Write("data.noun", kLicense);
    dict.Write("index.noun", kLicense);
    CHECK(LoadError(dict).find("zero or multiple roots") != std::string::npos);
  }
  SUBCASE("malformed line reports file, line and field") {
    ScratchDict dict;
    dict.Write("data.noun", std::string(kLicense) +
                                "00000001 03 n 01 entity 0 000 | root\n"
                                "00000002 03 n 01 thing 0 0x1 | broken\n");
    dict.Write("index.noun", kLicense);
    try {
      LoadWordNet(dict.dir());
      FAIL("expected an error");
    } catch (const WordNetError &e) {
      CHECK(e.file() == "data.noun");
      CHECK(e.line() == 4);
      CHECK(e.field() == "p_cnt");
    }
  }
  SUBCASE("truncated pointer") {
    ScratchDict dict;
    dict.Write("data.noun", "00000001 03 n 01 entity 0 001 ~ 00000002 | x\n");
    dict.Write("index.noun", "");
    try {
      LoadWordNet(dict.dir());
      FAIL("expected an error");
    } catch (const WordNetError &e) {
      CHECK(e.field() == "pointer_pos");
    }
  }
  SUBCASE("non-noun synsets are rejected") {
    ScratchDict dict;
    dict.Write("data.noun", "00000001 29 v 01 run 0 000 | move fast\n");
    dict.Write("index.noun", "");
    CHECK(LoadError(dict).find("ss_type") != std::string::npos);
  }
  SUBCASE("dangling pointer") {
    ScratchDict dict;
    dict.Write("data.noun",
               "00000001 03 n 01 entity 0 001 ~ 00000009 n 0000 | root\n");
    dict.Write("index.noun", "");
    CHECK(LoadError(dict).find("dangling pointer n00000001 -> n00000009") !=
          std::string::npos);
  }
  SUBCASE("asymmetric pointers") {
    ScratchDict dict;
    dict.Write("data.noun",
               "00000001 03 n 01 entity 0 000 | root\n"
               "00000002 03 n 01 thing 0 001 @ 00000001 n 0000 | child\n");
    dict.Write("index.noun", "");
    CHECK(LoadError(dict).find("asymmetric") != std::string::npos);
  }
  SUBCASE("index referencing unknown synset") {
    ScratchDict dict;
    dict.Write("data.noun", "00000001 03 n 01 entity 0 000 | root\n");
    dict.Write("index.noun", "entity n 1 0 1 0 00000002\n");
    try {
      LoadWordNet(dict.dir());
      FAIL("expected an error");
    } catch (const WordNetError &e) {
      CHECK(e.file() == "index.noun");
      CHECK(e.line() == 1);
    }
  }
}

TEST_CASE("builder rejects cycles and multiple roots") {
  auto synset = [](uint32_t offset) {
    Synset s;
    s.id = Id(offset);
    s.lemmas = {"s" + std::to_string(offset)};
    return s;
  };
  SUBCASE("cycle below a unique root") {
    GraphBuilder builder;
    for (uint32_t i = 1; i <= 3; ++i) builder.Add(synset(i));
    builder.Link(Id(2), Id(1));
    builder.Link(Id(3), Id(2));
    builder.Link(Id(2), Id(3));
    CHECK_THROWS_WITH_AS(std::move(builder).Finish(),
                         doctest::Contains("cyclic hypernym chain"),
                         WordNetError);
  }
  SUBCASE("two roots") {
    GraphBuilder builder;
    builder.Add(synset(1));
    builder.Add(synset(2));
    CHECK_THROWS_WITH_AS(std::move(builder).Finish(),
                         doctest::Contains("zero or multiple roots"),
                         WordNetError);
  }
  SUBCASE("duplicate synset") {
    GraphBuilder builder;
    builder.Add(synset(1));
    CHECK_THROWS_AS(builder.Add(synset(1)), WordNetError);
  }
}

TEST_CASE("meronyms, holonyms and ignored pointers") {
  ScratchDict dict;
  dict.Write("data.noun",
             "00000001 03 n 01 entity 0 002 ~ 00000002 n 0000 ~ 00000003 n "
             "0000 | root\n"
             "00000002 06 n 01 house 0 003 @ 00000001 n 0000 %p 00000003 n "
             "0000 + 01234567 v 0101 | a dwelling\n"
             "00000003 06 n 01 roof 0 002 @ 00000001 n 0000 #p 00000002 n "
             "0000 | a cover\n");
  dict.Write("index.noun", "house n 1 0 1 0 00000002\n");
  LoadStats stats;
  WordNetGraph graph = LoadWordNet(dict.dir(), &stats);
  CHECK(graph.Get(Id(2)).meronyms ==
        std::vector<PartRef>{{Id(3), PartKind::kPart}});
  CHECK(graph.Get(Id(3)).holonyms ==
        std::vector<PartRef>{{Id(2), PartKind::kPart}});
  CHECK(stats.ignored_pointers["+"] == 1);
  CHECK(stats.data_lines == 3);
  CHECK(stats.index_lines == 1);
}

}  // namespace
}  // namespace vco
