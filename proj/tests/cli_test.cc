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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.h"
#include "doctest.h"
#include "json.hpp"
#include "testing.h"
#include "vco/owl.h"

namespace vco {
namespace {

namespace fs = std::filesystem;

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result Run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int status = cli::Run(args, out, err);
  return {status, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("vco_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path Write(const std::string &name, const std::string &text) const {
    fs::path p = path_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
  }
  const fs::path &path() const { return path_; }

 private:
  fs::path path_;
};

const std::string kMini = testing::MiniDir().string();
const std::string kManifest = testing::MiniManifest().string();

constexpr char kNeighbors[] =
    "#image_id\tsimilarity\tkeywords\n"
    "img1\t0.9\tdog;poodle;house\n"
    "img2\t0.5\troof;car\n"
    "img3\t0.25\tmouse;zebra\n";

constexpr char kVocabulary[] =
    "dog\ncar\nmouse\nzebra\n"
    "class:animals\nclass:dogs\nclass:buildings\nclass:vehicles\n";

TEST_CASE("usage errors exit 1") {
  CHECK(Run({}).status == cli::kExitUsage);
  CHECK(Run({"frobnicate"}).status == cli::kExitUsage);
  Result negative =
      Run({"candidates", "--wordnet", kMini, "--threshold", "-1"});
  CHECK(negative.status == cli::kExitUsage);
  CHECK(negative.out.empty());
  CHECK(!negative.err.empty());
  CHECK(Run({"candidates", "--wordnet", kMini, "--threshold", "many"}).status ==
        cli::kExitUsage);
  CHECK(Run({"build", "--wordnet", kMini}).status == cli::kExitUsage);
  CHECK(Run({"candidates", "--wordnet", "/nonexistent"}).status ==
        cli::kExitUsage);
  CHECK(Run({"map-keywords", "--wordnet", kMini, "--manifest", kManifest})
            .status == cli::kExitUsage);
  CHECK(Run({"annotate", "--wordnet", kMini, "--level", "top"}).status ==
        cli::kExitUsage);
  CHECK(Run({"--help"}).status == cli::kExitOk);
}

TEST_CASE("data errors exit 2 with located diagnostics") {
  TempDir tmp;
  fs::path bad = tmp.Write("bad.yaml", "manifest_version: 1\nclasses: [1\n");
  Result r = Run({"validate", "--manifest", bad.string()});
  CHECK(r.status == cli::kExitData);
  CHECK(r.err.find("manifest:") != std::string::npos);

  fs::path neighbors = tmp.Write("n.tsv", "#image_id\tsimilarity\tkeywords\n"
                                          "a\t7\tdog\n");
  fs::path vocabulary = tmp.Write("v.txt", kVocabulary);
  Result n = Run({"annotate", "--wordnet", kMini, "--manifest", kManifest,
                  "--neighbors", neighbors.string(), "--vocabulary",
                  vocabulary.string()});
  CHECK(n.status == cli::kExitData);
  CHECK(n.err.find("neighbors:2") != std::string::npos);

  fs::path empty = tmp.path() / "empty_wordnet";
  fs::create_directories(empty);
  CHECK(Run({"stats", "--wordnet", empty.string()}).status == cli::kExitData);
}

TEST_CASE("candidates and stats") {
  Result r = Run({"candidates", "--wordnet", kMini, "--threshold", "5"});
  REQUIRE(r.status == cli::kExitOk);
  // entity 31, object 23, artifact 10, living_thing 8, abstraction 6.
  CHECK(r.out ==
        "#offset\tlemma\thyponyms\n"
        "00000001\tentity\t31\n"
        "00000002\tobject\t23\n"
        "00000012\tartifact\t10\n"
        "00000003\tliving_thing\t8\n"
        "00000026\tabstraction\t6\n");

  Result s = Run({"stats", "--wordnet", kMini, "--threshold", "5"});
  REQUIRE(s.status == cli::kExitOk);
  CHECK(s.out.find("#synsets\t32\n") != std::string::npos);
  CHECK(s.out.find("#candidate_count\t5\n") != std::string::npos);

  Result j = Run({"candidates", "--wordnet", kMini, "--threshold", "5",
                  "--json"});
  auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["threshold"] == 5);
  CHECK(doc["candidates"].size() == 5);
  CHECK(doc["candidates"][0]["lemma"] == "entity");
}

TEST_CASE("map-keywords") {
  Result r = Run({"map-keywords", "--wordnet", kMini, "--manifest", kManifest,
                  "--keywords", "roof,house"});
  REQUIRE(r.status == cli::kExitOk);
  CHECK(r.out ==
        "#image_id\tstatus\tclass\tkeywords\n"
        "query\tcovering\tbuildings\thouse;roof\n");

  TempDir tmp;
  fs::path neighbors = tmp.Write("n.tsv", kNeighbors);
  Result n = Run({"map-keywords", "--wordnet", kMini, "--manifest", kManifest,
                  "--neighbors", neighbors.string()});
  REQUIRE(n.status == cli::kExitOk);
  CHECK(n.out.find("img3\tunmapped\t-\tzebra\n") != std::string::npos);
  CHECK(n.out.find("img3\tcovering\tdevices\tmouse\n") != std::string::npos);
}

TEST_CASE("validate and build") {
  Result v = Run({"validate", "--manifest", kManifest});
  CHECK(v.status == cli::kExitOk);
  CHECK(v.out.find("level\tsuper\t4\n") != std::string::npos);

  TempDir tmp;
  fs::path broken = tmp.Write("broken.yaml",
                              "manifest_version: 1\n"
                              "classes:\n"
                              "  - {id: a, level: sub}\n");
  Result b = Run({"validate", "--manifest", broken.string()});
  CHECK(b.status == cli::kExitData);
  CHECK(b.out.find("violation") != std::string::npos);

  Result build = Run({"build", "--wordnet", kMini, "--manifest", kManifest,
                      "--threshold", "2"});
  REQUIRE(build.status == cli::kExitOk);
  CHECK(build.out.find("class\tdogs\tsub\tanimals\tDogs\n") !=
        std::string::npos);
  CHECK(build.err.find("n00000017 (conveyance)") != std::string::npos);
}

TEST_CASE("export-owl writes to --out") {
  TempDir tmp;
  fs::path out = tmp.path() / "vco.ttl";
  Result r = Run({"export-owl", "--wordnet", kMini, "--manifest", kManifest,
                  "--out", out.string(), "--iri", "http://example.org/test"});
  REQUIRE(r.status == cli::kExitOk);
  CHECK(r.out.empty());
  OwlCounts counts = CountOwlEntities(testing::ReadFile(out));
  CHECK(counts == OwlCounts{15, 16, 16});
  CHECK(Run({"export-owl", "--wordnet", kMini, "--manifest", kManifest,
             "--iri", "relative"})
            .status == cli::kExitUsage);
}

TEST_CASE("annotate") {
  TempDir tmp;
  fs::path neighbors = tmp.Write("n.tsv", kNeighbors);
  fs::path vocabulary = tmp.Write("v.txt", kVocabulary);
  Result r = Run({"annotate", "--wordnet", kMini, "--manifest", kManifest,
                  "--neighbors", neighbors.string(), "--vocabulary",
                  vocabulary.string()});
  REQUIRE(r.status == cli::kExitOk);
  // dog and class:dogs get img1 (0.9); buildings img1 + img2 (1.4).
  CHECK(r.out.rfind("#concept\tscore\tevidence\n"
                    "class:buildings\t1.000000\t1.400000\n",
                    0) == 0);
  CHECK(r.out.find("zebra\t0.178571\t0.250000\n") != std::string::npos);

  Result level = Run({"annotate", "--wordnet", kMini, "--manifest", kManifest,
                      "--neighbors", neighbors.string(), "--vocabulary",
                      vocabulary.string(), "--level", "super"});
  REQUIRE(level.status == cli::kExitOk);
  CHECK(level.out ==
        "#class\tscore\n"
        "object\t1.000000\n"
        "nature\t0.642857\n");

  // Word-only vocabularies do not need a manifest.
  fs::path words = tmp.Write("w.txt", "dog\nmouse\n");
  Result w = Run({"annotate", "--wordnet", kMini, "--neighbors",
                  neighbors.string(), "--vocabulary", words.string()});
  CHECK(w.status == cli::kExitOk);
  CHECK(w.out ==
        "#concept\tscore\tevidence\n"
        "dog\t1.000000\t0.900000\n"
        "mouse\t0.277778\t0.250000\n");
}

TEST_CASE("every subcommand is byte-deterministic") {
  TempDir tmp;
  std::string neighbors = tmp.Write("n.tsv", kNeighbors).string();
  std::string vocabulary = tmp.Write("v.txt", kVocabulary).string();
  const std::vector<std::vector<std::string>> commands = {
      {"stats", "--wordnet", kMini, "--threshold", "2"},
      {"candidates", "--wordnet", kMini, "--threshold", "0"},
      {"build", "--wordnet", kMini, "--manifest", kManifest},
      {"validate", "--manifest", kManifest},
      {"export-owl", "--wordnet", kMini, "--manifest", kManifest},
      {"map-keywords", "--wordnet", kMini, "--manifest", kManifest,
       "--neighbors", neighbors},
      {"annotate", "--wordnet", kMini, "--manifest", kManifest, "--neighbors",
       neighbors, "--vocabulary", vocabulary},
  };
  for (const auto &command : commands) {
    for (bool json : {false, true}) {
      std::vector<std::string> args = command;
      if (json) args.push_back("--json");
      Result first = Run(args), second = Run(args);
      CAPTURE(command[0]);
      CHECK(first.status == cli::kExitOk);
      CHECK(!first.out.empty());
      CHECK(first.out == second.out);
      if (json && command[0] != "export-owl") {
        CHECK(nlohmann::json::accept(first.out));
      }
    }
  }
}

}  // namespace
}  // namespace vco
