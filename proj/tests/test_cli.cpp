#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <unistd.h>

#include "rodcut/cli.hpp"

using namespace rodcut;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run rodcut_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "rodcut");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("rodcut_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& body) {
    const auto path = (dir_ / name).string();
    std::ofstream(path, std::ios::binary) << body;
    return path;
  }

  std::string gadget() { return std::string(RODCUT_DATA_DIR) + "/triple.json"; }

  fs::path dir_;
};

const char* kNoCrossing = R"({"segments": [
  {"id": "a", "p": ["0", "0", "0"], "q": ["1", "0", "0"]},
  {"id": "b", "p": ["0", "1", "0"], "q": ["1", "1", "0"]}]})";

const char* kOverlap = R"({"segments": [
  {"id": "a", "p": ["0", "0", "0"], "q": ["2", "0", "0"]},
  {"id": "b", "p": ["1", "0", "1"], "q": ["3", "0", "1"]}]})";

}  // namespace

TEST_F(Cli, CheckGadgetIsCyclic) {
  const auto r = rodcut_cli({"check", "-i", gadget()});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "crossings: 3\ncyclic: s1 ≻ s2 ≻ s3 ≻ s1\n");
}

TEST_F(Cli, CheckNoCrossingAndDegenerate) {
  EXPECT_EQ(rodcut_cli({"check", "-i", write("none.json", kNoCrossing)}).code, 0);
  const auto bad = rodcut_cli({"check", "-i", write("overlap.json", kOverlap)});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("collinear"), std::string::npos);
  EXPECT_EQ(rodcut_cli({"check", "-i", write("junk.json", "{not json")}).code, 3);
  EXPECT_EQ(rodcut_cli({"check", "-i", write("coord.json", R"({"segments":[{"id":"a","p":["1e3","0","0"],"q":["1","1","1"]}]})")}).code, 3);
  EXPECT_EQ(rodcut_cli({"check", "-i", (dir_ / "missing.json").string()}).code, 3);
  const auto vertical = write("v.json", R"({"segments":[{"id":"a","p":["1","1","0"],"q":["1","1","4"]}]})");
  EXPECT_EQ(rodcut_cli({"check", "-i", vertical}).code, 2);
}

TEST_F(Cli, SolveGadget) {
  EXPECT_EQ(rodcut_cli({"solve", "-i", gadget(), "-k", "0"}).code, 1);
  const auto r = rodcut_cli({"solve", "-i", gadget(), "--min"});
  ASSERT_EQ(r.code, 0);
  const CutSet cuts = parse_cuts(r.out);
  EXPECT_EQ(cuts.size(), 1u);
  EXPECT_NE(r.out.find("\"count\": 1"), std::string::npos);
  const auto k1 = rodcut_cli({"solve", "-i", gadget(), "-k", "1"});
  EXPECT_EQ(k1.code, 0);
  EXPECT_EQ(k1.out, r.out);

  const auto none = rodcut_cli({"solve", "-i", write("none.json", kNoCrossing), "--min"});
  EXPECT_EQ(none.code, 0);
  EXPECT_EQ(parse_cuts(none.out).size(), 0u);

  EXPECT_EQ(rodcut_cli({"solve", "-i", gadget()}).code, 3);
  EXPECT_EQ(rodcut_cli({"solve", "-i", gadget(), "-k", "1", "--min"}).code, 3);
  EXPECT_EQ(rodcut_cli({"solve", "-i", write("overlap.json", kOverlap), "--min"}).code, 2);
}

TEST_F(Cli, SolveResourceLimit) {
  const auto weave = rodcut_cli({"gen", "--kind", "weave", "--rows", "4", "--cols", "4", "--seed", "3"});
  const auto path = write("weave.json", weave.out);
  const auto r = rodcut_cli({"solve", "-i", path, "--min", "--node-budget", "1"});
  EXPECT_EQ(r.code, 4);
}

TEST_F(Cli, GraphDot) {
  const auto r = rodcut_cli({"graph", "-i", gadget(), "--dot"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "digraph G_S {\n"
            "  \"s1_1\";\n  \"s1_2\";\n  \"s2_1\";\n  \"s2_2\";\n  \"s3_1\";\n  \"s3_2\";\n"
            "  \"s1_1\" -> \"s1_2\" [dir=none];\n"
            "  \"s2_1\" -> \"s2_2\" [dir=none];\n"
            "  \"s3_1\" -> \"s3_2\" [dir=none];\n"
            "  \"s1_1\" -> \"s2_1\";\n"
            "  \"s2_2\" -> \"s3_2\";\n"
            "  \"s3_1\" -> \"s1_2\";\n"
            "}\n");
  EXPECT_EQ(rodcut_cli({"graph", "-i", gadget(), "--dot"}).out, r.out);
  EXPECT_EQ(rodcut_cli({"graph", "-i", write("empty.json", R"({"segments": []})"), "--dot"}).out, "digraph G_S {\n}\n");
  EXPECT_EQ(rodcut_cli({"graph", "-i", gadget()}).out, "vertices: 6\nedges: 3\narcs: 3\n");
}

TEST_F(Cli, Verify) {
  const auto solved = write("cuts.json", rodcut_cli({"solve", "-i", gadget(), "--min"}).out);
  EXPECT_EQ(rodcut_cli({"verify", "-i", gadget(), "--cuts", solved}).code, 0);

  const auto empty = write("empty.json", R"({"cuts": [], "count": 0})");
  const auto r = rodcut_cli({"verify", "-i", gadget(), "--cuts", empty});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out, "cyclic: s1 ≻ s2 ≻ s3 ≻ s1\n");

  const auto rank9 = write("r9.json", R"({"cuts": [{"segment": "s1", "rank": 9, "point": ["0", "0"], "z": "2"}], "count": 1})");
  EXPECT_EQ(rodcut_cli({"verify", "-i", gadget(), "--cuts", rank9}).code, 3);
  const auto moved = write("mv.json", R"({"cuts": [{"segment": "s1", "rank": 1, "point": ["1", "0"], "z": "2"}], "count": 1})");
  EXPECT_EQ(rodcut_cli({"verify", "-i", gadget(), "--cuts", moved}).code, 3);
  const auto miscount = write("mc.json", R"({"cuts": [], "count": 2})");
  EXPECT_EQ(rodcut_cli({"verify", "-i", gadget(), "--cuts", miscount}).code, 3);

  // one cut on any rod of the loop is enough
  const auto s2 = write("s2.json", R"({"cuts": [{"segment": "s2", "rank": 2, "point": ["7/3", "5/3"], "z": "4"}], "count": 1})");
  const auto p = rodcut_cli({"verify", "-i", gadget(), "--cuts", s2});
  EXPECT_EQ(p.code, 0);
}

TEST_F(Cli, GenTripleMatchesCanonicalDocument) {
  std::ifstream in(gadget(), std::ios::binary);
  const std::string canonical{std::istreambuf_iterator<char>(in), {}};
  EXPECT_EQ(rodcut_cli({"gen", "--kind", "triple"}).out, canonical);
  EXPECT_EQ(rodcut_cli({"gen", "--kind", "bogus"}).code, 3);
}

TEST_F(Cli, GenIsDeterministic) {
  for (const char* kind : {"random", "weave"}) {
    const auto a = rodcut_cli({"gen", "--kind", kind, "--seed", "42", "-n", "9", "--rows", "3", "--cols", "2"});
    const auto b = rodcut_cli({"gen", "--kind", kind, "--seed", "42", "-n", "9", "--rows", "3", "--cols", "2"});
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(emit_instance(parse_instance(a.out)), a.out);
  }
}

TEST_F(Cli, Render) {
  const auto r = rodcut_cli({"render", "-i", gadget()});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(count(r.out, "<polyline"), 3u);
  EXPECT_EQ(count(r.out, "class=\"crossing\""), 3u);
  EXPECT_EQ(count(r.out, "class=\"cut\""), 0u);
  EXPECT_EQ(r.out.rfind("<svg", 0), 0u);

  const auto cuts = write("cuts.json", rodcut_cli({"solve", "-i", gadget(), "--min"}).out);
  const auto with = rodcut_cli({"render", "-i", gadget(), "--cuts", cuts});
  EXPECT_EQ(count(with.out, "class=\"cut\""), 1u);
  EXPECT_EQ(rodcut_cli({"render", "-i", gadget(), "--cuts", cuts}).out, with.out);
}

TEST_F(Cli, ThreadsDoNotChangeOutput) {
  const auto path = write("w.json", rodcut_cli({"gen", "--kind", "weave", "--rows", "3", "--cols", "3", "--seed", "7"}).out);
  const auto one = rodcut_cli({"solve", "-i", path, "--min"});
  const auto four = rodcut_cli({"solve", "-i", path, "--min", "--threads", "4"});
  EXPECT_EQ(one.code, 0);
  EXPECT_EQ(one.out, four.out);
}

TEST(Documents, RoundTrip) {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    GenSpec spec;
    spec.count = 6;
    spec.seed = seed;
    spec.lo = -9, spec.hi = 9;
    const auto segs = gen_random(spec);
    EXPECT_EQ(parse_instance(emit_instance(segs)), segs);
    const auto dg = build_depth_graph(segs);
    const CutSet all = cut_everything(dg.index);
    EXPECT_EQ(parse_cuts(emit_cuts(all)), all);
  }
  const auto frac = parse_instance(R"({"segments":[{"id":"x","p":["0.5","-1/3","2"],"q":["3","4","-0.25"]}]})");
  EXPECT_EQ(parse_instance(emit_instance(frac)), frac);
  EXPECT_NE(emit_instance(frac).find("\"-1/3\""), std::string::npos);
}
