#include "cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>

namespace nck {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run_cli(std::vector<std::string> args, const std::string& stdin_text = "") {
  args.insert(args.begin(), "nck");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  std::istringstream in(stdin_text);
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err, in);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("nck_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

const char* lens_problem = R"({"domain": {"kind": "sphere", "m": 4},
  "target": {"kind": "space_form", "n": 3, "group_order": 5},
  "pair": "root", "map_data": {"difference_class": [1]}})";

TEST(Cli, SolveLensSpaceFromStdin) {
  Outcome o = run_cli({"solve", "-"}, lens_problem);
  ASSERT_EQ(o.code, 0) << o.err;
  Json r = Json::parse(o.out);
  EXPECT_EQ(r["MC"], "infinite");
  EXPECT_EQ(r["N_sharp"], (Json{{"finite", 5}}));
  bool cites_finiteness = false;
  for (const auto& p : r["provenance"]) cites_finiteness |= p["rule"] == "space_form_finiteness";
  EXPECT_TRUE(cites_finiteness);
}

TEST(Cli, SolveFromFileIsDeterministic) {
  fs::path dir = scratch_dir("det");
  write_file(dir / "p.json", lens_problem);
  Outcome a = run_cli({"solve", (dir / "p.json").string()});
  Outcome b = run_cli({"solve", (dir / "p.json").string()});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(InvariantReport::from_json(Json::parse(a.out)).to_json().dump(2) + "\n", a.out);
}

TEST(Cli, TextFormat) {
  Outcome o = run_cli({"--format", "text", "solve", "-"}, lens_problem);
  ASSERT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("MC      = infinite"), std::string::npos) << o.out;
}

TEST(Cli, BatchKeepsInputOrder) {
  fs::path dir = scratch_dir("batch");
  write_file(dir / "b.json", std::string("[") + lens_problem +
                                 R"(, {"domain": {"kind": "sphere", "m": 1}, "target": {"kind": "circle"},
                                       "map_data": {"degrees": [7, 3]}}])");
  Outcome o = run_cli({"solve", "--batch", (dir / "b.json").string()});
  ASSERT_EQ(o.code, 0) << o.err;
  Json r = Json::parse(o.out);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0]["N_sharp"], (Json{{"finite", 5}}));
  EXPECT_EQ(r[1]["N"], (Json{{"finite", 4}}));
}

TEST(Cli, BatchReportsBadItemByIndex) {
  Outcome o = run_cli({"solve", "--batch", "-"}, std::string("[") + lens_problem + R"(, {"domain": 3}])");
  EXPECT_EQ(o.code, 2);
  Json r = Json::parse(o.out);
  EXPECT_TRUE(r[0].contains("MC"));
  EXPECT_NE(r[1]["error"].get<std::string>().find("$[1].domain"), std::string::npos) << r[1];
}

TEST(Cli, ValidationErrorNamesField) {
  Outcome o = run_cli({"solve", "-"}, R"({"domain": {"kind": "sphere", "m": 4},
      "target": {"kind": "space_form", "n": 3, "group_order": 5}, "pair": "root", "map_data": {"typo": 1}})");
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.err.find("$.map_data.typo"), std::string::npos) << o.err;
}

TEST(Cli, ContradictionExitsTwoAndNamesRules) {
  Outcome o = run_cli({"solve", "-"}, R"({"domain": {"kind": "sphere", "m": 4},
      "target": {"kind": "space_form", "n": 3, "group_order": 5}, "pair": "root",
      "map_data": {"difference_class": [1]}, "assert": {"mc_finite": true}})");
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.err.find("contradiction"), std::string::npos) << o.err;
  EXPECT_NE(o.err.find("space_form_finiteness"), std::string::npos) << o.err;
}

TEST(Cli, MalformedJsonAndMissingFile) {
  EXPECT_EQ(run_cli({"solve", "-"}, "{not json").code, 2);
  Outcome o = run_cli({"solve", "/nonexistent/problem.json"});
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.err.find("cannot open"), std::string::npos);
}

TEST(Cli, UnknownFlagsAndMissingSubcommandRejected) {
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"solve", "-", "--frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({"tables", "show", "--pi", "3", "2", "--kerh", "4", "3"}).code, 2);
  EXPECT_EQ(run_cli({"--format", "yaml", "selftest"}).code, 2);
}

TEST(Cli, TablesShow) {
  Outcome o = run_cli({"tables", "show", "--pi", "16", "9"});
  ASSERT_EQ(o.code, 0) << o.err;
  Json j = Json::parse(o.out);
  EXPECT_EQ(j["name"], "Z/240");
  EXPECT_FALSE(j["provenance"].get<std::string>().empty());
  Json s = Json::parse(run_cli({"tables", "show", "--suspension", "4", "3"}).out);
  EXPECT_EQ(s["injective"], true);
  EXPECT_EQ(s["surjective"], true);
  Json k = Json::parse(run_cli({"tables", "show", "--kerh", "12", "5"}).out);
  EXPECT_TRUE(k.contains("unknown")) << k;
}

TEST(Cli, OracleTorus) {
  Outcome o = run_cli({"oracle", "torus", "--A", "1 1; 0 1", "--B", "-1 0; -1 -1"});
  ASSERT_EQ(o.code, 0) << o.err;
  Json j = Json::parse(o.out);
  EXPECT_EQ(j["point_count"], 3);
  EXPECT_EQ(j["nielsen_number"], 3);
  EXPECT_EQ(j["points"][1], (Json{"1/3", "1/3"}));
  Outcome bad = run_cli({"oracle", "torus", "--A", "1 1; 0", "--B", "1 0; 0 1"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("A"), std::string::npos);
  EXPECT_EQ(run_cli({"oracle", "torus", "--A", "2", "--B", "0", "--t", "1/x"}).code, 2);
}

TEST(Cli, Groups) {
  const std::string s3 = "gens: a, b; rels: a^2, b^3, a b a b";
  Json idx = Json::parse(run_cli({"groups", "index", "--presentation", s3, "--subgroup", "a"}).out);
  EXPECT_EQ(idx["index"], (Json{{"finite", 3}}));
  Json ab = Json::parse(run_cli({"groups", "abelianize", "--presentation", "gens: a, b; rels: a^4, b^6"}).out);
  EXPECT_EQ(ab["name"], "Z/2 + Z/12");
  // Identity against itself: ordinary conjugacy classes.
  Json rd = Json::parse(run_cli({"groups", "reidemeister", "--presentation", s3, "--phi1", "a, b", "--phi2", "a, b"}).out);
  EXPECT_EQ(rd["reidemeister"], (Json{{"finite", 3}}));
  Outcome bad = run_cli({"groups", "reidemeister", "--presentation", s3, "--phi1", "b, a"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("phi1"), std::string::npos) << bad.err;
  EXPECT_EQ(run_cli({"groups", "index", "--presentation", "gens: a; rels: c", "--subgroup", "a"}).code, 2);
}

TEST(Cli, SelftestPassesOnBundledData) {
  Outcome o = run_cli({"selftest"});
  EXPECT_EQ(o.code, 0) << o.out;
  EXPECT_NE(o.out.find("selftest: pass"), std::string::npos);
}

TEST(Cli, SelftestNamesPerturbedGoldenCase) {
  fs::path dir = scratch_dir("golden");
  for (const auto& e : fs::directory_iterator(cli::default_golden_dir())) fs::copy(e.path(), dir / e.path().filename());
  std::ifstream in(dir / "rp3_nonzero.json");
  Json j = Json::parse(in);
  in.close();
  j["expected"]["MC"] = Json{{"finite", 3}};
  write_file(dir / "rp3_nonzero.json", j.dump());
  Outcome o = run_cli({"selftest", "--golden", dir.string()});
  EXPECT_EQ(o.code, 1);
  EXPECT_NE(o.out.find("FAIL golden rp3_nonzero"), std::string::npos) << o.out;
}

int run_binary(const std::string& env, const std::string& args, std::string& output) {
  std::string cmd = env + " '" + NCK_BINARY + "' " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  char buf[512];
  while (std::fgets(buf, sizeof buf, pipe)) output += buf;
  int status = pclose(pipe);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Cli, BinaryExitCodes) {
  std::string out;
  EXPECT_EQ(run_binary("", "tables show --pi 3 2", out), 0);
  EXPECT_NE(out.find("\"Z\""), std::string::npos) << out;
  out.clear();
  EXPECT_EQ(run_binary("", "solve /nonexistent.json", out), 2);
}

TEST(Cli, CorruptedTableFailsSelftestWithLoaderDiagnostic) {
  fs::path dir = scratch_dir("table");
  std::ifstream in(SphereTable::default_path());
  Json t = Json::parse(in);
  for (auto& g : t["groups"])
    if (g["m"] == 10 && g["n"] == 4) g["torsion"] = {24, 3};
  write_file(dir / "bad.json", t.dump());
  std::string out;
  int code = run_binary("NCK_TABLES='" + (dir / "bad.json").string() + "'", "selftest", out);
  EXPECT_EQ(code, 2);
  EXPECT_NE(out.find("divisibility"), std::string::npos) << out;
}

}  // namespace
}  // namespace nck
