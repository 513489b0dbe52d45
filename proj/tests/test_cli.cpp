#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ssb/cli.hpp"

using namespace ssb;

namespace {

const std::string kData = SSB_DATA_DIR;

std::string data(const std::string& name) { return kData + "/" + name; }

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "ssb_test_cli";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "ssb");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

RunConfig analyze(const std::string& group, const std::string& subgroup) {
  RunConfig cfg;
  cfg.input = data(group + ".json");
  cfg.subgroup = subgroup;
  return cfg;
}

RunConfig scenario(const std::string& name) {
  RunConfig cfg;
  cfg.input = data(name + ".json");
  return cfg;
}

}  // namespace

TEST(Report, FloatsAreFixedPrecision) {
  EXPECT_EQ(format_double(0.5), "5.000000000000e-01");
  EXPECT_EQ(format_double(-0.0), "0.000000000000e+00");
  EXPECT_EQ(format_double(std::nan("")), "null");
  EXPECT_EQ(format_double(-1e300 * 1e10), "null");
}

TEST(Report, JsonIsSortedAndRoundTrips) {
  json doc;
  doc["zeta"] = 1;
  doc["alpha"] = json{{"b", 2.5}, {"a", "text"}};
  doc["rows"] = json::array({json::array({1.0, 0.0}), json::array({0.0, -1.0})});
  doc["list"] = json::array({json{{"k", 1}}, json{{"k", 2}}});
  const std::string out = emit_json(doc);
  EXPECT_LT(out.find("\"alpha\""), out.find("\"zeta\""));
  EXPECT_NE(out.find("[[1.000000000000e+00, 0.000000000000e+00], [0.000000000000e+00, -1.000000000000e+00]]"),
            std::string::npos);
  EXPECT_EQ(out.back(), '\n');
  EXPECT_EQ(json::parse(out), doc);
  EXPECT_EQ(emit_json(json::parse(out)), out);
  EXPECT_EQ(emit_json(json::object()), "{}\n");
}

TEST(Report, TextRendersTables) {
  json doc;
  doc["name"] = "demo";
  doc["rows"] = json::array({json{{"fiber", 0}, {"spread", 0.25}}, json{{"fiber", 1}, {"spread", 1.0}}});
  doc["nested"] = json{{"x", 1}};
  const std::string text = emit_text(doc);
  EXPECT_NE(text.find("name: demo\n"), std::string::npos);
  EXPECT_NE(text.find("fiber  spread"), std::string::npos);
  EXPECT_NE(text.find("-----  ------"), std::string::npos);
  EXPECT_NE(text.find("nested:\n  x: 1\n"), std::string::npos);
  EXPECT_THROW(parse_format("yaml"), InputError);
  EXPECT_EQ(parse_format("text"), ReportFormat::Text);
}

TEST(RunSectorAnalysis, S3OverZ3) {
  const RunResult r = run_sector_analysis(analyze("S3", "Z3"));
  EXPECT_TRUE(r.verified);
  EXPECT_EQ(r.report["sector_spectrum"]["points"], 8);
  EXPECT_EQ(r.report["dimensions"]["F_hat"], 72);
  EXPECT_EQ(r.report["symmetry"]["G_translation"]["status"], "Broken");
  EXPECT_EQ(r.report["symmetry"]["H_translation"]["status"], "Unbroken");
  EXPECT_EQ(r.report["phase_diagram"].size(), 1u);
  for (const auto& c : r.report["verification"]["checks"]) EXPECT_TRUE(c["passed"].get<bool>()) << c["name"];
}

TEST(RunSectorAnalysis, NonRegularRepresentation) {
  RunConfig cfg = analyze("S3", "Z2");
  cfg.rep = "standard+sign";
  const RunResult r = run_sector_analysis(cfg);
  EXPECT_TRUE(r.verified);
  EXPECT_EQ(r.report["representation"]["dim"], 3);
  cfg.rep = "standard+nonsense";
  EXPECT_THROW(run_sector_analysis(cfg), InputError);
}

TEST(RunSectorAnalysis, InputErrors) {
  EXPECT_THROW(run_sector_analysis(analyze("S3", "Z7")), InputError);
  EXPECT_THROW(run_sector_analysis(analyze("missing", "Z2")), InputError);
  RunConfig cfg = analyze("S3", "Z2");
  cfg.tolerance = -1.0;
  EXPECT_THROW(run_sector_analysis(cfg), InputError);
}

TEST(RunMeasurement, CanonicalQubit) {
  const RunResult r = run_measurement_scenario(scenario("qubit_canonical"));
  EXPECT_TRUE(r.verified);
  const json& q = r.report["queries"];
  ASSERT_EQ(q.size(), 6u);
  EXPECT_NEAR(q[1]["probability"].get<double>(), 0.5, 1e-12);
  EXPECT_NEAR(q[1]["p_observable"].get<double>(), 0.5, 1e-12);
  EXPECT_NEAR(q[3]["repeat_probability"].get<double>(), 1.0, 1e-10);
  EXPECT_TRUE(q[4]["passed"].get<bool>());
  EXPECT_FALSE(q[5]["passed"].get<bool>());
}

TEST(RunMeasurement, IdentityCouplingFailsVerification) {
  const RunResult r = run_measurement_scenario(scenario("qubit_identity"));
  EXPECT_FALSE(r.verified);
  EXPECT_FALSE(r.report["scheme_check"]["passed"].get<bool>());
}

TEST(RunMeasurement, Decoherence) {
  const RunResult r = run_measurement_scenario(scenario("decoherence"));
  const json& q = r.report["queries"];
  ASSERT_EQ(q.size(), 2u);
  EXPECT_TRUE(q[0]["reached"].get<bool>());
  EXPECT_LT(q[0]["final_distance"].get<double>(), 1e-10);
  EXPECT_FALSE(q[1]["reached"].get<bool>());
}

TEST(RunMeasurement, MalformedScenario) {
  const auto path = scratch("bad_scenario.json");
  std::ofstream(path) << R"({"observable": [[[1,0],[0,0]],[[0,0],[1,0]]]})";
  RunConfig cfg;
  cfg.input = path.string();
  EXPECT_THROW(run_measurement_scenario(cfg), InputError);
  std::ofstream(path) << R"({"observable": [[[1,0],[1,0]],[[0,0],[1,0]]], "initial_state": [[[1,0],[0,0]],[[0,0],[0,0]]]})";
  EXPECT_THROW(run_measurement_scenario(cfg), InputError);
}

TEST(RunCli, ExitCodes) {
  const auto out = scratch("analysis.json");
  EXPECT_EQ(cli({"analyze", "--group", data("S3.json"), "--subgroup", "Z2", "--out", out.string()}), 0);
  const json parsed = json::parse(slurp(out));
  EXPECT_EQ(parsed["group"]["order"], 6);
  EXPECT_EQ(cli({"measure", "--scenario", data("qubit_identity.json"), "--out", out.string()}), 2);
  EXPECT_EQ(cli({"measure", "--scenario", data("nope.json"), "--out", out.string()}), 1);
  EXPECT_EQ(cli({"analyze", "--group", data("S3.json")}), 1);
  EXPECT_EQ(cli({"frobnicate"}), 1);
}

TEST(RunCli, SameSeedSameBytes) {
  const auto a = scratch("run_a.txt"), b = scratch("run_b.txt");
  for (const auto& p : {a, b})
    ASSERT_EQ(cli({"analyze", "--group", data("A4.json"), "--subgroup", "V4", "--seed", "99", "--format", "text",
                   "--out", p.string()}),
              0);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_FALSE(slurp(a).empty());
}

TEST(RunCli, CatalogExport) {
  const auto out = scratch("q8.json");
  ASSERT_EQ(cli({"catalog", "Q8", "--out", out.string()}), 0);
  EXPECT_EQ(json::parse(slurp(out))["mult_table"].size(), 8u);
  EXPECT_EQ(cli({"catalog", "S9"}), 1);
}
