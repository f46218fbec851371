#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "commands.h"

namespace modwave::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const std::string kDataDir = MODWAVE_DATA_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::initializer_list<std::string> args) {
  std::vector<std::string> storage{"modwave"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : storage) argv.push_back(s.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("modwave_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name, std::ios::binary) << text;
    return (dir_ / name).string();
  }
  std::string write_json(const std::string& name, const json& j) const { return write(name, j.dump(2)); }
  std::string out(const std::string& sub) const { return (dir_ / sub).string(); }

  fs::path dir_;
};

std::string table_corpus() { return kDataDir + "/corpus/reference.csv"; }
std::string fixture_corpus() { return kDataDir + "/corpus/generated_m1_m3.csv"; }

TEST_F(CliTest, ValidateBundledTableCorpusAllValid) {
  const Result r = invoke({"validate", "--corpus", table_corpus(), "--out", out("v")});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("7/7 syntactically valid, 0 semantic flag(s)"), std::string::npos) << r.out;
  const json report = json::parse(slurp(dir_ / "v" / "validation.json"));
  EXPECT_EQ(report["summary"]["total"], 7);
  EXPECT_EQ(report["entries"].size(), 7u);
}

TEST_F(CliTest, ValidateFixtureFlagsOnlyM3) {
  const Result r = invoke({"validate", "--corpus", fixture_corpus()});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("3/3 syntactically valid, 1 semantic flag(s) on 1 formula(s)"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("zero-literal-divisor"), std::string::npos) << r.out;
  EXPECT_EQ(r.out.find("M1  valid  ["), std::string::npos);
}

TEST_F(CliTest, ValidateInvalidFormulaExitsOne) {
  const std::string csv = write("bad.csv", "id,name,formula\nB1,broken,A_c * cos(2 pi f_c t\nB2,fine,A * t\n");
  const Result r = invoke({"validate", "--corpus", csv});
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_NE(r.out.find("1/2 syntactically valid"), std::string::npos) << r.out;
}

TEST_F(CliTest, MissingOrMalformedInputsExitTwo) {
  EXPECT_EQ(invoke({"validate", "--corpus", out("nope.csv")}).code, kExitConfig);
  EXPECT_EQ(invoke({"compare", "--config", out("nope.json")}).code, kExitConfig);
  EXPECT_EQ(invoke({}).code, kExitConfig);
  EXPECT_EQ(invoke({"frobnicate"}).code, kExitConfig);

  const std::string unknown = write_json("unknown.json", {{"seed", 1}, {"colour", "blue"}});
  Result r = invoke({"compare", "--config", unknown});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("colour"), std::string::npos) << r.err;

  const std::string no_seed = write_json("no_seed.json", {{"schemes", {"BPSK", "QPSK"}}});
  r = invoke({"compare", "--config", no_seed});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("seed"), std::string::npos) << r.err;

  const std::string not_json = write("broken.json", "{\"seed\": 1,");
  EXPECT_EQ(invoke({"compare", "--config", not_json}).code, kExitConfig);

  const std::string bad_channel = write_json("bad_channel.json", {{"seed", 1}, {"channel", {{"preset", "space"}}}});
  EXPECT_EQ(invoke({"compare", "--config", bad_channel, "--scheme", "BPSK,QPSK"}).code, kExitConfig);
}

TEST_F(CliTest, CompareNeedsTwoSchemes) {
  const Result r = invoke({"compare", "--scheme", "BPSK", "--out", out("c")});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("at least two"), std::string::npos);
}

TEST_F(CliTest, CompareWritesOneRowPerScheme) {
  const std::string cfg = write_json(
      "cmp.json", {{"seed", 5},
                   {"corpus", {table_corpus(), fixture_corpus()}},
                   {"schemes", {"BPSK", "QPSK", "QAM-16", "AM", "formula:M3"}},
                   {"scheme_defaults", {{"symbol_count", 200}}},
                   {"channel", {{"preset", "awgn"}, {"target_snr_db", 10.0}}}});
  const Result r = invoke({"compare", "--config", cfg, "--out", out("c")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const std::string csv = slurp(dir_ / "c" / "compare.csv");
  EXPECT_EQ(csv, r.out);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 6);
  EXPECT_EQ(csv.rfind("modulation,snr_db,ber,spectral_eff,bandwidth_hz", 0), 0u);
  EXPECT_NE(csv.find("\nAM,"), std::string::npos);
  const json j = json::parse(slurp(dir_ / "c" / "compare.json"));
  ASSERT_EQ(j["rows"].size(), 5u);
  EXPECT_TRUE(j["rows"][3]["ber"].is_null());
  EXPECT_GT(j["rows"][4]["guard_count"].get<int>(), 0);
  EXPECT_EQ(j["seed"], 5);
}

TEST_F(CliTest, CompareUnknownFormulaIdIsConfigError) {
  const Result r = invoke({"compare", "--corpus", fixture_corpus(), "--scheme", "BPSK,formula:M9"});
  EXPECT_EQ(r.code, kExitConfig);
  EXPECT_NE(r.err.find("M9"), std::string::npos) << r.err;
}

TEST_F(CliTest, EvalWritesArtifactsAndEchoesConfig) {
  const std::string cfg = write_json("ev.json", {{"seed", 11},
                                                 {"schemes", {"QPSK"}},
                                                 {"scheme_defaults", {{"symbol_count", 400}}},
                                                 {"channel", {{"preset", "multipath"}, {"target_snr_db", 15.0}}},
                                                 {"cost", {{"data_bits", 800}}}});
  const Result r = invoke({"eval", "--config", cfg, "--out", out("e")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  for (const char* name : {"report.json", "psd.csv", "spectrogram.csv", "constellation.csv"}) {
    EXPECT_TRUE(fs::is_regular_file(dir_ / "e" / name)) << name;
  }
  const json report = json::parse(slurp(dir_ / "e" / "report.json"));
  EXPECT_EQ(report["seed"], 11);
  EXPECT_EQ(report["scheme"]["scheme"], "QPSK");
  EXPECT_EQ(report["channel"]["taps"].size(), 3u);
  EXPECT_TRUE(report["report"]["ber"].is_number());
  EXPECT_TRUE(report.contains("cost"));
  EXPECT_EQ(report["artifacts"]["constellation"], "constellation.csv");
  const std::string constellation = slurp(dir_ / "e" / "constellation.csv");
  EXPECT_EQ(std::count(constellation.begin(), constellation.end(), '\n'), 401);
}

TEST_F(CliTest, EvalAnalogSchemeSkipsConstellation) {
  const Result r = invoke({"eval", "--scheme", "AM", "--out", out("am")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_FALSE(fs::exists(dir_ / "am" / "constellation.csv"));
  EXPECT_TRUE(json::parse(slurp(dir_ / "am" / "report.json"))["report"]["ber"].is_null());
}

TEST_F(CliTest, SeedOverrideChangesResultsAndSameSeedRepeats) {
  const auto run_eval = [&](const std::string& seed, const std::string& sub) {
    const Result r = invoke({"eval", "--scheme", "QAM-64", "--seed", seed, "--out", out(sub)});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    return slurp(dir_ / sub / "report.json");
  };
  const std::string a = run_eval("3", "a");
  EXPECT_EQ(a, run_eval("3", "b"));
  EXPECT_NE(a, run_eval("4", "c"));
}

TEST_F(CliTest, GenerateIsByteIdenticalForSameSeed) {
  const auto run_generate = [&](const std::string& sub) {
    const Result r = invoke({"generate", "--n", "8", "--seed", "9", "--evaluate", "--out", out(sub)});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    return slurp(dir_ / sub / "batch.json") + slurp(dir_ / sub / "metrics.csv") +
           slurp(dir_ / sub / "generated.csv");
  };
  const std::string first = run_generate("g1");
  EXPECT_FALSE(first.empty());
  EXPECT_EQ(first, run_generate("g2"));
  const json batch = json::parse(slurp(dir_ / "g1" / "batch.json"));
  EXPECT_EQ(batch["batch"]["requested"], 8);
  EXPECT_EQ(batch["seed"], 9);
}

TEST_F(CliTest, GenerateAppendSkipsExistingIds) {
  const std::string corpus = write("mine.csv", "id,name,formula\nG001,kept,A * t\n");
  const Result r = invoke({"generate", "--n", "4", "--seed", "2", "--out", out("g"), "--append-to", corpus});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const std::string text = slurp(corpus);
  EXPECT_NE(text.find("G001,kept,A * t"), std::string::npos) << text;
  EXPECT_EQ(text.find("G001,generated"), std::string::npos) << text;
  const Result again = invoke({"validate", "--corpus", corpus});
  EXPECT_EQ(again.code, kExitOk) << again.out;
}

TEST_F(CliTest, GenerateUnreachableEndpointExitsThree) {
  const Result r = invoke({"generate", "--n", "2", "--corpus", table_corpus(), "--endpoint",
                           "http://127.0.0.1:1/generate", "--out", out("x")});
  EXPECT_EQ(r.code, kExitExternal);
  EXPECT_NE(r.err.find("network-error"), std::string::npos) << r.err;
  const json batch = json::parse(slurp(dir_ / "x" / "batch.json"));
  EXPECT_EQ(batch["batch"]["source_errors"], 2);
}

TEST_F(CliTest, CostFromConfigAndFormula) {
  Result r = invoke({"cost"});
  EXPECT_EQ(r.code, kExitConfig);

  const std::string cfg = kDataDir + "/configs/cost_m2.json";
  r = invoke({"cost", "--config", cfg, "--out", out("k")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json j = json::parse(slurp(dir_ / "k" / "cost.json"));
  EXPECT_EQ(j["n_ops_from"]["formula"], "M2");
  const double ops = j["n_ops_from"]["op_count"].get<double>() * j["n_ops_from"]["samples"].get<double>();
  EXPECT_DOUBLE_EQ(j["cost"]["inputs"]["n_ops"].get<double>(), ops);
  EXPECT_DOUBLE_EQ(j["cost"]["latency"]["L_s"].get<double>(), ops / 2e9 + 2000 / 1e6 + 0.001);

  r = invoke({"cost", "--config", cfg, "--formula", "M7"});
  EXPECT_EQ(r.code, kExitConfig);
}

TEST_F(CliTest, BundledExampleConfigsLoad) {
  for (const auto& entry : fs::directory_iterator(kDataDir + "/configs")) {
    const std::string path = entry.path().string();
    if (entry.path().filename() == "cost_m2.json") continue;
    // Validation touches only the config and corpus; it proves every bundled
    // config parses.
    const Result r = invoke({"validate", "--config", path, "--corpus", table_corpus()});
    EXPECT_EQ(r.code, kExitOk) << path << ": " << r.err;
  }
}

}  // namespace
}  // namespace modwave::cli
