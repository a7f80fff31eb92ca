#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "simout/cli.hpp"
#include "simout/error.hpp"
#include "simout/ingest.hpp"
#include "simout/synth.hpp"
#include "test_support.hpp"

using namespace simout;
namespace fs = std::filesystem;

TEST_CASE("glob expansion matches, sorts, and passes literals through") {
  const std::string dir = test_support::temp_dir("glob");
  for (const char* name : {"r_02.tsv", "r_00.tsv", "r_01.tsv", "other.txt"}) {
    std::ofstream(fs::path(dir) / name) << "1\n";
  }
  const auto matched = cli::expand_pattern(dir + "/r_*.tsv");
  REQUIRE(matched.size() == 3);
  CHECK(matched[0] < matched[1]);
  CHECK(matched[1] < matched[2]);
  CHECK(matched[0].find("r_00") != std::string::npos);

  const auto qmark = cli::expand_pattern(dir + "/r_0?.tsv");
  CHECK(qmark.size() == 3);

  const auto literal = cli::expand_pattern(dir + "/other.txt");
  CHECK(literal == std::vector<std::string>{dir + "/other.txt"});
}

TEST_CASE("config file round trip") {
  const std::string dir = test_support::temp_dir("config");
  const std::string path = dir + "/config.json";
  std::ofstream(path) << R"({
    "setups": [{"tag": "java", "files": ["a/*.tsv"]},
               {"tag": "netlogo", "files": ["b/*.tsv"]}],
    "extractor": {"kind": "sixpack", "ss_idx": 40},
    "alpha": 0.01,
    "tests": "np",
    "variant": "welch",
    "out": "results",
    "format": "latex",
    "skip_rows": 2,
    "delimiter": ";"
  })";
  const cli::RunConfig config = cli::load_config(path);
  REQUIRE(config.setups.size() == 2);
  CHECK(config.setups[0].tag == "java");
  CHECK(config.setups[1].patterns[0] == "b/*.tsv");
  REQUIRE(config.extractor.has_value());
  CHECK(config.extractor->kind == ExtractorSpec::Kind::SteadyStateSixpack);
  CHECK(config.extractor->ss_idx == 40);
  CHECK(config.alpha == 0.01);
  CHECK(config.tests == "np");
  CHECK(config.variant == TVariant::WelchT);
  CHECK(config.out_dir == "results");
  CHECK(config.format == "latex");
  CHECK(config.skip_rows == 2);
  CHECK(config.delimiter == ';');

  const std::string bad = dir + "/bad.json";
  std::ofstream(bad) << "{ not json";
  CHECK_THROWS_AS(cli::load_config(bad), Error);
  CHECK_THROWS_AS(cli::load_config(dir + "/missing.json"), Error);
}

TEST_CASE("cmd_synth then cmd_analyze writes analysis artifacts") {
  const std::string dir = test_support::temp_dir("cli_an");
  fs::remove_all(dir);
  fs::create_directories(dir);
  CHECK(cli::cmd_synth(SynthModel::PredatorPrey, 8, 60, 5, dir + "/data") ==
        cli::kExitOk);

  cli::RunConfig config;
  config.setups.push_back({"demo", {dir + "/data/pp_*.tsv"}});
  config.extractor = ExtractorSpec::sixpack(30);
  config.output_names = {"prey", "pred"};
  config.out_dir = dir + "/out";
  config.format = "latex";
  CHECK(cli::cmd_analyze(config) == cli::kExitOk);

  CHECK(fs::exists(dir + "/out/demo_analysis.json"));
  CHECK(fs::exists(dir + "/out/demo_stats.tex"));
  CHECK(fs::exists(dir + "/out/demo_dist.tex"));
  // the gathered FM matrix round-trips through its interchange form
  const FMMatrix fm = fm_matrix_from_json(
      test_support::read_file(dir + "/out/demo_fm.json"));
  CHECK(fm.n == 8);
  CHECK(fm.m == 12);
  CHECK(fm.fm_names[0].display() == "prey.max");
  const std::string tsv = test_support::read_file(dir + "/out/demo_fm.tsv");
  CHECK(tsv.find("prey.max") != std::string::npos);
  const std::string json =
      test_support::read_file(dir + "/out/demo_analysis.json");
  CHECK(json.find("prey.max") != std::string::npos);
  CHECK(json.find("\"mean\"") != std::string::npos);
  const std::string tex = test_support::read_file(dir + "/out/demo_dist.tex");
  CHECK(test_support::latex_braces_balanced(tex));
  CHECK(test_support::latex_environments_balanced(tex));
}

TEST_CASE("cmd_compare exit codes distinguish aligned from misaligned") {
  const std::string dir = test_support::temp_dir("cli_cmp");
  fs::remove_all(dir);
  fs::create_directories(dir);
  // identical fixture duplicated: perfectly aligned
  cli::cmd_synth(SynthModel::Logistic, 6, 50, 9, dir + "/a");
  cli::cmd_synth(SynthModel::Logistic, 6, 50, 9, dir + "/b");

  cli::RunConfig config;
  config.setups.push_back({"a", {dir + "/a/logistic_*.tsv"}});
  config.setups.push_back({"b", {dir + "/b/logistic_*.tsv"}});
  config.extractor = ExtractorSpec::sixpack(25);
  config.out_dir = dir + "/out";
  CHECK(cli::cmd_compare(config, true) == cli::kExitOk);
  CHECK(fs::exists(dir + "/out/compare.json"));
  CHECK(fs::exists(dir + "/out/pairwise.txt"));
  const std::string json = test_support::read_file(dir + "/out/compare.json");
  CHECK(json.find("\"n_failed\": 0") != std::string::npos);

  // shift one setup far away: misaligned, exit 3
  cli::cmd_synth(SynthModel::Logistic, 6, 50, 10, dir + "/c");
  for (const auto& entry : fs::directory_iterator(dir + "/c")) {
    if (entry.path().extension() != ".tsv") continue;
    OutputMatrix m = read_output_file(entry.path().string());
    for (auto& v : m.values) v += 500.0;
    write_output_file(m, entry.path().string());
  }
  cli::RunConfig shifted = config;
  shifted.setups[1] = {"c", {dir + "/c/logistic_*.tsv"}};
  shifted.out_dir = dir + "/out2";
  CHECK(cli::cmd_compare(shifted, false) == cli::kExitMisaligned);
}

TEST_CASE("analyze with the at-iterations extractor names measures it{k}") {
  const std::string dir = test_support::temp_dir("cli_iters");
  fs::remove_all(dir);
  fs::create_directories(dir);
  cli::cmd_synth(SynthModel::Logistic, 5, 40, 3, dir + "/data");
  cli::RunConfig config;
  config.setups.push_back({"demo", {dir + "/data/logistic_*.tsv"}});
  config.extractor = ExtractorSpec::at_iterations({0, 10, 39});
  config.out_dir = dir + "/out";
  CHECK(cli::cmd_analyze(config) == cli::kExitOk);
  const std::string json =
      test_support::read_file(dir + "/out/demo_analysis.json");
  CHECK(json.find("out0.it0") != std::string::npos);
  CHECK(json.find("out0.it39") != std::string::npos);
}

TEST_CASE("compare accepts a per-measure test list") {
  const std::string dir = test_support::temp_dir("cli_tests_list");
  fs::remove_all(dir);
  fs::create_directories(dir);
  cli::cmd_synth(SynthModel::Logistic, 8, 40, 30, dir + "/a");
  cli::cmd_synth(SynthModel::Logistic, 8, 40, 30, dir + "/b");
  cli::RunConfig config;
  config.setups.push_back({"a", {dir + "/a/logistic_*.tsv"}});
  config.setups.push_back({"b", {dir + "/b/logistic_*.tsv"}});
  config.extractor = ExtractorSpec::sixpack(20);
  config.tests = "p,np,p,np,p,np";  // one per sixpack measure
  config.out_dir = dir + "/out";
  CHECK(cli::cmd_compare(config, false) == cli::kExitOk);
  const std::string json = test_support::read_file(dir + "/out/compare.json");
  CHECK(json.find("mann-whitney") != std::string::npos);
  CHECK(json.find("\"t\"") != std::string::npos);

  cli::RunConfig bad = config;
  bad.tests = "p,np";  // neither 1 nor m entries
  CHECK_THROWS_AS(cli::cmd_compare(bad, false), Error);
}

TEST_CASE("cmd_plot emits svg and pgf variants") {
  const std::string dir = test_support::temp_dir("cli_plot");
  fs::remove_all(dir);
  fs::create_directories(dir);
  cli::cmd_synth(SynthModel::PredatorPrey, 4, 40, 2, dir + "/data");

  cli::RunConfig config;
  config.setups.push_back({"demo", {dir + "/data/pp_*.tsv"}});
  CHECK(cli::cmd_plot(config, "superimposed", "0", 0, dir + "/fig.svg") ==
        cli::kExitOk);
  CHECK(cli::cmd_plot(config, "extremes", "1", 0, dir + "/fig.tex") ==
        cli::kExitOk);
  CHECK(cli::cmd_plot(config, "movavg", "0", 5, dir + "/ma.svg") ==
        cli::kExitOk);
  CHECK(test_support::xml_well_formed(
      test_support::read_file(dir + "/fig.svg")));
  CHECK(test_support::latex_environments_balanced(
      test_support::read_file(dir + "/fig.tex")));
  CHECK_THROWS_AS(cli::cmd_plot(config, "bogus", "0", 0, dir + "/x.svg"),
                  Error);
}

TEST_CASE("a glob matching nothing is an empty run set") {
  const std::string dir = test_support::temp_dir("glob_empty");
  cli::RunConfig config;
  config.setups.push_back({"ghost", {dir + "/nothing_*.tsv"}});
  try {
    cli::cmd_analyze(config);
    FAIL("expected EmptyRunSet");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyRunSet);
  }
}

TEST_CASE("ingest errors surface as data errors with context") {
  const std::string dir = test_support::temp_dir("cli_err");
  std::ofstream(dir + "/bad.tsv") << "1,2\n3\n";
  cli::RunConfig config;
  config.setups.push_back({"bad", {dir + "/bad.tsv"}});
  config.extractor = ExtractorSpec::sixpack(0);
  CHECK_THROWS_AS(cli::cmd_analyze(config), Error);
}
