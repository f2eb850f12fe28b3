// Copyright 2026 The vastream Authors. All Rights Reserved.
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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "json.hpp"
#include "vastream/checkpoint.hpp"
#include "vastream/error.hpp"
#include "vastream/experiment.hpp"
#include "vastream/scenario.hpp"
#include "vastream/text.hpp"

namespace vastream {
namespace {

namespace fs = std::filesystem;

const fs::path kData = VASTREAM_DATA_DIR;

fs::path scratch(const std::string& name) {
  const fs::path p = fs::path(::testing::TempDir()) / ("vastream_cli_" + name);
  fs::remove_all(p);
  return p;
}

ExperimentSpec demo_spec(const std::string& file, const fs::path& out) {
  ExperimentSpec spec = ExperimentSpec::load(kData / file);
  spec.set("out", out.string());
  return spec;
}

int run(const std::string& command, const ExperimentSpec& spec) {
  std::ostringstream log;
  return run_command(command, spec, log);
}

int cli(const std::string& args) {
  const std::string cmd = std::string("\"") + VASTREAM_CLI + "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Spec, ParseResolvesPathsAndRejectsUnknownKeys) {
  const ExperimentSpec s = ExperimentSpec::parse(
      "# comment\nprofile=p.csv\nmax_lag = 1.5\nval_offsets=6,14\n\n", "/base");
  EXPECT_EQ(s.get("profile"), "/base/p.csv");
  EXPECT_DOUBLE_EQ(s.get_double("max_lag", 0.0), 1.5);
  EXPECT_EQ(s.get_doubles("val_offsets"), (std::vector<double>{6.0, 14.0}));
  EXPECT_EQ(s.get_int("epochs", 7), 7);
  EXPECT_THROW(s.require("trace"), InvalidArgument);
  EXPECT_THROW(ExperimentSpec::parse("colour=blue\n"), ParseError);
  EXPECT_THROW(ExperimentSpec::parse("just text\n"), Error);
  ExperimentSpec t;
  EXPECT_THROW(t.set("nope", "1"), InvalidArgument);
}

TEST(Spec, TypedViews) {
  ExperimentSpec s = ExperimentSpec::parse("k=4\nmax_lag=2\nlag_step=0.5\nablation=fixed-reward\nepochs=9\n");
  EXPECT_EQ(spec_env_options(s).history, 4u);
  EXPECT_EQ(spec_encoder(s).width(), 7u * 4 + 1 + 256);
  EXPECT_DOUBLE_EQ(spec_lag_grid(s).max_lag, 2.0);
  EXPECT_EQ(spec_lag_grid(s).cells(), 5u);
  EXPECT_EQ(spec_train_config(s).reward, RewardMode::kFixedReward);
  EXPECT_EQ(spec_train_config(s).epochs, 9);
  EXPECT_EQ(spec_config_space(s).size(), 216u);
  s.set("ablation", "bogus");
  EXPECT_THROW(spec_train_config(s), InvalidArgument);
  s.set("lag_rounding", "sideways");
  EXPECT_THROW(spec_lag_grid(s), InvalidArgument);
}

TEST(DemoAssets, BundledCopyMatchesGenerator) {
  const fs::path dir = scratch("assets");
  for (const auto& name : write_demo_assets(dir)) {
    EXPECT_EQ(text::read_file(dir / name), text::read_file(kData / name)) << name;
  }
}

TEST(Commands, GoldenOnGenerousTraceIsPerfect) {
  const fs::path out = scratch("golden");
  ExperimentSpec spec = demo_spec("demo.spec", out);
  spec.set("trace", (kData / "generous_trace.csv").string());
  spec.set("policy", "fixed");
  spec.set("config_id", "0");
  EXPECT_EQ(run("simulate", spec), 0);
  const auto j = nlohmann::json::parse(text::read_file(out / "summary.json"));
  EXPECT_EQ(j["mean_accuracy"].get<double>(), 1.0);
  EXPECT_EQ(j["n_chunks"].get<int>(), 300);
  EXPECT_TRUE(fs::exists(out / "chunks.csv"));
  EXPECT_TRUE(fs::exists(out / "accuracy_cdf.csv"));
  EXPECT_TRUE(fs::exists(out / "lag_cdf.csv"));
  EXPECT_TRUE(fs::exists(out / "manifest.json"));
}

TEST(Commands, ExpertPlanHasOneRowPerChunk) {
  const fs::path out = scratch("expert");
  ExperimentSpec spec = demo_spec("demo.spec", out);
  spec.set("max_lag", "1.0");
  spec.set("lag_step", "0.1");
  EXPECT_EQ(run("expert", spec), 0);
  EXPECT_EQ(parse_plan_csv(text::read_file(out / "plan.csv")).size(), 300u);
  const auto j = nlohmann::json::parse(text::read_file(out / "summary.json"));
  EXPECT_LE(j["max_lag"].get<double>(), 1.0 + 1e-9);
}

TEST(Commands, ZeroEpochCheckpointIsTheInitialAgent) {
  const fs::path out = scratch("epochs0");
  ExperimentSpec spec = demo_spec("toy.spec", out);
  spec.set("epochs", "0");
  spec.set("seed", "5");
  EXPECT_EQ(run("train", spec), 0);
  const Checkpoint ck = load_checkpoint(out / "checkpoint.json");
  const Agent init = make_agent(spec_encoder(spec), 4, spec_train_config(spec));
  EXPECT_EQ(parameter_digest(ck.agent), parameter_digest(init));
  EXPECT_EQ(ck.agent.epoch, 0);
  EXPECT_EQ(ck.train_config_digest, spec_train_config(spec).digest());
}

TEST(Commands, CheckpointRoundTrip) {
  TrainConfig cfg;
  cfg.hidden = 8;
  cfg.disc_hidden = 4;
  EncoderOptions enc;
  enc.history = 2;
  enc.pool = 2;
  const Agent a = make_agent(enc, 3, cfg);
  const std::string text = format_checkpoint({a, cfg.digest()});
  const Checkpoint back = parse_checkpoint(text);
  EXPECT_EQ(parameter_digest(back.agent), parameter_digest(a));
  EXPECT_EQ(format_checkpoint(back), text);
  EXPECT_THROW(parse_checkpoint("{\"format\":\"other\"}"), Error);
}

std::string slurp(const fs::path& p) { return text::read_file(p); }

TEST(Determinism, RepeatedRunsAreByteIdentical) {
  const fs::path a = scratch("det_a");
  const fs::path b = scratch("det_b");
  for (const fs::path& out : {a, b}) {
    ExperimentSpec spec = demo_spec("toy.spec", out);
    spec.set("epochs", "3");
    spec.set("seed", "11");
    ASSERT_EQ(run("train", spec), 0);
  }
  for (const char* f : {"checkpoint.json", "checkpoint_last.json", "training_log.csv", "chunks.csv",
                        "accuracy_cdf.csv", "lag_cdf.csv"}) {
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  }
}

TEST(Binary, ExitCodes) {
  const fs::path out = scratch("bin");
  const std::string spec = "\"" + (kData / "toy.spec").string() + "\"";
  EXPECT_EQ(cli("simulate --spec " + spec + " --policy profiling --out \"" + out.string() + "\""), 0);
  EXPECT_TRUE(fs::exists(out / "summary.json"));
  EXPECT_NE(cli("simulate --spec " + spec + " --set colour=blue --out \"" + out.string() + "\""), 0);
  EXPECT_NE(cli("simulate --spec /nonexistent.spec --out \"" + out.string() + "\""), 0);
  EXPECT_NE(cli("frobnicate"), 0);
  EXPECT_EQ(cli("--help"), 0);
}

}  // namespace
}  // namespace vastream
