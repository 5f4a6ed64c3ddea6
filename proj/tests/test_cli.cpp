#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "emotive/cli.hpp"
#include "emotive/scenario.hpp"

using namespace emotive;
namespace fs = std::filesystem;

namespace {

const fs::path kData = fs::path(EMOTIVE_SOURCE_DIR) / "data";
const fs::path kScenario = kData / "scenarios" / "john.json";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("emotive-cli-" + std::to_string(std::rand()) + "-" +
                                        std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path operator/(const std::string& name) const { return path / name; }
};

int run_binary(const std::string& args) {
  const std::string cmd = std::string(EMOTIVE_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("run writes a trace and succeeds") {
  TempDir dir;
  cli::RunOptions o;
  o.scenario = kScenario;
  o.out = dir / "trace.csv";
  std::ostringstream out, err;
  REQUIRE(cli::cmd_run(o, out, err) == cli::kExitOk);
  const auto text = slurp(*o.out);
  CHECK(text.rfind(TraceWriter::csv_header(EmotionCatalog()), 0) == 0);
  CHECK(out.str().find("regulated") != std::string::npos);

  o.out = dir / "trace.jsonl";
  REQUIRE(cli::cmd_run(o, out, err) == cli::kExitOk);
  CHECK(slurp(*o.out).front() == '{');
}

TEST_CASE("run with no events writes only the header") {
  TempDir dir;
  auto sc = Scenario::load(kScenario);
  sc.events.clear();
  spit(dir / "empty.json", sc.to_text());
  cli::RunOptions o;
  o.scenario = dir / "empty.json";
  o.out = dir / "t.csv";
  std::ostringstream out, err;
  REQUIRE(cli::cmd_run(o, out, err) == cli::kExitOk);
  CHECK(slurp(*o.out) == TraceWriter::csv_header(EmotionCatalog()) + "\n");
}

TEST_CASE("run rejects an unscored action before writing anything") {
  TempDir dir;
  auto sc = Scenario::load(kScenario);
  sc.events.push_back({{"JOHN", "Dance", "SELF"}, 9});
  spit(dir / "bad.json", sc.to_text());
  cli::RunOptions o;
  o.scenario = dir / "bad.json";
  o.out = dir / "t.csv";
  o.save_state = dir / "s.json";
  std::ostringstream out, err;
  CHECK(cli::cmd_run(o, out, err) == cli::kExitValidation);
  CHECK(err.str().find("Dance") != std::string::npos);
  CHECK_FALSE(fs::exists(*o.out));
  CHECK_FALSE(fs::exists(*o.save_state));
}

TEST_CASE("run exit codes for missing and malformed inputs") {
  TempDir dir;
  std::ostringstream out, err;
  cli::RunOptions o;
  o.scenario = dir / "missing.json";
  CHECK(cli::cmd_run(o, out, err) == cli::kExitValidation);
  spit(dir / "broken.json", "{\"format\": ");
  o.scenario = dir / "broken.json";
  CHECK(cli::cmd_run(o, out, err) == cli::kExitValidation);
  o.scenario = kScenario;
  o.engine.config = dir / "nope.json";
  CHECK(cli::cmd_run(o, out, err) == cli::kExitValidation);
}

TEST_CASE("the executable maps errors to exit codes") {
  TempDir dir;
  CHECK(run_binary("run --scenario " + kScenario.string() + " --out " + (dir / "t.csv").string()) == 0);
  CHECK(run_binary("run --scenario " + (dir / "missing.json").string()) == 1);
  CHECK(run_binary("run") == 1);
  CHECK(run_binary("bogus") == 1);
  CHECK(run_binary("run --scenario " + kScenario.string() + " --strategy loudest") == 1);
  CHECK(run_binary("--help") == 0);
  // An unwritable output path is a runtime failure.
  CHECK(run_binary("run --scenario " + kScenario.string() + " --out " + (dir / "no" / "such" / "t.csv").string()) == 2);
}

TEST_CASE("the config may come from the environment") {
  TempDir dir;
  EngineConfig c;
  c.strategy = Strategy::highest;
  spit(dir / "cfg.json", c.to_text());
  ::setenv(cli::kConfigEnv, (dir / "cfg.json").c_str(), 1);
  const auto resolved = cli::resolve_config({});
  ::unsetenv(cli::kConfigEnv);
  CHECK(resolved.strategy == Strategy::highest);
  cli::EngineOptions o;
  o.config = dir / "cfg.json";
  o.strategy = Strategy::blended;
  CHECK(cli::resolve_config(o).strategy == Strategy::blended);
}

TEST_CASE("REPL produces the same trace as a batch run") {
  TempDir dir;
  const auto sc = Scenario::load(kScenario);
  cli::RunOptions r;
  r.scenario = kScenario;
  r.out = dir / "batch.csv";
  std::ostringstream out, err;
  REQUIRE(cli::cmd_run(r, out, err) == cli::kExitOk);

  std::string script;
  std::int64_t clock = 0;
  for (const auto& ev : sc.events) {
    if (ev.tick > clock) script += "tick " + std::to_string(ev.tick - clock) + "\n";
    clock = ev.tick;
    script += "event " + ev.stimulus.source + " " + ev.stimulus.action + " " + ev.stimulus.target + "\n";
  }
  script += "quit\n";
  cli::ReplOptions o;
  o.scenario = kScenario;
  o.out = dir / "repl.csv";
  std::istringstream in(script);
  std::ostringstream rout, rerr;
  REQUIRE(cli::cmd_repl(o, in, rout, rerr) == cli::kExitOk);
  CHECK(slurp(*o.out) == slurp(*r.out));
}

TEST_CASE("REPL state, bad input and persistence") {
  TempDir dir;
  cli::ReplOptions o;
  const auto state = (dir / "s.json").string();
  std::istringstream in("state\nfrobnicate\ntick x\nevent JOHN Greet\nstate\nevent JOHN Kick SELF\nsave " + state +
                        "\nload " + state + "\nmemory\nquit\n");
  std::ostringstream out, err;
  REQUIRE(cli::cmd_repl(o, in, out, err) == cli::kExitOk);
  const auto text = out.str();
  // Fresh agent: clock 0, every intensity zero.
  CHECK(text.rfind("clock 0 mood ", 0) == 0);
  CHECK(text.find("joy=0.0000 distress=0.0000") != std::string::npos);
  CHECK(text.find("commands:") != std::string::npos);
  CHECK(text.find("saved " + state) != std::string::npos);
  CHECK(text.find("loaded " + state) != std::string::npos);
  CHECK(text.find("history: 1 event(s)") != std::string::npos);
  // Bad input never reached the engine: the second `state` still shows clock 0.
  CHECK(text.find("clock 0 mood", 1) != std::string::npos);
}

TEST_CASE("memory command prints a state file") {
  TempDir dir;
  cli::RunOptions r;
  r.scenario = kScenario;
  r.out = dir / "t.csv";
  r.save_state = dir / "s.json";
  std::ostringstream out, err;
  REQUIRE(cli::cmd_run(r, out, err) == cli::kExitOk);
  std::ostringstream mout;
  CHECK(cli::cmd_memory(*r.save_state, mout, err) == cli::kExitOk);
  CHECK(mout.str().find("history: 4 event(s)") != std::string::npos);
  CHECK(cli::cmd_memory(dir / "missing.json", mout, err) == cli::kExitValidation);
}

TEST_CASE("synth and train are reproducible") {
  TempDir dir;
  std::ostringstream out, err;
  cli::SynthOptions s;
  s.out = dir / "d.csv";
  s.samples = 400;
  REQUIRE(cli::cmd_synth(s, out, err) == cli::kExitOk);
  cli::TrainOptions t;
  t.data = s.out;
  t.out = dir / "w1.json";
  t.sgd.epochs = 5;
  REQUIRE(cli::cmd_train(t, out, err) == cli::kExitOk);
  t.out = dir / "w2.json";
  REQUIRE(cli::cmd_train(t, out, err) == cli::kExitOk);
  CHECK(slurp(dir / "w1.json") == slurp(dir / "w2.json"));
  CHECK_NOTHROW(WeightModel::load(dir / "w1.json"));
}

TEST_CASE("train on an empty dataset is a usage error") {
  TempDir dir;
  TrainingSet empty;
  empty.emotions = {"joy"};
  empty.save(dir / "empty.csv");
  cli::TrainOptions t;
  t.data = dir / "empty.csv";
  t.out = dir / "w.json";
  std::ostringstream out, err;
  CHECK(cli::cmd_train(t, out, err) == cli::kExitValidation);
  CHECK(err.str().find("no samples") != std::string::npos);
  CHECK_FALSE(fs::exists(t.out));
}
