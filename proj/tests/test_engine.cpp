#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "emotive/errors.hpp"
#include "emotive/scenario.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace emotive;
using Catch::Approx;

namespace {

const std::filesystem::path kData = std::filesystem::path(EMOTIVE_SOURCE_DIR) / "data";

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Engine fresh_engine(EngineConfig cfg = {}, PersonalityProfile p = {}) {
  return Engine(std::move(cfg), EngineResources{}, p);
}

std::string run_trace(const Scenario& sc, TraceWriter::Format fmt = TraceWriter::Format::csv) {
  Engine e(EngineConfig{}, EngineResources{}, sc.personality, sc.memory);
  std::ostringstream out;
  TraceWriter w(out, fmt, e.resources().emotions);
  run_scenario(e, sc, [&](const TraceEntry& t) { w.write(t); });
  return out.str();
}

Scenario random_scenario(gen::Gen& g) {
  Scenario sc;
  sc.personality = gen::personality(g);
  std::int64_t tick = 0;
  const std::vector<std::string> acts = {"Greet", "StartConversation", "Ignore", "Kick"};
  for (int i = g.integer(0, 12); i > 0; --i) {
    tick += g.integer(0, 4);
    sc.events.push_back({{g.pick(gen::entities()), g.pick(acts), g.pick(gen::entities())}, tick});
  }
  return sc;
}

}  // namespace

TEST_CASE("shipped data files equal the built-in defaults") {
  CHECK(slurp(kData / "emotions.json") == EmotionCatalog().to_text());
  CHECK(slurp(kData / "weights.json") == WeightModel::shipped_default().to_text());
  CHECK(slurp(kData / "actions.csv") == ActionScoreTable::shipped().to_csv());
  const auto cfg = EngineConfig::load(kData / "config.json");
  const auto res = EngineResources::from_config(cfg, kData);
  CHECK(res.weights == WeightModel::shipped_default());
  CHECK(res.actions.to_csv() == ActionScoreTable::shipped().to_csv());
}

TEST_CASE("config round trip and validation") {
  EngineConfig c;
  c.alpha = 0.3;
  c.strategy = Strategy::blended;
  c.compensation = CompensationOrder::after_normalization;
  const auto back = EngineConfig::from_text(c.to_text());
  CHECK(back.to_text() == c.to_text());
  CHECK_THROWS_AS(EngineConfig::from_text(R"({"format":"emotive-config","version":1,"gamma":2})"), ParseError);
  CHECK_THROWS_AS(EngineConfig::from_text(R"({"format":"emotive-config","version":7})"), VersionMismatch);
  CHECK_THROWS_AS(EngineConfig::from_text(R"({"format":"emotive-config","version":1,"alpha":3})"), Error);
}

TEST_CASE("engine starts from the personality mood and zero intensities") {
  const PersonalityProfile p{0.6, 0.7, 0.5, 0.7, 0.3};
  auto e = fresh_engine({}, p);
  CHECK(e.affect().mood.value() == Approx(oracle::mood_initial(0.6, 0.7, 0.5, 0.7, 0.3)));
  for (const auto& [n, v] : e.affect().intensities) CHECK(v == 0.0);
  CHECK(e.clock() == 0);
}

TEST_CASE("one event follows the documented pipeline") {
  const PersonalityProfile p{0.6, 0.7, 0.5, 0.7, 0.3};
  Memory m;
  m.goals.add(GoalCategory::self, {"joy", "SELF", 0.5, GoalKind::replenishment, {}});
  Engine e(EngineConfig{}, EngineResources{}, p, m);
  const Memory before = e.memory();
  const double mood0 = e.affect().mood.value();
  const auto t = e.process_event({"JOHN", "Greet", "SELF"}, "default");
  REQUIRE(t.kind == TraceKind::event);
  CHECK(t.degree == 0.31);
  CHECK(t.appraisals == appraise({"JOHN", {"Greet", Valence::positive, 0.31}, "SELF", 0, {}}, before, 0.31));
  const EmotionCatalog cat;
  const auto raw = raw_intensities(t.appraisals, WeightModel::shipped_default(), cat, p, MoodState(mood0));
  CHECK(t.raw == raw);
  std::vector<std::pair<double, double>> agg;
  for (const auto& spec : cat.specs()) {
    const double eff = oracle::threshold(raw.at(spec.name), spec.threshold);
    double expect = 0.0;
    if (eff > 0) expect = oracle::norm01(oracle::compensate(eff, spec.valence_degree(), mood0, 0.1));
    CHECK(t.intensities.at(spec.name) == Approx(expect).margin(1e-12));
    agg.push_back({spec.valence_degree(), t.intensities.at(spec.name)});
  }
  const double impact = t.appraisals.desirability > 0 ? 1.0 : -1.0;
  CHECK(t.mood_after == Approx(oracle::update_mood(mood0, oracle::mood_factor(oracle::aggregate(agg, impact)), 0.1)));
  REQUIRE(t.outcome);
  CHECK(t.outcome->has_emotion());
  CHECK(e.memory().history.size() == 1);
  CHECK(e.memory().history.events()[0].other_info.at("desirability") == t.appraisals.desirability);
}

TEST_CASE("runs are deterministic") {
  gen::Gen g(61);
  for (int i = 0; i < 30; ++i) {
    const auto sc = random_scenario(g);
    CHECK(run_trace(sc) == run_trace(sc));
    CHECK(run_trace(sc, TraceWriter::Format::jsonl) == run_trace(sc, TraceWriter::Format::jsonl));
  }
}

TEST_CASE("a repeated greeting becomes expected while a kick is a surprise") {
  auto e = fresh_engine();
  const auto a = e.process_event({"JOHN", "Greet", "SELF"}, "default");
  const auto b = e.process_event({"JOHN", "Greet", "SELF"}, "default");
  const auto c = e.process_event({"JOHN", "Kick", "SELF"}, "default");
  CHECK(b.appraisals.unexpectedness < a.appraisals.unexpectedness);
  CHECK(c.appraisals.unexpectedness > b.appraisals.unexpectedness);
  CHECK(c.appraisals.unexpectedness > a.appraisals.unexpectedness);
}

TEST_CASE("an unscored action leaves the state untouched") {
  auto e = fresh_engine({}, {0.2, 0.4, 0.6, 0.8, 0.1});
  e.process_event({"JOHN", "Greet", "SELF"}, "default");
  const auto before = e.state_text();
  const auto t = e.process_event({"JOHN", "Dance", "SELF"}, "default");
  CHECK(t.kind == TraceKind::error);
  CHECK(t.error.find("Dance") != std::string::npos);
  CHECK(e.state_text() == before);
  const auto u = e.process_event({"JOHN", "Greet", "SELF"}, "office");
  CHECK(u.kind == TraceKind::error);
  CHECK(e.state_text() == before);
}

TEST_CASE("emotions die out after their decay time") {
  auto e = fresh_engine();
  e.process_event({"JOHN", "Kick", "SELF"}, "default");
  double active = 0;
  for (const auto& [n, v] : e.affect().intensities) active += v;
  REQUIRE(active > 0.0);
  std::map<std::string, double> prev = e.affect().intensities;
  for (int i = 0; i < 10; ++i) {
    e.tick();
    for (const auto& [n, v] : e.affect().intensities) {
      CHECK(v <= prev[n]);
      CHECK(v >= 0.0);
    }
    prev = e.affect().intensities;
  }
  for (const auto& [n, v] : e.affect().intensities) CHECK(v == 0.0);
}

TEST_CASE("tick decay uses time since the emotion's last stimulus") {
  auto e = fresh_engine();
  e.process_event({"JOHN", "Kick", "SELF"}, "default");
  const auto start = e.affect().intensities;
  e.tick();
  e.tick();
  e.tick();
  double I = 0;
  for (const auto& [n, v] : start) {
    if (v == 0) continue;
    I = v;
    for (int t = 1; t <= 3; ++t) I = oracle::decay(I, t, 10.0);
    CHECK(e.affect().intensities.at(n) == Approx(I).margin(1e-12));
  }
}

TEST_CASE("state save, load and save is byte identical") {
  gen::Gen g(62);
  for (int i = 0; i < 20; ++i) {
    const auto sc = random_scenario(g);
    Engine e(EngineConfig{}, EngineResources{}, sc.personality, sc.memory);
    run_scenario(e, sc, [](const TraceEntry&) {});
    const auto text = e.state_text();
    auto other = fresh_engine();
    other.load_state_text(text);
    CHECK(other.state_text() == text);
    // Continuing from the restored state matches continuing the original.
    auto a = e.process_event({"KATE", "Greet", "JOHN"}, "default");
    auto b = other.process_event({"KATE", "Greet", "JOHN"}, "default");
    CHECK(e.state_text() == other.state_text());
  }
}

TEST_CASE("loading under a different config") {
  auto e = fresh_engine();
  e.process_event({"JOHN", "Kick", "SELF"}, "default");
  const auto text = e.state_text();
  EngineConfig other_cfg;
  other_cfg.alpha = 0.25;
  auto other = fresh_engine(other_cfg);
  CHECK(other.config_hash() != e.config_hash());
  CHECK_THROWS_AS(other.load_state_text(text), ConfigMismatch);
  CHECK(other.memory().history.size() == 0);
  const auto r = other.load_state_text(text, true);
  REQUIRE(r.warning);
  CHECK(other.memory().history.size() == 1);
}

TEST_CASE("empty snapshots give a fresh agent") {
  const PersonalityProfile p{0.9, 0.1, 0.9, 0.1, 0.9};
  auto e = fresh_engine({}, p);
  const auto initial = e.state_text();
  e.process_event({"JOHN", "Kick", "SELF"}, "default");
  e.tick();
  CHECK(e.load_state_text("").fresh);
  CHECK(e.state_text() == initial);
  e.process_event({"JOHN", "Kick", "SELF"}, "default");
  CHECK(e.load_state_text("{}").fresh);
  CHECK(e.state_text() == initial);
}

TEST_CASE("malformed and versioned state files are rejected") {
  auto e = fresh_engine();
  CHECK_THROWS_AS(e.load_state_text("{not json"), ParseError);
  CHECK_THROWS_AS(e.load_state_text(R"({"format":"emotive-state","version":99})"), VersionMismatch);
  auto text = e.state_text();
  const auto pos = text.find("\"mood\"");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 6, "\"nope\"");
  CHECK_THROWS_AS(e.load_state_text(text), ParseError);
}

TEST_CASE("scenario validation names the offending event") {
  auto sc = Scenario::load(kData / "scenarios" / "john.json");
  CHECK_NOTHROW(sc.validate(ActionScoreTable::shipped()));
  sc.events.push_back({{"JOHN", "Dance", "SELF"}, 9});
  try {
    sc.validate(ActionScoreTable::shipped(), "x.json");
    FAIL("expected a validation error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("Dance") != std::string::npos);
    CHECK(std::string(e.what()).find("events/4") != std::string::npos);
  }
  sc.events.back() = {{"JOHN", "Greet", "SELF"}, 1};
  CHECK_THROWS_AS(sc.validate(ActionScoreTable::shipped()), ParseError);
  CHECK(Scenario::from_text(sc.to_text()).to_text() == sc.to_text());
}

TEST_CASE("trace CSV has one row per entry and a stable header") {
  const auto sc = Scenario::load(kData / "scenarios" / "john.json");
  const auto csv = run_trace(sc);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == TraceWriter::csv_header(EmotionCatalog()));
  std::size_t columns = std::count(line.begin(), line.end(), ',');
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) == columns);
  }
  CHECK(rows == 4 + 6);  // four events, ticks 1..6
}
