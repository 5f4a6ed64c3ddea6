#include <catch2/catch_amalgamated.hpp>

#include "emotive/errors.hpp"
#include "emotive/memory.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace emotive;
using Catch::Approx;

namespace {

EventRecord ev(std::string s, std::string a, double d, std::string t, std::int64_t ts = 0) {
  return {std::move(s), {std::move(a), d < 0 ? Valence::negative : Valence::positive, d}, std::move(t), ts, {}};
}

}  // namespace

TEST_CASE("goal tree has the two category nodes at height 1") {
  GoalTree t;
  CHECK(t.root().label == "Root");
  CHECK(t.category(GoalCategory::self).label == "Self_goal");
  CHECK(t.category(GoalCategory::other).label == "Other_goal");
  CHECK(t.size() == 3);
  CHECK_NOTHROW(t.validate());
}

TEST_CASE("relevant goals match on target") {
  GoalTree t;
  t.add(GoalCategory::self, {"joy", "SELF", 0.5, GoalKind::replenishment, {}});
  auto r = relevant_goals(ev("JOHN", "Kick", -0.74, "SELF"), t);
  REQUIRE(r.size() == 1);
  CHECK(r[0].node->label == "joy");
  CHECK(r[0].height == 2);

  CHECK(relevant_goals(ev("JOHN", "Kick", -0.74, "NOBODY"), t).empty());

  GoalTree t2;
  t2.add(GoalCategory::other, {"joy", "KATE", 0.4, GoalKind::active, {}});
  t2.add(GoalCategory::other, {"joy", "NICK", 0.4, GoalKind::active, {}});
  auto r2 = relevant_goals(ev("PAUL", "Help", 0.5, "KATE"), t2);
  REQUIRE(r2.size() == 1);
  CHECK(*r2[0].node->target == "KATE");
}

TEST_CASE("relevant goals agree with a brute-force scan, in pre-order") {
  gen::Gen g(11);
  for (int iter = 0; iter < 500; ++iter) {
    const auto m = gen::memory(g);
    const auto target = g.pick(gen::entities());
    std::vector<std::pair<const GoalNode*, int>> expect;
    std::function<void(const GoalNode&, int)> scan = [&](const GoalNode& n, int h) {
      if (h >= 2 && n.target && *n.target == target) expect.push_back({&n, h});
      for (const auto& c : n.children) scan(c, h + 1);
    };
    scan(m.goals.root(), 0);
    const auto got = relevant_goals(ev("X", "A", 0.1, target), m.goals);
    REQUIRE(got.size() == expect.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].node == expect[i].first);
      CHECK(got[i].height == expect[i].second);
    }
  }
}

TEST_CASE("past impacts sum positive and negative degrees separately") {
  EventHistory h;
  CHECK(past_impacts("A", "B", h).positive == 0.0);
  h.append(ev("A", "Greet", 0.31, "B", 0));
  h.append(ev("A", "Kick", -0.74, "B", 1));
  h.append(ev("C", "Kick", -0.5, "D", 2));
  const auto pi = past_impacts("A", "B", h);
  CHECK(pi.positive == 0.31);
  CHECK(pi.negative == -0.74);
  const auto none = past_impacts("C", "B", h);
  CHECK(none.positive == 0.0);
  CHECK(none.negative == 0.0);
}

TEST_CASE("average past degree") {
  EventHistory h;
  CHECK(average_past_degree("A", "B", h) == 0.0);
  h.append(ev("A", "Greet", 0.31, "B", 0));
  h.append(ev("A", "StartConversation", 0.28, "B", 0));
  CHECK(average_past_degree("A", "B", h) == Approx(0.295).margin(1e-15));
  EventHistory k;
  k.append(ev("A", "Kick", -0.74, "B", 0));
  CHECK(average_past_degree("A", "B", k) == -0.74);
}

TEST_CASE("past impacts and averages match brute force on random histories") {
  gen::Gen g(12);
  for (int iter = 0; iter < 300; ++iter) {
    const auto m = gen::memory(g, 40);
    std::vector<oracle::Ev> flat;
    for (const auto& e : m.history.events()) flat.push_back({e.source, e.target, e.action.degree});
    for (const auto& s : gen::entities())
      for (const auto& t : gen::entities()) {
        const auto pi = past_impacts(s, t, m.history);
        CHECK(pi.positive >= 0.0);
        CHECK(pi.negative <= 0.0);
        CHECK(pi.positive - pi.negative <= static_cast<double>(m.history.size()));
        CHECK(std::abs(pi.positive - oracle::past_sum(flat, s, t, true)) <= 1e-12);
        CHECK(std::abs(pi.negative - oracle::past_sum(flat, s, t, false)) <= 1e-12);
        CHECK(std::abs(average_past_degree(s, t, m.history) - oracle::average_degree(flat, s, t)) <= 1e-12);
      }
  }
}

TEST_CASE("history rejects out-of-order timestamps and anonymous events") {
  EventHistory h;
  h.append(ev("A", "x", 0.1, "B", 5));
  CHECK_THROWS_AS(h.append(ev("A", "x", 0.1, "B", 4)), DomainError);
  CHECK_THROWS_AS(h.append(ev("", "x", 0.1, "B", 6)), DomainError);
  CHECK(h.size() == 1);
}

TEST_CASE("lookup_standard returns stored entries and creates neutral ones once") {
  Memory m;
  m.standards.set({"anger", "SELF", "JOHN"}, {Preference::no, 0.8});
  CHECK(m.lookup_standard("anger", "SELF", "JOHN") == Approval{Preference::no, 0.8});
  const auto first = m.lookup_standard("Wave", "PAUL", "SELF");
  CHECK(first == Approval{Preference::yes, 0.5});
  CHECK(m.standards.size() == 2);
  CHECK(m.lookup_standard("Wave", "PAUL", "SELF") == first);
  CHECK(m.standards.size() == 2);
}

TEST_CASE("standards reject approval degrees outside (0, 1]") {
  StandardSet s;
  CHECK_THROWS_AS(s.set({"a", "b", "c"}, {Preference::yes, 0.0}), DomainError);
  CHECK_THROWS_AS(s.set({"a", "b", "c"}, {Preference::yes, 1.01}), DomainError);
}

TEST_CASE("update_after_event moves perception, familiarity and standards") {
  const EmotionCatalog emotions;
  Memory m;
  m.update_after_event(ev("JOHN", "Kick", -0.74, "SELF"), emotions);
  CHECK(m.profile("JOHN").perception == Approx(-0.148).margin(1e-15));
  CHECK(m.profile("JOHN").familiarity == Approx(0.9).margin(1e-15));
  CHECK(m.entities.count("SELF") == 0);
  CHECK(m.standards.find({"Kick", "JOHN", "SELF"}) != nullptr);
  // Neutral YES 0.5 shifted by 0.1 * 0.74 toward acceptance.
  const auto* anger = m.standards.find({"anger", "SELF", "JOHN"});
  REQUIRE(anger);
  CHECK(anger->preference == Preference::yes);
  CHECK(anger->degree == Approx(0.574).margin(1e-12));
  CHECK(m.standards.find({"joy", "SELF", "JOHN"}) == nullptr);
  CHECK(m.history.size() == 1);

  Memory close;
  close.entities["JOHN"] = {"JOHN", 0.05, 0.0};
  close.update_after_event(ev("JOHN", "Greet", 0.31, "SELF"), emotions);
  CHECK(close.profile("JOHN").familiarity == 0.0);
}

TEST_CASE("emotion standards flip preference when the signed belief crosses zero") {
  const EmotionCatalog emotions;
  Memory m;
  m.standards.set({"anger", "SELF", "JOHN"}, {Preference::yes, 0.05});
  m.update_after_event(ev("JOHN", "Hug", 1.0, "SELF"), emotions);
  const auto* a = m.standards.find({"anger", "SELF", "JOHN"});
  CHECK(a->preference == Preference::no);
  CHECK(a->degree == Approx(0.05).margin(1e-12));
}

TEST_CASE("memory ranges survive long random event sequences") {
  gen::Gen g(13);
  const EmotionCatalog emotions;
  Memory m;
  std::int64_t t = 0;
  for (int i = 0; i < 10000; ++i) {
    t += g.integer(0, 2);
    m.update_after_event({g.pick(gen::entities()), gen::action(g), g.pick(gen::entities()), t, {}}, emotions);
  }
  CHECK_NOTHROW(m.validate());
  for (const auto& [_, p] : m.entities) {
    CHECK(p.perception >= -1.0);
    CHECK(p.perception <= 1.0);
    CHECK(p.familiarity >= 0.0);
    CHECK(p.familiarity <= 1.0);
  }
  for (const auto& s : m.standards.entries()) {
    CHECK(s.approval.degree > 0.0);
    CHECK(s.approval.degree <= 1.0);
  }
}

TEST_CASE("memory snapshot round-trips byte for byte") {
  gen::Gen g(14);
  for (int i = 0; i < 50; ++i) {
    const auto m = gen::memory(g, 20);
    const auto text = m.to_text();
    const auto back = Memory::from_text(text);
    CHECK(back == m);
    CHECK(back.to_text() == text);
  }
}

TEST_CASE("memory snapshot errors name the location") {
  const std::string bad =
      R"({"format":"emotive-memory","version":1,"standards":[{"subject":"a","source":"b","target":"c","preference":"MAYBE","approval":0.5}]})";
  try {
    Memory::from_text(bad, "snap.json");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("standards/0") != std::string::npos);
  }
  CHECK_THROWS_AS(Memory::from_text(R"({"format":"emotive-memory","version":9})"), VersionMismatch);
}
