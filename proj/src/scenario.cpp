#include "emotive/scenario.hpp"

#include "emotive/errors.hpp"
#include "io_util.hpp"
#include "serialization.hpp"

namespace emotive {

using detail::Json;

Scenario Scenario::from_text(const std::string& text, const std::string& source) {
  const auto doc = detail::parse_json(text, source);
  detail::expect_header(doc, "emotive-scenario", 1, source);
  Scenario s;
  try {
    s.context = doc.value("context", s.context);
    if (s.context.empty()) throw DomainError("empty context");
    if (auto p = doc.find("personality"); p != doc.end()) {
      s.personality.openness = p->value("openness", 0.5);
      s.personality.conscientiousness = p->value("conscientiousness", 0.5);
      s.personality.extraversion = p->value("extraversion", 0.5);
      s.personality.agreeableness = p->value("agreeableness", 0.5);
      s.personality.neuroticism = p->value("neuroticism", 0.5);
      emotive::validate(s.personality);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(source, 0, e.what());
  } catch (const DomainError& e) {
    throw ParseError(source, 0, e.what());
  }
  if (auto m = doc.find("memory"); m != doc.end()) s.memory = detail::memory_from_json(*m, source);
  if (auto ev = doc.find("events"); ev != doc.end()) {
    for (std::size_t i = 0; i < ev->size(); ++i) {
      const auto where = "events/" + std::to_string(i);
      try {
        const auto& e = (*ev)[i];
        ScenarioEvent se;
        se.stimulus.source = e.at("source").get<std::string>();
        se.stimulus.action = e.at("action").get<std::string>();
        se.stimulus.target = e.at("target").get<std::string>();
        se.tick = e.value("tick", std::int64_t{0});
        s.events.push_back(std::move(se));
      } catch (const nlohmann::json::exception& e) {
        throw ParseError(source, 0, where + ": " + e.what());
      }
    }
  }
  return s;
}

Scenario Scenario::load(const std::filesystem::path& path) {
  return from_text(detail::read_file(path), path.string());
}

std::string Scenario::to_text() const {
  Json doc;
  doc["format"] = "emotive-scenario";
  doc["version"] = 1;
  doc["context"] = context;
  doc["personality"] = {{"openness", personality.openness},
                        {"conscientiousness", personality.conscientiousness},
                        {"extraversion", personality.extraversion},
                        {"agreeableness", personality.agreeableness},
                        {"neuroticism", personality.neuroticism}};
  auto& m = doc["memory"] = Json::object();
  detail::memory_to_json(memory, m);
  auto& ev = doc["events"] = Json::array();
  for (const auto& e : events)
    ev.push_back({{"tick", e.tick},
                  {"source", e.stimulus.source},
                  {"action", e.stimulus.action},
                  {"target", e.stimulus.target}});
  return doc.dump(2) + "\n";
}

void Scenario::validate(const ActionScoreTable& actions, const std::string& source) const {
  std::int64_t last = 0;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const auto& e = events[i];
    const auto where = "events/" + std::to_string(i) + ": ";
    if (e.tick < 0) throw ParseError(source, 0, where + "negative tick");
    if (e.tick < last)
      throw ParseError(source, 0, where + "tick " + std::to_string(e.tick) + " precedes " + std::to_string(last));
    if (e.stimulus.source.empty() || e.stimulus.target.empty())
      throw ParseError(source, 0, where + "empty source or target");
    if (!actions.contains(context, e.stimulus.action))
      throw ParseError(source, 0, where + "unscored action '" + e.stimulus.action + "' in context '" + context + "'");
    last = e.tick;
  }
}

void run_scenario(Engine& engine, const Scenario& scenario,
                  const std::function<void(const TraceEntry&)>& sink) {
  for (const auto& e : scenario.events) {
    while (engine.clock() < e.tick) sink(engine.tick());
    sink(engine.process_event(e.stimulus, scenario.context));
  }
}

}  // namespace emotive
