#pragma once
// Scenario files: context, personality, initial memory and timed events.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "emotive/engine.hpp"

namespace emotive {

struct ScenarioEvent {
  Stimulus stimulus;
  std::int64_t tick = 0;
};

struct Scenario {
  std::string context = std::string(kDefaultContext);
  PersonalityProfile personality;
  Memory memory;
  std::vector<ScenarioEvent> events;

  static Scenario from_text(const std::string& text, const std::string& source = "<scenario>");
  static Scenario load(const std::filesystem::path& path);
  std::string to_text() const;

  /// Ticks non-decreasing and every action scored in the context. Throws
  /// ParseError naming the offending event.
  void validate(const ActionScoreTable& actions, const std::string& source = "<scenario>") const;
};

/// Ticks the engine up to each event's tick, then processes the event.
/// Every entry is handed to `sink` in order.
void run_scenario(Engine& engine, const Scenario& scenario,
                  const std::function<void(const TraceEntry&)>& sink);

}  // namespace emotive
