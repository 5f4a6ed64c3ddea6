#pragma once
// Per-event pipeline (elicit, appraise, generate affect, regulate), the tick
// clock, and engine state persistence.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "emotive/affect.hpp"
#include "emotive/appraisal.hpp"
#include "emotive/elicitation.hpp"
#include "emotive/memory.hpp"
#include "emotive/regulation.hpp"

namespace emotive {

enum class CompensationOrder { before_normalization, after_normalization };

struct EngineConfig {
  double alpha = 0.1;  // mood compensation
  double beta = 0.1;   // mood update
  double tick_seconds = 1.0;
  Strategy strategy = Strategy::ethical;
  CompensationOrder compensation = CompensationOrder::before_normalization;
  AppraisalParams appraisal;
  LogisticParams intensity = LogisticParams::unit();
  MemoryParams memory;
  MoodCoefficients mood;
  // Empty means the built-in default. Relative paths resolve against the
  // directory of the config file.
  std::string actions_path;
  std::string emotions_path;
  std::string weights_path;

  // Throws DomainError for constants outside their documented ranges.
  void validate() const;

  std::string to_text() const;
  static EngineConfig from_text(const std::string& text, const std::string& source = "<config>");
  static EngineConfig load(const std::filesystem::path& path);
};

// Tables the engine reads but never mutates.
struct EngineResources {
  EmotionCatalog emotions;
  WeightModel weights = WeightModel::shipped_default();
  ActionScoreTable actions = ActionScoreTable::shipped();

  // Loads every non-empty path in `config`, relative to `base_dir`.
  static EngineResources from_config(const EngineConfig& config,
                                     const std::filesystem::path& base_dir = {});
};

struct Stimulus {
  std::string source;
  std::string action;
  std::string target;
};

enum class TraceKind { event, tick, error };
std::string_view to_string(TraceKind k);

struct TraceEntry {
  TraceKind kind = TraceKind::tick;
  std::int64_t tick = 0;
  std::string context;
  Stimulus stimulus;
  double degree = 0.0;  // d_e
  AppraisalVector appraisals;
  IntensityMap raw;          // signed, before threshold
  IntensityMap intensities;  // published state after this entry
  double mood_before = 0.0;
  double mood_after = 0.0;
  std::optional<RegulationOutcome> outcome;  // event entries only
  std::string error;
};

struct LoadReport {
  bool fresh = false;             // empty snapshot
  std::optional<std::string> warning;
};

class Engine {
 public:
  Engine(EngineConfig config, EngineResources resources, PersonalityProfile personality,
         Memory memory = {});

  /// Runs the four phases for one event at the current tick. An unscored
  /// action yields an error entry and leaves every piece of state untouched.
  TraceEntry process_event(const Stimulus& stimulus, std::string_view context);

  /// Advances the clock one tick and decays every active emotion.
  TraceEntry tick();

  const AffectState& affect() const { return affect_; }
  const Memory& memory() const { return memory_; }
  std::int64_t clock() const { return clock_; }
  const PersonalityProfile& personality() const { return personality_; }
  const EngineConfig& config() const { return config_; }
  const EngineResources& resources() const { return resources_; }

  /// FNV-1a over the canonical config and every loaded table.
  std::string config_hash() const;

  std::string state_text() const;
  void save_state(const std::filesystem::path& path) const;
  /// Replaces memory, affect, clock and personality. A config-hash mismatch
  /// throws ConfigMismatch unless `allow_config_mismatch`, in which case the
  /// report carries a warning. An empty snapshot resets to a fresh agent.
  LoadReport load_state_text(const std::string& text, bool allow_config_mismatch = false,
                             const std::string& source = "<state>");
  LoadReport load_state(const std::filesystem::path& path, bool allow_config_mismatch = false);

 private:
  void reset_fresh();

  EngineConfig config_;
  EngineResources resources_;
  PersonalityProfile personality_;
  Memory memory_;
  AffectState affect_;
  std::int64_t clock_ = 0;
};

// Row-oriented (CSV) and structured (JSON lines) trace output.
class TraceWriter {
 public:
  enum class Format { csv, jsonl };

  // Writes the CSV header immediately.
  TraceWriter(std::ostream& out, Format format, const EmotionCatalog& emotions);
  void write(const TraceEntry& entry);

  static std::string csv_header(const EmotionCatalog& emotions);

 private:
  std::ostream& out_;
  Format format_;
  std::vector<std::string> emotions_;
};

}  // namespace emotive
