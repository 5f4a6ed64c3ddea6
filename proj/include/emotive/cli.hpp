#pragma once
// Command implementations behind the `emotive` executable. Each returns the
// process exit code: 0 ok, 1 validation error, 2 runtime error.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "emotive/engine.hpp"
#include "emotive/training.hpp"

namespace emotive::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;

// Environment variable naming the config used when --config is absent.
inline constexpr const char* kConfigEnv = "EMOTIVE_CONFIG";

struct EngineOptions {
  std::optional<std::filesystem::path> config;
  std::optional<Strategy> strategy;
  std::optional<double> alpha;
  std::optional<double> beta;
};

// Config file (flag, then environment, then built-in) with overrides applied.
EngineConfig resolve_config(const EngineOptions& opts, std::filesystem::path* base_dir = nullptr);

struct RunOptions {
  EngineOptions engine;
  std::filesystem::path scenario;
  std::optional<std::filesystem::path> out;
  std::optional<std::string> format;  // "csv" or "jsonl"; default from extension
  std::optional<std::filesystem::path> save_state;
  std::uint64_t seed = 42;  // no stochastic step in a run; recorded for symmetry
};

int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err);

struct TrainOptions {
  std::filesystem::path data;
  std::filesystem::path out;
  SgdParams sgd;
  double holdout = 0.2;
  std::string topology = "association";  // or "dense"
};

int cmd_train(const TrainOptions& opts, std::ostream& out, std::ostream& err);

struct SynthOptions {
  std::filesystem::path out;
  std::optional<std::filesystem::path> planted_out;
  std::size_t samples = 5000;
  double scale = 0.1;
  std::uint64_t seed = 7;
};

int cmd_synth(const SynthOptions& opts, std::ostream& out, std::ostream& err);

struct ReplOptions {
  EngineOptions engine;
  std::optional<std::filesystem::path> scenario;  // personality, memory, context; events ignored
  std::optional<std::filesystem::path> out;       // trace written on exit
  std::optional<std::string> format;
};

int cmd_repl(const ReplOptions& opts, std::istream& in, std::ostream& out, std::ostream& err);

/// Prints goals, standards, attitudes and history of a memory or state file.
int cmd_memory(const std::filesystem::path& file, std::ostream& out, std::ostream& err);

}  // namespace emotive::cli
