// emotive: run scenarios, train weights, inspect memory.

#include <iostream>

#include "CLI11.hpp"
#include "emotive/cli.hpp"
#include "emotive/regulation.hpp"

namespace {

void add_engine_flags(CLI::App* cmd, emotive::cli::EngineOptions& opts, std::string& strategy) {
  cmd->add_option("--config", opts.config, "engine config file (default: $EMOTIVE_CONFIG, then built-in)");
  cmd->add_option("--strategy", strategy, "regulation strategy")
      ->check(CLI::IsMember({"highest", "blended", "ethical"}, CLI::ignore_case));
  cmd->add_option("--alpha", opts.alpha, "mood compensation rate")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--beta", opts.beta, "mood update rate")->check(CLI::Range(0.0, 1.0));
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = emotive::cli;
  CLI::App app{"Appraisal-driven emotion simulator"};
  app.require_subcommand(1);

  cli::RunOptions run;
  std::string run_strategy;
  auto* run_cmd = app.add_subcommand("run", "run a scenario and write its trace");
  add_engine_flags(run_cmd, run.engine, run_strategy);
  run_cmd->add_option("--scenario", run.scenario, "scenario file")->required();
  run_cmd->add_option("--out", run.out, "trace output (.csv or .jsonl); stdout when absent");
  run_cmd->add_option("--format", run.format, "trace format")->check(CLI::IsMember({"csv", "jsonl"}));
  run_cmd->add_option("--save-state", run.save_state, "write the final engine state");
  run_cmd->add_option("--seed", run.seed, "seed (runs are deterministic)");

  cli::TrainOptions train;
  auto* train_cmd = app.add_subcommand("train", "fit link weights by SGD");
  train_cmd->add_option("--data", train.data, "training dataset")->required();
  train_cmd->add_option("--out", train.out, "output weight model")->required();
  train_cmd->add_option("--epochs", train.sgd.epochs)->check(CLI::PositiveNumber);
  train_cmd->add_option("--eta0", train.sgd.eta0, "initial learning rate");
  train_cmd->add_option("--lr-decay", train.sgd.lr_decay, "learning-rate decay");
  train_cmd->add_option("--seed", train.sgd.seed, "shuffle and split seed");
  train_cmd->add_option("--holdout", train.holdout, "held-out fraction")->check(CLI::Range(0.0, 0.95));
  train_cmd->add_option("--topology", train.topology)->check(CLI::IsMember({"association", "dense"}));

  cli::SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth", "generate a dataset from a random planted model");
  synth_cmd->add_option("--out", synth.out, "dataset output")->required();
  synth_cmd->add_option("--planted", synth.planted_out, "also write the planted model");
  synth_cmd->add_option("--samples", synth.samples)->check(CLI::PositiveNumber);
  synth_cmd->add_option("--scale", synth.scale, "planted factors drawn from [-scale, scale]");
  synth_cmd->add_option("--seed", synth.seed);

  cli::ReplOptions repl;
  std::string repl_strategy;
  auto* repl_cmd = app.add_subcommand("repl", "interactive event entry");
  add_engine_flags(repl_cmd, repl.engine, repl_strategy);
  repl_cmd->add_option("--scenario", repl.scenario, "scenario supplying personality, memory and context");
  repl_cmd->add_option("--out", repl.out, "write the session trace on exit");
  repl_cmd->add_option("--format", repl.format)->check(CLI::IsMember({"csv", "jsonl"}));

  std::filesystem::path memory_file;
  auto* memory_cmd = app.add_subcommand("memory", "print a memory snapshot or engine state");
  memory_cmd->add_option("file", memory_file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitValidation;
  }

  if (!run_strategy.empty()) run.engine.strategy = emotive::parse_strategy(run_strategy);
  if (!repl_strategy.empty()) repl.engine.strategy = emotive::parse_strategy(repl_strategy);

  if (*run_cmd) return cli::cmd_run(run, std::cout, std::cerr);
  if (*train_cmd) return cli::cmd_train(train, std::cout, std::cerr);
  if (*synth_cmd) return cli::cmd_synth(synth, std::cout, std::cerr);
  if (*repl_cmd) return cli::cmd_repl(repl, std::cin, std::cout, std::cerr);
  if (*memory_cmd) return cli::cmd_memory(memory_file, std::cout, std::cerr);
  return cli::kExitValidation;
}
