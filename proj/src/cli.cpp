#include "emotive/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "emotive/errors.hpp"
#include "emotive/scenario.hpp"
#include "io_util.hpp"

namespace emotive::cli {

namespace {

template <class F>
int guarded(std::ostream& err, F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const VersionMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ConfigMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const UnscoredAction& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

std::string fixed(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(4) << (v == 0.0 ? 0.0 : v);
  return s.str();
}

TraceWriter::Format trace_format(const std::optional<std::string>& format,
                                 const std::optional<std::filesystem::path>& out) {
  if (format) {
    if (*format == "csv") return TraceWriter::Format::csv;
    if (*format == "jsonl") return TraceWriter::Format::jsonl;
    throw DomainError("unknown trace format '" + *format + "' (expected csv or jsonl)");
  }
  if (out && (out->extension() == ".jsonl" || out->extension() == ".json")) return TraceWriter::Format::jsonl;
  return TraceWriter::Format::csv;
}

void print_intensities(std::ostream& out, const IntensityMap& in, const EmotionCatalog& emotions) {
  out << "  intensities:";
  for (const auto& s : emotions.specs()) out << " " << s.name << "=" << fixed(in.at(s.name));
  out << "\n";
}

void print_outcome(std::ostream& out, const RegulationOutcome& o) {
  out << "  regulated (" << to_string(o.strategy) << "): ";
  if (!o.has_emotion()) {
    out << "no active emotion\n";
    return;
  }
  out << o.emotion << " @ " << fixed(o.intensity);
  if (!o.dominant.empty()) out << " (dominant " << o.dominant << ")";
  if (o.degenerate) out << " [all CoS zero]";
  out << "\n";
  for (const auto& d : o.diagnostics)
    out << "    " << d.emotion << ": CoS=" << fixed(d.coefficient_of_standard)
        << " QE=" << fixed(d.quantified_emotion) << " CoE=" << fixed(d.coefficient_of_ethics) << "\n";
}

void print_entry(std::ostream& out, const TraceEntry& e, const EmotionCatalog& emotions) {
  if (e.kind == TraceKind::error) {
    out << "tick " << e.tick << " rejected: " << e.error << "\n";
    return;
  }
  if (e.kind == TraceKind::tick) {
    out << "tick " << e.tick << "\n";
    print_intensities(out, e.intensities, emotions);
    return;
  }
  out << "tick " << e.tick << " " << e.stimulus.source << " " << e.stimulus.action << " "
      << e.stimulus.target << " d_e=" << fixed(e.degree) << "\n  appraisals:";
  for (auto v : all_appraisal_variables()) out << " " << to_string(v) << "=" << fixed(e.appraisals.value(v));
  out << "\n";
  print_intensities(out, e.intensities, emotions);
  out << "  mood: " << fixed(e.mood_before) << " -> " << fixed(e.mood_after) << "\n";
  if (e.outcome) print_outcome(out, *e.outcome);
}

void print_memory(std::ostream& out, const Memory& m) {
  out << "goals:\n";
  std::function<void(const GoalNode&, int)> goal = [&](const GoalNode& n, int depth) {
    out << std::string(static_cast<std::size_t>(2 * depth), ' ') << "(" << n.label << ", "
        << (n.target ? *n.target : "NULL") << ") degree=" << fixed(n.degree) << " kind=" << to_string(n.kind)
        << "\n";
    for (const auto& c : n.children) goal(c, depth + 1);
  };
  goal(m.goals.root(), 1);
  out << "standards:\n";
  for (const auto& s : m.standards.entries())
    out << "  (" << s.key.subject << ", " << s.key.source << ", " << s.key.target << ") "
        << to_string(s.approval.preference) << " " << fixed(s.approval.degree) << "\n";
  out << "attitudes:\n";
  for (const auto& [name, p] : m.entities)
    out << "  " << name << ": perception=" << fixed(p.perception) << " familiarity=" << fixed(p.familiarity)
        << "\n";
  out << "history: " << m.history.size() << " event(s)\n";
  for (const auto& e : m.history.events())
    out << "  t=" << e.timestamp << " " << e.source << " " << e.action.name << " " << e.target
        << " d_e=" << fixed(e.action.degree) << "\n";
}

void print_state(std::ostream& out, const Engine& engine) {
  out << "clock " << engine.clock() << " mood " << fixed(engine.affect().mood.value()) << "\n";
  print_intensities(out, engine.affect().intensities, engine.resources().emotions);
}

}  // namespace

EngineConfig resolve_config(const EngineOptions& opts, std::filesystem::path* base_dir) {
  std::optional<std::filesystem::path> path = opts.config;
  if (!path)
    if (const char* env = std::getenv(kConfigEnv); env && *env) path = env;
  EngineConfig config;
  if (path) {
    config = EngineConfig::load(*path);
    if (base_dir) *base_dir = path->parent_path();
  }
  if (opts.strategy) config.strategy = *opts.strategy;
  if (opts.alpha) config.alpha = *opts.alpha;
  if (opts.beta) config.beta = *opts.beta;
  config.validate();
  return config;
}

int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::filesystem::path base;
    const auto config = resolve_config(opts.engine, &base);
    auto resources = EngineResources::from_config(config, base);
    const auto fmt = trace_format(opts.format, opts.out);
    const auto scenario = Scenario::load(opts.scenario);
    scenario.validate(resources.actions, opts.scenario.string());

    const EmotionCatalog emotions = resources.emotions;
    Engine engine(config, std::move(resources), scenario.personality, scenario.memory);
    std::ostringstream trace;
    TraceWriter writer(trace, fmt, emotions);
    std::optional<RegulationOutcome> last;
    run_scenario(engine, scenario, [&](const TraceEntry& e) {
      writer.write(e);
      if (e.outcome) last = e.outcome;
    });

    std::ostream& summary = opts.out ? out : err;
    if (opts.out)
      detail::write_file(*opts.out, trace.str());
    else
      out << trace.str();
    if (opts.save_state) engine.save_state(*opts.save_state);

    summary << "events " << scenario.events.size() << ", final tick " << engine.clock() << ", mood "
            << fixed(engine.affect().mood.value()) << "\n";
    print_intensities(summary, engine.affect().intensities, emotions);
    if (last)
      print_outcome(summary, *last);
    else
      summary << "  regulated: no event processed\n";
    return kExitOk;
  });
}

int cmd_train(const TrainOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto data = TrainingSet::load(opts.data);
    if (data.samples.empty()) {
      err << "usage: dataset '" << opts.data.string() << "' has no samples\n";
      return kExitValidation;
    }
    std::vector<Link> topology;
    if (opts.topology == "dense") {
      for (const auto& e : data.emotions)
        for (auto v : all_appraisal_variables()) topology.push_back({e, v});
    } else if (opts.topology == "association") {
      for (const auto& l : association_table())
        if (std::find(data.emotions.begin(), data.emotions.end(), l.emotion) != data.emotions.end())
          topology.push_back(l);
    } else {
      throw DomainError("unknown topology '" + opts.topology + "' (expected association or dense)");
    }
    if (topology.empty()) throw DomainError("no link of the topology matches the dataset emotions");

    auto [train, held] = split_holdout(data, opts.holdout, opts.sgd.seed);
    if (train.samples.empty()) throw DomainError("hold-out fraction leaves no training samples");
    const auto result = sgd_train(train, WeightModel(topology), opts.sgd);
    result.model.save(opts.out);
    out << "samples: train " << train.samples.size() << ", held-out " << held.samples.size() << "\n";
    out << "epochs " << opts.sgd.epochs << ", steps " << result.steps << ", final loss "
        << detail::format_double(result.final_loss) << "\n";
    out << "train RMSE " << detail::format_double(dataset_rmse(result.model, train)) << "\n";
    if (!held.samples.empty())
      out << "held-out RMSE " << detail::format_double(dataset_rmse(result.model, held)) << "\n";
    return kExitOk;
  });
}

int cmd_synth(const SynthOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.samples == 0) throw DomainError("sample count must be > 0");
    if (!(opts.scale > 0.0)) throw DomainError("scale must be > 0");
    const EmotionCatalog emotions;
    const auto planted = random_model(dense_topology(emotions), opts.scale, opts.seed);
    const auto set = synthesize_planted(planted, emotions, opts.samples, opts.seed + 1);
    set.save(opts.out);
    if (opts.planted_out) planted.save(*opts.planted_out);
    out << "wrote " << set.samples.size() << " samples to " << opts.out.string() << "\n";
    return kExitOk;
  });
}

int cmd_repl(const ReplOptions& opts, std::istream& in, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::filesystem::path base;
    const auto config = resolve_config(opts.engine, &base);
    auto resources = EngineResources::from_config(config, base);
    const auto fmt = trace_format(opts.format, opts.out);
    Scenario scenario;
    if (opts.scenario) scenario = Scenario::load(*opts.scenario);
    const EmotionCatalog emotions = resources.emotions;
    Engine engine(config, std::move(resources), scenario.personality, scenario.memory);

    std::ostringstream trace;
    TraceWriter writer(trace, fmt, emotions);
    auto record = [&](const TraceEntry& e) {
      writer.write(e);
      print_entry(out, e, emotions);
    };
    const char* usage =
        "commands: event <source> <action> <target> | tick [n] | state | memory | "
        "save <path> | load <path> [force] | help | quit\n";

    std::string line;
    while (std::getline(in, line)) {
      std::istringstream words(line);
      std::string cmd;
      if (!(words >> cmd) || cmd[0] == '#') continue;
      std::vector<std::string> args;
      for (std::string w; words >> w;) args.push_back(w);

      if (cmd == "quit" || cmd == "exit") break;
      if (cmd == "event" && args.size() == 3) {
        record(engine.process_event({args[0], args[1], args[2]}, scenario.context));
      } else if (cmd == "tick" && args.size() <= 1) {
        long long n = 1;
        if (!args.empty()) {
          char* end = nullptr;
          n = std::strtoll(args[0].c_str(), &end, 10);
          if (*end != '\0' || n < 0) {
            out << usage;
            continue;
          }
        }
        for (long long i = 0; i < n; ++i) record(engine.tick());
      } else if (cmd == "state" && args.empty()) {
        print_state(out, engine);
      } else if (cmd == "memory" && args.empty()) {
        print_memory(out, engine.memory());
      } else if (cmd == "save" && args.size() == 1) {
        try {
          engine.save_state(args[0]);
          out << "saved " << args[0] << "\n";
        } catch (const Error& e) {
          out << "error: " << e.what() << "\n";
        }
      } else if (cmd == "load" && (args.size() == 1 || (args.size() == 2 && args[1] == "force"))) {
        try {
          const auto report = engine.load_state(args[0], args.size() == 2);
          if (report.warning) out << "warning: " << *report.warning << "\n";
          out << (report.fresh ? "fresh agent from " : "loaded ") << args[0] << "\n";
        } catch (const Error& e) {
          out << "error: " << e.what() << "\n";
        }
      } else {
        out << usage;
      }
    }
    if (opts.out) detail::write_file(*opts.out, trace.str());
    return kExitOk;
  });
}

int cmd_memory(const std::filesystem::path& file, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto text = detail::read_file(file);
    const auto doc = detail::parse_json(text, file.string());
    Memory memory;
    if (doc.is_object() && doc.value("format", std::string()) == "emotive-state") {
      detail::expect_header(doc, "emotive-state", 1, file.string());
      memory = Memory::from_text(
          [&] {
            auto m = doc.value("memory", detail::Json::object());
            m["format"] = "emotive-memory";
            m["version"] = 1;
            return m.dump();
          }(),
          file.string());
    } else {
      memory = Memory::from_text(text, file.string());
    }
    print_memory(out, memory);
    return kExitOk;
  });
}

}  // namespace emotive::cli
