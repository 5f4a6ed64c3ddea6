#include "emotive/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "emotive/errors.hpp"
#include "io_util.hpp"
#include "serialization.hpp"

namespace emotive {

using detail::Json;

// ---------------------------------------------------------------------------
// Config

namespace {

Json logistic_to_json(const LogisticParams& p) {
  return {{"range_gap", p.range_gap}, {"slope", p.slope}, {"midpoint", p.midpoint}, {"offset", p.offset}};
}

LogisticParams logistic_from_json(const Json& j, LogisticParams p) {
  p.range_gap = j.value("range_gap", p.range_gap);
  p.slope = j.value("slope", p.slope);
  p.midpoint = j.value("midpoint", p.midpoint);
  p.offset = j.value("offset", p.offset);
  return p;
}

void check_logistic(const LogisticParams& p, const std::string& name) {
  if (!(p.range_gap > 0.0) || !(p.slope > 0.0) || !std::isfinite(p.range_gap + p.slope + p.midpoint + p.offset))
    throw DomainError("normalization '" + name + "': range_gap and slope must be > 0 and finite");
}

void check_unit(double v, const std::string& name) {
  if (!(v >= 0.0 && v <= 1.0)) throw DomainError(name + " outside [0, 1]");
}

std::string_view to_string(CompensationOrder o) {
  return o == CompensationOrder::before_normalization ? "before_normalization" : "after_normalization";
}

CompensationOrder parse_compensation(const std::string& s) {
  if (s == "before_normalization") return CompensationOrder::before_normalization;
  if (s == "after_normalization") return CompensationOrder::after_normalization;
  throw DomainError("mood_compensation must be before_normalization or after_normalization");
}

}  // namespace

void EngineConfig::validate() const {
  check_unit(alpha, "alpha");
  check_unit(beta, "beta");
  if (!(tick_seconds > 0.0) || !std::isfinite(tick_seconds)) throw DomainError("tick_seconds must be > 0");
  check_logistic(appraisal.unit, "unit");
  check_logistic(appraisal.signed_unit, "signed_unit");
  check_logistic(intensity, "intensity");
  check_unit(memory.perception_rate, "memory.perception_rate");
  check_unit(memory.familiarity_step, "memory.familiarity_step");
  check_unit(memory.standard_rate, "memory.standard_rate");
  if (!(memory.approval_floor > 0.0 && memory.approval_floor <= 1.0))
    throw DomainError("memory.approval_floor outside (0, 1]");
  if (!(memory.neutral.degree > 0.0 && memory.neutral.degree <= 1.0))
    throw DomainError("neutral_standard approval outside (0, 1]");
  if (!(memory.neutral == appraisal.neutral_standard))
    throw DomainError("appraisal and memory disagree on the neutral standard");
  for (double c : {mood.openness, mood.conscientiousness, mood.extraversion, mood.agreeableness,
                   mood.neuroticism, mood.offset})
    if (!std::isfinite(c)) throw DomainError("initial_mood coefficient not finite");
}

std::string EngineConfig::to_text() const {
  Json doc;
  doc["format"] = "emotive-config";
  doc["version"] = 1;
  doc["alpha"] = alpha;
  doc["beta"] = beta;
  doc["tick_seconds"] = tick_seconds;
  doc["strategy"] = std::string(to_string(strategy));
  doc["mood_compensation"] = std::string(to_string(compensation));
  doc["normalization"] = {{"unit", logistic_to_json(appraisal.unit)},
                          {"signed_unit", logistic_to_json(appraisal.signed_unit)},
                          {"intensity", logistic_to_json(intensity)}};
  doc["neutral_standard"] = {{"preference", std::string(to_string(memory.neutral.preference))},
                             {"approval", memory.neutral.degree}};
  doc["memory"] = {{"perception_rate", memory.perception_rate},
                   {"familiarity_step", memory.familiarity_step},
                   {"standard_rate", memory.standard_rate},
                   {"approval_floor", memory.approval_floor}};
  doc["initial_mood"] = {{"openness", mood.openness},
                         {"conscientiousness", mood.conscientiousness},
                         {"extraversion", mood.extraversion},
                         {"agreeableness", mood.agreeableness},
                         {"neuroticism", mood.neuroticism},
                         {"offset", mood.offset}};
  doc["paths"] = {{"actions", actions_path}, {"emotions", emotions_path}, {"weights", weights_path}};
  return doc.dump(2) + "\n";
}

EngineConfig EngineConfig::from_text(const std::string& text, const std::string& source) {
  const auto doc = detail::parse_json(text, source);
  detail::expect_header(doc, "emotive-config", 1, source);
  static const std::vector<std::string> known = {
      "format", "version", "alpha", "beta", "tick_seconds", "strategy", "mood_compensation",
      "normalization", "neutral_standard", "memory", "initial_mood", "paths"};
  for (const auto& [key, _] : doc.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ParseError(source, 0, "unknown key '" + key + "'");

  EngineConfig c;
  try {
    c.alpha = doc.value("alpha", c.alpha);
    c.beta = doc.value("beta", c.beta);
    c.tick_seconds = doc.value("tick_seconds", c.tick_seconds);
    if (doc.contains("strategy")) c.strategy = parse_strategy(doc["strategy"].get<std::string>());
    if (doc.contains("mood_compensation"))
      c.compensation = parse_compensation(doc["mood_compensation"].get<std::string>());
    if (auto n = doc.find("normalization"); n != doc.end()) {
      if (n->contains("unit")) c.appraisal.unit = logistic_from_json((*n)["unit"], c.appraisal.unit);
      if (n->contains("signed_unit"))
        c.appraisal.signed_unit = logistic_from_json((*n)["signed_unit"], c.appraisal.signed_unit);
      if (n->contains("intensity")) c.intensity = logistic_from_json((*n)["intensity"], c.intensity);
    }
    if (auto s = doc.find("neutral_standard"); s != doc.end()) {
      c.memory.neutral.preference = parse_preference(s->value("preference", std::string("YES")));
      c.memory.neutral.degree = s->value("approval", c.memory.neutral.degree);
      c.appraisal.neutral_standard = c.memory.neutral;
    }
    if (auto m = doc.find("memory"); m != doc.end()) {
      c.memory.perception_rate = m->value("perception_rate", c.memory.perception_rate);
      c.memory.familiarity_step = m->value("familiarity_step", c.memory.familiarity_step);
      c.memory.standard_rate = m->value("standard_rate", c.memory.standard_rate);
      c.memory.approval_floor = m->value("approval_floor", c.memory.approval_floor);
    }
    if (auto m = doc.find("initial_mood"); m != doc.end()) {
      c.mood.openness = m->value("openness", c.mood.openness);
      c.mood.conscientiousness = m->value("conscientiousness", c.mood.conscientiousness);
      c.mood.extraversion = m->value("extraversion", c.mood.extraversion);
      c.mood.agreeableness = m->value("agreeableness", c.mood.agreeableness);
      c.mood.neuroticism = m->value("neuroticism", c.mood.neuroticism);
      c.mood.offset = m->value("offset", c.mood.offset);
    }
    if (auto p = doc.find("paths"); p != doc.end()) {
      c.actions_path = p->value("actions", std::string());
      c.emotions_path = p->value("emotions", std::string());
      c.weights_path = p->value("weights", std::string());
    }
    c.validate();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(source, 0, e.what());
  } catch (const DomainError& e) {
    throw ParseError(source, 0, e.what());
  }
  return c;
}

EngineConfig EngineConfig::load(const std::filesystem::path& path) {
  return from_text(detail::read_file(path), path.string());
}

EngineResources EngineResources::from_config(const EngineConfig& config,
                                             const std::filesystem::path& base_dir) {
  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_relative() && !base_dir.empty() ? base_dir / path : path;
  };
  EngineResources r;
  if (!config.emotions_path.empty()) r.emotions = EmotionCatalog::load(resolve(config.emotions_path));
  if (!config.weights_path.empty()) r.weights = WeightModel::load(resolve(config.weights_path));
  if (!config.actions_path.empty()) r.actions = ActionScoreTable::load(resolve(config.actions_path));
  return r;
}

// ---------------------------------------------------------------------------
// Engine

std::string_view to_string(TraceKind k) {
  switch (k) {
    case TraceKind::event: return "event";
    case TraceKind::tick: return "tick";
    case TraceKind::error: return "error";
  }
  return "error";
}

Engine::Engine(EngineConfig config, EngineResources resources, PersonalityProfile personality,
               Memory memory)
    : config_(std::move(config)),
      resources_(std::move(resources)),
      personality_(personality),
      memory_(std::move(memory)) {
  config_.validate();
  emotive::validate(personality_);
  memory_.validate();
  for (const auto& spec : resources_.emotions.specs()) affect_.intensities[spec.name] = 0.0;
  affect_.mood = mood_initial(personality_, config_.mood);
}

void Engine::reset_fresh() {
  memory_ = Memory{};
  affect_ = AffectState{};
  for (const auto& spec : resources_.emotions.specs()) affect_.intensities[spec.name] = 0.0;
  affect_.mood = mood_initial(personality_, config_.mood);
  clock_ = 0;
}

TraceEntry Engine::process_event(const Stimulus& stimulus, std::string_view context) {
  TraceEntry entry;
  entry.kind = TraceKind::event;
  entry.tick = clock_;
  entry.context = std::string(context);
  entry.stimulus = stimulus;
  entry.mood_before = entry.mood_after = affect_.mood.value();

  ActionSpec action;
  try {
    if (stimulus.source.empty() || stimulus.target.empty())
      throw DomainError("event without source or target");
    action = elicit_action(stimulus.action, context, resources_.actions);
  } catch (const Error& e) {
    entry.kind = TraceKind::error;
    entry.error = e.what();
    entry.intensities = affect_.intensities;
    return entry;
  }

  // A preloaded history may run ahead of the clock; never write before its end.
  std::int64_t when = std::llround(static_cast<double>(clock_) * config_.tick_seconds);
  if (!memory_.history.empty()) when = std::max(when, memory_.history.events().back().timestamp);
  EventRecord event{stimulus.source, action, stimulus.target, when, {}};
  entry.degree = action.degree;

  // Appraisal reads the pre-event memory snapshot.
  entry.appraisals = appraise(event, memory_, action.degree, config_.appraisal);
  const MoodState mood = affect_.mood;
  entry.raw = raw_intensities(entry.appraisals, resources_.weights, resources_.emotions, personality_, mood);

  IntensityMap elicited;
  for (const auto& spec : resources_.emotions.specs()) {
    const double eff = apply_threshold(entry.raw.at(spec.name), spec);
    if (eff > 0.0) elicited[spec.name] = eff;
  }
  if (config_.compensation == CompensationOrder::before_normalization)
    elicited = apply_mood_compensation(elicited, mood, resources_.emotions, config_.alpha);

  for (const auto& [name, delta] : elicited) {
    if (!(delta > 0.0)) continue;
    double& current = affect_.intensities[name];
    double next = normalize_intensity(current + delta, config_.intensity);
    if (config_.compensation == CompensationOrder::after_normalization)
      next = std::clamp(next + mood_compensation_delta(resources_.emotions.at(name), mood, config_.alpha),
                        0.0, 1.0);
    current = next;
    affect_.last_stimulus_tick[name] = clock_;
  }

  const double impact = entry.appraisals.desirability > 0.0 ? 1.0 : (entry.appraisals.desirability < 0.0 ? -1.0 : 0.0);
  const double agg = aggregate_intensity(affect_.intensities, impact, resources_.emotions);
  affect_.mood = update_mood(mood, mood_factor(agg), config_.beta);
  entry.mood_after = affect_.mood.value();

  const auto active = active_emotions(affect_.intensities, resources_.emotions);
  entry.outcome = regulate(config_.strategy, active, stimulus.source, memory_.standards);
  entry.intensities = affect_.intensities;

  const auto profile = memory_.profile(stimulus.source);
  event.other_info["desirability"] = entry.appraisals.desirability;
  event.other_info["impact"] = impact;
  event.other_info["source_perception"] = profile.perception;
  event.other_info["source_familiarity"] = profile.familiarity;
  memory_.update_after_event(event, resources_.emotions, config_.memory);
  return entry;
}

TraceEntry Engine::tick() {
  ++clock_;
  for (auto& [name, value] : affect_.intensities) {
    if (!(value > 0.0)) continue;
    const auto it = affect_.last_stimulus_tick.find(name);
    const std::int64_t since = it == affect_.last_stimulus_tick.end() ? 0 : it->second;
    const double t = static_cast<double>(clock_ - since) * config_.tick_seconds;
    value = decay_step(value, t, resources_.emotions.at(name).decay_time_s);
  }
  TraceEntry entry;
  entry.kind = TraceKind::tick;
  entry.tick = clock_;
  entry.intensities = affect_.intensities;
  entry.mood_before = entry.mood_after = affect_.mood.value();
  return entry;
}

std::string Engine::config_hash() const {
  const std::string text = config_.to_text() + resources_.emotions.to_text() +
                           resources_.weights.to_text() + resources_.actions.to_csv();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string Engine::state_text() const {
  Json doc;
  doc["format"] = "emotive-state";
  doc["version"] = 1;
  doc["config_hash"] = config_hash();
  doc["clock"] = clock_;
  doc["personality"] = {{"openness", personality_.openness},
                        {"conscientiousness", personality_.conscientiousness},
                        {"extraversion", personality_.extraversion},
                        {"agreeableness", personality_.agreeableness},
                        {"neuroticism", personality_.neuroticism}};
  doc["mood"] = affect_.mood.value();
  auto& intensities = doc["intensities"] = Json::object();
  for (const auto& spec : resources_.emotions.specs()) intensities[spec.name] = affect_.intensities.at(spec.name);
  auto& last = doc["last_stimulus_tick"] = Json::object();
  for (const auto& [name, t] : affect_.last_stimulus_tick) last[name] = t;
  auto& mem = doc["memory"] = Json::object();
  detail::memory_to_json(memory_, mem);
  return doc.dump(2) + "\n";
}

void Engine::save_state(const std::filesystem::path& path) const { detail::write_file(path, state_text()); }

LoadReport Engine::load_state_text(const std::string& text, bool allow_config_mismatch,
                                   const std::string& source) {
  LoadReport report;
  if (detail::trim(text).empty()) {
    reset_fresh();
    report.fresh = true;
    return report;
  }
  const auto doc = detail::parse_json(text, source);
  if (doc.is_object() && doc.empty()) {
    reset_fresh();
    report.fresh = true;
    return report;
  }
  detail::expect_header(doc, "emotive-state", 1, source);

  const auto hash = doc.value("config_hash", std::string());
  if (hash != config_hash()) {
    const auto msg = source + ": state was saved under config " + hash + ", current config is " + config_hash();
    if (!allow_config_mismatch) throw ConfigMismatch(msg + " (pass the allow-mismatch flag to proceed)");
    report.warning = msg;
  }

  PersonalityProfile personality;
  AffectState affect;
  std::int64_t clock = 0;
  Memory memory;
  try {
    clock = doc.at("clock").get<std::int64_t>();
    if (clock < 0) throw DomainError("negative clock");
    const auto& p = doc.at("personality");
    personality = {p.at("openness").get<double>(), p.at("conscientiousness").get<double>(),
                   p.at("extraversion").get<double>(), p.at("agreeableness").get<double>(),
                   p.at("neuroticism").get<double>()};
    emotive::validate(personality);
    affect.mood = MoodState(doc.at("mood").get<double>());
    for (const auto& spec : resources_.emotions.specs()) {
      const double v = doc.at("intensities").at(spec.name).get<double>();
      if (!(v >= 0.0 && v <= 1.0)) throw DomainError("intensity of " + spec.name + " outside [0, 1]");
      affect.intensities[spec.name] = v;
    }
    const auto last = doc.value("last_stimulus_tick", Json::object());
    for (const auto& [name, t] : last.items()) {
      if (!resources_.emotions.find(name)) throw DomainError("unknown emotion '" + name + "'");
      affect.last_stimulus_tick[name] = t.get<std::int64_t>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(source, 0, e.what());
  } catch (const DomainError& e) {
    throw ParseError(source, 0, e.what());
  }
  memory = detail::memory_from_json(doc.value("memory", Json::object()), source);
  try {
    memory.validate();
  } catch (const DomainError& e) {
    throw ParseError(source, 0, e.what());
  }

  personality_ = personality;
  affect_ = std::move(affect);
  clock_ = clock;
  memory_ = std::move(memory);
  return report;
}

LoadReport Engine::load_state(const std::filesystem::path& path, bool allow_config_mismatch) {
  return load_state_text(detail::read_file(path), allow_config_mismatch, path.string());
}

// ---------------------------------------------------------------------------
// Trace output

namespace {

std::string num(double v) { return detail::format_double(v); }

std::string csv_safe(std::string s) {
  for (auto& c : s)
    if (c == ',' || c == '\n' || c == '\r') c = ' ';
  return s;
}

}  // namespace

std::string TraceWriter::csv_header(const EmotionCatalog& emotions) {
  std::string h = "kind,tick,context,source,action,target,degree";
  for (auto v : all_appraisal_variables()) h += "," + std::string(to_string(v));
  for (const auto& s : emotions.specs()) h += ",raw_" + s.name;
  for (const auto& s : emotions.specs()) h += "," + s.name;
  h += ",mood_before,mood_after,strategy,regulated,regulated_intensity,dominant,degenerate,error";
  return h;
}

TraceWriter::TraceWriter(std::ostream& out, Format format, const EmotionCatalog& emotions)
    : out_(out), format_(format) {
  for (const auto& s : emotions.specs()) emotions_.push_back(s.name);
  if (format_ == Format::csv) out_ << csv_header(emotions) << "\n";
}

void TraceWriter::write(const TraceEntry& e) {
  const bool event = e.kind == TraceKind::event;
  auto value_or = [](const IntensityMap& m, const std::string& k) {
    auto it = m.find(k);
    return it == m.end() ? 0.0 : it->second;
  };
  if (format_ == Format::csv) {
    std::string row = std::string(to_string(e.kind)) + "," + std::to_string(e.tick);
    if (e.kind == TraceKind::tick) {
      row += ",,,,,";
    } else {
      row += "," + csv_safe(e.context) + "," + csv_safe(e.stimulus.source) + "," +
             csv_safe(e.stimulus.action) + "," + csv_safe(e.stimulus.target) + "," +
             (event ? num(e.degree) : "");
    }
    for (auto v : all_appraisal_variables()) row += "," + (event ? num(e.appraisals.value(v)) : "");
    for (const auto& name : emotions_) row += "," + (event ? num(value_or(e.raw, name)) : "");
    for (const auto& name : emotions_) row += "," + num(value_or(e.intensities, name));
    row += "," + num(e.mood_before) + "," + num(e.mood_after);
    if (e.outcome) {
      row += "," + std::string(to_string(e.outcome->strategy)) + "," + e.outcome->emotion + "," +
             num(e.outcome->intensity) + "," + e.outcome->dominant + "," +
             (e.outcome->degenerate ? "1" : "0");
    } else {
      row += ",,,,,";
    }
    row += "," + csv_safe(e.error);
    out_ << row << "\n";
    return;
  }

  Json j;
  j["kind"] = std::string(to_string(e.kind));
  j["tick"] = e.tick;
  if (e.kind != TraceKind::tick) {
    j["context"] = e.context;
    j["source"] = e.stimulus.source;
    j["action"] = e.stimulus.action;
    j["target"] = e.stimulus.target;
  }
  if (event) {
    j["degree"] = e.degree;
    Json a = Json::object();
    auto& goals = a["goals"] = Json::array();
    for (const auto& g : e.appraisals.goal_conduciveness)
      goals.push_back({{"goal", g.goal}, {"target", g.target}, {"height", g.height}, {"value", g.value}});
    for (auto v : all_appraisal_variables()) a[std::string(to_string(v))] = e.appraisals.value(v);
    j["appraisals"] = a;
    Json raw = Json::object();
    for (const auto& name : emotions_) raw[name] = value_or(e.raw, name);
    j["raw"] = raw;
  }
  Json in = Json::object();
  for (const auto& name : emotions_) in[name] = value_or(e.intensities, name);
  j["intensities"] = in;
  j["mood_before"] = e.mood_before;
  j["mood_after"] = e.mood_after;
  if (e.outcome) {
    Json r;
    r["strategy"] = std::string(to_string(e.outcome->strategy));
    r["emotion"] = e.outcome->emotion;
    r["intensity"] = e.outcome->intensity;
    if (e.outcome->strategy == Strategy::blended) r["dominant"] = e.outcome->dominant;
    if (e.outcome->strategy == Strategy::ethical) {
      r["degenerate"] = e.outcome->degenerate;
      auto& d = r["diagnostics"] = Json::array();
      for (const auto& x : e.outcome->diagnostics)
        d.push_back({{"emotion", x.emotion},
                     {"intensity", x.intensity},
                     {"cos", x.coefficient_of_standard},
                     {"qe", x.quantified_emotion},
                     {"coe", x.coefficient_of_ethics}});
    }
    j["regulation"] = r;
  }
  if (!e.error.empty()) j["error"] = e.error;
  out_ << j.dump() << "\n";
}

}  // namespace emotive
