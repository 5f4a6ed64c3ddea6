#include "emotive/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "emotive/errors.hpp"
#include "io_util.hpp"

namespace emotive {

std::string_view to_string(Valence v) { return v == Valence::positive ? "POSITIVE" : "NEGATIVE"; }

Valence parse_valence(std::string_view text) {
  if (text == "POSITIVE" || text == "positive") return Valence::positive;
  if (text == "NEGATIVE" || text == "negative") return Valence::negative;
  throw DomainError("unknown valence '" + std::string(text) + "'");
}

void validate(const ActionSpec& action) {
  if (!std::isfinite(action.degree) || std::abs(action.degree) > 1.0)
    throw DomainError("action '" + action.name + "': degree outside [-1, 1]");
  if (action.degree > 0.0 && action.valence == Valence::negative)
    throw DomainError("action '" + action.name + "': positive degree with NEGATIVE valence");
  if (action.degree < 0.0 && action.valence == Valence::positive)
    throw DomainError("action '" + action.name + "': negative degree with POSITIVE valence");
}

double valence_degree(double angle_deg) { return std::cos(angle_deg * std::numbers::pi / 180.0); }

double EmotionSpec::valence_degree() const { return emotive::valence_degree(angle_deg); }

const std::vector<EmotionSpec>& default_emotions() {
  static const std::vector<EmotionSpec> specs = {
      {"joy", 0.0, 0.0, 10.0},           {"distress", 144.0, 0.0, 10.0},
      {"happy_for", 58.0, 0.0, 10.0},    {"sorry_for", 122.0, 0.0, 10.0},
      {"appreciation", 26.0, 0.0, 10.0}, {"reproach", 153.33, 0.0, 10.0},
      {"gratitude", 8.0, 0.0, 10.0},     {"anger", 164.75, 0.0, 10.0},
      {"liking", 14.5, 0.0, 10.0},       {"disliking", 165.5, 0.0, 10.0},
  };
  return specs;
}

namespace {

void check_spec(const EmotionSpec& s, const std::string& source, std::size_t index) {
  auto fail = [&](const std::string& what) {
    throw ParseError(source, 0, "emotion #" + std::to_string(index) + " '" + s.name + "': " + what);
  };
  if (s.name.empty()) fail("empty name");
  if (!(s.angle_deg >= 0.0 && s.angle_deg < 360.0)) fail("angle_deg outside [0, 360)");
  if (!(s.threshold >= 0.0 && s.threshold < 1.0)) fail("threshold outside [0, 1)");
  if (!(s.decay_time_s > 0.0) || !std::isfinite(s.decay_time_s)) fail("decay_time_s must be > 0");
}

}  // namespace

EmotionCatalog::EmotionCatalog(std::vector<EmotionSpec> specs) : specs_(std::move(specs)) {
  for (std::size_t i = 0; i < specs_.size(); ++i) {
    check_spec(specs_[i], "<emotions>", i);
    for (std::size_t j = 0; j < i; ++j)
      if (specs_[j].name == specs_[i].name)
        throw DomainError("duplicate emotion '" + specs_[i].name + "'");
  }
}

const EmotionSpec* EmotionCatalog::find(std::string_view name) const {
  auto it = std::find_if(specs_.begin(), specs_.end(), [&](const auto& s) { return s.name == name; });
  return it == specs_.end() ? nullptr : &*it;
}

const EmotionSpec& EmotionCatalog::at(std::string_view name) const {
  if (const auto* s = find(name)) return *s;
  throw DomainError("unknown emotion '" + std::string(name) + "'");
}

std::string EmotionCatalog::to_text() const {
  detail::Json doc;
  doc["format"] = "emotive-emotions";
  doc["version"] = 1;
  auto& arr = doc["emotions"] = detail::Json::array();
  for (const auto& s : specs_)
    arr.push_back({{"name", s.name},
                   {"angle_deg", s.angle_deg},
                   {"threshold", s.threshold},
                   {"decay_time_s", s.decay_time_s}});
  return doc.dump(2) + "\n";
}

EmotionCatalog EmotionCatalog::from_text(const std::string& text, const std::string& source) {
  const auto doc = detail::parse_json(text, source);
  detail::expect_header(doc, "emotive-emotions", 1, source);
  std::vector<EmotionSpec> specs;
  try {
    for (const auto& e : doc.at("emotions")) {
      EmotionSpec s;
      s.name = e.at("name").get<std::string>();
      s.angle_deg = e.at("angle_deg").get<double>();
      s.threshold = e.value("threshold", 0.0);
      s.decay_time_s = e.value("decay_time_s", 10.0);
      check_spec(s, source, specs.size());
      specs.push_back(std::move(s));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(source, 0, e.what());
  }
  return EmotionCatalog(std::move(specs));
}

EmotionCatalog EmotionCatalog::load(const std::filesystem::path& path) {
  return from_text(detail::read_file(path), path.string());
}

void EmotionCatalog::save(const std::filesystem::path& path) const {
  detail::write_file(path, to_text());
}

void validate(const PersonalityProfile& p) {
  for (double t : {p.openness, p.conscientiousness, p.extraversion, p.agreeableness, p.neuroticism})
    if (!(t >= 0.0 && t <= 1.0)) throw DomainError("personality trait outside [0, 1]");
}

void MoodState::set(double v) {
  if (std::isnan(v)) throw DomainError("mood is NaN");
  value_ = std::clamp(v, -1.0, 1.0);
}

double AppraisalVector::mean_goal_conduciveness() const {
  if (goal_conduciveness.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& g : goal_conduciveness) sum += g.value;
  return sum / static_cast<double>(goal_conduciveness.size());
}

const std::array<AppraisalVariable, kAppraisalVariableCount>& all_appraisal_variables() {
  static constexpr std::array<AppraisalVariable, kAppraisalVariableCount> vars = {
      AppraisalVariable::goal_conduciveness, AppraisalVariable::desirability,
      AppraisalVariable::praiseworthiness,   AppraisalVariable::appealingness,
      AppraisalVariable::deservingness,      AppraisalVariable::familiarity,
      AppraisalVariable::unexpectedness,
  };
  return vars;
}

std::string_view to_string(AppraisalVariable v) {
  switch (v) {
    case AppraisalVariable::goal_conduciveness: return "goal_conduciveness";
    case AppraisalVariable::desirability: return "desirability";
    case AppraisalVariable::praiseworthiness: return "praiseworthiness";
    case AppraisalVariable::appealingness: return "appealingness";
    case AppraisalVariable::deservingness: return "deservingness";
    case AppraisalVariable::familiarity: return "familiarity";
    case AppraisalVariable::unexpectedness: return "unexpectedness";
  }
  return "?";
}

AppraisalVariable parse_appraisal_variable(std::string_view text) {
  for (auto v : all_appraisal_variables())
    if (to_string(v) == text) return v;
  throw DomainError("unknown appraisal variable '" + std::string(text) + "'");
}

double AppraisalVector::value(AppraisalVariable v) const {
  switch (v) {
    case AppraisalVariable::goal_conduciveness: return mean_goal_conduciveness();
    case AppraisalVariable::desirability: return desirability;
    case AppraisalVariable::praiseworthiness: return praiseworthiness;
    case AppraisalVariable::appealingness: return appealingness;
    case AppraisalVariable::deservingness: return deservingness;
    case AppraisalVariable::familiarity: return familiarity;
    case AppraisalVariable::unexpectedness: return unexpectedness;
  }
  return 0.0;
}

}  // namespace emotive
