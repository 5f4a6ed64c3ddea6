#include "emotive/affect.hpp"

#include <algorithm>
#include <cmath>

#include "emotive/errors.hpp"
#include "io_util.hpp"

namespace emotive {

namespace {

constexpr std::array<std::string_view, kFactorCount> kFactorNames = {"O", "C", "E", "A", "N", "M"};

struct SignedLink {
  std::string_view emotion;
  AppraisalVariable variable;
  double sign;
};

// Sign of each association in the shipped weights: +1 where the variable
// raises the emotion, -1 where it raises the emotion by being negative.
// Exponent links (familiarity, unexpectedness) are always +1.
constexpr std::array<SignedLink, 20> kAssociations = {{
    {"joy", AppraisalVariable::desirability, 1.0},
    {"distress", AppraisalVariable::desirability, -1.0},
    {"happy_for", AppraisalVariable::desirability, 1.0},
    {"happy_for", AppraisalVariable::deservingness, 1.0},
    {"sorry_for", AppraisalVariable::desirability, -1.0},
    {"sorry_for", AppraisalVariable::deservingness, -1.0},
    {"appreciation", AppraisalVariable::praiseworthiness, 1.0},
    {"appreciation", AppraisalVariable::unexpectedness, 1.0},
    {"reproach", AppraisalVariable::praiseworthiness, -1.0},
    {"reproach", AppraisalVariable::unexpectedness, 1.0},
    {"gratitude", AppraisalVariable::desirability, 1.0},
    {"gratitude", AppraisalVariable::praiseworthiness, 1.0},
    {"gratitude", AppraisalVariable::unexpectedness, 1.0},
    {"anger", AppraisalVariable::desirability, -1.0},
    {"anger", AppraisalVariable::praiseworthiness, -1.0},
    {"anger", AppraisalVariable::unexpectedness, 1.0},
    {"liking", AppraisalVariable::appealingness, 1.0},
    {"liking", AppraisalVariable::familiarity, 1.0},
    {"disliking", AppraisalVariable::appealingness, -1.0},
    {"disliking", AppraisalVariable::familiarity, 1.0},
}};

}  // namespace

std::string_view to_string(Factor f) { return kFactorNames[static_cast<std::size_t>(f)]; }

Factor parse_factor(std::string_view text) {
  for (std::size_t i = 0; i < kFactorCount; ++i)
    if (kFactorNames[i] == text) return static_cast<Factor>(i);
  throw DomainError("unknown factor '" + std::string(text) + "'");
}

FactorValues factor_values(const PersonalityProfile& p, const MoodState& mood) {
  return {p.openness, p.conscientiousness, p.extraversion, p.agreeableness, p.neuroticism,
          mood.value()};
}

const std::vector<Link>& association_table() {
  static const std::vector<Link> links = [] {
    std::vector<Link> out;
    for (const auto& a : kAssociations) out.push_back({std::string(a.emotion), a.variable});
    return out;
  }();
  return links;
}

std::vector<Link> dense_topology(const EmotionCatalog& emotions) {
  std::vector<Link> out;
  for (const auto& spec : emotions.specs())
    for (auto v : all_appraisal_variables()) out.push_back({spec.name, v});
  return out;
}

// ---------------------------------------------------------------------------
// WeightModel

WeightModel::WeightModel(std::vector<Link> topology) : links_(std::move(topology)) {
  factors_.assign(links_.size(), FactorWeights{});
  for (std::size_t i = 0; i < links_.size(); ++i) {
    if (!index_.emplace(std::pair{links_[i].emotion, links_[i].variable}, i).second)
      throw DomainError("duplicate link " + links_[i].emotion + " <- " +
                        std::string(to_string(links_[i].variable)));
  }
}

WeightModel WeightModel::shipped_default() {
  WeightModel m(association_table());
  for (std::size_t i = 0; i < kAssociations.size(); ++i) {
    const double s = kAssociations[i].sign;
    m.factors_[i] = {0.3 * s, 0.3 * s, 0.1, 0.3 * s, -0.1, 0.2};
  }
  return m;
}

std::optional<std::size_t> WeightModel::index_of(std::string_view emotion,
                                                 AppraisalVariable v) const {
  auto it = index_.find(std::pair{std::string(emotion), v});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const FactorWeights& WeightModel::factors(std::string_view emotion, AppraisalVariable v) const {
  if (auto i = index_of(emotion, v)) return factors_[*i];
  throw DomainError("no link " + std::string(emotion) + " <- " + std::string(to_string(v)));
}

void WeightModel::set(std::string_view emotion, AppraisalVariable v, const FactorWeights& f) {
  auto i = index_of(emotion, v);
  if (!i) throw DomainError("no link " + std::string(emotion) + " <- " + std::string(to_string(v)));
  for (double x : f)
    if (!std::isfinite(x)) throw DomainError("non-finite factor weight");
  factors_[*i] = f;
}

std::string WeightModel::to_text() const {
  detail::Json doc;
  doc["format"] = "emotive-weights";
  doc["version"] = 1;
  auto& arr = doc["links"] = detail::Json::array();
  for (std::size_t i = 0; i < links_.size(); ++i) {
    detail::Json f = detail::Json::object();
    for (std::size_t x = 0; x < kFactorCount; ++x) f[std::string(kFactorNames[x])] = factors_[i][x];
    arr.push_back({{"emotion", links_[i].emotion},
                   {"variable", std::string(to_string(links_[i].variable))},
                   {"factors", f}});
  }
  return doc.dump(2) + "\n";
}

WeightModel WeightModel::from_text(const std::string& text, const std::string& source) {
  const auto doc = detail::parse_json(text, source);
  detail::expect_header(doc, "emotive-weights", 1, source);
  std::vector<Link> links;
  std::vector<FactorWeights> factors;
  try {
    for (const auto& e : doc.at("links")) {
      const auto where = "link #" + std::to_string(links.size());
      Link l;
      l.emotion = e.at("emotion").get<std::string>();
      try {
        l.variable = parse_appraisal_variable(e.at("variable").get<std::string>());
      } catch (const DomainError& err) {
        throw ParseError(source, 0, where + ": " + err.what());
      }
      FactorWeights f{};
      const auto& fj = e.at("factors");
      for (std::size_t x = 0; x < kFactorCount; ++x) {
        f[x] = fj.value(std::string(kFactorNames[x]), 0.0);
        if (!std::isfinite(f[x])) throw ParseError(source, 0, where + ": non-finite factor");
      }
      links.push_back(std::move(l));
      factors.push_back(f);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(source, 0, e.what());
  }
  WeightModel m;
  try {
    m = WeightModel(std::move(links));
  } catch (const DomainError& e) {
    throw ParseError(source, 0, e.what());
  }
  m.factors_ = std::move(factors);
  return m;
}

void WeightModel::save(const std::filesystem::path& path) const {
  detail::write_file(path, to_text());
}

WeightModel WeightModel::load(const std::filesystem::path& path) {
  return from_text(detail::read_file(path), path.string());
}

// ---------------------------------------------------------------------------
// Intensities

double association_weight(const FactorWeights& f, const FactorValues& m) {
  double w = 0.0;
  for (std::size_t x = 0; x < kFactorCount; ++x) w += f[x] * m[x];
  return std::clamp(w, -1.0, 1.0);
}

double association_weight(const WeightModel& model, std::string_view emotion, AppraisalVariable v,
                          const PersonalityProfile& p, const MoodState& mood) {
  return association_weight(model.factors(emotion, v), factor_values(p, mood));
}

IntensityForm intensity_form(std::string_view emotion) {
  if (emotion == "appreciation" || emotion == "reproach") return IntensityForm::praise_power;
  if (emotion == "gratitude" || emotion == "anger") return IntensityForm::desirable_praise;
  if (emotion == "liking" || emotion == "disliking") return IntensityForm::appeal_power;
  return IntensityForm::linear;
}

double signed_power(double base, double exponent) {
  if (base == 0.0) return 0.0;
  const double e = std::clamp(exponent, 0.0, 1.0);
  const double mag = std::pow(std::abs(base), e);
  return base < 0.0 ? -mag : mag;
}

IntensityMap raw_intensities(const AppraisalVector& appraisals, const WeightModel& model,
                             const EmotionCatalog& emotions, const PersonalityProfile& p,
                             const MoodState& mood) {
  const auto m = factor_values(p, mood);
  IntensityMap out;
  for (const auto& spec : emotions.specs()) {
    auto c = [&](AppraisalVariable v) {
      auto i = model.index_of(spec.name, v);
      if (!i) return 0.0;
      return contribution(appraisals.value(v), association_weight(model.factors_at(*i), m));
    };
    double raw = 0.0;
    switch (intensity_form(spec.name)) {
      case IntensityForm::linear:
        for (auto v : all_appraisal_variables()) raw += c(v);
        break;
      case IntensityForm::praise_power:
        raw = signed_power(c(AppraisalVariable::praiseworthiness),
                           1.0 - c(AppraisalVariable::unexpectedness));
        break;
      case IntensityForm::desirable_praise:
        raw = c(AppraisalVariable::desirability) +
              signed_power(c(AppraisalVariable::praiseworthiness),
                           1.0 - c(AppraisalVariable::unexpectedness));
        break;
      case IntensityForm::appeal_power:
        raw = signed_power(c(AppraisalVariable::appealingness), c(AppraisalVariable::familiarity));
        break;
    }
    out[spec.name] = raw;
  }
  return out;
}

MoodState mood_initial(const PersonalityProfile& p, const MoodCoefficients& c) {
  const double v = c.openness * p.openness + c.conscientiousness * p.conscientiousness +
                   c.extraversion * p.extraversion + c.agreeableness * p.agreeableness -
                   c.neuroticism * p.neuroticism - c.offset;
  return MoodState(std::clamp(v, -1.0, 1.0));
}

double mood_compensation_delta(const EmotionSpec& spec, const MoodState& mood, double alpha) {
  const double m = mood.value();
  if (m == 0.0) return 0.0;
  const double size = std::abs(alpha * m);
  const double vd = spec.valence_degree();
  const bool congruent = (vd > 0.0 && m > 0.0) || (vd < 0.0 && m < 0.0);
  return congruent ? size : -size;
}

IntensityMap apply_mood_compensation(const IntensityMap& intensities, const MoodState& mood,
                                     const EmotionCatalog& emotions, double alpha) {
  IntensityMap out;
  for (const auto& [name, value] : intensities) {
    const double next = value + mood_compensation_delta(emotions.at(name), mood, alpha);
    out[name] = next > 0.0 ? next : 0.0;
  }
  return out;
}

double aggregate_intensity(const IntensityMap& intensities, double impact,
                           const EmotionCatalog& emotions) {
  const bool positive = impact > 0.0;
  double sum = 0.0;
  for (const auto& [name, value] : intensities) {
    const bool pos_emotion = emotions.at(name).valence() == Valence::positive;
    if (pos_emotion == positive) sum += value;
  }
  return positive ? sum : -sum;
}

MoodState update_mood(const MoodState& mood, double factor, double beta) {
  return MoodState(std::clamp(mood.value() + beta * factor, -1.0, 1.0));
}

double decay_factor(double t, double decay_time) {
  if (!(decay_time > 0.0)) throw DomainError("decay time must be > 0");
  if (t < 0.0) throw DomainError("negative time since stimulus");
  if (t >= decay_time) return 0.0;
  return 1.0 - std::exp(t - decay_time);
}

double normalize_intensity(double raw, const LogisticParams& p) { return logistic(raw, p); }

}  // namespace emotive
