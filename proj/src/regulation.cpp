#include "emotive/regulation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "emotive/errors.hpp"

namespace emotive {

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::highest: return "highest";
    case Strategy::blended: return "blended";
    case Strategy::ethical: return "ethical";
  }
  return "highest";
}

Strategy parse_strategy(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "highest") return Strategy::highest;
  if (lower == "blended") return Strategy::blended;
  if (lower == "ethical") return Strategy::ethical;
  throw DomainError("unknown strategy '" + std::string(text) + "' (expected highest, blended or ethical)");
}

std::vector<ActiveEmotion> active_emotions(const IntensityMap& intensities,
                                           const EmotionCatalog& emotions) {
  std::vector<ActiveEmotion> out;
  for (const auto& spec : emotions.specs()) {
    auto it = intensities.find(spec.name);
    if (it != intensities.end() && it->second > 0.0) out.push_back({spec, it->second});
  }
  return out;
}

bool tie_break_before(const EmotionSpec& a, const EmotionSpec& b) {
  const double da = std::abs(a.valence_degree()), db = std::abs(b.valence_degree());
  if (da != db) return da > db;
  return a.name < b.name;
}

namespace {

// Index of the best element by `key`, ties resolved by tie_break_before.
template <class Key>
std::size_t argmax(std::span<const ActiveEmotion> active, Key key) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < active.size(); ++i) {
    const double ki = key(i), kb = key(best);
    if (ki > kb || (ki == kb && tie_break_before(active[i].spec, active[best].spec))) best = i;
  }
  return best;
}

}  // namespace

RegulationOutcome select_highest(std::span<const ActiveEmotion> active) {
  RegulationOutcome out;
  out.strategy = Strategy::highest;
  if (active.empty()) return out;
  const auto i = argmax(active, [&](std::size_t j) { return active[j].intensity; });
  out.emotion = active[i].spec.name;
  out.intensity = active[i].intensity;
  return out;
}

double blended_intensity(std::span<const double> intensities) {
  if (intensities.empty()) throw DomainError("blended intensity of an empty set");
  // Shifted by the maximum so large inputs cannot overflow.
  const double top = *std::max_element(intensities.begin(), intensities.end());
  double sum = 0.0;
  for (double i : intensities) sum += std::exp2(10.0 * (i - top));
  return top + 0.1 * std::log2(sum);
}

RegulationOutcome select_blended(std::span<const ActiveEmotion> active) {
  RegulationOutcome out;
  out.strategy = Strategy::blended;
  if (active.empty()) return out;
  std::vector<double> values;
  for (const auto& a : active) values.push_back(a.intensity);
  out.emotion = std::string(kBlendedLabel);
  out.dominant = select_highest(active).emotion;
  out.intensity = std::clamp(blended_intensity(values), 0.0, 1.0);
  return out;
}

double coefficient_of_standard(std::string_view emotion, std::string_view target,
                               const StandardSet& standards) {
  const auto entries = standards.matching(emotion, target);
  if (entries.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& e : entries) sum += e.approval.signed_degree();
  return sum / static_cast<double>(entries.size());
}

RegulationOutcome select_ethical(std::span<const ActiveEmotion> active, std::string_view target,
                                 const StandardSet& standards) {
  RegulationOutcome out;
  out.strategy = Strategy::ethical;
  if (active.empty()) return out;
  bool all_zero = true;
  for (const auto& a : active) {
    EthicsDiagnostic d;
    d.emotion = a.spec.name;
    d.intensity = a.intensity;
    d.coefficient_of_standard = coefficient_of_standard(a.spec.name, target, standards);
    d.quantified_emotion = quantified_emotion(a.spec, a.intensity);
    d.coefficient_of_ethics = coefficient_of_ethics(d.coefficient_of_standard, d.quantified_emotion);
    all_zero = all_zero && d.coefficient_of_standard == 0.0;
    out.diagnostics.push_back(std::move(d));
  }
  const auto i = argmax(active, [&](std::size_t j) { return out.diagnostics[j].coefficient_of_ethics; });
  out.emotion = active[i].spec.name;
  out.intensity = active[i].intensity;
  out.degenerate = all_zero;
  return out;
}

RegulationOutcome regulate(Strategy strategy, std::span<const ActiveEmotion> active,
                           std::string_view target, const StandardSet& standards) {
  switch (strategy) {
    case Strategy::highest: return select_highest(active);
    case Strategy::blended: return select_blended(active);
    case Strategy::ethical: return select_ethical(active, target, standards);
  }
  return select_highest(active);
}

}  // namespace emotive
